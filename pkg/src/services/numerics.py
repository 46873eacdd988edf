"""Complex vector helpers, unitary DFTs and dense brute-force oracles.

The forward transform uses F[j, k] = exp(-2*pi*i*j*k/m) / sqrt(m). Power-of-two
lengths go through an iterative radix-2 FFT, every other length through the
direct O(m^2) sum.
"""
import logging
from functools import lru_cache

import numpy as np

from src.exceptions import DimensionMismatchError

logger = logging.getLogger(__name__)

ComplexVector = np.ndarray
DenseMatrix = np.ndarray


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def as_complex_vector(values, name: str = "vector") -> ComplexVector:
    """Coerce values to a 1-D complex128 array, rejecting empty or non-finite input."""
    vector = np.asarray(values, dtype=np.complex128)
    if vector.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {vector.shape}")
    if vector.size == 0:
        raise ValueError(f"{name} is empty")
    if not np.all(np.isfinite(vector)):
        raise ValueError(f"{name} contains NaN or infinite entries")
    return vector


@lru_cache(maxsize=64)
def _bit_reversal_permutation(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    indices = np.arange(n, dtype=np.intp)
    reversed_indices = np.zeros(n, dtype=np.intp)
    for bit in range(bits):
        reversed_indices |= ((indices >> bit) & 1) << (bits - 1 - bit)
    reversed_indices.setflags(write=False)
    return reversed_indices


def _radix2_fft(x: np.ndarray) -> np.ndarray:
    """Unnormalized forward FFT along the last axis (length must be a power of two)."""
    n = x.shape[-1]
    lead = x.shape[:-1]
    x = x[..., _bit_reversal_permutation(n)]
    size = 2
    while size <= n:
        half = size // 2
        twiddles = np.exp(-2j * np.pi * np.arange(half) / size)
        groups = x.reshape(*lead, n // size, size)
        even = groups[..., :half]
        odd = groups[..., half:] * twiddles
        x = np.concatenate((even + odd, even - odd), axis=-1).reshape(*lead, n)
        size <<= 1
    return x


def _direct_dft(x: np.ndarray) -> np.ndarray:
    """Unnormalized forward DFT along the last axis by direct summation."""
    m = x.shape[-1]
    k = np.arange(m)
    # reduce j*k mod m first so large lengths keep full phase accuracy
    kernel = np.exp(-2j * np.pi * (np.outer(k, k) % m) / m)
    return x @ kernel


def _transform(values, method: str) -> np.ndarray:
    x = np.asarray(values, dtype=np.complex128)
    if x.ndim == 0 or x.shape[-1] == 0:
        raise ValueError("cannot transform an empty vector")
    m = x.shape[-1]
    if method == "auto":
        method = "fft" if is_power_of_two(m) else "direct"
    if method == "fft":
        if not is_power_of_two(m):
            raise ValueError(f"radix-2 FFT needs a power-of-two length, got {m}")
        spectrum = _radix2_fft(x)
    elif method == "direct":
        spectrum = _direct_dft(x)
    else:
        raise ValueError(f"unknown transform method '{method}'")
    return spectrum / np.sqrt(m)


def dft(v, method: str = "auto") -> ComplexVector:
    """Unitary forward DFT along the last axis.

    ``method`` is ``auto`` (radix-2 for power-of-two lengths, direct sum
    otherwise), ``fft`` or ``direct``.
    """
    return _transform(v, method)


def idft(v, method: str = "auto") -> ComplexVector:
    """Unitary inverse DFT along the last axis; idft(dft(v)) == v."""
    return np.conj(_transform(np.conj(np.asarray(v, dtype=np.complex128)), method))


def dense_matvec(matrix, v) -> ComplexVector:
    """Brute-force row-by-row product, used only as an oracle."""
    matrix = np.asarray(matrix, dtype=np.complex128)
    v = np.asarray(v, dtype=np.complex128)
    if matrix.ndim != 2 or v.ndim != 1 or matrix.shape[1] != v.shape[0]:
        raise DimensionMismatchError(
            f"cannot multiply matrix of shape {matrix.shape} with vector of shape {v.shape}"
        )
    return matrix @ v
