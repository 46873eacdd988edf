"""Toeplitz, Hankel and circulant operations on the sparse symbolic specs.

Everything here works on the specs directly; ``materialize_dense`` and
``materialize_block_b`` are the only places that build n x n arrays and they
are capped oracles.
"""
import logging
from typing import Mapping, Optional, Union

import numpy as np
import scipy.linalg

from config import get_config
from src.exceptions import InvalidParameterError, OracleCapExceededError
from src.models.matrices import CirculantSpec, HankelSpec, SparsityReport, ToeplitzSpec
from src.services.numerics import ComplexVector, DenseMatrix, as_complex_vector, dft, idft

logger = logging.getLogger(__name__)

StructuredSpec = Union[ToeplitzSpec, HankelSpec, CirculantSpec]


def toeplitz_defining_array(spec: ToeplitzSpec) -> ComplexVector:
    """Return psi_T = (t_0, t_-1, ..., t_-(n-1), 0, t_(n-1), ..., t_1)."""
    n = spec.n
    psi = np.zeros(2 * n, dtype=np.complex128)
    for offset, value in spec.diagonals.items():
        if offset <= 0:
            psi[-offset] = value
        else:
            psi[2 * n - offset] = value
    return psi


def toeplitz_from_defining_array(psi_t, tolerance: float = 1e-12) -> ToeplitzSpec:
    """Rebuild the Toeplitz spec whose defining array is ``psi_t``."""
    psi = as_complex_vector(psi_t, "defining array")
    if psi.size % 2:
        raise InvalidParameterError(f"defining array must have even length, got {psi.size}")
    n = psi.size // 2
    scale = float(np.max(np.abs(psi)))
    if abs(psi[n]) > tolerance * scale:
        raise InvalidParameterError(
            f"defining array entry {n} must vanish, got {psi[n]:.3e}"
        )
    diagonals = {-j: psi[j] for j in range(n)}
    diagonals.update({j: psi[2 * n - j] for j in range(1, n)})
    return ToeplitzSpec(n=n, diagonals=diagonals)


def embed_in_circulant(spec: ToeplitzSpec) -> CirculantSpec:
    """2n x 2n circulant C_T = [[T, B_T], [B_T, T]] whose first row is psi_T."""
    return CirculantSpec.from_row(toeplitz_defining_array(spec))


def circulant_eigenvalues(spec: CirculantSpec) -> ComplexVector:
    """lambda_j = sum_k c_k omega^(j k), omega = exp(2 pi i / m), so that C = F^dagger diag(lambda) F."""
    return np.sqrt(spec.m) * idft(spec.first_row)


def _check_cap(size: int, cap: Optional[int]):
    cap = get_config().ORACLE_CAP if cap is None else cap
    if size > cap:
        raise OracleCapExceededError(size, cap)


def materialize_dense(spec: StructuredSpec, cap: Optional[int] = None) -> DenseMatrix:
    """Dense oracle realization of a structured spec."""
    if isinstance(spec, ToeplitzSpec):
        n = spec.n
        _check_cap(n, cap)
        first_column = [spec.coefficient(i) for i in range(n)]
        first_row = [spec.coefficient(-j) for j in range(n)]
        return scipy.linalg.toeplitz(first_column, first_row).astype(np.complex128)
    if isinstance(spec, HankelSpec):
        n = spec.n
        _check_cap(n, cap)
        first_column = [spec.coefficient(i - (n - 1)) for i in range(n)]
        last_row = [spec.coefficient(j) for j in range(n)]
        return scipy.linalg.hankel(first_column, last_row).astype(np.complex128)
    if isinstance(spec, CirculantSpec):
        m = spec.m
        _check_cap(m, cap)
        index = np.arange(m)
        return spec.first_row[(index[None, :] - index[:, None]) % m].astype(np.complex128)
    raise TypeError(f"cannot materialize {type(spec).__name__}")


def materialize_block_b(spec: ToeplitzSpec, cap: Optional[int] = None) -> DenseMatrix:
    """Dense B_T: zero diagonal, t_(n-(j-i)) above it and t_-(n-(i-j)) below it."""
    n = spec.n
    _check_cap(n, cap)
    block = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            if j > i:
                block[i, j] = spec.coefficient(n - (j - i))
            elif i > j:
                block[i, j] = spec.coefficient(-(n - (i - j)))
    return block


def hankel_to_toeplitz(spec: HankelSpec) -> ToeplitzSpec:
    """T_H = H P with P the reversal permutation.

    (H P)[i, j] = H[i, n-1-j] = h_(i-j), so T_H carries the Hankel
    coefficients on the matching Toeplitz offsets.
    """
    return ToeplitzSpec(n=spec.n, diagonals=dict(spec.skew_diagonals))


def reverse(v) -> ComplexVector:
    return np.asarray(v, dtype=np.complex128)[::-1].copy()


def build_laplacian(n: int) -> ToeplitzSpec:
    """Second-order central-difference Laplacian L2 = tridiag(-1, 2, -1)."""
    if n < 2:
        raise InvalidParameterError(f"Laplacian needs n >= 2, got {n}")
    return ToeplitzSpec(n=n, diagonals={0: 2.0, -1: -1.0, 1: -1.0})


def toeplitz_from_spectrum(n: int, spectrum: Mapping[int, complex], tolerance: float = 1e-12) -> ToeplitzSpec:
    """Frequency-sparse Toeplitz whose defining array has the given unitary DFT.

    The midpoint of psi_T is structurally zero, which forces the alternating
    sum of the spectrum to vanish.
    """
    if n < 1:
        raise InvalidParameterError(f"dimension must be >= 1, got {n}")
    length = 2 * n
    coefficients = np.zeros(length, dtype=np.complex128)
    for index, value in spectrum.items():
        if not 0 <= int(index) < length:
            raise InvalidParameterError(f"frequency index {index} outside [0, {length - 1}]")
        coefficients[int(index)] = value
    alternating = np.sum(coefficients * (-1.0) ** np.arange(length))
    if abs(alternating) > tolerance * max(float(np.linalg.norm(coefficients)), 1.0):
        raise InvalidParameterError(
            f"spectrum alternating sum is {alternating:.3e}; psi_T[n] would not vanish"
        )
    psi = idft(coefficients)
    psi[n] = 0
    return toeplitz_from_defining_array(psi)


def array_sparsity(array, threshold: Optional[float] = None) -> SparsityReport:
    """Count nonzeros of an array and of its unitary DFT above ``threshold``.

    With no threshold, tau = FREQ_THRESHOLD_REL * max |dft(array)|.
    """
    values = as_complex_vector(array, "array")
    spectrum = dft(values)
    if threshold is None:
        threshold = get_config().FREQ_THRESHOLD_REL * float(np.max(np.abs(spectrum)))
    elif threshold < 0:
        raise InvalidParameterError(f"threshold must be nonnegative, got {threshold}")
    return SparsityReport(
        n=values.size // 2,
        length=values.size,
        nnz_time=int(np.count_nonzero(values)),
        nnz_freq=int(np.count_nonzero(np.abs(spectrum) > threshold)),
        threshold=float(threshold),
    )


def sparsity_report(spec: ToeplitzSpec, threshold: Optional[float] = None) -> SparsityReport:
    report = array_sparsity(toeplitz_defining_array(spec), threshold)
    logger.debug(f"Sparsity of {spec!r}: time={report.nnz_time} freq={report.nnz_freq}")
    return report
