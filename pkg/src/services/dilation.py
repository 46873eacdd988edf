"""Unitary dilation, Hermitian embedding and its exponential in diagonal form.

All application routines are O(m); dense matrices only come out of the
capped ``materialize_*`` oracles.
"""
import logging
from typing import Optional

import numpy as np

from config import get_config
from src.exceptions import DimensionMismatchError, InvalidParameterError, OracleCapExceededError, ZeroOperatorError
from src.models.dilation import DiagonalDilation, HermitianEmbedding
from src.services.numerics import ComplexVector, DenseMatrix, as_complex_vector

logger = logging.getLogger(__name__)

# 1 - |lambda|^2/k^2 in (-CLAMP, 0) is rounding noise and is clamped to 0
COMPLETION_CLAMP = 1e-15


def scale_factor(lambdas, literal: bool = False) -> float:
    """Dilation scale k.

    Defaults to k = max|lambda_j|, which keeps every completion entry real.
    ``literal=True`` gives k = sqrt(max|lambda_j|) and is only accepted when
    max|lambda_j| <= 1.
    """
    moduli = np.abs(as_complex_vector(lambdas, "spectrum"))
    largest = float(np.max(moduli))
    if largest == 0.0:
        raise ZeroOperatorError("zero operator has no dilation scale")
    if literal:
        if largest > 1.0:
            raise InvalidParameterError(
                f"sqrt(max|lambda|) scale needs max|lambda| <= 1, got {largest:.6g}"
            )
        return float(np.sqrt(largest))
    return largest


def build_dilation(lambdas, literal_scale: bool = False) -> DiagonalDilation:
    lambdas = as_complex_vector(lambdas, "spectrum").copy()
    k = scale_factor(lambdas, literal=literal_scale)
    d_main = lambdas / k
    completion = 1.0 - np.abs(d_main) ** 2
    if np.any(completion < -COMPLETION_CLAMP):
        worst = int(np.argmin(completion))
        raise InvalidParameterError(
            f"|lambda_{worst + 1}|/k = {abs(d_main[worst]):.6g} exceeds 1; dilation would not be unitary"
        )
    d_comp = np.sqrt(np.clip(completion, 0.0, None)).astype(np.complex128)
    dilation = DiagonalDilation(
        m=lambdas.size,
        lambdas=lambdas,
        k=k,
        d_main=d_main,
        d_comp=d_comp,
        scale_convention="sqrt-max-modulus" if literal_scale else "max-modulus",
    )
    logger.debug(f"Built {dilation!r}")
    return dilation


def _split(vector, expected: int, label: str):
    vector = np.asarray(vector, dtype=np.complex128)
    if vector.shape != (expected,):
        raise DimensionMismatchError(f"{label} expects length {expected}, got shape {vector.shape}")
    half = expected // 2
    return vector[:half], vector[half:]


def apply_dilation(dilation: DiagonalDilation, v) -> ComplexVector:
    top, bottom = _split(v, dilation.dim, "dilation")
    return np.concatenate((
        dilation.d_main * top + dilation.d_comp * bottom,
        dilation.d_comp * top - np.conj(dilation.d_main) * bottom,
    ))


def apply_dilation_adjoint(dilation: DiagonalDilation, v) -> ComplexVector:
    top, bottom = _split(v, dilation.dim, "dilation adjoint")
    return np.concatenate((
        np.conj(dilation.d_main) * top + dilation.d_comp * bottom,
        dilation.d_comp * top - dilation.d_main * bottom,
    ))


def apply_hermitian_embedding(embedding: HermitianEmbedding, v) -> ComplexVector:
    """Top half gets U applied to the bottom half, bottom half gets U^dagger applied to the top half."""
    top, bottom = _split(v, embedding.dim, "Hermitian embedding")
    return np.concatenate((
        apply_dilation(embedding.dilation, bottom),
        apply_dilation_adjoint(embedding.dilation, top),
    ))


def apply_exp_embedding(embedding: HermitianEmbedding, theta: float, v) -> ComplexVector:
    """exp(-i theta H) v = cos(theta) v - i sin(theta) H v, valid because H^2 = I."""
    v = np.asarray(v, dtype=np.complex128)
    return np.cos(theta) * v - 1j * np.sin(theta) * apply_hermitian_embedding(embedding, v)


def _check_cap(size: int, cap: Optional[int]):
    cap = get_config().ORACLE_CAP if cap is None else cap
    if size > cap:
        raise OracleCapExceededError(size, cap)


def materialize_dilation(dilation: DiagonalDilation, cap: Optional[int] = None) -> DenseMatrix:
    _check_cap(dilation.dim, cap)
    main = np.diag(dilation.d_main)
    comp = np.diag(dilation.d_comp)
    return np.block([[main, comp], [comp, -np.conj(main)]])


def materialize_embedding(embedding: HermitianEmbedding, cap: Optional[int] = None) -> DenseMatrix:
    _check_cap(embedding.dim, cap)
    unitary = materialize_dilation(embedding.dilation, cap=embedding.dim)
    zeros = np.zeros_like(unitary)
    return np.block([[zeros, unitary], [unitary.conj().T, zeros]])
