import os

os.environ.setdefault("TOEPLITZ_SIM_CONFIG", "testing")

import numpy as np
import pytest

from src.models.matrices import CirculantSpec, HankelSpec, ToeplitzSpec


def random_complex(rng, size):
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def random_toeplitz(rng, n, nnz=None):
    """Toeplitz spec with ``nnz`` random offsets (all 2n-1 when None)."""
    offsets = np.arange(-(n - 1), n)
    if nnz is not None:
        offsets = rng.choice(offsets, size=min(nnz, offsets.size), replace=False)
    values = random_complex(rng, offsets.size)
    return ToeplitzSpec(n=n, diagonals=dict(zip(offsets.tolist(), values)))


def random_hankel(rng, n, nnz=None):
    toeplitz = random_toeplitz(rng, n, nnz)
    return HankelSpec(n=n, skew_diagonals=toeplitz.diagonals)


def well_conditioned_circulant(rng, m):
    """Diagonally dominant first row, so every eigenvalue stays away from zero."""
    row = 0.3 * random_complex(rng, m) / m
    row[0] = 2.0
    return CirculantSpec.from_row(row)


def relative_error(actual, expected):
    return np.linalg.norm(actual - expected) / np.linalg.norm(expected)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def laplacian_4():
    return ToeplitzSpec(n=4, diagonals={0: 2.0, -1: -1.0, 1: -1.0})
