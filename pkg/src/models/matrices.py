from dataclasses import dataclass, field
from typing import Dict, Mapping

import numpy as np

from src.exceptions import InvalidParameterError


def _pair(value: complex):
    return [float(value.real), float(value.imag)]


def _normalize_offsets(dimension: int, entries: Mapping[int, complex], label: str) -> Dict[int, complex]:
    if dimension < 1:
        raise InvalidParameterError(f"{label} dimension must be >= 1, got {dimension}")
    normalized = {}
    for offset, value in entries.items():
        offset = int(offset)
        if not -(dimension - 1) <= offset <= dimension - 1:
            raise InvalidParameterError(
                f"{label} offset {offset} outside [-{dimension - 1}, {dimension - 1}]"
            )
        value = complex(value)
        if not np.isfinite(value):
            raise InvalidParameterError(f"{label} offset {offset} has a non-finite value")
        # unstored offsets are implicitly zero
        if value != 0:
            normalized[offset] = value
    return dict(sorted(normalized.items()))


@dataclass(frozen=True)
class ToeplitzSpec:
    """Sparse Toeplitz matrix: entry (i, j) is ``diagonals[i - j]``.

    Offset 0 is the main diagonal, negative offsets the superdiagonals (first
    row) and positive offsets the subdiagonals (first column).
    """
    n: int
    diagonals: Dict[int, complex] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "diagonals", _normalize_offsets(self.n, self.diagonals, "Toeplitz"))

    def coefficient(self, offset: int) -> complex:
        return self.diagonals.get(offset, 0j)

    @property
    def is_zero(self) -> bool:
        return not self.diagonals

    def __repr__(self):
        return f'<ToeplitzSpec n={self.n} nnz={len(self.diagonals)}>'

    def to_dict(self):
        return {
            'kind': 'toeplitz',
            'n': self.n,
            'entries': {str(offset): _pair(value) for offset, value in self.diagonals.items()}
        }


@dataclass(frozen=True)
class HankelSpec:
    """Sparse Hankel matrix: entry (i, j) is ``skew_diagonals[i + j - (n - 1)]``.

    Index -(n-1) sits in the top-left corner, 0 on the main antidiagonal and
    n-1 in the bottom-right corner.
    """
    n: int
    skew_diagonals: Dict[int, complex] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "skew_diagonals", _normalize_offsets(self.n, self.skew_diagonals, "Hankel"))

    def coefficient(self, index: int) -> complex:
        return self.skew_diagonals.get(index, 0j)

    @property
    def is_zero(self) -> bool:
        return not self.skew_diagonals

    def __repr__(self):
        return f'<HankelSpec n={self.n} nnz={len(self.skew_diagonals)}>'

    def to_dict(self):
        return {
            'kind': 'hankel',
            'n': self.n,
            'entries': {str(index): _pair(value) for index, value in self.skew_diagonals.items()}
        }


@dataclass(frozen=True, eq=False)
class CirculantSpec:
    """Circulant given by its first row; row r is the first row shifted right by r."""
    m: int
    first_row: np.ndarray

    def __post_init__(self):
        row = np.array(self.first_row, dtype=np.complex128)
        if row.ndim != 1 or row.size != int(self.m):
            raise InvalidParameterError(
                f"circulant first row must have length m={self.m}, got shape {row.shape}"
            )
        if int(self.m) < 1:
            raise InvalidParameterError("circulant dimension must be >= 1")
        if not np.all(np.isfinite(row)):
            raise InvalidParameterError("circulant first row contains non-finite values")
        row.setflags(write=False)
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "first_row", row)

    @classmethod
    def from_row(cls, first_row) -> "CirculantSpec":
        row = np.asarray(first_row, dtype=np.complex128)
        return cls(m=row.size, first_row=row)

    def __eq__(self, other):
        if not isinstance(other, CirculantSpec):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.first_row, other.first_row)

    def __repr__(self):
        return f'<CirculantSpec m={self.m}>'

    def to_dict(self):
        return {
            'kind': 'circulant',
            'm': self.m,
            'entries': [_pair(value) for value in self.first_row]
        }


@dataclass(frozen=True)
class SparsityReport:
    """Time- and frequency-domain nonzero counts of a defining array of length 2n."""
    n: int
    length: int
    nnz_time: int
    nnz_freq: int
    threshold: float

    @property
    def density_time(self) -> float:
        return self.nnz_time / self.length if self.length else 0.0

    @property
    def density_freq(self) -> float:
        return self.nnz_freq / self.length if self.length else 0.0

    def to_dict(self):
        return {
            'n': self.n,
            'nnz_time': self.nnz_time,
            'nnz_freq': self.nnz_freq,
            'density_time': self.density_time,
            'density_freq': self.density_freq,
            'threshold': self.threshold
        }
