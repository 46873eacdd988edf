from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class DiagonalDilation:
    """Structural form of the unitary dilation U(Lambda).

    U = [[diag(d_main), diag(d_comp)], [diag(d_comp), -diag(conj(d_main))]]
    acting on 2m amplitudes. Only the diagonals are stored.
    """
    m: int
    lambdas: np.ndarray
    k: float
    d_main: np.ndarray
    d_comp: np.ndarray
    scale_convention: str = "max-modulus"

    def __post_init__(self):
        for name in ("lambdas", "d_main", "d_comp"):
            getattr(self, name).setflags(write=False)

    @property
    def dim(self) -> int:
        return 2 * self.m

    def __repr__(self):
        return f'<DiagonalDilation m={self.m} k={self.k:.6g}>'

    def to_dict(self):
        return {
            'm': self.m,
            'k': self.k,
            'scale_convention': self.scale_convention,
            'max_modulus': float(np.max(np.abs(self.lambdas))),
            'min_modulus': float(np.min(np.abs(self.lambdas)))
        }


@dataclass(frozen=True, eq=False)
class HermitianEmbedding:
    """H(U) = [[0, U], [U^dagger, 0]] on 4m amplitudes; Hermitian and H^2 = I."""
    dilation: DiagonalDilation

    @property
    def dim(self) -> int:
        return 4 * self.dilation.m

    def __repr__(self):
        return f'<HermitianEmbedding dim={self.dim}>'
