import math
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np


@dataclass(frozen=True, eq=False)
class RegisterState:
    """Amplitudes of the ancilla qubits tensored with the work register.

    The layout is (a1, a2, work) with global index a1*2w + a2*w + work, where
    w is the work dimension. For the Toeplitz pipeline the work register is
    (a3, base) with w = 2n, which gives a1*4n + a2*2n + a3*n + base. The
    circulant pipeline has no a3 and w = n.
    """
    n: int
    amplitudes: np.ndarray
    input_norm: float
    embedded: bool = True

    def __post_init__(self):
        self.amplitudes.setflags(write=False)

    @property
    def work_dim(self) -> int:
        return 2 * self.n if self.embedded else self.n

    @property
    def ancilla_count(self) -> int:
        return 3 if self.embedded else 2

    @property
    def qubit_count(self) -> int:
        return math.ceil(math.log2(self.amplitudes.size))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def blocks(self) -> np.ndarray:
        """View of the amplitudes as four (a1, a2) blocks of work_dim entries."""
        return self.amplitudes.reshape(4, self.work_dim)

    def block(self, a1: int, a2: int) -> np.ndarray:
        return self.blocks()[2 * a1 + a2]

    def replace(self, amplitudes) -> "RegisterState":
        return RegisterState(
            n=self.n,
            amplitudes=np.asarray(amplitudes, dtype=np.complex128),
            input_norm=self.input_norm,
            embedded=self.embedded,
        )

    def __repr__(self):
        return f'<RegisterState n={self.n} qubits={self.qubit_count} embedded={self.embedded}>'


@dataclass(frozen=True)
class ShotRecord:
    shots: int
    successes: int
    first_success: Optional[int]
    longest_failure_run: int
    outcome_counts: Dict[str, int] = field(default_factory=dict)
    seed: Optional[int] = None

    @property
    def frequency(self) -> float:
        return self.successes / self.shots

    @property
    def mean_attempts_per_success(self) -> float:
        return self.shots / self.successes if self.successes else math.inf

    def to_dict(self):
        return {
            'shots': self.shots,
            'successes': self.successes,
            'frequency': self.frequency,
            'mean_attempts_per_success': self.mean_attempts_per_success,
            'first_success': self.first_success,
            'longest_failure_run': self.longest_failure_run,
            'outcome_counts': dict(self.outcome_counts),
            'seed': self.seed
        }


@dataclass(frozen=True, eq=False)
class ApplyResult:
    """Outcome of one structured application.

    ``output`` is the reconstructed, unnormalized T psi with the global phase
    divided out; ``post_selected_state`` is the collapsed unit vector, phase
    included, and is empty when the success probability is zero.
    """
    output: np.ndarray
    success_probability: float
    k: float
    input_norm: float
    post_selected_state: np.ndarray
    global_phase: complex = -1j
    method: str = "register"
    scale_convention: str = "max-modulus"
    shots: Optional[ShotRecord] = None
    final_state: Optional[RegisterState] = None

    @property
    def expected_repeats(self) -> float:
        return 1.0 / self.success_probability if self.success_probability > 0 else math.inf

    def __repr__(self):
        return (f'<ApplyResult n={self.output.size} p={self.success_probability:.6g} '
                f'k={self.k:.6g} method={self.method}>')

    def to_dict(self):
        return {
            'n': int(self.output.size),
            'k': self.k,
            'scale_convention': self.scale_convention,
            'input_norm': self.input_norm,
            'success_probability': self.success_probability,
            'expected_repeats': self.expected_repeats,
            'global_phase': [self.global_phase.real, self.global_phase.imag],
            'method': self.method,
            'shots': self.shots.to_dict() if self.shots else None
        }


@dataclass(frozen=True)
class ResourceReport:
    n: int
    qubits: int
    qft_size: int
    qft_qubits: int
    qft_hadamards: int
    qft_controlled_phases: int
    qft_swaps: int
    qft_count: int
    k: float
    scale_convention: str
    success_probability: Optional[float] = None

    @property
    def qft_gate_estimate(self) -> int:
        return self.qft_hadamards + self.qft_controlled_phases

    @property
    def expected_repeats(self) -> Optional[float]:
        if self.success_probability is None:
            return None
        return 1.0 / self.success_probability if self.success_probability > 0 else math.inf

    def to_dict(self):
        return {
            'n': self.n,
            'qubits': self.qubits,
            'qft_size': self.qft_size,
            'qft_count': self.qft_count,
            'qft_gate_estimate': self.qft_gate_estimate,
            'qft_hadamards': self.qft_hadamards,
            'qft_controlled_phases': self.qft_controlled_phases,
            'qft_swaps': self.qft_swaps,
            'k': self.k,
            'scale_convention': self.scale_convention,
            'success_probability': self.success_probability,
            'expected_repeats': self.expected_repeats
        }
