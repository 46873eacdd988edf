"""End-to-end register simulation of the circulant-embedding circuit.

The register starts in |1>|0>|0>|psi>, goes through I4 (x) F_2n, the
embedded exponential exp(-i pi/2 H(U)), and I4 (x) F_2n^dagger; the |000>
ancilla branch then holds -i T psi / (k |psi|). ``run_pipeline_fast``
evaluates the same map with numpy's FFT on the padded vector.
"""
import logging
import math
from dataclasses import replace
from typing import Dict, Optional

import numpy as np

from config import get_config
from src.exceptions import (
    DimensionMismatchError,
    InvalidParameterError,
    NotPowerOfTwoError,
    PostSelectionError,
    SingularCirculantError,
    ZeroOperatorError,
    ZeroVectorError,
)
from src.models.dilation import HermitianEmbedding
from src.models.matrices import CirculantSpec, HankelSpec, ToeplitzSpec
from src.models.register import ApplyResult, RegisterState, ShotRecord
from src.services.dilation import apply_exp_embedding, build_dilation, scale_factor
from src.services.numerics import ComplexVector, as_complex_vector, dft, idft, is_power_of_two
from src.services.structured_matrices import (
    build_laplacian,
    circulant_eigenvalues,
    embed_in_circulant,
    hankel_to_toeplitz,
    reverse,
    toeplitz_defining_array,
)

logger = logging.getLogger(__name__)

GLOBAL_PHASE = -1j
FORWARD = "forward"
INVERSE = "inverse"


def ancilla_distribution(state: RegisterState) -> Dict[str, float]:
    """Probability of every ancilla bitstring (a1 a2 [a3]) in ``state``."""
    shape = (2,) * state.ancilla_count + (state.n,)
    probabilities = np.sum(np.abs(state.amplitudes.reshape(shape)) ** 2, axis=-1)
    return {
        "".join(str(bit) for bit in bits): float(probabilities[bits])
        for bits in np.ndindex(*probabilities.shape)
    }


class PipelineService:
    """Runs the structured-matrix circuit on exact state vectors."""

    def __init__(self, config=None):
        self.config = config or get_config()

    # --- Register stages ---

    def prepare_input(self, psi, embedded: bool = True) -> RegisterState:
        """Place psi/|psi| in the (a1=1, a2=0, a3=0) block of a zero register."""
        psi = as_complex_vector(psi, "input vector")
        n = psi.size
        if not is_power_of_two(n):
            raise NotPowerOfTwoError(f"register simulation needs a power-of-two dimension, got {n}")
        input_norm = float(np.linalg.norm(psi))
        if input_norm == 0.0:
            raise ZeroVectorError("input vector is zero and cannot be prepared as a state")

        work_dim = 2 * n if embedded else n
        amplitudes = np.zeros(4 * work_dim, dtype=np.complex128)
        amplitudes[2 * work_dim:2 * work_dim + n] = psi / input_norm
        state = RegisterState(n=n, amplitudes=amplitudes, input_norm=input_norm, embedded=embedded)
        self._check_norm(state, "prepare")
        return state

    def apply_block_fourier(self, state: RegisterState, direction: str = FORWARD) -> RegisterState:
        """Apply the unitary DFT of size work_dim to each of the four (a1, a2) blocks."""
        if direction == FORWARD:
            blocks = dft(state.blocks())
        elif direction == INVERSE:
            blocks = idft(state.blocks())
        else:
            raise InvalidParameterError(f"direction must be '{FORWARD}' or '{INVERSE}', got '{direction}'")
        return state.replace(blocks.reshape(-1))

    def apply_embedded_exponential(self, state: RegisterState, embedding: HermitianEmbedding,
                                   theta: float = math.pi / 2) -> RegisterState:
        if embedding.dim != state.amplitudes.size:
            raise DimensionMismatchError(
                f"embedding acts on {embedding.dim} amplitudes, register has {state.amplitudes.size}"
            )
        return state.replace(apply_exp_embedding(embedding, theta, state.amplitudes))

    def post_select(self, state: RegisterState):
        """Return the |0...0> ancilla branch amplitudes and its probability.

        The first ancilla must already be |0>; any mass left on a1=1 means the
        stages were applied out of order.
        """
        blocks = state.blocks()
        first_ancilla_mass = float(np.sum(np.abs(blocks[2:]) ** 2))
        if first_ancilla_mass > self.config.ANCILLA_TOLERANCE:
            raise PostSelectionError(
                f"first ancilla carries probability {first_ancilla_mass:.3e} after the circuit"
            )
        branch = blocks[0][:state.n].copy()
        probability = float(np.vdot(branch, branch).real)
        return branch, probability

    def _check_norm(self, state: RegisterState, stage: str):
        norm = state.norm
        logger.debug(f"Stage {stage}: norm={norm:.16f}")
        if abs(norm - 1.0) > self.config.NORM_TOLERANCE:
            raise PostSelectionError(f"state norm {norm:.16f} drifted from 1 after stage '{stage}'")

    # --- Shared assembly ---

    def _assemble(self, branch, probability: float, k: float, input_norm: float, method: str,
                  scale_convention: str, final_state: Optional[RegisterState] = None) -> ApplyResult:
        n = branch.size
        if probability <= self.config.ZERO_PROBABILITY:
            logger.warning(f"Post-selection probability {probability:.3e} is zero; T psi vanishes")
            return ApplyResult(
                output=np.zeros(n, dtype=np.complex128),
                success_probability=0.0,
                k=k,
                input_norm=input_norm,
                post_selected_state=np.zeros(0, dtype=np.complex128),
                global_phase=GLOBAL_PHASE,
                method=method,
                scale_convention=scale_convention,
                final_state=final_state,
            )
        return ApplyResult(
            output=branch * k * input_norm / GLOBAL_PHASE,
            success_probability=min(probability, 1.0),
            k=k,
            input_norm=input_norm,
            post_selected_state=branch / math.sqrt(probability),
            global_phase=GLOBAL_PHASE,
            method=method,
            scale_convention=scale_convention,
            final_state=final_state,
        )

    def _simulate(self, lambdas, psi, embedded: bool) -> ApplyResult:
        state = self.prepare_input(psi, embedded=embedded)
        dilation = build_dilation(lambdas, literal_scale=self.config.LITERAL_SCALE)
        embedding = HermitianEmbedding(dilation)

        state = self.apply_block_fourier(state, FORWARD)
        self._check_norm(state, "fourier")
        state = self.apply_embedded_exponential(state, embedding)
        self._check_norm(state, "exponential")
        state = self.apply_block_fourier(state, INVERSE)
        self._check_norm(state, "inverse fourier")

        branch, probability = self.post_select(state)
        return self._assemble(branch, probability, dilation.k, state.input_norm, "register",
                              dilation.scale_convention, final_state=state)

    def _structured(self, lambdas, psi, embedded: bool) -> ApplyResult:
        """Apply F^dagger diag(lambda) F to psi (zero-padded when embedded) with numpy's FFT."""
        n = psi.size
        input_norm = float(np.linalg.norm(psi))
        if input_norm == 0.0:
            raise ZeroVectorError("input vector is zero and cannot be prepared as a state")
        literal = self.config.LITERAL_SCALE
        k = scale_factor(lambdas, literal=literal)
        size = 2 * n if embedded else n
        product = np.fft.ifft(lambdas * np.fft.fft(psi, size))[:n]
        probability = float(np.vdot(product, product).real) / (k * input_norm) ** 2
        branch = GLOBAL_PHASE * product / (k * input_norm)
        return self._assemble(branch, probability, k, input_norm, "structured",
                              "sqrt-max-modulus" if literal else "max-modulus")

    @staticmethod
    def _validate(spec, psi, dimension: int) -> ComplexVector:
        if spec.is_zero:
            raise ZeroOperatorError(f"{spec!r} is identically zero")
        psi = as_complex_vector(psi, "input vector")
        if psi.size != dimension:
            raise DimensionMismatchError(f"matrix has dimension {dimension}, vector has length {psi.size}")
        return psi

    # --- Toeplitz / Hankel ---

    def run_pipeline(self, spec: ToeplitzSpec, psi) -> ApplyResult:
        psi = self._validate(spec, psi, spec.n)
        lambdas = circulant_eigenvalues(embed_in_circulant(spec))
        result = self._simulate(lambdas, psi, embedded=True)
        logger.info(f"Register run n={spec.n} k={result.k:.6g} p={result.success_probability:.6g}")
        return result

    def run_pipeline_fast(self, spec: ToeplitzSpec, psi) -> ApplyResult:
        psi = self._validate(spec, psi, spec.n)
        m = 2 * spec.n
        lambdas = np.fft.ifft(toeplitz_defining_array(spec)) * m
        result = self._structured(lambdas, psi, embedded=True)
        logger.info(f"Structured run n={spec.n} k={result.k:.6g} p={result.success_probability:.6g}")
        return result

    def use_register(self, n: int, fast: Optional[bool] = None) -> bool:
        if fast is None:
            return is_power_of_two(n) and n <= self.config.REGISTER_MAX_N
        return not fast

    def apply_toeplitz(self, spec: ToeplitzSpec, psi, fast: Optional[bool] = None) -> ApplyResult:
        if self.use_register(spec.n, fast):
            return self.run_pipeline(spec, psi)
        return self.run_pipeline_fast(spec, psi)

    def apply_hankel(self, spec: HankelSpec, psi, fast: Optional[bool] = False) -> ApplyResult:
        """H psi = T_H P psi: reverse psi, then run the Toeplitz pipeline for T_H."""
        if spec.is_zero:
            raise ZeroOperatorError(f"{spec!r} is identically zero")
        psi = as_complex_vector(psi, "input vector")
        return self.apply_toeplitz(hankel_to_toeplitz(spec), reverse(psi), fast)

    # --- Circulants ---

    def _apply_spectrum(self, spec: CirculantSpec, spectrum, b, fast: Optional[bool]) -> ApplyResult:
        if self.use_register(spec.m, fast):
            return self._simulate(spectrum, b, embedded=False)
        return self._structured(spectrum, b, embedded=False)

    def apply_circulant(self, spec: CirculantSpec, v, fast: Optional[bool] = None) -> ApplyResult:
        if not np.any(spec.first_row):
            raise ZeroOperatorError(f"{spec!r} is identically zero")
        v = as_complex_vector(v, "input vector")
        if v.size != spec.m:
            raise DimensionMismatchError(f"circulant has dimension {spec.m}, vector has length {v.size}")
        return self._apply_spectrum(spec, circulant_eigenvalues(spec), v, fast)

    def solve_circulant(self, spec: CirculantSpec, b, fast: Optional[bool] = None) -> ApplyResult:
        """x = F^dagger diag(1/lambda) F b through the same two-ancilla pipeline."""
        b = as_complex_vector(b, "right-hand side")
        if b.size != spec.m:
            raise DimensionMismatchError(f"circulant has dimension {spec.m}, right-hand side has length {b.size}")
        lambdas = circulant_eigenvalues(spec)
        moduli = np.abs(lambdas)
        largest = float(np.max(moduli))
        if largest == 0.0:
            raise ZeroOperatorError(f"{spec!r} is identically zero")
        threshold = self.config.SINGULAR_THRESHOLD_REL * largest
        singular = np.flatnonzero(moduli <= threshold)
        if singular.size:
            index = int(singular[0])
            raise SingularCirculantError(index + 1, complex(lambdas[index]), threshold)
        result = self._apply_spectrum(spec, 1.0 / lambdas, b, fast)
        logger.info(f"Circulant solve m={spec.m} p={result.success_probability:.6g} method={result.method}")
        return result

    # --- Applications ---

    def acceleration(self, u, h: float, fast: Optional[bool] = True) -> ComplexVector:
        """Sector accelerations -(1/h^2) L2 u with fixed ends u_0 = u_(n+1) = 0."""
        if not h > 0:
            raise InvalidParameterError(f"sector spacing h must be positive, got {h}")
        u = as_complex_vector(u, "displacement vector")
        if u.size < 2:
            raise InvalidParameterError(f"acceleration needs at least 2 sectors, got {u.size}")
        if not np.any(u):
            return np.zeros(u.size, dtype=np.complex128)
        laplacian = build_laplacian(u.size)
        if self.use_register(u.size, fast):
            result = self.run_pipeline(laplacian, u)
        else:
            result = self.run_pipeline_fast(laplacian, u)
        return -result.output / h ** 2

    # --- Measurement ---

    def sample_measurement(self, result: ApplyResult, shots: int, seed: Optional[int] = None) -> ApplyResult:
        """Draw seeded ancilla measurements and attach the shot record to ``result``.

        Each shot succeeds with exactly the post-selection probability; the
        remaining mass is spread over the other ancilla outcomes in proportion
        to the final register state (or lumped as 'rejected' for structured runs).
        """
        if shots < 1:
            raise InvalidParameterError(f"shots must be a positive integer, got {shots}")
        success_label, outcomes = self._outcome_weights(result)
        labels = list(outcomes)
        weights = np.array([outcomes[label] for label in labels], dtype=float)
        weights = np.clip(weights, 0.0, None)
        weights /= weights.sum()

        rng = np.random.default_rng(seed)
        draws = rng.choice(len(labels), size=shots, p=weights)
        success = draws == labels.index(success_label)
        positions = np.flatnonzero(success)
        boundaries = np.concatenate(([-1], positions, [shots]))
        record = ShotRecord(
            shots=shots,
            successes=int(positions.size),
            first_success=int(positions[0]) if positions.size else None,
            longest_failure_run=int(np.max(np.diff(boundaries) - 1)),
            outcome_counts={label: int(np.count_nonzero(draws == i)) for i, label in enumerate(labels)},
            seed=seed,
        )
        logger.info(f"Sampled {shots} shots: {record.successes} successes (p={result.success_probability:.6g})")
        return replace(result, shots=record)

    @staticmethod
    def _outcome_weights(result: ApplyResult):
        p = result.success_probability
        if result.final_state is None:
            return "accepted", {"accepted": p, "rejected": 1.0 - p}
        distribution = ancilla_distribution(result.final_state)
        success_label = "0" * result.final_state.ancilla_count
        others = {label: prob for label, prob in distribution.items() if label != success_label}
        total = sum(others.values())
        outcomes = {success_label: p}
        if total > 0:
            outcomes.update({label: prob * (1.0 - p) / total for label, prob in others.items()})
        else:
            outcomes["rejected"] = 1.0 - p
        return success_label, outcomes


# Global instance for the service
pipeline_service = PipelineService()
