import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from config import TestingConfig
from src.exceptions import (
    DimensionMismatchError,
    InvalidParameterError,
    NotPowerOfTwoError,
    PostSelectionError,
    SingularCirculantError,
    ZeroOperatorError,
    ZeroVectorError,
)
from src.models.matrices import CirculantSpec, HankelSpec, ToeplitzSpec
from src.models.register import ApplyResult, RegisterState
from src.services.numerics import dense_matvec, dft
from src.services.pipeline_service import FORWARD, INVERSE, PipelineService, ancilla_distribution
from src.services.structured_matrices import (
    build_laplacian,
    hankel_to_toeplitz,
    materialize_block_b,
    materialize_dense,
    reverse,
    toeplitz_from_spectrum,
)
from tests.conftest import (
    random_complex,
    random_hankel,
    random_toeplitz,
    relative_error,
    well_conditioned_circulant,
)


@pytest.fixture
def service():
    return PipelineService(TestingConfig)


def dense_product(spec, psi):
    return dense_matvec(materialize_dense(spec), psi)


def probability_law(spec, psi, k):
    product = dense_product(spec, psi)
    return np.vdot(product, product).real / (k ** 2 * np.vdot(psi, psi).real)


# --- register stages ---

def test_prepare_input_layout(service):
    state = service.prepare_input([1, 0])
    assert state.amplitudes.size == 16
    assert_array_equal(np.flatnonzero(state.amplitudes), [8])
    assert state.amplitudes[8] == 1

    state = service.prepare_input([3, 4])
    assert_allclose(state.amplitudes[8:10], [0.6, 0.8])
    assert np.count_nonzero(state.amplitudes) == 2
    assert state.input_norm == 5.0
    assert state.qubit_count == 4


def test_prepare_input_errors(service):
    with pytest.raises(ZeroVectorError):
        service.prepare_input([0, 0])
    with pytest.raises(NotPowerOfTwoError):
        service.prepare_input([1, 2, 3])


def test_prepared_state_sits_on_first_ancilla(service):
    state = service.prepare_input([1, 1j, 0, 2])
    assert ancilla_distribution(state)["100"] == pytest.approx(1.0)
    with pytest.raises(PostSelectionError, match="first ancilla"):
        service.post_select(state)


def test_block_fourier_only_touches_supported_block(service, rng):
    state = service.apply_block_fourier(service.prepare_input(random_complex(rng, 4)), FORWARD)
    blocks = state.blocks()
    assert_array_equal(blocks[[0, 1, 3]], np.zeros((3, 8)))
    assert np.linalg.norm(blocks[2]) == pytest.approx(1.0)


def test_block_fourier_round_trip(service, rng):
    state = service.prepare_input(random_complex(rng, 8))
    back = service.apply_block_fourier(service.apply_block_fourier(state, FORWARD), INVERSE)
    assert_allclose(back.amplitudes, state.amplitudes, atol=1e-12)


def test_block_fourier_matches_kronecker_oracle(service, rng):
    amplitudes = random_complex(rng, 32)
    amplitudes /= np.linalg.norm(amplitudes)
    state = RegisterState(n=4, amplitudes=amplitudes, input_norm=1.0)
    fourier = dft(np.eye(8)).T
    expected = dense_matvec(np.kron(np.eye(4), fourier), amplitudes)
    assert_allclose(service.apply_block_fourier(state, FORWARD).amplitudes, expected, atol=1e-12)


def test_block_fourier_rejects_unknown_direction(service):
    with pytest.raises(InvalidParameterError):
        service.apply_block_fourier(service.prepare_input([1, 0]), "sideways")


# --- Toeplitz pipeline ---

def test_identity_toeplitz(service, rng):
    psi = random_complex(rng, 8)
    result = service.run_pipeline(ToeplitzSpec(8, {0: 1}), psi)
    assert result.k == pytest.approx(1.0)
    assert result.success_probability == pytest.approx(1.0, abs=1e-12)
    assert_allclose(result.output, psi, atol=1e-12)
    assert result.global_phase == -1j


def test_laplacian_through_register(service, laplacian_4):
    result = service.run_pipeline(laplacian_4, [1, 2, 3, 0])
    assert_allclose(result.output, [0, 0, 4, -3], atol=1e-12)
    assert result.k == pytest.approx(4.0)
    assert result.method == "register"


@pytest.mark.parametrize("n", [2, 4, 8, 16, 32, 64])
def test_register_matches_dense_oracle(service, rng, n):
    for _ in range(200):
        spec = random_toeplitz(rng, n, nnz=int(rng.integers(1, 2 * n)))
        psi = random_complex(rng, n)
        result = service.run_pipeline(spec, psi)

        assert relative_error(result.output, dense_product(spec, psi)) <= 1e-10
        assert result.success_probability == pytest.approx(probability_law(spec, psi, result.k), abs=1e-12)
        assert float(np.sum(np.abs(result.final_state.blocks()[2:]) ** 2)) <= 1e-12
        assert result.final_state.norm == pytest.approx(1.0, abs=1e-12)


def test_post_selected_state_carries_phase(service, laplacian_4):
    psi = np.array([1, 2, 3, 0], dtype=complex)
    result = service.run_pipeline(laplacian_4, psi)
    expected = -1j * np.array([0, 0, 4, -3]) / 5.0
    assert_allclose(result.post_selected_state, expected, atol=1e-12)
    assert np.linalg.norm(result.post_selected_state) == pytest.approx(1.0)


def test_ancilla_branches_split_embedding_blocks(service, rng):
    spec = random_toeplitz(rng, 8, nnz=4)
    psi = random_complex(rng, 8)
    result = service.run_pipeline(spec, psi)
    distribution = ancilla_distribution(result.final_state)
    scale = result.k ** 2 * np.vdot(psi, psi).real
    b_product = dense_matvec(materialize_block_b(spec), psi)
    assert distribution["000"] == pytest.approx(result.success_probability, abs=1e-12)
    assert distribution["001"] == pytest.approx(np.vdot(b_product, b_product).real / scale, abs=1e-12)
    assert sum(distribution.values()) == pytest.approx(1.0, abs=1e-12)


def test_frequency_sparse_instance_matches_oracle(service, rng):
    spec = toeplitz_from_spectrum(16, {0: 2.0, 1: 1.0, 3: 1.0})
    psi = random_complex(rng, 16)
    result = service.run_pipeline(spec, psi)
    assert relative_error(result.output, dense_product(spec, psi)) <= 1e-10


def test_fast_path_agrees_with_register(service, rng):
    for _ in range(200):
        n = int(rng.choice([2, 4, 8, 16, 32]))
        spec = random_toeplitz(rng, n, nnz=int(rng.integers(1, 2 * n)))
        psi = random_complex(rng, n)
        slow = service.run_pipeline(spec, psi)
        fast = service.run_pipeline_fast(spec, psi)
        assert np.max(np.abs(fast.output - slow.output)) <= 1e-12 * max(1.0, np.linalg.norm(slow.output))
        assert fast.success_probability == pytest.approx(slow.success_probability, abs=1e-12)
        assert fast.method == "structured"


def test_fast_path_on_general_length(service, rng):
    spec = random_toeplitz(rng, 3)
    psi = random_complex(rng, 3)
    assert relative_error(service.run_pipeline_fast(spec, psi).output, dense_product(spec, psi)) <= 1e-10
    with pytest.raises(NotPowerOfTwoError):
        service.run_pipeline(spec, psi)


def test_vanishing_product_reports_zero_probability(service):
    spec = ToeplitzSpec(2, {0: 1, -1: 1, 1: 1})
    for result in (service.run_pipeline(spec, [1, -1]), service.run_pipeline_fast(spec, [1, -1])):
        assert result.success_probability == 0.0
        assert result.post_selected_state.size == 0
        assert_array_equal(result.output, [0, 0])
        assert result.expected_repeats == np.inf


def test_pipeline_errors(service):
    with pytest.raises(ZeroOperatorError):
        service.run_pipeline(ToeplitzSpec(2, {}), [1, 0])
    with pytest.raises(ZeroVectorError):
        service.run_pipeline(ToeplitzSpec(2, {0: 1}), [0, 0])
    with pytest.raises(DimensionMismatchError):
        service.run_pipeline(ToeplitzSpec(2, {0: 1}), [1, 0, 0, 0])


def test_auto_mode_selection(service):
    assert service.use_register(8)
    assert not service.use_register(12)
    assert not service.use_register(2 * TestingConfig.REGISTER_MAX_N)
    assert service.use_register(12, fast=False)
    assert not service.use_register(8, fast=True)


# --- Hankel ---

def test_reversal_hankel_reverses(service, rng):
    psi = random_complex(rng, 4)
    result = service.apply_hankel(HankelSpec(4, {0: 1}), psi)
    assert_allclose(result.output, reverse(psi), atol=1e-12)
    assert result.success_probability == pytest.approx(1.0, abs=1e-12)


def test_small_hankel(service):
    result = service.apply_hankel(HankelSpec(2, {-1: 1, 0: 2, 1: 3}), [1, 1])
    assert_allclose(result.output, [3, 5], atol=1e-12)


def test_hankel_matches_oracle_and_toeplitz_route(service, rng):
    for _ in range(100):
        n = int(rng.choice([2, 4, 8, 16, 32]))
        spec = random_hankel(rng, n, nnz=int(rng.integers(1, 2 * n)))
        psi = random_complex(rng, n)
        result = service.apply_hankel(spec, psi)
        assert relative_error(result.output, dense_product(spec, psi)) <= 1e-10
        direct = service.run_pipeline(hankel_to_toeplitz(spec), reverse(psi))
        assert_array_equal(result.output, direct.output)


# --- circulants ---

def test_solve_identity(service, rng):
    b = random_complex(rng, 4)
    result = service.solve_circulant(CirculantSpec.from_row([1, 0, 0, 0]), b)
    assert_allclose(result.output, b, atol=1e-12)
    assert result.success_probability == pytest.approx(1.0, abs=1e-12)


def test_singular_periodic_laplacian(service):
    with pytest.raises(SingularCirculantError) as info:
        service.solve_circulant(CirculantSpec.from_row([2, -1, 0, -1]), [1, 0, 0, 0])
    assert info.value.index == 1
    assert "eigenvalue 1" in str(info.value)


def test_solve_residuals(service, rng):
    for _ in range(100):
        m = int(rng.integers(2, 65))
        spec = well_conditioned_circulant(rng, m)
        b = random_complex(rng, m)
        x = service.solve_circulant(spec, b).output
        assert relative_error(dense_product(spec, x), b) <= 1e-10


def test_solve_on_register_matches_structured(service, rng):
    spec = well_conditioned_circulant(rng, 8)
    b = random_complex(rng, 8)
    register = service.solve_circulant(spec, b, fast=False)
    structured = service.solve_circulant(spec, b, fast=True)
    assert register.method == "register"
    assert register.final_state.ancilla_count == 2
    assert_allclose(register.output, structured.output, atol=1e-12 * np.linalg.norm(structured.output))
    assert_allclose(register.output, np.linalg.solve(materialize_dense(spec), b), rtol=1e-10)


def test_apply_circulant(service, rng):
    for m in (4, 6, 16):
        spec = CirculantSpec.from_row(random_complex(rng, m))
        v = random_complex(rng, m)
        assert relative_error(service.apply_circulant(spec, v).output, dense_product(spec, v)) <= 1e-10


def test_circulant_errors(service):
    with pytest.raises(ZeroOperatorError):
        service.apply_circulant(CirculantSpec.from_row([0, 0]), [1, 0])
    with pytest.raises(DimensionMismatchError):
        service.solve_circulant(CirculantSpec.from_row([1, 0]), [1, 0, 0])


# --- accelerations ---

def test_acceleration_of_sample_chain(service):
    u = np.array([1, 2, 3, 0])
    dense = -dense_product(build_laplacian(4), u)
    assert_array_equal(dense, [0, 0, -4, 3])
    assert_allclose(service.acceleration(u, 1.0), dense, atol=1e-10)
    assert_allclose(service.acceleration(u, 1.0, fast=False), dense, atol=1e-10)
    assert_allclose(service.acceleration(u, 2.0), dense / 4, atol=1e-10)


def test_constant_displacement_only_moves_boundaries(service):
    acceleration = service.acceleration(np.full(6, 3.0), 0.5)
    assert_allclose(acceleration, [-12, 0, 0, 0, 0, -12], atol=1e-10)


def test_acceleration_errors(service):
    with pytest.raises(InvalidParameterError):
        service.acceleration([1, 2], 0.0)
    with pytest.raises(InvalidParameterError):
        service.acceleration([1], 1.0)
    assert_array_equal(service.acceleration([0, 0, 0], 1.0), [0, 0, 0])


# --- sampling ---

def structured_result(probability):
    return ApplyResult(
        output=np.zeros(2, dtype=complex),
        success_probability=probability,
        k=1.0,
        input_norm=1.0,
        post_selected_state=np.zeros(2, dtype=complex),
        method="structured",
    )


def test_sampling_concentration(service):
    record = service.sample_measurement(structured_result(0.25), shots=10_000, seed=7).shots
    assert abs(record.frequency - 0.25) <= 3 * np.sqrt(0.25 * 0.75 / 10_000)
    assert set(record.outcome_counts) == {"accepted", "rejected"}
    assert record.outcome_counts["accepted"] == record.successes


def test_sampling_extremes(service):
    assert service.sample_measurement(structured_result(1.0), shots=50, seed=1).shots.successes == 50
    record = service.sample_measurement(structured_result(0.0), shots=50, seed=1).shots
    assert record.successes == 0
    assert record.first_success is None
    assert record.longest_failure_run == 50


def test_sampling_register_outcomes(service, laplacian_4):
    result = service.sample_measurement(service.run_pipeline(laplacian_4, [1, 2, 3, 0]), shots=4000, seed=3)
    record = result.shots
    p = result.success_probability
    assert abs(record.frequency - p) <= 3 * np.sqrt(p * (1 - p) / 4000)
    assert sum(record.outcome_counts.values()) == 4000
    assert record.outcome_counts["000"] == record.successes
    assert all(label[0] == "0" for label, count in record.outcome_counts.items() if count)


def test_sampling_is_deterministic(service):
    first = service.sample_measurement(structured_result(0.4), shots=500, seed=11).shots
    second = service.sample_measurement(structured_result(0.4), shots=500, seed=11).shots
    assert first == second


def test_sampling_rejects_zero_shots(service):
    with pytest.raises(InvalidParameterError):
        service.sample_measurement(structured_result(0.5), shots=0)
