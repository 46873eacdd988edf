import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from src.exceptions import InvalidParameterError, OracleCapExceededError
from src.models.matrices import CirculantSpec, HankelSpec, ToeplitzSpec
from src.services.numerics import dense_matvec, dft, idft
from src.services.structured_matrices import (
    array_sparsity,
    build_laplacian,
    circulant_eigenvalues,
    embed_in_circulant,
    hankel_to_toeplitz,
    materialize_block_b,
    materialize_dense,
    reverse,
    sparsity_report,
    toeplitz_defining_array,
    toeplitz_from_defining_array,
    toeplitz_from_spectrum,
)
from tests.conftest import random_complex, random_hankel, random_toeplitz

A, B, C = 1 + 2j, -3.0, 0.5j


def test_defining_array_layout():
    assert_array_equal(toeplitz_defining_array(ToeplitzSpec(1, {0: A})), [A, 0])
    assert_array_equal(toeplitz_defining_array(ToeplitzSpec(2, {0: A, -1: B, 1: C})), [A, B, 0, C])
    assert_array_equal(toeplitz_defining_array(build_laplacian(3)), [2, -1, 0, 0, 0, -1])


def test_defining_array_round_trip(rng):
    spec = random_toeplitz(rng, 8, nnz=5)
    assert toeplitz_from_defining_array(toeplitz_defining_array(spec)) == spec


def test_defining_array_midpoint_must_vanish():
    with pytest.raises(InvalidParameterError, match="must vanish"):
        toeplitz_from_defining_array([1, 0, 1, 0])


def test_identity_embeds_to_identity():
    circulant = embed_in_circulant(ToeplitzSpec(2, {0: 1}))
    assert_array_equal(circulant.first_row, [1, 0, 0, 0])
    assert_array_equal(materialize_dense(circulant), np.eye(4))


def test_embedding_blocks():
    spec = ToeplitzSpec(2, {0: A, -1: B, 1: C})
    dense = materialize_dense(embed_in_circulant(spec))
    t = np.array([[A, B], [C, A]])
    b = np.array([[0, C], [B, 0]])
    assert_array_equal(dense, np.block([[t, b], [b, t]]))
    assert_array_equal(materialize_block_b(spec), b)


def test_laplacian_embedding_contains_laplacian():
    dense = materialize_dense(embed_in_circulant(build_laplacian(3)))
    assert_array_equal(dense, materialize_dense(CirculantSpec.from_row([2, -1, 0, 0, 0, -1])))
    assert_array_equal(dense[:3, :3], [[2, -1, 0], [-1, 2, -1], [0, -1, 2]])


def test_block_b_matches_random_embedding(rng):
    spec = random_toeplitz(rng, 6)
    dense = materialize_dense(embed_in_circulant(spec))
    assert_allclose(dense[:6, 6:], materialize_block_b(spec))
    assert_allclose(dense[6:, :6], materialize_block_b(spec))
    assert_allclose(dense[:6, :6], materialize_dense(spec))


@pytest.mark.parametrize("row, expected", [
    ([1, 0, 0, 0], [1, 1, 1, 1]),
    ([0, 1, 0, 0], [1, 1j, -1, -1j]),
    ([2, -1, 0, -1], [0, 2, 4, 2]),
])
def test_circulant_eigenvalues(row, expected):
    assert_allclose(circulant_eigenvalues(CirculantSpec.from_row(row)), expected, atol=1e-14)


@pytest.mark.parametrize("m", [4, 8, 32, 128])
def test_convolution_diagonalization(rng, m):
    spec = CirculantSpec.from_row(random_complex(rng, m))
    v = random_complex(rng, m)
    lambdas = circulant_eigenvalues(spec)
    expected = dense_matvec(materialize_dense(spec), v)
    assert_allclose(idft(lambdas * dft(v)), expected, atol=1e-10 * np.linalg.norm(expected))


def test_spectrum_matches_dense_eigenvalues(rng):
    spec = CirculantSpec.from_row(random_complex(rng, 16))
    dense_eigs = np.linalg.eigvals(materialize_dense(spec))
    for value in circulant_eigenvalues(spec):
        assert np.min(np.abs(dense_eigs - value)) <= 1e-10


def test_materialize_layouts():
    assert_array_equal(materialize_dense(ToeplitzSpec(2, {0: A, -1: B, 1: C})), [[A, B], [C, A]])
    assert_array_equal(materialize_dense(HankelSpec(2, {-1: A, 0: B, 1: C})), [[A, B], [B, C]])
    assert_array_equal(materialize_dense(CirculantSpec.from_row([A, B, C])),
                       [[A, B, C], [C, A, B], [B, C, A]])


def test_materialize_respects_cap():
    with pytest.raises(OracleCapExceededError) as info:
        materialize_dense(ToeplitzSpec(64, {0: 1}), cap=32)
    assert info.value.size == 64
    assert info.value.cap == 32


def test_hankel_to_toeplitz_small_cases():
    t_h = hankel_to_toeplitz(HankelSpec(2, {-1: A, 0: B, 1: C}))
    assert_array_equal(materialize_dense(t_h), [[B, A], [C, B]])
    assert_array_equal(materialize_dense(hankel_to_toeplitz(HankelSpec(3, {0: 1}))), np.eye(3))


def test_hankel_is_toeplitz_times_reversal(rng):
    spec = random_hankel(rng, 5)
    reversal = np.eye(5)[::-1]
    assert_allclose(materialize_dense(hankel_to_toeplitz(spec)), materialize_dense(spec) @ reversal)
    assert_allclose(materialize_dense(hankel_to_toeplitz(spec)) @ reversal, materialize_dense(spec))


def test_reverse():
    assert_array_equal(reverse([A, B]), [B, A])
    assert_array_equal(reverse([1, 2, 3, 4]), [4, 3, 2, 1])


def test_build_laplacian():
    assert_array_equal(materialize_dense(build_laplacian(3)), [[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    assert_array_equal(dense_matvec(materialize_dense(build_laplacian(3)), [1, 2, 3]), [0, 0, 4])
    with pytest.raises(InvalidParameterError):
        build_laplacian(1)


def test_offsets_are_range_checked():
    with pytest.raises(InvalidParameterError, match="outside"):
        ToeplitzSpec(2, {2: 1.0})
    with pytest.raises(InvalidParameterError):
        HankelSpec(0, {})


def test_zero_entries_are_dropped():
    spec = ToeplitzSpec(3, {0: 1.0, 1: 0.0})
    assert spec.diagonals == {0: 1.0}
    assert ToeplitzSpec(3, {1: 0}).is_zero


def test_sparsity_of_identity():
    report = sparsity_report(ToeplitzSpec(4, {0: 1}), threshold=0.0)
    assert (report.nnz_time, report.nnz_freq) == (1, 8)
    assert report.density_freq == 1.0


def test_sparsity_of_zero_matrix():
    report = sparsity_report(ToeplitzSpec(4, {}), threshold=0.0)
    assert (report.nnz_time, report.nnz_freq) == (0, 0)


def test_sparsity_of_one_hot_spectrum():
    n = 4
    spectrum = np.zeros(2 * n, dtype=complex)
    spectrum[3] = 1.0
    report = array_sparsity(idft(spectrum))
    assert report.nnz_time == 2 * n
    assert report.nnz_freq == 1


def test_laplacian_sparsity():
    assert sparsity_report(build_laplacian(4)).nnz_time == 3


def test_frequency_sparse_toeplitz_is_dense_in_time():
    n = 8
    spec = toeplitz_from_spectrum(n, {0: 2.0, 1: 1.0, 3: 1.0})
    report = sparsity_report(spec)
    assert report.nnz_freq == 3
    # psi_T[n] is structurally zero, every other entry is populated
    assert report.nnz_time == 2 * n - 1
    assert len(spec.diagonals) == 2 * n - 1


def test_spectrum_with_nonzero_alternating_sum_is_rejected():
    with pytest.raises(InvalidParameterError, match="alternating"):
        toeplitz_from_spectrum(4, {0: 1.0})


def test_negative_threshold_is_rejected():
    with pytest.raises(InvalidParameterError):
        array_sparsity([1, 0], threshold=-1.0)
