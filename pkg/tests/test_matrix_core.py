import numpy as np
import pytest
from hypothesis import given, strategies as st

from choiduality.matrix_core import (
    DEFAULT_TOL,
    DimensionError,
    NotHermitianError,
    Tolerances,
    allclose_scaled,
    fix_phase,
    hermiticity_defect,
    hermitian_eigenvalues,
    is_invertible,
    is_psd,
    kron,
    matrix_rank,
    partial_trace,
    permute_systems,
    unvec,
    unvec_cols,
    vec,
    vec_cols,
)
from choiduality.random_ops import ginibre


def brute_partial_trace(x, d1, d2, which):
    # index-by-index oracle
    out = np.zeros((d2, d2) if which == "first" else (d1, d1), dtype=complex)
    for a in range(d1):
        for b in range(d2):
            for c in range(d1):
                for d in range(d2):
                    v = x[a * d2 + b, c * d2 + d]
                    if which == "first" and a == c:
                        out[b, d] += v
                    if which == "second" and b == d:
                        out[a, c] += v
    return out


def test_vec_is_row_major():
    a = np.array([[1, 2], [3, 4]])
    assert vec(a).ravel().tolist() == [1, 2, 3, 4]
    assert vec(a).shape == (4, 1)
    assert vec_cols(a).ravel().tolist() == [1, 3, 2, 4]


def test_unvec_cols_of_omega_sum():
    # sum_i |i> (x) K|i> unvecs to K
    k = np.arange(6).reshape(3, 2) + 1j
    v = sum(np.kron(np.eye(2)[i], k[:, i]) for i in range(2))
    assert np.array_equal(unvec_cols(v, 3, 2), k)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_vec_round_trips(r, c, seed):
    a = ginibre(r, c, seed)
    assert np.array_equal(unvec(vec(a), r, c), a)
    assert np.array_equal(unvec_cols(vec_cols(a), r, c), a)


def test_unvec_rejects_wrong_length():
    with pytest.raises(DimensionError):
        unvec(np.zeros(5), 2, 3)


def test_kron_matches_definition():
    a, b = ginibre(2, 3, 0), ginibre(3, 2, 1)
    k = kron(a, b)
    assert k.shape == (6, 6)
    assert k[1 * 3 + 2, 2 * 2 + 1] == pytest.approx(a[1, 2] * b[2, 1], abs=1e-15)


@pytest.mark.parametrize("d1,d2", [(2, 2), (2, 3), (3, 2)])
@pytest.mark.parametrize("which", ["first", "second"])
def test_partial_trace_against_index_sum(d1, d2, which):
    x = ginibre(d1 * d2, d1 * d2, d1 + 10 * d2)
    assert np.allclose(partial_trace(x, d1, d2, which), brute_partial_trace(x, d1, d2, which), atol=1e-13)


def test_partial_trace_of_product():
    a, b = ginibre(2, 2, 3), ginibre(3, 3, 4)
    assert np.allclose(partial_trace(np.kron(a, b), 2, 3, "first"), np.trace(a) * b)
    assert np.allclose(partial_trace(np.kron(a, b), 2, 3, "second"), np.trace(b) * a)


def test_permute_systems_swaps_kron_factors():
    a, b, c = ginibre(2, 2, 0), ginibre(3, 3, 1), ginibre(2, 2, 2)
    x = np.kron(np.kron(a, b), c)
    y = permute_systems(x, (2, 3, 2), (2, 0, 1))
    assert np.allclose(y, np.kron(np.kron(c, a), b))


def test_hermitian_eigenvalues_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))


def test_hermiticity_defect_is_max_entry():
    x = np.array([[0, 1j], [0, 0]])
    assert hermiticity_defect(x) == pytest.approx(1.0)


def test_psd_threshold_is_scaled():
    # a -1e-10 eigenvalue next to 1e3 is noise; next to 1 it is not at 1e-12 tol
    assert is_psd(np.diag([1e3, -1e-10]))
    assert not is_psd(np.diag([1.0, -1e-6]))
    assert not is_psd(np.diag([1.0, -1e-10]), Tolerances(psd_tol=1e-12))


def test_rank_and_invertibility():
    v = ginibre(4, 1, 5)
    assert matrix_rank(v @ v.conj().T) == 1
    assert matrix_rank(np.zeros((3, 3))) == 0
    assert is_invertible(np.eye(3))
    assert not is_invertible(np.diag([1.0, 1e-12]))


def test_fix_phase_makes_first_entry_positive():
    v = np.array([0, 1j, 2])
    w = fix_phase(v)
    assert w[1] == pytest.approx(1.0)
    assert np.allclose(np.abs(w), np.abs(v))


def test_allclose_scaled_uses_magnitude():
    assert allclose_scaled(np.array([1e6]), np.array([1e6 + 1e-4]), 1e-9)
    assert not allclose_scaled(np.array([1.0]), np.array([1.0 + 1e-6]), 1e-9)


def test_tolerance_overrides():
    t = DEFAULT_TOL.with_overrides(["psd_tol=1e-6", "equality_tol = 1e-3"])
    assert t.psd_tol == 1e-6 and t.equality_tol == 1e-3 and t.rank_rel_tol == 1e-9
    with pytest.raises(ValueError):
        DEFAULT_TOL.with_overrides(["nope=1"])
    with pytest.raises(ValueError):
        Tolerances(psd_tol=-1)
    assert set(DEFAULT_TOL.as_dict()) == {
        "hermiticity_tol", "psd_tol", "rank_rel_tol", "invertibility_rel_tol", "equality_tol"
    }


@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_gram_matrices_are_psd(n, seed):
    g = ginibre(n, n + 1, seed)
    assert is_psd(g @ g.conj().T)
