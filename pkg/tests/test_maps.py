import numpy as np
import pytest
from hypothesis import given, strategies as st

from choiduality.bases import m_superoperator, pauli_basis, rank_one_basis
from choiduality.maps import (
    LinearMap,
    apply,
    choi_matrix,
    compose_map,
    conjugation_map,
    identity_map,
    is_coi,
    is_cp,
    map_from_action,
    map_from_choi,
    map_from_kraus,
    system_permutation_map,
    tensor_map,
    transpose_map,
)
from choiduality.matrix_core import DimensionError, hermitian_eigenvalues, permute_systems
from choiduality.random_ops import ginibre, rand_basis, rand_cp_map, rand_invertible, rand_non_cp_map

from test_matrix_core import brute_partial_trace

seeds = st.integers(0, 2**32 - 1)


def unit(n, i, j):
    e = np.zeros((n, n), dtype=complex)
    e[i, j] = 1
    return e


def literal_choi(phi, elems):
    return sum(np.kron(h, phi(h)) for h in elems)


def literal_gamma(x, n, m, a):
    # tr_1[(A^t (x) I) X]
    return brute_partial_trace(np.kron(a.T, np.eye(m)) @ x, n, m, "first")


def test_kraus_map_acts_as_conjugation_sum():
    ks = [ginibre(3, 2, s) for s in range(3)]
    phi = map_from_kraus(ks)
    a = ginibre(2, 2, 9)
    assert np.allclose(phi(a), sum(k @ a @ k.conj().T for k in ks))
    assert (phi.in_dim, phi.out_dim) == (2, 3)


@pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 2)])
def test_canonical_choi_is_literal_sum(n, m):
    phi = rand_cp_map(n, m, 2, n * m)
    units = [unit(n, i, j) for i in range(n) for j in range(n)]
    assert np.allclose(choi_matrix(phi), literal_choi(phi, units), atol=1e-13)


def test_basis_choi_is_literal_sum():
    phi = rand_non_cp_map(2, 2, 3)
    b = pauli_basis()
    assert np.allclose(choi_matrix(phi, b), literal_choi(phi, b.elements), atol=1e-13)


def test_identity_choi_is_omega_projector():
    c = choi_matrix(identity_map(2))
    omega = np.eye(2).reshape(-1)
    assert np.array_equal(c, np.outer(omega, omega))
    assert np.allclose(hermitian_eigenvalues(c), [0, 0, 0, 2])


def test_transpose_is_positive_but_not_cp():
    t = transpose_map(2)
    a = ginibre(2, 2, 1)
    assert np.array_equal(t(a), a.T)
    # Choi matrix is the swap: eigenvalues -1, 1, 1, 1
    assert np.allclose(hermitian_eigenvalues(choi_matrix(t)), [-1, 1, 1, 1])
    v = is_cp(t)
    assert not v and v.reason == "choi-not-psd"


@pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 2)])
def test_map_from_choi_matches_partial_trace_formula(n, m):
    x = ginibre(n * m, n * m, 7)
    gamma = map_from_choi(x, n, m)
    a = ginibre(n, n, 8)
    assert np.allclose(gamma(a), literal_gamma(x, n, m, a), atol=1e-13)


@given(st.integers(1, 3), st.integers(1, 3), seeds)
def test_choi_round_trip(n, m, seed):
    x = ginibre(n * m, n * m, seed)
    assert np.allclose(choi_matrix(map_from_choi(x, n, m)), x)


@given(st.integers(1, 3), st.integers(1, 4), seeds)
def test_kraus_maps_are_cp(n, k, seed):
    assert is_cp(rand_cp_map(n, n, k, seed))


@given(seeds)
def test_planted_negative_maps_are_not_cp(seed):
    v = is_cp(rand_non_cp_map(2, 3, seed))
    assert not v
    assert min(v.spectrum) == pytest.approx(-1.0)


def test_non_hermitian_choi_reason():
    v = is_cp(LinearMap(2, 2, ginibre(4, 4, 0)))
    assert not v and v.reason == "choi-not-hermitian"
    assert v.witness["hermiticity_defect"] > 0


@given(seeds)
def test_coi_recovers_conjugation_up_to_phase(seed):
    k = rand_invertible(3, seed)
    v = is_coi(conjugation_map(k))
    assert v and v.reason == "ok"
    phase = np.vdot(v.k_witness, k)
    assert np.allclose(v.k_witness * phase / abs(phase), k, atol=1e-9)


def test_coi_failure_reasons():
    assert is_coi(rand_cp_map(2, 2, 2, 1)).reason == "choi-rank>1"
    assert is_coi(rand_non_cp_map(2, 2, 1)).reason == "choi-not-psd"
    assert is_coi(rand_cp_map(2, 3, 1, 1)).reason == "non-square"
    assert is_coi(conjugation_map(np.diag([1.0, 0.0]))).reason == "K-singular"
    assert is_coi(LinearMap(2, 2, ginibre(4, 4, 0))).reason == "choi-not-psd"


def test_generalised_choi_equals_m_applied_to_canonical():
    # sum_a h_a (x) Phi(h_a) == (M (x) id)(C_Phi)
    for kind in ("generic-gaussian", "pauli-like", "tilted"):
        b = rand_basis(2, kind, 4)
        phi = rand_non_cp_map(2, 3, 5)
        lhs = choi_matrix(phi, b)
        rhs = tensor_map(m_superoperator(b), identity_map(3))(choi_matrix(phi))
        assert np.allclose(lhs, rhs, atol=1e-12)


def test_rank_one_basis_choi_is_congruence():
    # h_ij = |z_i><z_j| (rows of Z) gives C_h = (G (x) I) C (G (x) I)^dagger, G = Z^T Z
    z = rand_invertible(2, 3)
    phi = rand_non_cp_map(2, 2, 6)
    zt = np.kron(z.T @ z, np.eye(2))
    assert np.allclose(choi_matrix(phi, rank_one_basis(z)), zt @ choi_matrix(phi) @ zt.conj().T)


def test_tensor_map_on_products():
    p1, p2 = rand_cp_map(2, 3, 2, 1), rand_non_cp_map(3, 2, 2)
    a, b = ginibre(2, 2, 3), ginibre(3, 3, 4)
    assert np.allclose(tensor_map(p1, p2)(np.kron(a, b)), np.kron(p1(a), p2(b)))


def test_compose_order():
    p1, p2 = rand_cp_map(3, 2, 1, 1), rand_cp_map(2, 3, 2, 2)
    a = ginibre(2, 2, 0)
    assert np.allclose(compose_map(p1, p2)(a), p1(p2(a)))
    with pytest.raises(DimensionError):
        compose_map(p1, p1)


def test_system_permutation_map_matches_permute_systems():
    x = ginibre(12, 12, 0)
    perm = system_permutation_map((2, 3, 2), (1, 2, 0))
    assert np.allclose(perm(x), permute_systems(x, (2, 3, 2), (1, 2, 0)))


def test_map_from_action_order():
    imgs = [ginibre(3, 3, s) for s in range(4)]
    phi = map_from_action(imgs)
    assert np.allclose(phi(unit(2, 1, 0)), imgs[2])


def test_linear_map_arithmetic_and_validation():
    p, q = rand_cp_map(2, 2, 1, 0), rand_cp_map(2, 2, 1, 1)
    a = ginibre(2, 2, 2)
    assert np.allclose((p + 2 * q - q)(a), p(a) + q(a))
    with pytest.raises(DimensionError):
        LinearMap(2, 2, np.zeros((4, 5)))
    with pytest.raises(DimensionError):
        apply(p, np.zeros((3, 3)))
    with pytest.raises(DimensionError):
        map_from_choi(np.zeros((4, 4)), 2, 3)
