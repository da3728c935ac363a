import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from choiduality.audit import empirical_basis_correspondence
from choiduality.bases import (
    BasisError,
    OperatorBasis,
    basis_validity,
    canonical_basis,
    change_of_basis_W,
    extract_zeta,
    gell_mann_basis,
    m_superoperator,
    pauli_basis,
    rank_one_basis,
    tilted_basis,
)
from choiduality.cases import HADAMARD, PHASE_HADAMARD
from choiduality.matrix_core import DimensionError
from choiduality.random_ops import BASIS_KINDS, rand_basis, rand_invertible

seeds = st.integers(0, 2**32 - 1)


def literal_hh_spectrum(basis):
    # sum_a h_a (x) h_a is a factor swap of C_M, so it shares its spectrum
    s = sum(np.kron(h, h) for h in basis.elements)
    return np.linalg.eigvalsh((s + s.conj().T) / 2)


def test_w_sends_units_to_elements():
    b = rand_basis(2, "generic-gaussian", 0)
    w = change_of_basis_W(b)
    e = np.zeros((2, 2))
    e[1, 0] = 1
    assert np.allclose(w(e), b[1, 0])


def test_canonical_basis_is_valid_with_identity_witness():
    for n in (1, 2, 3):
        v = basis_validity(canonical_basis(n))
        assert v and v.reason == "ok"
        assert np.allclose(v.witness, np.eye(n))


def test_pauli_basis_is_invalid():
    v = basis_validity(pauli_basis())
    assert not v and v.reason == "choi-not-psd"
    assert np.allclose(v.spectrum, [-2, 2, 2, 2])
    # M is twice the transpose map
    assert np.allclose(m_superoperator(pauli_basis()).natural, 2 * np.eye(4)[[0, 2, 1, 3]])
    assert np.allclose(literal_hh_spectrum(pauli_basis()), [-2, 2, 2, 2])


def test_gell_mann_3_spectrum_frozen():
    # [DERIVED] frozen from the literal sum of h (x) h
    v = basis_validity(gell_mann_basis(3))
    expected = [-5 / 3] * 3 + [7 / 3] * 6
    assert not v
    assert np.allclose(v.spectrum, expected)
    assert np.allclose(literal_hh_spectrum(gell_mann_basis(3)), expected)


def test_gell_mann_is_orthogonal():
    for n in (2, 3, 4):
        e = gell_mann_basis(n).elements.reshape(n * n, -1)
        g = e.conj() @ e.T
        assert np.allclose(g, np.diag(np.diag(g)))


def test_tilted_basis_with_complex_lambda_is_invalid():
    v = basis_validity(tilted_basis(np.eye(2), PHASE_HADAMARD.T))
    assert not v
    # M(X) = X diag(1, -1) does not even preserve hermiticity
    assert np.allclose(m_superoperator(tilted_basis(np.eye(2), PHASE_HADAMARD.T)).natural, np.diag([1, -1, 1, -1]))


def test_tilted_basis_with_real_hadamard_lambda_is_valid():
    # real orthogonal lambda gives M = id; the correspondence survives
    v = basis_validity(tilted_basis(np.eye(2), HADAMARD.T))
    assert v and v.witness is None
    assert np.allclose(m_superoperator(tilted_basis(np.eye(2), HADAMARD.T)).natural, np.eye(4))


def test_permuted_canonical_basis_is_valid_without_witness():
    # swapping the labels of e_11 and e_12 leaves M = W W^t = id
    elems = canonical_basis(2).elements.copy()
    elems[[0, 1]] = elems[[1, 0]]
    b = OperatorBasis(2, elems, "permuted")
    v = basis_validity(b)
    assert v and v.witness is None
    assert v.reason.startswith("coi-without-rank-one-labelling")
    assert empirical_basis_correspondence(b, np.random.default_rng(0))


def test_negated_canonical_basis_is_valid_without_witness():
    v = basis_validity(OperatorBasis(2, -canonical_basis(2).elements))
    assert v and v.witness is None


@given(st.sampled_from([2, 3]), seeds)
def test_rank_one_bases_are_valid_with_witness(n, seed):
    z = rand_invertible(n, seed)
    b = rank_one_basis(z)
    v = basis_validity(b)
    assert v and v.reason == "ok"
    w = v.witness
    rebuilt = np.einsum("ia,jb->ijab", w, w.conj()).reshape(n * n, n, n)
    assert np.max(np.abs(rebuilt - b.elements)) < 1e-8
    # zeta is fixed only up to a common phase
    phase = np.vdot(w, z)
    assert np.allclose(w * phase / abs(phase), z, atol=1e-8)


@settings(max_examples=15)
@given(st.sampled_from(BASIS_KINDS), seeds)
def test_verdict_matches_empirical_audit(kind, seed):
    rng = np.random.default_rng(seed)
    b = rand_basis(2, kind, rng)
    assert basis_validity(b).valid == empirical_basis_correspondence(b, rng)


def test_rank_one_kind_is_valid_and_pauli_like_is_not():
    assert basis_validity(rand_basis(3, "rank-one-zeta", 1))
    assert not basis_validity(rand_basis(3, "pauli-like", 1))
    with pytest.raises(ValueError):
        rand_basis(2, "nope", 0)


def test_extract_zeta_reasons():
    assert extract_zeta(pauli_basis())[1] == "h11-not-rank-one-psd"
    elems = rank_one_basis(rand_invertible(2, 0)).elements.copy()
    elems[3] *= 2
    assert extract_zeta(OperatorBasis(2, elems))[1] == "witness-mismatch"


def test_invalid_families_are_rejected():
    with pytest.raises(BasisError):
        OperatorBasis(2, np.array([np.eye(2)] * 4))
    with pytest.raises(DimensionError):
        OperatorBasis(2, np.zeros((3, 2, 2)))
    with pytest.raises(BasisError):
        tilted_basis(np.eye(2), np.ones((2, 2)))
    with pytest.raises(BasisError):
        rank_one_basis(np.ones((2, 2)))


def test_basis_indexing_uses_ordinals():
    b = canonical_basis(3)
    assert b[2, 1][2, 1] == 1 and np.sum(np.abs(b[2, 1])) == 1
    assert len(b) == 9
