"""Operator bases of ``B(C^n)`` and the test of when the CP vs positivity
correspondence survives a change of basis.

Elements are indexed by the ordinal ``i*n + j`` of the matrix unit they
replace, so ``elements[i*n + j]`` plays the role of ``h_ij``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .maps import LinearMap, is_coi
from .matrix_core import (
    DEFAULT_TOL,
    DimensionError,
    Tolerances,
    allclose_scaled,
    as_matrix,
    fix_phase,
    is_invertible,
    is_psd,
    matrix_rank,
)
from .verdicts import BasisVerdict


class BasisError(ValueError):
    """Raised when a family of matrices is not an operator basis."""


@dataclass(frozen=True, eq=False)
class OperatorBasis:
    dim: int
    elements: np.ndarray
    label: str = ""

    def __post_init__(self):
        n = self.dim
        elems = np.asarray(self.elements, dtype=complex)
        if elems.shape != (n * n, n, n):
            raise DimensionError(f"expected {n*n} elements of shape {n}x{n}, got array {elems.shape}")
        if matrix_rank(elems.reshape(n * n, n * n)) != n * n:
            raise BasisError("elements are linearly dependent")
        object.__setattr__(self, "elements", elems)

    def __len__(self) -> int:
        return self.dim * self.dim

    def __getitem__(self, ij) -> np.ndarray:
        i, j = ij
        return self.elements[i * self.dim + j]

    def __repr__(self) -> str:
        return f"OperatorBasis(dim={self.dim}, label={self.label!r})"


def canonical_basis(n: int) -> OperatorBasis:
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return OperatorBasis(n, np.eye(n * n).reshape(n * n, n, n), "canonical")


PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


def pauli_basis() -> OperatorBasis:
    """``{I, sigma_x, sigma_y, sigma_z}`` in that order."""
    return OperatorBasis(2, PAULI.copy(), "pauli")


def gell_mann_basis(n: int) -> OperatorBasis:
    """Identity plus generalised Gell-Mann matrices; equals the Pauli basis for n=2."""
    if n == 2:
        return pauli_basis()
    elems = [np.eye(n, dtype=complex)]
    for i in range(n):
        for j in range(i + 1, n):
            s = np.zeros((n, n), dtype=complex)
            s[i, j] = s[j, i] = 1
            a = np.zeros((n, n), dtype=complex)
            a[i, j], a[j, i] = -1j, 1j
            elems += [s, a]
    for k in range(1, n):
        d = np.zeros(n)
        d[:k] = 1
        d[k] = -k
        elems.append(np.diag(d * np.sqrt(2 / (k * (k + 1)))).astype(complex))
    return OperatorBasis(n, np.array(elems), "gell-mann")


def _check_orthonormal(vectors: np.ndarray, tol: Tolerances, what: str):
    gram = vectors.conj() @ vectors.T
    if not allclose_scaled(gram, np.eye(len(vectors)), tol.equality_tol):
        raise BasisError(f"{what} are not orthonormal")


def tilted_basis(kets, lambdas, tol: Tolerances = DEFAULT_TOL) -> OperatorBasis:
    """Element ``(i, j)`` is ``|ket_i><lambda_j|``; both families as rows."""
    kets = np.asarray(kets, dtype=complex)
    lambdas = np.asarray(lambdas, dtype=complex)
    n = kets.shape[0]
    if kets.shape != (n, n) or lambdas.shape != (n, n):
        raise DimensionError("need n vectors of length n in each family")
    _check_orthonormal(kets, tol, "kets")
    _check_orthonormal(lambdas, tol, "lambdas")
    elems = np.einsum("ia,jb->ijab", kets, lambdas.conj()).reshape(n * n, n, n)
    return OperatorBasis(n, elems, "tilted")


def rank_one_basis(zetas, tol: Tolerances = DEFAULT_TOL) -> OperatorBasis:
    """Element ``(i, j)`` is ``|zeta_i><zeta_j|``; ``zetas`` given as rows."""
    z = as_matrix(zetas)
    n = z.shape[0]
    if z.shape != (n, n):
        raise DimensionError("need n vectors of length n")
    if not is_invertible(z, tol):
        raise BasisError("zeta vectors are linearly dependent")
    elems = np.einsum("ia,jb->ijab", z, z.conj()).reshape(n * n, n, n)
    return OperatorBasis(n, elems, "rank-one")


def change_of_basis_W(basis: OperatorBasis) -> LinearMap:
    """The superoperator with ``W(e_ij) = h_ij``."""
    n = basis.dim
    return LinearMap(n, n, basis.elements.reshape(n * n, n * n).T)


def m_superoperator(basis: OperatorBasis) -> LinearMap:
    """``M = W W^t`` where ``^t`` transposes the natural matrix of ``W``.

    The transpose depends on the lexicographic enumeration of matrix units.
    """
    w = change_of_basis_W(basis).natural
    return LinearMap(basis.dim, basis.dim, w @ w.T)


def extract_zeta(basis: OperatorBasis, tol: Tolerances = DEFAULT_TOL):
    """Recover ``zeta`` with ``h_ij = |zeta_i><zeta_j|``, or ``None``.

    ``zeta_1`` comes from the rank-one factorisation of ``h_11`` (first
    nonzero entry real positive) and ``zeta_j = h_j1 zeta_1 / <zeta_1|zeta_1>``.
    Returns ``(zetas, reason)`` with the vectors as rows.
    """
    n = basis.dim
    h11 = basis.elements[0]
    if not is_psd(h11, tol) or matrix_rank(h11, tol) != 1:
        return None, "h11-not-rank-one-psd"
    w, vecs = np.linalg.eigh((h11 + h11.conj().T) / 2)
    z1 = fix_phase(np.sqrt(w[-1]) * vecs[:, -1])
    norm2 = np.vdot(z1, z1).real
    zetas = np.array([basis.elements[j * n] @ z1 / norm2 for j in range(n)])
    rebuilt = np.einsum("ia,jb->ijab", zetas, zetas.conj()).reshape(n * n, n, n)
    if not allclose_scaled(rebuilt, basis.elements, tol.equality_tol):
        return None, "witness-mismatch"
    return zetas, "ok"


def basis_validity(basis: OperatorBasis, tol: Tolerances = DEFAULT_TOL) -> BasisVerdict:
    """Does ``Phi CP  <=>  sum_a h_a (x) Phi(h_a) >= 0`` hold for this basis?

    The verdict is the complete-order-isomorphism test of ``M = W W^t``.
    When it passes, the rank-one witness ``zeta`` is attached if the given
    labelling admits one.
    """
    m = m_superoperator(basis)
    coi = is_coi(m, tol)
    zetas, zreason = extract_zeta(basis, tol)
    if not coi.is_coi:
        if zetas is not None:
            raise RuntimeError(
                "inconsistent: elements are |zeta_i><zeta_j| but M failed the COI test "
                f"({coi.reason}); tolerances may be too tight"
            )
        return BasisVerdict(False, coi.reason, m, coi.choi_spectrum, None, coi, tol)
    reason = "ok" if zetas is not None else f"coi-without-rank-one-labelling:{zreason}"
    return BasisVerdict(True, reason, m, coi.choi_spectrum, zetas, coi, tol)
