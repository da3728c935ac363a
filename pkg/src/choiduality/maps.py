"""Linear maps ``B(C^n) -> B(C^m)`` and their Choi matrices.

A map is stored through its natural (superoperator) matrix ``N`` of shape
``(m*m, n*n)`` whose column ``i*n + j`` is ``vec(Phi(e_ij))`` under the
row-major ``vec`` of :mod:`choiduality.matrix_core`. With this convention
a conjugation ``X -> K X K^dagger`` has ``N = kron(K, conj(K))``.

The canonical Choi matrix ``sum_ij e_ij (x) Phi(e_ij)`` is an entry
reshuffle of ``N``; input factor first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .matrix_core import (
    DEFAULT_TOL,
    DimensionError,
    Tolerances,
    allclose_scaled,
    as_matrix,
    dagger,
    fix_phase,
    hermiticity_defect,
    hermitian_eigenvalues,
    is_invertible,
    is_psd,
    matrix_rank,
    unvec_cols,
)
from .verdicts import CoiVerdict, Verdict


@dataclass(frozen=True, eq=False)
class LinearMap:
    in_dim: int
    out_dim: int
    natural: np.ndarray

    def __post_init__(self):
        nat = np.asarray(self.natural, dtype=complex)
        shape = (self.out_dim**2, self.in_dim**2)
        if nat.shape != shape:
            raise DimensionError(f"natural matrix has shape {nat.shape}, expected {shape}")
        object.__setattr__(self, "natural", nat)

    def __call__(self, a) -> np.ndarray:
        return apply(self, a)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        _check_same_dims(self, other)
        return LinearMap(self.in_dim, self.out_dim, self.natural + other.natural)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        _check_same_dims(self, other)
        return LinearMap(self.in_dim, self.out_dim, self.natural - other.natural)

    def __rmul__(self, scalar) -> "LinearMap":
        return LinearMap(self.in_dim, self.out_dim, scalar * self.natural)

    def __repr__(self) -> str:
        return f"LinearMap(in_dim={self.in_dim}, out_dim={self.out_dim})"


def _check_same_dims(a: LinearMap, b: LinearMap):
    if (a.in_dim, a.out_dim) != (b.in_dim, b.out_dim):
        raise DimensionError(f"maps have dims {a.in_dim}->{a.out_dim} and {b.in_dim}->{b.out_dim}")


def identity_map(n: int) -> LinearMap:
    return LinearMap(n, n, np.eye(n * n, dtype=complex))


def transpose_map(n: int) -> LinearMap:
    return map_from_action([e.T for e in _matrix_units(n)])


def _matrix_units(n: int) -> np.ndarray:
    return np.eye(n * n, dtype=complex).reshape(n * n, n, n)


def map_from_kraus(kraus: Sequence) -> LinearMap:
    """``Phi(A) = sum_k K_k A K_k^dagger``."""
    ops = [as_matrix(k) for k in kraus]
    if not ops:
        raise ValueError("need at least one Kraus operator")
    m, n = ops[0].shape
    if any(k.shape != (m, n) for k in ops):
        raise DimensionError("Kraus operators must share one shape")
    natural = sum(np.kron(k, k.conj()) for k in ops)
    return LinearMap(n, m, natural)


def conjugation_map(k) -> LinearMap:
    return map_from_kraus([k])


def map_from_action(images: Sequence) -> LinearMap:
    """Map defined by the images of ``e_ij`` in lexicographic order."""
    imgs = np.asarray(images, dtype=complex)
    if imgs.ndim != 3 or imgs.shape[1] != imgs.shape[2]:
        raise DimensionError(f"images must be a stack of square matrices, got shape {imgs.shape}")
    n = int(round(np.sqrt(imgs.shape[0])))
    if n * n != imgs.shape[0]:
        raise DimensionError(f"{imgs.shape[0]} images is not a square count")
    m = imgs.shape[1]
    return LinearMap(n, m, imgs.reshape(n * n, m * m).T)


def apply(phi: LinearMap, a) -> np.ndarray:
    a = as_matrix(a)
    if a.shape != (phi.in_dim, phi.in_dim):
        raise DimensionError(f"input of shape {a.shape} for a map on {phi.in_dim}x{phi.in_dim}")
    return (phi.natural @ a.reshape(-1)).reshape(phi.out_dim, phi.out_dim)


def choi_from_natural(natural: np.ndarray, n: int, m: int) -> np.ndarray:
    """Canonical Choi matrix from a natural matrix; leading batch axes allowed."""
    batch = natural.shape[:-2]
    t = natural.reshape(batch + (m, m, n, n))
    k = len(batch)
    t = t.transpose(tuple(range(k)) + (k + 2, k, k + 3, k + 1))
    return t.reshape(batch + (n * m, n * m))


def natural_from_choi(choi: np.ndarray, n: int, m: int) -> np.ndarray:
    """Inverse of :func:`choi_from_natural`; leading batch axes allowed."""
    batch = choi.shape[:-2]
    t = choi.reshape(batch + (n, m, n, m))
    k = len(batch)
    t = t.transpose(tuple(range(k)) + (k + 1, k + 3, k, k + 2))
    return t.reshape(batch + (m * m, n * n))


def choi_matrix(phi: LinearMap, basis=None) -> np.ndarray:
    """``sum_a b_a (x) Phi(b_a)`` over an operator basis of the input space.

    Without ``basis`` the canonical matrix units are used via a reshuffle of
    the natural matrix; with a basis the sum is formed literally.
    """
    n, m = phi.in_dim, phi.out_dim
    if basis is None:
        return choi_from_natural(phi.natural, n, m)
    if basis.dim != n:
        raise DimensionError(f"basis of B(C^{basis.dim}) for a map on B(C^{n})")
    elems = basis.elements
    images = (elems.reshape(n * n, n * n) @ phi.natural.T).reshape(n * n, m, m)
    return np.einsum("aij,akl->ikjl", elems, images).reshape(n * m, n * m)


def map_from_choi(x, n: int, m: int) -> LinearMap:
    """``Gamma_X(A) = tr_1[(A^t (x) I) X]``, realised as an index reshuffle."""
    x = as_matrix(x)
    if x.shape != (n * m, n * m):
        raise DimensionError(f"Choi matrix of shape {x.shape} for dims {n}, {m}")
    return LinearMap(n, m, natural_from_choi(x, n, m))


def is_cp(phi: LinearMap, tol: Tolerances = DEFAULT_TOL) -> Verdict:
    return choi_psd_verdict(choi_matrix(phi), tol)


def choi_psd_verdict(c: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> Verdict:
    """PSD test of a (possibly generalised) Choi matrix with a reason code."""
    defect = hermiticity_defect(c)
    if defect > tol.hermiticity_tol:
        return Verdict(False, "choi-not-hermitian", (), {"hermiticity_defect": defect}, tol)
    w = hermitian_eigenvalues(c, tol)
    holds = is_psd(c, tol)
    return Verdict(holds, "ok" if holds else "choi-not-psd", tuple(w), None, tol)


def is_coi(phi: LinearMap, tol: Tolerances = DEFAULT_TOL) -> CoiVerdict:
    """Decide whether ``phi`` is ``X -> K X K^dagger`` for an invertible ``K``.

    The canonical Choi matrix must be PSD of rank one, ``C = v v^dagger``;
    then ``K = unvec_cols(v)``, with ``v`` phase-fixed so its first nonzero
    entry is real positive.
    """
    n, m = phi.in_dim, phi.out_dim
    if n != m:
        return CoiVerdict(False, "non-square", tolerances=tol)
    c = choi_matrix(phi)
    if hermiticity_defect(c) > tol.hermiticity_tol:
        return CoiVerdict(False, "choi-not-psd", tolerances=tol)
    w, vecs = np.linalg.eigh((c + dagger(c)) / 2)
    spectrum = tuple(w)
    if not is_psd(c, tol):
        return CoiVerdict(False, "choi-not-psd", choi_spectrum=spectrum, tolerances=tol)
    if matrix_rank(c, tol) != 1:
        return CoiVerdict(False, "choi-rank>1", choi_spectrum=spectrum, tolerances=tol)
    v = fix_phase(np.sqrt(w[-1]) * vecs[:, -1])
    k = unvec_cols(v, m, n)
    if not is_invertible(k, tol):
        return CoiVerdict(False, "K-singular", k, spectrum, tol)
    if not allclose_scaled(phi.natural, np.kron(k, k.conj()), tol.equality_tol):
        return CoiVerdict(False, "witness-mismatch", k, spectrum, tol)
    return CoiVerdict(True, "ok", k, spectrum, tol)


def tensor_naturals(n1: np.ndarray, n2: np.ndarray, dims1, dims2) -> np.ndarray:
    """Natural matrix of ``Phi1 (x) Phi2`` acting on ``B(H (x) H')``."""
    (a_in, a_out), (b_in, b_out) = dims1, dims2
    t1 = n1.reshape(a_out, a_out, a_in, a_in)
    t2 = n2.reshape(b_out, b_out, b_in, b_in)
    t = np.einsum("abij,cdkl->acbdikjl", t1, t2)
    return t.reshape((a_out * b_out) ** 2, (a_in * b_in) ** 2)


def tensor_map(phi1: LinearMap, phi2: LinearMap) -> LinearMap:
    nat = tensor_naturals(
        phi1.natural, phi2.natural, (phi1.in_dim, phi1.out_dim), (phi2.in_dim, phi2.out_dim)
    )
    return LinearMap(phi1.in_dim * phi2.in_dim, phi1.out_dim * phi2.out_dim, nat)


def compose_map(phi1: LinearMap, phi2: LinearMap) -> LinearMap:
    """``phi1 o phi2`` (``phi2`` acts first)."""
    if phi2.out_dim != phi1.in_dim:
        raise DimensionError(f"cannot compose {phi1} after {phi2}")
    return LinearMap(phi2.in_dim, phi1.out_dim, phi1.natural @ phi2.natural)


def system_permutation_map(dims, order) -> LinearMap:
    """The map ``X -> P X P^dagger`` that reorders tensor factors as in
    :func:`choiduality.matrix_core.permute_systems`."""
    total = int(np.prod(dims))
    idx = np.arange(total).reshape(tuple(dims)).transpose(order).reshape(-1)
    p = np.eye(total)[idx]
    return conjugation_map(p)
