"""Super-maps ``Theta: L(B(H1), B(H2)) -> L(B(H3), B(H4))``.

Coordinates
-----------
The canonical basis of ``L(B(H1), B(H2))`` is
``E_ijkl(A) = tr(e_ij^dagger A) e_kl`` with ordinal
``(i*n1 + j) * n2**2 + (k*n2 + l)``. A map's coordinate vector in this
basis is the row-major flattening of the transpose of its natural matrix
(see :func:`map_coords`). The basis is orthonormal for the Hilbert-Schmidt
inner product of natural matrices, so coordinates need no solve.

A :class:`SuperMap` stores the coefficient matrix whose column ``alpha`` is
the coordinate vector of ``Theta(E_alpha)``.

Choi-type objects ``Lambda in L(B1,B2) (x) L(B3,B4)`` are represented as
linear maps ``B(H1 (x) H3) -> B(H2 (x) H4)`` acting as
``A (x) B -> sum F(A) (x) G(B)``. Their coefficient matrix ``g`` satisfies
``Lambda = sum g[alpha, gamma] E_alpha (x) E_gamma``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from . import maps as _maps
from .bases import BasisError, OperatorBasis
from .maps import (
    LinearMap,
    compose_map,
    is_coi,
    is_cp,
    natural_from_choi,
    system_permutation_map,
    tensor_map,
)
from .matrix_core import DEFAULT_TOL, DimensionError, Tolerances, as_matrix, matrix_rank, partial_trace
from .verdicts import CoiVerdict, Verdict

Dims = Tuple[int, int, int, int]


def map_coords(natural: np.ndarray) -> np.ndarray:
    """Coordinates in the canonical map basis; leading batch axes allowed."""
    natural = np.asarray(natural)
    return np.swapaxes(natural, -1, -2).reshape(natural.shape[:-2] + (-1,))


def natural_from_coords(coords: np.ndarray, n_in: int, n_out: int) -> np.ndarray:
    coords = np.asarray(coords)
    t = coords.reshape(coords.shape[:-1] + (n_in * n_in, n_out * n_out))
    return np.swapaxes(t, -1, -2)


@dataclass(frozen=True, eq=False)
class SuperMapBasis:
    n1: int
    n2: int
    naturals: np.ndarray
    label: str = ""

    def __post_init__(self):
        count = self.n1**2 * self.n2**2
        nats = np.asarray(self.naturals, dtype=complex)
        if nats.shape != (count, self.n2**2, self.n1**2):
            raise DimensionError(
                f"expected {count} natural matrices of shape {(self.n2**2, self.n1**2)}, got {nats.shape}"
            )
        if matrix_rank(nats.reshape(count, count)) != count:
            raise BasisError("super-map basis elements are linearly dependent")
        object.__setattr__(self, "naturals", nats)

    @classmethod
    def from_maps(cls, elements: Sequence[LinearMap], n1: int, n2: int, label: str = ""):
        for e in elements:
            if (e.in_dim, e.out_dim) != (n1, n2):
                raise DimensionError(f"element {e} is not a map {n1}->{n2}")
        return cls(n1, n2, np.array([e.natural for e in elements]), label)

    @property
    def elements(self) -> list:
        return [LinearMap(self.n1, self.n2, nat) for nat in self.naturals]

    def coordinate_matrix(self) -> np.ndarray:
        """``V`` with ``F_alpha = sum_beta V[beta, alpha] E_beta``."""
        return map_coords(self.naturals).T

    def __len__(self) -> int:
        return len(self.naturals)

    def __repr__(self) -> str:
        return f"SuperMapBasis(n1={self.n1}, n2={self.n2}, label={self.label!r})"


def canonical_supermap_basis(n1: int, n2: int) -> SuperMapBasis:
    count = n1 * n1 * n2 * n2
    nats = natural_from_coords(np.eye(count), n1, n2)
    return SuperMapBasis(n1, n2, nats, "canonical")


def functional_basis(b1: OperatorBasis, b2: OperatorBasis) -> SuperMapBasis:
    """Elements ``A -> tr(b1_i^dagger A) b2_j`` in lexicographic ``(i, j)`` order."""
    n1, n2 = b1.dim, b2.dim
    v1 = b1.elements.reshape(n1 * n1, n1 * n1)
    v2 = b2.elements.reshape(n2 * n2, n2 * n2)
    nats = np.einsum("ja,ib->ijab", v2, v1.conj()).reshape(n1 * n1 * n2 * n2, n2 * n2, n1 * n1)
    return SuperMapBasis(n1, n2, nats, f"functional({b1.label},{b2.label})")


@dataclass(frozen=True, eq=False)
class SuperMap:
    dims: Dims
    coeff: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != 4 or min(dims) < 1:
            raise DimensionError(f"dims must be four positive integers, got {self.dims}")
        n1, n2, n3, n4 = dims
        coeff = np.asarray(self.coeff, dtype=complex)
        shape = (n3 * n3 * n4 * n4, n1 * n1 * n2 * n2)
        if coeff.shape != shape:
            raise DimensionError(f"coefficient matrix has shape {coeff.shape}, expected {shape}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "coeff", coeff)

    def __call__(self, phi: LinearMap) -> LinearMap:
        return apply_supermap(self, phi)

    def __add__(self, other: "SuperMap") -> "SuperMap":
        _same_dims(self, other)
        return SuperMap(self.dims, self.coeff + other.coeff)

    def __sub__(self, other: "SuperMap") -> "SuperMap":
        _same_dims(self, other)
        return SuperMap(self.dims, self.coeff - other.coeff)

    def __rmul__(self, scalar) -> "SuperMap":
        return SuperMap(self.dims, scalar * self.coeff)

    def __repr__(self) -> str:
        return f"SuperMap(dims={self.dims})"


def _same_dims(a: SuperMap, b: SuperMap):
    if a.dims != b.dims:
        raise DimensionError(f"super-maps have dims {a.dims} and {b.dims}")


def identity_supermap(n1: int, n2: int) -> SuperMap:
    return SuperMap((n1, n2, n1, n2), np.eye(n1 * n1 * n2 * n2))


def supermap_from_action(images: Sequence[LinearMap], n1: int, n2: int) -> SuperMap:
    """Super-map sending the canonical ``E_alpha`` (1->2) to ``images[alpha]``."""
    if len(images) != n1 * n1 * n2 * n2:
        raise DimensionError(f"need {n1*n1*n2*n2} images, got {len(images)}")
    n3, n4 = images[0].in_dim, images[0].out_dim
    if any((im.in_dim, im.out_dim) != (n3, n4) for im in images):
        raise DimensionError("images must share one shape")
    coeff = map_coords(np.array([im.natural for im in images])).T
    return SuperMap((n1, n2, n3, n4), coeff)


def apply_supermap(theta: SuperMap, phi: LinearMap) -> LinearMap:
    n1, n2, n3, n4 = theta.dims
    if (phi.in_dim, phi.out_dim) != (n1, n2):
        raise DimensionError(f"{theta} cannot act on {phi}")
    return LinearMap(n3, n4, natural_from_coords(theta.coeff @ map_coords(phi.natural), n3, n4))


def sandwich_supermap(pre, post) -> SuperMap:
    """``Theta(Phi)(X) = post . Phi(pre X pre^dagger) . post^dagger``.

    ``pre`` is ``n1 x n3`` and ``post`` is ``n4 x n2``.
    """
    pre, post = as_matrix(pre), as_matrix(post)
    n1, n3 = pre.shape
    n4, n2 = post.shape
    pre_nat = np.kron(pre, pre.conj())
    post_nat = np.kron(post, post.conj())
    return SuperMap((n1, n2, n3, n4), np.kron(pre_nat.T, post_nat))


# Choi-type representations


@dataclass(frozen=True, eq=False)
class ChoiType:
    """An element of ``L(B1,B2) (x) L(B3,B4)`` as a map ``B(H1 H3) -> B(H2 H4)``."""

    dims: Dims
    map: LinearMap

    def __post_init__(self):
        n1, n2, n3, n4 = self.dims
        if (self.map.in_dim, self.map.out_dim) != (n1 * n3, n2 * n4):
            raise DimensionError(f"map {self.map} does not match Choi-type dims {self.dims}")


def choi_type_from_coefficients(g: np.ndarray, dims: Dims) -> ChoiType:
    n1, n2, n3, n4 = dims
    t = np.asarray(g, dtype=complex).reshape(n1, n1, n2, n2, n3, n3, n4, n4)
    nat = t.transpose(2, 6, 3, 7, 0, 4, 1, 5).reshape((n2 * n4) ** 2, (n1 * n3) ** 2)
    return ChoiType(tuple(dims), LinearMap(n1 * n3, n2 * n4, nat))


def choi_type_coefficients(lam: ChoiType) -> np.ndarray:
    n1, n2, n3, n4 = lam.dims
    t = lam.map.natural.reshape(n2, n4, n2, n4, n1, n3, n1, n3)
    return t.transpose(4, 6, 0, 2, 5, 7, 1, 3).reshape(n1 * n1 * n2 * n2, n3 * n3 * n4 * n4)


def choi_type(theta: SuperMap, basis: Optional[SuperMapBasis] = None) -> ChoiType:
    """``Lambda = sum_beta F_beta (x) Theta(F_beta)``; canonical basis by default."""
    n1, n2, _, _ = theta.dims
    if basis is None:
        return choi_type_from_coefficients(theta.coeff.T, theta.dims)
    if (basis.n1, basis.n2) != (n1, n2):
        raise DimensionError(f"{basis} does not match {theta}")
    v = basis.coordinate_matrix()
    return choi_type_from_coefficients(v @ (theta.coeff @ v).T, theta.dims)


def choi_matrix_of_choi_type(lam: ChoiType) -> np.ndarray:
    return _maps.choi_matrix(lam.map)


def swap_choi_type(lam: ChoiType) -> ChoiType:
    """``sum Psi_i (x) Phi_i  ->  sum Phi_i (x) Psi_i``."""
    n1, n2, n3, n4 = lam.dims
    p_in = system_permutation_map((n3, n1), (1, 0))
    p_out = system_permutation_map((n2, n4), (1, 0))
    return ChoiType((n3, n4, n1, n2), compose_map(p_out, compose_map(lam.map, p_in)))


def canonical_m(n1: int, n2: int) -> ChoiType:
    """``sum_alpha E_alpha (x) E_alpha``."""
    return choi_type(identity_supermap(n1, n2))


def basis_n(basis: SuperMapBasis) -> ChoiType:
    """``sum_beta F_beta (x) F_beta``."""
    return choi_type(identity_supermap(basis.n1, basis.n2), basis)


# Representing maps


@lru_cache(maxsize=None)
def _choi_to_coords(n_in: int, n_out: int) -> np.ndarray:
    """Permutation ``P`` with ``coords(Gamma_x) = P @ vec(x)``."""
    d = n_in * n_out
    xs = np.eye(d * d).reshape(d * d, d, d)
    coords = map_coords(natural_from_choi(xs, n_in, n_out))
    p = coords.T.real.copy()
    p.setflags(write=False)
    return p


def representing_map(theta: SuperMap) -> LinearMap:
    """``T(x) = C_{Theta(Gamma_x)}`` as a map ``B(H1 H2) -> B(H3 H4)``."""
    n1, n2, n3, n4 = theta.dims
    p12 = _choi_to_coords(n1, n2)
    p34 = _choi_to_coords(n3, n4)
    return LinearMap(n1 * n2, n3 * n4, p34.T @ theta.coeff @ p12)


def supermap_from_representing(t: LinearMap, dims: Dims) -> SuperMap:
    """``Theta(Phi)(A) = tr_3[(A^t (x) I) T(C_Phi)]``."""
    n1, n2, n3, n4 = dims
    if (t.in_dim, t.out_dim) != (n1 * n2, n3 * n4):
        raise DimensionError(f"{t} is not a representing map for dims {dims}")
    p12 = _choi_to_coords(n1, n2)
    p34 = _choi_to_coords(n3, n4)
    return SuperMap(dims, p34 @ t.natural @ p12.T)


def is_ccpp(theta: SuperMap, tol: Tolerances = DEFAULT_TOL) -> Verdict:
    return is_cp(representing_map(theta), tol)


def is_coi_supermap(theta: SuperMap, tol: Tolerances = DEFAULT_TOL) -> CoiVerdict:
    """COI test of the representing map; ``K`` acts ``H1 H2 -> H3 H4``."""
    return is_coi(representing_map(theta), tol)


def coi_supermap_action(k, phi: LinearMap, a, n3: int) -> np.ndarray:
    """``tr_3[(A^t (x) I) K C_Phi K^dagger]`` for a COI witness ``K``."""
    k = as_matrix(k)
    a = as_matrix(a)
    out = k @ _maps.choi_matrix(phi) @ k.conj().T
    n4 = out.shape[0] // n3
    return partial_trace(np.kron(a.T, np.eye(n4)) @ out, n3, n4, "first")


# Pairing, adjoint, algebra


def map_pairing(psi: LinearMap, phi: LinearMap) -> complex:
    """``tr(C_psi^t C_phi)``."""
    return complex(np.sum(_maps.choi_matrix(psi) * _maps.choi_matrix(phi)))


def pairing(theta1: SuperMap, theta2: SuperMap) -> complex:
    """``tr(C_{Lambda_1}^t C_{Lambda_2})`` with canonical Choi-type representations."""
    _same_dims(theta1, theta2)
    c1 = choi_matrix_of_choi_type(choi_type(theta1))
    c2 = choi_matrix_of_choi_type(choi_type(theta2))
    return complex(np.sum(c1 * c2))


def adjoint_supermap(theta: SuperMap) -> SuperMap:
    n1, n2, n3, n4 = theta.dims
    return SuperMap((n3, n4, n1, n2), theta.coeff.T)


def compose_supermap(theta1: SuperMap, theta2: SuperMap) -> SuperMap:
    """``theta1 o theta2`` (``theta2`` acts first)."""
    if theta2.dims[2:] != theta1.dims[:2]:
        raise DimensionError(f"cannot compose {theta1} after {theta2}")
    return SuperMap(theta2.dims[:2] + theta1.dims[2:], theta1.coeff @ theta2.coeff)


def tensor_supermap(theta1: SuperMap, theta2: SuperMap) -> SuperMap:
    """``theta1 (x) theta2`` acting on maps ``B(H1 H1') -> B(H2 H2')``.

    Built on representing maps: factors are regrouped from ``(1, 2, 1', 2')``
    to ``(1, 1', 2, 2')`` around ``T1 (x) T2``.
    """
    a1, a2, a3, a4 = theta1.dims
    b1, b2, b3, b4 = theta2.dims
    t = tensor_map(representing_map(theta1), representing_map(theta2))
    p_in = system_permutation_map((a1, b1, a2, b2), (0, 2, 1, 3))
    p_out = system_permutation_map((a3, a4, b3, b4), (0, 2, 1, 3))
    t = compose_map(p_out, compose_map(t, p_in))
    return supermap_from_representing(t, (a1 * b1, a2 * b2, a3 * b3, a4 * b4))


# Basis dependence of the CCPP vs CP correspondence


def theta_of_G(g: ChoiType) -> SuperMap:
    """The unique ``Theta^G`` with ``G = (id (x) Theta^G) M``."""
    n1, n2, n3, n4 = g.dims
    if (n3, n4) != (n1, n2):
        raise DimensionError(f"G must live in L(B1,B2) (x) L(B1,B2), got dims {g.dims}")
    return SuperMap(g.dims, choi_type_coefficients(g).T)


def theta_of_basis(basis: SuperMapBasis) -> SuperMap:
    """``Theta^N = V V^t`` where ``F_alpha = V(E_alpha)``."""
    v = basis.coordinate_matrix()
    return SuperMap((basis.n1, basis.n2, basis.n1, basis.n2), v @ v.T)


def _coi_to_verdict(coi: CoiVerdict, tol: Tolerances) -> Verdict:
    return Verdict(coi.is_coi, coi.reason, coi.choi_spectrum, coi.k_witness, tol)


def correspondence_check_basis(basis: SuperMapBasis, tol: Tolerances = DEFAULT_TOL) -> Verdict:
    return _coi_to_verdict(is_coi_supermap(theta_of_basis(basis), tol), tol)


def correspondence_check_G(g: ChoiType, tol: Tolerances = DEFAULT_TOL) -> Verdict:
    return _coi_to_verdict(is_coi_supermap(theta_of_G(g), tol), tol)
