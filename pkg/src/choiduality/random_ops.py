"""Seeded random generators for the property suites.

Every generator takes ``seed`` as an integer or a ``numpy.random.Generator``
(PCG64 via ``numpy.random.default_rng``); equal integer seeds give equal
outputs.
"""

from __future__ import annotations

import numpy as np

from .bases import (
    OperatorBasis,
    canonical_basis,
    gell_mann_basis,
    rank_one_basis,
    tilted_basis,
)
from .maps import LinearMap, map_from_choi, map_from_kraus
from .supermaps import (
    SuperMap,
    SuperMapBasis,
    canonical_supermap_basis,
    functional_basis,
    natural_from_coords,
    sandwich_supermap,
    supermap_from_representing,
)

PRNG_ALGORITHM = "PCG64"


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def ginibre(rows: int, cols: int, seed=None) -> np.ndarray:
    rng = _rng(seed)
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def rand_unitary(n: int, seed=None) -> np.ndarray:
    q, r = np.linalg.qr(ginibre(n, n, seed))
    d = np.diag(r)
    return q * (d / np.abs(d))


def rand_invertible(n: int, seed=None, floor: float = 0.1) -> np.ndarray:
    """Gaussian matrix with singular values floored at ``floor * s_max``."""
    u, s, vh = np.linalg.svd(ginibre(n, n, seed))
    s = np.maximum(s, floor * s[0])
    return (u * s) @ vh


def rand_cp_map(n: int, m: int, k_kraus: int, seed=None) -> LinearMap:
    rng = _rng(seed)
    return map_from_kraus([ginibre(m, n, rng) for _ in range(k_kraus)])


def _planted_choi(d: int, rng: np.random.Generator) -> np.ndarray:
    """Hermitian ``d x d`` matrix with exactly one eigenvalue equal to -1."""
    w = np.concatenate([[-1.0], rng.uniform(0.5, 1.5, d - 1)])
    u = rand_unitary(d, rng)
    return (u * w) @ u.conj().T


def rand_non_cp_map(n: int, m: int, seed=None) -> LinearMap:
    """Hermitian-preserving map whose Choi matrix has a planted -1 eigenvalue."""
    return map_from_choi(_planted_choi(n * m, _rng(seed)), n, m)


def rand_psd_choi_map(n: int, m: int, seed=None) -> LinearMap:
    g = ginibre(n * m, n * m, seed)
    return map_from_choi(g @ g.conj().T, n, m)


def rand_ccpp(dims, seed=None, k_kraus=None) -> SuperMap:
    """Super-map whose representing map has 1-4 random Kraus operators."""
    rng = _rng(seed)
    n1, n2, n3, n4 = dims
    k = int(rng.integers(1, 5)) if k_kraus is None else k_kraus
    t = rand_cp_map(n1 * n2, n3 * n4, k, rng)
    return supermap_from_representing(t, tuple(dims))


def rand_non_ccpp(dims, seed=None) -> SuperMap:
    """Super-map whose representing map has a planted negative Choi eigenvalue."""
    n1, n2, n3, n4 = dims
    t = rand_non_cp_map(n1 * n2, n3 * n4, seed)
    return supermap_from_representing(t, tuple(dims))


def rand_supermap(dims, seed=None) -> SuperMap:
    n1, n2, n3, n4 = dims
    return SuperMap(tuple(dims), ginibre(n3**2 * n4**2, n1**2 * n2**2, seed))


def rand_sandwich(dims, seed=None) -> tuple:
    """``(Theta, pre, post)`` with invertible pre/post (needs n1 == n3, n2 == n4)."""
    rng = _rng(seed)
    n1, n2, n3, n4 = dims
    if (n1, n2) != (n3, n4):
        raise ValueError("invertible sandwiches need n1 == n3 and n2 == n4")
    pre = rand_invertible(n1, rng)
    post = rand_invertible(n2, rng)
    return sandwich_supermap(pre, post), pre, post


BASIS_KINDS = ("generic-gaussian", "rank-one-zeta", "tilted", "pauli-like")


def rand_basis(n: int, kind: str, seed=None) -> OperatorBasis:
    rng = _rng(seed)
    if kind == "generic-gaussian":
        elems = np.array([ginibre(n, n, rng) for _ in range(n * n)])
        return OperatorBasis(n, elems, kind)
    if kind == "rank-one-zeta":
        b = rank_one_basis(rand_invertible(n, rng))
        return OperatorBasis(n, b.elements, kind)
    if kind == "tilted":
        kets = rand_unitary(n, rng).T
        lambdas = rand_unitary(n, rng).T
        return OperatorBasis(n, tilted_basis(kets, lambdas).elements, kind)
    if kind == "pauli-like":
        u = rand_unitary(n, rng)
        elems = u @ gell_mann_basis(n).elements @ u.conj().T
        return OperatorBasis(n, elems, kind)
    raise ValueError(f"unknown basis kind {kind!r}; choose from {BASIS_KINDS}")


SUPERMAP_BASIS_KINDS = (
    "canonical",
    "sandwich",
    "functional-zeta",
    "functional-pauli-like",
    "functional-tilted",
    "generic-gaussian",
)

# Kinds for which the CCPP vs CP correspondence is known to hold.
VALID_SUPERMAP_BASIS_KINDS = ("canonical", "sandwich", "functional-zeta")


def rand_supermap_basis(n1: int, n2: int, kind: str, seed=None) -> SuperMapBasis:
    rng = _rng(seed)
    if kind == "canonical":
        return canonical_supermap_basis(n1, n2)
    if kind == "sandwich":
        theta = sandwich_supermap(rand_invertible(n1, rng), rand_invertible(n2, rng))
        return SuperMapBasis(n1, n2, natural_stack(theta.coeff, n1, n2), kind)
    if kind == "functional-zeta":
        return functional_basis(rand_basis(n1, "rank-one-zeta", rng), rand_basis(n2, "rank-one-zeta", rng))
    if kind == "functional-pauli-like":
        return functional_basis(rand_basis(n1, "pauli-like", rng), rand_basis(n2, "pauli-like", rng))
    if kind == "functional-tilted":
        return functional_basis(canonical_basis(n1), rand_basis(n2, "tilted", rng))
    if kind == "generic-gaussian":
        count = n1 * n1 * n2 * n2
        return SuperMapBasis(n1, n2, natural_stack(ginibre(count, count, rng), n1, n2), kind)
    raise ValueError(f"unknown super-map basis kind {kind!r}; choose from {SUPERMAP_BASIS_KINDS}")


def natural_stack(coord_columns: np.ndarray, n1: int, n2: int) -> np.ndarray:
    """Natural matrices of the maps whose coordinates are the given columns."""
    return natural_from_coords(np.asarray(coord_columns).T, n1, n2)


def entangled_choi_input(n_in: int, n_out: int) -> np.ndarray:
    """``|Omega><Omega|`` on ``C^(n_in n_out) (x) C^(n_in n_out)``."""
    d = n_in * n_out
    omega = np.eye(d).reshape(-1)
    return np.outer(omega, omega).astype(complex)
