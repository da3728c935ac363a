"""Dense complex matrix primitives shared by every other module.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.

Reshaping conventions (used project-wide):

* ``vec`` is row-major: ``vec(a)[i * cols + j] == a[i, j]``. With this
  convention ``vec(e_ij)`` is the unit vector at ordinal ``i * n + j``, the
  lexicographic enumeration of matrix units.
* ``unvec_cols`` is the complementary reshaping in which block ``i`` of the
  vector is column ``i`` of the matrix. It sends the entangled vector
  ``sum_i |i> (x) K|i>`` to ``K``.

Tensor factors are always ordered left to right as in ``kron(a, b)``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np


class DimensionError(ValueError):
    """Raised when operand shapes do not fit together."""


class NotHermitianError(ValueError):
    """Raised when a Hermitian-only routine receives a non-Hermitian matrix."""


@dataclass(frozen=True)
class Tolerances:
    hermiticity_tol: float = 1e-9
    psd_tol: float = 1e-9
    rank_rel_tol: float = 1e-9
    invertibility_rel_tol: float = 1e-9
    equality_tol: float = 1e-9

    def __post_init__(self):
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not value > 0:
                raise ValueError(f"{field.name} must be strictly positive, got {value}")

    def with_overrides(self, overrides: Iterable[str]) -> "Tolerances":
        """Return a copy updated from ``key=value`` strings (as given on the CLI)."""
        changes = {}
        names = {f.name for f in dataclasses.fields(self)}
        for item in overrides:
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or key not in names:
                raise ValueError(f"bad tolerance override {item!r}; known keys: {sorted(names)}")
            changes[key] = float(value)
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


DEFAULT_TOL = Tolerances()


def as_matrix(x) -> np.ndarray:
    a = np.asarray(x, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def dagger(a) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def vec(a) -> np.ndarray:
    """Row-major vectorisation, returned as an ``(rows*cols, 1)`` column."""
    a = as_matrix(a)
    return a.reshape(-1, 1)


def unvec(v, rows: int, cols: int) -> np.ndarray:
    """Inverse of :func:`vec`."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size != rows * cols:
        raise DimensionError(f"cannot reshape length {v.size} into {rows}x{cols}")
    return v.reshape(rows, cols)


def vec_cols(a) -> np.ndarray:
    """Stack the columns of ``a``; ``vec_cols(K) == sum_i |i> (x) K|i>``."""
    a = as_matrix(a)
    return a.T.reshape(-1, 1)


def unvec_cols(v, rows: int, cols: int) -> np.ndarray:
    """Inverse of :func:`vec_cols`: block ``i`` of ``v`` becomes column ``i``."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size != rows * cols:
        raise DimensionError(f"cannot reshape length {v.size} into {rows}x{cols}")
    return v.reshape(cols, rows).T


def permute_systems(x, dims: Sequence[int], order: Sequence[int]) -> np.ndarray:
    """Reorder the tensor factors of a square operator.

    ``x`` acts on ``H_0 (x) H_1 (x) ...`` with ``dims[k] = dim H_k``; the
    result acts on ``H_order[0] (x) H_order[1] (x) ...``. This is the single
    place where subsystem regrouping happens.
    """
    x = as_matrix(x)
    dims = tuple(int(d) for d in dims)
    total = int(np.prod(dims))
    if x.shape != (total, total):
        raise DimensionError(f"matrix of shape {x.shape} does not act on dims {dims}")
    k = len(dims)
    if sorted(order) != list(range(k)):
        raise ValueError(f"{order} is not a permutation of {k} systems")
    t = x.reshape(dims + dims)
    axes = list(order) + [k + o for o in order]
    return t.transpose(axes).reshape(total, total)


def partial_trace(x, dim1: int, dim2: int, which: Literal["first", "second"] = "first") -> np.ndarray:
    x = as_matrix(x)
    if x.shape != (dim1 * dim2, dim1 * dim2):
        raise DimensionError(f"matrix of shape {x.shape} is not square of side {dim1}*{dim2}")
    t = x.reshape(dim1, dim2, dim1, dim2)
    if which == "first":
        return np.einsum("iaib->ab", t)
    if which == "second":
        return np.einsum("aibi->ab", t)
    raise ValueError(f"which must be 'first' or 'second', got {which!r}")


def hermiticity_defect(x) -> float:
    x = as_matrix(x)
    if x.shape[0] != x.shape[1]:
        return float("inf")
    return float(np.max(np.abs(x - dagger(x)), initial=0.0))


def is_hermitian(x, tol: Tolerances = DEFAULT_TOL) -> bool:
    return hermiticity_defect(x) <= tol.hermiticity_tol


def hermitian_eigenvalues(x, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix.

    Raises :class:`NotHermitianError` if ``x`` deviates from its adjoint by
    more than ``tol.hermiticity_tol`` in any entry.
    """
    x = as_matrix(x)
    defect = hermiticity_defect(x)
    if defect > tol.hermiticity_tol:
        raise NotHermitianError(f"max |x - x^dagger| = {defect:.3g} exceeds {tol.hermiticity_tol:g}")
    return np.linalg.eigvalsh((x + dagger(x)) / 2)


def psd_threshold(eigenvalues, tol: Tolerances = DEFAULT_TOL) -> float:
    scale = max(1.0, float(np.max(np.abs(eigenvalues), initial=0.0)))
    return -tol.psd_tol * scale


def is_psd(x, tol: Tolerances = DEFAULT_TOL) -> bool:
    x = as_matrix(x)
    if x.shape[0] != x.shape[1] or not is_hermitian(x, tol):
        return False
    w = hermitian_eigenvalues(x, tol)
    return bool(w[0] >= psd_threshold(w, tol))


def matrix_rank(x, tol: Tolerances = DEFAULT_TOL) -> int:
    s = np.linalg.svd(as_matrix(x), compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > tol.rank_rel_tol * s[0]))


def is_invertible(x, tol: Tolerances = DEFAULT_TOL) -> bool:
    x = as_matrix(x)
    if x.shape[0] != x.shape[1]:
        return False
    s = np.linalg.svd(x, compute_uv=False)
    return bool(s[0] > 0 and s[-1] > tol.invertibility_rel_tol * s[0])


def max_abs_diff(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b), initial=0.0))


def allclose_scaled(a, b, tol: float) -> bool:
    """``max|a - b| <= tol * max(1, max|a|, max|b|)``."""
    a, b = np.asarray(a), np.asarray(b)
    scale = max(1.0, float(np.max(np.abs(a), initial=0.0)), float(np.max(np.abs(b), initial=0.0)))
    return max_abs_diff(a, b) <= tol * scale


def fix_phase(v) -> np.ndarray:
    """Rotate ``v`` by a global phase so its first nonzero entry is real positive.

    Entries below ``1e-12`` times the largest magnitude count as zero.
    """
    v = np.asarray(v, dtype=complex)
    flat = v.reshape(-1)
    mags = np.abs(flat)
    if mags.size == 0 or mags.max() == 0:
        return v.copy()
    idx = int(np.argmax(mags > 1e-12 * mags.max()))
    return v * (np.conj(flat[idx]) / mags[idx])
