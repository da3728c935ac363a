"""Structured results returned by the decision procedures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from .matrix_core import DEFAULT_TOL, Tolerances


@dataclass(frozen=True)
class Verdict:
    holds: bool
    reason: str
    spectrum: tuple = ()
    witness: Optional[Any] = None
    tolerances: Tolerances = DEFAULT_TOL

    def __bool__(self) -> bool:
        return self.holds

    def summary(self) -> dict:
        out = {
            "holds": self.holds,
            "reason": self.reason,
            "spectrum": [float(x) for x in self.spectrum],
            "tolerances": self.tolerances.as_dict(),
        }
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


@dataclass(frozen=True)
class CoiVerdict:
    is_coi: bool
    reason: str
    k_witness: Optional[np.ndarray] = None
    choi_spectrum: tuple = ()
    tolerances: Tolerances = DEFAULT_TOL

    def __bool__(self) -> bool:
        return self.is_coi

    def summary(self) -> dict:
        out = {
            "is_coi": self.is_coi,
            "reason": self.reason,
            "choi_spectrum": [float(x) for x in self.choi_spectrum],
            "tolerances": self.tolerances.as_dict(),
        }
        if self.k_witness is not None:
            out["k_witness"] = _jsonable(self.k_witness)
        return out


@dataclass(frozen=True)
class BasisVerdict:
    """Outcome of :func:`choiduality.bases.basis_validity`.

    ``witness`` holds the vectors ``zeta_i`` (as rows) when every element has
    the form ``|zeta_i><zeta_j|`` in the given labelling. A basis can be valid
    without such a labelling (any reordering of the matrix units, for example),
    in which case ``witness`` is ``None``.
    """

    valid: bool
    reason: str
    m_superoperator: Any = None
    spectrum: tuple = ()
    witness: Optional[np.ndarray] = None
    coi: Optional[CoiVerdict] = None
    tolerances: Tolerances = DEFAULT_TOL

    def __bool__(self) -> bool:
        return self.valid

    def summary(self) -> dict:
        out = {
            "valid": self.valid,
            "reason": self.reason,
            "spectrum": [float(x) for x in self.spectrum],
            "tolerances": self.tolerances.as_dict(),
        }
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


def _jsonable(x):
    from .serialization import matrix_to_json

    if isinstance(x, np.ndarray):
        if x.ndim == 1:
            x = x.reshape(-1, 1)
        return matrix_to_json(x)
    return x
