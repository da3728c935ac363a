"""JSON encodings for matrices, bases, maps and super-maps.

Matrix schema: ``{"rows": r, "cols": c, "entries": [[re, im], ...]}`` with
entries row-major. Python's ``json`` writes floats with ``repr``, which
round-trips finite doubles exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .bases import OperatorBasis
from .maps import LinearMap, map_from_action, map_from_kraus
from .matrix_core import DimensionError
from .supermaps import SuperMap, SuperMapBasis


class SchemaError(ValueError):
    """Raised for JSON documents that do not follow the published schemas."""


def matrix_to_json(a) -> dict:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {a.shape}")
    flat = a.reshape(-1)
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in flat],
    }


def matrix_from_json(obj) -> np.ndarray:
    try:
        rows, cols, entries = int(obj["rows"]), int(obj["cols"]), obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad matrix object: {exc}") from exc
    if rows < 1 or cols < 1 or len(entries) != rows * cols:
        raise SchemaError(f"matrix declares {rows}x{cols} but has {len(entries)} entries")
    try:
        arr = np.array([complex(float(re), float(im)) for re, im in entries], dtype=complex)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad matrix entry: {exc}") from exc
    return arr.reshape(rows, cols)


def basis_to_json(basis: OperatorBasis) -> dict:
    return {
        "dim": basis.dim,
        "label": basis.label,
        "elements": [matrix_to_json(e) for e in basis.elements],
    }


def basis_from_json(obj) -> OperatorBasis:
    """Parse a basis; shape or independence violations raise from the constructor."""
    try:
        dim = int(obj["dim"])
        elements = [matrix_from_json(e) for e in obj["elements"]]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"bad basis object: {exc}") from exc
    if any(e.shape != (dim, dim) for e in elements):
        raise DimensionError(f"basis elements must all be {dim}x{dim}")
    return OperatorBasis(dim, np.array(elements).reshape(len(elements), dim, dim), str(obj.get("label", "")))


def map_to_json(phi: LinearMap) -> dict:
    return {"in_dim": phi.in_dim, "out_dim": phi.out_dim, "natural_matrix": matrix_to_json(phi.natural)}


def map_from_json(obj) -> LinearMap:
    """Accepts ``natural_matrix``, ``kraus`` or ``images`` forms."""
    if not isinstance(obj, dict):
        raise SchemaError("map must be a JSON object")
    if "natural_matrix" in obj:
        try:
            return LinearMap(int(obj["in_dim"]), int(obj["out_dim"]), matrix_from_json(obj["natural_matrix"]))
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"bad map object: {exc}") from exc
    if "kraus" in obj:
        return map_from_kraus([matrix_from_json(k) for k in obj["kraus"]])
    if "images" in obj:
        return map_from_action([matrix_from_json(m) for m in obj["images"]])
    raise SchemaError("map needs one of 'natural_matrix', 'kraus', 'images'")


def supermap_to_json(theta: SuperMap) -> dict:
    return {"dims": list(theta.dims), "coeff_matrix": matrix_to_json(theta.coeff)}


def supermap_from_json(obj) -> SuperMap:
    try:
        return SuperMap(tuple(int(d) for d in obj["dims"]), matrix_from_json(obj["coeff_matrix"]))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad super-map object: {exc}") from exc


def supermap_basis_to_json(basis: SuperMapBasis) -> dict:
    return {
        "n1": basis.n1,
        "n2": basis.n2,
        "label": basis.label,
        "elements": [map_to_json(e) for e in basis.elements],
    }


def supermap_basis_from_json(obj) -> SuperMapBasis:
    try:
        n1, n2 = int(obj["n1"]), int(obj["n2"])
        elements = [map_from_json(e) for e in obj["elements"]]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad super-map basis object: {exc}") from exc
    return SuperMapBasis.from_maps(elements, n1, n2, str(obj.get("label", "")))


def load_json(path) -> object:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc


def dump_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=1), encoding="utf-8")
