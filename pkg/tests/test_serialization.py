import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from choiduality.bases import pauli_basis
from choiduality.maps import map_from_kraus
from choiduality.matrix_core import DimensionError
from choiduality.random_ops import rand_cp_map, rand_supermap, rand_supermap_basis
from choiduality.serialization import (
    SchemaError,
    basis_from_json,
    basis_to_json,
    dump_json,
    load_json,
    map_from_json,
    map_to_json,
    matrix_from_json,
    matrix_to_json,
    supermap_basis_from_json,
    supermap_basis_to_json,
    supermap_from_json,
    supermap_to_json,
)

finite = st.floats(allow_nan=False, allow_infinity=False)


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_matrix_round_trip_is_bit_exact(r, c, data):
    re = data.draw(st.lists(finite, min_size=r * c, max_size=r * c))
    im = data.draw(st.lists(finite, min_size=r * c, max_size=r * c))
    a = (np.array(re) + 1j * np.array(im)).reshape(r, c)
    text = json.dumps(matrix_to_json(a))
    b = matrix_from_json(json.loads(text))
    assert np.array_equal(a.view(np.float64), b.view(np.float64))


def test_matrix_schema_is_row_major():
    obj = matrix_to_json(np.array([[1, 2j], [3, 4]]))
    assert obj == {"rows": 2, "cols": 2, "entries": [[1.0, 0.0], [0.0, 2.0], [3.0, 0.0], [4.0, 0.0]]}


@pytest.mark.parametrize(
    "bad",
    [
        {"rows": 2, "cols": 2, "entries": [[1, 0]]},
        {"rows": 1, "cols": 1, "entries": [["x", 0]]},
        {"cols": 1, "entries": [[1, 0]]},
        [1, 2],
    ],
)
def test_matrix_schema_errors(bad):
    with pytest.raises(SchemaError):
        matrix_from_json(bad)


def test_basis_round_trip():
    b = basis_from_json(basis_to_json(pauli_basis()))
    assert b.label == "pauli" and np.array_equal(b.elements, pauli_basis().elements)
    bad = basis_to_json(pauli_basis())
    bad["dim"] = 3
    with pytest.raises(DimensionError):
        basis_from_json(bad)


def test_map_forms_agree():
    k = [np.array([[1, 1j], [0, 2]]), np.array([[0, 1], [1, 0]])]
    phi = map_from_kraus(k)
    from_kraus = map_from_json({"kraus": [matrix_to_json(x) for x in k]})
    from_natural = map_from_json(map_to_json(phi))
    units = np.eye(4).reshape(4, 2, 2)
    from_images = map_from_json({"images": [matrix_to_json(phi(e)) for e in units]})
    for other in (from_kraus, from_natural, from_images):
        assert np.allclose(other.natural, phi.natural)
    with pytest.raises(SchemaError):
        map_from_json({"nothing": 1})


def test_supermap_round_trips():
    theta = rand_supermap((2, 2, 1, 2), 0)
    back = supermap_from_json(supermap_to_json(theta))
    assert back.dims == theta.dims and np.array_equal(back.coeff, theta.coeff)
    basis = rand_supermap_basis(2, 2, "sandwich", 1)
    back = supermap_basis_from_json(supermap_basis_to_json(basis))
    assert np.array_equal(back.naturals, basis.naturals)


def test_file_helpers(tmp_path):
    p = tmp_path / "m.json"
    dump_json(map_to_json(rand_cp_map(2, 2, 1, 0)), p)
    assert map_from_json(load_json(p)).in_dim == 2
    p.write_text("{oops")
    with pytest.raises(SchemaError):
        load_json(p)
