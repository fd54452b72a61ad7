import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.python.service.dirac.exceptions import ArgumentError
from src.python.service.dirac.field_io import (
    field_from_csv,
    field_from_json,
    field_to_csv,
    field_to_json,
    load_field,
    save_field,
)
from src.python.service.dirac.lattice import LatticeField, LatticeGrid


def test_csv_layout():
    grid = LatticeGrid(2, 2, 0.5)
    u = LatticeField(grid, np.arange(8, dtype=complex).reshape(2, 2, 2) * (1 + 1j))
    lines = field_to_csv(u).splitlines()
    assert lines[0] == "# spacing=0.5"
    assert lines[1] == "z_1,z_2,component,re,im"
    assert lines[2] == "0,0,0,0.0,0.0"
    assert lines[3] == "0,0,1,1.0,1.0"
    assert len(lines) == 2 + 8


@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_save_and_load(fmt, tmp_path, rng):
    u = LatticeField.random(LatticeGrid(2, 3, 0.25), 2, rng)
    path = tmp_path / f"field.{fmt}"
    save_field(u, path, fmt)
    loaded = load_field(path)
    assert loaded.grid == u.grid
    assert_allclose(loaded.values, u.values, rtol=0, atol=0)


def test_json_document_shape(rng):
    u = LatticeField.random(LatticeGrid(1, 4, 1.0), 1, rng)
    payload = json.loads(field_to_json(u))
    assert payload["grid"] == {"dim": 1, "side": 4, "spacing": 1.0}
    assert payload["components"] == 1
    assert len(payload["values"]) == 4


@pytest.mark.parametrize("text", [
    "{}",
    "not json",
    '{"grid": {"dim": 1, "side": 2, "spacing": 1.0}, "components": 1, "values": [[1, 0]]}',
    '{"grid": {"dim": 1, "side": 2, "spacing": -1.0}, "components": 1, "values": [[1, 0], [0, 1]]}',
])
def test_malformed_json(text):
    with pytest.raises(ArgumentError):
        field_from_json(text)


@pytest.mark.parametrize("text", [
    "",
    "z_1,component,re,im\n0,0,1.0,0.0\n",
    "# spacing=1.0\n",
    "# spacing=1.0\nz_1,component,re,im\n0,0,abc,0.0\n",
    "# spacing=1.0\nz_1,component,re,im\n0,0,1.0,0.0\n2,0,1.0,0.0\n",
    "# spacing=1.0\nz_1,component,re,im\n0,0,1.0,0.0\n0,0,5.0,0.0\n2,0,3.0,0.0\n",
    "# spacing=1.0\nz_1,component,re,im\n0,0,1.0,0.0\n-1,0,1.0,0.0\n",
    "# spacing=1.0\nz_1,component,re,im\n0,0,1.0,0.0\n1,-1,1.0,0.0\n",
    "# spacing=1.0\nz_1,z_2,component,re,im\n0,0,0,1.0,0.0\n0,1,0,1.0,0.0\n1,1,0,1.0,0.0\n1,1,0,1.0,0.0\n",
])
def test_malformed_csv(text):
    with pytest.raises(ArgumentError):
        field_from_csv(text)
