from __future__ import annotations

import json
import math

import numpy as np
import pytest
from hypothesis import given

from subdiag.algebra import AlgebraModel, Element
from subdiag.serialize import ElementFormatError, dumps, element_to_dict, jsonable, loads

from strategies import elements


@given(elements("M"))
def test_round_trip_is_bit_exact(x):
    y = loads(dumps(x))
    assert y.model == x.model
    assert np.array_equal(y.coefficients, x.coefficients)


def test_scalar_torus_kind():
    x = Element(AlgebraModel.torus(1, 2), {0: 1.0, 2: 0.5j})
    d = element_to_dict(x)
    assert d["kind"] == "torus" and d["quad_nodes"] == 9
    assert sorted(d["data"], key=int) == ["-2", "-1", "0", "1", "2"]
    assert loads(dumps(x)).model.kind == x.model.kind


def test_reads_real_entries_and_defaults():
    x = loads('{"kind": "matrix", "n": 2, "data": [[1, 2], [0, 3]]}')
    assert x.model.blocks == (1, 1)
    assert x.matrix[0, 1] == 2
    t = loads('{"kind": "torus", "n": 1, "degree": 1, "data": {"1": [[[0, 1]]]}}')
    assert t.model.num_nodes == 5
    assert t.coef(1)[0, 0] == 1j


@pytest.mark.parametrize(
    "text",
    [
        "[]",
        '{"kind": "banach", "n": 2}',
        '{"kind": "matrix", "n": 0, "data": []}',
        '{"kind": "matrix", "n": 2, "data": [[1, 2]]}',
        '{"kind": "matrix", "n": 2, "blocks": [1, 2], "data": [[1, 2], [3, 4]]}',
        '{"kind": "matrix", "n": 1, "data": [["x"]]}',
        '{"kind": "torus", "n": 1, "degree": 1, "data": {"one": [[1]]}}',
        '{"kind": "torus", "n": 1, "degree": 1, "quad_nodes": 4, "data": {}}',
        '{"kind": "torus", "n": 1, "degree": 1, "data": [[1]]}',
    ],
)
def test_malformed_elements(text):
    with pytest.raises(ElementFormatError):
        loads(text)


def test_bad_json_is_a_decode_error():
    with pytest.raises(json.JSONDecodeError):
        loads('{"kind": ')


def test_jsonable():
    out = jsonable({"a": np.float64(math.inf), "b": [np.int64(3), np.bool_(True)], 1: math.nan})
    assert out == {"a": "inf", "b": [3, True], "1": "nan"}
    json.dumps(out, allow_nan=False)
