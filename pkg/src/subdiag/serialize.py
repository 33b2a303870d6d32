"""JSON encoding of elements and result records.

Element format::

    {"kind": "matrix", "n": 3, "blocks": [1, 2], "degree": null,
     "data": [[[re, im], ...], ...]}

    {"kind": "torus", "n": 2, "blocks": null, "degree": 4, "quad_nodes": 17,
     "data": {"-1": [[[re, im], ...], ...], "0": ..., "1": ...}}

Torus data is keyed by signed frequency.  ``quad_nodes`` is optional and
defaults to ``4 * degree + 1``.  A torus element with ``n == 1`` is read as
a scalar torus element.  Floats are written with Python's shortest
round-tripping ``repr``, so ``loads(dumps(x))`` reproduces every stored
coefficient bit for bit.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .algebra import AlgebraModel, Element


class ElementFormatError(ValueError):
    """Input is valid JSON but not a well-formed element."""


def _encode_matrix(mat: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in mat]


def element_to_dict(x: Element) -> dict:
    model = x.model
    if not model.is_torus:
        return {
            "kind": "matrix",
            "n": model.n,
            "blocks": list(model.blocks),
            "degree": None,
            "data": _encode_matrix(x.matrix),
        }
    return {
        "kind": "torus",
        "n": model.n,
        "blocks": None,
        "degree": model.degree,
        "quad_nodes": model.num_nodes,
        # every stored frequency, zeros included, so the stack shape survives a round trip
        "data": {str(k): _encode_matrix(x.coef(k)) for k in range(-x.degree, x.degree + 1)},
    }


def _decode_matrix(raw, n: int, where: str) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != n:
        raise ElementFormatError(f"{where}: expected a list of {n} rows")
    out = np.empty((n, n), dtype=complex)
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != n:
            raise ElementFormatError(f"{where}[{i}]: expected a row of {n} entries")
        for j, entry in enumerate(row):
            if isinstance(entry, (int, float)) and not isinstance(entry, bool):
                out[i, j] = float(entry)
            elif (
                isinstance(entry, list)
                and len(entry) == 2
                and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)
            ):
                out[i, j] = complex(float(entry[0]), float(entry[1]))
            else:
                raise ElementFormatError(f"{where}[{i}][{j}]: expected [re, im] or a real number")
    return out


def _int_field(obj: dict, key: str, minimum: int = 0) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
        raise ElementFormatError(f"field {key!r} must be an integer >= {minimum}, got {v!r}")
    return v


def element_from_dict(obj) -> Element:
    if not isinstance(obj, dict):
        raise ElementFormatError("element must be a JSON object")
    kind = obj.get("kind")
    n = _int_field(obj, "n", 1)
    try:
        if kind == "matrix":
            blocks = obj.get("blocks")
            if blocks is None:
                blocks = [1] * n
            if not isinstance(blocks, list) or not all(isinstance(b, int) for b in blocks):
                raise ElementFormatError("field 'blocks' must be a list of integers")
            model = AlgebraModel.matrix_block(blocks)
            if model.n != n:
                raise ElementFormatError(f"blocks sum to {model.n}, but n = {n}")
            return Element(model, _decode_matrix(obj.get("data"), n, "data"))
        if kind == "torus":
            degree = _int_field(obj, "degree", 0)
            nodes = obj.get("quad_nodes")
            if nodes is not None:
                nodes = _int_field(obj, "quad_nodes", 1)
            model = AlgebraModel.torus(n, degree, nodes)
            data = obj.get("data")
            if not isinstance(data, dict):
                raise ElementFormatError("torus 'data' must be an object keyed by frequency")
            coefs = {}
            for key, raw in data.items():
                try:
                    k = int(key)
                except ValueError:
                    raise ElementFormatError(f"data key {key!r} is not a signed integer") from None
                coefs[k] = _decode_matrix(raw, n, f"data[{key!r}]")
            return Element(model, coefs)
    except ElementFormatError:
        raise
    except ValueError as exc:
        raise ElementFormatError(str(exc)) from exc
    raise ElementFormatError(f"field 'kind' must be 'matrix' or 'torus', got {kind!r}")


def dumps(x: Element, indent: int | None = None) -> str:
    return json.dumps(element_to_dict(x), indent=indent)


def loads(text: str) -> Element:
    return element_from_dict(json.loads(text))


def read_element(path) -> Element:
    return loads(Path(path).read_text())


def write_element(x: Element, path) -> None:
    Path(path).write_text(dumps(x) + "\n")


def jsonable(obj):
    """Replace non-finite floats and numpy scalars so ``json.dumps`` emits strict JSON."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isfinite(v):
            return v
        return "nan" if math.isnan(v) else ("inf" if v > 0 else "-inf")
    if isinstance(obj, Element):
        return element_to_dict(obj)
    return obj
