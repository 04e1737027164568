"""JSON files for matrices, pairs and reports.

Matrix file::

    {"schema": "projcalc/1", "backend": "float", "rows": n, "cols": n,
     "data": [[{"re": 0.5, "im": 0.0}, ...], ...]}

Exact entries are strings such as ``"1/2+-3/4i"``. A pair file is
``{"p": <matrix>, "q": <matrix>}``.
"""

import json
from pathlib import Path

import numpy as np

from projcalc.exact import format_gaussian, parse_gaussian, to_complex
from projcalc.exceptions import MatrixFormatError
from projcalc.numeric import ToleranceConfig
from projcalc.pairs import ProjectionPair, build_pair
from projcalc.reports import SCHEMA
from projcalc.ring import BackendKind, RingElement, StarRingContext

__all__ = [
    "element_from_dict",
    "matrix_from_dict",
    "matrix_to_dict",
    "pair_from_dict",
    "pair_to_dict",
    "read_element",
    "read_json",
    "read_pair",
    "write_json",
]


def _entry_to_json(value, backend: BackendKind):
    if backend is BackendKind.EXACT:
        return format_gaussian(value)
    value = to_complex(value)
    return {"re": value.real, "im": value.imag}


def _entry_from_json(value, backend: BackendKind):
    if backend is BackendKind.EXACT:
        if not isinstance(value, (str, int)):
            raise MatrixFormatError(
                f"Exact entries must be strings like '1/2+-3/4i', got {value!r}."
            )
        try:
            return parse_gaussian(str(value))
        except (ValueError, ZeroDivisionError) as e:
            raise MatrixFormatError(f"Cannot parse exact entry {value!r}.") from e

    if not isinstance(value, dict) or set(value) != {"re", "im"}:
        raise MatrixFormatError(
            f"Float entries must be objects with 're' and 'im', got {value!r}."
        )
    return complex(float(value["re"]), float(value["im"]))


def matrix_to_dict(m: RingElement | np.ndarray, backend=None) -> dict:
    """Serializes a ring element (or a bare array with ``backend``)."""
    if isinstance(m, RingElement):
        backend, data = m.context.backend_kind, m.data
    else:
        backend, data = BackendKind(backend), m
    rows, cols = data.shape
    return {
        "schema": SCHEMA,
        "backend": backend.value,
        "rows": rows,
        "cols": cols,
        "data": [[_entry_to_json(v, backend) for v in row] for row in data],
    }


def matrix_from_dict(d: dict) -> tuple[np.ndarray, BackendKind]:
    """Parses and validates a matrix object.

    Raises
    ------
    MatrixFormatError
        On a wrong schema, unknown backend, shape mismatch or bad entry.
    """
    if not isinstance(d, dict):
        raise MatrixFormatError("A matrix must be a JSON object.")
    if d.get("schema", SCHEMA) != SCHEMA:
        raise MatrixFormatError(f"Unsupported schema {d.get('schema')!r}.")
    try:
        backend = BackendKind(d["backend"])
        rows, cols, data = int(d["rows"]), int(d["cols"]), d["data"]
    except KeyError as e:
        raise MatrixFormatError(f"Matrix object lacks the field {e}.") from e
    except ValueError as e:
        raise MatrixFormatError(str(e)) from e

    if len(data) != rows or any(len(row) != cols for row in data):
        raise MatrixFormatError(
            f"Declared shape {rows}x{cols} does not match the data."
        )

    dtype = object if backend is BackendKind.EXACT else np.complex128
    out = np.empty((rows, cols), dtype=dtype)
    for i, row in enumerate(data):
        for j, value in enumerate(row):
            out[i, j] = _entry_from_json(value, backend)
    return out, backend


def element_from_dict(d: dict, tolerance: ToleranceConfig | None = None):
    data, backend = matrix_from_dict(d)
    if data.shape[0] != data.shape[1]:
        raise MatrixFormatError(f"Ring elements are square, got shape {data.shape}.")
    ctx = StarRingContext(backend, data.shape[0], tolerance or ToleranceConfig())
    return ctx.element(data)


def pair_to_dict(pair: ProjectionPair) -> dict:
    return {"p": matrix_to_dict(pair.p), "q": matrix_to_dict(pair.q)}


def pair_from_dict(
    d: dict, tolerance: ToleranceConfig | None = None, snap: bool = False
) -> ProjectionPair:
    if not isinstance(d, dict) or not {"p", "q"} <= set(d):
        raise MatrixFormatError("A pair file needs the fields 'p' and 'q'.")
    p = element_from_dict(d["p"], tolerance)
    q = element_from_dict(d["q"], tolerance)
    return build_pair(p, q, snap=snap)


def read_json(path) -> dict:
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise MatrixFormatError(f"{path} is not valid JSON: {e}") from e


def write_json(path, obj) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(obj, f, indent=2, sort_keys=True)
        f.write("\n")


def read_element(path, tolerance=None) -> RingElement:
    return element_from_dict(read_json(path), tolerance)


def read_pair(path, tolerance=None, snap: bool = False) -> ProjectionPair:
    return pair_from_dict(read_json(path), tolerance, snap)
