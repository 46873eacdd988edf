"""Matrix spec (JSON) and vector (``re im`` lines) file formats.

Matrix specs::

    {"kind": "toeplitz", "n": 4, "entries": {"0": [2, 0], "-1": [-1, 0], "1": [-1, 0]}}
    {"kind": "circulant", "m": 4, "entries": [[2, 0], [-1, 0], [0, 0], [-1, 0]]}

Vectors: one complex entry per line as ``re im``, optionally preceded by a
``# dim N`` header.
"""
import json
import logging
import math
from pathlib import Path
from typing import Union

import numpy as np

from src.exceptions import InvalidParameterError, SpecParseError
from src.models.matrices import CirculantSpec, HankelSpec, ToeplitzSpec

logger = logging.getLogger(__name__)

MatrixSpec = Union[ToeplitzSpec, HankelSpec, CirculantSpec]
MATRIX_KINDS = ("toeplitz", "hankel", "circulant")


def _parse_complex(value, where: str) -> complex:
    if isinstance(value, bool):
        raise SpecParseError(f"{where}: expected a number or [re, im] pair, got {value!r}")
    if isinstance(value, (int, float)):
        result = complex(value, 0.0)
    elif isinstance(value, (list, tuple)) and len(value) == 2 and all(
            isinstance(part, (int, float)) and not isinstance(part, bool) for part in value):
        result = complex(value[0], value[1])
    else:
        raise SpecParseError(f"{where}: expected a number or [re, im] pair, got {value!r}")
    if not (math.isfinite(result.real) and math.isfinite(result.imag)):
        raise SpecParseError(f"{where}: non-finite value {value!r}")
    return result


def _parse_dimension(data: dict, *keys) -> int:
    for key in keys:
        if key in data:
            value = data[key]
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise SpecParseError(f"'{key}' must be a positive integer, got {value!r}")
            return value
    raise SpecParseError(f"missing dimension field '{keys[0]}'")


def parse_matrix_spec(text: str) -> MatrixSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecParseError(f"invalid JSON: {e}") from e
    if not isinstance(data, dict):
        raise SpecParseError("matrix spec must be a JSON object")

    kind = data.get("kind")
    if kind not in MATRIX_KINDS:
        raise SpecParseError(f"'kind' must be one of {', '.join(MATRIX_KINDS)}, got {kind!r}")
    entries = data.get("entries", {} if kind != "circulant" else None)

    try:
        if kind == "circulant":
            m = _parse_dimension(data, "m", "n")
            if not isinstance(entries, list) or len(entries) != m:
                raise SpecParseError(f"circulant 'entries' must be a list of {m} [re, im] pairs")
            row = [_parse_complex(value, f"entry {i}") for i, value in enumerate(entries)]
            return CirculantSpec(m=m, first_row=np.array(row, dtype=np.complex128))

        n = _parse_dimension(data, "n")
        if not isinstance(entries, dict):
            raise SpecParseError(f"{kind} 'entries' must map offsets to [re, im] pairs")
        coefficients = {}
        for key, value in entries.items():
            try:
                offset = int(key)
            except ValueError:
                raise SpecParseError(f"offset {key!r} is not an integer") from None
            coefficients[offset] = _parse_complex(value, f"offset {key}")
        if kind == "toeplitz":
            return ToeplitzSpec(n=n, diagonals=coefficients)
        return HankelSpec(n=n, skew_diagonals=coefficients)
    except InvalidParameterError as e:
        raise SpecParseError(str(e)) from e


def _read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise SpecParseError(f"{path} is not valid UTF-8 text: {e.reason} at byte {e.start}") from e


def read_matrix_spec(path) -> MatrixSpec:
    spec = parse_matrix_spec(_read_text(path))
    logger.debug(f"Loaded {spec!r} from {path}")
    return spec


def write_matrix_spec(spec: MatrixSpec, path):
    Path(path).write_text(json.dumps(spec.to_dict(), indent=2) + "\n", encoding="utf-8")


def parse_vector(text: str) -> np.ndarray:
    declared = None
    values = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            fields = line[1:].split()
            if declared is not None or values or len(fields) != 2 or fields[0] != "dim":
                raise SpecParseError(f"line {line_number}: only a leading '# dim N' header is allowed")
            try:
                declared = int(fields[1])
            except ValueError:
                raise SpecParseError(f"line {line_number}: bad dimension {fields[1]!r}") from None
            continue
        fields = line.split()
        if len(fields) != 2:
            raise SpecParseError(f"line {line_number}: expected 're im', got {line!r}")
        try:
            value = complex(float(fields[0]), float(fields[1]))
        except ValueError:
            raise SpecParseError(f"line {line_number}: not a number pair: {line!r}") from None
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise SpecParseError(f"line {line_number}: non-finite entry")
        values.append(value)

    if not values:
        raise SpecParseError("vector file has no entries")
    if declared is not None and declared != len(values):
        raise SpecParseError(f"header declares dim {declared} but file has {len(values)} entries")
    return np.array(values, dtype=np.complex128)


def read_vector(path) -> np.ndarray:
    return parse_vector(_read_text(path))


def format_vector(vector) -> str:
    vector = np.asarray(vector, dtype=np.complex128)
    lines = [f"# dim {vector.size}"]
    lines.extend(f"{float(value.real)!r} {float(value.imag)!r}" for value in vector)
    return "\n".join(lines) + "\n"


def write_vector(vector, path):
    Path(path).write_text(format_vector(vector), encoding="utf-8")


def format_dense_matrix(matrix) -> str:
    matrix = np.asarray(matrix, dtype=np.complex128)
    rows, cols = matrix.shape
    lines = [f"# rows {rows} cols {cols}"]
    for row in matrix:
        lines.append(" ".join(f"{float(value.real)!r} {float(value.imag)!r}" for value in row))
    return "\n".join(lines) + "\n"


def write_dense_matrix(matrix, path):
    Path(path).write_text(format_dense_matrix(matrix), encoding="utf-8")
