"""Deterministic CSV/JSON writers with schema round-trip validation.

Floats are written with ``repr`` so files re-parse to the identical value
and identical inputs give byte-identical files.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import jsonschema
import numpy as np

from .config import load_schema
from .errors import AnisosenseError

SCHEMAS = {
    "modes": "modes.schema.json",
    "spectrum": "spectrum.schema.json",
    "transmission": "transmission.schema.json",
    "sweep": "sweep.schema.json",
    "transmission_meta": "transmission_meta.schema.json",
    "sense": "sense.schema.json",
    "sweep_summary": "sweep_summary.schema.json",
}


class OutputValidationError(AnisosenseError):
    """An emitted file failed to re-parse or re-validate."""


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def jsonable(obj):
    """Plain-JSON copy: numpy scalars unwrapped, non-finite floats become null."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else None
    if isinstance(obj, complex):
        return {"re": jsonable(obj.real), "im": jsonable(obj.imag)}
    return obj


def _string_columns(schema: dict) -> set:
    props = schema["properties"]["rows"]["items"].get("properties", {})
    out = set()
    for name, p in props.items():
        t = p.get("type", [])
        t = [t] if isinstance(t, str) else t
        if "string" in t or "enum" in p:
            out.add(name)
    return out


def _parse(cell: str, as_string: bool):
    if as_string:
        return cell
    if cell == "":
        return None
    try:
        return int(cell)
    except ValueError:
        return float(cell)


def read_csv(path, kind: str) -> dict:
    schema = load_schema(SCHEMAS[kind])
    strings = _string_columns(schema)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        columns = next(reader)
        rows = []
        for rec in reader:
            if len(rec) != len(columns):
                raise OutputValidationError(f"{path}: ragged row {rec!r}")
            rows.append({c: _parse(v, c in strings) for c, v in zip(columns, rec)})
    # empty strings in nullable string columns
    for r in rows:
        for c in ("polarity",):
            if c in r and r[c] == "":
                r[c] = None
    return {"columns": columns, "rows": rows}


def validate(doc: dict, kind: str, source="") -> None:
    try:
        jsonschema.validate(doc, load_schema(SCHEMAS[kind]),
                            cls=jsonschema.Draft202012Validator)
    except jsonschema.ValidationError as exc:
        where = ".".join(str(p) for p in exc.absolute_path)
        raise OutputValidationError(f"{source or kind}: {where}: {exc.message}") from None


def write_csv(path, columns, rows, kind: str) -> Path:
    """Write ``rows`` (dicts) under ``columns`` and re-validate the file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in columns])
    validate(read_csv(path, kind), kind, str(path))
    return path


def write_json(path, obj, kind: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = jsonable(obj)
    path.write_text(json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n")
    validate(json.loads(path.read_text()), kind, str(path))
    return path


def read_json(path, kind: str) -> dict:
    doc = json.loads(Path(path).read_text())
    validate(doc, kind, str(path))
    return doc
