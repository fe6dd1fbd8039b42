"""
Writers for the machine readable output of the command line tools

Floats are printed with 17 significant digits so that reading a document
back reproduces the exact binary values.
"""

import csv
import json
import math
from typing import IO, Any, Dict, List, Sequence

import numpy as np


def format_float(value: float) -> str:
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, ".17g")


def _normalize(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return [_normalize(v) for v in value.tolist()]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, (list, tuple)):
        return [_normalize(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _normalize(v) for k, v in value.items()}
    return value


def _write(value: Any, out: List[str], depth: int) -> None:
    pad = "  " * (depth + 1)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        out.append(json.dumps(value))
    elif isinstance(value, float):
        text = format_float(value)
        # non-finite values have no JSON literal
        out.append(text if math.isfinite(value) else json.dumps(text))
    elif isinstance(value, list):
        if not value:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(value):
            out.append(pad)
            _write(item, out, depth + 1)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append("  " * depth + "]")
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        items = list(value.items())
        for i, (key, item) in enumerate(items):
            out.append(f"{pad}{json.dumps(key)}: ")
            _write(item, out, depth + 1)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append("  " * depth + "}")
    else:
        raise TypeError(f"Cannot serialize value of type {type(value).__name__}")


def dumps_json(document: Dict[str, Any]) -> str:
    """
    Serialize an output document; key order is preserved
    """
    out: List[str] = []
    _write(_normalize(document), out, 0)
    out.append("\n")
    return "".join(out)


def write_csv(fd: IO[str], columns: Sequence[str], rows: Sequence[Dict[str, Any]]):
    writer = csv.writer(fd, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(
            [
                format_float(v) if isinstance(v, float) else v
                for v in (_normalize(row[c]) for c in columns)
            ]
        )
