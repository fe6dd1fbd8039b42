"""
Assembly and writing of output documents
"""

from typing import IO, Any, Dict, List, Optional, Sequence

from jsonschema import Draft7Validator  # type: ignore

from orthoplex import errors
from orthoplex.util import dumps_json, load_schema, write_csv

SCHEMA_VERSION = 1

output_schema = load_schema(__file__, "output.schema.yaml")
output_validator = Draft7Validator(output_schema)

Document = Dict[str, Any]


def document(
    command: str,
    inputs: Dict[str, Any],
    results: Dict[str, Any],
    tolerances: Dict[str, Any],
    warnings: Sequence[str],
    runtime_ms: Optional[float] = None,
) -> Document:
    diagnostics: Dict[str, Any] = {
        "tolerances": dict(sorted(tolerances.items())),
        "warnings": list(warnings),
    }
    if runtime_ms is not None:
        diagnostics["runtime_ms"] = runtime_ms
    return {
        "schema": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "diagnostics": diagnostics,
    }


def error_document(command: str, error: Exception) -> Document:
    details = error.details() if hasattr(error, "details") else {}
    return {
        "schema": SCHEMA_VERSION,
        "command": command,
        "error": {
            "type": type(error).__name__,
            "message": str(error),
            "details": details,
        },
    }


def exit_code(error: Exception) -> int:
    if isinstance(error, errors.SchemaValidationError):
        return 2
    return 1


def _flatten(prefix: str, value: Any, rows: List[Dict[str, Any]]) -> None:
    if isinstance(value, dict):
        for key, item in value.items():
            _flatten(f"{prefix}.{key}" if prefix else key, item, rows)
    elif isinstance(value, list):
        for i, item in enumerate(value):
            _flatten(f"{prefix}.{i}", item, rows)
    else:
        rows.append({"key": prefix, "value": value})


def write_document(
    fd: IO[str],
    doc: Document,
    fmt: str = "json",
    columns: Optional[Sequence[str]] = None,
    rows: Optional[Sequence[Dict[str, Any]]] = None,
) -> None:
    """
    Write a document as JSON, or as CSV

    CSV holds the grid rows of grid-valued results when ``columns`` is given,
    and a flat ``key,value`` listing of the document otherwise.
    """
    if fmt == "json":
        fd.write(dumps_json(doc))
        return
    if columns is not None and rows is not None:
        write_csv(fd, columns, rows)
        return
    flat: List[Dict[str, Any]] = []
    _flatten("", doc, flat)
    write_csv(fd, ["key", "value"], flat)
