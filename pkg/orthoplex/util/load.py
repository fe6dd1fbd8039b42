"""
Utility for loading the YAML / JSON schemas shipped inside the package

Objects only; documents whose top level is an array are rejected.
"""

import json
from pathlib import Path
from typing import Any, Dict

import yaml


def _as_object(data: Any, source: Path) -> Dict[str, Any]:
    if data is None:
        return dict()
    if not isinstance(data, dict):
        raise ValueError(f"Expected a mapping at the top level of '{source}'")
    return data


def load_any(f: Path) -> Dict[str, Any]:
    ext = f.suffix[1:]
    with f.open("r") as fd:
        if ext in ["yml", "yaml"]:
            return _as_object(yaml.safe_load(fd), f)
        elif ext == "json":
            return _as_object(json.load(fd), f)
    raise ValueError(f"Unsupported extension '{ext}'")


def load_schema(anchor: str, name: str) -> Dict[str, Any]:
    """
    Load a schema that lives next to a module

    :param str anchor: ``__file__`` of the module owning the schema
    :param str name: file name of the schema
    """
    return load_any(Path(anchor).parent / name)
