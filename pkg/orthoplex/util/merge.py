from copy import deepcopy
from typing import Any, Dict, Mapping


def deep_merge(base: Mapping[str, Any], *overrides: Mapping[str, Any]) -> Dict[str, Any]:
    """
    Merge `overrides` from left to right over a copy of `base`

    Nested mappings are merged key by key; any other value replaces what was
    there. None of the arguments is mutated.

    :returns: the merged dictionary
    """
    merged: Dict[str, Any] = deepcopy(dict(base))
    for override in overrides:
        for key, value in override.items():
            current = merged.get(key)
            if isinstance(value, Mapping) and isinstance(current, Mapping):
                merged[key] = deep_merge(current, value)
            else:
                merged[key] = deepcopy(value)
    return merged
