from copy import deepcopy
from typing import Any, Dict

from jsonschema import Draft7Validator, draft7_format_checker, validators  # type: ignore


def _fill_defaults(validator_class):
    validate_properties = validator_class.VALIDATORS["properties"]

    def set_defaults(validator, properties, instance, schema):
        if isinstance(instance, dict):
            for name, subschema in properties.items():
                if "default" in subschema:
                    instance.setdefault(name, deepcopy(subschema["default"]))
                elif subschema.get("type") == "object" and "properties" in subschema:
                    # materialize nested objects so their own defaults apply
                    instance.setdefault(name, {})

        yield from validate_properties(validator, properties, instance, schema)

    return validators.extend(validator_class, {"properties": set_defaults})


DefaultValidatingDraft7Validator = _fill_defaults(Draft7Validator)


def defaulting_validator(schema: Dict[str, Any]) -> Any:
    """
    Build a Draft-7 validator that writes schema defaults into the instance
    while validating it
    """
    return DefaultValidatingDraft7Validator(
        schema=schema, format_checker=draft7_format_checker
    )
