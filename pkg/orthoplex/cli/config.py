from itertools import tee
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from orthoplex import errors
from orthoplex.model import ModelPoint
from orthoplex.thermo import FieldParams

from ..util import deep_merge, load_schema
from ..util.jsonschema import defaulting_validator

RunConfig = Dict[str, Any]

config_schema = load_schema(__file__, "runconfig.schema.yaml")
config_validator = defaulting_validator(config_schema)

# flags each subcommand cannot run without
REQUIRED_FIELDS: Dict[str, List[str]] = {
    "partition": ["n", "m", "rho"],
    "thermo": [],
    "sample": ["n"],
    "equivalence": ["n", "m", "rho"],
    "analyze": ["interaction"],
    "rate": ["interaction"],
    "mixture-mass": ["interaction", "n"],
    "bessel-check": ["n", "m", "rho"],
    "laplace-check": ["interaction"],
}


def parse_tolerance_overrides(items: Sequence[str]) -> Dict[str, Any]:
    """
    Turn ``KEY=VALUE`` strings into a tolerance mapping

    ``null`` and ``none`` map to ``None``; integral values stay integers.
    """
    overrides: Dict[str, Any] = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise errors.ValidationError(f"Expected KEY=VALUE, got '{item}'")
        if value.lower() in ("null", "none"):
            overrides[key] = None
            continue
        try:
            overrides[key] = int(value)
        except ValueError:
            try:
                overrides[key] = float(value)
            except ValueError:
                raise errors.ValidationError(
                    f"Tolerance '{key}' is not a number: '{value}'"
                )
    return overrides


def _semantic_errors(config: RunConfig) -> Iterable[errors.ValidationError]:
    command = config["command"]
    for name in REQUIRED_FIELDS[command]:
        if name not in config:
            option = "spec" if name == "interaction" else f"--{name}"
            yield errors.ValidationError(f"{option} is required for `{command}`")

    has_point = "m" in config or "rho" in config
    has_fields = "beta" in config or "mu" in config
    if has_point:
        try:
            ModelPoint(config.get("m", 0.0), config.get("rho", 1.0))
        except errors.ValidationError as e:
            yield e
    if has_fields:
        try:
            FieldParams(config.get("beta", 0.0), config.get("mu", 1.0))
        except errors.ValidationError as e:
            yield e

    if command == "thermo" and has_point == has_fields:
        yield errors.ValidationError(
            "`thermo` takes either --m/--rho or --beta/--mu, not both or neither"
        )
    if command == "sample":
        if config["ensemble"] == "micro" and not {"m", "rho"} <= set(config):
            yield errors.ValidationError("--m and --rho are required for `sample`")
        if config["ensemble"] == "grand" and not {"beta", "mu"} <= set(config):
            yield errors.ValidationError(
                "--beta and --mu are required for `sample --ensemble grand`"
            )
    if command == "mixture-mass" and config["a"] > config["b"]:
        yield errors.ValidationError("--a must not exceed --b")


def parse_config(
    raw: RunConfig, tolerance_overrides: Optional[Dict[str, Any]] = None
) -> Iterable[Union[errors.ValidationError, RunConfig]]:
    """
    Validate a run configuration assembled from command line flags, filling
    in defaults

    :param dict raw: the flags that were given
    :param dict tolerance_overrides: ``--tol`` values, merged over the
        schema defaults
    :returns: Iterable containing any errors (all instances of
        :class:`orthoplex.errors.ValidationError`) and the parsed config. The
        config will always be last.
    """
    config = {k: v for k, v in raw.items() if v is not None}
    if tolerance_overrides:
        config = deep_merge(config, {"tolerances": tolerance_overrides})

    schema_errors: Iterable[errors.SchemaValidationError] = (
        errors.SchemaValidationError(str(e), e)
        for e in config_validator.iter_errors(config)
    )
    schema_errors, schema_errors_dup = tee(schema_errors)
    if next(schema_errors_dup, None) is not None:
        yield from schema_errors
    else:
        yield from _semantic_errors(config)
    yield config


def check_config(
    raw: RunConfig, tolerance_overrides: Optional[Dict[str, Any]] = None
) -> Tuple[Optional[RunConfig], Optional[Iterable[errors.ValidationError]]]:
    """
    Validate a run configuration and report errors

    :returns: ``(config, None)`` if valid, ``(None, errors)`` otherwise
    """
    config_errors, config = tee(parse_config(raw, tolerance_overrides))
    found = [e for e in config_errors if isinstance(e, errors.ValidationError)]
    if found:
        return None, found
    return list(config)[-1], None


def load_config(
    raw: RunConfig, tolerance_overrides: Optional[Dict[str, Any]] = None
) -> RunConfig:
    """
    Validate a run configuration, raising the first error found
    """
    config, config_errors = check_config(raw, tolerance_overrides)
    if config_errors is not None:
        raise next(iter(config_errors))
    assert config is not None
    return config
