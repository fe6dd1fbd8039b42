import pytest  # type: ignore

import orthoplex.errors
from orthoplex.cli import config


def _messages(errors) -> list:
    return [str(e) for e in errors]


def test_valid() -> None:
    cfg, errors = config.check_config(
        {"command": "partition", "n": 10, "m": 0.2, "rho": 1.0}
    )
    assert errors is None
    assert cfg["n"] == 10
    assert cfg["seed"] == 0
    assert cfg["format"] == "json"
    assert cfg["tolerances"]["k_max"] == 4
    assert cfg["tolerances"]["zero_tol"] is None
    assert cfg["ladder"] == [50, 100, 200, 400]


def test_raw_is_not_mutated() -> None:
    raw = {"command": "analyze", "interaction": "zero", "seed": None}
    config.load_config(raw)
    assert raw == {"command": "analyze", "interaction": "zero", "seed": None}


def test_schema_fail() -> None:
    cfg, errors = config.check_config({"command": "partition", "n": 1, "bogus": 2})
    assert cfg is None
    assert errors is not None
    errors = list(errors)
    assert len(errors) == 2
    assert all(isinstance(e, orthoplex.errors.SchemaValidationError) for e in errors)


def test_unknown_command() -> None:
    with pytest.raises(orthoplex.errors.SchemaValidationError):
        config.load_config({"command": "simulate"})


def test_missing_required() -> None:
    cfg, errors = config.check_config({"command": "partition", "n": 10, "m": 0.2})
    assert cfg is None
    assert "--rho is required for `partition`" in _messages(errors)

    _, errors = config.check_config({"command": "analyze"})
    assert "spec is required for `analyze`" in _messages(errors)


def test_point_outside_domain() -> None:
    _, errors = config.check_config(
        {"command": "partition", "n": 10, "m": 1.5, "rho": 1.0}
    )
    assert errors is not None
    assert len(list(errors)) == 1


def test_fields_outside_domain() -> None:
    _, errors = config.check_config({"command": "thermo", "beta": 2.0, "mu": 1.0})
    assert errors is not None


def test_thermo_needs_one_parametrization() -> None:
    expected = "`thermo` takes either --m/--rho or --beta/--mu, not both or neither"
    _, errors = config.check_config({"command": "thermo"})
    assert expected in _messages(errors)
    _, errors = config.check_config(
        {"command": "thermo", "m": 0.0, "rho": 1.0, "beta": 0.0, "mu": 1.0}
    )
    assert expected in _messages(errors)
    cfg, errors = config.check_config({"command": "thermo", "beta": 0.0, "mu": 1.0})
    assert errors is None


def test_sample_ensembles() -> None:
    _, errors = config.check_config({"command": "sample", "n": 10})
    assert "--m and --rho are required for `sample`" in _messages(errors)
    _, errors = config.check_config(
        {"command": "sample", "n": 10, "ensemble": "grand", "m": 0.1, "rho": 1.0}
    )
    assert "--beta and --mu are required for `sample --ensemble grand`" in _messages(
        errors
    )


def test_empty_window() -> None:
    _, errors = config.check_config(
        {"command": "mixture-mass", "interaction": "zero", "n": 10, "a": 0.5, "b": 0.1}
    )
    assert "--a must not exceed --b" in _messages(errors)


def test_tolerance_overrides() -> None:
    overrides = config.parse_tolerance_overrides(
        ["k_max=2", "tol_value=1e-6", "zero_tol=none"]
    )
    assert overrides == {"k_max": 2, "tol_value": 1e-6, "zero_tol": None}
    assert isinstance(overrides["k_max"], int)

    cfg = config.load_config({"command": "analyze", "interaction": "zero"}, overrides)
    assert cfg["tolerances"]["k_max"] == 2
    assert cfg["tolerances"]["tol_value"] == 1e-6
    assert cfg["tolerances"]["tol_sep"] == 1e-6


@pytest.mark.parametrize("item", ["k_max", "=3", "k_max=abc"])
def test_bad_tolerance_override(item: str) -> None:
    with pytest.raises(orthoplex.errors.ValidationError):
        config.parse_tolerance_overrides([item])


def test_unknown_tolerance() -> None:
    _, errors = config.check_config(
        {"command": "analyze", "interaction": "zero"}, {"tol_unknown": 1.0}
    )
    assert errors is not None
    assert all(
        isinstance(e, orthoplex.errors.SchemaValidationError) for e in list(errors)
    )
