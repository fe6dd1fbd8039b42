"""
Parsing of interaction strings given on the command line

    zero
    linear:beta=0.5
    cw:betaJ=1,h=0
    poly:0,0,0.5          (ascending degree)
    expr:0.5*m^2
"""

from typing import Callable, Dict, List

import numpy as np

from orthoplex import errors
from orthoplex.interaction import (
    CurieWeiss,
    Expression,
    Interaction,
    Linear,
    PolynomialInteraction,
    Zero,
    parse_expression,
)

PROBE_POINTS = 65


def _keyword_args(family: str, body: str, allowed: List[str]) -> Dict[str, float]:
    args: Dict[str, float] = {}
    for item in filter(None, (part.strip() for part in body.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in allowed:
            raise errors.ValidationError(
                f"Bad parameter '{item}' for '{family}', expected one of {allowed}"
            )
        try:
            args[key] = float(value)
        except ValueError:
            raise errors.ValidationError(
                f"Parameter '{key}' is not a number: '{value}'"
            )
    return args


def _linear(body: str) -> Interaction:
    args = _keyword_args("linear", body, ["beta"])
    if "beta" not in args:
        raise errors.ValidationError("'linear' needs beta=<value>")
    return Linear(args["beta"])


def _curie_weiss(body: str) -> Interaction:
    args = _keyword_args("cw", body, ["betaJ", "h"])
    if "betaJ" not in args:
        raise errors.ValidationError("'cw' needs betaJ=<value>")
    return CurieWeiss(args["betaJ"], args.get("h", 0.0))


def _polynomial(body: str) -> Interaction:
    try:
        coefficients = [float(c) for c in body.split(",") if c.strip()]
    except ValueError:
        raise errors.ValidationError(f"Bad polynomial coefficients '{body}'")
    return PolynomialInteraction(coefficients)


def _zero(body: str) -> Interaction:
    if body.strip():
        raise errors.ValidationError("'zero' takes no parameters")
    return Zero()


FAMILIES: Dict[str, Callable[[str], Interaction]] = {
    "zero": _zero,
    "linear": _linear,
    "cw": _curie_weiss,
    "poly": _polynomial,
}


def _check_finite(g: Interaction) -> Interaction:
    grid = np.linspace(-1.0, 1.0, PROBE_POINTS)
    with np.errstate(all="ignore"):
        values = g(grid)
    if not np.all(np.isfinite(values)):
        bad = grid[~np.isfinite(values)][0]
        raise errors.DomainError(f"Interaction is not finite at m = {bad:g}")
    return g


def parse_interaction(text: str) -> Interaction:
    """
    Build an interaction from its textual form and check that it
    is finite on a check grid of ``[-1, 1]``

    :raises orthoplex.errors.UnknownFamilyError: for an unknown family name
    :raises orthoplex.errors.ExpressionSyntaxError: with the position in
        ``text`` of the offending character
    :raises orthoplex.errors.DomainError: if evaluation fails on the grid
    """
    family, _, body = text.partition(":")
    family = family.strip()
    if family == "expr":
        offset = text.index(":") + 1
        try:
            ast = parse_expression(body)
        except errors.ExpressionSyntaxError as e:
            raise errors.ExpressionSyntaxError(
                f"Invalid expression '{body}'", e.position + offset
            )
        return _check_finite(Expression(ast))
    if family not in FAMILIES:
        raise errors.UnknownFamilyError(
            f"Unknown interaction family '{family}', expected one of "
            f"{sorted([*FAMILIES, 'expr'])}"
        )
    return _check_finite(FAMILIES[family](body))
