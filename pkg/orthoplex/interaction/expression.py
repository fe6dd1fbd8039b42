"""
A tiny grammar for interaction functions of one variable ``m``

::

    expr  := term (("+" | "-") term)*
    term  := unary (("*" | "/") unary)*
    unary := "-" unary | power
    power := atom ["^" integer]
    atom  := number | func "(" expr ")" | "m" | "(" expr ")"
    func  := "exp" | "ln" | "cos" | "abs"

Printing parenthesizes every compound node, so ``parse(str(node)) == node``.
"""

from dataclasses import dataclass
from functools import reduce
from typing import Any, Callable, Dict

import mpmath  # type: ignore
import numpy as np
import pyparsing as pp

from orthoplex.errors import DomainError, ExpressionSyntaxError, ValidationError


class Node:
    def evaluate(self, m: np.ndarray) -> np.ndarray:
        """
        Evaluate on an array of ``m`` values

        :raises orthoplex.errors.DomainError: outside the natural domain
        """
        raise NotImplementedError

    def evaluate_mp(self, m: Any) -> Any:
        """
        Evaluate in multiple precision at a single ``mpmath`` number
        """
        raise NotImplementedError


@dataclass(frozen=True)
class Const(Node):
    value: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.value) and self.value >= 0):
            raise ValidationError(f"Constants must be finite and >= 0, got {self.value}")

    def evaluate(self, m):
        return np.full(np.shape(m), self.value, dtype=float)

    def evaluate_mp(self, m):
        return mpmath.mpf(self.value)

    def __str__(self) -> str:
        return repr(float(self.value))


@dataclass(frozen=True)
class Var(Node):
    def evaluate(self, m):
        return np.asarray(m, dtype=float)

    def evaluate_mp(self, m):
        return m

    def __str__(self) -> str:
        return "m"


@dataclass(frozen=True)
class Neg(Node):
    operand: Node

    def evaluate(self, m):
        return -self.operand.evaluate(m)

    def evaluate_mp(self, m):
        return -self.operand.evaluate_mp(m)

    def __str__(self) -> str:
        return f"(-{self.operand})"


_BINARY: Dict[str, Callable[[Any, Any], Any]] = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": lambda a, b: a / b,
}


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node

    def __post_init__(self) -> None:
        if self.op not in _BINARY:
            raise ValidationError(f"Unknown operator '{self.op}'")

    def evaluate(self, m):
        a, b = self.left.evaluate(m), self.right.evaluate(m)
        if self.op == "/" and np.any(b == 0):
            raise DomainError(f"Division by zero in {self}")
        return _BINARY[self.op](a, b)

    def evaluate_mp(self, m):
        return _BINARY[self.op](self.left.evaluate_mp(m), self.right.evaluate_mp(m))

    def __str__(self) -> str:
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int

    def evaluate(self, m):
        b = self.base.evaluate(m)
        if self.exponent < 0:
            if np.any(b == 0):
                raise DomainError(f"Negative power of zero in {self}")
            return 1.0 / b ** (-self.exponent)
        return b ** self.exponent

    def evaluate_mp(self, m):
        return self.base.evaluate_mp(m) ** self.exponent

    def __str__(self) -> str:
        return f"({self.base}^{self.exponent})"


def _checked_log(x):
    if np.any(x <= 0):
        raise DomainError("ln of a nonpositive number")
    return np.log(x)


_FUNCS = {
    "exp": (np.exp, mpmath.exp),
    "ln": (_checked_log, mpmath.log),
    "cos": (np.cos, mpmath.cos),
    "abs": (np.abs, mpmath.fabs),
}


@dataclass(frozen=True)
class Func(Node):
    name: str
    arg: Node

    def __post_init__(self) -> None:
        if self.name not in _FUNCS:
            raise ValidationError(f"Unknown function '{self.name}'")

    def evaluate(self, m):
        return _FUNCS[self.name][0](self.arg.evaluate(m))

    def evaluate_mp(self, m):
        return _FUNCS[self.name][1](self.arg.evaluate_mp(m))

    def __str__(self) -> str:
        return f"{self.name}({self.arg})"


def _fold(tokens):
    items = list(tokens[0]) if isinstance(tokens[0], pp.ParseResults) else list(tokens)
    return reduce(
        lambda acc, pair: BinOp(pair[0], acc, pair[1]),
        zip(items[1::2], items[2::2]),
        items[0],
    )


def _build_grammar() -> pp.ParserElement:
    expr = pp.Forward()
    unary = pp.Forward()

    number = pp.Regex(r"\d+(\.\d*)?([eE][+-]?\d+)?").set_parse_action(
        lambda t: Const(float(t[0]))
    )
    variable = pp.Keyword("m").set_parse_action(lambda: Var())
    func_name = pp.MatchFirst([pp.Keyword(name) for name in _FUNCS])
    call = (func_name + pp.Suppress("(") + expr + pp.Suppress(")")).set_parse_action(
        lambda t: Func(t[0], t[1])
    )
    atom = number | call | variable | pp.Suppress("(") + expr + pp.Suppress(")")

    integer = pp.Regex(r"[+-]?\d+").set_parse_action(lambda t: int(t[0]))
    power = (atom + pp.Optional(pp.Suppress("^") + integer)).set_parse_action(
        lambda t: Pow(t[0], t[1]) if len(t) == 2 else t[0]
    )
    unary <<= (pp.Suppress("-") + unary).set_parse_action(lambda t: Neg(t[0])) | power
    term = (unary + pp.ZeroOrMore(pp.one_of("* /") + unary)).set_parse_action(_fold)
    expr <<= (term + pp.ZeroOrMore(pp.one_of("+ -") + term)).set_parse_action(_fold)
    return expr


_GRAMMAR = _build_grammar()


def parse_expression(text: str) -> Node:
    """
    Parse a formula in ``m``

    :raises orthoplex.errors.ExpressionSyntaxError: with the 0-based column of
        the offending character
    """
    try:
        return _GRAMMAR.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as e:
        raise ExpressionSyntaxError(f"Invalid expression '{text}': {e.msg}", e.loc)
    except RecursionError:
        raise ExpressionSyntaxError(f"Expression '{text}' is nested too deeply", 0)
