"""
Interaction functions ``g`` on ``[-1, 1]``
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Sequence

import mpmath  # type: ignore
import numpy as np
from numpy.polynomial import Polynomial

from orthoplex.errors import ValidationError

from .expression import Node

# working precision of derivative evaluation
MP_DPS = 40
# analytic families: Taylor data is exact to any order
ANALYTIC_DERIVATIVE_ORDER = 16
FINITE_DIFFERENCE_DERIVATIVE_ORDER = 8


class Interaction(ABC):
    family: str
    derivative_order_supported: int
    exact_derivatives: bool

    @abstractmethod
    def __call__(self, m: Any) -> np.ndarray:
        raise NotImplementedError

    @abstractmethod
    def evaluate_mp(self, m: Any) -> Any:
        raise NotImplementedError

    @abstractmethod
    def derivative(self, m: float, order: int) -> float:
        raise NotImplementedError

    @abstractmethod
    def parameters(self) -> Dict[str, Any]:
        raise NotImplementedError

    def describe(self) -> Dict[str, Any]:
        return {"family": self.family, **self.parameters()}

    def _check_order(self, order: int) -> None:
        if not 0 <= order <= self.derivative_order_supported:
            raise ValidationError(
                f"{self.family} interactions support derivatives up to order "
                f"{self.derivative_order_supported}, requested {order}"
            )


class PolynomialInteraction(Interaction):
    """
    ``g(m) = sum_j c_j m^j`` with coefficients in ascending degree
    """

    family = "poly"
    derivative_order_supported = ANALYTIC_DERIVATIVE_ORDER
    exact_derivatives = True

    def __init__(self, coefficients: Sequence[float]):
        coefficients = [float(c) for c in coefficients] or [0.0]
        if not all(np.isfinite(coefficients)):
            raise ValidationError("Polynomial coefficients must be finite")
        self.coefficients = coefficients
        self.polynomial = Polynomial(coefficients)

    def __call__(self, m):
        return np.asarray(self.polynomial(np.asarray(m, dtype=float)), dtype=float)

    def evaluate_mp(self, m):
        return mpmath.polyval(self.coefficients[::-1], m)

    def derivative(self, m: float, order: int) -> float:
        self._check_order(order)
        return float(self.polynomial.deriv(order)(m)) if order else float(self(m))

    def parameters(self) -> Dict[str, Any]:
        return {"coefficients": list(self.coefficients)}


class Zero(PolynomialInteraction):
    family = "zero"

    def __init__(self):
        super().__init__([0.0])

    def parameters(self) -> Dict[str, Any]:
        return {}


class Linear(PolynomialInteraction):
    """
    ``g(m) = -beta m``, the tilt conjugate to the magnetization
    """

    family = "linear"

    def __init__(self, beta: float):
        self.beta = float(beta)
        super().__init__([0.0, -self.beta])

    def parameters(self) -> Dict[str, Any]:
        return {"beta": self.beta}


class CurieWeiss(PolynomialInteraction):
    """
    ``g(m) = (betaJ/2) m^2 + h m``
    """

    family = "cw"

    def __init__(self, beta_j: float, h: float = 0.0):
        self.beta_j = float(beta_j)
        self.h = float(h)
        super().__init__([0.0, self.h, self.beta_j / 2])

    def parameters(self) -> Dict[str, Any]:
        return {"betaJ": self.beta_j, "h": self.h}


class Expression(Interaction):
    """
    User formula; derivatives by high-precision numerical differentiation
    """

    family = "expr"
    derivative_order_supported = FINITE_DIFFERENCE_DERIVATIVE_ORDER
    exact_derivatives = False

    def __init__(self, ast: Node):
        self.ast = ast

    def __call__(self, m):
        return np.asarray(self.ast.evaluate(np.asarray(m, dtype=float)), dtype=float)

    def evaluate_mp(self, m):
        return self.ast.evaluate_mp(m)

    def derivative(self, m: float, order: int) -> float:
        self._check_order(order)
        with mpmath.workdps(MP_DPS):
            return float(mpmath.diff(self.evaluate_mp, mpmath.mpf(m), order))

    def parameters(self) -> Dict[str, Any]:
        return {"expression": str(self.ast)}
