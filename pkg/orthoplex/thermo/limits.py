"""
Closed-form limiting thermodynamics

``f(beta, mu) = ln q(beta, mu)`` with ``q = 1/(mu+beta) + 1/(mu-beta)`` is the
grand-canonical entropy; ``s(m, rho) = 1 + ln(rho + sqrt(rho^2 - m^2))`` is
the limiting microcanonical entropy. The two are Legendre conjugates and
``(m, rho) = -grad f(beta, mu)`` is the bijection between the ensembles.
"""

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from orthoplex.errors import ValidationError
from orthoplex.model import LogReal, ModelPoint
from orthoplex.model.partition import check_size

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class FieldParams:
    """
    Grand-canonical fields: ``beta`` couples to the magnetization, ``mu`` to
    the particle number. Requires ``mu > |beta|``.
    """

    beta: float
    mu: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.beta) and np.isfinite(self.mu)):
            raise ValidationError(f"Non-finite fields ({self.beta}, {self.mu})")
        if not self.mu > abs(self.beta):
            raise ValidationError(
                f"mu must exceed |beta|, got beta={self.beta}, mu={self.mu}"
            )

    @property
    def rate_positive(self) -> float:
        return self.mu + self.beta

    @property
    def rate_negative(self) -> float:
        return self.mu - self.beta

    @property
    def q(self) -> float:
        return 1 / self.rate_positive + 1 / self.rate_negative

    @property
    def positive_probability(self) -> float:
        """
        Probability that a single spin under ``eta(beta, mu)`` is positive
        """
        return (1 / self.rate_positive) / self.q


FieldLike = Union[FieldParams, Tuple[float, float]]


def grand_entropy(params: FieldLike) -> float:
    """
    ``f(beta, mu)``; ``+inf`` off the domain ``mu > |beta|``
    """
    if isinstance(params, FieldParams):
        beta, mu = params.beta, params.mu
    else:
        beta, mu = params
    if not mu > abs(beta):
        return float("inf")
    return float(np.log(2 * mu) - np.log(mu - beta) - np.log(mu + beta))


def grand_partition_finite(n: int, params: FieldParams) -> LogReal:
    """
    Log of ``q^n - (mu+beta)^{-n} - (mu-beta)^{-n}``, the grand-canonical
    normalization restricted to configurations carrying both signs
    """
    n = check_size(n)
    p = params.positive_probability
    return LogReal(
        float(n * np.log(params.q) + np.log1p(-(p ** n) - (1 - p) ** n))
    )


def limiting_entropy(point: ModelPoint, extend_boundary: bool = False) -> float:
    """
    ``s(m, rho)`` on the interior

    :param bool extend_boundary: accept the boundary points ``m = ±1`` of the
        ``rho = 1`` slice, where ``s`` extends continuously to 1
    """
    if not point.is_interior:
        if extend_boundary and abs(point.rho - 1) <= 1e-12:
            return 1.0
        point.require_interior()
    return float(1 + np.log(point.rho + np.sqrt(point.rho ** 2 - point.m ** 2)))


def limiting_entropy_sqrt_form(point: ModelPoint) -> float:
    """
    ``1 + ln((sqrt((rho+m)/2) + sqrt((rho-m)/2))^2)``, the unsimplified form
    """
    point.require_interior()
    a = np.sqrt((point.rho + point.m) / 2)
    b = np.sqrt((point.rho - point.m) / 2)
    return float(1 + 2 * np.log(a + b))


def entropy_slice(m: ArrayLike) -> np.ndarray:
    """
    Vectorized ``s(m, 1)`` on ``[-1, 1]`` including the extension ``s(±1, 1) = 1``
    """
    m = np.asarray(m, dtype=float)
    if np.any(np.abs(m) > 1):
        raise ValidationError("entropy_slice is defined on [-1, 1] only")
    return 1 + np.log1p(np.sqrt(np.clip(1 - m * m, 0.0, None)))


def entropy_slice_derivative(m: ArrayLike) -> np.ndarray:
    """
    ``d/dm s(m, 1) = -m / (w (1 + w))`` with ``w = sqrt(1 - m^2)``, for ``|m| < 1``
    """
    m = np.asarray(m, dtype=float)
    w = np.sqrt(1 - m * m)
    return -m / (w * (1 + w))


def ensemble_map(point: ModelPoint) -> FieldParams:
    """
    Fields ``(beta, mu)`` conjugate to an interior point

    ``beta = (1 - rho/w)/m`` is evaluated as ``-m/(w (rho + w))`` with
    ``w = sqrt(rho^2 - m^2)``, which is regular at ``m = 0``.
    """
    point.require_interior()
    w = np.sqrt(point.rho ** 2 - point.m ** 2)
    return FieldParams(
        beta=float(-point.m / (w * (point.rho + w))), mu=float(1 / w)
    )


def inverse_map(params: FieldParams) -> ModelPoint:
    """
    ``(m, rho) = -grad f(beta, mu)``
    """
    beta, mu = params.beta, params.mu
    d = mu * mu - beta * beta
    return ModelPoint(
        m=float(-2 * beta / d), rho=float((mu * mu + beta * beta) / (mu * d))
    )
