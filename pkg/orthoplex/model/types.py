from dataclasses import dataclass
from enum import Enum

import numpy as np

from orthoplex.errors import ValidationError

# |m| >= rho * (1 - BOUNDARY_RTOL) counts as |m| = rho
BOUNDARY_RTOL = 1e-12


class Region(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class ModelPoint:
    """
    A constraint pair (m, rho) of specific magnetization and specific particle
    number, i.e. a point of the closed cone ``|m| <= rho``
    """

    m: float
    rho: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.m) and np.isfinite(self.rho)):
            raise ValidationError(f"Non-finite model point ({self.m}, {self.rho})")
        if not self.rho > 0:
            raise ValidationError(f"rho must be positive, got {self.rho}")
        if abs(self.m) > self.rho * (1 + BOUNDARY_RTOL):
            raise ValidationError(
                f"|m| must not exceed rho, got m={self.m}, rho={self.rho}"
            )

    @property
    def region(self) -> Region:
        if abs(self.m) >= self.rho * (1 - BOUNDARY_RTOL):
            return Region.BOUNDARY
        return Region.INTERIOR

    @property
    def is_interior(self) -> bool:
        return self.region is Region.INTERIOR

    def require_interior(self) -> "ModelPoint":
        if not self.is_interior:
            raise ValidationError(f"{self} lies on the boundary |m| = rho")
        return self

    def totals(self, n: int) -> "MacroTotals":
        return MacroTotals(M=self.m * n, N=self.rho * n, n=n)

    def reflect(self) -> "ModelPoint":
        return ModelPoint(-self.m, self.rho)


@dataclass(frozen=True)
class MacroTotals:
    """
    Unscaled macrostates ``M = sum(phi)``, ``N = sum(|phi|)`` of a system of
    size ``n``
    """

    M: float
    N: float
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError(f"System size must be positive, got {self.n}")
        if not self.N > 0:
            raise ValidationError(f"N must be positive, got {self.N}")
        if abs(self.M) > self.N * (1 + BOUNDARY_RTOL):
            raise ValidationError(f"|M| must not exceed N, got M={self.M}, N={self.N}")

    def to_point(self) -> ModelPoint:
        return ModelPoint(self.M / self.n, self.N / self.n)


@dataclass(frozen=True)
class LogReal:
    """
    A strictly positive quantity stored as its natural logarithm
    """

    log_value: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.log_value):
            raise ValidationError(f"LogReal requires a finite log, got {self.log_value}")

    @property
    def value(self) -> float:
        """
        The represented quantity; may overflow to ``inf``
        """
        return float(np.exp(self.log_value))

    def __float__(self) -> float:
        return float(self.log_value)
