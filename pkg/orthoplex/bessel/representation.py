"""
Generating-function representation of ``Z_n``

With ``a = sqrt((rho+m)/2)``, ``b = sqrt((rho-m)/2)`` and the overloaded
entropy ``s(m, rho, t1, t2) = 1 + ln((a cos t1 + b cos t2)^2)``,

    Z_n(m n, rho n) = K_n / sqrt(rho^2 - m^2)
                      * int_0^pi int_0^pi cos t1 cos t2 e^{(n-1) s(m, rho, t1, t2)}

where ``K_n = 2^{2n-1} n^{n-2} n! C(2n, 2) e^{-(n-1)} / ((2n)! pi^2)``. The
integrand changes sign, so it is integrated in linear space after dividing
out ``e^{(n-1) s(m, rho, 0, 0)}``.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy.special import gammaln  # type: ignore

from orthoplex.errors import QuadratureError
from orthoplex.model import LogReal, ModelPoint
from orthoplex.model.partition import check_size

NODES = 64
COARSE_NODES = 32
DEFAULT_LEVELS = 6
MAX_LEVELS = 16
REL_TOL = 1e-10


@dataclass(frozen=True)
class AngularEntropy:
    m: float
    rho: float = 1.0

    @property
    def amplitudes(self) -> Tuple[float, float]:
        return (
            float(np.sqrt((self.rho + self.m) / 2)),
            float(np.sqrt((self.rho - self.m) / 2)),
        )

    def __call__(self, theta1, theta2):
        a, b = self.amplitudes
        with np.errstate(divide="ignore"):
            return 1 + 2 * np.log(np.abs(a * np.cos(theta1) + b * np.cos(theta2)))


def log_K(n: int) -> float:
    n = check_size(n)
    return float(
        (2 * n - 1) * np.log(2)
        + (n - 2) * np.log(n)
        + gammaln(n + 1)
        + np.log(n * (2 * n - 1))
        - (n - 1)
        - gammaln(2 * n + 1)
        - 2 * np.log(np.pi)
    )


@lru_cache(maxsize=None)
def _axis_rule(levels: int, nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    # dyadic panels shrinking towards both 0 and pi, where the peaks sit
    inner = [np.pi / 2 ** j for j in range(levels, 0, -1)]
    edges = np.array([0.0] + inner + [np.pi - e for e in reversed(inner[:-1])] + [np.pi])
    x, w = np.polynomial.legendre.leggauss(nodes)
    lo, hi = edges[:-1, np.newaxis], edges[1:, np.newaxis]
    points = (0.5 * (lo + hi) + 0.5 * (hi - lo) * x).ravel()
    weights = (0.5 * (hi - lo) * w).ravel()
    return points, weights


def _angular_integral(n: int, a: float, b: float, levels: int, nodes: int) -> float:
    t, w = _axis_rule(levels, nodes)
    c = np.cos(t)
    ratio = (a * c[:, np.newaxis] + b * c[np.newaxis, :]) / (a + b)
    integrand = (c[:, np.newaxis] * c[np.newaxis, :]) * ratio ** (2 * (n - 1))
    return float(w @ integrand @ w)


def log_Z_bessel(n: int, point: ModelPoint, rel_tol: float = REL_TOL) -> LogReal:
    """
    ``ln Z_n(m n, rho n)`` from the angular integral

    The tensor Gauss-Legendre rule is refined, one dyadic level at a time,
    until a coarser rule agrees to ``rel_tol``.

    :raises orthoplex.errors.QuadratureError: if ``MAX_LEVELS`` is not enough
    """
    n = check_size(n)
    point.require_interior()
    entropy = AngularEntropy(point.m, point.rho)
    a, b = entropy.amplitudes
    for levels in range(DEFAULT_LEVELS, MAX_LEVELS + 1):
        fine = _angular_integral(n, a, b, levels, NODES)
        coarse = _angular_integral(n, a, b, levels, COARSE_NODES)
        if fine > 0 and abs(fine - coarse) <= rel_tol * fine:
            break
    else:
        raise QuadratureError(
            f"Angular integral for n={n} at {point} did not settle in {MAX_LEVELS} levels"
        )
    return LogReal(
        log_K(n)
        - 0.5 * np.log(point.rho ** 2 - point.m ** 2)
        + (n - 1) * float(entropy(0.0, 0.0))
        + np.log(fine)
    )
