"""
Numerical checks of the Legendre duality between ``s`` and ``f``
"""

from dataclasses import dataclass
from typing import Optional, Tuple
from warnings import warn

import numpy as np
from scipy import optimize  # type: ignore

from orthoplex.errors import ConvergenceError
from orthoplex.model import ModelPoint

from .limits import (
    FieldParams,
    ensemble_map,
    entropy_slice,
    entropy_slice_derivative,
    grand_entropy,
    inverse_map,
)

# beyond this tilt the maximizer of s(m, 1) - beta m is within 1e-15 of ∓1
_SATURATION = 2e7


def _dual_objective(point: ModelPoint):
    # (beta, mu) = ((a - b)/2, (a + b)/2) with a, b > 0 the branch rates;
    # coordinates are log a, log b
    X = (point.rho + point.m) / 2
    Y = (point.rho - point.m) / 2

    def objective(u: float, v: float) -> float:
        a, b = np.exp(u), np.exp(v)
        return float(a * X + b * Y + np.log(1 / a + 1 / b))

    return objective


def _coordinate_descent(
    objective, u: float, v: float, max_sweeps: int, window: float
) -> Tuple[float, float, float]:
    value = objective(u, v)
    for _ in range(max_sweeps):
        res_u = optimize.minimize_scalar(
            lambda t: objective(t, v),
            bounds=(u - window, u + window),
            method="bounded",
            options={"xatol": 1e-12},
        )
        u = float(res_u.x)
        res_v = optimize.minimize_scalar(
            lambda t: objective(u, t),
            bounds=(v - window, v + window),
            method="bounded",
            options={"xatol": 1e-12},
        )
        v = float(res_v.x)
        new_value = objective(u, v)
        if not np.isfinite(new_value):
            raise ConvergenceError("Dual objective left its domain")
        if value - new_value <= 1e-15 * max(1.0, abs(value)):
            return u, v, min(value, new_value)
        value = new_value
    raise ConvergenceError(f"Coordinate descent did not settle in {max_sweeps} sweeps")


def legendre_inf_numeric(
    point: ModelPoint,
    seed: Optional[int] = 0,
    max_sweeps: int = 2000,
) -> float:
    """
    ``inf over mu > |beta| of beta m + mu rho + f(beta, mu)``, by coordinate
    descent from the analytic conjugate fields and from one random restart

    :param ModelPoint point: interior point
    :param seed: seed for the restart perturbation
    :returns: the smaller of the two minima found
    """
    point.require_interior()
    objective = _dual_objective(point)
    start = ensemble_map(point)
    u0, v0 = np.log(start.rate_positive), np.log(start.rate_negative)

    _, _, seeded = _coordinate_descent(objective, u0, v0, max_sweeps, window=1.0)

    rng = np.random.default_rng(seed)
    du, dv = rng.normal(scale=1.0, size=2)
    _, _, restarted = _coordinate_descent(
        objective, u0 + du, v0 + dv, max_sweeps, window=4.0
    )
    if restarted < seeded - 1e-9:
        warn(
            RuntimeWarning(
                f"Random restart improved on the analytic seed by {seeded - restarted}"
            )
        )
    return min(seeded, restarted)


def half_constrained_entropy(beta: float, grid_points: int = 257) -> Tuple[float, float]:
    """
    Maximize ``s(m, 1) - beta m`` over ``[-1, 1]``

    :returns: ``(value, argmax)``
    """

    def objective(m):
        return entropy_slice(m) - beta * m

    if abs(beta) > _SATURATION:
        edge = -float(np.sign(beta))
        return float(objective(edge)), edge

    grid = np.linspace(-1.0, 1.0, grid_points)
    i = int(np.argmax(objective(grid)))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid_points - 1)]

    # the objective is strictly concave, so the bracket around the best grid
    # node holds the maximizer
    guess = float(grid[i])
    if 0 < i < grid_points - 1:
        try:
            res = optimize.minimize_scalar(
                lambda m: -float(objective(m)),
                bracket=(lo, grid[i], hi),
                method="golden",
            )
            guess = float(res.x)
        except ValueError:
            # tie with a neighbor; the root polish below still applies
            pass

    def slope(m: float) -> float:
        return float(entropy_slice_derivative(m)) - beta

    eps = 1e-15
    left, right = max(lo, -1 + eps), min(hi, 1 - eps)
    if slope(left) > 0 > slope(right):
        argmax = optimize.brentq(slope, left, right, xtol=1e-15, rtol=1e-15)
    else:
        argmax = guess
    return float(objective(argmax)), float(argmax)


@dataclass
class ConjugacyResult:
    params: FieldParams
    f: float
    grid_sup: float
    argmax: ModelPoint

    @property
    def residual(self) -> float:
        """
        ``f - sup``; nonnegative and shrinking with the grid spacing
        """
        return self.f - self.grid_sup


def conjugacy_residual(
    params: FieldParams, grid_points: Tuple[int, int] = (401, 401)
) -> ConjugacyResult:
    """
    Compare ``f(beta, mu)`` with ``sup {s(m, rho) - beta m - mu rho}`` over a
    grid of the interior

    The grid uses ``t = m / rho`` in ``(-1, 1)`` and ``rho`` in
    ``(0, 3 rho*]`` where ``rho*`` is the exact maximizer.
    """
    target = inverse_map(params)
    t = np.linspace(-1, 1, grid_points[0] + 2)[1:-1]
    rho = np.linspace(0, 3 * target.rho, grid_points[1] + 1)[1:]
    T, R = np.meshgrid(t, rho, indexing="ij")
    values = (
        1
        + np.log(R)
        + np.log1p(np.sqrt(1 - T * T))
        - params.beta * T * R
        - params.mu * R
    )
    i, j = np.unravel_index(int(np.argmax(values)), values.shape)
    return ConjugacyResult(
        params=params,
        f=grand_entropy(params),
        grid_sup=float(values[i, j]),
        argmax=ModelPoint(float(T[i, j] * R[i, j]), float(R[i, j])),
    )


def gradient_residual(params: FieldParams, h: float = 1e-6) -> float:
    """
    Largest deviation between ``-grad f`` by central differences and
    :func:`inverse_map`
    """
    b, u = params.beta, params.mu
    dfdb = (grand_entropy((b + h, u)) - grand_entropy((b - h, u))) / (2 * h)
    dfdu = (grand_entropy((b, u + h)) - grand_entropy((b, u - h))) / (2 * h)
    exact = inverse_map(params)
    return float(max(abs(-dfdb - exact.m), abs(-dfdu - exact.rho)))
