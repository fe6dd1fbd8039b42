"""
Quadrature oracles for the finite marginals of the microcanonical measure
"""

from typing import Callable

import numpy as np
from scipy import stats  # type: ignore

from orthoplex.errors import ValidationError
from orthoplex.model import ModelPoint, log_Z_interior
from orthoplex.model.partition import check_size

from .samplers import sign_masses, sign_count_weights

# sign counts whose probability is below this are skipped
_NEGLIGIBLE_WEIGHT = 1e-17


def _simplex_coordinate_expectation(
    func: Callable[[float], float], k: int, mass: float
) -> float:
    # a single coordinate of the uniform simplex of mass r in R^k is
    # r * Beta(1, k - 1); for k = 1 it is the atom at r
    if k == 1:
        return float(func(mass))
    return float(stats.beta(1, k - 1, scale=mass).expect(func))


def single_site_expectation(
    n: int, point: ModelPoint, func: Callable[[float], float]
) -> float:
    """
    ``nu_n(m, rho)[func(phi_1)]`` by conditioning on the number ``k`` of
    positive spins: ``phi_1`` is positive with probability ``k/n``
    """
    n = check_size(n)
    weights = sign_count_weights(n, point)
    X, Y = sign_masses(n, point)
    total = 0.0
    for k, w in enumerate(weights, start=1):
        if w < _NEGLIGIBLE_WEIGHT:
            continue
        pos = _simplex_coordinate_expectation(func, k, X)
        neg = _simplex_coordinate_expectation(lambda x: func(-x), n - k, Y)
        total += w * (k * pos + (n - k) * neg) / n
    return total


def marginal_density(n: int, point: ModelPoint, phi: np.ndarray) -> float:
    """
    Density of the absolutely continuous part of the ``(n-2)``-site marginal
    of ``nu_n(m, rho)`` at ``phi``

    It equals ``1/Z_n(m n, rho n)`` wherever the positive and negative parts
    of ``phi`` leave strictly positive mass ``X_n``, ``Y_n`` for the two
    remaining spins, and 0 elsewhere. The singular remainder, where both
    remaining spins share a sign, is not part of the density.
    """
    n = check_size(n)
    phi = np.asarray(phi, dtype=float)
    if phi.shape != (n - 2,):
        raise ValidationError(f"Expected {n - 2} spins, got shape {phi.shape}")
    X, Y = sign_masses(n, point)
    if np.clip(phi, 0, None).sum() < X and np.clip(-phi, 0, None).sum() < Y:
        return float(np.exp(-log_Z_interior(n, point).log_value))
    return 0.0
