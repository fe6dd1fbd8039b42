"""
Expectations under grand-canonical product states and their mixtures

A single spin under ``eta(beta, mu)`` is ``+E/(mu+beta)`` with probability
``p`` and ``-E/(mu-beta)`` otherwise, ``E`` standard exponential. For ``d``
spins the expectation splits into ``2^d`` sign patterns, each a
``d``-dimensional integral against ``e^{-x}`` done by tensor Gauss-Laguerre.
"""

import itertools
from functools import lru_cache
from typing import Tuple

import numpy as np

from orthoplex.errors import ValidationError
from orthoplex.sampling import Observable
from orthoplex.thermo import FieldParams

from .analyzer import MixtureState

# Gauss-Laguerre nodes per axis by observable arity
LAGUERRE_NODES = {1: 64, 2: 48, 3: 32, 4: 20}


@lru_cache(maxsize=None)
def _tensor_rule(arity: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.laguerre.laggauss(LAGUERRE_NODES[arity])
    points = np.array(list(itertools.product(x, repeat=arity)))
    weights = np.prod(np.array(list(itertools.product(w, repeat=arity))), axis=1)
    return points, weights


def grand_canonical_expectation(params: FieldParams, obs: Observable) -> float:
    if obs.arity not in LAGUERRE_NODES:
        raise ValidationError(
            f"Quadrature supports observables on at most {max(LAGUERRE_NODES)} "
            f"spins, got arity {obs.arity}"
        )
    points, weights = _tensor_rule(obs.arity)
    p = params.positive_probability
    total = 0.0
    for signs in itertools.product((1, -1), repeat=obs.arity):
        signs_arr = np.array(signs)
        rates = np.where(signs_arr > 0, params.rate_positive, params.rate_negative)
        prob = np.prod(np.where(signs_arr > 0, p, 1 - p))
        total += prob * float(weights @ obs(points * (signs_arr / rates)))
    return total


def limit_state_expectation(mix: MixtureState, obs: Observable) -> float:
    """
    ``sum_i w_i eta(beta_i, mu_i)[obs]`` over the mixture components
    """
    return float(
        sum(c.weight * grand_canonical_expectation(c.params, obs) for c in mix.components)
    )
