"""
Exact samplers for the uniform simplex, the microcanonical measure and the
grand-canonical product measure

A microcanonical configuration at ``(m, rho)`` is built by choosing the
number ``k`` of positive spins with probability proportional to the ``k``-th
summand of ``Z_n``, a uniformly random set of ``k`` positions, and uniform
points of the simplexes of mass ``X_n = (rho+m) n/2`` (positive spins) and
``Y_n = (rho-m) n/2`` (negative spins).
"""

from typing import Protocol

import numpy as np
from scipy.special import logsumexp  # type: ignore

from orthoplex.errors import ValidationError
from orthoplex.model import ModelPoint, log_sign_count_terms
from orthoplex.model.partition import check_size
from orthoplex.thermo import FieldParams


def sample_simplex(k: int, r: float, rng: np.random.Generator) -> np.ndarray:
    """
    Uniform point of ``{x >= 0, sum(x) = r}`` in ``R^k``, by normalizing
    ``k`` standard exponentials
    """
    if k < 1:
        raise ValidationError(f"Simplex dimension must be at least 1, got {k}")
    if not r > 0:
        raise ValidationError(f"Simplex mass must be positive, got {r}")
    if k == 1:
        return np.array([float(r)])
    g = rng.exponential(size=k)
    x = r * g / g.sum()
    x[-1] = max(r - x[:-1].sum(), 0.0)
    return x


def sign_masses(n: int, point: ModelPoint):
    return (point.rho + point.m) * n / 2, (point.rho - point.m) * n / 2


def sign_count_weights(n: int, point: ModelPoint) -> np.ndarray:
    """
    Probabilities of ``k = 1, ..., n-1`` positive spins under ``nu_n(m, rho)``

    Entry ``i`` belongs to ``k = i + 1``.
    """
    n = check_size(n)
    point.require_interior()
    terms = log_sign_count_terms(n, *sign_masses(n, point))
    weights = np.exp(terms - logsumexp(terms))
    return weights / weights.sum()


def _draw_sign_counts(
    weights: np.ndarray, size: int, rng: np.random.Generator
) -> np.ndarray:
    cdf = np.cumsum(weights)
    u = rng.random(size) * cdf[-1]
    return np.minimum(np.searchsorted(cdf, u, side="right"), len(weights) - 1) + 1


def sample_microcanonical(
    n: int, point: ModelPoint, rng: np.random.Generator
) -> np.ndarray:
    weights = sign_count_weights(n, point)
    X, Y = sign_masses(n, point)
    k = int(_draw_sign_counts(weights, 1, rng)[0])

    # partial Fisher-Yates: the first k entries become a uniform k-subset
    index = np.arange(n)
    for i in range(k):
        j = int(rng.integers(i, n))
        index[i], index[j] = index[j], index[i]

    phi = np.empty(n)
    phi[index[:k]] = sample_simplex(k, X, rng)
    phi[index[k:]] = -sample_simplex(n - k, Y, rng)
    return phi


def sample_microcanonical_batch(
    n: int, point: ModelPoint, size: int, rng: np.random.Generator
) -> np.ndarray:
    """
    ``size`` independent draws of :func:`sample_microcanonical`, shape
    ``(size, n)``
    """
    weights = sign_count_weights(n, point)
    X, Y = sign_masses(n, point)
    k = _draw_sign_counts(weights, size, rng)

    positive = np.arange(n)[np.newaxis, :] < k[:, np.newaxis]
    positive = rng.permuted(positive, axis=1)

    g = rng.exponential(size=(size, n))
    pos_total = np.where(positive, g, 0.0).sum(axis=1, keepdims=True)
    neg_total = np.where(positive, 0.0, g).sum(axis=1, keepdims=True)
    return np.where(positive, X * g / pos_total, -Y * g / neg_total)


def sample_grand_canonical(
    params: FieldParams, n: int, rng: np.random.Generator
) -> np.ndarray:
    return sample_grand_canonical_batch(params, n, 1, rng)[0]


def sample_grand_canonical_batch(
    params: FieldParams, n: int, size: int, rng: np.random.Generator
) -> np.ndarray:
    """
    iid spins with density proportional to ``exp(-beta phi - mu |phi|)``:
    positive with probability ``(1/(mu+beta))/q``, then exponential with rate
    ``mu + beta``; otherwise negative with rate ``mu - beta``
    """
    if n < 1:
        raise ValidationError(f"System size must be positive, got {n}")
    positive = rng.random((size, n)) < params.positive_probability
    g = rng.exponential(size=(size, n))
    return np.where(positive, g / params.rate_positive, -g / params.rate_negative)


def sample_boundary(
    n: int, N: float, sign: int, rng: np.random.Generator
) -> np.ndarray:
    """
    Microcanonical measure on the boundary ``M = sign * N``: all spins share
    the sign and their magnitudes are uniform on the simplex of mass ``N``
    """
    if sign not in (-1, 1):
        raise ValidationError(f"sign must be ±1, got {sign}")
    return sign * sample_simplex(check_size(n), N, rng)


class Sampler(Protocol):
    n: int

    def draw(self, size: int, rng: np.random.Generator) -> np.ndarray:
        ...


class MicrocanonicalSampler:
    def __init__(self, n: int, point: ModelPoint):
        self.n = check_size(n)
        self.point = point.require_interior()

    def draw(self, size: int, rng: np.random.Generator) -> np.ndarray:
        return sample_microcanonical_batch(self.n, self.point, size, rng)


class GrandCanonicalSampler:
    def __init__(self, n: int, params: FieldParams):
        if n < 1:
            raise ValidationError(f"System size must be positive, got {n}")
        self.n = n
        self.params = params

    def draw(self, size: int, rng: np.random.Generator) -> np.ndarray:
        return sample_grand_canonical_batch(self.params, self.n, size, rng)
