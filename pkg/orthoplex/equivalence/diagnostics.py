"""
Quantitative equivalence of ensembles

For ``n >= 3`` the relative entropy of the ``(n-2)``-site marginal of
``nu_n(m, rho)`` with respect to ``eta(beta, mu)``, per site, is

    beta m + mu rho + f(beta, mu) - n/(n-2) s_n(m, rho)

and Pinsker's inequality turns it into a bound on expectation gaps of local
observables bounded by 1.
"""

from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence
from warnings import warn

import numpy as np

from orthoplex.errors import NumericalError, ValidationError
from orthoplex.model import ModelPoint, entropy_lower_bound, entropy_n
from orthoplex.model.partition import check_size
from orthoplex.sampling import (
    GrandCanonicalSampler,
    MicrocanonicalSampler,
    Observable,
    RngState,
    estimate_observables,
)
from orthoplex.thermo import FieldParams, ensemble_map, grand_entropy

RADICAND_CLAMP = 1e-12
STDERR_SLACK = 4.0


def relative_entropy_rate(n: int, point: ModelPoint, params: FieldParams) -> float:
    n = check_size(n)
    if n < 3:
        raise ValidationError(f"Relative entropy rate needs n >= 3, got {n}")
    return (
        params.beta * point.m
        + params.mu * point.rho
        + grand_entropy(params)
        - n / (n - 2) * entropy_n(n, point)
    )


def pinsker_bound(
    n: int, index_size: int, point: ModelPoint, params: FieldParams
) -> float:
    """
    Upper bound on ``|nu_n[f] - eta[f]|`` over local ``f`` on ``index_size``
    spins with ``sup |f| <= 1``

    A negative rate within rounding is clamped to 0 with a ``RuntimeWarning``.

    :raises orthoplex.errors.NumericalError: if the relative entropy comes
        out negative beyond rounding
    """
    n = check_size(n)
    if not 1 <= index_size < n - 2:
        raise ValidationError(
            f"Index set size must satisfy 1 <= |I| < n - 2, got {index_size} for n={n}"
        )
    rate = relative_entropy_rate(n, point, params)
    if rate < 0:
        if rate < -RADICAND_CLAMP:
            raise NumericalError(f"Negative relative entropy rate {rate}")
        warn(RuntimeWarning(f"Relative entropy rate {rate} clamped to 0"))
        rate = 0.0
    return float(np.sqrt(index_size * (n - 2) / (2 * (n - 2 - index_size)) * rate))


class EntropyBounds(NamedTuple):
    lower: float
    value: float
    upper: float


def entropy_bounds(n: int, point: ModelPoint, params: FieldParams) -> EntropyBounds:
    """
    Sandwich ``s_n`` between the single-summand lower bound and the upper
    bound ``(n-2)/n (beta m + mu rho + f)`` from positivity of relative entropy
    """
    n = check_size(n)
    if n < 3:
        raise ValidationError(f"Entropy bounds need n >= 3, got {n}")
    upper = (n - 2) / n * (
        params.beta * point.m + params.mu * point.rho + grand_entropy(params)
    )
    return EntropyBounds(
        lower=entropy_lower_bound(n, point), value=entropy_n(n, point), upper=upper
    )


@dataclass
class GapRecord:
    name: str
    arity: int
    microcanonical: float
    grand_canonical: float
    stderr: float
    bound: float

    @property
    def gap(self) -> float:
        return abs(self.microcanonical - self.grand_canonical)

    @property
    def within_bound(self) -> bool:
        return self.gap <= self.bound + STDERR_SLACK * self.stderr


@dataclass
class EquivalenceReport:
    n: int
    point: ModelPoint
    params: FieldParams
    records: List[GapRecord] = field(default_factory=list)

    @property
    def observable_count(self) -> int:
        return len(self.records)

    @property
    def bound(self) -> float:
        return max((r.bound for r in self.records), default=0.0)

    @property
    def empirical_gap(self) -> float:
        return max((r.gap for r in self.records), default=0.0)

    @property
    def all_within_bound(self) -> bool:
        return all(r.within_bound for r in self.records)


def verify_gap(
    n: int,
    point: ModelPoint,
    obs_suite: Sequence[Observable],
    n_samples: int,
    rng: RngState,
    params: Optional[FieldParams] = None,
    threads: int = 1,
) -> EquivalenceReport:
    """
    Estimate ``|nu_n[f] - eta[f]|`` for every observable of the suite and
    compare it with :func:`pinsker_bound`

    :param params: grand-canonical fields; defaults to the matched fields
        ``ensemble_map(point)``
    :param RngState rng: the microcanonical draws use ``rng``, the
        grand-canonical draws the next stream
    """
    for obs in obs_suite:
        if obs.bound > 1:
            raise ValidationError(
                f"Observable '{obs.name}' is not bounded by 1 (bound {obs.bound})"
            )
    if params is None:
        params = ensemble_map(point)

    micro = estimate_observables(
        MicrocanonicalSampler(n, point), obs_suite, n_samples, rng, threads=threads
    )
    grand = estimate_observables(
        GrandCanonicalSampler(n, params),
        obs_suite,
        n_samples,
        rng.with_stream((rng.stream + 1) % 2 ** 64),
        threads=threads,
    )
    report = EquivalenceReport(n=n, point=point, params=params)
    for obs, a, b in zip(obs_suite, micro, grand):
        report.records.append(
            GapRecord(
                name=obs.name,
                arity=obs.arity,
                microcanonical=a.mean,
                grand_canonical=b.mean,
                stderr=float(np.hypot(a.stderr, b.stderr)),
                bound=pinsker_bound(n, obs.arity, point, params),
            )
        )
    return report
