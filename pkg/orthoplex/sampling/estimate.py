"""
Monte Carlo estimation of observables

Samples are drawn in fixed-size chunks; chunk ``i`` draws from its own
generator derived from ``(seed, stream, i)``. Chunk statistics are combined
in chunk order, so the result does not depend on the number of threads.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from orthoplex.errors import ValidationError

from .observables import Observable
from .rng import RngState
from .samplers import Sampler

DEFAULT_CHUNK_SIZE = 20000


@dataclass(frozen=True)
class Estimate:
    mean: float
    stderr: float
    samples: int


# (count, mean, sum of squared deviations) per observable
_Moments = Tuple[int, np.ndarray, np.ndarray]


def _combine(a: _Moments, b: _Moments) -> _Moments:
    na, mean_a, m2_a = a
    nb, mean_b, m2_b = b
    n = na + nb
    delta = mean_b - mean_a
    return n, mean_a + delta * nb / n, m2_a + m2_b + delta * delta * na * nb / n


def _chunk_sizes(total: int, chunk_size: int) -> List[int]:
    full, rest = divmod(total, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def estimate_observables(
    sampler: Sampler,
    observables: Sequence[Observable],
    n_samples: int,
    rng: RngState,
    threads: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> List[Estimate]:
    """
    Estimate several observables from one shared set of samples

    :param sampler: anything with ``n`` and ``draw(size, generator)``
    :param int n_samples: number of configurations, at least 2
    :param RngState rng: identity of the random stream
    :param int threads: worker threads; does not affect the result
    :returns: one :class:`Estimate` per observable, in order
    """
    if n_samples < 2:
        raise ValidationError(f"Need at least 2 samples, got {n_samples}")
    if threads < 1:
        raise ValidationError(f"threads must be positive, got {threads}")
    for obs in observables:
        if obs.arity > sampler.n:
            raise ValidationError(
                f"Observable '{obs.name}' has arity {obs.arity} > n = {sampler.n}"
            )

    def run_chunk(job: Tuple[int, int]) -> _Moments:
        index, size = job
        phi = sampler.draw(size, rng.chunk_generator(index))
        values = np.stack([obs(phi) for obs in observables])
        mean = values.mean(axis=1)
        return size, mean, ((values - mean[:, np.newaxis]) ** 2).sum(axis=1)

    jobs = list(enumerate(_chunk_sizes(n_samples, chunk_size)))
    if threads == 1:
        parts = [run_chunk(job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run_chunk, jobs))

    total = parts[0]
    for part in parts[1:]:
        total = _combine(total, part)
    count, mean, m2 = total
    stderr = np.sqrt(m2 / (count - 1) / count)
    return [
        Estimate(mean=float(mu), stderr=float(se), samples=count)
        for mu, se in zip(mean, stderr)
    ]


def estimate_observable(
    sampler: Sampler,
    obs: Observable,
    n_samples: int,
    rng: RngState,
    threads: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> Estimate:
    return estimate_observables(
        sampler, [obs], n_samples, rng, threads=threads, chunk_size=chunk_size
    )[0]
