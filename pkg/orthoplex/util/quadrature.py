"""
Gauss-Legendre panel quadrature carried out in the log domain

Integrands of the form ``e^{n h(x)}`` overflow long before ``n`` gets
interesting, so callers hand over ``log f`` and get back ``log ∫ f``.
"""

from functools import lru_cache
from typing import Callable, Iterable, List, Tuple

import numpy as np
from scipy.special import logsumexp  # type: ignore

from orthoplex.errors import QuadratureError

LogIntegrand = Callable[[np.ndarray], np.ndarray]

DEFAULT_NODES = 32
DEFAULT_MAX_PANELS = 4096
# panels holding less than this share of the total are held to an absolute
# rather than a relative tolerance
_NEGLIGIBLE_SHARE = 1.0 / 64


@lru_cache(maxsize=None)
def leggauss_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Gauss-Legendre nodes and log-weights on [-1, 1]
    """
    x, w = np.polynomial.legendre.leggauss(nodes)
    x.setflags(write=False)
    log_w = np.log(w)
    log_w.setflags(write=False)
    return x, log_w


def _panel(log_f: LogIntegrand, a: float, b: float, nodes: int) -> float:
    x, log_w = leggauss_rule(nodes)
    half = 0.5 * (b - a)
    values = np.asarray(log_f(0.5 * (a + b) + half * x), dtype=float)
    if np.any(np.isnan(values)) or np.any(values == np.inf):
        raise QuadratureError(f"Integrand is not finite on [{a}, {b}]")
    return float(logsumexp(values + log_w)) + np.log(half)


def log_integrate(
    log_f: LogIntegrand,
    a: float,
    b: float,
    breakpoints: Iterable[float] = (),
    initial_panels: int = 16,
    nodes: int = DEFAULT_NODES,
    rel_tol: float = 1e-11,
    max_panels: int = DEFAULT_MAX_PANELS,
) -> float:
    """
    Compute ``log ∫_a^b exp(log_f(x)) dx`` by adaptive bisection of
    Gauss-Legendre panels

    :param log_f: vectorized logarithm of the (nonnegative) integrand
    :param breakpoints: points inside ``(a, b)`` that must be panel edges,
        typically the locations of sharp peaks
    :param int initial_panels: number of equal panels before refinement
    :param int nodes: Gauss-Legendre nodes per panel
    :param float rel_tol: accepted disagreement between a panel and its two
        halves, relative to the total
    :param int max_panels: refinement budget
    :raises orthoplex.errors.QuadratureError: if the budget runs out
    """
    if not b > a:
        raise QuadratureError(f"Empty interval [{a}, {b}]")
    edges = set(np.linspace(a, b, initial_panels + 1).tolist())
    edges.update(p for p in breakpoints if a < p < b)
    ordered = sorted(edges)

    pending: List[Tuple[float, float, float]] = [
        (lo, hi, _panel(log_f, lo, hi, nodes)) for lo, hi in zip(ordered, ordered[1:])
    ]
    scale = float(logsumexp([est for _, _, est in pending]))
    if not np.isfinite(scale):
        raise QuadratureError("Integrand vanishes on the whole interval")

    # log values of size L carry an absolute rounding error of about L*eps
    tol = max(rel_tol, 64 * np.finfo(float).eps * max(1.0, abs(scale)))
    accepted: List[float] = []
    panel_count = len(pending)
    while pending:
        lo, hi, whole = pending.pop()
        mid = 0.5 * (lo + hi)
        left = _panel(log_f, lo, mid, nodes)
        right = _panel(log_f, mid, hi, nodes)
        halves = float(np.logaddexp(left, right))
        diff = abs(np.exp(whole - scale) - np.exp(halves - scale))
        if diff <= tol * max(np.exp(halves - scale), _NEGLIGIBLE_SHARE):
            accepted.append(halves)
            continue
        panel_count += 1
        if panel_count > max_panels:
            raise QuadratureError(
                f"Panel budget of {max_panels} exceeded near [{lo}, {hi}]"
            )
        pending.append((lo, mid, left))
        pending.append((mid, hi, right))

    # sort so the reduction order does not depend on the refinement order
    return float(logsumexp(sorted(accepted)))
