"""
Exact microcanonical partition functions

For ``M = sum(phi)``, ``N = sum(|phi|)`` write ``X = (N + M) / 2`` and
``Y = (N - M) / 2`` for the total mass on the positive and negative spins.
Summing the volumes of the simplex products over the number ``k`` of
positive spins gives, for ``|M| < N``,

    Z_n(M, N) = 1/2 * sum_{k=1}^{n-1} C(n, k) X^{k-1}/(k-1)! Y^{n-k-1}/(n-k-1)!

and on the boundary ``|M| = N`` the single-sign volume ``N^{n-1}/(n-1)!``.
Everything is evaluated with log-gamma and a log-sum-exp over ``k``.
"""

from typing import Union

import numpy as np
from scipy.special import gammaln, logsumexp, xlogy  # type: ignore

from orthoplex.errors import ValidationError

from .types import LogReal, MacroTotals, ModelPoint

ArrayLike = Union[float, np.ndarray]


def check_size(n: int) -> int:
    if isinstance(n, bool) or int(n) != n:
        raise ValidationError(f"System size must be an integer, got {n}")
    if n < 2:
        raise ValidationError(f"System size must be at least 2, got {n}")
    return int(n)


def log_sign_count_terms(n: int, X: ArrayLike, Y: ArrayLike) -> np.ndarray:
    """
    Log of the summands of ``Z_n`` for ``k = 1, ..., n-1`` positive spins

    :param int n: system size
    :param X: total positive mass (scalar or array)
    :param Y: total negative mass, broadcastable against ``X``
    :returns: array of shape ``broadcast(X, Y).shape + (n - 1,)``
    """
    n = check_size(n)
    k = np.arange(1, n, dtype=float)
    X = np.asarray(X, dtype=float)[..., np.newaxis]
    Y = np.asarray(Y, dtype=float)[..., np.newaxis]
    log_binom = gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)
    return (
        log_binom
        + xlogy(k - 1, X)
        - gammaln(k)
        + xlogy(n - k - 1, Y)
        - gammaln(n - k)
        - np.log(2.0)
    )


def log_partition_interior(n: int, m: ArrayLike, rho: ArrayLike = 1.0) -> np.ndarray:
    """
    Vectorized ``ln Z_n(m n, rho n)`` on the interior ``|m| < rho``

    No region checks are made; callers pass interior points.
    """
    m = np.asarray(m, dtype=float)
    rho = np.asarray(rho, dtype=float)
    X = (rho + m) * n / 2
    Y = (rho - m) * n / 2
    return logsumexp(log_sign_count_terms(n, X, Y), axis=-1)


def log_Z_interior(n: int, point: ModelPoint) -> LogReal:
    n = check_size(n)
    point.require_interior()
    return LogReal(float(log_partition_interior(n, point.m, point.rho)))


def log_Z_boundary(n: int, N: float) -> LogReal:
    n = check_size(n)
    if not N > 0:
        raise ValidationError(f"N must be positive, got {N}")
    return LogReal(float((n - 1) * np.log(N) - gammaln(n)))


def log_Z_totals(totals: MacroTotals) -> LogReal:
    """
    ``ln Z_n(M, N)`` at unscaled totals, dispatching on the region
    """
    n = check_size(totals.n)
    if abs(totals.M) >= totals.N * (1 - 1e-12):
        return log_Z_boundary(n, totals.N)
    X = (totals.N + totals.M) / 2
    Y = (totals.N - totals.M) / 2
    return LogReal(float(logsumexp(log_sign_count_terms(n, X, Y), axis=-1)))


def log_Z(n: int, point: ModelPoint) -> LogReal:
    """
    ``ln Z_n(m n, rho n)`` for any point of the closed cone
    """
    if point.is_interior:
        return log_Z_interior(n, point)
    return log_Z_boundary(n, point.rho * n)


def entropy_n(n: int, point: ModelPoint) -> float:
    """
    Finite-volume specific entropy ``s_n(m, rho) = ln Z_n(m n, rho n) / n``
    """
    return log_Z(n, point).log_value / n


def entropy_interior(n: int, m: ArrayLike, rho: ArrayLike = 1.0) -> np.ndarray:
    return log_partition_interior(check_size(n), m, rho) / n


def closed_form_log_Z_center(n: int, rho: float = 1.0) -> LogReal:
    """
    ``ln Z_n(0, rho n)`` via the Vandermonde identity, independent of the
    k-sum
    """
    n = check_size(n)
    if not rho > 0:
        raise ValidationError(f"rho must be positive, got {rho}")
    log_central = gammaln(2 * n - 1) - 2 * gammaln(n)
    return LogReal(
        float(
            np.log(0.5) + (n - 2) * np.log(rho * n / 2) + log_central - gammaln(n - 1)
        )
    )


def entropy_lower_bound(n: int, point: ModelPoint) -> float:
    """
    Lower bound on ``s_n`` from the ``k = n - 1`` summand alone:
    ``(ln(1/2) + (n-2) ln((rho+m)/2) + ln(n^{n-1}/(n-2)!)) / n``
    """
    n = check_size(n)
    point.require_interior()
    return (
        np.log(0.5)
        + (n - 2) * np.log((point.rho + point.m) / 2)
        + (n - 1) * np.log(n)
        - gammaln(n - 1)
    ) / n
