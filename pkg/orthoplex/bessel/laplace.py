"""
Laplace asymptotics of the magnetization integral near a maximizer

Near a maximizer ``m*`` of type ``k`` the integral of ``e^{n (g + s_n)}``
over a window around ``m*``, multiplied by ``2 n^{1/(2k) + 1} / K_n`` and by
``e^{-n psi(m*)}``, converges to ``W = C^k / |d^{2k} psi(m*)|^{1/(2k)}``. The
factor 2 collects the two corner peaks of the angular integral.
"""

from typing import Optional, Tuple

import numpy as np
from scipy.special import gammaln  # type: ignore

from orthoplex.errors import ValidationError
from orthoplex.interaction import Interaction, classify, psi, psi_derivative
from orthoplex.interaction.analyzer import scan_psi
from orthoplex.model import LogReal, log_partition_interior
from orthoplex.model.partition import check_size
from orthoplex.util import log_integrate

from .representation import AngularEntropy, log_K


def laplace_prefactor(n: int, k: int) -> LogReal:
    n = check_size(n)
    if k < 1:
        raise ValidationError(f"Type must be positive, got {k}")
    return LogReal(float(np.log(2) + (1 / (2 * k) + 1) * np.log(n) - log_K(n)))


def _check_window(
    g: Interaction, m_star: float, lo: float, hi: float, tol_value: float
) -> None:
    scan = scan_psi(g)
    best = scan.supremum
    inside = [m for m, v in scan.candidates if lo <= m <= hi and v >= best - tol_value]
    if len(inside) > 1:
        raise ValidationError(
            f"Window [{lo}, {hi}] around m* = {m_star} holds {len(inside)} maximizers"
        )


def W_n_numeric(
    g: Interaction,
    m_star: float,
    delta: float,
    n: int,
    k: Optional[int] = None,
    tol_value: float = 1e-9,
) -> float:
    """
    Finite-``n`` Laplace weight over the window ``[m* - delta, m* + delta]``,
    clipped to ``[-1, 1]``

    :param int k: type of ``m*``; classified when omitted
    :raises orthoplex.errors.ValidationError: if the window holds a second
        global maximizer
    """
    n = check_size(n)
    if not delta > 0:
        raise ValidationError(f"Window half-width must be positive, got {delta}")
    if not abs(m_star) < 1:
        raise ValidationError(f"Maximizer must be interior, got {m_star}")
    lo, hi = max(m_star - delta, -1.0), min(m_star + delta, 1.0)
    _check_window(g, m_star, lo, hi, tol_value)
    if k is None:
        k = classify(g, m_star).k

    def log_integrand(m):
        return n * g(m) + log_partition_interior(n, m, 1.0)

    log_window = log_integrate(log_integrand, lo, hi, breakpoints=[m_star])
    return float(
        np.exp(laplace_prefactor(n, k).log_value + log_window - n * psi(g, m_star))
    )


def overloaded_psi(g: Interaction, m, theta1, theta2):
    """
    ``g(m) + s(m, 1, theta1, theta2)``
    """
    return g(m) + AngularEntropy(float(m), 1.0)(theta1, theta2)


def taylor_limit(
    g: Interaction, m_star: float, k: int, point: Tuple[float, float, float],
    deriv_2k: Optional[float] = None,
) -> float:
    """
    Limit of ``n (psi(m* + m n^{-1/(2k)}, t1 n^{-1/2}, t2 n^{-1/2}) - psi(m*))``:
    ``d^{2k} psi(m*) m^{2k} / (2k)! - (a1 t1^2 + a2 t2^2) / 2``
    """
    m, t1, t2 = point
    if deriv_2k is None:
        deriv_2k = psi_derivative(g, m_star, 2 * k)
    a, b = AngularEntropy(m_star, 1.0).amplitudes
    a1, a2 = 2 * a / (a + b), 2 * b / (a + b)
    return float(
        deriv_2k * m ** (2 * k) / np.exp(gammaln(2 * k + 1))
        - 0.5 * (a1 * t1 ** 2 + a2 * t2 ** 2)
    )


def taylor_limit_residual(
    g: Interaction,
    m_star: float,
    k: int,
    point: Tuple[float, float, float],
    n: int,
    deriv_2k: Optional[float] = None,
) -> float:
    """
    Distance between the rescaled local expansion of the overloaded ``psi`` at
    size ``n`` and its limit, see :func:`taylor_limit`
    """
    m, t1, t2 = point
    scaled = overloaded_psi(
        g, m_star + m * n ** (-1 / (2 * k)), t1 / np.sqrt(n), t2 / np.sqrt(n)
    )
    value = n * (float(scaled) - psi(g, m_star))
    return abs(value - taylor_limit(g, m_star, k, point, deriv_2k))
