"""
The finite-volume magnetization law ``kappa_n^g``

On ``(-1, 1)`` it has density proportional to ``n e^{n g(m)} Z_n(m n, n)``
and at ``m = ±1`` atoms proportional to ``n e^{n g(±1)} Z_n(±n, n)``.
"""

from typing import Callable, List

import numpy as np
from scipy import integrate  # type: ignore

from orthoplex.errors import ValidationError
from orthoplex.model import log_partition_interior, log_Z_boundary
from orthoplex.model.partition import check_size
from orthoplex.util.quadrature import DEFAULT_MAX_PANELS, DEFAULT_NODES, log_integrate

from .analyzer import scan_psi
from .interaction import Interaction

# coarse scan used only to place panel edges at the peaks
_PEAK_SCAN_POINTS = 1025


class FiniteMixture:
    """
    Normalized ``kappa_n^g``

    :ivar float log_normalizer: ``ln Q_n(g)``
    """

    g: Interaction
    n: int
    peaks: List[float]
    log_normalizer: float

    def __init__(
        self,
        g: Interaction,
        n: int,
        nodes: int = DEFAULT_NODES,
        max_panels: int = DEFAULT_MAX_PANELS,
    ):
        self.g = g
        self.n = check_size(n)
        self.nodes = nodes
        self.max_panels = max_panels
        self.peaks = [m for m, _ in scan_psi(g, _PEAK_SCAN_POINTS).candidates]
        log_boundary = np.log(n) + log_Z_boundary(n, n).log_value
        self._log_atoms = {
            -1.0: float(log_boundary + n * g(-1.0)),
            1.0: float(log_boundary + n * g(1.0)),
        }
        self.log_normalizer = self._log_unnormalized(-1.0, 1.0)

    def log_density(self, m: np.ndarray) -> np.ndarray:
        """
        Unnormalized log density on the interior
        """
        n = self.n
        return np.log(n) + n * self.g(m) + log_partition_interior(n, m, 1.0)

    def _log_unnormalized(self, a: float, b: float) -> float:
        parts = [w for m, w in self._log_atoms.items() if a <= m <= b]
        lo, hi = max(a, -1.0), min(b, 1.0)
        if hi > lo:
            parts.append(
                log_integrate(
                    self.log_density,
                    lo,
                    hi,
                    breakpoints=[p for p in self.peaks if lo < p < hi],
                    nodes=self.nodes,
                    max_panels=self.max_panels,
                )
            )
        if not parts:
            return float("-inf")
        return float(np.logaddexp.reduce(sorted(parts)))

    def log_mass(self, a: float, b: float) -> float:
        """
        ``ln kappa_n^g([a, b])``
        """
        if a > b:
            raise ValidationError(f"Empty interval [{a}, {b}]")
        return self._log_unnormalized(a, b) - self.log_normalizer

    def expectation(self, func: Callable[[float], float]) -> float:
        """
        ``kappa_n^g[func]``, atoms included
        """
        total = sum(
            np.exp(w - self.log_normalizer) * func(m) for m, w in self._log_atoms.items()
        )

        def integrand(m: float) -> float:
            return func(m) * float(
                np.exp(self.log_density(np.asarray(m)) - self.log_normalizer)
            )

        value, _ = integrate.quad(
            integrand, -1.0, 1.0, points=self.peaks or None, limit=400, epsabs=1e-13
        )
        return float(total + value)


def finite_mixture(
    g: Interaction,
    n: int,
    nodes: int = DEFAULT_NODES,
    max_panels: int = DEFAULT_MAX_PANELS,
) -> FiniteMixture:
    return FiniteMixture(g, n, nodes=nodes, max_panels=max_panels)


def mixture_expectation(g: Interaction, n: int, func: Callable[[float], float]) -> float:
    return finite_mixture(g, n).expectation(func)
