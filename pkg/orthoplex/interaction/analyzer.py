"""
Maximizers of ``psi^g(m) = g(m) + s(m, 1)`` and the limiting Gibbs state

The finite-volume Gibbs state with interaction ``g`` concentrates, as
``n -> oo``, on the global maximizers of ``psi^g``. Among them only those of
maximal type survive, weighted by the Laplace constants ``W``.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import mpmath  # type: ignore
import numpy as np
from scipy import optimize  # type: ignore
from scipy.special import gammaln  # type: ignore

from orthoplex.errors import (
    BoundaryMaximumError,
    ClassificationError,
    DomainError,
    NumericalError,
)
from orthoplex.model import ModelPoint
from orthoplex.thermo import (
    FieldParams,
    ensemble_map,
    entropy_slice,
    entropy_slice_derivative,
)

from .interaction import MP_DPS, Interaction

GRID_POINTS = 4097
K_MAX = 4
ANALYTIC_ZERO_TOL = 1e-10
# smallest distance to ±1 at which slopes are evaluated
_EDGE = 1e-15


def _entropy_slice_mp(x):
    return 1 + mpmath.log(1 + mpmath.sqrt(1 - x * x))


def psi(g: Interaction, m: Any) -> Any:
    """
    ``g(m) + s(m, 1)`` with ``s(±1, 1) = 1``; scalar in, float out

    :raises orthoplex.errors.DomainError: for ``|m| > 1``
    """
    arr = np.asarray(m, dtype=float)
    if np.any(np.abs(arr) > 1):
        raise DomainError(f"psi is defined on [-1, 1], got m={m}")
    values = g(arr) + entropy_slice(arr)
    return float(values) if values.ndim == 0 else values


def psi_derivative(g: Interaction, m: float, order: int) -> float:
    """
    ``d^order/dm^order psi^g`` at an interior point

    ``s`` is always differentiated in multiple precision; ``g`` analytically
    when the family allows it.
    """
    if order == 0:
        return psi(g, m)
    if abs(m) >= 1:
        raise DomainError(f"Derivatives of psi need |m| < 1, got {m}")
    with mpmath.workdps(MP_DPS):
        x = mpmath.mpf(m)
        if g.exact_derivatives:
            return g.derivative(m, order) + float(
                mpmath.diff(_entropy_slice_mp, x, order)
            )
        return float(
            mpmath.diff(lambda t: g.evaluate_mp(t) + _entropy_slice_mp(t), x, order)
        )


def _slope(g: Interaction):
    if g.exact_derivatives:
        return lambda m: g.derivative(m, 1) + float(entropy_slice_derivative(m))
    return lambda m: psi_derivative(g, m, 1)


@dataclass
class PsiScan:
    candidates: List[Tuple[float, float]]
    edges: List[Tuple[float, float]]

    @property
    def supremum(self) -> float:
        return max(v for _, v in self.candidates + self.edges)


def _refine(g: Interaction, lo: float, mid: float, hi: float) -> float:
    guess = mid
    try:
        res = optimize.minimize_scalar(
            lambda m: -psi(g, m), bracket=(lo, mid, hi), method="golden"
        )
        if lo <= res.x <= hi:
            guess = float(res.x)
    except (ValueError, RuntimeError, DomainError):
        pass

    slope = _slope(g)
    left, right = max(lo, -1 + _EDGE), min(hi, 1 - _EDGE)
    s_left, s_right = slope(left), slope(right)
    if s_left == 0:
        return left
    if s_right == 0:
        return right
    if s_left > 0 > s_right:
        return float(optimize.brentq(slope, left, right, xtol=1e-15, rtol=1e-15))
    return guess


def _edge_root(g: Interaction, lo: float, hi: float) -> Optional[float]:
    slope = _slope(g)
    left, right = max(lo, -1 + _EDGE), min(hi, 1 - _EDGE)
    if not slope(left) > 0 > slope(right):
        return None
    return float(optimize.brentq(slope, left, right, xtol=1e-15, rtol=1e-15))


def scan_psi(g: Interaction, grid_points: int = GRID_POINTS) -> PsiScan:
    grid = np.linspace(-1.0, 1.0, grid_points)
    values = psi(g, grid)
    if not np.all(np.isfinite(values)):
        raise NumericalError("Interaction is not finite on [-1, 1]")

    candidates = []
    for i in range(1, grid_points - 1):
        if values[i] >= values[i - 1] and values[i] >= values[i + 1]:
            m = _refine(g, grid[i - 1], grid[i], grid[i + 1])
            candidates.append((m, psi(g, m)))

    # psi' -> -oo at +1 and +oo at -1, so a maximizer may sit in an edge cell
    edge_cells = [(0, 1), (grid_points - 1, grid_points - 2)]
    for edge, inner in edge_cells:
        if values[edge] >= values[inner]:
            lo, hi = sorted((grid[edge], grid[inner]))
            m = _edge_root(g, lo, hi)
            if m is not None and psi(g, m) > values[edge]:
                candidates.append((m, psi(g, m)))
    edges = [(-1.0, float(values[0])), (1.0, float(values[-1]))]
    return PsiScan(candidates=candidates, edges=edges)


def psi_supremum(g: Interaction, grid_points: int = GRID_POINTS) -> float:
    """
    ``sup psi^g`` over ``[-1, 1]``, boundary included
    """
    return scan_psi(g, grid_points).supremum


def find_global_maxima(
    g: Interaction,
    tol_value: float = 1e-9,
    tol_sep: float = 1e-6,
    grid_points: int = GRID_POINTS,
) -> List[float]:
    """
    All global maximizers of ``psi^g``, sorted

    A dense grid locates the local maxima, golden-section search refines each
    bracket and a root polish of ``psi'`` fixes the last digits.

    :param float tol_value: maximizers within this of the maximum value count
    :param float tol_sep: maximizers closer than this are merged
    :raises orthoplex.errors.BoundaryMaximumError: if ``±1`` attains the maximum
    """
    scan = scan_psi(g, grid_points)
    best = scan.supremum
    for location, value in scan.edges:
        if value >= best - tol_value:
            raise BoundaryMaximumError(
                f"Global maximum of psi attained at the boundary m = {location:+g}",
                location,
            )
    maxima: List[float] = []
    for m, value in sorted(scan.candidates):
        if value >= best - tol_value and (not maxima or m - maxima[-1] > tol_sep):
            maxima.append(m)
    return maxima


def _zero_tol(g: Interaction, zero_tol: Optional[float], d_top: float) -> float:
    if zero_tol is not None:
        return zero_tol
    if g.exact_derivatives:
        return ANALYTIC_ZERO_TOL
    return max(1e-6, 1e-4 * abs(d_top))


def _polish_critical(g: Interaction, m: float, order: int) -> float:
    # Newton on the (simple) root of the given derivative
    for _ in range(40):
        f = psi_derivative(g, m, order)
        fp = psi_derivative(g, m, order + 1)
        if fp == 0 or not np.isfinite(f / fp):
            break
        step = float(np.clip(-f / fp, -1e-3, 1e-3))
        if abs(m + step) >= 1:
            break
        m += step
        if abs(step) <= 4e-16 * max(1.0, abs(m)):
            break
    return m


@dataclass(frozen=True)
class Classification:
    k: int
    m_star: float
    derivatives: Tuple[float, ...]

    @property
    def deriv_2k(self) -> float:
        return self.derivatives[-1]


def classify(
    g: Interaction,
    m_star: float,
    zero_tol: Optional[float] = None,
    k_max: int = K_MAX,
) -> Classification:
    """
    Find the type of an interior maximizer, see :func:`classify_type`

    For ``k >= 2`` the location is first polished as a root of
    ``d^{2k-1} psi``, which is simple at a maximizer of type ``k``.
    """
    k_max = min(k_max, g.derivative_order_supported // 2)
    for k in range(1, k_max + 1):
        m = m_star if k == 1 else _polish_critical(g, m_star, 2 * k - 1)
        derivs = tuple(psi_derivative(g, m, j) for j in range(1, 2 * k + 1))
        tol = _zero_tol(g, zero_tol, derivs[-1])
        # m is only resolved to a few ulps, which near ±1 moves psi' visibly
        slack = 4 * np.spacing(abs(m))
        flat = all(
            abs(d) <= tol + slack * abs(d_next)
            for d, d_next in zip(derivs[:-1], derivs[1:])
        )
        if flat and derivs[-1] < -tol:
            return Classification(k=k, m_star=m, derivatives=derivs)
    raise ClassificationError(
        f"No type up to {k_max} fits the maximizer at m = {m_star}", m_star
    )


def classify_type(
    g: Interaction,
    m_star: float,
    zero_tol: Optional[float] = None,
    k_max: int = K_MAX,
) -> int:
    """
    Smallest ``k`` with ``|d^j psi(m*)| <= zero_tol`` for ``j < 2k`` and
    ``d^{2k} psi(m*) < -zero_tol``

    :param float zero_tol: defaults to ``1e-10`` for families with exact
        derivatives and to ``max(1e-6, 1e-4 |d^{2k} psi|)`` otherwise
    :raises orthoplex.errors.ClassificationError: if no ``k <= k_max`` fits
    """
    return classify(g, m_star, zero_tol, k_max).k


@dataclass(frozen=True)
class MaximizerRecord:
    m_star: float
    type_k: int
    deriv_2k: float
    weight_W: float
    psi_value: float


def log_C_k(m_star: float, k: int) -> float:
    """
    ``ln C^k(m*)``: the Gaussian integrals of the two angular directions and
    the ``m^{2k}`` integral, evaluated in closed form
    """
    w = np.sqrt(1 - m_star * m_star)
    p = np.sqrt((1 + m_star) / 2)
    q = np.sqrt((1 - m_star) / 2)
    u = p + q
    a1, a2 = 2 * p / u, 2 * q / u
    return float(
        -(1 + np.log1p(w))
        - np.log(w)
        + 0.5 * np.log(2 * np.pi / a1)
        + 0.5 * np.log(2 * np.pi / a2)
        + np.log(2.0)
        + gammaln(1 + 1 / (2 * k))
        + gammaln(2 * k + 1) / (2 * k)
    )


def weight_W(g: Interaction, record: MaximizerRecord) -> float:
    """
    ``W = C^k(m*) / |d^{2k} psi(m*)|^{1/(2k)}``
    """
    if not (record.deriv_2k < 0 and record.type_k >= 1):
        raise ClassificationError(
            f"Maximizer at m = {record.m_star} is not classified", record.m_star
        )
    k = record.type_k
    return float(
        np.exp(log_C_k(record.m_star, k) - np.log(-record.deriv_2k) / (2 * k))
    )


def analyze_maximizers(
    g: Interaction,
    tol_value: float = 1e-9,
    tol_sep: float = 1e-6,
    zero_tol: Optional[float] = None,
    k_max: int = K_MAX,
    grid_points: int = GRID_POINTS,
) -> List[MaximizerRecord]:
    records = []
    for m in find_global_maxima(g, tol_value, tol_sep, grid_points):
        c = classify(g, m, zero_tol, k_max)
        partial = MaximizerRecord(
            m_star=c.m_star,
            type_k=c.k,
            deriv_2k=c.deriv_2k,
            weight_W=float("nan"),
            psi_value=psi(g, c.m_star),
        )
        records.append(
            MaximizerRecord(
                m_star=partial.m_star,
                type_k=partial.type_k,
                deriv_2k=partial.deriv_2k,
                weight_W=weight_W(g, partial),
                psi_value=partial.psi_value,
            )
        )
    return records


@dataclass(frozen=True)
class SignCheck:
    ok: bool
    steps: Tuple[float, ...]
    derivatives: Dict[float, Tuple[float, ...]]


def derivative_sign_check(
    g: Interaction,
    record: MaximizerRecord,
    steps: Sequence[float] = (1e-4, 1e-5),
) -> SignCheck:
    """
    Re-derive the sign pattern of a classification with fixed-step central
    differences

    Steps are relative to the distance of ``m*`` from ``±1``, where ``s``
    is singular.
    """
    k = record.type_k
    distance = 1 - abs(record.m_star)
    results: Dict[float, Tuple[float, ...]] = {}
    ok = True
    with mpmath.workdps(MP_DPS):
        x = mpmath.mpf(record.m_star)

        def f(t):
            return g.evaluate_mp(t) + _entropy_slice_mp(t)

        for step in steps:
            h = mpmath.mpf(step * distance)
            derivs = tuple(
                float(mpmath.diff(f, x, j, h=h)) for j in range(1, 2 * k + 1)
            )
            results[step] = derivs
            tol = max(1e-6, 1e-4 * abs(derivs[-1]))
            ok = ok and all(abs(d) <= tol for d in derivs[:-1]) and derivs[-1] < -tol
    return SignCheck(ok=ok, steps=tuple(steps), derivatives=results)


@dataclass(frozen=True)
class MixtureComponent:
    weight: float
    params: FieldParams
    m_star: float
    type_k: int


@dataclass
class MixtureState:
    components: List[MixtureComponent]
    maximal_type: int
    excluded: List[MaximizerRecord] = field(default_factory=list)

    @property
    def weights(self) -> List[float]:
        return [c.weight for c in self.components]


def limiting_mixture(
    g: Interaction, records: Optional[Sequence[MaximizerRecord]] = None, **kwargs
) -> MixtureState:
    """
    The limiting Gibbs state: a convex combination of grand-canonical product
    states at the maximizers of maximal type, weighted by ``W``

    Maximizers of smaller type are damped by a vanishing power of ``n`` and
    drop out.
    """
    if records is None:
        records = analyze_maximizers(g, **kwargs)
    if not records:
        raise NumericalError("No interior maximizer found")
    k_inf = max(r.type_k for r in records)
    top = [r for r in records if r.type_k == k_inf]
    total = sum(r.weight_W for r in top)
    components = [
        MixtureComponent(
            weight=r.weight_W / total,
            params=ensemble_map(ModelPoint(r.m_star, 1.0)),
            m_star=r.m_star,
            type_k=r.type_k,
        )
        for r in top
    ]
    return MixtureState(
        components=components,
        maximal_type=k_inf,
        excluded=[r for r in records if r.type_k != k_inf],
    )


def rate_function(g: Interaction, m: Any, supremum: Optional[float] = None) -> Any:
    """
    ``I^g(m) = sup psi^g - psi^g(m)`` on ``[-1, 1]`` and ``+inf`` outside
    """
    if supremum is None:
        supremum = psi_supremum(g)
    arr = np.asarray(m, dtype=float)
    inside = np.abs(arr) <= 1
    out = np.full(arr.shape, np.inf)
    if np.any(inside):
        out[inside] = np.maximum(supremum - psi(g, arr[inside]), 0.0)
    return float(out) if out.ndim == 0 else out


def curie_weiss_maximizer(beta_j: float) -> float:
    """
    Nonnegative maximizer of ``(betaJ/2) m^2 + s(m, 1)``:
    ``sqrt(1 - m*^2) = (sqrt(4/betaJ + 1) - 1)/2`` above ``betaJ = 1/2``
    """
    if beta_j <= 0.5:
        return 0.0
    w = (np.sqrt(4 / beta_j + 1) - 1) / 2
    return float(np.sqrt(1 - w * w))
