from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .partition import entropy_interior
from .types import ModelPoint

Lattice = Sequence[Sequence[Optional[ModelPoint]]]

# lattice steps whose endpoints form the checked pairs
_NEIGHBOR_STEPS = [(0, 1), (1, 0), (1, 1), (1, -1)]


@dataclass
class ConcavityViolation:
    p: ModelPoint
    q: ModelPoint
    deficit: float


@dataclass
class ConcavityReport:
    n: int
    pairs_checked: int = 0
    violations: List[ConcavityViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def lattice(
    m_range: Tuple[float, float],
    rho_range: Tuple[float, float],
    size: Tuple[int, int] = (21, 21),
) -> List[List[Optional[ModelPoint]]]:
    """
    Regular lattice over a rectangle of the (m, rho) plane

    Nodes outside the interior ``|m| < rho`` are left as ``None``.
    """
    rows = []
    for rho in np.linspace(rho_range[0], rho_range[1], size[1]):
        row: List[Optional[ModelPoint]] = []
        for m in np.linspace(m_range[0], m_range[1], size[0]):
            row.append(ModelPoint(float(m), float(rho)) if abs(m) < rho else None)
        rows.append(row)
    return rows


def check_concavity_grid(n: int, grid: Lattice, tol: float = 1e-9) -> ConcavityReport:
    """
    Midpoint concavity of ``s_n`` over all neighboring lattice pairs

    :param int n: system size
    :param grid: rows of lattice nodes; ``None`` marks a node to skip
    :param float tol: allowed deficit ``(s_n(p) + s_n(q))/2 - s_n((p+q)/2)``
    :returns: every pair violating midpoint concavity by more than ``tol``
    """
    pairs: List[Tuple[ModelPoint, ModelPoint]] = []
    for i, row in enumerate(grid):
        for j, p in enumerate(row):
            if p is None or not p.is_interior:
                continue
            for di, dj in _NEIGHBOR_STEPS:
                ii, jj = i + di, j + dj
                if not (0 <= ii < len(grid) and 0 <= jj < len(grid[ii])):
                    continue
                q = grid[ii][jj]
                if q is not None and q.is_interior:
                    pairs.append((p, q))

    report = ConcavityReport(n=n, pairs_checked=len(pairs))
    if not pairs:
        return report

    pm = np.array([[p.m, q.m] for p, q in pairs])
    prho = np.array([[p.rho, q.rho] for p, q in pairs])
    ends = entropy_interior(n, pm, prho)
    mid = entropy_interior(n, pm.mean(axis=1), prho.mean(axis=1))
    deficit = ends.mean(axis=1) - mid
    for (p, q), d in zip(pairs, deficit):
        if d > tol:
            report.violations.append(ConcavityViolation(p, q, float(d)))
    return report
