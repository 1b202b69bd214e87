"""Straight-line interpolation along a correspondence.

The carrier of the interpolant at time t is the relation itself, with the
convex combination (1-t) dX + t dY as its metric and the restricted cells
as its subset.  The diagonal identification between two interpolants
scales distortion linearly in |t - s|, which is what the audit checks
against the exact oracle.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .correspondences import (
    DistortionBreakdown,
    PairCorrespondence,
    validate_correspondence,
)
from .oracle import DEFAULT_BUDGET, exact_pair_gh
from .scalars import Scalar, half, is_exact
from .spaces import FiniteMetricSpace, MetricPair


def _require_valid(corr: PairCorrespondence) -> None:
    checked = validate_correspondence(corr.pairs, corr.left, corr.right)
    if not isinstance(checked, PairCorrespondence):
        raise ValueError("correspondence does not cover the pair contexts")


def _cell_matrix(corr: PairCorrespondence, t: Scalar):
    """Convex-combination distances between relation cells at time t."""
    dx = corr.left.space.dist
    dy = corr.right.space.dist
    s = 1 - t
    cells = corr.pairs
    return [
        [
            s * dx[x][x2] + t * dy[y][y2]
            for x2, y2 in cells
        ]
        for x, y in cells
    ]


def interpolate(corr: PairCorrespondence, t: Scalar) -> MetricPair:
    """Pair at time t along the straight-line path; endpoints come back
    as the original pairs."""
    _require_valid(corr)
    if t < 0 or t > 1:
        raise ValueError("t must lie in [0, 1]")
    if t == 0:
        return corr.left
    if t == 1:
        return corr.right
    labels = tuple(
        f"({corr.left.space.labels[x]},{corr.right.space.labels[y]})"
        for x, y in corr.pairs
    )
    space = FiniteMetricSpace.from_matrix(_cell_matrix(corr, t), labels)
    restricted = set(corr.restricted())
    subset = tuple(i for i, cell in enumerate(corr.pairs) if cell in restricted)
    return MetricPair(space, subset)


def _sup_between(ma, mb, indices) -> Scalar:
    best: Scalar = 0
    for s, i in enumerate(indices):
        for j in indices[s + 1 :]:
            diff = ma[i][j] - mb[i][j]
            if diff < 0:
                diff = -diff
            if diff > best:
                best = diff
    return best


def _breakdown_between(corr, ma, mb) -> DistortionBreakdown:
    every = tuple(range(len(corr.pairs)))
    restricted = set(corr.restricted())
    sub = tuple(i for i, cell in enumerate(corr.pairs) if cell in restricted)
    s_full = _sup_between(ma, mb, every)
    s_sub = _sup_between(ma, mb, sub)
    total = s_full + s_sub
    value = half(total)
    return DistortionBreakdown(s_full, (s_sub,), value)


def diagonal_distortion(corr: PairCorrespondence, s: Scalar, t: Scalar) -> DistortionBreakdown:
    """Distortion of the cell-by-cell identification of two interpolants.

    Equals |t - s| times the distortion of the correspondence itself; the
    computation here goes through the actual cell matrices.
    """
    _require_valid(corr)
    for v in (s, t):
        if v < 0 or v > 1:
            raise ValueError("times must lie in [0, 1]")
    return _breakdown_between(corr, _cell_matrix(corr, s), _cell_matrix(corr, t))


def endpoint_distortion(corr: PairCorrespondence, t: Scalar, side: str = "left") -> DistortionBreakdown:
    """Distortion of the natural identification with one endpoint.

    Matching cells to their coordinate in the chosen endpoint scales the
    correspondence distortion by t (left side) or 1 - t (right side).
    """
    _require_valid(corr)
    if t < 0 or t > 1:
        raise ValueError("t must lie in [0, 1]")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    mt = _cell_matrix(corr, t)
    if side == "left":
        other = _cell_matrix(corr, 0)
    else:
        other = _cell_matrix(corr, 1)
    return _breakdown_between(corr, other, mt)


DEFAULT_GRID = (
    Fraction(0),
    Fraction(1, 4),
    Fraction(1, 2),
    Fraction(3, 4),
    Fraction(1),
)


@dataclass(frozen=True)
class AuditRow:
    s: Scalar
    t: Scalar
    value: Scalar
    expected: Scalar
    matches: bool


@dataclass(frozen=True)
class GeodesicityAudit:
    endpoint_value: Scalar
    rows: tuple

    @property
    def all_match(self) -> bool:
        return all(row.matches for row in self.rows)


def _close(a: Scalar, b: Scalar) -> bool:
    if is_exact(a) and is_exact(b):
        return a == b
    return abs(a - b) <= 1e-9


def geodesicity_audit(
    corr: PairCorrespondence,
    grid: Optional[Sequence[Scalar]] = None,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> GeodesicityAudit:
    """Compare exact distances between interpolants with linear scaling.

    For every ordered grid pair s < t the exact pair distance between the
    interpolants is computed and set against |t - s| times the endpoint
    distance.  Mismatches are reported, not raised: the path is geodesic
    for optimal correspondences, not for arbitrary ones.
    """
    _require_valid(corr)
    if grid is None:
        grid = DEFAULT_GRID
    times = list(grid)
    for v in times:
        if v < 0 or v > 1:
            raise ValueError("grid times must lie in [0, 1]")
    endpoint = exact_pair_gh(corr.left, corr.right, budget=budget).value
    samples = {t: interpolate(corr, t) for t in times}
    tasks = [(s, t) for i, s in enumerate(times) for t in times[i + 1 :]]

    def measure(st):
        s, t = st
        value = exact_pair_gh(samples[s], samples[t], budget=budget).value
        expected = (t - s) * endpoint
        return AuditRow(s, t, value, expected, _close(value, expected))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = tuple(pool.map(measure, tasks))
    else:
        rows = tuple(measure(st) for st in tasks)
    return GeodesicityAudit(endpoint, rows)
