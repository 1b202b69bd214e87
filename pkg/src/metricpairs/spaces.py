"""Finite metric spaces, distinguished subsets, cross metrics, Hausdorff distances.

A metric pair is a space together with a nonempty subset; a metric tuple
carries a nested chain of subsets.  A cross metric glues two spaces along
a positive cross-distance block; when its mixed triangle inequalities hold
the assembled disjoint-union matrix is again a metric.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .scalars import DEFAULT_TOLERANCE, Scalar, all_exact


class InvalidMetricError(ValueError):
    """A matrix failed the metric axioms; carries the violation report."""

    def __init__(self, report: "MetricViolations"):
        super().__init__(f"not a metric: {report.summary()}")
        self.report = report


@dataclass(frozen=True)
class MetricViolations:
    """Every axiom failure of a candidate matrix.

    ``triangles`` lists (i, j, k) with d[i][k] > d[i][j] + d[j][k], scanned
    over i < k and every middle point j.
    """

    size: int
    asymmetric: tuple
    diagonal: tuple
    nonpositive: tuple
    triangles: tuple

    @property
    def ok(self) -> bool:
        return not (self.asymmetric or self.diagonal or self.nonpositive or self.triangles)

    def summary(self) -> str:
        parts = []
        if self.asymmetric:
            parts.append(f"{len(self.asymmetric)} asymmetric entries")
        if self.diagonal:
            parts.append(f"{len(self.diagonal)} nonzero diagonal entries")
        if self.nonpositive:
            parts.append(f"{len(self.nonpositive)} nonpositive off-diagonal entries")
        if self.triangles:
            parts.append(f"{len(self.triangles)} triangle violations")
        return "; ".join(parts) if parts else "ok"

    def as_dict(self) -> dict:
        return {
            "size": self.size,
            "asymmetric": [list(p) for p in self.asymmetric],
            "diagonal": list(self.diagonal),
            "nonpositive": [list(p) for p in self.nonpositive],
            "triangles": [list(t) for t in self.triangles],
            "ok": self.ok,
        }


def _iter_entries(matrix):
    for row in matrix:
        for v in row:
            yield v


def validate_metric(matrix: Sequence[Sequence[Scalar]], labels=None, tol=None):
    """Validate a square matrix as a finite metric.

    Returns the space when every axiom holds, otherwise a MetricViolations
    report listing each failure.  Non-square input and negative entries
    raise ValueError.
    """
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    for row in matrix:
        if len(row) != n:
            raise ValueError("matrix is not square")
    if tol is None:
        tol = 0 if all_exact(_iter_entries(matrix)) else DEFAULT_TOLERANCE
    for i in range(n):
        for j in range(n):
            if matrix[i][j] < -tol:
                raise ValueError(f"negative entry at ({i}, {j})")

    asymmetric = tuple(
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if abs(matrix[i][j] - matrix[j][i]) > tol
    )
    diagonal = tuple(i for i in range(n) if abs(matrix[i][i]) > tol)
    nonpositive = tuple(
        (i, j) for i in range(n) for j in range(n) if i != j and matrix[i][j] <= tol
    )
    triangles = []
    for i in range(n):
        for k in range(i + 1, n):
            for j in range(n):
                if j == i or j == k:
                    continue
                if matrix[i][k] > matrix[i][j] + matrix[j][k] + tol:
                    triangles.append((i, j, k))
    report = MetricViolations(n, asymmetric, diagonal, nonpositive, tuple(triangles))
    if not report.ok:
        return report
    if labels is None:
        labels = tuple(str(i) for i in range(n))
    return FiniteMetricSpace(tuple(labels), tuple(tuple(row) for row in matrix))


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Immutable labelled finite metric space."""

    labels: tuple
    dist: tuple

    @classmethod
    def from_matrix(cls, matrix, labels=None, tol=None) -> "FiniteMetricSpace":
        result = validate_metric(matrix, labels=labels, tol=tol)
        if isinstance(result, MetricViolations):
            raise InvalidMetricError(result)
        return result

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def exact(self) -> bool:
        return all_exact(_iter_entries(self.dist))

    def diameter(self, subset: Optional[Sequence[int]] = None) -> Scalar:
        idx = range(self.n) if subset is None else list(subset)
        return max(self.dist[i][j] for i in idx for j in idx)

    def min_positive(self) -> Optional[Scalar]:
        vals = [self.dist[i][j] for i in range(self.n) for j in range(self.n) if i != j]
        positive = [v for v in vals if v > 0]
        return min(positive) if positive else None

    def restrict(self, indices: Sequence[int]) -> "FiniteMetricSpace":
        idx = list(indices)
        labels = tuple(self.labels[i] for i in idx)
        dist = tuple(tuple(self.dist[i][j] for j in idx) for i in idx)
        return FiniteMetricSpace(labels, dist)


def _normalize_subset(subset, n):
    out = tuple(sorted(set(int(i) for i in subset)))
    if not out:
        raise ValueError("subset must be nonempty")
    if out[0] < 0 or out[-1] >= n:
        raise ValueError("subset index out of range")
    return out


@dataclass(frozen=True)
class MetricPair:
    """A finite metric space with a distinguished nonempty subset."""

    space: FiniteMetricSpace
    subset: tuple

    def __post_init__(self):
        object.__setattr__(self, "subset", _normalize_subset(self.subset, self.space.n))

    @property
    def subset_space(self) -> FiniteMetricSpace:
        return self.space.restrict(self.subset)

    def as_tuple(self) -> "MetricTuple":
        return MetricTuple(self.space, (self.subset,))


@dataclass(frozen=True)
class MetricTuple:
    """A finite metric space with a nested chain of nonempty subsets.

    chain[0] is the outermost subset; each following level is contained in
    the previous one.
    """

    space: FiniteMetricSpace
    chain: tuple

    def __post_init__(self):
        levels = tuple(_normalize_subset(level, self.space.n) for level in self.chain)
        if not levels:
            raise ValueError("chain must have at least one level")
        for outer, inner in zip(levels, levels[1:]):
            if not set(outer) >= set(inner):
                raise ValueError("chain levels must be nested")
        object.__setattr__(self, "chain", levels)

    @property
    def k(self) -> int:
        return len(self.chain)


def hausdorff(space: FiniteMetricSpace, s_set, t_set) -> Scalar:
    """Hausdorff distance between two nonempty subsets of one space."""
    s = _normalize_subset(s_set, space.n)
    t = _normalize_subset(t_set, space.n)
    d = space.dist
    forward = max(min(d[i][j] for j in t) for i in s)
    backward = max(min(d[i][j] for i in s) for j in t)
    return max(forward, backward)


@dataclass(frozen=True)
class CrossMetric:
    """Two factor metrics plus a cross-distance block delta[i][j].

    The mixed triangle conditions checked here generate every triangle
    inequality of the assembled disjoint union when both factors are valid.
    """

    left: FiniteMetricSpace
    right: FiniteMetricSpace
    cross: tuple

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.cross)
        if len(rows) != self.left.n or any(len(r) != self.right.n for r in rows):
            raise ValueError("cross block has wrong shape")
        object.__setattr__(self, "cross", rows)

    def check(self, tol=None, require_positive: bool = True) -> list:
        """Return a list of violation records (empty when admissible)."""
        dx, dy, c = self.left.dist, self.right.dist, self.cross
        nl, nr = self.left.n, self.right.n
        if tol is None:
            entries = list(_iter_entries(c)) + list(_iter_entries(dx)) + list(_iter_entries(dy))
            tol = 0 if all_exact(entries) else DEFAULT_TOLERANCE
        bad = []
        for i in range(nl):
            for j in range(nr):
                if c[i][j] < -tol or (require_positive and c[i][j] <= tol):
                    bad.append(("positivity", i, j))
        for i in range(nl):
            for i2 in range(nl):
                if i == i2:
                    continue
                for j in range(nr):
                    if c[i][j] > dx[i][i2] + c[i2][j] + tol:
                        bad.append(("left-cross", i, i2, j))
            for i2 in range(i + 1, nl):
                for j in range(nr):
                    if dx[i][i2] > c[i][j] + c[i2][j] + tol:
                        bad.append(("left-lower", i, i2, j))
        for j in range(nr):
            for j2 in range(nr):
                if j == j2:
                    continue
                for i in range(nl):
                    if c[i][j] > dy[j][j2] + c[i][j2] + tol:
                        bad.append(("right-cross", i, j, j2))
            for j2 in range(j + 1, nr):
                for i in range(nl):
                    if dy[j][j2] > c[i][j] + c[i][j2] + tol:
                        bad.append(("right-lower", i, j, j2))
        return bad

    def assemble(self) -> FiniteMetricSpace:
        """Full disjoint-union matrix (left block first)."""
        nl, nr = self.left.n, self.right.n
        labels = tuple(f"X:{l}" for l in self.left.labels) + tuple(
            f"Y:{l}" for l in self.right.labels
        )
        rows = []
        for i in range(nl):
            rows.append(tuple(self.left.dist[i]) + tuple(self.cross[i]))
        for j in range(nr):
            rows.append(tuple(self.cross[i][j] for i in range(nl)) + tuple(self.right.dist[j]))
        return FiniteMetricSpace(labels, tuple(rows))

    def transpose(self) -> "CrossMetric":
        flipped = tuple(
            tuple(self.cross[i][j] for i in range(self.left.n)) for j in range(self.right.n)
        )
        return CrossMetric(self.right, self.left, flipped)


def _cross_hausdorff(cross, s_left, s_right) -> Scalar:
    forward = max(min(cross[i][j] for j in s_right) for i in s_left)
    backward = max(min(cross[i][j] for i in s_left) for j in s_right)
    return max(forward, backward)


def pair_hausdorff(delta: CrossMetric, p: MetricPair, q: MetricPair) -> Scalar:
    """Sum of the two Hausdorff terms of a pair under one cross metric."""
    if delta.left.n != p.space.n or delta.right.n != q.space.n:
        raise ValueError("cross metric does not match the pair spaces")
    full = _cross_hausdorff(delta.cross, range(p.space.n), range(q.space.n))
    sub = _cross_hausdorff(delta.cross, p.subset, q.subset)
    return full + sub


def tuple_hausdorff(delta: CrossMetric, tp: MetricTuple, tq: MetricTuple) -> Scalar:
    """Sum of the k+1 Hausdorff terms of a tuple under one cross metric."""
    if tp.k != tq.k:
        raise ValueError("tuples have different chain lengths")
    if delta.left.n != tp.space.n or delta.right.n != tq.space.n:
        raise ValueError("cross metric does not match the tuple spaces")
    total = _cross_hausdorff(delta.cross, range(tp.space.n), range(tq.space.n))
    for sx, sy in zip(tp.chain, tq.chain):
        total = total + _cross_hausdorff(delta.cross, sx, sy)
    return total


@dataclass(frozen=True)
class NetResult:
    """Greedy net: chosen indices plus points only covered at the radius.

    ``members`` preserves greedy acceptance order (seed candidates first).
    ``tight`` lists points whose distance to the net equals the radius, the
    flagged case where strict density is unachievable.
    """

    members: tuple
    tight: tuple

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def greedy_net(space: FiniteMetricSpace, radius: Scalar, seed=(), tol=None) -> NetResult:
    """Greedy net: members pairwise further than radius, every point covered.

    Candidates are scanned seed-first then in index order; a candidate is
    accepted when its distance to every chosen member exceeds the radius
    (scaled by 1-tol in float mode).  Every rejected point ends up within
    the radius of some member; ties at exactly the radius are reported.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    if tol is None:
        tol = 0 if space.exact and (isinstance(radius, (int, Fraction))) else DEFAULT_TOLERANCE
    seed = list(dict.fromkeys(int(i) for i in seed))
    if seed and (min(seed) < 0 or max(seed) >= space.n):
        raise ValueError("seed index out of range")
    order = seed + [i for i in range(space.n) if i not in set(seed)]
    d = space.dist
    threshold = radius - radius * tol if tol else radius
    chosen: list = []
    for p in order:
        if all(d[p][q] > threshold for q in chosen):
            chosen.append(p)
    tight = []
    for p in range(space.n):
        nearest = min(d[p][q] for q in chosen)
        if not nearest < threshold and p not in chosen:
            tight.append(p)
    return NetResult(tuple(chosen), tuple(tight))


def covering_radius(space: FiniteMetricSpace, members, over=None) -> Scalar:
    """Largest distance from a point (of ``over``, default all) to the set."""
    pts = range(space.n) if over is None else list(over)
    return max(min(space.dist[p][q] for q in members) for p in pts)


@dataclass(frozen=True)
class ProductSpace:
    """X x Y with the max metric; flat index = i * |Y| + j."""

    space: FiniteMetricSpace
    left_size: int
    right_size: int

    def index(self, i: int, j: int) -> int:
        return i * self.right_size + j

    def unindex(self, flat: int):
        return divmod(flat, self.right_size)


def product_max_metric(left: FiniteMetricSpace, right: FiniteMetricSpace) -> ProductSpace:
    nl, nr = left.n, right.n
    labels = tuple(
        f"({left.labels[i]},{right.labels[j]})" for i in range(nl) for j in range(nr)
    )
    rows = []
    for i in range(nl):
        for j in range(nr):
            row = []
            for i2 in range(nl):
                dxi = left.dist[i][i2]
                for j2 in range(nr):
                    dyj = right.dist[j][j2]
                    row.append(dxi if dxi >= dyj else dyj)
            rows.append(tuple(row))
    return ProductSpace(FiniteMetricSpace(labels, tuple(rows)), nl, nr)
