"""Computable bounds around the exact pair distance.

Lower bounds come from diameter gaps and from half the minimal distortion;
upper bounds from gluing a low-distortion correspondence or from matched
nets.  ``sandwich_report`` evaluates the full chain on one instance.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .correspondences import (
    MinDistortionResult,
    PairCorrespondence,
    SearchBudget,
    classical_glue,
    min_distortion,
)
from .oracle import GHResult, exact_pair_gh
from .scalars import Scalar, half
from .spaces import MetricPair, pair_hausdorff


def diameter_lower_bound(left: MetricPair, right: MetricPair) -> Scalar:
    """Half the diameter gap, taken over the full spaces and the subsets."""
    full = left.space.diameter() - right.space.diameter()
    if full < 0:
        full = -full
    sub = left.space.diameter(left.subset) - right.space.diameter(right.subset)
    if sub < 0:
        sub = -sub
    return max(half(full), half(sub))


@dataclass(frozen=True)
class UpperBoundReport:
    """A correspondence-based upper bound with its gluing certificate."""

    relation: PairCorrespondence
    sup_full: Scalar
    eta: Scalar
    hausdorff_sum: Scalar
    optimal_relation: bool


def correspondence_upper_bound(
    left: MetricPair, right: MetricPair, budget: Optional[SearchBudget] = None
) -> UpperBoundReport:
    """Glue the relation minimizing the full sup; its Hausdorff sum bounds
    the exact value from above."""
    res = min_distortion(left, right, budget=budget, objective="sup_full")
    glue = classical_glue(res.correspondence)
    total = pair_hausdorff(glue.cross, left, right)
    return UpperBoundReport(
        res.correspondence, res.breakdown.sup_full, glue.eta, total, res.optimal
    )


@dataclass(frozen=True)
class BoundsInterval:
    lower: Scalar
    upper: Scalar
    lower_source: str
    upper_source: str
    diameter_bound: Scalar
    half_distortion: Optional[Scalar]
    upper_report: UpperBoundReport

    def contains(self, value: Scalar) -> bool:
        return self.lower <= value <= self.upper


def gh_bounds(
    left: MetricPair, right: MetricPair, budget: Optional[SearchBudget] = None
) -> BoundsInterval:
    """Best available certified interval without running the exact search.

    Half the minimal distortion only counts as a lower bound when the
    distortion search was exhaustive.
    """
    diam = diameter_lower_bound(left, right)
    dis_res = min_distortion(left, right, budget=budget, objective="distortion")
    half_dis: Optional[Scalar] = None
    lower, lower_source = diam, "diameter"
    if dis_res.optimal:
        half_dis = half(dis_res.breakdown.value)
        if half_dis > lower:
            lower, lower_source = half_dis, "distortion"
    report = correspondence_upper_bound(left, right, budget=budget)
    return BoundsInterval(
        lower, report.hausdorff_sum, lower_source, "glued-correspondence",
        diam, half_dis, report,
    )


# ---------------------------------------------------------------------------
# matched nets


@dataclass(frozen=True)
class NetBoundReport:
    ok: bool
    bound: Optional[Scalar]
    epsilon: Scalar
    failure: Optional[tuple]


def _density_gap(space, points, candidates, eps):
    """First point of ``points`` not strictly within eps of ``candidates``."""
    for p in points:
        if all(space.dist[p][c] >= eps for c in candidates):
            return p
    return None


def matched_net_bound(
    left: MetricPair,
    right: MetricPair,
    eps: Scalar,
    left_points,
    right_points,
) -> NetBoundReport:
    """Upper bound 4*eps from matched nets with small pairwise mismatch.

    Both point lists must be strictly eps-dense (their subset members
    strictly eps-dense in the subsets); lacking density is a usage error
    and raises.  A membership disagreement or a pairwise mismatch of at
    least eps is a mathematical failure and is reported, not raised.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    lp = [int(p) for p in left_points]
    rp = [int(q) for q in right_points]
    if len(lp) != len(rp):
        raise ValueError("matched point lists must have equal length")
    if not lp:
        raise ValueError("matched point lists must be nonempty")
    a_set, b_set = set(left.subset), set(right.subset)
    la = [p for p in lp if p in a_set]
    rb = [q for q in rp if q in b_set]
    for space, pts, sub_pts, subset, side in (
        (left.space, lp, la, left.subset, "left"),
        (right.space, rp, rb, right.subset, "right"),
    ):
        gap = _density_gap(space, range(space.n), pts, eps)
        if gap is not None:
            raise ValueError(f"{side} net is not strictly eps-dense: point {gap}")
        if sub_pts:
            gap = _density_gap(space, subset, sub_pts, eps)
        else:
            gap = subset[0]
        if gap is not None:
            raise ValueError(
                f"{side} net is not strictly eps-dense inside the subset: point {gap}"
            )
    for i, (p, q) in enumerate(zip(lp, rp)):
        if (p in a_set) != (q in b_set):
            return NetBoundReport(False, None, eps, ("membership", i))
    dx, dy = left.space.dist, right.space.dist
    for i in range(len(lp)):
        for j in range(i + 1, len(lp)):
            diff = dx[lp[i]][lp[j]] - dy[rp[i]][rp[j]]
            if diff < 0:
                diff = -diff
            if diff >= eps:
                return NetBoundReport(False, None, eps, ("mismatch", i, j))
    return NetBoundReport(True, 4 * eps, eps, None)


# ---------------------------------------------------------------------------
# the two-sided distortion sandwich


@dataclass(frozen=True)
class SandwichReport:
    half_min_distortion: Scalar
    exact_value: Scalar
    min_sup_full: Scalar
    lower_ok: bool
    upper_ok: bool
    exact: GHResult
    distortion_result: MinDistortionResult
    sup_result: MinDistortionResult


def sandwich_report(
    left: MetricPair,
    right: MetricPair,
    budget: Optional[SearchBudget] = None,
    search_budget: int = 10**6,
) -> SandwichReport:
    """Certify half-min-distortion <= exact value <= min full sup.

    Both distortion searches must be exhaustive for the flags to mean
    anything, so oversized instances raise rather than degrade.
    """
    dis_res = min_distortion(left, right, budget=budget, objective="distortion")
    sup_res = min_distortion(left, right, budget=budget, objective="sup_full")
    if not (dis_res.optimal and sup_res.optimal):
        raise ValueError("instance too large for an exhaustive distortion search")
    exact = exact_pair_gh(left, right, budget=search_budget)
    lo = half(dis_res.breakdown.value)
    hi = sup_res.breakdown.sup_full
    return SandwichReport(
        lo,
        exact.value,
        hi,
        lo <= exact.value,
        exact.value <= hi,
        exact,
        dis_res,
        sup_res,
    )
