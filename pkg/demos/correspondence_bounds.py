"""Correspondences, distortion, gluing constructions, and two-sided
bounds that avoid the exhaustive oracle.

Run with: python3 demos/correspondence_bounds.py
"""

from fractions import Fraction

from metricpairs import (
    FiniteMetricSpace,
    MetricPair,
    PairCorrespondence,
    classical_glue,
    distortion,
    gh_bounds,
    matched_net_bound,
    min_distortion,
    pair_hausdorff,
    sandwich_report,
    tight_glue,
)
from metricpairs.scalars import format_scalar


def main():
    big = MetricPair(FiniteMetricSpace.from_matrix([[0, 2], [2, 0]]), (0,))
    point = MetricPair(FiniteMetricSpace.from_matrix([[0]]), (0,))

    print("== distortion of a correspondence ==")
    corr = PairCorrespondence(big, point, ((0, 0), (1, 0)))
    br = distortion(corr)
    print("full sup:", format_scalar(br.sup_full))
    print("restricted sups:", [format_scalar(v) for v in br.sup_levels])
    print("averaged value:", format_scalar(br.value))

    print()
    print("== searching for the optimal correspondence ==")
    best = min_distortion(big, point, objective="distortion")
    print("minimal averaged distortion:", format_scalar(best.breakdown.value))
    print("search was exhaustive:", best.optimal)
    sup = min_distortion(big, point, objective="sup_full")
    print("minimal classical sup:", format_scalar(sup.breakdown.sup_full))

    print()
    print("== the certified sandwich around the exact value ==")
    rep = sandwich_report(big, point)
    print(
        "half-min-distortion {} <= exact {} <= min-sup {}".format(
            format_scalar(rep.half_min_distortion),
            format_scalar(rep.exact_value),
            format_scalar(rep.min_sup_full),
        )
    )
    print("both slots certified:", rep.lower_ok and rep.upper_ok)
    print("note the strict gap on the left: the lower slot is an estimate,")
    print("not an equality, and this instance is the documented witness.")

    print()
    print("== classical gluing certifies the upper slot ==")
    glue = classical_glue(sup.correspondence, eta=Fraction(1))
    total = pair_hausdorff(glue.cross, big, point)
    print("glued Hausdorff sum:", format_scalar(total), "<= 2*eta =", format_scalar(2 * glue.eta))

    print()
    print("== the tight gluing can fail, and says so ==")
    one = MetricPair(FiniteMetricSpace.from_matrix([[0, 1], [1, 0]]), (0, 1))
    full = PairCorrespondence(one, one, ((0, 0), (0, 1), (1, 0), (1, 1)))
    attempt = tight_glue(full, Fraction(1, 2))
    print("valid:", attempt.valid)
    print("violations:", attempt.violations[:2], "...")

    print()
    print("== interval bounds without the oracle ==")
    interval = gh_bounds(big, point)
    print(
        "[{}, {}] from {} / {}".format(
            format_scalar(interval.lower),
            format_scalar(interval.upper),
            interval.lower_source,
            interval.upper_source,
        )
    )

    print()
    print("== matched nets give a 4*eps upper bound ==")
    from metricpairs import circle_space

    circle = circle_space(8)
    pair = MetricPair(circle, tuple(range(3)))
    same = MetricPair(circle_space(8), tuple(range(3)))
    net = tuple(range(8))
    bound = matched_net_bound(pair, same, Fraction(3, 2), net, net)
    print("self-matched full net:", "bound", format_scalar(bound.bound))


if __name__ == "__main__":
    main()
