"""Application-side constructions: hypernetworks, the variant sandwich,
rational densification, and the exhaustive small-instance family.

Run with: python3 demos/applications_tour.py
"""

from fractions import Fraction

from metricpairs import (
    FiniteMetricSpace,
    MetricPair,
    PairCorrespondence,
    enumerate_family,
    exact_pair_gh,
    family_iso_classes,
    hypernet_distortion,
    hypernet_space,
    rational_densify,
    rational_densify_pair,
    variant_sandwich,
)
from metricpairs.scalars import format_scalar


def main():
    print("== a metric pair viewed as a hypernetwork ==")
    two = MetricPair(FiniteMetricSpace.from_matrix([[0, 2], [2, 0]]), (0,))
    net = hypernet_space(two)
    print("nodes:", net.space.labels)
    print("averaged weights:", [[format_scalar(v) for v in row] for row in net.space.dist])

    corr = PairCorrespondence(
        two, MetricPair(FiniteMetricSpace.from_matrix([[0]]), (0,)), ((0, 0), (1, 0))
    )
    rep = hypernet_distortion(corr)
    print(
        "induced relation distortion {} never exceeds pair distortion {}: {}".format(
            format_scalar(rep.net_distortion),
            format_scalar(rep.pair_distortion),
            rep.holds,
        )
    )

    print()
    print("== max and sum variants, factor 2 attained ==")
    sandwich = variant_sandwich(two, corr.right)
    print(
        "max {} <= sum {} <= 2*max, ratio {}".format(
            format_scalar(sandwich.max_value),
            format_scalar(sandwich.sum_value),
            format_scalar(sandwich.ratio),
        )
    )

    print()
    print("== rounding distances onto a 1/q grid ==")
    third = FiniteMetricSpace.from_matrix(
        [[0, Fraction(1, 3)], [Fraction(1, 3), 0]]
    )
    res = rational_densify(third, 5)
    print("1/3 rounds up to:", format_scalar(res.space.dist[0][1]))
    print("certified increase bound:", format_scalar(res.bound), "<= 4/q")
    pair = MetricPair(third, (0,))
    dense, bound = rational_densify_pair(pair, 5)
    value = exact_pair_gh(pair, dense).value
    print(
        "exact distance to the densified pair {} <= certificate {}".format(
            format_scalar(value), format_scalar(bound)
        )
    )

    print()
    print("== the exhaustive small-instance family ==")
    family = enumerate_family()
    classes = family_iso_classes(family)
    print("pairs with at most 3 points and distances in {1,2,3}:", len(family))
    print("isomorphism classes:", len(classes))
    a, b = family[0], family[-1]
    print(
        "first versus last member, exact distance:",
        format_scalar(exact_pair_gh(a, b).value),
    )


if __name__ == "__main__":
    main()
