"""Tour of the base layer: validation, Hausdorff distances, cross
metrics, and greedy nets.

Run with: python3 demos/validate_and_measure.py
"""

from fractions import Fraction

from metricpairs import (
    CrossMetric,
    FiniteMetricSpace,
    MetricPair,
    covering_radius,
    greedy_net,
    hausdorff,
    validate_metric,
)


def main():
    print("== validating distance matrices ==")
    good = [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
    space = validate_metric(good, labels=("a", "b", "c"))
    print("a 3-point path metric validates:", isinstance(space, FiniteMetricSpace))

    bad = [[0, 1, 3], [1, 0, 1], [3, 1, 0]]
    report = validate_metric(bad)
    print("d(a,c) = 3 > 1 + 1 breaks the triangle inequality:")
    for key, entries in report.as_dict().items():
        if entries:
            print("  ", key, entries)

    print()
    print("== Hausdorff distance between subsets ==")
    print("endpoints {a} vs {c} of the path:", hausdorff(space, (0,), (2,)))
    print("prefix {a,b} vs suffix {b,c}:   ", hausdorff(space, (0, 1), (1, 2)))

    print()
    print("== cross metrics on a disjoint union ==")
    left = validate_metric([[0, 2], [2, 0]])
    right = validate_metric([[0]])
    cross = CrossMetric(left, right, ((Fraction(1),), (Fraction(1),)))
    print("midpoint gluing of a 2-point space and a point:")
    print("  violations:", cross.check())
    union = cross.assemble()
    print("  assembled union is a", union.n, "point metric space")

    shallow = CrossMetric(left, right, ((Fraction(1, 2),), (Fraction(1, 2),)))
    print("pushing both cross values down to 1/2:")
    print("  violations:", shallow.check())

    print()
    print("== greedy nets on a 12-point circle ==")
    from metricpairs import circle_space

    circle = circle_space(12)
    net = greedy_net(circle, 2)
    print("radius-2 net members:", net.members)
    print("points exactly at the radius:", net.tight)
    print("covering radius of the net:", covering_radius(circle, net.members))
    pair = MetricPair(circle, tuple(range(4)))
    sub_net = greedy_net(pair.subset_space, 1)
    print("net inside the 4-point arc subset:", sub_net.members)


if __name__ == "__main__":
    main()
