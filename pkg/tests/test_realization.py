from __future__ import annotations

import math

import numpy as np
import pytest

from metricpairs.realization import (
    EmbeddedComplex,
    Interval,
    carrier_samples,
    filtration_distance,
    level_complex,
    point_segment_distance,
    point_triangle_distance,
    realization_hausdorff,
)


def _segment(y):
    return EmbeddedComplex([[0.0, y], [1.0, y]], [(0, 1)])


def test_interval_basics():
    iv = Interval(0.25, 0.75)
    assert iv.width == 0.5
    assert iv.contains(0.5)
    assert not iv.contains(1.0)
    assert iv.overlaps(Interval(0.5, 2.0))
    assert not iv.overlaps(Interval(0.8, 0.9))
    with pytest.raises(ValueError):
        Interval(1.0, 0.0)


def test_embedded_complex_validation():
    with pytest.raises(ValueError):
        EmbeddedComplex([[0.0, 0.0]], [])
    with pytest.raises(ValueError):
        EmbeddedComplex([[0.0, 0.0]], [(0, 0)])
    with pytest.raises(ValueError):
        EmbeddedComplex([[0.0, 0.0]], [(0, 1)])
    with pytest.raises(ValueError):
        EmbeddedComplex([[0.0, 0.0], [1.0, 0.0]], [(0, 1)], depths=[0, 1])


def test_point_segment_distance_values():
    pts = [[0.5, 1.0], [2.0, 0.0], [-1.0, 0.0], [0.25, 0.0]]
    d = point_segment_distance(pts, [0.0, 0.0], [1.0, 0.0])
    assert np.allclose(d, [1.0, 1.0, 1.0, 0.0])
    # Degenerate segment collapses to a point.
    d = point_segment_distance([[3.0, 4.0]], [0.0, 0.0], [0.0, 0.0])
    assert np.allclose(d, [5.0])


def test_point_triangle_distance_regions():
    a, b, c = [0.0, 0.0], [1.0, 0.0], [0.0, 1.0]
    pts = [
        [0.25, 0.25],    # inside: 0
        [-1.0, -1.0],    # vertex a region: sqrt(2)
        [2.0, 0.0],      # vertex b region: 1
        [0.5, -1.0],     # edge ab region: 1
        [1.0, 1.0],      # edge bc region: sqrt(2)/2
        [0.25, 0.25 - 1e-12],  # numerically on the face
    ]
    d = point_triangle_distance(pts, a, b, c)
    expected = [0.0, math.sqrt(2), 1.0, 1.0, math.sqrt(2) / 2, 0.0]
    assert np.allclose(d, expected, atol=1e-9)


def test_point_triangle_distance_above_plane():
    a, b, c = [0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]
    d = point_triangle_distance([[0.2, 0.2, 2.0]], a, b, c)
    assert np.allclose(d, [2.0])


def test_carrier_samples_nested_refinement():
    seg = _segment(0.0)
    coarse = carrier_samples(seg, 0.25)
    fine = carrier_samples(seg, 0.125)
    coarse_set = {tuple(np.round(p, 12)) for p in coarse}
    fine_set = {tuple(np.round(p, 12)) for p in fine}
    assert coarse_set <= fine_set
    assert len(coarse) == 5
    assert len(fine) == 9
    with pytest.raises(ValueError):
        carrier_samples(seg, 0.0)


def test_realization_hausdorff_parallel_segments():
    """Frozen probe: unit segments at height 0 and 1/2 are exactly 1/2
    apart; every interval contains 1/2 and refinement tightens it."""
    a = _segment(0.0)
    b = _segment(0.5)
    coarse = realization_hausdorff(a, b, 0.25)
    fine = realization_hausdorff(a, b, 0.0625)
    assert coarse.lower == 0.5
    assert coarse.upper == 0.75
    assert fine.lower == 0.5
    assert fine.upper == 0.5625
    assert coarse.contains(0.5) and fine.contains(0.5)
    assert fine.upper <= coarse.upper
    assert fine.lower >= coarse.lower


def test_realization_hausdorff_triangle_in_triangle():
    """A triangle against its own boundary edges: Hausdorff distance is
    the inradius distance from the incenter... bounded above by the interval."""
    tri = EmbeddedComplex([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]], [(0, 1, 2)])
    boundary = EmbeddedComplex(
        [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]], [(0, 1), (1, 2), (0, 2)]
    )
    iv = realization_hausdorff(tri, boundary, 0.03125)
    r_in = (2 - math.sqrt(2)) / 2  # inradius of the right isoceles triangle
    assert iv.contains(r_in)
    assert iv.width == 0.03125


def test_level_complex_filters_by_depth():
    cx = EmbeddedComplex(
        [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
        [(0,), (0, 1), (0, 1, 2)],
        depths=[2, 1, 0],
    )
    assert cx.max_depth == 2
    top = level_complex(cx, 2)
    assert top.simplices == ((0,),)
    mid = level_complex(cx, 1)
    assert mid.simplices == ((0,), (0, 1))
    with pytest.raises(ValueError):
        level_complex(cx, 3)


def test_filtration_distance_sums_levels():
    a = EmbeddedComplex(
        [[0.0, 0.0], [1.0, 0.0]], [(0, 1), (0,)], depths=[0, 1]
    )
    b = EmbeddedComplex(
        [[0.0, 0.25], [1.0, 0.25]], [(0, 1), (0,)], depths=[0, 1]
    )
    per_level, total = filtration_distance(a, b, 0.125)
    assert len(per_level) == 2
    assert per_level[0].lower == 0.25
    assert per_level[1].lower == 0.25
    assert total.lower == sum(iv.lower for iv in per_level)
    assert total.upper == sum(iv.upper for iv in per_level)

    c = EmbeddedComplex([[0.0, 0.0], [1.0, 0.0]], [(0, 1)])
    with pytest.raises(ValueError):
        filtration_distance(a, c, 0.125)
