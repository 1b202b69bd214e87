from __future__ import annotations

import random
from fractions import Fraction

import pytest

from metricpairs.correspondences import (
    CorrespondenceViolations,
    PairCorrespondence,
    SearchBudget,
    TupleCorrespondence,
    brute_force_min_distortion,
    classical_glue,
    default_glue_shift,
    distortion,
    distortion_stability,
    min_distortion,
    tight_glue,
    validate_correspondence,
    validate_tuple_correspondence,
)
from metricpairs.generators import random_correspondence, random_pair, random_space
from metricpairs.spaces import (
    FiniteMetricSpace,
    MetricPair,
    MetricTuple,
    pair_hausdorff,
)


def _two_point(d=1):
    return FiniteMetricSpace.from_matrix([[0, d], [d, 0]])


def _pair(space, subset):
    return MetricPair(space, subset)


def test_pair_correspondence_normalizes_and_restricts():
    pair = _pair(_two_point(), (0, 1))
    corr = PairCorrespondence(pair, pair, ((1, 1), (0, 0), (0, 0)))
    assert corr.pairs == ((0, 0), (1, 1))
    assert corr.restricted() == ((0, 0), (1, 1))

    narrow = _pair(_two_point(), (0,))
    corr = PairCorrespondence(narrow, narrow, ((0, 0), (1, 1)))
    assert corr.restricted() == ((0, 0),)


def test_pair_correspondence_rejects_bad_pairs():
    pair = _pair(_two_point(), (0,))
    with pytest.raises(ValueError):
        PairCorrespondence(pair, pair, ())
    with pytest.raises(ValueError):
        PairCorrespondence(pair, pair, ((0, 5),))


def test_validate_correspondence_reports_uncovered():
    pair = _pair(_two_point(), (0, 1))
    report = validate_correspondence(((0, 0),), pair, pair)
    assert isinstance(report, CorrespondenceViolations)
    assert report.uncovered_left == (1,)
    assert report.uncovered_right == (1,)
    assert not report.ok
    assert report.as_dict()["uncovered_left"] == [1]

    good = validate_correspondence(((0, 0), (1, 1)), pair, pair)
    assert isinstance(good, PairCorrespondence)


def test_validate_correspondence_subset_coverage():
    """A relation can cover both spaces yet miss the subset levels: the
    subset points must be related to subset points, not just to anything."""
    space = _two_point()
    left = _pair(space, (0,))
    right = _pair(space, (1,))
    report = validate_correspondence(((0, 0), (1, 1)), left, right)
    assert isinstance(report, CorrespondenceViolations)
    assert report.uncovered_subset_left == (0,)
    assert report.uncovered_subset_right == (1,)

    good = validate_correspondence(((0, 1), (1, 0)), left, right)
    assert isinstance(good, PairCorrespondence)


def test_validate_tuple_correspondence_levels():
    space = _two_point()
    tup = MetricTuple(space, ((0, 1), (0,)))
    report = validate_tuple_correspondence(((0, 1), (1, 0)), tup, tup)
    assert isinstance(report, CorrespondenceViolations)
    assert (1, 0) in report.uncovered_subset_left
    good = validate_tuple_correspondence(((0, 0), (1, 1)), tup, tup)
    assert isinstance(good, TupleCorrespondence)
    assert good.restricted(1) == ((0, 0),)


def test_distortion_identity_is_zero():
    pair = _pair(_two_point(), (0,))
    corr = PairCorrespondence(pair, pair, ((0, 0), (1, 1)))
    br = distortion(corr)
    assert br.sup_full == 0
    assert br.sup_levels == (0,)
    assert br.value == 0


def test_distortion_known_value():
    """Collapsing a two-point space of diameter 2 to one point distorts the
    full level by 2 and the singleton subsets by 0, averaging to 1."""
    big = _pair(_two_point(2), (0,))
    small = _pair(FiniteMetricSpace.from_matrix([[0]]), (0,))
    corr = PairCorrespondence(big, small, ((0, 0), (1, 0)))
    br = distortion(corr)
    assert br.sup_full == 2
    assert br.sup_levels == (0,)
    assert br.value == 1


def test_distortion_tuple_averages_all_levels():
    space = _two_point(2)
    tup = MetricTuple(space, ((0, 1), (0, 1)))
    corr = TupleCorrespondence(tup, tup, ((0, 0), (0, 1), (1, 0), (1, 1)))
    br = distortion(corr)
    assert br.sup_full == 2
    assert br.sup_levels == (2, 2)
    assert br.value == 2


def test_min_distortion_exhaustive_matches_brute_force():
    rng = random.Random(31)
    for _ in range(25):
        left = random_pair(rng, n_range=(2, 3))
        right = random_pair(rng, n_range=(2, 3))
        for objective in ("distortion", "sup_full"):
            fast = min_distortion(left, right, objective=objective)
            slow = brute_force_min_distortion(left, right, objective=objective)
            assert fast.optimal
            if objective == "distortion":
                assert fast.breakdown.value == slow.breakdown.value
            else:
                assert fast.breakdown.sup_full == slow.breakdown.sup_full


def test_min_distortion_heuristic_flags_nonoptimal():
    rng = random.Random(32)
    left = random_pair(rng, n_range=(3, 3))
    right = random_pair(rng, n_range=(3, 3))
    result = min_distortion(left, right, budget=SearchBudget(exhaustive_cells=4))
    assert not result.optimal
    # The heuristic still returns a valid correspondence with a value no
    # better than the true optimum.
    true = brute_force_min_distortion(left, right)
    assert result.breakdown.value >= true.breakdown.value


def test_min_distortion_identity_reaches_zero():
    rng = random.Random(33)
    for _ in range(10):
        pair = random_pair(rng, n_range=(2, 3))
        result = min_distortion(pair, pair)
        assert result.breakdown.value == 0


def test_min_distortion_rejects_unknown_objective():
    pair = _pair(_two_point(), (0,))
    with pytest.raises(ValueError):
        min_distortion(pair, pair, objective="nope")


def test_tight_glue_reports_invalid_cross_metric():
    """On the self-pair of a diameter-1 doubleton with the full relation
    and r = 1/2 the min-through term vanishes everywhere, so delta is 1/4
    at every cell and d(0,1) = 1 > 1/4 + 1/4 breaks the lower mixed
    triangle inequality."""
    pair = _pair(_two_point(), (0, 1))
    corr = PairCorrespondence(pair, pair, ((0, 0), (0, 1), (1, 0), (1, 1)))
    report = tight_glue(corr, Fraction(1, 2))
    assert report.cross.cross[0][0] == Fraction(1, 4)
    assert report.cross.cross[0][1] == Fraction(1, 4)
    assert not report.valid
    assert any(v[0] in ("left-lower", "right-lower") for v in report.violations)
    assert report.pair_sum is None


def test_tight_glue_identity_relation_is_valid():
    pair = _pair(_two_point(), (0, 1))
    corr = PairCorrespondence(pair, pair, ((0, 0), (1, 1)))
    report = tight_glue(corr, Fraction(1, 2))
    assert report.valid
    assert report.pair_sum == Fraction(1, 2)


def test_tight_glue_valid_case_bounds_pair_sum():
    big = _pair(_two_point(2), (0,))
    small = _pair(FiniteMetricSpace.from_matrix([[0]]), (0,))
    corr = PairCorrespondence(big, small, ((0, 0), (1, 0)))
    report = tight_glue(corr, 2)
    assert report.valid
    assert report.pair_sum == pair_hausdorff(report.cross, big, small)


def test_tight_glue_rejects_nonpositive_r():
    pair = _pair(_two_point(), (0,))
    corr = PairCorrespondence(pair, pair, ((0, 0), (1, 1)))
    with pytest.raises(ValueError):
        tight_glue(corr, 0)


def test_classical_glue_is_always_admissible():
    rng = random.Random(34)
    for _ in range(30):
        left = random_pair(rng, n_range=(2, 4))
        right = random_pair(rng, n_range=(2, 4))
        corr = random_correspondence(rng, left, right)
        glue = classical_glue(corr)
        assert glue.cross.check() == []
        total = pair_hausdorff(glue.cross, left, right)
        # Each Hausdorff term is at most 2 eta.
        assert total <= 4 * glue.eta


def test_classical_glue_eta_constraints():
    big = _pair(_two_point(2), (0,))
    small = _pair(FiniteMetricSpace.from_matrix([[0]]), (0,))
    corr = PairCorrespondence(big, small, ((0, 0), (1, 0)))
    assert distortion(corr).sup_full == 2
    with pytest.raises(ValueError):
        classical_glue(corr, eta=Fraction(1, 2))
    with pytest.raises(ValueError):
        classical_glue(corr, eta=0)
    glue = classical_glue(corr, eta=1)
    assert glue.eta == 1


def test_default_glue_shift_zero_distortion_fallback():
    pair = _pair(_two_point(2), (0,))
    corr = PairCorrespondence(pair, pair, ((0, 0), (1, 1)))
    assert distortion(corr).sup_full == 0
    shift = default_glue_shift(corr)
    assert 0 < shift < 1
    assert shift == 2 * Fraction(1, 2**20)


def test_default_glue_shift_half_sup():
    big = _pair(_two_point(2), (0,))
    small = _pair(FiniteMetricSpace.from_matrix([[0]]), (0,))
    corr = PairCorrespondence(big, small, ((0, 0), (1, 0)))
    assert default_glue_shift(corr) == 1


def test_stability_factor_four_random():
    rng = random.Random(35)
    for _ in range(200):
        left = random_pair(rng, n_range=(2, 4))
        right = random_pair(rng, n_range=(2, 4))
        r = random_correspondence(rng, left, right)
        s = random_correspondence(rng, left, right)
        report = distortion_stability(r, s)
        assert report.holds_factor4
        assert report.bound4 == 4 * (report.hausdorff_full + report.hausdorff_restricted)


def test_stability_requires_shared_contexts():
    pair_a = _pair(_two_point(), (0,))
    pair_b = _pair(_two_point(2), (0,))
    corr_a = PairCorrespondence(pair_a, pair_a, ((0, 0), (1, 1)))
    corr_b = PairCorrespondence(pair_b, pair_b, ((0, 0), (1, 1)))
    with pytest.raises(ValueError):
        distortion_stability(corr_a, corr_b)


def test_stability_identical_relations_vanish():
    rng = random.Random(36)
    for _ in range(20):
        left = random_pair(rng, n_range=(2, 3))
        right = random_pair(rng, n_range=(2, 3))
        corr = random_correspondence(rng, left, right)
        report = distortion_stability(corr, corr)
        assert report.lhs == 0
        assert report.hausdorff_full == 0
