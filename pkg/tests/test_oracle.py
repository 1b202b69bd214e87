from __future__ import annotations

import random
from fractions import Fraction

import pytest

from metricpairs.correspondences import brute_force_min_distortion
from metricpairs.generators import random_pair, random_permuted_pair
from metricpairs.lp import solve_lp
from metricpairs.oracle import (
    BudgetExceededError,
    build_witness_lp,
    cache_size,
    canonical_pair_key,
    clear_cache,
    exact_pair_gh,
    exact_pair_gh_max,
    exact_tuple_gh,
    witness_entries,
    witness_reduced_value,
)
from metricpairs.spaces import FiniteMetricSpace, MetricPair, MetricTuple


def _pair(matrix, subset):
    return MetricPair(FiniteMetricSpace.from_matrix(matrix), subset)


def _point_pair():
    return _pair([[0]], (0,))


def test_identical_pairs_have_distance_zero():
    pair = _pair([[0, 1, 2], [1, 0, 1], [2, 1, 0]], (0, 1))
    result = exact_pair_gh(pair, pair, cache=False)
    assert result.value == 0
    assert result.certificate_report()["achieves_value"]


def test_two_point_versus_point_known_value():
    """Frozen probe: diameter-2 doubleton with singleton subset against a
    one-point pair.  Both Hausdorff terms cost 1, so the sum is 2."""
    left = _pair([[0, 2], [2, 0]], (0,))
    result = exact_pair_gh(left, _point_pair(), cache=False)
    assert result.value == 2
    assert result.radii == (1, 1)

    result_max = exact_pair_gh_max(left, _point_pair(), cache=False)
    assert result_max.value == 1


def test_certificate_achieves_value():
    rng = random.Random(50)
    for _ in range(40):
        left = random_pair(rng, n_range=(1, 3))
        right = random_pair(rng, n_range=(1, 3))
        for compute in (exact_pair_gh, exact_pair_gh_max):
            result = compute(left, right, cache=False)
            report = result.certificate_report()
            assert report["violations"] == ()
            assert report["achieves_value"]
            assert report["value"] == result.value


def test_cross_metric_is_admissible_up_to_zero_cells():
    rng = random.Random(51)
    for _ in range(30):
        left = random_pair(rng, n_range=(1, 3))
        right = random_pair(rng, n_range=(1, 3))
        result = exact_pair_gh(left, right, cache=False)
        assert result.cross().check(require_positive=False) == []


def test_value_sandwiched_by_correspondence_quantities():
    """Against exhaustive relation enumeration the sum value sits between
    half the best averaged distortion doubled and the best full sup."""
    rng = random.Random(52)
    for _ in range(25):
        left = random_pair(rng, n_range=(1, 3))
        right = random_pair(rng, n_range=(1, 3))
        value = exact_pair_gh(left, right, cache=False).value
        best_avg = brute_force_min_distortion(left, right).breakdown.value
        best_sup = brute_force_min_distortion(
            left, right, objective="sup_full"
        ).breakdown.sup_full
        assert 2 * value >= best_avg
        assert value <= best_sup


def test_value_equals_best_sup_when_subsets_are_full():
    """With both subsets equal to the whole spaces the two Hausdorff terms
    coincide, and the sum value equals the best full sup exactly."""
    rng = random.Random(65)
    for _ in range(20):
        left = random_pair(rng, n_range=(2, 3))
        right = random_pair(rng, n_range=(2, 3))
        left = MetricPair(left.space, tuple(range(left.space.n)))
        right = MetricPair(right.space, tuple(range(right.space.n)))
        value = exact_pair_gh(left, right, cache=False).value
        best_sup = brute_force_min_distortion(
            left, right, objective="sup_full"
        ).breakdown.sup_full
        assert value == best_sup


def test_max_variant_matches_sup_oracle():
    """The max variant equals half the best sup over all correspondences."""
    rng = random.Random(53)
    for _ in range(25):
        left = random_pair(rng, n_range=(1, 3))
        right = random_pair(rng, n_range=(1, 3))
        result = exact_pair_gh_max(left, right, cache=False)
        best = brute_force_min_distortion(left, right, objective="sup_full")
        assert 2 * result.value == best.breakdown.sup_full


def test_sandwich_between_variants():
    rng = random.Random(54)
    for _ in range(30):
        left = random_pair(rng, n_range=(1, 3))
        right = random_pair(rng, n_range=(1, 3))
        s = exact_pair_gh(left, right, cache=False).value
        m = exact_pair_gh_max(left, right, cache=False).value
        assert m <= s <= 2 * m


def test_symmetry():
    rng = random.Random(55)
    for _ in range(20):
        left = random_pair(rng, n_range=(1, 3))
        right = random_pair(rng, n_range=(1, 3))
        assert (
            exact_pair_gh(left, right, cache=False).value
            == exact_pair_gh(right, left, cache=False).value
        )


def test_zero_iff_isomorphic():
    rng = random.Random(56)
    for _ in range(30):
        pair = random_pair(rng, n_range=(2, 4))
        permuted = random_permuted_pair(rng, pair)
        assert exact_pair_gh(pair, permuted, cache=False, budget=10**8).value == 0
    from metricpairs.families import pairs_isometric

    for _ in range(30):
        left = random_pair(rng, n_range=(2, 3))
        right = random_pair(rng, n_range=(2, 3))
        value = exact_pair_gh(left, right, cache=False).value
        assert (value == 0) == pairs_isometric(left, right)


def test_triangle_inequality_over_pairs():
    rng = random.Random(57)
    for _ in range(15):
        a = random_pair(rng, n_range=(1, 3))
        b = random_pair(rng, n_range=(1, 3))
        c = random_pair(rng, n_range=(1, 3))
        ab = exact_pair_gh(a, b, cache=False).value
        bc = exact_pair_gh(b, c, cache=False).value
        ac = exact_pair_gh(a, c, cache=False).value
        assert ac <= ab + bc


def test_witness_reduction_matches_full_lp():
    """Closed-form witness values equal the simplex optimum of the full
    cross-metric program for the same witness maps."""
    rng = random.Random(58)
    for _ in range(40):
        left = random_pair(rng, n_range=(2, 3))
        right = random_pair(rng, n_range=(2, 3))
        maps = []
        for la, ra in ((range(left.space.n), range(right.space.n)),
                       (left.subset, right.subset)):
            la, ra = list(la), list(ra)
            fwd = {i: rng.choice(ra) for i in la}
            back = {j: rng.choice(la) for j in ra}
            maps.append((fwd, back))
        value, radii = witness_reduced_value(left, right, maps)
        assert sum(radii) == value
        full = solve_lp(build_witness_lp(left, right, maps))
        assert full.status == "optimal"
        assert value == full.value


def test_witness_entries_from_maps():
    left = _pair([[0, 2], [2, 0]], (0,))
    right = _point_pair()
    maps = [({0: 0, 1: 0}, {0: 0}), ({0: 0}, {0: 0})]
    entries = witness_entries(left, right, maps)
    assert len(entries) == 2
    # Level 0: two forward cells plus one backward cell.
    assert entries[0] == ((0, 0), (1, 0), (0, 0))
    assert entries[1] == ((0, 0), (0, 0))
    with pytest.raises(ValueError):
        witness_entries(left, right, maps[:1])
    with pytest.raises(ValueError):
        witness_entries(left, right, [maps[0], ({0: 1}, {0: 0})])


def test_cache_round_trip_is_byte_identical():
    rng = random.Random(59)
    for _ in range(20):
        clear_cache()
        left = random_pair(rng, n_range=(2, 3))
        right = random_pair(rng, n_range=(2, 3))
        fresh = exact_pair_gh(left, right, cache=False)
        primed = exact_pair_gh(left, right, cache=True)
        again = exact_pair_gh(left, right, cache=True)
        assert fresh == primed == again
    assert cache_size() > 0
    clear_cache()
    assert cache_size() == 0


def test_cache_hits_across_isometric_queries_keep_value():
    """A cached entry reached through a different labeling is transported
    through the canonical permutations: the value and radii are identical
    and the transported witness still certifies them."""
    rng = random.Random(66)
    for _ in range(15):
        clear_cache()
        left = random_pair(rng, n_range=(2, 3))
        right = random_pair(rng, n_range=(2, 3))
        base = exact_pair_gh(left, right, cache=True)
        left2 = random_permuted_pair(rng, left)
        right2 = random_permuted_pair(rng, right)
        hit = exact_pair_gh(left2, right2, cache=True)
        assert hit.value == base.value
        assert hit.radii == base.radii
        report = hit.certificate_report()
        assert report["violations"] == ()
        assert report["achieves_value"]
    clear_cache()


def test_cache_mirror_serves_swapped_queries():
    clear_cache()
    left = _pair([[0, 1, 2], [1, 0, 1], [2, 1, 0]], (0,))
    right = _pair([[0, 3], [3, 0]], (0, 1))
    first = exact_pair_gh(left, right, cache=True)
    size_after_first = cache_size()
    swapped = exact_pair_gh(right, left, cache=True)
    assert cache_size() == size_after_first
    assert swapped.value == first.value
    assert swapped.radii == first.radii
    assert {(y, x) for cells in swapped.levels for x, y in cells} == {
        (x, y) for cells in first.levels for x, y in cells
    }
    report = swapped.certificate_report()
    assert report["violations"] == ()
    assert report["achieves_value"]
    clear_cache()


def test_shortcut_agrees_with_full_search():
    """Pairs whose subset is the whole space reduce to a single-level
    search; the reduced value and radii must match the unshortened ones,
    and both witnesses must certify the common value."""
    rng = random.Random(60)
    for _ in range(20):
        left = random_pair(rng, n_range=(2, 3))
        right = random_pair(rng, n_range=(2, 3))
        left = MetricPair(left.space, tuple(range(left.space.n)))
        right = MetricPair(right.space, tuple(range(right.space.n)))
        for compute in (exact_pair_gh, exact_pair_gh_max):
            fast = compute(left, right, cache=False, shortcut=True)
            slow = compute(left, right, cache=False, shortcut=False)
            assert fast.value == slow.value
            assert fast.radii == slow.radii
            for result in (fast, slow):
                report = result.certificate_report()
                assert report["violations"] == ()
                assert report["achieves_value"]


def test_budget_exceeded_raises_with_estimate():
    space = [[0, 1, 1, 1, 1, 1],
             [1, 0, 1, 1, 1, 1],
             [1, 1, 0, 1, 1, 1],
             [1, 1, 1, 0, 1, 1],
             [1, 1, 1, 1, 0, 1],
             [1, 1, 1, 1, 1, 0]]
    pair = _pair(space, tuple(range(6)))
    with pytest.raises(BudgetExceededError) as exc:
        exact_pair_gh(pair, pair, cache=False, budget=1000)
    assert exc.value.estimate > exc.value.budget == 1000


def test_tuple_single_level_equals_pair():
    rng = random.Random(61)
    for _ in range(25):
        left = random_pair(rng, n_range=(1, 3))
        right = random_pair(rng, n_range=(1, 3))
        pair_value = exact_pair_gh(left, right, cache=False).value
        tuple_value = exact_tuple_gh(left.as_tuple(), right.as_tuple()).value
        assert pair_value == tuple_value
        pair_max = exact_pair_gh_max(left, right, cache=False).value
        tuple_max = exact_tuple_gh(
            left.as_tuple(), right.as_tuple(), variant="max"
        ).value
        assert pair_max == tuple_max


def test_tuple_degenerate_chain_scales_single_level():
    """Repeating the full space through the whole chain multiplies the sum
    value by (levels/2) relative to the full-subset pair and leaves the max
    value at half the pair value."""
    rng = random.Random(62)
    for _ in range(10):
        left = random_pair(rng, n_range=(2, 2))
        right = random_pair(rng, n_range=(2, 2))
        full_l = tuple(range(left.space.n))
        full_r = tuple(range(right.space.n))
        base_l = MetricPair(left.space, full_l)
        base_r = MetricPair(right.space, full_r)
        single = exact_pair_gh(base_l, base_r, cache=False)
        for chain_len in (2, 3):
            tl = MetricTuple(left.space, (full_l,) * chain_len)
            tr = MetricTuple(right.space, (full_r,) * chain_len)
            levels = chain_len + 1
            rep = exact_tuple_gh(tl, tr)
            assert rep.value == Fraction(levels, 2) * single.value
            rep_max = exact_tuple_gh(tl, tr, variant="max")
            assert 2 * rep_max.value == single.value


def test_tuple_three_levels_certified():
    space = [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
    tl = MetricTuple(FiniteMetricSpace.from_matrix(space), ((0, 1, 2), (0, 1)))
    tr = MetricTuple(FiniteMetricSpace.from_matrix([[0, 3], [3, 0]]), ((0, 1), (0,)))
    result = exact_tuple_gh(tl, tr)
    assert len(result.radii) == 3
    assert len(result.levels) == 3
    assert sum(result.radii) == result.value
    report = result.certificate_report()
    assert report["achieves_value"]
    assert report["violations"] == ()

    capped = exact_tuple_gh(tl, tr, variant="max")
    assert capped.value <= result.value <= 3 * capped.value


def test_tuple_rejects_mismatched_chains():
    two = FiniteMetricSpace.from_matrix([[0, 1], [1, 0]])
    a = MetricTuple(two, ((0, 1),))
    b = MetricTuple(two, ((0, 1), (0,)))
    with pytest.raises(ValueError):
        exact_tuple_gh(a, b)
    with pytest.raises(ValueError):
        exact_tuple_gh(a, a, variant="median")


def test_result_levels_are_sorted_and_cover():
    rng = random.Random(63)
    for _ in range(15):
        left = random_pair(rng, n_range=(2, 3))
        right = random_pair(rng, n_range=(2, 3))
        result = exact_pair_gh(left, right, cache=False)
        for level in result.levels:
            assert list(level) == sorted(level)
        covered_x = {x for x, _ in result.levels[0]}
        covered_y = {y for _, y in result.levels[0]}
        assert covered_x == set(range(left.space.n))
        assert covered_y == set(range(right.space.n))
        sub_x = {x for x, _ in result.levels[1]}
        sub_y = {y for _, y in result.levels[1]}
        assert sub_x == set(left.subset)
        assert sub_y == set(right.subset)


def test_canonical_pair_key_invariant_under_relabeling():
    rng = random.Random(64)
    for _ in range(30):
        pair = random_pair(rng, n_range=(2, 5))
        permuted = random_permuted_pair(rng, pair)
        enc_a, _ = canonical_pair_key(pair)
        enc_b, _ = canonical_pair_key(permuted)
        assert enc_a == enc_b
    big = random_pair(rng, n_range=(7, 7))
    assert canonical_pair_key(big) is None


def test_as_dict_serializes_scalars():
    left = _pair([[0, 2], [2, 0]], (0,))
    result = exact_pair_gh(left, _point_pair(), cache=False)
    payload = result.as_dict()
    assert payload["value"] == "2"
    assert payload["variant"] == "sum"
    assert payload["radii"] == ["1", "1"]
