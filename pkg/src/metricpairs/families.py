"""Exhaustive enumeration of small labeled instances.

The bounded family (up to three points, distances from a fixed value set)
is small enough to sweep completely, which is what makes end-to-end
verification of the exact search feasible.
"""
from __future__ import annotations

from itertools import combinations, permutations, product
from typing import Sequence

from .oracle import canonical_pair_key
from .spaces import FiniteMetricSpace, InvalidMetricError, MetricPair


def enumerate_spaces(n: int, values: Sequence = (1, 2, 3)) -> list:
    """All labeled n-point metrics with off-diagonal entries in ``values``."""
    if n < 1:
        raise ValueError("need at least one point")
    cells = list(combinations(range(n), 2))
    labels = tuple(f"p{i}" for i in range(n))
    out = []
    for combo in product(values, repeat=len(cells)):
        mat = [[0] * n for _ in range(n)]
        for (i, j), v in zip(cells, combo):
            mat[i][j] = v
            mat[j][i] = v
        try:
            out.append(FiniteMetricSpace.from_matrix(mat, labels))
        except InvalidMetricError:
            continue
    return out


def enumerate_family(max_n: int = 3, values: Sequence = (1, 2, 3)) -> list:
    """Every labeled pair with at most max_n points: all spaces, all
    nonempty subsets."""
    pairs = []
    for n in range(1, max_n + 1):
        for space in enumerate_spaces(n, values):
            for mask in range(1, 1 << n):
                subset = tuple(i for i in range(n) if mask >> i & 1)
                pairs.append(MetricPair(space, subset))
    return pairs


def pairs_isometric(left: MetricPair, right: MetricPair) -> bool:
    """Permutation search for a distance- and subset-preserving bijection.

    Exact comparisons; meant for small exact instances.
    """
    n = left.space.n
    if n != right.space.n or len(left.subset) != len(right.subset):
        return False
    if n > 8:
        raise ValueError("isometry search limited to eight points")
    dl, dr = left.space.dist, right.space.dist
    in_a = [i in set(left.subset) for i in range(n)]
    in_b = [j in set(right.subset) for j in range(n)]
    for perm in permutations(range(n)):
        if any(in_a[i] != in_b[perm[i]] for i in range(n)):
            continue
        if all(
            dl[i][j] == dr[perm[i]][perm[j]]
            for i in range(n)
            for j in range(i + 1, n)
        ):
            return True
    return False


def family_iso_classes(pairs: Sequence) -> list:
    """Group indices of ``pairs`` by relabel-minimal encoding."""
    groups: dict = {}
    for idx, pair in enumerate(pairs):
        key = canonical_pair_key(pair)
        if key is None:
            raise ValueError("pair too large to canonicalize")
        groups.setdefault(key[0], []).append(idx)
    return [groups[k] for k in sorted(groups)]
