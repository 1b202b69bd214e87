"""Hausdorff distance between Euclidean realizations of small complexes.

Carriers are unions of vertices, segments and triangles.  One side of the
directed distance is exact (closed-form point-to-simplex minimization);
the other is sampled on a power-of-two subdivision grid, so refining the
step keeps earlier sample points and the reported lower bound can only
grow.  The result is an interval of width equal to the sampling step.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


@dataclass(frozen=True)
class Interval:
    lower: float
    upper: float

    def __post_init__(self):
        if self.upper < self.lower:
            raise ValueError("empty interval")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper

    def overlaps(self, other: "Interval") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper


class EmbeddedComplex:
    """Points in R^d plus simplices of one to three vertices.

    Each simplex carries a depth; level_complex(cx, l) keeps simplices of
    depth at least l, so depth 0 simplices exist only at the full level.
    """

    def __init__(self, points, simplices: Sequence, depths: Optional[Sequence] = None):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("points must be a nonempty 2d array")
        simp = []
        for s in simplices:
            s = tuple(int(v) for v in s)
            if not 1 <= len(s) <= 3:
                raise ValueError("simplices must have one to three vertices")
            if len(set(s)) != len(s):
                raise ValueError(f"repeated vertex in simplex {s}")
            if any(not 0 <= v < pts.shape[0] for v in s):
                raise ValueError(f"vertex out of range in simplex {s}")
            simp.append(s)
        if not simp:
            raise ValueError("need at least one simplex")
        if depths is None:
            depths = [0] * len(simp)
        depths = [int(d) for d in depths]
        if len(depths) != len(simp) or any(d < 0 for d in depths):
            raise ValueError("one nonnegative depth per simplex expected")
        self.points = pts
        self.simplices = tuple(simp)
        self.depths = tuple(depths)

    @property
    def max_depth(self) -> int:
        return max(self.depths)


def level_complex(cx: EmbeddedComplex, level: int) -> EmbeddedComplex:
    """Sub-complex of simplices surviving to the given depth."""
    if level < 0 or level > cx.max_depth:
        raise ValueError("level out of range")
    keep = [(s, d) for s, d in zip(cx.simplices, cx.depths) if d >= level]
    return EmbeddedComplex(cx.points, [s for s, _ in keep], [d for _, d in keep])


# ---------------------------------------------------------------------------
# exact point-to-simplex distances


def point_segment_distance(points, a, b) -> np.ndarray:
    """Distances from each row of points to the segment [a, b]."""
    p = np.asarray(points, dtype=float)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    ab = b - a
    denom = float(np.dot(ab, ab))
    if denom == 0.0:
        return np.linalg.norm(p - a, axis=1)
    t = np.clip((p - a) @ ab / denom, 0.0, 1.0)
    closest = a + t[:, None] * ab
    return np.linalg.norm(p - closest, axis=1)


def point_triangle_distance(points, a, b, c) -> np.ndarray:
    """Distances from each row of points to the filled triangle a, b, c.

    Region-by-region closest-point computation; works in any ambient
    dimension.
    """
    p = np.asarray(points, dtype=float)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    ab = b - a
    ac = c - a
    ap = p - a
    d1 = ap @ ab
    d2 = ap @ ac
    bp = p - b
    d3 = bp @ ab
    d4 = bp @ ac
    cp = p - c
    d5 = cp @ ab
    d6 = cp @ ac
    vc = d1 * d4 - d3 * d2
    vb = d5 * d2 - d1 * d6
    va = d3 * d6 - d5 * d4

    closest = np.empty_like(p)
    done = np.zeros(len(p), dtype=bool)

    def settle(mask, value):
        mask = mask & ~done
        if np.any(mask):
            closest[mask] = value if value.ndim == 2 else np.broadcast_to(value, closest[mask].shape)
            done[mask] = True

    settle((d1 <= 0) & (d2 <= 0), a)
    settle((d3 >= 0) & (d4 <= d3), b)
    settle((d6 >= 0) & (d5 <= d6), c)

    mask = (vc <= 0) & (d1 >= 0) & (d3 <= 0) & ~done
    if np.any(mask):
        denom = d1[mask] - d3[mask]
        denom = np.where(denom == 0, 1.0, denom)
        t = d1[mask] / denom
        closest[mask] = a + t[:, None] * ab
        done[mask] = True
    mask = (vb <= 0) & (d2 >= 0) & (d6 <= 0) & ~done
    if np.any(mask):
        denom = d2[mask] - d6[mask]
        denom = np.where(denom == 0, 1.0, denom)
        t = d2[mask] / denom
        closest[mask] = a + t[:, None] * ac
        done[mask] = True
    mask = (va <= 0) & (d4 - d3 >= 0) & (d5 - d6 >= 0) & ~done
    if np.any(mask):
        seg = (d4[mask] - d3[mask]) + (d5[mask] - d6[mask])
        seg = np.where(seg == 0, 1.0, seg)
        t = (d4[mask] - d3[mask]) / seg
        closest[mask] = b + t[:, None] * (c - b)
        done[mask] = True
    mask = ~done
    if np.any(mask):
        denom = va[mask] + vb[mask] + vc[mask]
        denom = np.where(denom == 0, 1.0, denom)
        v = vb[mask] / denom
        w = vc[mask] / denom
        closest[mask] = a + v[:, None] * ab + w[:, None] * ac
    return np.linalg.norm(p - closest, axis=1)


def _min_distance_to_carrier(points, cx: EmbeddedComplex) -> np.ndarray:
    best = np.full(len(points), np.inf)
    for s in cx.simplices:
        if len(s) == 1:
            d = np.linalg.norm(points - cx.points[s[0]], axis=1)
        elif len(s) == 2:
            d = point_segment_distance(points, cx.points[s[0]], cx.points[s[1]])
        else:
            d = point_triangle_distance(
                points, cx.points[s[0]], cx.points[s[1]], cx.points[s[2]]
            )
        np.minimum(best, d, out=best)
    return best


# ---------------------------------------------------------------------------
# nested sampling


def _subdivisions(length: float, h: float) -> int:
    if length <= h:
        return 1
    return 2 ** int(math.ceil(math.log2(length / h)))


def _simplex_samples(cx: EmbeddedComplex, s, h: float) -> np.ndarray:
    pts = cx.points
    if len(s) == 1:
        return pts[s[0]][None, :]
    if len(s) == 2:
        a, b = pts[s[0]], pts[s[1]]
        m = _subdivisions(float(np.linalg.norm(b - a)), h)
        t = np.arange(m + 1) / m
        return a + t[:, None] * (b - a)
    a, b, c = pts[s[0]], pts[s[1]], pts[s[2]]
    longest = max(
        float(np.linalg.norm(b - a)),
        float(np.linalg.norm(c - a)),
        float(np.linalg.norm(c - b)),
    )
    m = _subdivisions(longest, h)
    out = []
    for u in range(m + 1):
        for v in range(m + 1 - u):
            out.append(a + (u / m) * (b - a) + (v / m) * (c - a))
    return np.array(out)


def carrier_samples(cx: EmbeddedComplex, h: float) -> np.ndarray:
    """Sample points with spacing at most h; refining h by powers of two
    only adds points."""
    if h <= 0:
        raise ValueError("h must be positive")
    return np.concatenate([_simplex_samples(cx, s, h) for s in cx.simplices])


def realization_hausdorff(a: EmbeddedComplex, b: EmbeddedComplex, h: float) -> Interval:
    """Two-sided Hausdorff interval [sampled sup, sampled sup + h].

    The inf side is exact, the sup side runs over carrier samples, so the
    true distance lies in the returned interval.
    """
    sa = carrier_samples(a, h)
    sb = carrier_samples(b, h)
    forward = float(np.max(_min_distance_to_carrier(sa, b)))
    backward = float(np.max(_min_distance_to_carrier(sb, a)))
    lower = max(forward, backward)
    return Interval(lower, lower + float(h))


def filtration_distance(a: EmbeddedComplex, b: EmbeddedComplex, h: float):
    """Per-level Hausdorff intervals and their sum for two filtrations."""
    if a.max_depth != b.max_depth:
        raise ValueError("filtrations have different depths")
    per_level = tuple(
        realization_hausdorff(level_complex(a, lvl), level_complex(b, lvl), h)
        for lvl in range(a.max_depth + 1)
    )
    total = Interval(
        sum(iv.lower for iv in per_level), sum(iv.upper for iv in per_level)
    )
    return per_level, total
