from __future__ import annotations

import random
from fractions import Fraction

import pytest

from metricpairs.lp import Constraint, LinearProgram, LPResult, solve_lp

scipy_opt = pytest.importorskip("scipy.optimize")


def _lp(objective, rows):
    prog = LinearProgram(tuple(Fraction(c) for c in objective))
    for coeffs, sense, rhs in rows:
        prog.add([Fraction(c) for c in coeffs], sense, Fraction(rhs))
    return prog


def test_textbook_minimum():
    # min x + y  s.t.  x + 2y >= 4,  3x + y >= 6,  x,y >= 0
    prog = _lp((1, 1), [((1, 2), ">=", 4), ((3, 1), ">=", 6)])
    result = solve_lp(prog)
    assert result.status == "optimal"
    assert result.value == Fraction(14, 5)
    x, y = result.solution
    assert x + 2 * y >= 4 and 3 * x + y >= 6


def test_equality_constraint():
    # min 2x + 3y  s.t.  x + y == 5,  y - x >= 1
    prog = _lp((2, 3), [((1, 1), "==", 5), ((-1, 1), ">=", 1)])
    result = solve_lp(prog)
    assert result.status == "optimal"
    assert result.value == 13
    assert result.solution == (Fraction(2), Fraction(3))


def test_upper_bounds_only():
    # min -x - y  s.t.  x <= 2, y <= 3  (maximize x + y on a box)
    prog = _lp((-1, -1), [((1, 0), "<=", 2), ((0, 1), "<=", 3)])
    result = solve_lp(prog)
    assert result.status == "optimal"
    assert result.value == -5


def test_infeasible_detected():
    prog = _lp((1,), [((1,), ">=", 3), ((1,), "<=", 1)])
    assert solve_lp(prog).status == "infeasible"


def test_unbounded_detected():
    prog = _lp((-1,), [((1,), ">=", 0)])
    assert solve_lp(prog).status == "unbounded"


def test_negative_rhs_normalization():
    # x >= -1 is inactive for x >= 0; minimum of x is 0.
    prog = _lp((1,), [((1,), ">=", -1)])
    result = solve_lp(prog)
    assert result.status == "optimal"
    assert result.value == 0


def test_redundant_equalities():
    prog = _lp((1, 1), [((1, 1), "==", 2), ((2, 2), "==", 4)])
    result = solve_lp(prog)
    assert result.status == "optimal"
    assert result.value == 2


def test_rejects_bad_sense():
    prog = _lp((1,), [])
    with pytest.raises(ValueError):
        prog.add([Fraction(1)], "<", Fraction(0))


def test_solution_is_exact_rational():
    prog = _lp((1, 1, 1), [((1, 1, 0), ">=", Fraction(1, 3)),
                           ((0, 1, 1), ">=", Fraction(1, 7)),
                           ((1, 0, 1), ">=", Fraction(2, 5))])
    result = solve_lp(prog)
    assert result.status == "optimal"
    assert all(isinstance(v, Fraction) for v in result.solution)
    assert isinstance(result.value, Fraction)


def test_matches_scipy_on_random_covers():
    """Random covering programs, checked against the float solver."""
    rng = random.Random(41)
    for _ in range(40):
        nvars = rng.randint(2, 5)
        nrows = rng.randint(2, 6)
        objective = [Fraction(rng.randint(1, 5)) for _ in range(nvars)]
        rows = []
        for _ in range(nrows):
            coeffs = [Fraction(rng.randint(0, 3)) for _ in range(nvars)]
            if all(c == 0 for c in coeffs):
                coeffs[rng.randrange(nvars)] = Fraction(1)
            rows.append((coeffs, ">=", Fraction(rng.randint(1, 8))))
        prog = LinearProgram(tuple(objective))
        for coeffs, sense, rhs in rows:
            prog.add(coeffs, sense, rhs)
        result = solve_lp(prog)
        assert result.status == "optimal"

        a_ub = [[-float(c) for c in coeffs] for coeffs, _, _ in rows]
        b_ub = [-float(rhs) for _, _, rhs in rows]
        ref = scipy_opt.linprog(
            [float(c) for c in objective], A_ub=a_ub, b_ub=b_ub, method="highs"
        )
        assert ref.status == 0
        assert abs(float(result.value) - ref.fun) <= 1e-7 * (1 + abs(ref.fun))


def test_degenerate_cycling_guard():
    """A classic degenerate instance; Bland's rule must terminate."""
    prog = _lp(
        (Fraction(-3, 4), 150, Fraction(-1, 50), 6),
        [
            ((Fraction(1, 4), -60, Fraction(-1, 25), 9), "<=", 0),
            ((Fraction(1, 2), -90, Fraction(-1, 50), 3), "<=", 0),
            ((0, 0, 1, 0), "<=", 1),
        ],
    )
    result = solve_lp(prog)
    assert result.status == "optimal"
    assert result.value == Fraction(-1, 20)
