"""Small exact linear programming over rationals.

Dense two-phase simplex with Bland's rule, all arithmetic in Fraction.
Intended for the small programs that arise from witness reductions; no
attempt is made at sparse or revised formulations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    sense: str  # "<=", ">=" or "=="
    rhs: Fraction

    def __post_init__(self):
        if self.sense not in ("<=", ">=", "=="):
            raise ValueError(f"unknown sense {self.sense!r}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))


@dataclass
class LinearProgram:
    """Minimize objective . x subject to constraints, x >= 0 componentwise."""

    objective: tuple
    constraints: list = field(default_factory=list)

    def __post_init__(self):
        self.objective = tuple(Fraction(c) for c in self.objective)

    @property
    def n(self) -> int:
        return len(self.objective)

    def add(self, coeffs: Sequence, sense: str, rhs) -> None:
        coeffs = tuple(coeffs)
        if len(coeffs) != self.n:
            raise ValueError("coefficient length mismatch")
        self.constraints.append(Constraint(coeffs, sense, rhs))


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    value: Fraction | None
    solution: tuple | None


_ZERO = Fraction(0)
_ONE = Fraction(1)


def _pivot(tableau, basis, row, col):
    piv = tableau[row][col]
    inv = _ONE / piv
    tableau[row] = [v * inv for v in tableau[row]]
    prow = tableau[row]
    for r, line in enumerate(tableau):
        if r == row:
            continue
        factor = line[col]
        if factor != 0:
            tableau[r] = [a - factor * b for a, b in zip(line, prow)]
    basis[row] = col


def _simplex(tableau, basis, ncols):
    """Run Bland-rule pivots until optimal or unbounded.

    The last tableau row holds reduced costs; the last column holds the
    right-hand sides (and, in the cost row, minus the objective value).
    """
    m = len(tableau) - 1
    cost = tableau[m]
    while True:
        col = -1
        for j in range(ncols):
            if cost[j] < 0:
                col = j
                break
        if col < 0:
            return "optimal"
        row = -1
        best = None
        for i in range(m):
            a = tableau[i][col]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[row]):
                    best = ratio
                    row = i
        if row < 0:
            return "unbounded"
        _pivot(tableau, basis, row, col)
        cost = tableau[m]


def solve_lp(lp: LinearProgram) -> LPResult:
    n = lp.n
    rows = []
    senses = []
    for con in lp.constraints:
        coeffs = list(con.coeffs)
        rhs = con.rhs
        sense = con.sense
        if rhs < 0:
            coeffs = [-c for c in coeffs]
            rhs = -rhs
            sense = {"<=": ">=", ">=": "<=", "==": "=="}[sense]
        rows.append((coeffs, rhs))
        senses.append(sense)
    m = len(rows)
    nslack = sum(1 for s in senses if s in ("<=", ">="))
    nart = sum(1 for s in senses if s in (">=", "=="))
    total = n + nslack + nart
    tableau = []
    basis = [0] * m
    art_cols = []
    si = n
    ai = n + nslack
    for i, ((coeffs, rhs), sense) in enumerate(zip(rows, senses)):
        line = [Fraction(c) for c in coeffs] + [_ZERO] * (nslack + nart) + [rhs]
        if sense == "<=":
            line[si] = _ONE
            basis[i] = si
            si += 1
        elif sense == ">=":
            line[si] = -_ONE
            si += 1
            line[ai] = _ONE
            basis[i] = ai
            art_cols.append(ai)
            ai += 1
        else:
            line[ai] = _ONE
            basis[i] = ai
            art_cols.append(ai)
            ai += 1
        tableau.append(line)

    # phase 1: minimize the artificial sum
    art_set = set(art_cols)
    cost = [_ZERO] * (total + 1)
    for j in art_cols:
        cost[j] = _ONE
    tableau.append(cost)
    for i in range(m):
        if basis[i] in art_set:
            line = tableau[i]
            tableau[m] = [a - b for a, b in zip(tableau[m], line)]
    status = _simplex(tableau, basis, total)
    if status != "optimal":  # pragma: no cover - phase 1 is always bounded
        return LPResult("infeasible", None, None)
    if -tableau[m][-1] > 0:
        return LPResult("infeasible", None, None)
    # drive leftover artificials out of the basis where possible
    drop_rows = []
    for i in range(m):
        if basis[i] in art_set:
            col = -1
            for j in range(n + nslack):
                if tableau[i][j] != 0:
                    col = j
                    break
            if col >= 0:
                _pivot(tableau, basis, i, col)
            else:
                drop_rows.append(i)
    if drop_rows:
        tableau = [line for i, line in enumerate(tableau[:m]) if i not in drop_rows] + [tableau[m]]
        basis = [b for i, b in enumerate(basis) if i not in drop_rows]
        m = len(basis)

    # phase 2: real costs, artificial columns disabled
    keep = [j for j in range(total) if j not in art_set]
    tableau = [[line[j] for j in keep] + [line[-1]] for line in tableau[:m]]
    cost = [_ZERO] * (len(keep) + 1)
    for j, col in enumerate(keep):
        if col < n:
            cost[j] = lp.objective[col]
    tableau.append(cost)
    remap = {col: j for j, col in enumerate(keep)}
    basis = [remap[b] for b in basis]
    for i in range(m):
        cj = tableau[m][basis[i]]
        if cj != 0:
            tableau[m] = [a - cj * b for a, b in zip(tableau[m], tableau[i])]
    status = _simplex(tableau, basis, len(keep))
    if status == "unbounded":
        return LPResult("unbounded", None, None)
    solution = [_ZERO] * n
    for i in range(m):
        col = keep[basis[i]]
        if col < n:
            solution[col] = tableau[i][-1]
    value = sum((c * x for c, x in zip(lp.objective, solution)), _ZERO)
    return LPResult("optimal", value, tuple(solution))
