"""Exact two-phase simplex over the rationals.

Dense tableau, Fraction pivoting, Bland's rule for both entering and leaving
choices so the method terminates without any perturbation.  Every pivot is
metered against a Budget.  Problem sizes here are tiny (tens of variables),
so no effort is spent on sparsity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra.ideals import Budget

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: list[Fraction] | None
    objective: Fraction | None
    pivots: int


def solve_lp(
    c: Sequence,
    a_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    a_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    nonneg: Sequence[bool] | None = None,
    budget: Budget | int | None = None,
) -> LPResult:
    """Minimize c.x subject to a_ub.x <= b_ub, a_eq.x = b_eq.

    `nonneg[i]` marks x_i >= 0; free variables are split internally.
    """
    budget = Budget.coerce(budget)
    n = len(c)
    c = [Fraction(v) for v in c]
    if nonneg is None:
        nonneg = [True] * n
    if len(nonneg) != n:
        raise ValueError("nonneg mask length mismatch")

    # standard-form column layout: one column per nonneg variable, two per
    # free variable (x = x+ - x-), then one slack per inequality
    cols: list[tuple[int, int]] = []  # (original index, sign)
    for i in range(n):
        cols.append((i, 1))
        if not nonneg[i]:
            cols.append((i, -1))
    n_struct = len(cols)
    n_slack = len(a_ub)
    width = n_struct + n_slack

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []

    def expand(row: Sequence) -> list[Fraction]:
        if len(row) != n:
            raise ValueError("constraint row length mismatch")
        out = [Fraction(row[i]) * s for i, s in cols]
        return out

    for k, row in enumerate(a_ub):
        r = expand(row) + [Fraction(0)] * n_slack
        r[n_struct + k] = Fraction(1)
        rows.append(r)
        rhs.append(Fraction(b_ub[k]))
    for k, row in enumerate(a_eq):
        rows.append(expand(row) + [Fraction(0)] * n_slack)
        rhs.append(Fraction(b_eq[k]))

    m = len(rows)
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    cost = [Fraction(0)] * width
    for j, (i, s) in enumerate(cols):
        cost[j] = c[i] * s

    tab = _Tableau(rows, rhs, width, budget)
    status = tab.phase1()
    if status == INFEASIBLE:
        return LPResult(INFEASIBLE, None, None, tab.pivots)
    status = tab.phase2(cost)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, None, None, tab.pivots)

    xcols = tab.solution()
    x = [Fraction(0)] * n
    for j, (i, s) in enumerate(cols):
        x[i] += s * xcols[j]
    obj = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, x, obj, tab.pivots)


class _Tableau:
    def __init__(self, rows, rhs, width, budget: Budget):
        self.rows = [list(r) for r in rows]
        self.rhs = list(rhs)
        self.width = width
        self.budget = budget
        self.basis: list[int] = []
        self.pivots = 0

    def _pivot(self, r: int, c: int):
        self.budget.spend()
        self.pivots += 1
        piv = self.rows[r][c]
        self.rows[r] = [v / piv for v in self.rows[r]]
        self.rhs[r] /= piv
        for i in range(len(self.rows)):
            if i == r:
                continue
            f = self.rows[i][c]
            if f == 0:
                continue
            self.rows[i] = [a - f * b for a, b in zip(self.rows[i], self.rows[r])]
            self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c

    def _run(self, red: list[Fraction], total_width: int) -> str:
        """Bland iterations on the current tableau with reduced-cost row red."""
        while True:
            enter = next((j for j in range(total_width) if red[j] < 0), None)
            if enter is None:
                return OPTIMAL
            ratio = None
            leave = None
            for i in range(len(self.rows)):
                a = self.rows[i][enter]
                if a > 0:
                    r = self.rhs[i] / a
                    if ratio is None or r < ratio or (r == ratio and self.basis[i] < self.basis[leave]):
                        ratio = r
                        leave = i
            if leave is None:
                return UNBOUNDED
            # keep the reduced-cost row in sync with the pivot
            f = red[enter]
            self._pivot(leave, enter)
            if f != 0:
                prow = self.rows[leave]
                for j in range(total_width):
                    red[j] -= f * prow[j]

    def phase1(self) -> str:
        m = len(self.rows)
        art0 = self.width
        for i in range(m):
            self.rows[i] = self.rows[i] + [
                Fraction(1) if j == i else Fraction(0) for j in range(m)
            ]
            self.basis.append(art0 + i)
        total = self.width + m
        red = [Fraction(0)] * total
        for j in range(self.width):
            red[j] = -sum(self.rows[i][j] for i in range(m))
        status = self._run(red, total)
        assert status == OPTIMAL  # phase 1 is bounded below by 0
        value = sum(self.rhs[i] for i in range(m) if self.basis[i] >= art0)
        if value > 0:
            return INFEASIBLE
        # drive leftover degenerate artificials out of the basis
        i = 0
        while i < len(self.rows):
            if self.basis[i] >= art0:
                col = next(
                    (j for j in range(self.width) if self.rows[i][j] != 0), None
                )
                if col is None:
                    # redundant constraint
                    del self.rows[i]
                    del self.rhs[i]
                    del self.basis[i]
                    continue
                self._pivot(i, col)
            i += 1
        for i in range(len(self.rows)):
            self.rows[i] = self.rows[i][: self.width]
        return OPTIMAL

    def phase2(self, cost: list[Fraction]) -> str:
        red = list(cost)
        for i, b in enumerate(self.basis):
            f = red[b]
            if f != 0:
                for j in range(self.width):
                    red[j] -= f * self.rows[i][j]
        return self._run(red, self.width)

    def solution(self) -> list[Fraction]:
        x = [Fraction(0)] * self.width
        for i, b in enumerate(self.basis):
            x[b] = self.rhs[i]
        return x


def feasible(
    a_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    a_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    n: int | None = None,
    nonneg: Sequence[bool] | None = None,
    budget: Budget | int | None = None,
) -> bool:
    """Feasibility check with a zero objective."""
    if n is None:
        if a_ub:
            n = len(a_ub[0])
        elif a_eq:
            n = len(a_eq[0])
        else:
            return True
    res = solve_lp([0] * n, a_ub, b_ub, a_eq, b_eq, nonneg, budget)
    return res.status == OPTIMAL
