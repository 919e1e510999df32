"""Dense two-phase simplex over exact rationals, for desk-scale programs.

Minimises c.x subject to A x = b, x >= 0.  Bland's rule keeps the pivoting
cycle-free; all arithmetic stays in Fractions so optima are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tableau[row][col]
    tableau[row] = [v / piv for v in tableau[row]]
    for r, line in enumerate(tableau):
        if r != row and line[col] != 0:
            factor = line[col]
            tableau[r] = [v - factor * p for v, p in zip(line, tableau[row])]
    basis[row] = col


def _reduced_costs(
    tableau: list[list[Fraction]], basis: list[int], cost: list[Fraction]
) -> list[Fraction]:
    ncols = len(tableau[0]) - 1
    reduced = cost[:]
    for r, bi in enumerate(basis):
        cb = cost[bi]
        if cb != 0:
            for j in range(ncols):
                reduced[j] -= cb * tableau[r][j]
    return reduced


def _iterate(
    tableau: list[list[Fraction]], basis: list[int], cost: list[Fraction]
) -> str:
    ncols = len(tableau[0]) - 1
    while True:
        reduced = _reduced_costs(tableau, basis, cost)
        entering = next((j for j in range(ncols) if reduced[j] < 0), None)
        if entering is None:
            return OPTIMAL
        leaving, best = None, None
        for r, line in enumerate(tableau):
            if line[entering] > 0:
                ratio = line[-1] / line[entering]
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[r] < basis[leaving])
                ):
                    leaving, best = r, ratio
        if leaving is None:
            return UNBOUNDED
        _pivot(tableau, basis, leaving, entering)


def solve_lp(
    a_rows: Sequence[Sequence[Fraction]],
    b: Sequence[Fraction],
    c: Sequence[Fraction],
) -> tuple[str, list[Fraction] | None, Fraction | None]:
    """Return (status, x, objective) for min c.x, A x = b, x >= 0."""
    nrows, ncols = len(a_rows), len(c)
    tableau: list[list[Fraction]] = []
    for row, rhs in zip(a_rows, b):
        line = [Fraction(v) for v in row]
        line.append(Fraction(rhs))
        if line[-1] < 0:
            line = [-v for v in line]
        tableau.append(line)
    # phase 1: artificial basis
    for r, line in enumerate(tableau):
        art = [Fraction(0)] * nrows
        art[r] = Fraction(1)
        tableau[r] = line[:-1] + art + [line[-1]]
    basis = [ncols + r for r in range(nrows)]
    phase1_cost = [Fraction(0)] * ncols + [Fraction(1)] * nrows
    status = _iterate(tableau, basis, phase1_cost)
    assert status == OPTIMAL, "phase 1 is always bounded"
    value = sum(tableau[r][-1] for r in range(nrows) if basis[r] >= ncols)
    if value != 0:
        return INFEASIBLE, None, None
    # drive remaining artificials out of the basis, dropping redundant rows
    drop: list[int] = []
    for r in range(nrows):
        if basis[r] >= ncols:
            col = next((j for j in range(ncols) if tableau[r][j] != 0), None)
            if col is None:
                drop.append(r)
            else:
                _pivot(tableau, basis, r, col)
    for r in sorted(drop, reverse=True):
        del tableau[r]
        del basis[r]
    tableau = [line[:ncols] + [line[-1]] for line in tableau]
    phase2_cost = [Fraction(v) for v in c]
    status = _iterate(tableau, basis, phase2_cost)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    x = [Fraction(0)] * ncols
    for r, bi in enumerate(basis):
        x[bi] = tableau[r][-1]
    objective = sum(ci * xi for ci, xi in zip(c, x))
    return OPTIMAL, x, objective
