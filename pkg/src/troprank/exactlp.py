"""Exact rational linear algebra: rank, linear feasibility via equality
elimination plus Fourier-Motzkin, and a two-variable-per-inequality solver.

Everything runs over Fraction; no tolerances anywhere.  Sizes are tiny
(at most a few dozen variables), so clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Row = tuple[Fraction, ...]


def rational_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a matrix over the rationals by Gaussian elimination."""
    work = [list(map(Fraction, row)) for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        pv = work[rank][col]
        for r in range(len(work)):
            if r != rank and work[r][col] != 0:
                factor = work[r][col] / pv
                for c in range(col, ncols):
                    work[r][c] -= factor * work[rank][c]
        rank += 1
        if rank == len(work):
            break
    return rank


def _normalize_inequality(coeffs: list[Fraction], const: Fraction) -> tuple[Row, Fraction]:
    """Scale sum(coeffs * x) >= const to primitive integer form."""
    denoms = [c.denominator for c in coeffs] + [const.denominator]
    lcm = 1
    for d in denoms:
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(c * lcm) for c in coeffs] + [int(const * lcm)]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(Fraction(v) for v in ints[:-1]), Fraction(ints[-1])


def solve_linear_feasibility(
    nvars: int,
    equalities: Sequence[tuple[Sequence[Fraction], Fraction]],
    inequalities: Sequence[tuple[Sequence[Fraction], Fraction]],
) -> Optional[list[Fraction]]:
    """A point satisfying sum(a*x) = c and sum(a*x) >= c systems, or None.

    Equalities are removed by Gaussian pivoting; the remaining free system
    goes through Fourier-Motzkin with back-substitution to recover a point.
    """
    eqs = [([Fraction(a) for a in coeffs], Fraction(c)) for coeffs, c in equalities]
    ineqs = [([Fraction(a) for a in coeffs], Fraction(c)) for coeffs, c in inequalities]

    # substitutions[var] = (expr_coeffs over all vars, const): var = expr + const
    substitutions: list[tuple[int, list[Fraction], Fraction]] = []
    for row, const in eqs:
        # Reduce by earlier pivots.
        for var, expr, e_const in substitutions:
            factor = row[var]
            if factor != 0:
                row[var] = Fraction(0)
                for k in range(nvars):
                    row[k] += factor * expr[k]
                const -= factor * e_const
        pivot = next((k for k in range(nvars) if row[k] != 0), None)
        if pivot is None:
            if const != 0:
                return None
            continue
        pv = row[pivot]
        expr = [-row[k] / pv for k in range(nvars)]
        expr[pivot] = Fraction(0)
        e_const = const / pv
        # Substitute the new pivot into previous substitutions.
        for idx, (var, old_expr, old_const) in enumerate(substitutions):
            factor = old_expr[pivot]
            if factor != 0:
                old_expr[pivot] = Fraction(0)
                for k in range(nvars):
                    old_expr[k] += factor * expr[k]
                substitutions[idx] = (var, old_expr, old_const + factor * e_const)
        substitutions.append((pivot, expr, e_const))

    pivot_vars = {var for var, _, _ in substitutions}
    free_vars = [k for k in range(nvars) if k not in pivot_vars]
    position = {var: idx for idx, var in enumerate(free_vars)}

    reduced: set[tuple[Row, Fraction]] = set()
    for row, const in ineqs:
        row = list(row)
        for var, expr, e_const in substitutions:
            factor = row[var]
            if factor != 0:
                row[var] = Fraction(0)
                for k in range(nvars):
                    row[k] += factor * expr[k]
                const -= factor * e_const
        coeffs = [row[v] for v in free_vars]
        if all(c == 0 for c in coeffs):
            if const > 0:
                return None
            continue
        reduced.add(_normalize_inequality(coeffs, const))

    free_point = _fourier_motzkin_point(len(free_vars), list(reduced))
    if free_point is None:
        return None

    values: list[Optional[Fraction]] = [None] * nvars
    for var in free_vars:
        values[var] = free_point[position[var]]
    for var, expr, e_const in reversed(substitutions):
        acc = e_const
        for k in range(nvars):
            if expr[k] != 0:
                acc += expr[k] * values[k]  # type: ignore[operator]
        values[var] = acc
    assert all(v is not None for v in values)
    return values  # type: ignore[return-value]


def _fourier_motzkin_point(
    nvars: int, ineqs: list[tuple[Row, Fraction]]
) -> Optional[list[Fraction]]:
    """Point satisfying sum(a*x) >= c constraints, by variable elimination."""
    if nvars == 0:
        return [] if all(c <= 0 for _, c in ineqs) else None
    var = nvars - 1
    lowers = []  # x_var >= expr
    uppers = []  # x_var <= expr
    rest = set()
    for coeffs, const in ineqs:
        a = coeffs[var]
        head = coeffs[:var]
        if a == 0:
            rest.add((head, const))
        elif a > 0:
            lowers.append(([-c / a for c in head], const / a))
        else:
            uppers.append(([-c / a for c in head], const / a))
    for lo_coeffs, lo_const in lowers:
        for up_coeffs, up_const in uppers:
            # lower bound <= upper bound
            diff = [u - l for u, l in zip(up_coeffs, lo_coeffs)]
            const = lo_const - up_const
            if all(c == 0 for c in diff):
                if const > 0:
                    return None
                continue
            rest.add(_normalize_inequality(diff, const))
    point = _fourier_motzkin_point(var, list(rest))
    if point is None:
        return None
    lo = None
    for coeffs, const in lowers:
        val = const + sum((c * p for c, p in zip(coeffs, point)), Fraction(0))
        lo = val if lo is None or val > lo else lo
    hi = None
    for coeffs, const in uppers:
        val = const + sum((c * p for c, p in zip(coeffs, point)), Fraction(0))
        hi = val if hi is None or val < hi else hi
    if lo is not None and hi is not None and lo > hi:
        return None
    if lo is not None:
        choice = lo
    elif hi is not None:
        choice = hi
    else:
        choice = Fraction(0)
    return point + [choice]


class TwoVarSystem:
    """Constraints of the forms x_i + x_j >= c, x_i + x_j <= c, x_i >= c,
    x_i <= c, solved exactly by negative-cycle detection.

    Nodes 2i and 2i+1 stand for +x_i and -x_i; an edge p -> q of weight w
    encodes phi(q) <= phi(p) + w for the potential phi(+x) = x. A model is
    read off Bellman-Ford distances as x_i = (d(+x_i) - d(-x_i)) / 2.
    """

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.edges: list[tuple[int, int, Fraction]] = []

    def _pos(self, i: int) -> int:
        return 2 * i

    def _neg(self, i: int) -> int:
        return 2 * i + 1

    def add_sum_ge(self, i: int, j: int, c: Fraction) -> None:
        if i == j:
            # 2 x_i >= c
            self.edges.append((self._pos(i), self._neg(i), -c))
            return
        self.edges.append((self._pos(i), self._neg(j), -c))
        self.edges.append((self._pos(j), self._neg(i), -c))

    def add_sum_le(self, i: int, j: int, c: Fraction) -> None:
        if i == j:
            self.edges.append((self._neg(i), self._pos(i), c))
            return
        self.edges.append((self._neg(i), self._pos(j), c))
        self.edges.append((self._neg(j), self._pos(i), c))

    def add_sum_eq(self, i: int, j: int, c: Fraction) -> None:
        self.add_sum_ge(i, j, c)
        self.add_sum_le(i, j, c)

    def solve(self) -> Optional[list[Fraction]]:
        """A satisfying assignment, or None when a negative cycle exists."""
        node_count = 2 * self.nvars
        # Clear denominators once so relaxation runs on integers.
        lcm = 1
        for _, _, w in self.edges:
            lcm = lcm * w.denominator // gcd(lcm, w.denominator)
        edges = [(p, q, int(w * lcm)) for p, q, w in self.edges]
        dist = [0] * node_count
        for sweep in range(node_count):
            changed = False
            for p, q, w in edges:
                cand = dist[p] + w
                if cand < dist[q]:
                    dist[q] = cand
                    changed = True
            if not changed:
                break
        else:
            for p, q, w in edges:
                if dist[p] + w < dist[q]:
                    return None
        return [
            Fraction(dist[self._pos(i)] - dist[self._neg(i)], 2 * lcm)
            for i in range(self.nvars)
        ]
