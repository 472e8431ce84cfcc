"""Exact simplex for small linear programs in canonical form.

Solves ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0`` so the slack basis
is feasible from the start.  Arithmetic is fraction-free: the condensed
tableau holds Python integers with one shared denominator, and every pivot
divides exactly by the previous pivot element (Bareiss/Edmonds).  Bland's
rule picks entering and leaving variables, so the method cannot cycle.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm


class UnboundedError(ArithmeticError):
    pass


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    x: tuple[Fraction, ...]
    pivots: int


def _integer_row(values) -> list[int]:
    fr = [v if isinstance(v, int) else Fraction(v) for v in values]
    den = 1
    for v in fr:
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    return [int(v * den) for v in fr]


def maximize(c, A, b) -> LPResult:
    m, nv = len(A), len(c)
    if any(Fraction(v) < 0 for v in b):
        raise ValueError("right-hand sides must be nonnegative")
    # rows: [a_1 .. a_nv, rhs]; last row is the objective with -c.
    T = []
    for row, rhs in zip(A, b):
        if len(row) != nv:
            raise ValueError("constraint width does not match objective")
        T.append(_integer_row(list(row) + [rhs]))
    obj = _integer_row([-Fraction(v) for v in c] + [0])
    cscale = 1
    for v in c:
        cscale = lcm(cscale, Fraction(v).denominator)
    T.append(obj)
    # Slack rows were scaled independently; the slack variable of each row is
    # rescaled implicitly, which leaves feasibility and optimum untouched.
    nonbasic = list(range(nv))            # labels of columns
    basic = list(range(nv, nv + m))       # labels of rows
    D = 1
    pivots = 0
    objrow = T[m]
    while True:
        s = -1
        best = None
        for j in range(nv):
            if objrow[j] < 0 and (best is None or nonbasic[j] < best):
                best, s = nonbasic[j], j
        if s < 0:
            break
        r = -1
        for i in range(m):
            a = T[i][s]
            if a > 0:
                if r < 0:
                    r = i
                    continue
                # compare rhs_i / a with rhs_r / a_r
                lhs = T[i][nv] * T[r][s]
                rhs = T[r][nv] * a
                if lhs < rhs or (lhs == rhs and basic[i] < basic[r]):
                    r = i
        if r < 0:
            raise UnboundedError("objective unbounded")
        p = T[r][s]
        prow = T[r]
        for i in range(m + 1):
            if i == r:
                continue
            row = T[i]
            f = row[s]
            if f:
                for j in range(nv + 1):
                    if j != s:
                        row[j] = (p * row[j] - f * prow[j]) // D
            else:
                for j in range(nv + 1):
                    if j != s:
                        row[j] = (p * row[j]) // D
            row[s] = -f
        prow[s] = D
        D = p
        basic[r], nonbasic[s] = nonbasic[s], basic[r]
        pivots += 1
    x = [Fraction(0)] * nv
    for i, label in enumerate(basic):
        if label < nv:
            x[label] = Fraction(T[i][nv], D)
    value = Fraction(objrow[nv], D * cscale)
    return LPResult(value, tuple(x), pivots)
