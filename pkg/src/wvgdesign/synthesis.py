"""Conversion between game representations and exact weight synthesis."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import coalitions as co
from . import tables
from .games import (
    Form,
    Game,
    NotCanonicalError,
    WeightVector,
    ceilings_from_mlc,
    desirability_order,
    permute,
    require_canonical,
    roofs_from_mwc,
    wins_by_mwc,
)
from .lp import maximize


class NotWeightedError(ValueError):
    pass


class NotLinearError(NotWeightedError):
    pass


class ExponentialConversionError(ValueError):
    pass


def _evaluator(wmin, n: int):
    """Fast membership test for the game generated by ``wmin``."""
    if n <= tables.MAX_TABLE_PLAYERS:
        table = tables.upward_closure(tables.from_coalitions(wmin), n)
        return lambda S: bool(table >> S & 1)
    wmin = tuple(wmin)
    return lambda S: wins_by_mwc(wmin, S)


# -- shelters and Hop-Skip-and-Jump -------------------------------------------

def shelters(wmin, n: int, is_winning=None) -> list[int]:
    """MWCs whose bottom right-shift loses or is undefined, PR-lexi sorted.

    The empty coalition only shows up for the all-winning game, where it is
    the single MWC and its bottom right-shift is undefined.
    """
    if is_winning is None:
        is_winning = _evaluator(wmin, n)
    out = []
    for S in co.pr_sorted(wmin, n):
        shifted = co.bottom_right_shift(S, n)
        if shifted is None or not is_winning(shifted):
            out.append(S)
    return out


def hop_skip_jump(shelter_list, n: int) -> list[int]:
    """All maximal losing coalitions of a canonical linear game, from its
    PR-lexi sorted shelters.  Output is emitted in increasing PR-lexi order."""
    shelter_list = list(shelter_list)
    if not shelter_list:
        return [co.grand(n)]
    if 0 in shelter_list:
        # the empty coalition wins, so nothing loses
        return []
    out = []
    fill, brs, trunc, succ = (
        co.fill_up, co.bottom_right_shift, co.truncation, co.immediate_successor,
    )
    sentinel = -1           # never equal to a coalition
    it = iter(shelter_list)
    nxt = next(it)
    cur = 0
    while True:
        target = sentinel if nxt is None else nxt & (nxt - 1)
        while cur != target:
            if not cur & 1:
                cur = fill(cur, n)
            else:
                out.append(cur)
                cur = brs(trunc(cur, n), n)
                if cur is None:
                    return out
        if not nxt & 1:
            cur = brs(nxt, n)
        else:
            out.append(cur)
            if nxt == 1:
                return out
            cur = succ(nxt, n)
        nxt = next(it, None)


def max_losing_coalitions(wmin, n: int) -> list[int]:
    """MLCs of a linear game given by its MWCs (players relabelled as needed)."""
    wmin = co.pr_sorted(wmin, n)
    if not wmin:
        return [co.grand(n)]
    if wmin == [0]:
        return []
    order = desirability_order(wmin, n)
    if order is None:
        raise NotLinearError("game is not linear")
    if not order.is_canonical:
        fwd = order.relabelling
        back = _inverse(fwd)
        inner = max_losing_coalitions(permute(wmin, fwd, n), n)
        return co.pr_sorted(permute(inner, back, n), n)
    return hop_skip_jump(shelters(wmin, n), n)


def min_winning_from_lmax(lmax, n: int) -> list[int]:
    """MWCs of a linear game given by its MLCs, via the dual game."""
    full = co.grand(n)
    dual_lmax = max_losing_coalitions([full ^ S for S in lmax], n)
    return co.pr_sorted([full ^ S for S in dual_lmax], n)


def _inverse(relabelling) -> tuple[int, ...]:
    inv = [0] * len(relabelling)
    for old, new in enumerate(relabelling, start=1):
        inv[new - 1] = old
    return tuple(inv)


# -- ceilings straight from MWCs ----------------------------------------------

def ceiling_candidates(wmin, n: int) -> list[int]:
    cands = {co.grand(n) & ~((1 << (n - j)) - 1) for j in range(n + 1)}
    for S in wmin:
        if not S:
            continue
        b = co.highest(S, n)
        a = co.last_gap(S, n)
        bases = [S & ~co.player_bit(b, n)]
        if a >= 2 and S & co.player_bit(a - 1, n):
            bases.append((S & ~co.player_bit(a - 1, n)) | co.player_bit(a, n))
        for base in bases:
            tail = 0
            for k in range(0, n - b + 1):
                if k:
                    tail |= co.player_bit(b + k, n)
                cands.add(base | tail)
    return list(cands)


def is_ceiling(C: int, n: int, is_winning) -> bool:
    if is_winning(C):
        return False
    if not C & 1 and not is_winning(C | 1):
        return False
    return all(is_winning(T) for T in co.direct_left_shifts(C, n))


def ceilings_from_mwc(wmin, n: int, is_winning=None, check: bool = True) -> list[int]:
    """All ceilings of a canonical linear game given by its MWCs."""
    wmin = tuple(wmin)
    if check:
        require_canonical(wmin, n)
    if is_winning is None:
        is_winning = _evaluator(wmin, n)
    out = [C for C in ceiling_candidates(wmin, n) if is_ceiling(C, n, is_winning)]
    return co.pr_sorted(out, n)


# -- weight synthesis ---------------------------------------------------------

@dataclass
class FeasibilityProblem:
    """Linear separation problem over coalition rows.

    Seeks weights with ``w(S) >= q`` for every ``at_least`` row and
    ``w(S) < q`` for every ``strictly_less`` row.  ``classes`` merges players
    into shared variables; ``ordered`` adds ``w_1 >= ... >= w_n`` between
    consecutive classes.
    """

    n: int
    at_least: list = field(default_factory=list)
    strictly_less: list = field(default_factory=list)
    classes: list | None = None
    ordered: bool = False

    def __post_init__(self):
        if self.classes is None:
            self.classes = [[i] for i in range(1, self.n + 1)]
        seen = sorted(p for c in self.classes for p in c)
        if seen != list(range(1, self.n + 1)):
            raise ValueError("classes must partition the players")
        limit = 1 << self.n
        for S in list(self.at_least) + list(self.strictly_less):
            if not 0 <= S < limit:
                raise ValueError("coalition row outside the player range")

    def _class_counts(self, S):
        return [sum(1 for p in c if S >> (self.n - p) & 1) for c in self.classes]

    def solve(self) -> WeightVector:
        n = self.n
        if not self.strictly_less:
            return WeightVector(Fraction(0), (Fraction(0),) * n)
        if not self.at_least:
            return WeightVector(Fraction(1), (Fraction(0),) * n)
        k = len(self.classes)
        # variables: y_1..y_k, q, t; all rows homogeneous except the two bounds
        Q = k
        A, b = [], []
        for C in self.strictly_less:
            row = self._class_counts(C) + [-1, 1]
            A.append(row)
            b.append(0)
        for R in self.at_least:
            row = [-x for x in self._class_counts(R)] + [1, 0]
            A.append(row)
            b.append(0)
        if self.ordered:
            for c in range(k - 1):
                row = [0] * (k + 2)
                row[c + 1], row[c] = 1, -1
                A.append(row)
                b.append(0)
        A.append([len(c) for c in self.classes] + [0, 0])
        b.append(1)
        A.append([0] * (k + 1) + [1])
        b.append(1)
        c = [0] * (k + 1) + [1]
        res = maximize(c, A, b)
        if res.value <= 0:
            raise NotWeightedError("no strictly separating weighting exists")
        q = res.x[Q]
        w = [Fraction(0)] * n
        for y, cls in zip(res.x[:k], self.classes):
            for p in cls:
                w[p - 1] = y / q
        return WeightVector(Fraction(1), tuple(w))


def synth_weights(wmin, lmax, n: int) -> WeightVector:
    """Weights with quota 1 realising the game with these MWCs and MLCs."""
    wmin, lmax = list(wmin), list(lmax)
    if not wmin:
        return WeightVector(Fraction(1), (Fraction(0),) * n)
    if 0 in wmin:
        return WeightVector(Fraction(0), (Fraction(0),) * n)
    return FeasibilityProblem(n, at_least=wmin, strictly_less=lmax).solve()


def synth_weights_compact(roofs, ceilings, classes, n: int) -> WeightVector:
    """Same contract as :func:`synth_weights` for a canonical linear game,
    with rows only for roofs and ceilings and one variable per class."""
    roofs, ceilings = list(roofs), list(ceilings)
    if not roofs:
        return WeightVector(Fraction(1), (Fraction(0),) * n)
    if 0 in roofs:
        return WeightVector(Fraction(0), (Fraction(0),) * n)
    problem = FeasibilityProblem(
        n, at_least=roofs, strictly_less=ceilings,
        classes=[list(c) for c in classes], ordered=True,
    )
    return problem.solve()


def weights_from_wmin(wmin, n: int) -> WeightVector:
    """Full pipeline: linearity, relabelling, shelters, Hop-Skip-and-Jump, LP."""
    wmin = co.pr_sorted(wmin, n)
    if not wmin or wmin == [0]:
        return synth_weights(wmin, [], n)
    order = desirability_order(wmin, n)
    if order is None:
        raise NotLinearError("game is not linear, hence not weighted")
    if not order.is_canonical:
        fwd = order.relabelling
        inner = weights_from_wmin(permute(wmin, fwd, n), n)
        return WeightVector(inner.quota, tuple(inner.weights[fwd[i] - 1] for i in range(n)))
    lmax = hop_skip_jump(shelters(wmin, n), n)
    return synth_weights(wmin, lmax, n)


# -- conversion front end -----------------------------------------------------

P, EXP, OPEN = "P", "EXP", "?"
_ORDER = [Form.W, Form.WMIN, Form.L, Form.LMAX, Form.ROOF, Form.CEIL, Form.WEIGHTS]
_ROWS = {
    Form.W:       [None, P, EXP, P, P, P, P],
    Form.WMIN:    [EXP, None, EXP, P, P, P, P],
    Form.L:       [EXP, P, None, P, P, P, P],
    Form.LMAX:    [EXP, P, EXP, None, P, P, P],
    Form.ROOF:    [EXP, EXP, EXP, EXP, None, EXP, OPEN],
    Form.CEIL:    [EXP, EXP, EXP, EXP, EXP, None, OPEN],
    Form.WEIGHTS: [EXP, EXP, EXP, EXP, EXP, OPEN, None],
}
# Wmin <-> Lmax is polynomial only for linear games; checked at run time.
CONVERSION_COMPLEXITY = {
    (src, dst): _ROWS[src][j] for src in _ORDER for j, dst in enumerate(_ORDER) if src is not dst
}


def conversion_complexity(src, dst) -> str:
    src, dst = Form(src), Form(dst)
    if src is dst:
        return P
    return CONVERSION_COMPLEXITY[(src, dst)]


def _from_table(table: int, n: int, dst: Form) -> Game:
    if dst is Form.W:
        return Game(n, dst, tuple(tables.members(table)))
    if dst is Form.L:
        return Game(n, dst, tuple(tables.members(tables.universe(n) & ~table)))
    if dst is Form.WMIN:
        return Game(n, dst, tuple(tables.members(tables.minimal(table, n))))
    if dst is Form.LMAX:
        return Game(n, dst, tuple(tables.members(tables.maximal_losing(table, n))))
    wmin = tuple(tables.members(tables.minimal(table, n)))
    if dst is Form.ROOF:
        return Game(n, dst, tuple(roofs_from_mwc(wmin, n)))
    if dst is Form.CEIL:
        require_canonical(wmin, n)
        return Game(n, dst, tuple(tables.members(tables.ceilings(table, n))))
    wv = weights_from_wmin(wmin, n)
    return Game(n, Form.WEIGHTS, weights=wv)


def convert(game: Game, dst, allow_exponential: bool = False) -> Game:
    """Convert ``game`` to form ``dst``.

    Conversions without a known polynomial algorithm run by truth-table brute
    force and only when ``allow_exponential`` is set.
    """
    dst = Form(dst)
    src, n = game.form, game.n
    if src is dst:
        return game
    cls = conversion_complexity(src, dst)
    if src in (Form.WMIN, Form.LMAX) and dst in (Form.WMIN, Form.LMAX):
        wmin = game.coalitions if src is Form.WMIN else None
        probe = wmin if wmin is not None else [co.grand(n) ^ S for S in game.coalitions]
        if desirability_order(probe, n) is None:
            cls = EXP
    if cls != P:
        if not allow_exponential:
            raise ExponentialConversionError(
                f"{src.value} -> {dst.value} has no known polynomial algorithm "
                f"({cls}); pass allow_exponential to brute-force it"
            )
        return _from_table(game.table, n, dst)
    if src in (Form.W, Form.L):
        return _from_table(game.table, n, dst)
    if src is Form.WMIN:
        wmin = game.coalitions
        if dst is Form.LMAX:
            return Game(n, dst, tuple(max_losing_coalitions(wmin, n)))
        if dst is Form.ROOF:
            return Game(n, dst, tuple(roofs_from_mwc(wmin, n)))
        if dst is Form.CEIL:
            return Game(n, dst, tuple(ceilings_from_mwc(wmin, n)))
        return Game(n, dst, weights=weights_from_wmin(wmin, n))
    # src is Lmax
    lmax = game.coalitions
    if dst is Form.CEIL:
        return Game(n, dst, tuple(ceilings_from_mlc(lmax, n)))
    wmin = min_winning_from_lmax(lmax, n)
    if dst is Form.WMIN:
        return Game(n, dst, tuple(wmin))
    if dst is Form.ROOF:
        return Game(n, dst, tuple(roofs_from_mwc(wmin, n)))
    return Game(n, dst, weights=synth_weights(wmin, lmax, n))


__all__ = [
    "NotWeightedError", "NotLinearError", "NotCanonicalError", "ExponentialConversionError",
    "shelters", "hop_skip_jump", "max_losing_coalitions", "min_winning_from_lmax",
    "ceiling_candidates", "ceilings_from_mwc", "FeasibilityProblem", "synth_weights",
    "synth_weights_compact", "weights_from_wmin", "convert", "conversion_complexity",
    "CONVERSION_COMPLEXITY",
]
