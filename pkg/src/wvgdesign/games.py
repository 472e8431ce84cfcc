"""Simple games in their list and weighted representations.

A :class:`Game` couples a player count with one representation form.  List
forms keep their coalitions PR-lexi sorted and duplicate free.  Evaluation
goes through a bit-parallel truth table when the player count allows it and
falls back to scanning the list otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import lcm

import numpy as np

from . import coalitions as co
from . import tables


class MalformedGameError(ValueError):
    pass


class NotMonotoneError(ValueError):
    pass


class NotCanonicalError(ValueError):
    """The game is not canonical linear.

    ``order`` is the desirability order when the game is linear but its
    players are not labelled canonically, and ``None`` when it is not linear.
    """

    def __init__(self, message, order=None):
        super().__init__(message)
        self.order = order


class Form(str, Enum):
    W = "w"
    L = "l"
    WMIN = "wmin"
    LMAX = "lmax"
    ROOF = "roof"
    CEIL = "ceil"
    WEIGHTS = "weights"


ANTICHAIN_FORMS = {Form.WMIN, Form.LMAX, Form.ROOF, Form.CEIL}


@dataclass(frozen=True)
class WeightVector:
    """Quota and player weights ``[q; w_1, ..., w_n]`` as exact rationals."""

    quota: Fraction
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        q = Fraction(self.quota)
        w = tuple(Fraction(x) for x in self.weights)
        if q < 0 or any(x < 0 for x in w):
            raise MalformedGameError("quota and weights must be nonnegative")
        if not w:
            raise MalformedGameError("at least one player required")
        object.__setattr__(self, "quota", q)
        object.__setattr__(self, "weights", w)

    @classmethod
    def parse(cls, text: str) -> WeightVector:
        """Parse the shell shorthand ``"q;w1,w2,..."`` (``p/q`` allowed)."""
        text = text.strip().strip("[]")
        try:
            q, rest = text.split(";")
            return cls(Fraction(q.strip()), tuple(Fraction(x.strip()) for x in rest.split(",")))
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedGameError(f"cannot parse weights {text!r}: {exc}") from None

    @property
    def n(self) -> int:
        return len(self.weights)

    def weight(self, S: int) -> Fraction:
        n = self.n
        return sum((self.weights[i - 1] for i in co.players(S, n)), Fraction(0))

    def is_winning(self, S: int) -> bool:
        return self.weight(S) >= self.quota

    def scaled(self, factor) -> WeightVector:
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return WeightVector(self.quota * factor, tuple(w * factor for w in self.weights))

    def as_integers(self) -> WeightVector:
        den = lcm(self.quota.denominator, *(w.denominator for w in self.weights))
        return self.scaled(den)

    def __str__(self):
        return f"[{self.quota}; {', '.join(str(w) for w in self.weights)}]"


def _weights_table(wv: WeightVector) -> int:
    iv = wv.as_integers()
    q = int(iv.quota)
    w = [int(x) for x in iv.weights]
    dtype = np.int64 if sum(w) < 2**62 else object
    sums = np.zeros(1, dtype=dtype)
    n = wv.n
    for k in range(n):
        sums = np.concatenate([sums, sums + w[n - 1 - k]])
    win = sums >= q
    return int.from_bytes(np.packbits(win, bitorder="little").tobytes(), "little")


def _shift_closed(table: int, n: int, left: bool) -> int:
    """Close ``table`` under direct left-shifts (or right-shifts)."""
    while True:
        new = table
        for i in range(1, n):
            lo = 1 << (n - i - 1)
            hi = lo << 1
            m_lo, m_hi = tables.member_mask(lo, n), tables.member_mask(hi, n)
            if left:
                new |= (table & m_lo & ~m_hi) << lo
            else:
                new |= (table & m_hi & ~m_lo) >> lo
        if new == table:
            return table
        table = new


@dataclass(frozen=True)
class Game:
    """A simple game on players ``1..n`` in one representation form."""

    n: int
    form: Form
    coalitions: tuple[int, ...] = ()
    weights: WeightVector | None = field(default=None, compare=False)

    def __post_init__(self):
        co.check_n(self.n)
        form = Form(self.form)
        object.__setattr__(self, "form", form)
        if form is Form.WEIGHTS:
            if self.weights is None or self.weights.n != self.n:
                raise MalformedGameError("weighted form needs a weight vector of length n")
            if self.coalitions:
                raise MalformedGameError("weighted form carries no coalition list")
            return
        limit = 1 << self.n
        for S in self.coalitions:
            if not isinstance(S, int) or not 0 <= S < limit:
                raise MalformedGameError(f"coalition {S!r} outside {self.n} players")
        ordered = tuple(co.pr_sorted(self.coalitions, self.n))
        object.__setattr__(self, "coalitions", ordered)
        if form in ANTICHAIN_FORMS:
            for A, B in combinations(ordered, 2):
                if A & B in (A, B):
                    raise MalformedGameError(
                        f"{form.value} list is not an antichain: "
                        f"{co.to_bitstring(A, self.n)} vs {co.to_bitstring(B, self.n)}"
                    )

    @classmethod
    def weighted(cls, quota, weights) -> Game:
        wv = WeightVector(Fraction(quota), tuple(Fraction(w) for w in weights))
        return cls(wv.n, Form.WEIGHTS, weights=wv)

    @classmethod
    def from_lists(cls, form, n: int, members) -> Game:
        """Build a list form from player collections, e.g. ``[[1, 2], [3]]``."""
        return cls(n, Form(form), tuple(co.from_players(m, n) for m in members))

    @cached_property
    def table(self) -> int:
        if self.n > tables.MAX_TABLE_PLAYERS:
            raise ValueError(f"truth tables are limited to {tables.MAX_TABLE_PLAYERS} players")
        n, form = self.n, self.form
        base = tables.from_coalitions(self.coalitions)
        full = tables.universe(n)
        if form is Form.W:
            return base
        if form is Form.L:
            return full & ~base
        if form is Form.WMIN:
            return tables.upward_closure(base, n)
        if form is Form.LMAX:
            return full & ~tables.downward_closure(base, n)
        if form is Form.ROOF:
            return tables.upward_closure(_shift_closed(base, n, left=True), n)
        if form is Form.CEIL:
            losing = tables.downward_closure(_shift_closed(base, n, left=False), n)
            return full & ~losing
        return _weights_table(self.weights)

    def is_winning(self, S: int) -> bool:
        if self.n <= tables.MAX_TABLE_PLAYERS:
            return bool(self.table >> S & 1)
        return self._scan(S)

    def _scan(self, S: int) -> bool:
        n, form, cs = self.n, self.form, self.coalitions
        if form is Form.W:
            return S in cs
        if form is Form.L:
            return S not in cs
        if form is Form.WMIN:
            return any(M & S == M for M in cs)
        if form is Form.LMAX:
            return not any(S & M == S for M in cs)
        if form is Form.ROOF:
            return any(co.dominates_left_shift(S, R, n) for R in cs)
        if form is Form.CEIL:
            full = co.grand(n)
            return not any(co.dominates_left_shift(full ^ S, full ^ C, n) for C in cs)
        return self.weights.is_winning(S)

    def minimal_winning(self) -> tuple[int, ...]:
        if self.form is Form.WMIN:
            return self.coalitions
        return tuple(co.pr_sorted(tables.members(tables.minimal(self.table, self.n)), self.n))

    def maximal_losing(self) -> tuple[int, ...]:
        if self.form is Form.LMAX:
            return self.coalitions
        return tuple(co.pr_sorted(tables.members(tables.maximal_losing(self.table, self.n)), self.n))

    def is_monotone(self) -> bool:
        return tables.is_monotone(self.table, self.n)

    def same_game(self, other: Game) -> bool:
        return self.n == other.n and self.table == other.table

    def __str__(self):
        if self.form is Form.WEIGHTS:
            return str(self.weights)
        body = ", ".join(co.to_bitstring(S, self.n) for S in self.coalitions)
        return f"{self.form.value}{{{body}}}"


def wins_by_mwc(wmin, S: int) -> bool:
    return any(M & S == M for M in wmin)


# -- desirability -------------------------------------------------------------

def _at_least_as_desirable(wmin, n: int, i: int, j: int) -> bool:
    """Swap test: ``i >= j`` iff swapping ``j`` for ``i`` in every MWC that
    holds ``j`` but not ``i`` leaves it winning."""
    bi, bj = co.player_bit(i, n), co.player_bit(j, n)
    for S in wmin:
        if S & bj and not S & bi and not wins_by_mwc(wmin, (S ^ bj) | bi):
            return False
    return True


def desirability_compare(wmin, n: int, i: int, j: int) -> str:
    """One of ``"more"``, ``"equal"``, ``"less"``, ``"incomparable"``."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("players must lie in 1..n")
    if i == j:
        return "equal"
    ij = _at_least_as_desirable(wmin, n, i, j)
    ji = _at_least_as_desirable(wmin, n, j, i)
    if ij and ji:
        return "equal"
    if ij:
        return "more"
    if ji:
        return "less"
    return "incomparable"


@dataclass(frozen=True)
class DesirabilityOrder:
    """Players grouped into equal-desirability classes, most desirable first."""

    classes: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.classes)

    @property
    def is_canonical(self) -> bool:
        flat = [p for c in self.classes for p in sorted(c)]
        return flat == list(range(1, self.n + 1))

    @property
    def relabelling(self) -> tuple[int, ...]:
        """``relabelling[i - 1]`` is the canonical label of player ``i``."""
        flat = [p for c in self.classes for p in sorted(c)]
        out = [0] * len(flat)
        for new, old in enumerate(flat, start=1):
            out[old - 1] = new
        return tuple(out)


def desirability_order(wmin, n: int) -> DesirabilityOrder | None:
    """The desirability order of the game with MWCs ``wmin``; ``None`` when
    some pair of players is incomparable (the game is not linear)."""
    wmin = tuple(wmin)
    ge = [[True] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            ge[i][j] = _at_least_as_desirable(wmin, n, i, j)
            ge[j][i] = _at_least_as_desirable(wmin, n, j, i)
            if not ge[i][j] and not ge[j][i]:
                return None
    score = {i: sum(ge[i][j] for j in range(1, n + 1)) for i in range(1, n + 1)}
    ranked = sorted(range(1, n + 1), key=lambda i: (-score[i], i))
    classes = [[ranked[0]]]
    for p in ranked[1:]:
        if ge[p][classes[-1][0]]:
            classes[-1].append(p)
        else:
            classes.append([p])
    return DesirabilityOrder(tuple(tuple(c) for c in classes))


check_linear_canonical = desirability_order


def require_canonical(wmin, n: int) -> DesirabilityOrder:
    order = desirability_order(wmin, n)
    if order is None:
        raise NotCanonicalError("game is not linear")
    if not order.is_canonical:
        raise NotCanonicalError("game is linear but players are not in canonical order", order)
    return order


def permute(coalitions, relabelling, n: int) -> list[int]:
    """Apply ``relabelling`` (old player -> new player) to every coalition."""
    out = []
    for S in coalitions:
        out.append(co.from_players((relabelling[p - 1] for p in co.players(S, n)), n))
    return out


# -- list filters -------------------------------------------------------------

def mwc_from_w(W, n: int) -> list[int]:
    Wset = set(W)
    full = co.grand(n)
    for S in Wset:
        for i in range(n):
            if not S >> i & 1 and (S | 1 << i) not in Wset:
                raise NotMonotoneError("winning list is not closed under supersets")
        if S > full:
            raise MalformedGameError("coalition outside player range")
    out = [S for S in Wset if not any(S & ~(1 << i) in Wset for i in range(n) if S >> i & 1)]
    return co.pr_sorted(out, n)


def mlc_from_l(L, n: int) -> list[int]:
    Lset = set(L)
    for S in Lset:
        for i in range(n):
            if S >> i & 1 and (S & ~(1 << i)) not in Lset:
                raise NotMonotoneError("losing list is not closed under subsets")
    out = [S for S in Lset if not any(S | 1 << i in Lset for i in range(n) if not S >> i & 1)]
    return co.pr_sorted(out, n)


def roofs_from_mwc(wmin, n: int) -> list[int]:
    wmin = tuple(wmin)
    require_canonical(wmin, n)
    out = [
        S for S in wmin
        if not any(wins_by_mwc(wmin, R) for R in co.direct_right_shifts(S, n))
    ]
    return co.pr_sorted(out, n)


def ceilings_from_mlc(lmax, n: int) -> list[int]:
    lmax = tuple(lmax)
    full = co.grand(n)
    # The dual game (MWCs = complements of MLCs) has the same desirability.
    require_canonical([full ^ M for M in lmax], n)

    def losing(S):
        return any(S & M == S for M in lmax)

    out = [
        S for S in lmax
        if not any(losing(T) for T in co.direct_left_shifts(S, n))
    ]
    return co.pr_sorted(out, n)


# -- fixtures -----------------------------------------------------------------

def encoding_coalition(k: int, i: int) -> int:
    """The ``(k, i)``-encoding coalition over ``4 i`` players.

    Bit ``j`` of ``k`` (most significant first) selects players
    ``4(j-1)+1, 4(j-1)+4`` when set and ``4(j-1)+2, 4(j-1)+3`` otherwise.
    """
    if i < 1 or not 0 <= k < 2**i:
        raise ValueError("need i >= 1 and 0 <= k < 2**i")
    n = 4 * i
    members = []
    for j in range(1, i + 1):
        base = 4 * (j - 1)
        if k >> (i - j) & 1:
            members += [base + 1, base + 4]
        else:
            members += [base + 2, base + 3]
    return co.from_players(members, n)


def ibit_roof_game(i: int) -> Game:
    if i < 1 or 4 * i > co.MAX_PLAYERS:
        raise ValueError("need 1 <= i and 4 i <= 64")
    return Game(4 * i, Form.ROOF, tuple(encoding_coalition(k, i) for k in range(2**i)))
