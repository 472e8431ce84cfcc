"""Coalitions as fixed-width bit vectors.

A coalition over players ``1..n`` is stored as a plain ``int``. Player ``i``
lives at bit ``n - i`` so that player 1 is the most significant position and
the textual form ``format(S, "0{n}b")`` reads left to right as players
``1..n`` (``"1100"`` is ``{1, 2}`` when ``n = 4``).

Operations that the underlying definitions leave undefined return ``None``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, total_ordering

MAX_PLAYERS = 64


def check_n(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= MAX_PLAYERS:
        raise ValueError(f"player count must be an integer in [1, {MAX_PLAYERS}], got {n!r}")
    return n


def player_bit(i: int, n: int) -> int:
    return 1 << (n - i)


def grand(n: int) -> int:
    return (1 << n) - 1


def from_players(players, n: int) -> int:
    S = 0
    for i in players:
        if not 1 <= i <= n:
            raise ValueError(f"player {i} outside 1..{n}")
        S |= 1 << (n - i)
    return S


def players(S: int, n: int) -> tuple[int, ...]:
    """Members of ``S`` in increasing player order."""
    return tuple(i for i in range(1, n + 1) if S >> (n - i) & 1)


def cardinality(S: int) -> int:
    return S.bit_count()


def characteristic_vector(S: int, n: int) -> tuple[int, ...]:
    return tuple(S >> (n - i) & 1 for i in range(1, n + 1))


def to_bitstring(S: int, n: int) -> str:
    return format(S, f"0{n}b") if n else ""


def parse_bitstring(text: str) -> tuple[int, int]:
    """Return ``(mask, n)`` for a string such as ``"0110"``."""
    text = text.strip()
    if not text or any(ch not in "01" for ch in text):
        raise ValueError(f"not a coalition bitstring: {text!r}")
    return int(text, 2), len(text)


def positional_rep(S: int, n: int) -> tuple[int, ...]:
    members = players(S, n)
    return members + (0,) * (n - len(members))


@lru_cache(maxsize=16)
def _pr_key_table(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(players(S, n) for S in range(1 << n))


def pr_key(S: int, n: int) -> tuple[int, ...]:
    # Sorted member tuples compare exactly like zero-padded positional
    # representations because every member is >= 1.
    if n <= 12:
        return _pr_key_table(n)[S]
    return players(S, n)


def pr_lexi_compare(S: int, T: int, n: int) -> int:
    """-1, 0 or 1 as ``S`` precedes, equals or follows ``T`` in PR-lexi order."""
    a, b = pr_key(S, n), pr_key(T, n)
    return (a > b) - (a < b)


def pr_sorted(coalitions, n: int) -> list[int]:
    return sorted(set(coalitions), key=lambda S: pr_key(S, n))


def highest(S: int, n: int) -> int | None:
    """Largest player in ``S`` (``b(S)``); undefined for the empty coalition."""
    if not S:
        return None
    return n - ((S & -S).bit_length() - 1)


def last_gap(S: int, n: int) -> int:
    """Largest ``j`` with ``j`` absent and ``j + 1`` present (``a(S)``), else 0."""
    for j in range(n - 1, 0, -1):
        if not S >> (n - j) & 1 and S >> (n - j - 1) & 1:
            return j
    return 0


def fill_up(S: int, n: int) -> int | None:
    # b(S) = n leaves no player to add; this covers S = N.
    if S & 1:
        return None
    b = highest(S, n) or 0
    return S | player_bit(b + 1, n)


def bottom_right_shift(S: int, n: int) -> int | None:
    if not S or S & 1:
        return None
    low = S & -S
    return (S ^ low) | (low >> 1)


def truncation(S: int, n: int) -> int:
    a = last_gap(S, n)
    # keep players 1..a only
    return S & ~((1 << (n - a)) - 1)


def immediate_successor(S: int, n: int) -> int | None:
    if not S & 1:
        return fill_up(S, n)
    rest = S & ~1
    if not rest:
        return None
    return bottom_right_shift(rest, n)


def right_truncation(S: int, i: int) -> int | None:
    """Remove the ``i`` highest-numbered players from ``S``."""
    if i < 0 or i > S.bit_count():
        return None
    for _ in range(i):
        S &= S - 1
    return S


def direct_left_shifts(S: int, n: int) -> list[int]:
    out = []
    for i in range(2, n + 1):
        bit = player_bit(i, n)
        if S & bit and not S & (bit << 1):
            out.append((S ^ bit) | (bit << 1))
    return out


def direct_right_shifts(S: int, n: int) -> list[int]:
    out = []
    for i in range(1, n):
        bit = player_bit(i, n)
        if S & bit and not S & (bit >> 1):
            out.append((S ^ bit) | (bit >> 1))
    return out


def is_left_shift(S2: int, S: int, n: int) -> bool:
    """True when ``S2`` is ``S`` or reachable from it by direct left-shifts."""
    if S2.bit_count() != S.bit_count():
        return False
    return all(x <= y for x, y in zip(players(S2, n), players(S, n)))


def is_proper_left_shift(S2: int, S: int, n: int) -> bool:
    return S2 != S and is_left_shift(S2, S, n)


def is_proper_right_shift(S2: int, S: int, n: int) -> bool:
    return is_proper_left_shift(S, S2, n)


def dominates_left_shift(S: int, R: int, n: int) -> bool:
    """Whether ``S`` contains some left-shift (or ``R`` itself) of ``R``.

    Comparing the ``|R|`` smallest members of ``S`` against ``R`` position by
    position suffices.
    """
    r = players(R, n)
    s = players(S, n)
    if len(s) < len(r):
        return False
    return all(x <= y for x, y in zip(s, r))


@total_ordering
@dataclass(frozen=True)
class Coalition:
    """A coalition together with its player count, ordered PR-lexi."""

    bits: int
    n: int

    def __post_init__(self):
        check_n(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits {self.bits:#x} exceed {self.n} players")

    @classmethod
    def of(cls, members, n: int) -> Coalition:
        return cls(from_players(members, n), n)

    @classmethod
    def parse(cls, text: str) -> Coalition:
        bits, n = parse_bitstring(text)
        return cls(bits, n)

    @property
    def players(self) -> tuple[int, ...]:
        return players(self.bits, self.n)

    def characteristic_vector(self) -> tuple[int, ...]:
        return characteristic_vector(self.bits, self.n)

    def positional_rep(self) -> tuple[int, ...]:
        return positional_rep(self.bits, self.n)

    def __len__(self):
        return self.bits.bit_count()

    def __contains__(self, player):
        return 1 <= player <= self.n and bool(self.bits >> (self.n - player) & 1)

    def __iter__(self):
        return iter(self.players)

    def __lt__(self, other):
        if not isinstance(other, Coalition) or other.n != self.n:
            return NotImplemented
        return pr_key(self.bits, self.n) < pr_key(other.bits, self.n)

    def __str__(self):
        return to_bitstring(self.bits, self.n)
