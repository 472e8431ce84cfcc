"""Bit-parallel truth tables for simple games.

The truth table of a game on ``n`` players is an ``int`` with ``2**n`` bits;
bit ``S`` is set iff coalition ``S`` wins.  Shift-and-mask identities on these
integers evaluate whole families of coalitions at once, which keeps
enumeration-scale workloads (millions of small games) out of per-coalition
Python loops.
"""
from __future__ import annotations

from functools import lru_cache

# Beyond this the table itself (2**n bits) becomes the bottleneck.
MAX_TABLE_PLAYERS = 24


@lru_cache(maxsize=64)
def universe(n: int) -> int:
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=2048)
def member_mask(bit: int, n: int) -> int:
    """Positions ``S`` of a table that contain the player at ``bit``."""
    size = 1 << n
    mask = ((1 << bit) - 1) << bit
    period = bit << 1
    while period < size:
        mask |= mask << period
        period <<= 1
    return mask


def _bits(n: int):
    return [1 << k for k in range(n)]


def from_coalitions(coalitions) -> int:
    table = 0
    for S in coalitions:
        table |= 1 << S
    return table


def members(table: int):
    """Yield the coalitions (set bits) of ``table`` in increasing mask order."""
    while table:
        low = table & -table
        yield low.bit_length() - 1
        table ^= low


def upward_closure(table: int, n: int) -> int:
    for b in _bits(n):
        table |= (table << b) & member_mask(b, n)
    return table


def downward_closure(table: int, n: int) -> int:
    full = universe(n)
    for b in _bits(n):
        table |= (table >> b) & ~member_mask(b, n) & full
    return table


def minimal(table: int, n: int) -> int:
    """Winning coalitions none of whose one-smaller subsets win."""
    covered = 0
    for b in _bits(n):
        covered |= (table << b) & member_mask(b, n)
    return table & ~covered


def maximal_losing(table: int, n: int) -> int:
    full = universe(n)
    losing = ~table & full
    covered = 0
    for b in _bits(n):
        covered |= (losing >> b) & ~member_mask(b, n)
    return losing & ~covered & full


def is_monotone(table: int, n: int) -> bool:
    return upward_closure(table, n) == table


def adjacent_violations(table: int, n: int, i: int) -> tuple[int, int]:
    """Witness sets against ``i >= i+1`` and against ``i+1 >= i``.

    The first is the set of coalitions ``S`` holding ``i + 1`` but not ``i``
    that win while the swap ``S - {i+1} + {i}`` loses.  The second is the
    mirror image.  Both empty means the two players are equally desirable.
    """
    lo = 1 << (n - i - 1)
    hi = lo << 1
    m_lo, m_hi = member_mask(lo, n), member_mask(hi, n)
    # S holds i+1 only: the swap is S + lo.
    only_lo = table & m_lo & ~m_hi
    against_i = only_lo & ~(table >> lo)
    # S holds i only: the swap is S - lo.
    only_hi = table & m_hi & ~m_lo
    against_next = only_hi & ~(table << lo)
    return against_i, against_next


def is_canonical(table: int, n: int) -> bool:
    """``1 >= 2 >= ... >= n`` under the desirability relation."""
    for i in range(1, n):
        if adjacent_violations(table, n, i)[0]:
            return False
    return True


def equal_classes(table: int, n: int) -> list[list[int]]:
    """Runs of equally desirable adjacent players of a canonical game."""
    classes = [[1]]
    for i in range(1, n):
        if adjacent_violations(table, n, i)[1]:
            classes.append([i + 1])
        else:
            classes[-1].append(i + 1)
    return classes


def roofs(table: int, n: int) -> int:
    """Minimal winning coalitions all of whose direct right-shifts lose."""
    mwc = minimal(table, n)
    bad = 0
    for i in range(1, n):
        lo = 1 << (n - i - 1)
        hi = lo << 1
        # S holds i but not i+1; its right-shift at i is S - lo.
        bad |= member_mask(hi, n) & ~member_mask(lo, n) & (table << lo)
    return mwc & ~bad


def ceilings(table: int, n: int) -> int:
    """Maximal losing coalitions all of whose direct left-shifts win."""
    mlc = maximal_losing(table, n)
    bad = 0
    for i in range(1, n):
        lo = 1 << (n - i - 1)
        hi = lo << 1
        # S holds i+1 but not i; its left-shift at i+1 is S + lo.
        bad |= member_mask(lo, n) & ~member_mask(hi, n) & ~(table >> lo)
    return mlc & ~bad


def raw_banzhaf(table: int, n: int) -> list[int]:
    """Swing counts per player (player 1 first)."""
    out = []
    for i in range(1, n + 1):
        b = 1 << (n - i)
        out.append((table & member_mask(b, n) & ~(table << b)).bit_count())
    return out
