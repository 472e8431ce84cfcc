"""Banzhaf power index by exhaustive swing counting."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import tables
from .games import Form, WeightVector

MAX_WEIGHTED_PLAYERS = 30
_LOW_BITS = 20


@dataclass(frozen=True)
class BanzhafIndex:
    """Raw swing counts and their exact normalisation.

    ``degenerate`` marks games without any swing (all-winning or all-losing);
    their normalised index is set to the uniform vector.
    """

    raw: tuple[int, ...]
    normalized: tuple[Fraction, ...]
    degenerate: bool = False

    @classmethod
    def from_raw(cls, raw) -> BanzhafIndex:
        raw = tuple(int(x) for x in raw)
        total = sum(raw)
        if total == 0:
            return cls(raw, tuple(Fraction(1, len(raw)) for _ in raw), True)
        return cls(raw, tuple(Fraction(x, total) for x in raw), False)

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(x) for x in self.normalized)


def raw_banzhaf_weights(wv: WeightVector) -> list[int]:
    """Swing counts of a weighted game, split into a sorted table of low
    subset sums and a loop over high subsets (meet in the middle)."""
    n = wv.n
    if n > MAX_WEIGHTED_PLAYERS:
        raise ValueError(f"brute-force Banzhaf is limited to {MAX_WEIGHTED_PLAYERS} players")
    iv = wv.as_integers()
    q = int(iv.quota)
    w = [int(x) for x in iv.weights]
    if sum(w) + q >= 2**62:
        raise OverflowError("integer weights too large for 64-bit sums")
    out = []
    for i in range(n):
        others = np.array(w[:i] + w[i + 1:], dtype=np.int64)
        k = min(len(others), _LOW_BITS)
        low = _subset_sums(others[:k])
        low.sort()
        high = _subset_sums(others[k:])
        # S loses without i and wins with it: q - w_i <= w(S) < q
        hi_cnt = np.searchsorted(low, q - high, side="left")
        lo_cnt = np.searchsorted(low, q - w[i] - high, side="left")
        out.append(int((hi_cnt - lo_cnt).sum()))
    return out


def _subset_sums(values) -> np.ndarray:
    sums = np.zeros(1, dtype=np.int64)
    for v in values:
        sums = np.concatenate([sums, sums + v])
    return sums


def banzhaf(game) -> BanzhafIndex:
    """Exact Banzhaf index of a monotone game.

    Accepts a :class:`Game`, a :class:`WeightVector` or a ``(table, n)`` pair.
    """
    if isinstance(game, WeightVector):
        return BanzhafIndex.from_raw(raw_banzhaf_weights(game))
    if isinstance(game, tuple):
        table, n = game
        return BanzhafIndex.from_raw(tables.raw_banzhaf(table, n))
    if game.form is Form.WEIGHTS:
        return BanzhafIndex.from_raw(raw_banzhaf_weights(game.weights))
    if game.n > tables.MAX_TABLE_PLAYERS:
        raise ValueError(f"list-form Banzhaf is limited to {tables.MAX_TABLE_PLAYERS} players")
    return BanzhafIndex.from_raw(tables.raw_banzhaf(game.table, game.n))


def euclidean_error(index, target) -> float:
    index, target = list(index), list(target)
    if len(index) != len(target):
        raise ValueError(f"length mismatch: {len(index)} vs {len(target)}")
    return math.sqrt(sum((float(a) - float(b)) ** 2 for a, b in zip(index, target)))


__all__ = ["BanzhafIndex", "banzhaf", "raw_banzhaf_weights", "euclidean_error"]
