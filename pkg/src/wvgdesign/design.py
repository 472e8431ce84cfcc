"""Anytime exact search for the game whose Banzhaf index is closest to a target."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import tables
from .enumeration import DEFAULT_MAX_PLAYERS, enumerate_antichains, enumerate_cwvg
from .power import BanzhafIndex

SUM_TOLERANCE = 1e-12


# -- targets ------------------------------------------------------------------

def canonicalize_target(target):
    """Sort ``target`` non-increasingly.

    Returns ``(sorted_target, order)`` where ``order[k]`` is the original
    position of the ``k``-th sorted entry, so a canonical solution can be
    permuted back onto the original players.
    """
    values = [float(x) for x in target]
    order = sorted(range(len(values)), key=lambda i: (-values[i], i))
    return tuple(values[i] for i in order), tuple(order)


def validate_target(target, n: int | None = None) -> tuple[float, ...]:
    p = tuple(float(x) for x in target)
    if not p:
        raise ValueError("target must be non-empty")
    if n is not None and len(p) != n:
        raise ValueError(f"target has {len(p)} entries, expected {n}")
    if any(not math.isfinite(x) or x < 0 for x in p):
        raise ValueError("target entries must be finite and nonnegative")
    if abs(math.fsum(p) - 1.0) > SUM_TOLERANCE:
        raise ValueError(f"target must sum to 1 (got {math.fsum(p)!r})")
    if any(a < b for a, b in zip(p, p[1:])):
        raise ValueError("target is not canonical (non-increasing); see canonicalize_target")
    return p


def sample_canonical_target(n: int, rng_seed=None) -> tuple[float, ...]:
    """Uniform point of the unit simplex, sorted non-increasingly."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(rng_seed)
    cuts = np.sort(rng.random(n - 1))
    spacings = np.diff(np.concatenate(([0.0], cuts, [1.0])))
    return tuple(float(x) for x in sorted(spacings, reverse=True))


# -- reports ------------------------------------------------------------------

@dataclass(frozen=True)
class Improvement:
    elapsed: float
    games_scored: int
    error: float
    index: tuple[Fraction, ...]
    weights: object
    wmin: tuple[int, ...]


@dataclass
class SolveReport:
    """Outcome of one anytime run.

    ``improvements`` holds every strict improvement in order; ``exhausted`` is
    true only when the whole game class was scanned, in which case ``best`` is
    optimal.  ``ties`` counts later games matching the best error exactly
    (the first one found is kept).
    """

    n: int
    target: tuple[float, ...]
    improvements: list[Improvement] = field(default_factory=list)
    exhausted: bool = False
    interrupted: bool = False
    games_scored: int = 0
    ties: int = 0
    elapsed: float = 0.0

    @property
    def best(self) -> Improvement | None:
        return self.improvements[-1] if self.improvements else None


def _error(raw, total, target) -> float:
    return math.sqrt(math.fsum((r / total - p) ** 2 for r, p in zip(raw, target)))


def _scan(report: SolveReport, games, max_games, time_budget, on_improvement, clock):
    start = clock()
    best = math.inf
    try:
        for node in games:
            if max_games is not None and report.games_scored >= max_games:
                break
            if time_budget is not None and clock() - start >= time_budget:
                break
            report.games_scored += 1
            table, wmin, weights = node
            raw = tables.raw_banzhaf(table, report.n)
            total = sum(raw)
            if total == 0:
                continue
            err = _error(raw, total, report.target)
            if err < best:
                best = err
                rec = Improvement(
                    clock() - start, report.games_scored, err,
                    BanzhafIndex.from_raw(raw).normalized, weights, wmin,
                )
                report.improvements.append(rec)
                report.ties = 0
                if on_improvement is not None:
                    on_improvement(rec)
            elif err == best:
                report.ties += 1
        else:
            report.exhausted = True
    except KeyboardInterrupt:
        report.interrupted = True
    report.elapsed = clock() - start
    return report


def solve_pvgd(target, n: int | None = None, *, order: str = "breadth_first", max_games=None,
               time_budget=None, on_improvement=None, workers=None,
               max_n: int = DEFAULT_MAX_PLAYERS, clock=time.perf_counter) -> SolveReport:
    """Closest canonical weighted voting game to ``target`` in Banzhaf distance.

    Scores games as the enumerator emits them and records each strict
    improvement.  Stops early at ``max_games`` scored games or after
    ``time_budget`` seconds.  Games without swings (all-winning, all-losing)
    are counted but never chosen.
    """
    n = len(target) if n is None else n
    p = validate_target(target, n)
    report = SolveReport(n, p)
    games = (
        (node.table, node.wmin, node.witness)
        for node in enumerate_cwvg(n, order, workers=workers, max_n=max_n)
    )
    return _scan(report, games, max_games, time_budget, on_improvement, clock)


def solve_monotonic_pvgd(target, n: int | None = None) -> SolveReport:
    """Exact optimum over all monotone simple games on ``n <= 4`` players."""
    n = len(target) if n is None else n
    p = validate_target(target, n)
    report = SolveReport(n, p)
    games = (
        (tables.upward_closure(tables.from_coalitions(ac), n), ac, None)
        for ac in enumerate_antichains(n)
    )
    return _scan(report, games, None, None, None, time.perf_counter)


def best_error_table(n: int, targets, order: str = "breadth_first") -> np.ndarray:
    """Optimal errors for many targets at once (full enumeration, vectorised)."""
    idx = []
    for node in enumerate_cwvg(n, order):
        raw = tables.raw_banzhaf(node.table, n)
        total = sum(raw)
        if total:
            idx.append([r / total for r in raw])
    idx = np.array(idx)
    out = []
    for p in targets:
        d = np.sqrt(((idx - np.asarray(p)) ** 2).sum(axis=1))
        out.append(d.min())
    return np.array(out)
