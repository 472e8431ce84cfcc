"""Desk-scale versions of the enumeration and design experiments.

1. enumeration timings per ``n``
2. number of games per MWC count (rank histogram)
3. optimal-error statistics over random canonical targets
4. bounded anytime convergence traces (indexed by games scored, not time)
"""
from __future__ import annotations

import csv
import json
import statistics
import time
from dataclasses import dataclass, field

from .design import best_error_table, sample_canonical_target, solve_pvgd
from .enumeration import count_by_rank, enumerate_cwvg


@dataclass
class ExperimentConfig:
    experiment: int
    players: list = field(default_factory=lambda: [1, 2, 3, 4, 5])
    instances: int = 100
    seed: int = 0
    max_games: int | None = 10_000
    order: str = "breadth_first"

    def __post_init__(self):
        if self.experiment not in (1, 2, 3, 4):
            raise ValueError("experiment must be 1, 2, 3 or 4")
        if not self.players or any(not isinstance(n, int) or n < 1 for n in self.players):
            raise ValueError("players must be a non-empty list of positive integers")
        if self.instances < 1:
            raise ValueError("instances must be positive")
        if self.max_games is not None and self.max_games < 1:
            raise ValueError("max_games must be positive")


def experiment_timings(cfg: ExperimentConfig):
    for n in cfg.players:
        start = time.perf_counter()
        total = sum(1 for _ in enumerate_cwvg(n, cfg.order))
        yield {"n": n, "games": total, "seconds": round(time.perf_counter() - start, 4)}


def experiment_histograms(cfg: ExperimentConfig):
    for n in cfg.players:
        for rank, count in count_by_rank(n, cfg.order).items():
            yield {"n": n, "mwcs": rank, "games": count}


def _targets(n, cfg):
    return [sample_canonical_target(n, [cfg.seed, n, k]) for k in range(cfg.instances)]


def experiment_errors(cfg: ExperimentConfig):
    for n in cfg.players:
        errs = [float(e) for e in best_error_table(n, _targets(n, cfg), cfg.order)]
        yield {
            "n": n,
            "instances": len(errs),
            "mean_error": statistics.fmean(errs),
            "worst_error": max(errs),
            "stddev_error": statistics.pstdev(errs),
        }


def experiment_convergence(cfg: ExperimentConfig):
    for n in cfg.players:
        for k, target in enumerate(_targets(n, cfg)):
            report = solve_pvgd(target, n, order=cfg.order, max_games=cfg.max_games)
            for imp in report.improvements:
                yield {
                    "n": n, "instance": k, "games_scored": imp.games_scored,
                    "error": imp.error, "exhausted": report.exhausted,
                }


RUNNERS = {
    1: experiment_timings,
    2: experiment_histograms,
    3: experiment_errors,
    4: experiment_convergence,
}


def run_experiment(cfg: ExperimentConfig):
    return list(RUNNERS[cfg.experiment](cfg))


def write_rows(rows, fh, fmt: str = "csv") -> None:
    rows = list(rows)
    if fmt == "jsonl":
        for row in rows:
            fh.write(json.dumps(row) + "\n")
        return
    if not rows:
        return
    writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
    writer.writeheader()
    writer.writerows(rows)
