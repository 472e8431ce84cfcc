"""Command line front end: ``wvg <command> ...``.

Exit codes: 0 success, 1 domain failure (not weighted, not linear, refused
conversion), 2 usage error, 130 interrupted.
"""
from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from pathlib import Path

from . import coalitions as co
from .design import canonicalize_target, sample_canonical_target, solve_pvgd, validate_target
from .enumeration import Checkpoint, enumerate_cwvg, node_to_record
from .experiments import ExperimentConfig, run_experiment, write_rows
from .games import Form, Game, MalformedGameError, NotCanonicalError, WeightVector
from .io import game_from_json, game_to_json, weights_to_json
from .power import banzhaf
from .synthesis import ExponentialConversionError, NotLinearError, NotWeightedError, convert

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_INTERRUPT = 0, 1, 2, 130
CI_MAX_PLAYERS = 7
EXTENDED_MAX_PLAYERS = 9


class UsageError(Exception):
    pass


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


@contextmanager
def _open_out(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _emit(fh, record):
    fh.write(json.dumps(record) + "\n")
    fh.flush()


def _cap(args):
    return EXTENDED_MAX_PLAYERS if getattr(args, "extended", False) else CI_MAX_PLAYERS


def _check_cap(n, args):
    cap = _cap(args)
    if n > cap:
        hint = "" if cap == EXTENDED_MAX_PLAYERS else " (pass --extended to go up to 9)"
        raise UsageError(f"n = {n} exceeds the limit {cap}{hint}")


# -- commands -----------------------------------------------------------------

def cmd_enumerate(args) -> int:
    _check_cap(args.n, args)
    if args.resume and not args.checkpoint:
        raise UsageError("--resume needs --checkpoint")
    hist: dict[int, int] = {}
    ckpt = Checkpoint(Path(args.checkpoint), args.n) if args.checkpoint else None
    nodes = enumerate_cwvg(
        args.n, args.order, workers=args.workers, checkpoint_dir=args.checkpoint,
        resume=args.resume, max_n=EXTENDED_MAX_PLAYERS,
    )
    status = EXIT_OK
    with _open_out(args.output) as fh:
        try:
            for node in nodes:
                if not args.summary_only:
                    fh.write(json.dumps(node_to_record(node)) + "\n")
                hist[node.rank] = hist.get(node.rank, 0) + 1
        except KeyboardInterrupt:
            status = EXIT_INTERRUPT
        if ckpt is not None and status == EXIT_OK:
            # covers ranks emitted by earlier, resumed runs as well
            hist = ckpt.histogram()
        summary = {
            "summary": True,
            "n": args.n,
            "total": sum(hist.values()),
            "histogram": {str(k): v for k, v in sorted(hist.items())},
            "complete": status == EXIT_OK,
        }
        _emit(fh, summary)
    return status


def cmd_count(args) -> int:
    _check_cap(args.n, args)
    hist: dict[int, int] = {}
    for node in enumerate_cwvg(args.n, args.order, workers=args.workers,
                               max_n=EXTENDED_MAX_PLAYERS):
        hist[node.rank] = hist.get(node.rank, 0) + 1
    print(json.dumps({"n": args.n, "total": sum(hist.values()),
                      "histogram": {str(k): v for k, v in sorted(hist.items())}}))
    return EXIT_OK


def _load_game(args) -> Game:
    if getattr(args, "weights", None):
        wv = WeightVector.parse(args.weights)
        return Game(wv.n, Form.WEIGHTS, weights=wv)
    src = args.input
    if src is None:
        raise UsageError("give --input FILE (or -) or --weights")
    text = sys.stdin.read() if src == "-" else Path(src).read_text()
    return game_from_json(text)


def cmd_convert(args) -> int:
    game = _load_game(args)
    try:
        out = convert(game, args.to, allow_exponential=args.allow_exponential)
    except NotLinearError as exc:
        # not linear implies not weighted; keep the finer cause alongside
        result = {"result": "not_weighted", "cause": "not_linear", "reason": str(exc)}
    except NotWeightedError as exc:
        result = {"result": "not_weighted", "cause": "lp_infeasible", "reason": str(exc)}
    except NotCanonicalError as exc:
        result = {"result": "not_canonical", "reason": str(exc)}
        if exc.order is not None:
            result["relabelling"] = list(exc.order.relabelling)
    except ExponentialConversionError as exc:
        result = {"result": "refused", "reason": str(exc)}
    else:
        with _open_out(args.output) as fh:
            _emit(fh, {"result": "ok", "game": game_to_json(out)})
        return EXIT_OK
    with _open_out(args.output) as fh:
        _emit(fh, result)
    return EXIT_DOMAIN


def cmd_banzhaf(args) -> int:
    game = _load_game(args)
    idx = banzhaf(game)
    if args.format == "json":
        print(json.dumps({
            "raw": list(idx.raw),
            "normalized": [str(x) for x in idx.normalized],
            "degenerate": idx.degenerate,
        }))
    else:
        print(",".join(str(x) for x in idx.normalized))
    return EXIT_OK


def _parse_target(args):
    if args.target:
        text = args.target
    elif args.target_file:
        text = Path(args.target_file).read_text()
    else:
        raise UsageError("give --target or --target-file")
    text = text.strip()
    try:
        if text.startswith("["):
            values = [float(x) for x in json.loads(text)]
        else:
            values = [float(x) for x in text.replace(",", " ").split()]
    except (ValueError, TypeError) as exc:
        raise UsageError(f"malformed target: {exc}") from None
    return values


def _improvement_record(imp, n):
    return {
        "elapsed": round(imp.elapsed, 6),
        "games_scored": imp.games_scored,
        "error": imp.error,
        "index": [str(x) for x in imp.index],
        "weights": weights_to_json(imp.weights) if imp.weights is not None else None,
        "wmin": [co.to_bitstring(S, n) for S in imp.wmin],
    }


def cmd_solve(args) -> int:
    values = _parse_target(args)
    n = args.n or len(values)
    order = tuple(range(n))
    if args.sort_target:
        values, order = canonicalize_target(values)
    try:
        target = validate_target(values, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    budgeted = args.games_budget is not None or args.time_budget is not None
    if not budgeted:
        _check_cap(n, args)
    elif n > EXTENDED_MAX_PLAYERS:
        raise UsageError(f"n = {n} exceeds the limit {EXTENDED_MAX_PLAYERS}")

    def stream(imp):
        _emit(sys.stdout, {"improvement": _improvement_record(imp, n)})

    report = solve_pvgd(
        target, n, order=args.order, max_games=args.games_budget,
        time_budget=args.time_budget, on_improvement=stream,
        workers=args.workers, max_n=EXTENDED_MAX_PLAYERS,
    )
    best = report.best
    final = {
        "n": n,
        "target": list(report.target),
        "player_order": list(order),
        "exhausted": report.exhausted,
        "interrupted": report.interrupted,
        "games_scored": report.games_scored,
        "ties": report.ties,
        "elapsed": round(report.elapsed, 6),
        "improvements": len(report.improvements),
        "best": _improvement_record(best, n) if best else None,
    }
    if args.report:
        Path(args.report).write_text(json.dumps(final, indent=2) + "\n")
    _emit(sys.stdout, {"final": final})
    return EXIT_INTERRUPT if report.interrupted else EXIT_OK


def cmd_sample(args) -> int:
    for k in range(args.count):
        seed = args.seed if args.count == 1 else [args.seed, k]
        print(",".join(repr(x) for x in sample_canonical_target(args.n, seed)))
    return EXIT_OK


def cmd_experiments(args) -> int:
    players = args.n or [1, 2, 3, 4, 5]
    for n in players:
        _check_cap(n, args)
    try:
        cfg = ExperimentConfig(args.exp, list(players), args.instances, args.seed,
                               args.games_budget, args.order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = run_experiment(cfg)
    with _open_out(args.output) as fh:
        write_rows(rows, fh, args.format)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wvg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add_order(sp):
        sp.add_argument("--order", choices=["breadth_first", "depth_first"],
                        default="breadth_first")

    def add_workers(sp):
        sp.add_argument("--workers", type=_positive_int, default=None,
                        help="worker processes (capped by WVG_THREADS)")

    e = sub.add_parser("enumerate", help="stream every canonical weighted voting game")
    e.add_argument("-n", type=_positive_int, required=True)
    add_order(e)
    add_workers(e)
    e.add_argument("--output", "-o")
    e.add_argument("--checkpoint", help="directory for per-rank checkpoint files")
    e.add_argument("--resume", action="store_true")
    e.add_argument("--summary-only", action="store_true")
    e.add_argument("--extended", action="store_true", help="allow n up to 9")
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("count", help="games per number of minimal winning coalitions")
    c.add_argument("-n", type=_positive_int, required=True)
    add_order(c)
    add_workers(c)
    c.add_argument("--extended", action="store_true")
    c.set_defaults(func=cmd_count)

    v = sub.add_parser("convert", help="convert a game between representations")
    v.add_argument("--input", "-i", help="game JSON file, or - for stdin")
    v.add_argument("--weights", help='weighted game as "q;w1,w2,..."')
    v.add_argument("--to", required=True, choices=[f.value for f in Form])
    v.add_argument("--allow-exponential", action="store_true")
    v.add_argument("--output", "-o")
    v.set_defaults(func=cmd_convert)

    b = sub.add_parser("banzhaf", help="exact Banzhaf index")
    b.add_argument("--input", "-i")
    b.add_argument("--weights")
    b.add_argument("--format", choices=["text", "json"], default="text")
    b.set_defaults(func=cmd_banzhaf)

    s = sub.add_parser("solve", help="anytime search for the closest game to a target index")
    s.add_argument("--target", help='comma separated, e.g. "0.6,0.2,0.2"')
    s.add_argument("--target-file")
    s.add_argument("-n", type=_positive_int)
    s.add_argument("--sort-target", action="store_true",
                   help="accept unsorted targets and report the player order used")
    s.add_argument("--games-budget", type=_positive_int)
    s.add_argument("--time-budget", type=float)
    s.add_argument("--report", help="write the final report JSON here")
    s.add_argument("--extended", action="store_true")
    add_order(s)
    add_workers(s)
    s.set_defaults(func=cmd_solve)

    m = sub.add_parser("sample", help="uniform random canonical target")
    m.add_argument("-n", type=_positive_int, required=True)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--count", type=_positive_int, default=1)
    m.set_defaults(func=cmd_sample)

    x = sub.add_parser("experiments", help="run one of the four desk-scale experiments")
    x.add_argument("--exp", type=int, choices=[1, 2, 3, 4], required=True)
    x.add_argument("-n", type=_positive_int, nargs="+")
    x.add_argument("--instances", type=_positive_int, default=100)
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--games-budget", type=_positive_int, default=10_000)
    x.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    x.add_argument("--output", "-o")
    x.add_argument("--extended", action="store_true")
    add_order(x)
    x.set_defaults(func=cmd_experiments)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (MalformedGameError, OSError, json.JSONDecodeError) as exc:
        print(f"wvg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"wvg: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except KeyboardInterrupt:
        return EXIT_INTERRUPT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
