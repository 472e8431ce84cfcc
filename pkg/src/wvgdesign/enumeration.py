"""Enumeration of canonical weighted voting games through the MWC poset.

Games are graded by their number of minimal winning coalitions.  Every game
of rank ``r + 1`` arises from a rank ``r`` game by adding one right-truncated
ceiling, and a duplicates check picks exactly one such parent per game, so
each game is produced once.  Both breadth-first (rank by rank) and
depth-first traversals are offered.
"""
from __future__ import annotations

import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from pathlib import Path

from . import coalitions as co
from . import tables
from .games import WeightVector
from .synthesis import NotWeightedError, ceilings_from_mwc, synth_weights_compact

DEFAULT_MAX_PLAYERS = 9
ORDERS = ("breadth_first", "depth_first")


@dataclass(frozen=True)
class PosetNode:
    """A canonical weighted voting game as a node of the MWC poset."""

    n: int
    wmin: tuple[int, ...]
    ceilings: tuple[int, ...]
    witness: WeightVector

    @property
    def rank(self) -> int:
        return len(self.wmin)

    @property
    def key(self) -> int:
        return family_key(self.wmin)

    @property
    def table(self) -> int:
        return tables.upward_closure(tables.from_coalitions(self.wmin), self.n)

    def sort_key(self):
        return tuple(co.pr_key(S, self.n) for S in self.wmin)


def family_key(coalitions) -> int:
    """A family of coalitions as one integer (bit ``S`` per member)."""
    key = 0
    for S in coalitions:
        key |= 1 << S
    return key


def bottom_node(n: int) -> PosetNode:
    """The all-losing game: no MWCs, the grand coalition as sole ceiling."""
    return PosetNode(n, (), (co.grand(n),), WeightVector(Fraction(1), (Fraction(0),) * n))


# -- single-step machinery ----------------------------------------------------

def extensions(node: PosetNode) -> list[int]:
    """Coalitions that may be added to ``node.wmin`` (deduplicated, PR-lexi).

    Drawn from right-truncations of the node's ceilings.  Coalitions already
    present, supersets of a present MWC, and proper subsets of a present MWC
    are dropped; only the remaining ones can yield a list with one more MWC.
    """
    wmin = node.wmin
    seen = set()
    out = []
    for C in node.ceilings:
        X = C
        for _ in range(C.bit_count() + 1):
            if X not in seen:
                seen.add(X)
                if not any(M & X == M or M & X == X for M in wmin):
                    out.append(X)
            X &= X - 1
    return co.pr_sorted(out, node.n)


def extension_lists(node: PosetNode) -> list[tuple[int, ...]]:
    n = node.n
    return [tuple(co.pr_sorted(node.wmin + (X,), n)) for X in extensions(node)]


def duplicates_check(candidate_wmin, added: int, n: int, is_cwvg) -> bool:
    """Keep a candidate only if no coalition strictly PR-lexi before ``added``
    can be removed leaving a canonical weighted game.

    ``is_cwvg`` receives a PR-lexi sorted MWC list.
    """
    key = co.pr_key(added, n)
    for C in candidate_wmin:
        if co.pr_key(C, n) >= key:
            break
        rest = tuple(S for S in candidate_wmin if S != C)
        if is_cwvg(rest):
            return False
    return True


def analyse(wmin, n: int, table: int | None = None) -> PosetNode | None:
    """Node for ``wmin`` when it is the MWC list of a canonical weighted game."""
    wmin = tuple(wmin)
    if table is None:
        table = tables.upward_closure(tables.from_coalitions(wmin), n)
    if not wmin:
        return bottom_node(n)
    if not tables.is_canonical(table, n):
        return None
    lookup = lambda S: bool(table >> S & 1)  # noqa: E731
    ceilings = ceilings_from_mwc(wmin, n, is_winning=lookup, check=False)
    roofs = list(tables.members(tables.roofs(table, n)))
    classes = tables.equal_classes(table, n)
    try:
        witness = synth_weights_compact(roofs, ceilings, classes, n)
    except NotWeightedError:
        return None
    return PosetNode(n, wmin, tuple(ceilings), witness)


class LPOracle:
    """Decides canonical weightedness of an MWC list from scratch (cached)."""

    def __init__(self, n: int, limit: int = 1 << 18):
        self.n = n
        self.limit = limit
        self.cache: dict[int, bool] = {}

    def __call__(self, wmin) -> bool:
        key = family_key(wmin)
        hit = self.cache.get(key)
        if hit is None:
            hit = analyse(wmin, self.n) is not None
            if len(self.cache) >= self.limit:
                self.cache.clear()
            self.cache[key] = hit
        return hit


class LookupOracle:
    """Canonical weightedness of a rank ``r`` list, given every rank ``r`` game."""

    def __init__(self, keys):
        self.keys = set(keys)

    def __call__(self, wmin) -> bool:
        return family_key(wmin) in self.keys


def children(node: PosetNode, is_cwvg) -> list[PosetNode]:
    """Kept successors of ``node``, PR-lexi ordered."""
    n = node.n
    parent_table = node.table
    out = []
    for X in extensions(node):
        cand = tuple(co.pr_sorted(node.wmin + (X,), n))
        if not duplicates_check(cand, X, n, is_cwvg):
            continue
        table = parent_table | tables.upward_closure(1 << X, n)
        child = analyse(cand, n, table)
        if child is not None:
            out.append(child)
    out.sort(key=PosetNode.sort_key)
    return out


# -- traversal ----------------------------------------------------------------

def _check_n(n, max_n):
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"player count must be a positive integer, got {n!r}")
    if n > max_n:
        raise ValueError(f"n = {n} exceeds the enumeration cap {max_n}")


def worker_count(workers=None) -> int:
    cap = os.environ.get("WVG_THREADS")
    if workers is None:
        workers = int(cap) if cap else 1
    elif cap:
        workers = min(workers, int(cap))
    return max(1, workers)


_POOL_ORACLE = None


def _pool_init(keys):
    global _POOL_ORACLE
    _POOL_ORACLE = LookupOracle(keys)


def _pool_expand(batch):
    return [children(node, _POOL_ORACLE) for node in batch]


def _expand_rank(frontier, workers):
    oracle_keys = [node.key for node in frontier]
    if workers <= 1 or len(frontier) < 64:
        oracle = LookupOracle(oracle_keys)
        groups = [children(node, oracle) for node in frontier]
    else:
        size = -(-len(frontier) // (workers * 4))
        batches = [frontier[i:i + size] for i in range(0, len(frontier), size)]
        with ProcessPoolExecutor(workers, initializer=_pool_init, initargs=(oracle_keys,)) as pool:
            groups = [g for part in pool.map(_pool_expand, batches) for g in part]
    nxt = [c for g in groups for c in g]
    nxt.sort(key=PosetNode.sort_key)
    return nxt


def enumerate_cwvg(n: int, order: str = "breadth_first", visitor=None, *, workers=None,
                   checkpoint_dir=None, resume: bool = False, max_n: int = DEFAULT_MAX_PLAYERS):
    """Yield every canonical weighted voting game on ``n`` players once.

    Breadth-first output is rank-major and PR-lexi ordered within a rank;
    depth-first output is a preorder walk with children in PR-lexi order.
    ``visitor`` (if given) is called on every node before it is yielded.
    Breadth-first runs can write one JSONL file per completed rank to
    ``checkpoint_dir``; with ``resume`` they continue after the last rank
    whose games were all yielded.
    """
    _check_n(n, max_n)
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}")
    if order == "depth_first":
        if checkpoint_dir is not None:
            raise ValueError("checkpoints are only supported breadth-first")
        gen = _depth_first(n)
    else:
        gen = _breadth_first(n, worker_count(workers), checkpoint_dir, resume)
    for node in gen:
        if visitor is not None:
            visitor(node)
        yield node


def _breadth_first(n, workers, checkpoint_dir, resume):
    ckpt = Checkpoint(Path(checkpoint_dir), n) if checkpoint_dir is not None else None
    frontier = None
    if ckpt is not None and resume:
        frontier = ckpt.load_last()
    # A rank is checkpointed only once all of its games have been yielded,
    # so a resumed run continues with the first rank not fully emitted.
    if frontier is None:
        frontier = [bottom_node(n)]
        yield from frontier
        if ckpt is not None:
            ckpt.save_rank(0, frontier)
    while frontier:
        frontier = _expand_rank(frontier, workers)
        yield from frontier
        if ckpt is not None and frontier:
            ckpt.save_rank(frontier[0].rank, frontier)
    if ckpt is not None:
        ckpt.mark_done()


def _depth_first(n):
    oracle = LPOracle(n)
    stack = [bottom_node(n)]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node, oracle)))


def count_by_rank(n: int, order: str = "breadth_first", **kw) -> dict[int, int]:
    hist = Counter(node.rank for node in enumerate_cwvg(n, order, **kw))
    return dict(sorted(hist.items()))


def sperner_bound(n: int) -> int:
    return comb(n, n // 2)


# -- checkpoints --------------------------------------------------------------

def node_to_record(node: PosetNode) -> dict:
    n = node.n
    return {
        "rank": node.rank,
        "wmin": [co.to_bitstring(S, n) for S in node.wmin],
        "weights": {
            "q": str(node.witness.quota),
            "w": [str(w) for w in node.witness.weights],
        },
    }


def node_from_record(rec: dict, n: int) -> PosetNode:
    wmin = tuple(co.parse_bitstring(s)[0] for s in rec["wmin"])
    node = analyse(wmin, n)
    if node is None:
        raise ValueError(f"record {rec} is not a canonical weighted game")
    w = rec.get("weights")
    if w is not None:
        witness = WeightVector(Fraction(w["q"]), tuple(Fraction(x) for x in w["w"]))
        node = PosetNode(n, node.wmin, node.ceilings, witness)
    return node


class Checkpoint:
    """Per-rank JSONL files plus a small ``state.json`` in one directory."""

    def __init__(self, path: Path, n: int):
        self.path = path
        self.n = n
        path.mkdir(parents=True, exist_ok=True)

    @property
    def state_file(self) -> Path:
        return self.path / "state.json"

    def rank_file(self, rank: int) -> Path:
        return self.path / f"rank_{rank:04d}.jsonl"

    def state(self) -> dict | None:
        if not self.state_file.exists():
            return None
        state = json.loads(self.state_file.read_text())
        if state.get("n") != self.n:
            raise ValueError(f"checkpoint in {self.path} is for n = {state.get('n')}")
        return state

    def save_rank(self, rank: int, nodes) -> None:
        tmp = self.rank_file(rank).with_suffix(".tmp")
        with tmp.open("w") as fh:
            for node in nodes:
                fh.write(json.dumps(node_to_record(node)) + "\n")
        tmp.replace(self.rank_file(rank))
        state = self.state() or {"n": self.n, "histogram": {}}
        state["last_rank"] = rank
        state["histogram"][str(rank)] = len(nodes)
        state["done"] = False
        self._write_state(state)

    def mark_done(self) -> None:
        state = self.state() or {"n": self.n, "histogram": {}}
        state["done"] = True
        self._write_state(state)

    def _write_state(self, state):
        tmp = self.state_file.with_suffix(".tmp")
        tmp.write_text(json.dumps(state, sort_keys=True))
        tmp.replace(self.state_file)

    def histogram(self) -> dict[int, int]:
        state = self.state()
        if not state:
            return {}
        return {int(k): v for k, v in state["histogram"].items()}

    def load_last(self) -> list[PosetNode] | None:
        """Frontier of the last completed rank (``[]`` when already done)."""
        state = self.state()
        if state is None or "last_rank" not in state:
            return None
        if state.get("done"):
            return []
        with self.rank_file(state["last_rank"]).open() as fh:
            return [node_from_record(json.loads(line), self.n) for line in fh if line.strip()]


# -- antichain oracle ---------------------------------------------------------

ANTICHAIN_MAX_PLAYERS = 4


def enumerate_antichains(n: int):
    """Every antichain of subsets of ``1..n`` once, by brute force (n <= 4)."""
    _check_n(n, ANTICHAIN_MAX_PLAYERS)
    size = 1 << n
    comparable = []
    for S in range(size):
        m = 0
        for T in range(size):
            if T != S and (S & T in (S, T)):
                m |= 1 << T
        comparable.append(m)
    for fam in range(1 << size):
        ok = True
        f = fam
        while f:
            low = f & -f
            if fam & comparable[low.bit_length() - 1]:
                ok = False
                break
            f ^= low
        if ok:
            yield tuple(co.pr_sorted(tables.members(fam), n))
