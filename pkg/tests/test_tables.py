import random

import pytest

import oracles as orc
from wvgdesign import tables


def random_monotone(n, rng):
    gens = [rng.randrange(1 << n) for _ in range(rng.randint(0, 4))]
    return tables.upward_closure(tables.from_coalitions(gens), n)


def win_sets(table, n):
    return {orc.from_mask(m, n) for m in tables.members(table)}


@pytest.mark.parametrize("seed", range(40))
def test_table_operations_against_scans(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    table = random_monotone(n, rng)
    win = win_sets(table, n)
    assert orc.is_monotone(win, n)
    assert tables.is_monotone(table, n)
    assert win_sets(tables.minimal(table, n), n) == orc.minimal_winning(win, n)
    assert win_sets(tables.maximal_losing(table, n), n) == orc.maximal_losing(win, n)
    assert tables.raw_banzhaf(table, n) == orc.raw_banzhaf(win, n)
    assert tables.is_canonical(table, n) == orc.is_canonical_linear(win, n)
    if tables.is_canonical(table, n):
        assert win_sets(tables.roofs(table, n), n) == orc.roofs(win, n)
        assert win_sets(tables.ceilings(table, n), n) == orc.ceilings(win, n)


def test_closures():
    n = 4
    t = tables.from_coalitions([0b0110])
    up = tables.upward_closure(t, n)
    assert set(tables.members(up)) == {m for m in range(16) if m & 0b0110 == 0b0110}
    down = tables.downward_closure(t, n)
    assert set(tables.members(down)) == {0, 0b0010, 0b0100, 0b0110}
    assert tables.is_monotone(tables.from_coalitions([1]), 1)
    assert not tables.is_monotone(tables.from_coalitions([0]), 1)


def test_equal_classes():
    n = 4
    # [4; 3,2,2,1]
    w = [3, 2, 2, 1]
    win = [m for m in range(16) if sum(w[i] for i in range(4) if m >> (3 - i) & 1) >= 4]
    t = tables.from_coalitions(win)
    assert tables.equal_classes(t, n) == [[1], [2, 3], [4]]
