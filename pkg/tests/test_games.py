import random
from fractions import Fraction
from math import comb

import pytest

import oracles as orc
from conftest import corpus
from wvgdesign import coalitions as co
from wvgdesign import games as g
from wvgdesign import tables
from wvgdesign.synthesis import shelters


def S(n, *members):
    return co.from_players(members, n)


EX = g.Game.weighted(4, [3, 2, 2, 1])
EX_WMIN = EX.minimal_winning()


def test_eval_examples():
    assert EX.is_winning(S(4, 2, 3))
    assert not EX.is_winning(S(4, 4))
    dictator = g.Game.from_lists("wmin", 3, [[1]])
    assert not dictator.is_winning(S(3, 2, 3))
    assert dictator.is_winning(S(3, 1, 3))


def test_weight_vector_parse_and_scale():
    wv = g.WeightVector.parse("4;3,2,2,1")
    assert wv.quota == 4 and wv.weights == (3, 2, 2, 1)
    assert g.WeightVector.parse("[1/2; 1/3, 1/6]").weights == (Fraction(1, 3), Fraction(1, 6))
    assert wv.scaled(Fraction(1, 2)).quota == 2
    assert g.WeightVector.parse("1/2;1/3,1/4").as_integers().quota == 6
    with pytest.raises(g.MalformedGameError):
        g.WeightVector.parse("4;a,b")
    with pytest.raises(g.MalformedGameError):
        g.WeightVector(1, (-1, 2))
    with pytest.raises(ValueError):
        wv.scaled(0)


def test_game_validation():
    with pytest.raises(g.MalformedGameError):
        g.Game(3, "wmin", (S(3, 1), S(3, 1, 2)))
    with pytest.raises(g.MalformedGameError):
        g.Game(3, "w", (1 << 3,))
    with pytest.raises(g.MalformedGameError):
        g.Game(3, "weights")
    with pytest.raises(g.MalformedGameError):
        g.Game(3, "weights", weights=g.WeightVector(1, (1, 1)))
    game = g.Game(4, "wmin", (S(4, 2, 3), S(4, 1, 2), S(4, 1, 2)))
    assert game.coalitions == (S(4, 1, 2), S(4, 2, 3))


def _all_forms(game):
    n, t = game.n, game.table
    win = list(tables.members(t))
    lose = [m for m in range(1 << n) if not t >> m & 1]
    yield g.Game(n, "w", tuple(win))
    yield g.Game(n, "l", tuple(lose))
    yield g.Game(n, "wmin", tuple(tables.members(tables.minimal(t, n))))
    yield g.Game(n, "lmax", tuple(tables.members(tables.maximal_losing(t, n))))
    yield g.Game(n, "roof", tuple(tables.members(tables.roofs(t, n))))
    yield g.Game(n, "ceil", tuple(tables.members(tables.ceilings(t, n))))


@pytest.mark.parametrize("n", range(1, 6))
def test_eval_agrees_across_forms(n):
    for node in corpus(n):
        ref = orc.winning_set_from_weights(node.witness.quota, node.witness.weights)
        wg = g.Game(n, "weights", weights=node.witness)
        assert {orc.from_mask(m, n) for m in tables.members(wg.table)} == ref
        for form in _all_forms(wg):
            assert form.table == wg.table, form.form
            # the list scan used beyond table range must agree as well
            assert all(form._scan(m) == bool(wg.table >> m & 1) for m in range(1 << n))


def test_desirability_examples():
    assert g.desirability_compare(EX_WMIN, 4, 2, 3) == "equal"
    assert g.desirability_compare(EX_WMIN, 4, 1, 4) == "more"
    assert g.desirability_compare(EX_WMIN, 4, 4, 1) == "less"
    assert g.desirability_compare(EX_WMIN, 4, 3, 3) == "equal"
    nl = [S(4, 1, 2), S(4, 3, 4)]
    assert g.desirability_compare(nl, 4, 1, 3) == "incomparable"


def test_desirability_against_full_oracle():
    rng = random.Random(5)
    for _ in range(150):
        n = rng.randint(1, 5)
        gens = {rng.randrange(1 << n) for _ in range(rng.randint(0, 4))}
        t = tables.upward_closure(tables.from_coalitions(gens), n)
        wmin = list(tables.members(tables.minimal(t, n)))
        win = {orc.from_mask(m, n) for m in tables.members(t)}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                ij = orc.at_least_as_desirable(win, n, i, j)
                ji = orc.at_least_as_desirable(win, n, j, i)
                want = {(True, True): "equal", (True, False): "more",
                        (False, True): "less", (False, False): "incomparable"}[(ij, ji)]
                assert g.desirability_compare(wmin, n, i, j) == want
        order = g.desirability_order(wmin, n)
        assert (order is not None) == orc.is_linear(win, n)
        if order is not None:
            assert order.is_canonical == orc.is_canonical_linear(win, n)


def test_check_linear_canonical_examples():
    wmin = [S(4, 1, 2), S(4, 1, 3), S(4, 2, 3), S(4, 1, 4)]
    order = g.check_linear_canonical(wmin, 4)
    assert order.classes == ((1,), (2, 3), (4,))
    assert order.is_canonical
    assert g.check_linear_canonical([S(4, 1, 2), S(4, 3, 4)], 4) is None
    empty = g.check_linear_canonical([], 4)
    assert empty.classes == ((1, 2, 3, 4),) and empty.is_canonical


def test_relabelling_makes_canonical():
    # [4; 1,2,2,3] is [4; 3,2,2,1] with players 1 and 4 swapped
    G = g.Game.weighted(4, [1, 2, 2, 3])
    wmin = G.minimal_winning()
    order = g.desirability_order(wmin, 4)
    assert order is not None and not order.is_canonical
    relabelled = g.permute(wmin, order.relabelling, 4)
    assert g.desirability_order(relabelled, 4).is_canonical
    assert set(relabelled) == set(EX_WMIN)
    with pytest.raises(g.NotCanonicalError) as info:
        g.roofs_from_mwc(wmin, 4)
    assert info.value.order is not None


def test_mwc_and_mlc_filters():
    n = 3
    W = [m for m in range(8) if m & S(3, 1)]
    assert g.mwc_from_w(W, n) == [S(3, 1)]
    assert g.mlc_from_l([0], 1) == [0]
    maj = [m for m in range(8) if m.bit_count() >= 2]
    assert g.mwc_from_w(maj, n) == [S(3, 1, 2), S(3, 1, 3), S(3, 2, 3)]
    with pytest.raises(g.NotMonotoneError):
        g.mwc_from_w([S(3, 1)], n)
    with pytest.raises(g.NotMonotoneError):
        g.mlc_from_l([S(3, 1, 2)], n)


def test_roof_and_ceiling_examples():
    assert g.roofs_from_mwc(EX_WMIN, 4) == [S(4, 1, 4), S(4, 2, 3)]
    assert set(EX.maximal_losing()) == {S(4, 1), S(4, 2, 4), S(4, 3, 4)}
    assert g.ceilings_from_mlc(EX.maximal_losing(), 4) == [S(4, 1), S(4, 2, 4)]
    assert g.roofs_from_mwc([], 3) == []
    with pytest.raises(g.NotCanonicalError):
        g.roofs_from_mwc([S(4, 1, 2), S(4, 3, 4)], 4)
    with pytest.raises(g.NotCanonicalError):
        g.ceilings_from_mlc([S(4, 1, 3), S(4, 1, 4), S(4, 2, 3), S(4, 2, 4)], 4)


@pytest.mark.parametrize("n", range(1, 6))
def test_roofs_within_shelters_within_mwcs(n):
    for node in corpus(n):
        wmin = set(node.wmin)
        roofs = set(g.roofs_from_mwc(node.wmin, n))
        sh = set(shelters(node.wmin, n))
        # the empty coalition (all-winning game) is never listed as a shelter
        assert roofs - {0} <= sh <= wmin
        win = {orc.from_mask(m, n) for m in tables.members(node.table)}
        assert roofs == orc.masks(orc.roofs(win, n), n)
        lmax = list(tables.members(tables.maximal_losing(node.table, n)))
        assert set(g.ceilings_from_mlc(lmax, n)) == orc.masks(orc.ceilings(win, n), n)
        assert len(node.wmin) <= comb(n, n // 2)


@pytest.mark.parametrize("n", range(1, 6))
def test_shifts_preserve_outcome_in_canonical_games(n):
    for node in corpus(n):
        t = node.table
        for m in range(1 << n):
            for other in range(1 << n):
                if co.is_proper_left_shift(other, m, n) and t >> m & 1:
                    assert t >> other & 1
                if co.is_proper_right_shift(other, m, n) and not t >> m & 1:
                    assert not t >> other & 1


def test_encoding_coalitions():
    assert co.players(g.encoding_coalition(2, 2), 8) == (1, 4, 6, 7)
    assert co.players(g.encoding_coalition(5, 3), 12) == (1, 4, 6, 7, 9, 12)
    with pytest.raises(ValueError):
        g.encoding_coalition(4, 2)


def test_ibit_roof_game():
    G2 = g.ibit_roof_game(2)
    want = {(2, 3, 6, 7), (2, 3, 5, 8), (1, 4, 6, 7), (1, 4, 5, 8)}
    assert {co.players(R, 8) for R in G2.coalitions} == want
    for i in (1, 2, 3):
        G = g.ibit_roof_game(i)
        assert G.n == 4 * i
        assert len(G.coalitions) == 2 ** i
        assert tables.is_canonical(G.table, G.n)
        assert set(tables.members(tables.roofs(G.table, G.n))) == set(G.coalitions)
    with pytest.raises(ValueError):
        g.ibit_roof_game(17)


def test_game_str():
    assert str(EX) == "[4; 3, 2, 2, 1]"
    assert str(g.Game.from_lists("wmin", 3, [[1]])) == "wmin{100}"
