"""JSON encoding of games and weight vectors."""
from __future__ import annotations

import json
from fractions import Fraction

from . import coalitions as co
from .games import Form, Game, MalformedGameError, WeightVector


def weights_to_json(wv: WeightVector) -> dict:
    return {"q": str(wv.quota), "w": [str(w) for w in wv.weights]}


def game_to_json(game: Game) -> dict:
    if game.form is Form.WEIGHTS:
        return {"n": game.n, "tag": "weights", **weights_to_json(game.weights)}
    out = {
        "n": game.n,
        "tag": game.form.value,
        "coalitions": [co.to_bitstring(S, game.n) for S in game.coalitions],
    }
    if game.form is Form.LMAX:
        # An empty MLC list is the all-winning game; say so explicitly.
        out["all_winning"] = not game.coalitions
    return out


def _fraction(text) -> Fraction:
    if isinstance(text, float):
        raise MalformedGameError("rationals must be given as 'p/q' strings or integers")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise MalformedGameError(f"bad rational {text!r}") from None


def game_from_json(data) -> Game:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        n = int(data["n"])
        tag = Form(str(data["tag"]).lower())
    except (KeyError, ValueError, TypeError) as exc:
        raise MalformedGameError(f"game record needs 'n' and a known 'tag': {exc}") from None
    if tag is Form.WEIGHTS:
        wv = WeightVector(_fraction(data["q"]), tuple(_fraction(w) for w in data["w"]))
        return Game(n, tag, weights=wv)
    coalitions = []
    for text in data.get("coalitions", []):
        try:
            S, width = co.parse_bitstring(text)
        except ValueError as exc:
            raise MalformedGameError(str(exc)) from None
        if width != n:
            raise MalformedGameError(f"coalition {text!r} does not have {n} characters")
        coalitions.append(S)
    if tag is Form.LMAX and data.get("all_winning") and coalitions:
        raise MalformedGameError("all_winning game cannot list maximal losing coalitions")
    return Game(n, tag, tuple(coalitions))


def read_game(path) -> Game:
    with open(path) as fh:
        return game_from_json(json.load(fh))
