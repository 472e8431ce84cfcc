"""scikit-learn style wrappers around the enumerator and the Banzhaf index."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import tables
from .design import canonicalize_target
from .enumeration import enumerate_cwvg
from .games import WeightVector
from .power import raw_banzhaf_weights


class BanzhafTransformer(TransformerMixin, BaseEstimator):
    """Map rows ``[q, w_1, ..., w_n]`` to normalised Banzhaf indices.

    Rows are converted to exact rationals through their decimal string, so
    ``0.1`` means one tenth.  Games without swings map to the uniform vector.
    """

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        if X.shape[1] < 2:
            raise ValueError("rows need a quota and at least one weight")
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        out = np.empty((X.shape[0], X.shape[1] - 1))
        for r, row in enumerate(X):
            wv = WeightVector(str(float(row[0])), tuple(str(float(x)) for x in row[1:]))
            raw = raw_banzhaf_weights(wv)
            total = sum(raw)
            out[r] = [x / total for x in raw] if total else 1.0 / len(raw)
        return out


class WeightedGameSearch(BaseEstimator):
    """Nearest weighted voting game to target power indices.

    ``fit`` enumerates every canonical weighted voting game on ``n_players``
    players (taken from the width of ``X`` when not given) and stores their
    Banzhaf indices.  Targets need not be sorted: each row is matched in
    canonical order and the answer is mapped back to the original players.
    """

    def __init__(self, n_players=None, order="breadth_first"):
        self.n_players = n_players
        self.order = order

    def fit(self, X=None, y=None):
        if X is not None:
            X = check_array(X, dtype=np.float64)
            n = X.shape[1]
            if self.n_players is not None and self.n_players != n:
                raise ValueError("n_players disagrees with the width of X")
        elif self.n_players is None:
            raise ValueError("give n_players or sample targets")
        else:
            n = int(self.n_players)
        indices, games = [], []
        for node in enumerate_cwvg(n, self.order):
            raw = tables.raw_banzhaf(node.table, n)
            total = sum(raw)
            if total:
                indices.append([x / total for x in raw])
                games.append(node)
        self.n_features_in_ = n
        self.indices_ = np.array(indices)
        self.games_ = games
        return self

    def _nearest(self, X):
        check_is_fitted(self, "indices_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        picks, errors, orders = [], [], []
        for row in X:
            sorted_row, order = canonicalize_target(row)
            d = np.sqrt(((self.indices_ - np.array(sorted_row)) ** 2).sum(axis=1))
            k = int(np.argmin(d))
            picks.append(k)
            errors.append(float(d[k]))
            orders.append(order)
        return picks, errors, orders

    def predict(self, X):
        """Position in ``games_`` of the best canonical game for each row."""
        return np.array(self._nearest(X)[0])

    def transform(self, X):
        """Best attainable index per row, in the row's own player order."""
        picks, _, orders = self._nearest(X)
        out = np.empty((len(picks), self.n_features_in_))
        for r, (k, order) in enumerate(zip(picks, orders)):
            out[r, list(order)] = self.indices_[k]
        return out

    def score(self, X, y=None):
        return -float(np.mean(self._nearest(X)[1]))
