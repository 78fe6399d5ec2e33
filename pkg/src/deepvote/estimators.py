"""scikit-learn style wrappers.

``X`` holds one ballot per row: shape ``(n_voters, n_candidates)``, each row a
permutation of ``1..n_candidates`` (rank of each candidate).
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .continuous import continuous_winner_set, l1_deepest_box, l2_deepest, lq_depth
from .exceptions import DimensionMismatch, NotAPermutation
from .frechet import FrechetParams, deepest_set, depth_value
from .metrics import DistanceSpec, WeightMatrix
from .ranking import Profile, Ranking


def check_ballots(X) -> np.ndarray:
    """Validate a ballot matrix and return it as int64."""
    X = check_array(X, dtype=None, ensure_min_samples=1, ensure_min_features=1)
    if not np.issubdtype(X.dtype, np.integer):
        as_int = X.astype(np.int64)
        if not np.array_equal(as_int, X):
            raise NotAPermutation("ranks must be integers")
        X = as_int
    X = X.astype(np.int64, copy=False)
    m = X.shape[1]
    expected = np.arange(1, m + 1)
    for v, row in enumerate(X):
        if not np.array_equal(np.sort(row), expected):
            raise NotAPermutation(f"ballot {v} is not a permutation of 1..{m}", column=v)
    return X


def _spec(distance: str, q, weights, m: int) -> DistanceSpec:
    if isinstance(weights, str) and weights in ("plurality", "antiplurality"):
        weights = getattr(WeightMatrix, weights)(m)
    elif isinstance(weights, (np.ndarray, list, tuple)):
        weights = WeightMatrix.from_array(weights)
    return DistanceSpec(distance, q, weights)


class FrechetVoting(BaseEstimator):
    """Deepest voting over rankings with a p-Frechet functional.

    ``weights`` is a weight matrix, or ``"plurality"`` / ``"antiplurality"``
    for the standard weighted-Hamming matrices sized at fit time.

    After ``fit``: ``deepest_set_`` (rank tuples), ``winners_`` (0-based
    candidate indices), ``u_min_``, ``depth_max_``, ``unique_winner_``.
    """

    def __init__(self, distance="kendall", q=None, weights=None, p=1, max_m=None):
        self.distance = distance
        self.q = q
        self.weights = weights
        self.p = p
        self.max_m = max_m

    def fit(self, X, y=None):
        X = check_ballots(X)
        self.params_ = FrechetParams(_spec(self.distance, self.q, self.weights, X.shape[1]), self.p)
        self.profile_ = Profile.from_ballots(X)
        result = deepest_set(self.profile_, self.params_, self.max_m)
        self.result_ = result
        self.deepest_set_ = [s.ranks for s in result.deepest_set]
        self.winners_ = np.array(sorted(result.winner_set))
        self.u_min_ = result.u_min
        self.depth_max_ = result.depth_max
        self.unique_winner_ = result.unique_winner
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X=None):
        """Winner indices of the fitted profile (or of ``X`` when given)."""
        if X is not None:
            return self.fit(X).winners_
        check_is_fitted(self, "winners_")
        return self.winners_

    def score_samples(self, R) -> np.ndarray:
        """Depth of each candidate ranking in ``R`` relative to the fitted profile."""
        check_is_fitted(self, "profile_")
        R = check_ballots(R)
        if R.shape[1] != self.n_features_in_:
            raise DimensionMismatch(f"expected {self.n_features_in_} candidates, got {R.shape[1]}")
        return np.array([float(depth_value(Ranking(tuple(int(x) for x in r)), self.profile_, self.params_)) for r in R])


class LqDepthVoting(BaseEstimator):
    """Continuous deepest voting with ranks read as evaluations (q in {1, 2})."""

    def __init__(self, q=2):
        self.q = q

    def fit(self, X, y=None):
        X = check_ballots(X)
        self.profile_ = Profile.from_ballots(X)
        if self.q == 2:
            self.deepest_ = l2_deepest(self.profile_)
            self.winners_ = np.array(sorted(continuous_winner_set(self.deepest_, "L2")))
        elif self.q == 1:
            self.deepest_ = l1_deepest_box(self.profile_)
            self.winners_ = np.array(sorted(continuous_winner_set(self.deepest_, "L1")))
        else:
            raise ValueError("deepest sets are implemented for q=1 and q=2 only")
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X=None):
        if X is not None:
            return self.fit(X).winners_
        check_is_fitted(self, "winners_")
        return self.winners_

    def score_samples(self, points) -> np.ndarray:
        check_is_fitted(self, "profile_")
        points = check_array(points, dtype=np.float64)
        return np.array([lq_depth(x, self.profile_, self.q) for x in points])
