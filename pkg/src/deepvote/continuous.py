"""Continuous L^q deepest voting with ranks read as evaluations.

Each voter's rank vector is a point of R^m.  The L^q depth of a point ``x`` is

    1 / (1 + (1/n) * sum_v sum_c |rank_v(c) - x_c| ** q)

(with the inner sum replaced by ``max_c`` when ``q`` is infinite).  For q=2 the
deepest point is the mean rank vector; for q=1 the deepest set is the box of
componentwise medians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DeepVoteError, DimensionMismatch, InvalidOrder
from .ranking import Profile


@dataclass(frozen=True)
class DeepestBox:
    """Componentwise interval hull ``prod_c [lower[c], upper[c]]``."""

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise DimensionMismatch("box bounds differ in length")
        if any(lo > hi for lo, hi in zip(self.lower, self.upper)):
            raise DeepVoteError("box lower bound exceeds upper bound")

    @property
    def m(self) -> int:
        return len(self.lower)

    @property
    def degenerate(self) -> bool:
        return self.lower == self.upper

    def __contains__(self, x) -> bool:
        return all(lo <= xc <= hi for lo, hi, xc in zip(self.lower, self.upper, x))


def lq_depth(x, profile: Profile, q) -> float:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (profile.m,):
        raise DimensionMismatch(f"point has shape {x.shape}, profile has {profile.m} candidates")
    if not np.isfinite(x).all():
        raise DeepVoteError("point coordinates must be finite")
    q = float(q)
    if math.isnan(q) or q < 1:
        raise InvalidOrder(f"order q must be >= 1, got {q}")
    dev = np.abs(profile.ballots - x)
    if math.isinf(q):
        spread = dev.max(axis=1).mean()
    else:
        spread = (dev**q).sum(axis=1).mean()
    return 1.0 / (1.0 + spread)


def l2_deepest(profile: Profile) -> np.ndarray:
    """Mean rank vector, the unique maximizer of the L^2 depth."""
    return profile.ballots.mean(axis=0)


def l1_deepest_box(profile: Profile) -> DeepestBox:
    """Componentwise median interval; degenerate for an odd number of voters."""
    s = np.sort(profile.ballots, axis=0)
    n = profile.n
    lo = s[(n - 1) // 2]
    hi = s[n // 2]
    return DeepestBox(tuple(int(v) for v in lo), tuple(int(v) for v in hi))


def continuous_winner_set(deepest, mode: str | None = None) -> frozenset[int]:
    """Candidates that are minimal in some deepest point.

    ``mode`` is ``"L1"`` for a :class:`DeepestBox` and ``"L2"`` for a point; it
    is inferred from the argument when omitted.  A coordinate is minimal
    somewhere in a box iff its lower bound does not exceed any other
    coordinate's upper bound.
    """
    if mode is None:
        mode = "L1" if isinstance(deepest, DeepestBox) else "L2"
    mode = mode.upper()
    if mode == "L1":
        if not isinstance(deepest, DeepestBox):
            deepest = DeepestBox(tuple(deepest), tuple(deepest))
        ceiling = min(deepest.upper)
        return frozenset(c for c, lo in enumerate(deepest.lower) if lo <= ceiling)
    if mode == "L2":
        point = np.asarray(deepest, dtype=np.float64)
        return frozenset(int(c) for c in np.flatnonzero(point == point.min()))
    raise DeepVoteError(f"unknown mode {mode!r}; expected L1 or L2")
