"""p-Frechet functional, permutation depth and exact deepest sets.

For a profile of ``n`` voters the functional is
``U(sigma) = (1/n) * sum_v d(sigma, sigma_v) ** p`` and the depth is
``D(sigma) = max_{s,t} d(s, t) ** p - U(sigma)``.  The deepest set is the
argmin of ``U`` over all of S_m, found by exhaustive enumeration.

Whenever ``d ** p`` is an integer for every pair, ``n * U`` is summed in
integer arithmetic and ties are exact.  Otherwise the sums are floats and two
values within a relative ``REL_TOL`` of each other count as tied; results are
then marked approximate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .exceptions import DeepVoteError, DimensionMismatch
from .metrics import DistanceSpec, diameter_power, powered_distances
from .ranking import Profile, Ranking, check_cap, rankings_array

REL_TOL = 1e-9
_CHUNK_ELEMENTS = 4_000_000


@dataclass(frozen=True)
class FrechetParams:
    spec: DistanceSpec
    p: int | float = 1

    def __post_init__(self):
        p = float(self.p)
        if not math.isfinite(p) or p < 1:
            raise DeepVoteError(f"p must be a finite real >= 1, got {self.p}")
        object.__setattr__(self, "p", int(p) if p.is_integer() else p)

    @property
    def label(self) -> str:
        return f"{self.spec.label}, p={self.p}"


@dataclass(frozen=True)
class DeepestResult:
    params: FrechetParams
    m: int
    n: int
    deepest_set: tuple[Ranking, ...]
    winner_set: frozenset[int]
    u_min: Fraction | float
    depth_max: Fraction | float
    exact: bool

    @property
    def unique_winner(self) -> bool:
        return len(self.winner_set) == 1

    @property
    def winner(self) -> int | None:
        return next(iter(self.winner_set)) if self.unique_winner else None

    @property
    def last_set(self) -> frozenset[int]:
        """Candidates ranked last by some deepest ranking."""
        return frozenset(s.bottom for s in self.deepest_set)


class Comparison(NamedTuple):
    order: int  # -1, 0 or 1 as U(sigma) is below, equal to or above U(tau)
    approximate: bool


def _chunks(total: int, per_row: int):
    size = max(1, _CHUNK_ELEMENTS // max(1, per_row))
    for start in range(0, total, size):
        yield slice(start, min(total, start + size))


def _sums(params: FrechetParams, rows: np.ndarray, profile: Profile) -> tuple[np.ndarray, bool]:
    """``sum_v d(row, sigma_v) ** p`` for each row (so ``n * U``)."""
    ballots = profile.ballots
    if rows.shape[1] != profile.m:
        raise DimensionMismatch(f"rankings of size {rows.shape[1]} against a profile of {profile.m} candidates")
    parts = []
    exact = True
    for sl in _chunks(len(rows), profile.n * profile.m * profile.m):
        values, chunk_exact = powered_distances(params.spec, rows[sl], ballots, params.p)
        exact = exact and chunk_exact
        parts.append(values.sum(axis=1))
    return np.concatenate(parts) if len(parts) > 1 else parts[0], exact


def _mean(total, n: int, exact: bool):
    return Fraction(int(total), n) if exact else float(total) / n


def functional_sums(profile: Profile, params: FrechetParams, max_m: int | None = None):
    """Every ranking of S_m with its ``n * U`` value: ``(rankings, sums, exact)``."""
    check_cap(profile.m, max_m)
    perms = rankings_array(profile.m, max_m)
    sums, exact = _sums(params, perms, profile)
    return perms, sums, exact


def frechet_functional(sigma: Ranking, profile: Profile, params: FrechetParams) -> Fraction | float:
    """Mean over voters of ``d(sigma, sigma_v) ** p`` (a Fraction when exact)."""
    sums, exact = _sums(params, np.array([sigma.ranks], dtype=np.int64), profile)
    return _mean(sums[0], profile.n, exact)


def depth_value(
    sigma: Ranking, profile: Profile, params: FrechetParams, max_m: int | None = None
) -> Fraction | float:
    top = diameter_power(params.spec, profile.m, params.p, max_m)
    u = frechet_functional(sigma, profile, params)
    if isinstance(u, Fraction):
        return Fraction(int(top)) - u
    return float(top) - u


def _tied(a, b) -> bool:
    return abs(a - b) <= REL_TOL * max(abs(a), abs(b))


def compare_functional(sigma: Ranking, tau: Ranking, profile: Profile, params: FrechetParams) -> Comparison:
    rows = np.array([sigma.ranks, tau.ranks], dtype=np.int64)
    sums, exact = _sums(params, rows, profile)
    a, b = sums[0], sums[1]
    if exact:
        return Comparison(int(a > b) - int(a < b), False)
    a, b = float(a), float(b)
    if _tied(a, b):
        return Comparison(0, True)
    return Comparison(-1 if a < b else 1, True)


def minimal_rows(sums: np.ndarray, exact: bool) -> np.ndarray:
    """Indices of the minimal entries; exact equality or within REL_TOL."""
    best = sums.min()
    if exact:
        return np.flatnonzero(sums == best)
    slack = REL_TOL * max(abs(float(best)), np.finfo(float).tiny)
    return np.flatnonzero(sums <= best + slack)


def deepest_set(profile: Profile, params: FrechetParams, max_m: int | None = None) -> DeepestResult:
    """All p-Frechet means of the profile; ties are kept, never broken."""
    perms, sums, exact = functional_sums(profile, params, max_m)
    idx = minimal_rows(sums, exact)
    deepest = tuple(Ranking(tuple(int(x) for x in perms[i])) for i in idx)
    if exact:
        u_min = Fraction(int(sums[idx].min()), profile.n)
        depth_max = Fraction(int(diameter_power(params.spec, profile.m, params.p, max_m))) - u_min
    else:
        u_min = float(sums[idx].min()) / profile.n
        depth_max = float(diameter_power(params.spec, profile.m, params.p, max_m)) - u_min
    return DeepestResult(
        params=params,
        m=profile.m,
        n=profile.n,
        deepest_set=deepest,
        winner_set=frozenset(s.top for s in deepest),
        u_min=u_min,
        depth_max=depth_max,
        exact=exact,
    )
