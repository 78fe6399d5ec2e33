"""Textbook implementations of classical ranking rules and Condorcet detection.

These never call into :mod:`deepvote.metrics` or :mod:`deepvote.frechet`, so
agreement between a classical rule and its deepest-voting counterpart is an
independent cross-check rather than a tautology.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ranking import Profile, Ranking, check_cap, rankings_array


@dataclass(frozen=True)
class RuleOutcome:
    rule: str
    winner_set: frozenset[int]
    scores: tuple
    detail: dict = field(default_factory=dict, compare=False)

    @property
    def unique_winner(self) -> bool:
        return len(self.winner_set) == 1

    @property
    def winner(self) -> int | None:
        return next(iter(self.winner_set)) if self.unique_winner else None


def _arg(values: np.ndarray, best) -> frozenset[int]:
    return frozenset(int(c) for c in np.flatnonzero(values == best))


def borda(profile: Profile) -> RuleOutcome:
    """Lowest total rank wins."""
    sums = profile.ballots.sum(axis=0)
    return RuleOutcome("borda", _arg(sums, sums.min()), tuple(int(s) for s in sums))


def bucklin(profile: Profile) -> RuleOutcome:
    """Lowest median rank wins; with an even electorate the lower median is used."""
    s = np.sort(profile.ballots, axis=0)
    medians = s[(profile.n - 1) // 2]
    return RuleOutcome(
        "bucklin",
        _arg(medians, medians.min()),
        tuple(int(x) for x in medians),
        {"medians": tuple(int(x) for x in medians), "upper_medians": tuple(int(x) for x in s[profile.n // 2])},
    )


def plurality(profile: Profile) -> RuleOutcome:
    firsts = (profile.ballots == 1).sum(axis=0)
    return RuleOutcome("plurality", _arg(firsts, firsts.max()), tuple(int(x) for x in firsts))


def antiplurality(profile: Profile) -> RuleOutcome:
    """Fewest last places wins."""
    lasts = (profile.ballots == profile.m).sum(axis=0)
    return RuleOutcome("antiplurality", _arg(lasts, lasts.min()), tuple(int(x) for x in lasts))


def pairwise_matrix(profile: Profile) -> np.ndarray:
    """``N[a, b]`` = number of voters ranking ``a`` strictly above ``b``."""
    b = profile.ballots
    return (b[:, :, None] < b[:, None, :]).sum(axis=0)


def kemeny(profile: Profile, max_m: int | None = None) -> RuleOutcome:
    """Orders minimizing the total number of pairwise disagreements with the voters."""
    check_cap(profile.m, max_m)
    n_ab = pairwise_matrix(profile)
    perms = rankings_array(profile.m, max_m)
    # an order putting a above b disagrees with the N[b, a] voters who prefer b
    above = perms[:, :, None] < perms[:, None, :]
    scores = (above * n_ab.T[None, :, :]).sum(axis=(1, 2))
    best = scores.min()
    orders = tuple(Ranking(tuple(int(x) for x in perms[i])) for i in np.flatnonzero(scores == best))
    return RuleOutcome(
        "kemeny",
        frozenset(o.top for o in orders),
        (int(best),),
        {"optimal_orders": orders, "disagreements": int(best)},
    )


def condorcet_winner(profile: Profile) -> int | None:
    n_ab = pairwise_matrix(profile)
    for c in range(profile.m):
        if all(n_ab[c, o] > n_ab[o, c] for o in range(profile.m) if o != c):
            return c
    return None


def condorcet_loser(profile: Profile) -> int | None:
    n_ab = pairwise_matrix(profile)
    for c in range(profile.m):
        if all(n_ab[c, o] < n_ab[o, c] for o in range(profile.m) if o != c):
            return c
    return None


CLASSICAL_RULES = {
    "borda": borda,
    "bucklin": bucklin,
    "plurality": plurality,
    "antiplurality": antiplurality,
    "kemeny": kemeny,
}
