"""Randomized agreement checks between classical rules and deepest voting.

Each suite draws seeded impartial-culture profiles and compares the winner
set of a classical rule (from :mod:`deepvote.rules`) with the one produced by
the corresponding deepest rule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .axioms import random_profile
from .continuous import continuous_winner_set, l1_deepest_box, l2_deepest
from .frechet import FrechetParams, deepest_set
from .metrics import DistanceSpec, WeightMatrix
from .ranking import Profile
from .rules import antiplurality, borda, bucklin, kemeny, plurality


@dataclass(frozen=True)
class Mismatch:
    profile: Profile
    classical: frozenset[int]
    deepest: frozenset[int]


@dataclass(frozen=True)
class EquivalenceReport:
    suite: str
    trials: int
    compared: int
    mismatches: tuple[Mismatch, ...]

    @property
    def passed(self) -> bool:
        return not self.mismatches


def _kemeny(profile):
    return kemeny(profile).winner_set, deepest_set(profile, FrechetParams(DistanceSpec.kendall(), 1)).winner_set


def _borda(profile):
    classical = borda(profile).winner_set
    if len(classical) != 1:
        return None
    return classical, deepest_set(profile, FrechetParams(DistanceSpec.spearman_rho(), 2)).winner_set


def _borda_l2(profile):
    return borda(profile).winner_set, continuous_winner_set(l2_deepest(profile), "L2")


def _plurality(profile):
    spec = DistanceSpec.weighted_hamming(WeightMatrix.plurality(profile.m))
    return plurality(profile).winner_set, deepest_set(profile, FrechetParams(spec, 1)).winner_set


def _antiplurality(profile):
    spec = DistanceSpec.weighted_hamming(WeightMatrix.antiplurality(profile.m))
    return antiplurality(profile).winner_set, deepest_set(profile, FrechetParams(spec, 1)).last_set


def _bucklin_l1(profile):
    return bucklin(profile).winner_set, continuous_winner_set(l1_deepest_box(profile), "L1")


# name -> (comparison, relation the two winner sets must satisfy)
SUITES = {
    "kemeny": (_kemeny, "equal"),
    "borda": (_borda, "equal"),
    "borda_l2": (_borda_l2, "equal"),
    "plurality": (_plurality, "equal"),
    "antiplurality": (_antiplurality, "equal"),
    "bucklin_l1": (_bucklin_l1, "subset"),
}


def run_suite(
    suite: str,
    trials: int = 500,
    seed: int = 0,
    m_range: tuple[int, int] = (2, 5),
    n_range: tuple[int, int] = (3, 11),
) -> EquivalenceReport:
    compare, relation = SUITES[suite]
    mismatches = []
    compared = 0
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        m = int(rng.integers(m_range[0], m_range[1] + 1))
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        profile = random_profile(rng, m, n)
        pair = compare(profile)
        if pair is None:
            continue
        compared += 1
        classical, deep = pair
        ok = classical == deep if relation == "equal" else classical <= deep
        if not ok:
            mismatches.append(Mismatch(profile, classical, deep))
    return EquivalenceReport(suite, trials, compared, tuple(mismatches))
