"""Machine-checkable voting axioms and a seeded counterexample search.

Sampling can only ever show a rule *violates* an axiom or that it *held on the
sample*; verdicts never claim more.  Every violation carries a self-contained
:class:`Witness` that :func:`replay_witness` re-checks from scratch.

Winner preservation (Monotonicity, Independence to Losers) asks that the
original unique winner still belongs to the new winner set.  Pass
``strict=True`` to require it to stay the unique winner instead.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .exceptions import DeepVoteError, NoEligibleVoter, NotApplicable
from .frechet import FrechetParams, deepest_set
from .metrics import DistanceSpec
from .ranking import Profile, Ranking, check_cap
from .rules import CLASSICAL_RULES, condorcet_loser, condorcet_winner

HOLDS = "holds-on-sample"
VIOLATED = "violated"


class Axiom(str, Enum):
    NEUTRALITY = "neutrality"
    ANONYMITY = "anonymity"
    UNIVERSALITY = "universality"
    UNANIMITY = "unanimity"
    MONOTONICITY = "monotonicity"
    INDEPENDENCE_LOSERS = "independence_losers"
    CONDORCET_WINNER = "condorcet_winner"
    CONDORCET_LOSER = "condorcet_loser"


@dataclass(eq=False)
class VotingRule:
    """A named map from profiles to winner sets, memoized per profile."""

    id: str
    evaluate: Callable[[Profile], frozenset[int]]
    cache_size: int = 4096
    _cache: dict = field(default_factory=dict, repr=False)

    def __call__(self, profile: Profile) -> frozenset[int]:
        hit = self._cache.get(profile)
        if hit is None:
            if len(self._cache) >= self.cache_size:
                self._cache.clear()
            hit = self._cache[profile] = frozenset(self.evaluate(profile))
        return hit


def frechet_rule(spec: DistanceSpec, p=1, max_m: int | None = None, rule_id: str | None = None) -> VotingRule:
    params = FrechetParams(spec, p)
    return VotingRule(rule_id or params.label, lambda prof: deepest_set(prof, params, max_m).winner_set)


def classical_rule(name: str) -> VotingRule:
    fn = CLASSICAL_RULES[name]
    return VotingRule(name, lambda prof: fn(prof).winner_set)


@dataclass(frozen=True)
class Transform:
    kind: str  # relabel | shuffle | swap | remove
    params: tuple


def apply_transform(profile: Profile, transform: Transform) -> Profile:
    kind, params = transform.kind, transform.params
    if kind == "relabel":
        return profile.relabel(params)
    if kind == "shuffle":
        return profile.permute_voters(params)
    if kind == "swap":
        voter, cand = params
        return profile.replace_voter(voter, upgraded(profile.columns[voter], cand))
    if kind == "remove":
        return profile.remove_candidate(params[0])
    raise ValueError(f"unknown transform {kind!r}")


def upgraded(ranking: Ranking, cand: int) -> Ranking:
    """Move ``cand`` up one place, swapping it with the candidate just above."""
    alpha = ranking.ranks[cand]
    if alpha == 1:
        raise DeepVoteError("the candidate is already ranked first")
    ranks = list(ranking.ranks)
    above = ranks.index(alpha - 1)
    ranks[cand], ranks[above] = alpha - 1, alpha
    return Ranking(tuple(ranks))


@dataclass(frozen=True)
class Witness:
    profile: Profile
    expected: frozenset[int]
    observed: frozenset[int]
    transformed: Profile | None = None
    transform: Transform | None = None


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: Axiom
    rule_id: str
    status: str
    witness: Witness | None = None
    trials: int = 1
    skipped: int = 0
    seed: int | None = None

    @property
    def violated(self) -> bool:
        return self.status == VIOLATED


def _violates(axiom: Axiom, expected: frozenset, observed: frozenset, strict: bool) -> bool:
    if axiom is Axiom.UNIVERSALITY:
        return not observed or not observed <= expected
    if axiom is Axiom.CONDORCET_LOSER:
        return bool(expected & observed)
    if axiom in (Axiom.MONOTONICITY, Axiom.INDEPENDENCE_LOSERS) and not strict:
        return not expected <= observed
    return expected != observed


def _unique_winner(rule: VotingRule, profile: Profile) -> int:
    winners = rule(profile)
    if len(winners) != 1:
        raise NotApplicable("the rule has no unique winner on this profile")
    return next(iter(winners))


def _expected(axiom: Axiom, rule: VotingRule, profile: Profile, transform: Transform | None) -> frozenset[int]:
    if axiom is Axiom.NEUTRALITY:
        perm = transform.params
        back = {old: new for new, old in enumerate(perm)}
        return frozenset(back[w] for w in rule(profile))
    if axiom is Axiom.ANONYMITY:
        return rule(profile)
    if axiom is Axiom.UNIVERSALITY:
        return frozenset(range(profile.m))
    if axiom is Axiom.UNANIMITY:
        tops = {col.top for col in profile.columns}
        if len(tops) != 1:
            raise NotApplicable("no candidate is ranked first by every voter")
        return frozenset(tops)
    if axiom is Axiom.MONOTONICITY:
        return frozenset([_unique_winner(rule, profile)])
    if axiom is Axiom.INDEPENDENCE_LOSERS:
        winner = _unique_winner(rule, profile)
        c0 = transform.params[0]
        return frozenset([winner - (winner > c0)])
    if axiom is Axiom.CONDORCET_WINNER:
        cw = condorcet_winner(profile)
        if cw is None:
            raise NotApplicable("no Condorcet winner")
        return frozenset([cw])
    cl = condorcet_loser(profile)
    if cl is None:
        raise NotApplicable("no Condorcet loser")
    return frozenset([cl])


def _candidate_transforms(axiom: Axiom, rule: VotingRule, profile: Profile, rng: np.random.Generator):
    if axiom is Axiom.NEUTRALITY:
        return [Transform("relabel", tuple(int(c) for c in rng.permutation(profile.m)))]
    if axiom is Axiom.ANONYMITY:
        return [Transform("shuffle", tuple(int(v) for v in rng.permutation(profile.n)))]
    if axiom is Axiom.MONOTONICITY:
        winner = _unique_winner(rule, profile)
        eligible = [v for v, col in enumerate(profile.columns) if col.ranks[winner] != 1]
        if not eligible:
            raise NoEligibleVoter("the winner is already ranked first by every voter")
        return [Transform("swap", (v, winner)) for v in eligible]
    if axiom is Axiom.INDEPENDENCE_LOSERS:
        if profile.m < 3:
            return []
        winner = _unique_winner(rule, profile)
        return [Transform("remove", (c0,)) for c0 in range(profile.m) if c0 != winner]
    return [None]


def probe(
    axiom: Axiom,
    rule: VotingRule,
    profile: Profile,
    rng: np.random.Generator | None = None,
    strict: bool = False,
) -> Witness | None:
    """Test one profile; a witness on violation, ``None`` when the axiom held.

    Raises :class:`NotApplicable` when the axiom's premise fails on ``profile``.
    """
    axiom = Axiom(axiom)
    rng = rng if rng is not None else np.random.default_rng(0)
    for transform in _candidate_transforms(axiom, rule, profile, rng):
        expected = _expected(axiom, rule, profile, transform)
        target = apply_transform(profile, transform) if transform is not None else None
        observed = rule(target if target is not None else profile)
        if _violates(axiom, expected, observed, strict):
            return Witness(profile, expected, observed, target, transform)
    return None


def replay_witness(rule: VotingRule, axiom: Axiom, witness: Witness, strict: bool = False) -> bool:
    """Recompute a witness from its profile alone; True if it still violates."""
    axiom = Axiom(axiom)
    expected = _expected(axiom, rule, witness.profile, witness.transform)
    target = witness.profile
    if witness.transform is not None:
        target = apply_transform(witness.profile, witness.transform)
    return _violates(axiom, expected, rule(target), strict)


def _verdict(axiom, rule, witness, trials=1, skipped=0, seed=None) -> AxiomVerdict:
    return AxiomVerdict(
        axiom=Axiom(axiom),
        rule_id=rule.id,
        status=VIOLATED if witness is not None else HOLDS,
        witness=witness,
        trials=trials,
        skipped=skipped,
        seed=seed,
    )


def check(axiom: Axiom, rule: VotingRule, profile: Profile, seed: int = 0, strict: bool = False) -> AxiomVerdict:
    """Single-profile verdict; premise failures propagate as :class:`NotApplicable`."""
    witness = probe(axiom, rule, profile, np.random.default_rng(seed), strict)
    return _verdict(axiom, rule, witness, seed=seed)


def check_neutrality(rule: VotingRule, profile: Profile, seed: int = 0) -> AxiomVerdict:
    return check(Axiom.NEUTRALITY, rule, profile, seed)


def check_anonymity(rule: VotingRule, profile: Profile, seed: int = 0) -> AxiomVerdict:
    return check(Axiom.ANONYMITY, rule, profile, seed)


def check_universality(rule: VotingRule, profile: Profile) -> AxiomVerdict:
    return check(Axiom.UNIVERSALITY, rule, profile)


def check_unanimity(rule: VotingRule, profile: Profile) -> AxiomVerdict:
    return check(Axiom.UNANIMITY, rule, profile)


def check_monotonicity(rule: VotingRule, profile: Profile, strict: bool = False) -> AxiomVerdict:
    return check(Axiom.MONOTONICITY, rule, profile, strict=strict)


def check_independence_losers(rule: VotingRule, profile: Profile, strict: bool = False) -> AxiomVerdict:
    return check(Axiom.INDEPENDENCE_LOSERS, rule, profile, strict=strict)


def check_condorcet_winner_property(rule: VotingRule, profile: Profile) -> AxiomVerdict:
    return check(Axiom.CONDORCET_WINNER, rule, profile)


def check_condorcet_loser_property(rule: VotingRule, profile: Profile) -> AxiomVerdict:
    return check(Axiom.CONDORCET_LOSER, rule, profile)


def random_profile(rng: np.random.Generator, m: int, n: int, plant_top: bool = False) -> Profile:
    """Impartial-culture profile; optionally every voter ranks one random candidate first."""
    if not plant_top:
        return Profile(tuple(int(r) + 1 for r in rng.permutation(m)) for _ in range(n))
    top = int(rng.integers(m))
    others = [c for c in range(m) if c != top]
    cols = []
    for _ in range(n):
        order = [top] + [others[i] for i in rng.permutation(m - 1)]
        cols.append(Ranking.from_order(order))
    return Profile(cols)


def _probe_or_none(axiom, rule, profile, seed_key, strict):
    try:
        return probe(axiom, rule, profile, np.random.default_rng(seed_key), strict)
    except NotApplicable:
        return None


def shrink(axiom: Axiom, rule: VotingRule, witness: Witness, seed_key, strict: bool = False) -> Witness:
    """Greedily drop voters (highest index first), then candidates, while still violating."""
    current = witness
    for dimension in ("voters", "candidates"):
        changed = True
        while changed:
            changed = False
            prof = current.profile
            size = prof.n if dimension == "voters" else prof.m
            if size <= 1:
                break
            for i in reversed(range(size)):
                smaller = prof.drop_voter(i) if dimension == "voters" else prof.remove_candidate(i)
                found = _probe_or_none(axiom, rule, smaller, seed_key, strict)
                if found is not None:
                    current = found
                    changed = True
                    break
    return current


def search_counterexample(
    rule: VotingRule,
    axiom: Axiom,
    m_range: tuple[int, int] = (2, 5),
    n_range: tuple[int, int] = (3, 11),
    trials: int = 2000,
    seed: int = 0,
    strict: bool = False,
    shrink_witness: bool = True,
    max_m: int | None = None,
) -> AxiomVerdict:
    """Run ``axiom`` on seeded random profiles until a violation or ``trials`` run out.

    Trial ``t`` draws from ``default_rng([seed, t])`` so any trial can be
    reproduced on its own.  Profiles failing the axiom's premise are counted
    as skipped.
    """
    axiom = Axiom(axiom)
    check_cap(m_range[1], max_m)
    skipped = 0
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        m = int(rng.integers(m_range[0], m_range[1] + 1))
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        profile = random_profile(rng, m, n, plant_top=axiom is Axiom.UNANIMITY)
        try:
            witness = probe(axiom, rule, profile, rng, strict)
        except NotApplicable:
            skipped += 1
            continue
        if witness is not None:
            if shrink_witness:
                witness = shrink(axiom, rule, witness, [seed, t, 1], strict)
            return _verdict(axiom, rule, witness, trials=t + 1, skipped=skipped, seed=seed)
    return _verdict(axiom, rule, None, trials=trials, skipped=skipped, seed=seed)
