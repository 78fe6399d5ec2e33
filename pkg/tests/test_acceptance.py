"""Acceptance criteria, one test per criterion.

A pass/fail line per criterion is printed in the pytest terminal summary.
Run alone with ``pytest tests/test_acceptance.py``.
"""

import json
import time

import numpy as np
import pytest

from deepvote.axioms import Axiom, VotingRule, frechet_rule, random_profile, search_counterexample
from deepvote.cli import main
from deepvote.continuous import continuous_winner_set, l1_deepest_box
from deepvote.equivalence import run_suite
from deepvote.frechet import FrechetParams, deepest_set, frechet_functional
from deepvote.io import parse_orders
from deepvote.metrics import DistanceSpec, WeightMatrix
from deepvote.ranking import Ranking
from deepvote.reproduce import MONOTONICITY_ORDERS, MONOTONICITY_UPGRADED, pinned_profile
from deepvote.rules import bucklin, condorcet_winner
from oracles import brute_force_deepest

pytestmark = pytest.mark.acceptance

INF = float("inf")
PINNED_BUDGET = 10.0
RANDOMIZED_BUDGET = 120.0
_randomized_seconds = []


def deep(name_or_profile, spec, p=1):
    prof = pinned_profile(name_or_profile) if isinstance(name_or_profile, str) else name_or_profile
    return deepest_set(prof, FrechetParams(spec, p))


def total(name, spec, p, ranks):
    prof = pinned_profile(name)
    return frechet_functional(Ranking(ranks), prof, FrechetParams(spec, p)) * prof.n


def rankings(*rows):
    return tuple(sorted(Ranking(r) for r in rows))


_pinned_seconds = []


@pytest.fixture
def pinned_clock():
    start = time.perf_counter()
    yield
    _pinned_seconds.append(time.perf_counter() - start)


@pytest.mark.criterion(1, "bucklin c2 vs footrule deepest (1,2,3,4) -> c1")
def test_criterion_1(pinned_clock):
    b = bucklin(pinned_profile("bucklin_vs_footrule"))
    assert b.detail["medians"] == (3, 2, 3, 4) and b.winner_set == {1}
    for p in (1, 2):
        r = deep("bucklin_vs_footrule", DistanceSpec.footrule(), p)
        assert r.deepest_set == rankings((1, 2, 3, 4)) and r.winner_set == {0}


@pytest.mark.criterion(2, "kendall p=1 elects c1 (4 vs 5), p=2 elects c2 (10 vs 7)")
def test_criterion_2(pinned_clock):
    k = DistanceSpec.kendall()
    assert deep("kendall_condorcet_p2", k, 1).winner_set == {0}
    assert deep("kendall_condorcet_p2", k, 2).winner_set == {1}
    assert [total("kendall_condorcet_p2", k, 1, r) for r in [(1, 2, 3), (2, 1, 3)]] == [4, 5]
    assert [total("kendall_condorcet_p2", k, 2, r) for r in [(1, 2, 3), (2, 1, 3)]] == [10, 7]


@pytest.mark.criterion(3, "condorcet winner c1 rejected by hamming, cayley, minkowski")
def test_criterion_3(pinned_clock):
    name = "condorcet_failure"
    assert condorcet_winner(pinned_profile(name)) == 0
    for p in (1, 2):
        assert deep(name, DistanceSpec.hamming(), p).winner_set == {1}
        assert deep(name, DistanceSpec.cayley(), p).winner_set == {1}
    assert total(name, DistanceSpec.hamming(), 1, (2, 1, 3)) == 10
    assert total(name, DistanceSpec.cayley(), 1, (2, 1, 3)) == 5
    for q in (1, 2, 3):
        assert deep(name, DistanceSpec.minkowski(q), 1).winner_set == {1}
    assert [total(name, DistanceSpec.footrule(), 1, r) for r in [(1, 2, 3), (2, 1, 3)]] == [16, 14]


@pytest.mark.criterion(4, "sup-norm minkowski deepest sets, winners {c1,c6}")
def test_criterion_4(pinned_clock):
    sup = DistanceSpec.minkowski(INF)
    two = rankings((1, 5, 6, 3, 4, 2), (2, 5, 6, 3, 4, 1))
    expected = {1: rankings((1, 4, 6, 3, 5, 2), *two), 2: two, 3: two}
    for p, want in expected.items():
        r = deep("sup_norm_unanimity", sup, p)
        assert r.deepest_set == want
        assert r.winner_set == {0, 5} and r.unique_winner is False


@pytest.mark.criterion(5, "hamming p=1 winner A becomes D after upgrading A in voter 5")
def test_criterion_5(pinned_clock):
    before = parse_orders(MONOTONICITY_ORDERS)
    after = parse_orders(MONOTONICITY_UPGRADED, labels=before.labels)
    h = DistanceSpec.hamming()
    assert deep(before.profile, h).winner_set == {before.labels.index("A")}
    assert deep(after.profile, h).winner_set == {before.labels.index("D")}


@pytest.mark.criterion(6, "two candidates elect c1; third candidate gives (3,1,2) -> c2")
def test_criterion_6(pinned_clock):
    for q in (1, 2, 3, INF):
        assert deep("two_candidates", DistanceSpec.minkowski(q)).winner_set == {0}
    for spec in [DistanceSpec.minkowski(q) for q in (1, 2, 3, INF)] + [DistanceSpec.hamming(), DistanceSpec.kendall()]:
        r = deep("third_candidate_added", spec)
        assert r.deepest_set == rankings((3, 1, 2)) and r.winner_set == {1}
    # the Cayley distance also moves the winner off c1, but into a three-way tie
    c = deep("third_candidate_added", DistanceSpec.cayley())
    assert deep("two_candidates", DistanceSpec.cayley()).winner_set == {0}
    assert 1 in c.winner_set and c.winner_set != {0}


@pytest.mark.criterion(7, "L1 box [1,2]x[1,3]x[2,3], winners {c1,c2,c3}")
def test_criterion_7(pinned_clock):
    box = l1_deepest_box(pinned_profile("median_box"))
    assert (box.lower, box.upper) == ((1, 1, 2), (2, 3, 3))
    assert continuous_winner_set(box, "L1") == {0, 1, 2}


@pytest.mark.slow
@pytest.mark.criterion(8, "equivalence suites, 500 profiles each, zero mismatches")
def test_criterion_8():
    start = time.perf_counter()
    for suite in ("kemeny", "borda", "borda_l2", "plurality", "antiplurality", "bucklin_l1"):
        report = run_suite(suite, trials=500, seed=0)
        assert report.compared > 0
        assert report.mismatches == (), suite
    _randomized_seconds.append(time.perf_counter() - start)


def _per_size(label, builder, p):
    """Deepest rule whose distance is rebuilt for each candidate count."""
    cache = {}

    def evaluate(profile):
        if profile.m not in cache:
            cache[profile.m] = FrechetParams(builder(profile.m), p)
        return deepest_set(profile, cache[profile.m]).winner_set

    return VotingRule(f"{label}, p={p}", evaluate)


def _graded(m):
    return WeightMatrix.from_array([[1 + abs(r - s) for s in range(m)] for r in range(m)])


DEEPEST_RULES = [
    ("kendall", lambda m: DistanceSpec.kendall()),
    ("hamming", lambda m: DistanceSpec.hamming()),
    ("cayley", lambda m: DistanceSpec.cayley()),
    ("footrule", lambda m: DistanceSpec.minkowski(1)),
    ("spearman rho", lambda m: DistanceSpec.minkowski(2)),
    ("minkowski q=3", lambda m: DistanceSpec.minkowski(3)),
    ("minkowski q=inf", lambda m: DistanceSpec.minkowski(INF)),
    ("hamming W(1,(1))", lambda m: DistanceSpec.weighted_hamming(WeightMatrix.plurality(m))),
    ("hamming W(-1,(m))", lambda m: DistanceSpec.weighted_hamming(WeightMatrix.antiplurality(m))),
    ("weighted minkowski q=2", lambda m: DistanceSpec.weighted_minkowski(2, _graded(m))),
]
UNANIMOUS = ["kendall", "hamming", "footrule", "spearman rho", "minkowski q=3"]


@pytest.mark.slow
@pytest.mark.criterion(9, "proved axioms hold on 2000 seeded trials per suite")
def test_criterion_9():
    start = time.perf_counter()
    suites = []
    for label, builder in DEEPEST_RULES:
        for p in (1, 2):
            rule = _per_size(label, builder, p)
            suites += [(rule, a) for a in (Axiom.NEUTRALITY, Axiom.ANONYMITY, Axiom.UNIVERSALITY)]
            if label in UNANIMOUS:
                suites.append((rule, Axiom.UNANIMITY))
    suites.append((frechet_rule(DistanceSpec.kendall(), 1), Axiom.CONDORCET_WINNER))
    suites.append((frechet_rule(DistanceSpec.footrule(), 1), Axiom.MONOTONICITY))
    violated = []
    for rule, axiom in suites:
        verdict = search_counterexample(rule, axiom, trials=2000, seed=0)
        if verdict.violated:
            violated.append(f"{rule.id} / {axiom.value}")
    assert violated == []
    _randomized_seconds.append(time.perf_counter() - start)


ORACLE_KINDS = [
    (DistanceSpec.kendall(), "kendall", None),
    (DistanceSpec.hamming(), "hamming", None),
    (DistanceSpec.cayley(), "cayley", None),
    (DistanceSpec.minkowski(1), "minkowski", 1),
    (DistanceSpec.minkowski(2), "minkowski", 2),
    (DistanceSpec.minkowski(3), "minkowski", 3),
    (DistanceSpec.minkowski(1.5), "minkowski", 1.5),
    (DistanceSpec.minkowski(INF), "minkowski", INF),
]


@pytest.mark.slow
@pytest.mark.criterion(10, "deepest_set equals double-loop brute force, 100 profiles, m <= 4")
def test_criterion_10():
    start = time.perf_counter()
    mismatches = []
    for t in range(100):
        rng = np.random.default_rng([10, t])
        m, n = int(rng.integers(2, 5)), int(rng.integers(1, 9))
        prof = random_profile(rng, m, n)
        cols = [c.ranks for c in prof.columns]
        signed = WeightMatrix.from_array(rng.integers(-2, 3, size=(m, m)))
        positive = WeightMatrix.from_array(rng.integers(1, 4, size=(m, m)))
        kinds = ORACLE_KINDS + [
            (DistanceSpec.weighted_hamming(signed), "weighted_hamming", None),
            (DistanceSpec.weighted_minkowski(2, positive), "weighted_minkowski", 2),
        ]
        for spec, kind, q in kinds:
            w = spec.weights.entries if spec.weights else None
            for p in (1, 2):
                got = {s.ranks for s in deep(prof, spec, p).deepest_set}
                want, _ = brute_force_deepest(cols, kind, p, q=q, w=w)
                if got != want:
                    mismatches.append((t, spec.label, p))
    assert mismatches == []
    _randomized_seconds.append(time.perf_counter() - start)


@pytest.mark.criterion(11, "reproduce-paper exits 0 and its tables match cell for cell")
def test_criterion_11(capsys):
    code = main(["reproduce-paper", "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0 and doc["summary"]["passed"]
    assert all(c["passed"] for c in doc["pinned"])
    assert doc["summary"]["pinned_seconds"] < PINNED_BUDGET
    assert all(r["status"] == "confirmed" for r in doc["rule_correspondence"])
    kemeny = next(r for r in doc["rule_correspondence"] if r["rule"] == "Kemeny")
    assert (kemeny["distance"], kemeny["weights"], kemeny["p"]) == ("Kendall", "none", "1")
    cells = {(c["distance"], c["axiom"]): c for c in doc["axiom_table"]}
    assert len(cells) == 30
    for cell in cells.values():
        if cell["expected"] == ".":
            assert cell["status"] == "open" and cell["open"]
            assert cell["observed"].startswith("sampled")
        else:
            assert cell["status"] == "match", cell
    q1 = cells[("Minkowski q=1", "Condorcet winner")]
    assert q1["observed"] == "N for p=1"
    assert any("condorcet_failure" in e for e in q1["evidence"])


def test_time_budgets():
    # runs last in file order, after every timed criterion
    assert len(_pinned_seconds) == 7 and sum(_pinned_seconds) < PINNED_BUDGET
    assert len(_randomized_seconds) == 3 and sum(_randomized_seconds) < RANDOMIZED_BUDGET
