import math

import numpy as np
import pytest

from deepvote.exceptions import CapExceeded, DimensionMismatch, EmptyRanking, NotAPermutation
from deepvote.ranking import (
    Profile,
    Ranking,
    compose,
    enumerate_rankings,
    enumeration_cap,
    inverse,
    rankings_array,
    validate_ranking,
)


def test_ranking_validation():
    assert validate_ranking([2, 1, 3]).ranks == (2, 1, 3)
    with pytest.raises(NotAPermutation):
        Ranking((1, 1, 2))
    with pytest.raises(NotAPermutation):
        Ranking((0, 1, 2))
    with pytest.raises(EmptyRanking):
        Ranking(())


def test_top_bottom_and_order():
    r = Ranking((3, 1, 2))
    assert r.top == 1 and r.bottom == 0
    assert r.order() == (1, 2, 0)
    assert Ranking.from_order(r.order()) == r
    assert Ranking.identity(3).ranks == (1, 2, 3)


def test_inverse_and_compose():
    for s in enumerate_rankings(4):
        assert compose(s, inverse(s)) == Ranking.identity(4)
        assert compose(inverse(s), s) == Ranking.identity(4)
    with pytest.raises(DimensionMismatch):
        compose(Ranking((1, 2)), Ranking((1, 2, 3)))


def test_enumeration_is_lexicographic_and_complete():
    perms = list(enumerate_rankings(4))
    assert len(perms) == math.factorial(4)
    assert perms == sorted(perms)
    arr = rankings_array(4)
    assert arr.shape == (24, 4) and not arr.flags.writeable
    assert [tuple(row) for row in arr] == [p.ranks for p in perms]


def test_enumeration_cap(monkeypatch):
    with pytest.raises(CapExceeded):
        list(enumerate_rankings(10))
    monkeypatch.setenv("DEEPVOTE_MAX_M", "3")
    assert enumeration_cap() == 3
    with pytest.raises(CapExceeded):
        rankings_array(4)
    assert enumeration_cap(5) == 5


def test_profile_layouts_agree():
    rows = [[1, 1, 4, 4, 3], [2, 2, 2, 2, 2], [3, 3, 3, 3, 1], [4, 4, 1, 1, 4]]
    p = Profile.from_matrix(rows)
    assert (p.m, p.n) == (4, 5)
    assert np.array_equal(p.matrix, rows)
    assert Profile.from_ballots(p.ballots) == p
    assert hash(Profile.from_matrix(rows)) == hash(p)


def test_profile_reports_bad_column():
    with pytest.raises(NotAPermutation) as info:
        Profile.from_matrix([[1, 1, 2], [2, 1, 1], [3, 3, 3]])
    assert info.value.column == 1
    with pytest.raises(DimensionMismatch):
        Profile([(1, 2), (1, 2, 3)])
    with pytest.raises(DimensionMismatch):
        Profile([])


def test_relabel_moves_rows():
    p = Profile.from_matrix([[1, 2], [2, 3], [3, 1]])
    q = p.relabel([2, 0, 1])
    assert q.matrix.tolist() == [[3, 1], [1, 2], [2, 3]]


def test_remove_candidate_compresses_ranks():
    p = Profile.from_matrix([[1, 3], [2, 1], [3, 2]])
    assert p.remove_candidate(1).matrix.tolist() == [[1, 2], [2, 1]]
    assert p.remove_candidate(0).matrix.tolist() == [[1, 1], [2, 2]]


def test_voter_operations():
    p = Profile([(1, 2), (2, 1), (1, 2)])
    assert p.permute_voters([1, 0, 2]).columns[0].ranks == (2, 1)
    assert p.drop_voter(1).n == 2
    assert p.replace_voter(0, Ranking((2, 1))).columns[0].ranks == (2, 1)
