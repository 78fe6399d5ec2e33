import numpy as np
import pytest

from deepvote.axioms import random_profile
from deepvote.continuous import DeepestBox, continuous_winner_set, l1_deepest_box, l2_deepest, lq_depth
from deepvote.exceptions import DeepVoteError, DimensionMismatch, InvalidOrder
from deepvote.ranking import Profile
from deepvote.reproduce import pinned_profile


def test_median_box_example():
    box = l1_deepest_box(pinned_profile("median_box"))
    assert box == DeepestBox((1, 1, 2), (2, 3, 3))
    assert continuous_winner_set(box, "L1") == {0, 1, 2}


def test_odd_electorate_gives_degenerate_box():
    box = l1_deepest_box(pinned_profile("bucklin_vs_footrule"))
    assert box.degenerate and box.lower == (3, 2, 3, 4)
    assert continuous_winner_set(box) == {1}
    assert l1_deepest_box(Profile([(2, 1, 3)])) == DeepestBox((2, 1, 3), (2, 1, 3))


def test_box_points_maximize_l1_depth():
    prof = pinned_profile("median_box")
    box = l1_deepest_box(prof)
    best = lq_depth(box.lower, prof, 1)
    assert lq_depth(box.upper, prof, 1) == pytest.approx(best)
    assert lq_depth((1.5, 2.0, 2.5), prof, 1) == pytest.approx(best)
    assert lq_depth((0.5, 2.0, 2.5), prof, 1) < best
    assert (1.5, 2, 2.5) in box and (3, 2, 2.5) not in box


def test_l1_winner_criterion_matches_grid_search():
    rng = np.random.default_rng(5)
    for _ in range(30):
        prof = random_profile(rng, int(rng.integers(2, 5)), int(rng.integers(2, 9)))
        box = l1_deepest_box(prof)
        grid = np.meshgrid(*[np.linspace(lo, hi, 5) for lo, hi in zip(box.lower, box.upper)])
        points = np.stack([g.ravel() for g in grid], axis=1)
        minimal = set()
        for x in points:
            minimal |= set(np.flatnonzero(x == x.min()).tolist())
        assert continuous_winner_set(box, "L1") == minimal


def test_l2_deepest_is_mean_and_maximizes_depth():
    rng = np.random.default_rng(2)
    prof = random_profile(rng, 4, 7)
    mean = l2_deepest(prof)
    assert np.allclose(mean, prof.ballots.mean(axis=0))
    best = lq_depth(mean, prof, 2)
    for _ in range(50):
        assert lq_depth(mean + rng.normal(scale=0.3, size=4), prof, 2) <= best
    assert continuous_winner_set(mean) == set(np.flatnonzero(mean == mean.min()).tolist())


def test_lq_depth_values():
    prof = Profile([(1, 2), (2, 1)])
    assert lq_depth((1.5, 1.5), prof, 1) == pytest.approx(1 / 2)
    assert lq_depth((1.5, 1.5), prof, 2) == pytest.approx(1 / 1.5)
    assert lq_depth((1.5, 1.5), prof, float("inf")) == pytest.approx(1 / 1.5)
    with pytest.raises(InvalidOrder):
        lq_depth((1, 2), prof, 0.5)
    with pytest.raises(DimensionMismatch):
        lq_depth((1, 2, 3), prof, 1)
    with pytest.raises(DeepVoteError):
        continuous_winner_set((1, 2), "L3")
