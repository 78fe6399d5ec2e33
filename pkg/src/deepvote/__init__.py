"""Deepest voting: elect the top candidate of the most central ranking(s)."""

from .axioms import Axiom, AxiomVerdict, VotingRule, classical_rule, frechet_rule, search_counterexample
from .continuous import DeepestBox, continuous_winner_set, l1_deepest_box, l2_deepest, lq_depth
from .estimators import FrechetVoting, LqDepthVoting
from .exceptions import DeepVoteError
from .frechet import DeepestResult, FrechetParams, deepest_set, depth_value, frechet_functional
from .io import ProfileDocument, emit_report, parse_matrix_csv, parse_orders, parse_profile
from .metrics import DistanceSpec, WeightMatrix, distance
from .ranking import Profile, Ranking
from .rules import antiplurality, borda, bucklin, condorcet_loser, condorcet_winner, kemeny, plurality

__version__ = "0.1.0"

__all__ = [
    "Axiom",
    "AxiomVerdict",
    "DeepVoteError",
    "DeepestBox",
    "DeepestResult",
    "DistanceSpec",
    "FrechetParams",
    "FrechetVoting",
    "LqDepthVoting",
    "Profile",
    "ProfileDocument",
    "Ranking",
    "VotingRule",
    "WeightMatrix",
    "antiplurality",
    "borda",
    "bucklin",
    "classical_rule",
    "condorcet_loser",
    "condorcet_winner",
    "continuous_winner_set",
    "deepest_set",
    "depth_value",
    "distance",
    "emit_report",
    "frechet_functional",
    "frechet_rule",
    "kemeny",
    "l1_deepest_box",
    "l2_deepest",
    "lq_depth",
    "parse_matrix_csv",
    "parse_orders",
    "parse_profile",
    "plurality",
    "search_counterexample",
]
