"""Command-line interface: ``deepvote <subcommand> ...``.

Exit codes: 0 success, 1 mismatch or violation found, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .axioms import Axiom, VotingRule, classical_rule, random_profile, search_counterexample
from .exceptions import DeepVoteError
from .frechet import FrechetParams, deepest_set
from .io import ProfileDocument, default_labels, emit_matrix_csv, emit_orders, emit_report, parse_profile
from .metrics import DistanceSpec, WeightMatrix
from .reproduce import render_text, reproduce_paper
from .rules import CLASSICAL_RULES

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2

DISTANCES = (
    "kendall",
    "hamming",
    "cayley",
    "minkowski",
    "footrule",
    "spearman",
    "weighted_hamming",
    "weighted_minkowski",
)


def _q(text: str) -> float:
    return float("inf") if text.lower() in ("inf", "infinity") else float(text)


def _read(path: str) -> tuple[str, str]:
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    return Path(path).read_text(encoding="utf-8"), path


def _load(args) -> ProfileDocument:
    text, source = _read(args.profile)
    return parse_profile(text, source, args.input_format)


def _weights(arg: str | None, m: int) -> WeightMatrix | None:
    if arg is None:
        return None
    if arg == "plurality":
        return WeightMatrix.plurality(m)
    if arg == "antiplurality":
        return WeightMatrix.antiplurality(m)
    return WeightMatrix.from_csv(_read(arg)[0])


def _spec(args, m: int) -> DistanceSpec:
    weights = _weights(args.weights, m)
    kind = args.distance
    if kind == "footrule":
        kind, q = "minkowski", 1
    elif kind == "spearman":
        kind, q = "minkowski", 2
    else:
        q = args.q
    if weights is not None and kind in ("hamming", "minkowski"):
        kind = "weighted_" + kind
    if kind in ("minkowski", "weighted_minkowski") and q is None:
        q = 1
    return DistanceSpec(kind, q, weights)


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _fmt(args) -> str:
    return "text" if args.format in ("text", "text-table") else "json"


def cmd_deepest(args, winners_only: bool = False) -> int:
    doc = _load(args)
    spec = _spec(args, doc.profile.m)
    result = deepest_set(doc.profile, FrechetParams(spec, args.p), args.max_m)
    if winners_only and _fmt(args) == "text":
        _emit(", ".join(doc.labels[c] for c in sorted(result.winner_set)) + "\n")
    else:
        _emit(emit_report([result], _fmt(args), doc.labels))
    return EXIT_OK


def cmd_compare(args) -> int:
    doc = _load(args)
    spec = _spec(args, doc.profile.m)
    deep = deepest_set(doc.profile, FrechetParams(spec, args.p), args.max_m)
    classical = CLASSICAL_RULES[args.rule](doc.profile)
    agree = deep.winner_set == classical.winner_set
    if _fmt(args) == "json":
        report = json.loads(emit_report([deep, classical], "json", doc.labels))
        report["agree"] = agree
        _emit(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        _emit(emit_report([deep, classical], "text", doc.labels))
        _emit(("winner sets agree" if agree else "winner sets differ") + "\n")
    return EXIT_OK if agree else EXIT_MISMATCH


def cmd_axioms(args) -> int:
    if args.rule:
        rule = classical_rule(args.rule)
    else:
        specs: dict[int, FrechetParams] = {}  # weight matrices are sized per profile

        def evaluate(profile):
            if profile.m not in specs:
                specs[profile.m] = FrechetParams(_spec(args, profile.m), args.p)
            return deepest_set(profile, specs[profile.m], args.max_m).winner_set

        label = FrechetParams(_spec(args, args.m_max), args.p).label
        rule = VotingRule(label, evaluate)
    verdict = search_counterexample(
        rule,
        Axiom(args.axiom),
        m_range=(args.m_min, args.m_max),
        n_range=(args.n_min, args.n_max),
        trials=args.trials,
        seed=args.seed,
        strict=args.strict,
        max_m=args.max_m,
    )
    _emit(emit_report([verdict], _fmt(args)))
    return EXIT_MISMATCH if verdict.violated else EXIT_OK


def cmd_reproduce(args) -> int:
    doc = reproduce_paper(trials=args.trials, seed=args.seed)
    if _fmt(args) == "json":
        _emit(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        _emit(render_text(doc))
    return EXIT_OK if doc["summary"]["passed"] else EXIT_MISMATCH


def cmd_gen(args) -> int:
    rng = np.random.default_rng(args.seed)
    profile = random_profile(rng, args.m, args.n, plant_top=args.plant_top)
    doc = ProfileDocument(default_labels(args.m), profile, f"gen(seed={args.seed})")
    _emit(emit_orders(doc) if args.output_format == "orders" else emit_matrix_csv(doc))
    return EXIT_OK


def _profile_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("profile", help="profile file (matrix CSV or 'k: A > B' orders); '-' reads stdin")
    p.add_argument("--input-format", choices=("auto", "csv", "orders"), default="auto")


def _distance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--distance", choices=DISTANCES, default="kendall")
    p.add_argument("--q", type=_q, default=None, help="Minkowski order, a number >= 1 or 'inf'")
    p.add_argument("--p", type=float, default=1, help="power of the Frechet functional (>= 1)")
    p.add_argument("--weights", default=None, help="'plurality', 'antiplurality' or a weight-matrix CSV path")
    p.add_argument("--max-m", type=int, default=None, help="largest number of candidates to enumerate")


def _format_arg(p: argparse.ArgumentParser, default: str = "json") -> None:
    p.add_argument("--format", choices=("json", "text", "text-table"), default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deepvote", description="Deepest voting on rankings.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (("winner", "winner set of one deepest rule"), ("deepest", "full deepest set")):
        p = sub.add_parser(name, help=helptext)
        _profile_args(p)
        _distance_args(p)
        _format_arg(p, "text" if name == "winner" else "json")

    p = sub.add_parser("compare", help="deepest rule vs a classical rule")
    _profile_args(p)
    _distance_args(p)
    p.add_argument("--rule", choices=sorted(CLASSICAL_RULES), required=True)
    _format_arg(p, "text")

    p = sub.add_parser("axioms", help="seeded counterexample search for one axiom")
    p.add_argument("--axiom", choices=[a.value for a in Axiom], required=True)
    p.add_argument("--rule", choices=sorted(CLASSICAL_RULES), default=None, help="test a classical rule instead")
    _distance_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--m-min", type=int, default=2)
    p.add_argument("--m-max", type=int, default=5)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=11)
    p.add_argument("--strict", action="store_true", help="require the winner to stay unique")
    _format_arg(p)

    p = sub.add_parser("reproduce-paper", help="replay every pinned profile and rebuild the summary tables")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    _format_arg(p, "text")

    p = sub.add_parser("gen", help="seeded random profile")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--plant-top", action="store_true", help="every voter ranks the same candidate first")
    p.add_argument("--output-format", choices=("csv", "orders"), default="csv")
    return parser


COMMANDS = {
    "winner": lambda a: cmd_deepest(a, winners_only=True),
    "deepest": cmd_deepest,
    "compare": cmd_compare,
    "axioms": cmd_axioms,
    "reproduce-paper": cmd_reproduce,
    "gen": cmd_gen,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (DeepVoteError, OSError) as exc:
        print(f"deepvote: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
