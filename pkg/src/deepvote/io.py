"""Profile ingestion and report emission.

Two input formats are understood:

* matrix CSV laid out like a vote table: one row per candidate, first cell the
  candidate label, remaining cells the ranks given by each voter.  An optional
  header row holds voter ids.
* count-prefixed strict orders, one ballot class per line (or separated by
  ``;``)::

      # comment
      2: A > B > C
      1: C > A > B
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .axioms import AxiomVerdict, Witness
from .continuous import DeepestBox
from .exceptions import (
    BadCount,
    DuplicateLabel,
    IncompleteOrder,
    NotRectangular,
    ParseError,
    UnknownLabel,
)
from .frechet import DeepestResult
from .ranking import Profile, Ranking
from .rules import RuleOutcome

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ProfileDocument:
    labels: tuple[str, ...]
    profile: Profile
    source: str = "<memory>"

    def __post_init__(self):
        if len(self.labels) != self.profile.m:
            raise ParseError(f"{len(self.labels)} labels for {self.profile.m} candidates")
        if len(set(self.labels)) != len(self.labels):
            raise DuplicateLabel("candidate labels must be unique")


def default_labels(m: int) -> tuple[str, ...]:
    return tuple(f"c{i}" for i in range(1, m + 1))


def _is_int(cell: str) -> bool:
    return re.fullmatch(r"\s*[+-]?\d+\s*", cell) is not None


def parse_matrix_csv(text: str, source: str = "<memory>") -> ProfileDocument:
    rows = [
        [cell.strip() for cell in row]
        for row in csv.reader(io.StringIO(text))
        if row and any(cell.strip() for cell in row) and not row[0].lstrip().startswith("#")
    ]
    if not rows:
        raise NotRectangular("empty matrix")
    if not all(_is_int(cell) for cell in rows[0][1:]):
        rows = rows[1:]  # header of voter ids
    if not rows:
        raise NotRectangular("matrix has a header but no candidate rows")
    width = len(rows[0])
    if width < 2 or any(len(row) != width for row in rows):
        raise NotRectangular("every row needs a label and the same number of voter columns")
    labels = tuple(row[0] for row in rows)
    if len(set(labels)) != len(labels):
        raise DuplicateLabel(f"duplicate candidate label in {labels}")
    bad = [cell for row in rows for cell in row[1:] if not _is_int(cell)]
    if bad:
        raise ParseError(f"non-integer rank {bad[0]!r}")
    matrix = [[int(cell) for cell in row[1:]] for row in rows]
    return ProfileDocument(labels, Profile.from_matrix(matrix), source)


_BALLOT = re.compile(r"^\s*([^:]+?)\s*:\s*(.*?)\s*$")


def parse_orders(text: str, source: str = "<memory>", labels: tuple[str, ...] | None = None) -> ProfileDocument:
    """Parse ``k: A > B > C`` ballots; label order is first appearance unless given."""
    entries = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        entries.extend(part for part in line.split(";") if part.strip())
    if not entries:
        raise ParseError("no ballots")
    ballots: list[tuple[int, list[str]]] = []
    for entry in entries:
        match = _BALLOT.match(entry)
        if not match:
            raise ParseError(f"expected 'count: A > B > ...', got {entry.strip()!r}")
        count, body = match.groups()
        if not re.fullmatch(r"\d+", count) or int(count) < 1:
            raise BadCount(f"ballot count must be a positive integer, got {count!r}")
        order = [name.strip() for name in body.split(">")]
        if any(not name for name in order):
            raise ParseError(f"empty candidate name in {entry.strip()!r}")
        if len(set(order)) != len(order):
            raise DuplicateLabel(f"candidate repeated in {entry.strip()!r}")
        ballots.append((int(count), order))
    if labels is None:
        labels = tuple(ballots[0][1])
    index = {name: c for c, name in enumerate(labels)}
    columns = []
    for count, order in ballots:
        unknown = [name for name in order if name not in index]
        if unknown:
            raise UnknownLabel(f"unknown candidate {unknown[0]!r}")
        if len(order) != len(labels):
            raise IncompleteOrder(f"ballot {' > '.join(order)} does not rank all {len(labels)} candidates")
        ranking = Ranking.from_order([index[name] for name in order])
        columns.extend([ranking] * count)
    return ProfileDocument(tuple(labels), Profile(columns), source)


def parse_profile(text: str, source: str = "<memory>", fmt: str = "auto") -> ProfileDocument:
    if fmt == "auto":
        body = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        fmt = "orders" if body and ":" in body[0] else "csv"
    if fmt == "csv":
        return parse_matrix_csv(text, source)
    if fmt == "orders":
        return parse_orders(text, source)
    raise ParseError(f"unknown profile format {fmt!r}")


def emit_matrix_csv(doc: ProfileDocument, header: bool = True) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if header:
        writer.writerow(["candidate"] + [f"v{v}" for v in range(1, doc.profile.n + 1)])
    for c, label in enumerate(doc.labels):
        writer.writerow([label] + [col.ranks[c] for col in doc.profile.columns])
    return out.getvalue()


def emit_orders(doc: ProfileDocument) -> str:
    """Consecutive identical ballots are merged into one counted line."""
    lines = []
    cols = doc.profile.columns
    v = 0
    while v < len(cols):
        k = v
        while k < len(cols) and cols[k] == cols[v]:
            k += 1
        order = " > ".join(doc.labels[c] for c in cols[v].order())
        lines.append(f"{k - v}: {order}")
        v = k
    return "\n".join(lines) + "\n"


# -- reports -------------------------------------------------------------------


def _num(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else float(x)
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


def _exact(x) -> str | None:
    return str(x) if isinstance(x, Fraction) else None


def _names(cands, labels) -> list[str]:
    return [labels[c] if labels and c < len(labels) else f"c{c + 1}" for c in sorted(cands)]


def _profile_rows(profile: Profile) -> list[list[int]]:
    return [list(map(int, row)) for row in profile.matrix]


def _witness(w: Witness) -> dict:
    return {
        "profile": _profile_rows(w.profile),
        "transformed": _profile_rows(w.transformed) if w.transformed is not None else None,
        "transform": {"kind": w.transform.kind, "params": list(w.transform.params)} if w.transform else None,
        "expected": sorted(w.expected),
        "observed": sorted(w.observed),
    }


def to_dict(result, labels: tuple[str, ...] | None = None) -> dict:
    """JSON-ready dict for any result object the library produces."""
    if isinstance(result, DeepestResult):
        spec = result.params.spec
        return {
            "type": "deepest",
            "distance": spec.kind,
            "q": _num(spec.q),
            "weights": [list(row) for row in spec.weights.entries] if spec.weights else None,
            "p": result.params.p,
            "m": result.m,
            "n": result.n,
            "u_min": _num(result.u_min) if result.exact else result.u_min,
            "u_min_exact": _exact(result.u_min),
            "depth_max": _num(result.depth_max) if result.exact else result.depth_max,
            "deepest_set": [list(s.ranks) for s in sorted(result.deepest_set)],
            "winners": _names(result.winner_set, labels),
            "unique_winner": result.unique_winner,
            "exact": result.exact,
        }
    if isinstance(result, RuleOutcome):
        detail = {
            key: [list(v.ranks) if isinstance(v, Ranking) else v for v in value]
            if isinstance(value, tuple)
            else value
            for key, value in result.detail.items()
        }
        return {
            "type": "rule",
            "rule": result.rule,
            "winners": _names(result.winner_set, labels),
            "unique_winner": result.unique_winner,
            "scores": list(result.scores),
            "detail": detail,
        }
    if isinstance(result, AxiomVerdict):
        return {
            "type": "axiom",
            "axiom": result.axiom.value,
            "rule": result.rule_id,
            "status": result.status,
            "trials": result.trials,
            "skipped": result.skipped,
            "seed": result.seed,
            "witness": _witness(result.witness) if result.witness else None,
        }
    if isinstance(result, DeepestBox):
        return {"type": "l1_box", "lower": list(result.lower), "upper": list(result.upper)}
    if isinstance(result, dict):
        return result
    raise TypeError(f"cannot serialize {type(result).__name__}")


def _text(result, labels) -> str:
    d = to_dict(result, labels)
    kind = d.get("type")
    if kind == "deepest":
        lines = [
            f"distance {result.params.spec.label}, p={d['p']}  (m={d['m']}, n={d['n']})",
            f"  winners: {', '.join(d['winners'])}" + ("" if d["unique_winner"] else "  (no unique winner)"),
            f"  U_min = {d['u_min_exact'] or d['u_min']}   depth_max = {d['depth_max']}"
            + ("" if d["exact"] else "   [approximate]"),
            "  deepest rankings:",
        ]
        lines += ["    (" + ",".join(str(r) for r in ranks) + ")" for ranks in d["deepest_set"]]
        return "\n".join(lines)
    if kind == "rule":
        names = labels or [f"c{c + 1}" for c in range(len(d["scores"]))]
        width = max(len(x) for x in names) if len(d["scores"]) == len(names) else 4
        lines = [f"rule {d['rule']}: winners {', '.join(d['winners'])}"]
        if len(d["scores"]) == len(names):
            lines += [f"  {name:<{width}}  {score}" for name, score in zip(names, d["scores"])]
        return "\n".join(lines)
    if kind == "axiom":
        line = f"{d['axiom']} / {d['rule']}: {d['status']} ({d['trials']} trials, {d['skipped']} skipped)"
        if d["witness"]:
            w = d["witness"]
            line += f"\n  witness profile {w['profile']} expected {w['expected']} observed {w['observed']}"
        return line
    if kind == "l1_box":
        return "L1 deepest box: " + " x ".join(f"[{lo},{hi}]" for lo, hi in zip(d["lower"], d["upper"]))
    return json.dumps(d, sort_keys=True)


def emit_report(results, fmt: str = "json", labels: tuple[str, ...] | None = None) -> str:
    """Deterministic serialization: stable key order, rank vectors sorted."""
    results = list(results)
    if fmt == "json":
        doc = {"schema": SCHEMA_VERSION, "results": [to_dict(r, labels) for r in results]}
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if fmt in ("text", "text-table"):
        return "\n\n".join(_text(r, labels) for r in results) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")

