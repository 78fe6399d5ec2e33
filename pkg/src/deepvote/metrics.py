"""Distances and weighted dissimilarities between rankings.

Two routes compute the same quantities:

* scalar functions (:func:`kendall`, :func:`cayley`, ...) that loop over
  candidates in plain Python, used for single evaluations and as oracles;
* batched kernels (:func:`powered_distances`) that evaluate every pair of a
  block of rankings against a block of voters with numpy.  The Frechet search
  uses only these.

Integer-valued quantities stay integers; roots are taken only when a caller
asks for the distance itself.
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exceptions import (
    DeepVoteError,
    DimensionMismatch,
    InvalidOrder,
    NegativeWeightUnderRoot,
    NonPositiveWeight,
    ParseError,
)
from .ranking import Ranking, check_cap, rankings_array

Number = int | float | Fraction

KINDS = (
    "kendall",
    "hamming",
    "cayley",
    "minkowski",
    "weighted_hamming",
    "weighted_minkowski",
)


def _as_number(x) -> int | float:
    x = float(x) if not isinstance(x, int) else x
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DeepVoteError(f"weight {x} is not finite")
        if x.is_integer():
            return int(x)
    return x


@dataclass(frozen=True)
class WeightMatrix:
    """Rank-pair weights: ``entries[r-1][r'-1]`` weighs moving from rank r to rank r'."""

    entries: tuple[tuple[int | float, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(_as_number(x) for x in row) for row in self.entries)
        m = len(rows)
        if m == 0 or any(len(row) != m for row in rows):
            raise DimensionMismatch("weight matrix must be square and non-empty")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_array(cls, w) -> WeightMatrix:
        return cls(tuple(tuple(row) for row in np.asarray(w).tolist()))

    @classmethod
    def uniform(cls, m: int, value: Number = 1) -> WeightMatrix:
        return cls(tuple(tuple(value for _ in range(m)) for _ in range(m)))

    @classmethod
    def plurality(cls, m: int) -> WeightMatrix:
        """W(1,(1)): weight 1 whenever either rank is 1, else 0."""
        return cls(
            tuple(tuple(1 if (r == 1 or s == 1) else 0 for s in range(1, m + 1)) for r in range(1, m + 1))
        )

    @classmethod
    def antiplurality(cls, m: int) -> WeightMatrix:
        """W(-1,(m)): weight -1 whenever either rank is m, else 0."""
        return cls(
            tuple(tuple(-1 if (r == m or s == m) else 0 for s in range(1, m + 1)) for r in range(1, m + 1))
        )

    @classmethod
    def from_csv(cls, text: str) -> WeightMatrix:
        """Header-free square CSV; row = source rank, column = target rank."""
        rows = [row for row in csv.reader(io.StringIO(text)) if row and any(x.strip() for x in row)]
        try:
            return cls(tuple(tuple(float(x) for x in row) for row in rows))
        except ValueError as exc:
            raise ParseError(f"bad weight matrix: {exc}") from None

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def symmetric(self) -> bool:
        return all(
            self.entries[r][s] == self.entries[s][r] for r in range(self.m) for s in range(r)
        )

    @property
    def integral(self) -> bool:
        return all(isinstance(x, int) for row in self.entries for x in row)

    @property
    def nonnegative(self) -> bool:
        return all(x >= 0 for row in self.entries for x in row)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64 if self.integral else np.float64)

    def __getitem__(self, rr: tuple[int, int]):
        """``W[r, r']`` with 1-based ranks."""
        r, s = rr
        return self.entries[r - 1][s - 1]

    def to_csv(self) -> str:
        return "".join(",".join(str(x) for x in row) + "\n" for row in self.entries)


def _normalize_q(q) -> int | float:
    if q is None:
        raise InvalidOrder("this distance needs an order q")
    q = float(q)
    if math.isnan(q) or q < 1:
        raise InvalidOrder(f"order q must be >= 1, got {q}")
    if math.isinf(q):
        return math.inf
    return int(q) if q.is_integer() else q


@dataclass(frozen=True)
class DistanceSpec:
    kind: str
    q: int | float | None = None
    weights: WeightMatrix | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DeepVoteError(f"unknown distance kind {self.kind!r}; expected one of {KINDS}")
        if self.kind in ("minkowski", "weighted_minkowski"):
            object.__setattr__(self, "q", _normalize_q(self.q))
            if self.kind == "weighted_minkowski" and math.isinf(self.q):
                raise InvalidOrder("weighted Minkowski distance needs a finite q")
        elif self.q is not None:
            raise InvalidOrder(f"{self.kind} distance takes no order q")
        if self.kind.startswith("weighted_"):
            if self.weights is None:
                raise DeepVoteError(f"{self.kind} needs a weight matrix")
            if self.kind == "weighted_minkowski" and not self.weights.nonnegative:
                raise NegativeWeightUnderRoot(
                    "signed weights are only allowed for weighted Hamming; the q-th root of a negative sum is undefined"
                )
        elif self.weights is not None:
            raise DeepVoteError(f"{self.kind} distance takes no weights")

    @classmethod
    def kendall(cls) -> DistanceSpec:
        return cls("kendall")

    @classmethod
    def hamming(cls) -> DistanceSpec:
        return cls("hamming")

    @classmethod
    def cayley(cls) -> DistanceSpec:
        return cls("cayley")

    @classmethod
    def minkowski(cls, q) -> DistanceSpec:
        return cls("minkowski", q=q)

    @classmethod
    def footrule(cls) -> DistanceSpec:
        return cls("minkowski", q=1)

    @classmethod
    def spearman_rho(cls) -> DistanceSpec:
        return cls("minkowski", q=2)

    @classmethod
    def weighted_hamming(cls, weights: WeightMatrix) -> DistanceSpec:
        return cls("weighted_hamming", weights=weights)

    @classmethod
    def weighted_minkowski(cls, q, weights: WeightMatrix) -> DistanceSpec:
        return cls("weighted_minkowski", q=q, weights=weights)

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    @property
    def integral(self) -> bool:
        """True when every distance value is an integer."""
        if self.kind in ("kendall", "hamming", "cayley"):
            return True
        if self.kind == "minkowski":
            return self.q == 1 or math.isinf(self.q)
        if self.kind == "weighted_hamming":
            return self.weights.integral
        return self.q == 1 and self.weights.integral

    @property
    def label(self) -> str:
        if self.kind == "minkowski":
            return f"minkowski(q={_fmt_q(self.q)})"
        if self.kind == "weighted_minkowski":
            return f"weighted_minkowski(q={_fmt_q(self.q)})"
        return self.kind

    def check_m(self, m: int) -> None:
        if self.weights is not None and self.weights.m != m:
            raise DimensionMismatch(f"weight matrix is {self.weights.m}x{self.weights.m} but there are {m} candidates")


def _fmt_q(q) -> str:
    return "inf" if math.isinf(q) else str(q)


def _check_pair(sigma: Ranking, tau: Ranking) -> int:
    if sigma.m != tau.m:
        raise DimensionMismatch(f"rankings of sizes {sigma.m} and {tau.m}")
    return sigma.m


# -- scalar route --------------------------------------------------------------


def kendall(sigma: Ranking, tau: Ranking) -> int:
    """Number of candidate pairs ordered oppositely by the two rankings."""
    m = _check_pair(sigma, tau)
    s, t = sigma.ranks, tau.ranks
    return sum(
        1
        for c in range(m - 1)
        for c2 in range(c + 1, m)
        if (s[c] - s[c2]) * (t[c2] - t[c]) > 0
    )


def hamming(sigma: Ranking, tau: Ranking) -> int:
    _check_pair(sigma, tau)
    return sum(a != b for a, b in zip(sigma.ranks, tau.ranks))


def cycle_count(perm: Sequence[int]) -> int:
    """Number of cycles of a 1-based permutation given in one-line notation."""
    seen = [False] * len(perm)
    cycles = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycles += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i] - 1
    return cycles


def cayley(sigma: Ranking, tau: Ranking) -> int:
    """m minus the number of cycles of sigma o tau^-1."""
    m = _check_pair(sigma, tau)
    tau_inv = [0] * m
    for c, r in enumerate(tau.ranks):
        tau_inv[r - 1] = c
    composed = [sigma.ranks[tau_inv[r]] for r in range(m)]
    return m - cycle_count(composed)


def minkowski_power(sigma: Ranking, tau: Ranking, q) -> Number:
    """``sum_c |sigma(c) - tau(c)|**q`` (exact for integral q)."""
    _check_pair(sigma, tau)
    q = _normalize_q(q)
    if math.isinf(q):
        raise InvalidOrder("q-th power sum is undefined for q = inf")
    return sum(abs(a - b) ** q for a, b in zip(sigma.ranks, tau.ranks))


def minkowski(sigma: Ranking, tau: Ranking, q) -> Number:
    """Minkowski-Holder distance; q=1 is the Spearman footrule, q=2 Spearman rho."""
    _check_pair(sigma, tau)
    q = _normalize_q(q)
    if math.isinf(q):
        return max(abs(a - b) for a, b in zip(sigma.ranks, tau.ranks))
    s = minkowski_power(sigma, tau, q)
    return s if q == 1 else s ** (1.0 / q)


def weighted_hamming(sigma: Ranking, tau: Ranking, weights: WeightMatrix) -> Number:
    m = _check_pair(sigma, tau)
    if weights.m != m:
        raise DimensionMismatch(f"weight matrix is {weights.m}x{weights.m}, rankings have {m} candidates")
    return sum(weights[a, b] for a, b in zip(sigma.ranks, tau.ranks) if a != b)


def weighted_minkowski(sigma: Ranking, tau: Ranking, q, weights: WeightMatrix) -> Number:
    m = _check_pair(sigma, tau)
    if weights.m != m:
        raise DimensionMismatch(f"weight matrix is {weights.m}x{weights.m}, rankings have {m} candidates")
    if not weights.nonnegative:
        raise NegativeWeightUnderRoot("weighted Minkowski distance needs nonnegative weights")
    q = _normalize_q(q)
    if math.isinf(q):
        raise InvalidOrder("weighted Minkowski distance needs a finite q")
    s = sum(weights[a, b] * abs(a - b) ** q for a, b in zip(sigma.ranks, tau.ranks))
    return s if q == 1 else s ** (1.0 / q)


def distance(sigma: Ranking, tau: Ranking, spec: DistanceSpec) -> Number:
    """Evaluate ``spec`` on one pair through the scalar route."""
    if spec.kind == "kendall":
        return kendall(sigma, tau)
    if spec.kind == "hamming":
        return hamming(sigma, tau)
    if spec.kind == "cayley":
        return cayley(sigma, tau)
    if spec.kind == "minkowski":
        return minkowski(sigma, tau, spec.q)
    if spec.kind == "weighted_hamming":
        return weighted_hamming(sigma, tau, spec.weights)
    return weighted_minkowski(sigma, tau, spec.q, spec.weights)


# -- batched route -------------------------------------------------------------


def _one_hot(ranks: np.ndarray) -> np.ndarray:
    rows, m = ranks.shape
    out = np.zeros((rows, m * m), dtype=np.int64)
    out[np.arange(rows)[:, None], np.arange(m) * m + ranks - 1] = 1
    return out


def _cycles(composed: np.ndarray) -> np.ndarray:
    # composed[..., r] is a 0-based permutation; a cycle is counted at its smallest element
    m = composed.shape[-1]
    idx = np.arange(m)
    x = np.broadcast_to(idx, composed.shape).copy()
    low = x.copy()
    for _ in range(m - 1):
        x = np.take_along_axis(composed, x, axis=-1)
        np.minimum(low, x, out=low)
    return (low == idx).sum(axis=-1)


def base_matrix(spec: DistanceSpec, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, int | float]:
    """Pairwise ``(base, root)`` with ``d(a_i, b_j) = base[i, j] ** (1 / root)``.

    ``root`` is 1 for every kind except finite-order (weighted) Minkowski,
    where ``base`` holds the q-th power sum and ``root = q``.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    m = a.shape[1]
    if b.shape[1] != m:
        raise DimensionMismatch(f"rankings of sizes {m} and {b.shape[1]}")
    spec.check_m(m)
    kind = spec.kind
    if kind == "kendall":
        i, j = np.triu_indices(m, 1)
        sa = np.sign(a[:, i] - a[:, j])
        sb = np.sign(b[:, i] - b[:, j])
        return (len(i) - sa @ sb.T) // 2, 1
    if kind == "hamming":
        return m - _one_hot(a) @ _one_hot(b).T, 1
    if kind == "cayley":
        b_inv = np.argsort(b, axis=1)  # b_inv[v, r-1] = candidate holding rank r
        composed = a[:, b_inv] - 1
        return m - _cycles(composed), 1
    if kind == "weighted_hamming":
        w = spec.weights.array.copy()
        np.fill_diagonal(w, 0)
        return w[a[:, None, :] - 1, b[None, :, :] - 1].sum(axis=2), 1
    diff = np.abs(a[:, None, :] - b[None, :, :])
    q = spec.q
    if math.isinf(q):
        return diff.max(axis=2), 1
    powered = diff**q if isinstance(q, int) else diff.astype(np.float64) ** q
    if kind == "weighted_minkowski":
        w = spec.weights.array
        powered = w[a[:, None, :] - 1, b[None, :, :] - 1] * powered
    return powered.sum(axis=2), q


def _exact_exponent(p, root) -> int | None:
    ratio = Fraction(p) / Fraction(root)
    return int(ratio) if ratio.denominator == 1 and ratio > 0 else None


def powered_distances(spec: DistanceSpec, a: np.ndarray, b: np.ndarray, p) -> tuple[np.ndarray, bool]:
    """Pairwise ``d(a_i, b_j) ** p`` and whether the values are exact integers.

    Exact results are int64, or Python ints in an object array when int64
    could overflow once summed over the voters.
    """
    base, root = base_matrix(spec, a, b)
    k = _exact_exponent(p, root)
    if k is not None and np.issubdtype(base.dtype, np.integer):
        if k == 1:
            return base, True
        biggest = int(np.abs(base).max(initial=0))
        if biggest**k * max(1, base.shape[1]) < 2**62:
            return base**k, True
        return base.astype(object) ** k, True
    exponent = float(Fraction(p) / Fraction(root))
    if (base < 0).any() and not float(exponent).is_integer():
        raise DeepVoteError("a fractional power of a negative dissimilarity is undefined")
    return base.astype(np.float64) ** exponent, False


def diameter(spec: DistanceSpec, m: int, max_m: int | None = None) -> Number:
    """Largest distance between two rankings of ``m`` candidates."""
    spec.check_m(m)
    if spec.kind == "kendall":
        return m * (m - 1) // 2
    if spec.kind == "hamming":
        return m if m > 1 else 0
    if spec.kind == "cayley":
        return m - 1
    check_cap(m, max_m)
    # every kind is invariant under relabeling candidates, so d(s, t) = d(id, t o s^-1)
    perms = rankings_array(m, max_m)
    base, root = base_matrix(spec, perms, perms[:1])
    top = base.max()
    top = top.item() if hasattr(top, "item") else top
    if root == 1:
        return top
    if isinstance(top, int) and round(top ** (1.0 / root)) ** root == top:
        return round(top ** (1.0 / root))
    return top ** (1.0 / root)


def diameter_power(spec: DistanceSpec, m: int, p, max_m: int | None = None) -> Number:
    """``max over pairs of d**p``, exact whenever the powers are."""
    check_cap(m, max_m)
    spec.check_m(m)
    perms = rankings_array(m, max_m)
    values, _ = powered_distances(spec, perms, perms[:1], p)
    top = values.max()
    return top.item() if hasattr(top, "item") else top


def relaxation_constant(weights: WeightMatrix) -> Number:
    """Constant of the relaxed triangle inequality for symmetric positive weights."""
    if not all(x > 0 for row in weights.entries for x in row):
        raise NonPositiveWeight("relaxation constant needs strictly positive weights")
    if not weights.symmetric:
        raise DeepVoteError("relaxation constant needs symmetric weights")
    w = weights.entries
    m = weights.m
    if weights.integral:
        best = max(Fraction(w[a][b], w[a][c]) for a in range(m) for b in range(m) for c in range(m))
        return int(best) if best.denominator == 1 else best
    return max(w[a][b] / w[a][c] for a in range(m) for b in range(m) for c in range(m))
