"""Rankings as permutations, voter profiles and enumeration of S_m.

A ranking assigns to each candidate (0-based index) a rank in ``1..m``; rank 1
is the most preferred candidate.  A profile is the ``m x n`` opinion matrix
whose columns are the voters' rankings.
"""

from __future__ import annotations

import itertools
import os
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .exceptions import CapExceeded, DimensionMismatch, EmptyRanking, NotAPermutation

DEFAULT_MAX_M = 9


def enumeration_cap(max_m: int | None = None) -> int:
    """Resolve the exhaustive-search cap.

    An explicit argument wins, then the ``DEEPVOTE_MAX_M`` environment
    variable, then :data:`DEFAULT_MAX_M`.
    """
    if max_m is not None:
        return int(max_m)
    env = os.environ.get("DEEPVOTE_MAX_M")
    return int(env) if env else DEFAULT_MAX_M


def check_cap(m: int, max_m: int | None = None) -> None:
    cap = enumeration_cap(max_m)
    if m > cap:
        raise CapExceeded(
            f"{m} candidates exceeds the enumeration cap of {cap} ({m}! rankings)"
        )


@dataclass(frozen=True, order=True)
class Ranking:
    """``ranks[c]`` is the rank given to candidate ``c``."""

    ranks: tuple[int, ...]

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        object.__setattr__(self, "ranks", ranks)
        if not ranks:
            raise EmptyRanking("a ranking needs at least one candidate")
        if sorted(ranks) != list(range(1, len(ranks) + 1)):
            raise NotAPermutation(f"{ranks} is not a permutation of 1..{len(ranks)}")

    @classmethod
    def identity(cls, m: int) -> Ranking:
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def from_order(cls, order: Sequence[int]) -> Ranking:
        """Build from a preference order (most preferred candidate first)."""
        ranks = [0] * len(order)
        for position, c in enumerate(order, start=1):
            ranks[c] = position
        return cls(tuple(ranks))

    @property
    def m(self) -> int:
        return len(self.ranks)

    @property
    def top(self) -> int:
        """Candidate ranked first."""
        return self.ranks.index(1)

    @property
    def bottom(self) -> int:
        """Candidate ranked last."""
        return self.ranks.index(self.m)

    def order(self) -> tuple[int, ...]:
        """Candidates from most to least preferred (the inverse permutation, 0-based)."""
        return tuple(r - 1 for r in inverse(self).ranks)

    def __len__(self) -> int:
        return len(self.ranks)

    def __getitem__(self, c: int) -> int:
        return self.ranks[c]

    def __iter__(self) -> Iterator[int]:
        return iter(self.ranks)

    def __repr__(self) -> str:
        return f"Ranking{self.ranks}"


def validate_ranking(raw: Iterable[int]) -> Ranking:
    return Ranking(tuple(raw))


def inverse(sigma: Ranking) -> Ranking:
    """The permutation ``rho`` with ``rho(sigma(c)) = c`` (1-based on both sides)."""
    out = [0] * sigma.m
    for c, r in enumerate(sigma.ranks, start=1):
        out[r - 1] = c
    return Ranking(tuple(out))


def compose(sigma: Ranking, s: Ranking) -> Ranking:
    """``(sigma o s)(c) = sigma(s(c))``."""
    if sigma.m != s.m:
        raise DimensionMismatch(f"cannot compose rankings of sizes {sigma.m} and {s.m}")
    return Ranking(tuple(sigma.ranks[r - 1] for r in s.ranks))


def enumerate_rankings(m: int, max_m: int | None = None) -> Iterator[Ranking]:
    """All ``m!`` rankings in lexicographic order of the rank vector."""
    check_cap(m, max_m)
    for ranks in itertools.permutations(range(1, m + 1)):
        yield Ranking(ranks)


@lru_cache(maxsize=16)
def _rankings_array(m: int) -> np.ndarray:
    arr = np.array(list(itertools.permutations(range(1, m + 1))), dtype=np.int64)
    arr = arr.reshape(-1, m)
    arr.setflags(write=False)
    return arr


def rankings_array(m: int, max_m: int | None = None) -> np.ndarray:
    """All rankings of ``m`` candidates as a read-only ``(m!, m)`` array, lexicographic."""
    check_cap(m, max_m)
    return _rankings_array(m)


class Profile:
    """The opinion matrix: ``m`` candidates (rows) by ``n`` voters (columns).

    Instances are immutable and hashable, so rule evaluations can be cached.
    """

    def __init__(self, columns: Iterable[Ranking | Sequence[int]]):
        cols = []
        for v, col in enumerate(columns):
            if not isinstance(col, Ranking):
                try:
                    col = Ranking(tuple(col))
                except NotAPermutation as exc:
                    raise NotAPermutation(f"voter {v}: {exc}", column=v) from None
            cols.append(col)
        if not cols:
            raise DimensionMismatch("a profile needs at least one voter")
        m = cols[0].m
        for v, col in enumerate(cols):
            if col.m != m:
                raise DimensionMismatch(f"voter {v} ranks {col.m} candidates, expected {m}")
        self.columns: tuple[Ranking, ...] = tuple(cols)

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]] | np.ndarray) -> Profile:
        """Rows are candidates, columns are voters, as in a printed vote table."""
        arr = np.asarray(rows)
        if arr.ndim != 2:
            raise DimensionMismatch("profile matrix must be two-dimensional")
        return cls(tuple(int(x) for x in arr[:, v]) for v in range(arr.shape[1]))

    @classmethod
    def from_ballots(cls, ballots: Sequence[Sequence[int]] | np.ndarray) -> Profile:
        """One rank vector per voter (the transpose of :meth:`from_matrix`)."""
        return cls(tuple(int(x) for x in b) for b in ballots)

    @property
    def m(self) -> int:
        return self.columns[0].m

    @property
    def n(self) -> int:
        return len(self.columns)

    @cached_property
    def ballots(self) -> np.ndarray:
        """Read-only ``(n, m)`` array, row ``v`` is voter ``v``'s rank vector."""
        arr = np.array([col.ranks for col in self.columns], dtype=np.int64)
        arr.setflags(write=False)
        return arr

    @property
    def matrix(self) -> np.ndarray:
        """Read-only ``(m, n)`` array laid out like the opinion matrix."""
        return self.ballots.T

    def relabel(self, perm: Sequence[int]) -> Profile:
        """Permute the rows: new candidate ``c`` receives the ranks of old candidate ``perm[c]``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.m)):
            raise NotAPermutation(f"{perm} is not a relabeling of {self.m} candidates")
        return Profile(tuple(col.ranks[perm[c]] for c in range(self.m)) for col in self.columns)

    def permute_voters(self, order: Sequence[int]) -> Profile:
        order = list(order)
        if sorted(order) != list(range(self.n)):
            raise NotAPermutation(f"{order} is not a reordering of {self.n} voters")
        return Profile(self.columns[v] for v in order)

    def drop_voter(self, v: int) -> Profile:
        return Profile(col for i, col in enumerate(self.columns) if i != v)

    def remove_candidate(self, c0: int) -> Profile:
        """Drop candidate ``c0`` and compress every column back to ranks ``1..m-1``."""
        if self.m < 2:
            raise DimensionMismatch("cannot remove the only candidate")
        out = []
        for col in self.columns:
            r0 = col.ranks[c0]
            out.append(tuple(r - (r > r0) for c, r in enumerate(col.ranks) if c != c0))
        return Profile(out)

    def replace_voter(self, v: int, ranking: Ranking) -> Profile:
        cols = list(self.columns)
        cols[v] = ranking
        return Profile(cols)

    def __eq__(self, other) -> bool:
        return isinstance(other, Profile) and self.columns == other.columns

    def __hash__(self) -> int:
        return hash(self.columns)

    def __repr__(self) -> str:
        return f"Profile(m={self.m}, n={self.n}, columns={[c.ranks for c in self.columns]})"
