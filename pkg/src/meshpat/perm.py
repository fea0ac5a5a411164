"""Permutations in one-line notation, classical containment and symmetries.

Values are 1-based throughout: ``Permutation((4, 2, 1, 3, 5))`` is 42135.
Occurrences are strictly increasing tuples of 1-based host positions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation",
    "Occurrence",
    "from_word",
    "parse_perm",
    "flatten",
    "occurrences",
    "contains_classical",
    "all_permutations",
    "identity",
    "reverse",
    "complement",
    "inverse",
]

Occurrence = tuple[int, ...]


@dataclass(frozen=True, order=True)
class Permutation:
    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(self.word)
        object.__setattr__(self, "word", word)
        if not word:
            raise ValueError("a permutation needs at least one value")
        k = len(word)
        seen = set()
        for v in word:
            if not isinstance(v, int) or isinstance(v, bool):
                raise ValueError(f"non-integer value {v!r}")
            if v < 1 or v > k:
                raise ValueError(f"value {v} outside 1..{k}")
            if v in seen:
                raise ValueError(f"repeated value {v}")
            seen.add(v)

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self) -> Iterator[int]:
        return iter(self.word)

    def __call__(self, i: int) -> int:
        """pi(i) for 1-based position i."""
        return self.word[i - 1]

    def __str__(self) -> str:
        if len(self.word) <= 9:
            return "".join(map(str, self.word))
        return ",".join(map(str, self.word))

    @property
    def k(self) -> int:
        return len(self.word)

    def graph(self) -> frozenset[tuple[int, int]]:
        """The point set {(i, pi(i))}."""
        return frozenset((i, v) for i, v in enumerate(self.word, start=1))

    def has_point(self, col: int, row: int) -> bool:
        # out-of-range coordinates are never points of the graph
        return 1 <= col <= len(self.word) and self.word[col - 1] == row

    def positions(self) -> tuple[int, ...]:
        """positions()[v - 1] is the 1-based position holding value v."""
        pos = [0] * len(self.word)
        for i, v in enumerate(self.word, start=1):
            pos[v - 1] = i
        return tuple(pos)


def from_word(values: Iterable[int]) -> Permutation:
    return Permutation(tuple(values))


def parse_perm(text: str) -> Permutation:
    """Parse "42135" or "4,2,1,3,5"."""
    text = text.strip()
    if not text:
        raise ValueError("empty permutation")
    if "," in text:
        parts = [p.strip() for p in text.split(",")]
    else:
        parts = list(text)
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"not a permutation: {text!r}") from None
    return Permutation(tuple(values))


def flatten(values: Sequence) -> Permutation:
    """The permutation order isomorphic to ``values``.

    Any totally ordered values work (ints, Fractions, floats); ties are rejected.
    """
    order = sorted(range(len(values)), key=lambda t: values[t])
    ranks = [0] * len(values)
    for r, t in enumerate(order, start=1):
        if r > 1 and not values[order[r - 2]] < values[t]:
            raise ValueError("values must be pairwise distinct")
        ranks[t] = r
    return Permutation(tuple(ranks))


def _matches(host: tuple[int, ...], idx: Sequence[int], pos: tuple[int, ...]) -> bool:
    # idx are 0-based host indices; pos[v] is the 0-based pattern slot of value v+1
    prev = 0
    for p in pos:
        cur = host[idx[p]]
        if cur < prev:
            return False
        prev = cur
    return True


def occurrences(host: Permutation, pattern: Permutation) -> Iterator[Occurrence]:
    """Yield every occurrence of ``pattern`` in ``host`` in lexicographic order."""
    k, n = len(pattern), len(host)
    if k > n:
        return
    pos = tuple(p - 1 for p in pattern.positions())
    word = host.word
    for idx in itertools.combinations(range(n), k):
        if _matches(word, idx, pos):
            yield tuple(i + 1 for i in idx)


def contains_classical(host: Permutation, pattern: Permutation) -> bool:
    return next(occurrences(host, pattern), None) is not None


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    for word in itertools.permutations(range(1, n + 1)):
        yield Permutation(word)


def identity(k: int) -> Permutation:
    return Permutation(tuple(range(1, k + 1)))


def reverse(p: Permutation) -> Permutation:
    return Permutation(p.word[::-1])


def complement(p: Permutation) -> Permutation:
    k = len(p)
    return Permutation(tuple(k + 1 - v for v in p.word))


def inverse(p: Permutation) -> Permutation:
    return Permutation(p.positions())
