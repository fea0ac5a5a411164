"""Enclosed diagonals and the superfluous-mesh criterion.

Geometry follows the drawn configurations: an ascending diagonal with anchor
(i, j) and length h covers squares (i+x, j+x) and has pattern points at the
shared corners (i+x, j+x), 1 <= x < h; a descending one covers (i+x, j-x)
with shared-corner points (i+x, j-x+1). The two outer corners of the run must
be empty. A length-1 diagonal is a shaded square with all four corners empty;
these are reported once, with direction +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .mesh import MeshPattern, Square, mask_of
from .perm import Permutation

__all__ = [
    "EnclosedDiagonal",
    "ConsecutiveRun",
    "candidate_diagonals",
    "multi_candidates",
    "singleton_squares",
    "universe",
    "enclosed_diagonals",
    "is_superfluous",
    "runs",
    "parse_diagonal",
]


@dataclass(frozen=True, order=True)
class EnclosedDiagonal:
    anchor: Square
    eps: int
    h: int

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        if self.h < 1:
            raise ValueError("h must be at least 1")
        if self.h == 1 and self.eps != 1:
            # canonical form for single squares
            object.__setattr__(self, "eps", 1)

    @property
    def squares(self) -> tuple[Square, ...]:
        i, j = self.anchor
        return tuple((i + x, j + x * self.eps) for x in range(self.h))

    def mask(self, k: int) -> int:
        return mask_of(k, self.squares)

    def __str__(self) -> str:
        i, j = self.anchor
        return f"(({i},{j}),{self.eps:+d},{self.h})"

    def to_json(self) -> dict:
        return {
            "anchor": list(self.anchor),
            "eps": self.eps,
            "h": self.h,
            "squares": [list(sq) for sq in self.squares],
        }


def parse_diagonal(text: str) -> EnclosedDiagonal:
    """Parse "((i,j),eps,h)" or the bare "i,j,eps,h"."""
    parts = [p for p in text.replace("(", " ").replace(")", " ").replace(",", " ").split()]
    if len(parts) != 4:
        raise ValueError(f"diagonal needs four integers: {text!r}")
    try:
        i, j, eps, h = (int(p) for p in parts)
    except ValueError:
        raise ValueError(f"bad diagonal {text!r}") from None
    return EnclosedDiagonal((i, j), eps, h)


@dataclass(frozen=True)
class ConsecutiveRun:
    start: int
    direction: int  # +1 increasing values, -1 decreasing; singletons use +1
    length: int

    @property
    def positions(self) -> range:
        return range(self.start, self.start + self.length)


def runs(p: Permutation) -> list[ConsecutiveRun]:
    """Split positions into maximal runs whose neighbours carry adjacent values."""
    out = []
    k = len(p)
    s = 1
    while s <= k:
        if s < k and abs(p(s + 1) - p(s)) == 1:
            d = p(s + 1) - p(s)
            e = s + 1
            while e < k and p(e + 1) - p(e) == d:
                e += 1
            out.append(ConsecutiveRun(s, d, e - s + 1))
            s = e + 1
        else:
            out.append(ConsecutiveRun(s, 1, 1))
            s += 1
    return out


def _corner_count(p: Permutation, col: int, row: int) -> int:
    return sum(p.has_point(c, r) for c in (col, col + 1) for r in (row, row + 1))


@lru_cache(maxsize=4096)
def candidate_diagonals(p: Permutation) -> tuple[EnclosedDiagonal, ...]:
    """Every triple that would be an enclosed diagonal if all its squares were shaded.

    Multi-square candidates come first (ascending, then descending, by
    anchor), followed by the single squares with four empty corners.
    """
    k = len(p)
    multi: list[EnclosedDiagonal] = []
    for eps in (1, -1):
        for i in range(k + 1):
            for j in range(k + 1):
                for h in range(2, k + 2):
                    if eps == 1:
                        if j + h - 1 > k:
                            break
                        inner = all(p.has_point(i + x, j + x) for x in range(1, h))
                        ends = not p.has_point(i, j) and not p.has_point(i + h, j + h)
                    else:
                        if j - h + 1 < 0:
                            break
                        inner = all(p.has_point(i + x, j - x + 1) for x in range(1, h))
                        ends = not p.has_point(i, j + 1) and not p.has_point(i + h, j - h + 1)
                    if i + h - 1 > k or not inner:
                        break
                    if ends:
                        multi.append(EnclosedDiagonal((i, j), eps, h))
    single = [
        EnclosedDiagonal((i, j), 1, 1)
        for i in range(k + 1)
        for j in range(k + 1)
        if _corner_count(p, i, j) == 0
    ]
    return tuple(multi) + tuple(single)


def multi_candidates(p: Permutation) -> tuple[EnclosedDiagonal, ...]:
    return tuple(d for d in candidate_diagonals(p) if d.h >= 2)


def singleton_squares(p: Permutation) -> list[Square]:
    return [d.anchor for d in candidate_diagonals(p) if d.h == 1]


def universe(p: Permutation) -> list[Square]:
    """Squares with at least one corner on the graph of ``p``."""
    k = len(p)
    return [(i, j) for i in range(k + 1) for j in range(k + 1) if _corner_count(p, i, j)]


@lru_cache(maxsize=4096)
def _candidate_masks(p: Permutation) -> tuple[tuple[int, EnclosedDiagonal], ...]:
    k = len(p)
    return tuple((d.mask(k), d) for d in candidate_diagonals(p))


def enclosed_diagonals(mp: MeshPattern) -> list[EnclosedDiagonal]:
    mesh = mp.mask
    return [d for m, d in _candidate_masks(mp.perm) if m & mesh == m]


def is_superfluous(mp: MeshPattern) -> bool:
    mesh = mp.mask
    return not any(m & mesh == m for m, _ in _candidate_masks(mp.perm))
