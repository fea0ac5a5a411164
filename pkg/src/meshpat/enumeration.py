"""Counting superfluous meshes.

A mesh is superfluous for pi exactly when it avoids every single-square
candidate (so it lives inside the universe U' of squares touching the graph)
and contains no multi-square candidate in full. Inclusion-exclusion over the
multi-square candidates gives the count; candidates that share no squares
factor into independent components.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from math import comb

import numpy as np

from .diagonals import multi_candidates, singleton_squares, universe
from .errors import BoundExceeded, PreconditionError
from .perm import Permutation, all_permutations

__all__ = [
    "SupMeshReport",
    "Extremal",
    "sup_mesh_ie",
    "sup_mesh_direct",
    "sup_mesh_table",
    "min_supmesh",
    "min_supmesh_product",
    "max_supmesh",
    "max_supmesh_truncated",
    "has_no_adjacent_values",
    "extremal_permutations",
    "a002464_count",
    "DEFAULT_IE_BOUND",
    "DEFAULT_DIRECT_MAX_K",
    "DEFAULT_TABLE_MAX_K",
    "DEFAULT_SCAN_MAX_K",
]

DEFAULT_IE_BOUND = 24
DEFAULT_DIRECT_MAX_K = 4
DEFAULT_TABLE_MAX_K = 8
DEFAULT_SCAN_MAX_K = 9


@dataclass(frozen=True)
class SupMeshReport:
    perm: Permutation
    universe_size: int
    singleton_count: int
    multi_candidate_count: int
    sup_mesh: int
    non_superfluous: int

    @property
    def k(self) -> int:
        return len(self.perm)

    def to_row(self) -> dict:
        return {
            "perm": str(self.perm),
            "k": self.k,
            "universe": self.universe_size,
            "singletons": self.singleton_count,
            "candidates": self.multi_candidate_count,
            "sup_mesh": self.sup_mesh,
            "non_superfluous": self.non_superfluous,
        }


def _components(masks: list[int]) -> list[list[int]]:
    # group candidate masks that overlap, transitively
    groups: list[list[int]] = []
    unions: list[int] = []
    for m in masks:
        hit = [g for g in range(len(groups)) if unions[g] & m]
        merged = [m]
        union = m
        for g in reversed(hit):
            merged.extend(groups.pop(g))
            union |= unions.pop(g)
        groups.append(merged)
        unions.append(union)
    return groups


def _ie_sum(masks: list[int]) -> int:
    """Sum over subsets S of (-1)^|S| 2^(|union of all| - |union of S|)."""
    total_bits = 0
    for m in masks:
        total_bits |= m
    size = total_bits.bit_count()

    def walk(idx: int, union: int, sign: int) -> int:
        if idx == len(masks):
            return sign * (1 << (size - union.bit_count()))
        return walk(idx + 1, union, sign) + walk(idx + 1, union | masks[idx], -sign)

    return walk(0, 0, 1)


def sup_mesh_ie(p: Permutation, bound: int = DEFAULT_IE_BOUND) -> SupMeshReport:
    k = len(p)
    masks = [d.mask(k) for d in multi_candidates(p)]
    comps = _components(masks)
    largest = max((len(c) for c in comps), default=0)
    if largest > bound:
        raise BoundExceeded(f"candidate component of size {largest} exceeds bound {bound}")
    u_size = len(universe(p))
    covered = 0
    for m in masks:
        covered |= m
    count = 1 << (u_size - covered.bit_count())
    for comp in comps:
        count *= _ie_sum(comp)
    total = 1 << ((k + 1) ** 2)
    return SupMeshReport(
        perm=p,
        universe_size=u_size,
        singleton_count=len(singleton_squares(p)),
        multi_candidate_count=len(masks),
        sup_mesh=count,
        non_superfluous=total - count,
    )


def sup_mesh_direct(p: Permutation, max_k: int = DEFAULT_DIRECT_MAX_K) -> int:
    """Count superfluous meshes by listing every subset of U' and testing each one."""
    k = len(p)
    if k > max_k:
        raise BoundExceeded(f"direct enumeration limited to k <= {max_k}")
    cells = universe(p)
    index = {sq: t for t, sq in enumerate(cells)}
    subsets = np.arange(1 << len(cells), dtype=np.uint64)
    bad = np.zeros(subsets.shape, dtype=bool)
    for d in multi_candidates(p):
        m = 0
        for sq in d.squares:
            m |= 1 << index[sq]
        m = np.uint64(m)
        bad |= (subsets & m) == m
    return int(np.count_nonzero(~bad))


def _report(p: Permutation) -> SupMeshReport:
    return sup_mesh_ie(p)


def sup_mesh_table(k: int, max_k: int = DEFAULT_TABLE_MAX_K, jobs: int = 1) -> list[SupMeshReport]:
    if k < 1:
        raise PreconditionError("k must be at least 1")
    if k > max_k:
        raise BoundExceeded(f"table limited to k <= {max_k}")
    perms = list(all_permutations(k))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_report, perms, chunksize=64))
    return [_report(p) for p in perms]


def min_supmesh(k: int) -> int:
    """Closed-form minimum of sup-mesh over S_k, as an alternating sum."""
    if k < 1:
        raise PreconditionError("k must be at least 1")

    def c(b: int, a: int) -> int:
        return comb(b, a) if 0 <= a <= b else 0

    return sum(
        (-1) ** i * (c(k, i - 1) * 2 ** (2 * k - 2 * i + 2) + c(k, i) * 2 ** (3 * k + 1 - 2 * i))
        for i in range(k + 2)
    )


def min_supmesh_product(k: int) -> int:
    return (2 ** (k + 1) - 1) * 3**k


def max_supmesh(k: int) -> int:
    """2k disjoint two-square candidates over 4k cells: each pair excludes 1 of 4 shadings."""
    if k < 1:
        raise PreconditionError("k must be at least 1")
    return 3 ** (2 * k)


def max_supmesh_truncated(k: int) -> int:
    """The alternating sum with upper limit i = k; kept for comparison, it is not the maximum."""
    return sum((-1) ** i * comb(2 * k, i) * 2 ** (4 * k - 2 * i) for i in range(k + 1))


def has_no_adjacent_values(p: Permutation) -> bool:
    return all(abs(a - b) != 1 for a, b in zip(p.word, p.word[1:]))


def _all_adjacent_values(p: Permutation) -> bool:
    return all(abs(a - b) == 1 for a, b in zip(p.word, p.word[1:]))


@dataclass(frozen=True)
class Extremal:
    k: int
    minimizers: tuple[Permutation, ...]
    maximizers: tuple[Permutation, ...]
    min_value: int
    max_value: int
    max_truncated: int
    table_min: int
    table_max: int
    table_argmin: tuple[Permutation, ...]
    table_argmax: tuple[Permutation, ...]

    @property
    def max_realized(self) -> bool:
        return bool(self.maximizers)

    def to_json(self) -> dict:
        out = asdict(self)
        for key in ("minimizers", "maximizers", "table_argmin", "table_argmax"):
            out[key] = [str(p) for p in getattr(self, key)]
        out["max_realized"] = self.max_realized
        return out


def extremal_permutations(k: int, max_k: int = DEFAULT_TABLE_MAX_K, jobs: int = 1) -> Extremal:
    """Minimizers and maximizers by their adjacency characterizations, plus the table extremes."""
    table = sup_mesh_table(k, max_k=max_k, jobs=jobs)
    perms = [r.perm for r in table]
    lo = min(r.sup_mesh for r in table)
    hi = max(r.sup_mesh for r in table)
    return Extremal(
        k=k,
        minimizers=tuple(p for p in perms if _all_adjacent_values(p)),
        maximizers=tuple(p for p in perms if has_no_adjacent_values(p)),
        min_value=min_supmesh(k),
        max_value=max_supmesh(k),
        max_truncated=max_supmesh_truncated(k),
        table_min=lo,
        table_max=hi,
        table_argmin=tuple(r.perm for r in table if r.sup_mesh == lo),
        table_argmax=tuple(r.perm for r in table if r.sup_mesh == hi),
    )


def a002464_count(k: int, max_k: int = DEFAULT_SCAN_MAX_K) -> int:
    """Permutations of length k with no two neighbours carrying consecutive values."""
    if k < 1:
        raise PreconditionError("k must be at least 1")
    if k > max_k:
        raise BoundExceeded(f"scan limited to k <= {max_k}")
    return sum(
        1
        for w in itertools.permutations(range(1, k + 1))
        if all(abs(a - b) != 1 for a, b in zip(w, w[1:]))
    )

