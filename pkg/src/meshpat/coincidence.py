"""Brute-force coincidence checks between a mesh pattern and its classical pattern.

Every host of length n is reduced once to the list of violation masks of its
classical occurrences (one bitmask per occurrence, marking the squares whose
region holds a host point). A host contains (pi, R) iff one of those masks is
disjoint from R, so a single host index answers every mesh on pi.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .diagonals import EnclosedDiagonal, candidate_diagonals, is_superfluous
from .errors import BoundExceeded, PreconditionError, TheoremViolation
from .mesh import MeshPattern, occurrence_masks
from .perm import Permutation, all_permutations, complement, flatten

__all__ = [
    "CoincidenceReport",
    "host_masks",
    "av_count",
    "verify_coincidence",
    "coincidence_sweep",
    "witness",
    "minimal_basis_check",
    "DEFAULT_MAX_N",
]

DEFAULT_MAX_N = 8


@lru_cache(maxsize=64)
def host_masks(pattern: Permutation, n: int) -> tuple[tuple[Permutation, tuple[int, ...]], ...]:
    """(host, occurrence masks) for every host in S_n that contains ``pattern``."""
    out = []
    for host in all_permutations(n):
        masks = occurrence_masks(host, pattern)
        if masks:
            out.append((host, tuple(masks)))
    return tuple(out)


def _check_n(n: int, max_n: int) -> None:
    if n < 1:
        raise PreconditionError("n must be at least 1")
    if n > max_n:
        raise BoundExceeded(f"brute force limited to n <= {max_n}")


def av_count(pattern: Permutation | MeshPattern, n: int, max_n: int = DEFAULT_MAX_N) -> int:
    """Number of permutations of length n avoiding ``pattern``."""
    _check_n(n, max_n)
    total = 1
    for i in range(2, n + 1):
        total *= i
    if isinstance(pattern, MeshPattern):
        mesh = pattern.mask
        hosts = host_masks(pattern.perm, n)
        containing = sum(1 for _, masks in hosts if any(not m & mesh for m in masks))
    else:
        containing = len(host_masks(pattern, n))
    return total - containing


@dataclass
class CoincidenceReport:
    mesh_pattern: MeshPattern
    n_max: int
    per_length: list[tuple[int, int, int]] = field(default_factory=list)  # (n, |Av(pi)|, |Av((pi,R))|)
    witness: Optional[Permutation] = None

    @property
    def verdict(self) -> str:
        return "witness_found" if self.witness is not None else "coincident-up-to-n_max"

    @property
    def coincident(self) -> bool:
        return self.witness is None

    def to_json(self) -> dict:
        return {
            "mesh_pattern": str(self.mesh_pattern),
            "n_max": self.n_max,
            "per_length": [{"n": n, "av_classical": a, "av_mesh": b} for n, a, b in self.per_length],
            "verdict": self.verdict,
            "witness": str(self.witness) if self.witness is not None else None,
        }


def verify_coincidence(
    mp: MeshPattern,
    n_max: Optional[int] = None,
    max_n: int = DEFAULT_MAX_N,
    check_theorem: bool = True,
) -> CoincidenceReport:
    """Compare Av(pi) and Av((pi, R)) length by length, from k up to n_max.

    Scanning stops after the first length holding a witness (a host that
    contains pi but not the mesh pattern); that length is still counted in
    full and the lexicographically first witness is kept. When n_max >= k+1
    the verdict is checked against the enclosed-diagonal criterion and a
    disagreement raises ``TheoremViolation``.
    """
    k = mp.k
    if n_max is None:
        n_max = k + 2
    if n_max < k:
        raise PreconditionError(f"n_max={n_max} is below the pattern length {k}")
    _check_n(n_max, max_n)
    report = CoincidenceReport(mp, n_max)
    mesh = mp.mask
    for n in range(k, n_max + 1):
        total = 1
        for i in range(2, n + 1):
            total *= i
        hosts = host_masks(mp.perm, n)
        mesh_hits = 0
        for host, masks in hosts:
            if any(not m & mesh for m in masks):
                mesh_hits += 1
            elif report.witness is None:
                report.witness = host
        report.per_length.append((n, total - len(hosts), total - mesh_hits))
        if report.witness is not None:
            break
    if check_theorem and n_max >= k + 1 and report.coincident != is_superfluous(mp):
        raise TheoremViolation(
            f"{mp}: brute force says {report.verdict} up to n={n_max}, "
            f"criterion says superfluous={is_superfluous(mp)}"
        )
    return report


def coincidence_sweep(perm: Permutation, meshes, n_max: int, max_n: int = DEFAULT_MAX_N) -> np.ndarray:
    """Vectorized brute force: for each mesh mask, True iff coincident up to n_max.

    ``meshes`` is any integer array of masks over [0,k]^2.
    """
    k = len(perm)
    _check_n(n_max, max_n)
    meshes = np.asarray(meshes, dtype=np.uint64)
    broken = np.zeros(meshes.shape, dtype=bool)
    for n in range(k, n_max + 1):
        for _, masks in host_masks(perm, n):
            # the host is a witness for R iff every occurrence mask meets R
            blocked = np.ones(meshes.shape, dtype=bool)
            for m in set(masks):
                blocked &= (meshes & np.uint64(m)) != 0
            broken |= blocked
    return ~broken


def witness(p: Permutation, d: EnclosedDiagonal) -> Permutation:
    """A length k+1 permutation containing p but avoiding (p, squares of d).

    For an ascending diagonal anchored at (i, j) the value j + 1/2 is inserted
    right after position i. Values are doubled so the insertion stays integral.
    Descending diagonals go through the complement.
    """
    if d not in candidate_diagonals(p):
        raise PreconditionError(f"{d} is not a candidate diagonal of {p}")
    k = len(p)
    if d.eps == -1:
        i, j = d.anchor
        mirrored = EnclosedDiagonal((i, k - j), 1, d.h)
        return complement(witness(complement(p), mirrored))
    i, j = d.anchor
    doubled = [2 * v for v in p.word]
    doubled.insert(i, 2 * j + 1)
    return flatten(doubled)


def minimal_basis_check(mp: MeshPattern, n_max: int, max_n: int = DEFAULT_MAX_N) -> bool:
    """True iff, for every n <= n_max, exactly the hosts containing pi contain (pi, R)."""
    if not is_superfluous(mp):
        raise PreconditionError(f"{mp} has an enclosed diagonal")
    _check_n(n_max, max_n)
    mesh = mp.mask
    for n in range(1, n_max + 1):
        for _, masks in host_masks(mp.perm, n):
            if all(m & mesh for m in masks):
                return False
    return True
