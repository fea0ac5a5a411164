"""Mesh patterns and mesh containment.

A mesh is stored as an integer bitmask over the (k+1)^2 unit squares of
[0, k+1]^2; square (col, row) lives at bit ``col * (k + 1) + row``. Square
(a, b) of an occurrence i_1 < ... < i_k with sorted values v_1 < ... < v_k is
the open host region i_a < z < i_{a+1}, v_b < sigma(z) < v_{b+1}, with
sentinels i_0 = v_0 = 0 and i_{k+1} = v_{k+1} = n + 1.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import PreconditionError, TheoremViolation
from .perm import Occurrence, Permutation, complement, flatten, inverse, occurrences, parse_perm, reverse

__all__ = [
    "Square",
    "MeshPattern",
    "square_bit",
    "mask_of",
    "squares_of",
    "parse_mesh_pattern",
    "region_contents",
    "violation_mask",
    "violations",
    "occurrence_masks",
    "mesh_occurrences",
    "contains_mesh",
    "transform",
    "repair_occurrence",
    "repair_step",
    "repair_chain",
    "SYMMETRIES",
]

Square = tuple[int, int]

SYMMETRIES = ("reverse", "complement", "inverse")


def square_bit(k: int, col: int, row: int) -> int:
    return col * (k + 1) + row


def mask_of(k: int, squares: Iterable[Square]) -> int:
    mask = 0
    for col, row in squares:
        if not (0 <= col <= k and 0 <= row <= k):
            raise ValueError(f"square ({col},{row}) outside [0,{k}]^2")
        mask |= 1 << square_bit(k, col, row)
    return mask


def squares_of(k: int, mask: int) -> list[Square]:
    """Squares of a mask, sorted by (col, row)."""
    side = k + 1
    out = []
    while mask:
        low = mask & -mask
        b = low.bit_length() - 1
        out.append(divmod(b, side))
        mask ^= low
    return out


@dataclass(frozen=True)
class MeshPattern:
    perm: Permutation
    mask: int = 0

    def __post_init__(self):
        k = len(self.perm)
        if self.mask < 0 or self.mask >> ((k + 1) ** 2):
            raise ValueError(f"mesh mask has squares outside [0,{k}]^2")

    @classmethod
    def of(cls, perm: Permutation | str, squares: Iterable[Square] = ()) -> "MeshPattern":
        if isinstance(perm, str):
            perm = parse_perm(perm)
        return cls(perm, mask_of(len(perm), squares))

    @property
    def k(self) -> int:
        return len(self.perm)

    @property
    def squares(self) -> frozenset[Square]:
        return frozenset(squares_of(self.k, self.mask))

    def __contains__(self, square: Square) -> bool:
        col, row = square
        k = self.k
        return 0 <= col <= k and 0 <= row <= k and bool(self.mask >> square_bit(k, col, row) & 1)

    def __str__(self) -> str:
        sq = ";".join(f"{c},{r}" for c, r in squares_of(self.k, self.mask))
        return f"{self.perm}:{sq}"

    def to_json(self) -> dict:
        return {"perm": list(self.perm.word), "mesh": [[c, r] for c, r in squares_of(self.k, self.mask)]}

    @classmethod
    def from_json(cls, obj: dict) -> "MeshPattern":
        return cls.of(Permutation(tuple(obj["perm"])), (tuple(sq) for sq in obj["mesh"]))


def parse_mesh_pattern(text: str) -> MeshPattern:
    """Parse "<perm>:<c,r>;<c,r>;..." e.g. "213:0,3;1,2;1,3;3,0" or "213:"."""
    if ":" not in text:
        raise ValueError(f"mesh pattern needs ':' separator: {text!r}")
    head, _, tail = text.partition(":")
    perm = parse_perm(head)
    squares = []
    tail = tail.strip()
    if tail:
        for item in tail.split(";"):
            parts = item.split(",")
            if len(parts) != 2:
                raise ValueError(f"bad square {item!r}")
            try:
                squares.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise ValueError(f"bad square {item!r}") from None
    return MeshPattern.of(perm, squares)


def _check_occurrence(host: Permutation, occ: Occurrence) -> None:
    n = len(host)
    if not occ or any(not 1 <= i <= n for i in occ) or any(a >= b for a, b in zip(occ, occ[1:])):
        raise PreconditionError(f"{occ} is not an increasing index tuple in 1..{n}")


def _slots(host: Permutation, occ: Occurrence) -> Iterator[tuple[int, int, int]]:
    # (z, col_slot, row_slot) for every host point outside the occurrence
    used = set(occ)
    values = sorted(host(i) for i in occ)
    for z, v in enumerate(host.word, start=1):
        if z in used:
            continue
        yield z, bisect.bisect_left(occ, z), bisect.bisect_left(values, v)


def region_contents(host: Permutation, occ: Occurrence, square: Square) -> list[tuple[int, int]]:
    _check_occurrence(host, occ)
    k = len(occ)
    col, row = square
    if not (0 <= col <= k and 0 <= row <= k):
        raise PreconditionError(f"square {square} outside [0,{k}]^2")
    return [(z, host(z)) for z, a, b in _slots(host, occ) if (a, b) == (col, row)]


def violation_mask(host: Permutation, occ: Occurrence) -> int:
    """Bitmask of the squares whose region holds at least one host point."""
    k = len(occ)
    mask = 0
    for _, a, b in _slots(host, occ):
        mask |= 1 << square_bit(k, a, b)
    return mask


def violations(host: Permutation, occ: Occurrence, mp: MeshPattern) -> int:
    """Number of host points landing in shaded regions."""
    _check_occurrence(host, occ)
    if len(occ) != mp.k:
        raise PreconditionError("occurrence length differs from pattern length")
    k = mp.k
    return sum(1 for _, a, b in _slots(host, occ) if mp.mask >> square_bit(k, a, b) & 1)


def occurrence_masks(host: Permutation, pattern: Permutation) -> list[int]:
    """One violation mask per classical occurrence, in occurrence order."""
    return [violation_mask(host, occ) for occ in occurrences(host, pattern)]


def mesh_occurrences(host: Permutation, mp: MeshPattern) -> Iterator[Occurrence]:
    for occ in occurrences(host, mp.perm):
        if not violation_mask(host, occ) & mp.mask:
            yield occ


def contains_mesh(host: Permutation, mp: MeshPattern) -> bool:
    return next(mesh_occurrences(host, mp), None) is not None


def transform(mp: MeshPattern, symmetry: str) -> MeshPattern:
    k = mp.k
    sq = squares_of(k, mp.mask)
    if symmetry == "reverse":
        return MeshPattern.of(reverse(mp.perm), ((k - a, b) for a, b in sq))
    if symmetry == "complement":
        return MeshPattern.of(complement(mp.perm), ((a, k - b) for a, b in sq))
    if symmetry == "inverse":
        return MeshPattern.of(inverse(mp.perm), ((b, a) for a, b in sq))
    raise ValueError(f"unknown symmetry {symmetry!r}")


def transform_host(host: Permutation, symmetry: str) -> Permutation:
    return {"reverse": reverse, "complement": complement, "inverse": inverse}[symmetry](host)


# corner of a square in direction (dx, dy), as an offset from its lower-left corner
_DIRECTIONS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def _shift_candidates(mp: MeshPattern, square: Square) -> Iterator[tuple[int, int]]:
    """(direction index, chain length h) for each diagonal chain leaving ``square``.

    A chain in direction d starts at ``square``, passes through pattern points
    at the shared corners of consecutive shaded squares, and ends at the first
    unshaded square. The representative of the last chain point is the one
    the shift discards.
    """
    perm = mp.perm
    i, j = square
    for di, (dx, dy) in enumerate(_DIRECTIONS):
        h = 0
        a, b = i, j
        while True:
            cx, cy = a + (dx > 0), b + (dy > 0)
            if not perm.has_point(cx, cy):
                break
            h += 1
            a, b = a + dx, b + dy
            if (a, b) not in mp:
                yield di, h
                break


def _shift(occ: Occurrence, square: Square, z: int, di: int, h: int) -> Occurrence:
    dx, dy = _DIRECTIONS[di]
    i, j = square
    # pattern position of the h-th chain point
    last_col = i + (dx > 0) + (h - 1) * dx
    return tuple(sorted(set(occ) - {occ[last_col - 1]} | {z}))


def repair_step(host: Permutation, mp: MeshPattern, occ: Occurrence) -> tuple[Occurrence, str]:
    """One strict improvement of ``occ``; returns the new occurrence and the route used.

    Route "shift": for a violated shaded square, follow the chain of shaded
    squares linked through pattern points at shared corners to its first
    unshaded square; the violating point joins the occurrence and the chain's
    last representative leaves it. Candidates are tried in (square, host
    position, direction) order and the first strict improvement wins.

    A shift can move other host points between column or row bands and land
    them in different shaded squares, so it is not always an improvement.
    Route "search" then takes the classical occurrence with the fewest
    violations (lexicographically first among ties).
    """
    from .diagonals import enclosed_diagonals

    _check_occurrence(host, occ)
    if len(occ) != mp.k or _flat(host, occ) != mp.perm:
        raise PreconditionError(f"{occ} is not an occurrence of {mp.perm} in {host}")
    before = violations(host, occ, mp)
    if before == 0:
        raise PreconditionError("occurrence already satisfies the mesh")
    if enclosed_diagonals(mp):
        raise PreconditionError(f"{mp} has an enclosed diagonal")

    k = mp.k
    hits = sorted((a, b, z) for z, a, b in _slots(host, occ) if mp.mask >> square_bit(k, a, b) & 1)
    for a, b, z in hits:
        for di, h in _shift_candidates(mp, (a, b)):
            new = _shift(occ, (a, b), z, di, h)
            if _flat(host, new) != mp.perm:
                raise TheoremViolation(f"shift of {occ} produced non-occurrence {new}")
            if violations(host, new, mp) < before:
                return new, "shift"

    best, best_v = None, before
    for other in occurrences(host, mp.perm):
        v = violations(host, other, mp)
        if v < best_v:
            best, best_v = other, v
    if best is None:
        raise TheoremViolation(f"no occurrence of {mp} in {host} has fewer violations than {occ}")
    return best, "search"


def repair_occurrence(host: Permutation, mp: MeshPattern, occ: Occurrence) -> Occurrence:
    """An occurrence with strictly fewer violations than ``occ`` (see ``repair_step``)."""
    return repair_step(host, mp, occ)[0]


def repair_chain(host: Permutation, mp: MeshPattern, occ: Occurrence) -> list[tuple[Occurrence, int, str]]:
    """Iterate repairs until a mesh occurrence; rows are (occurrence, violations, route)."""
    v = violations(host, occ, mp)
    chain = [(occ, v, "start")]
    while v:
        occ, route = repair_step(host, mp, occ)
        nv = violations(host, occ, mp)
        if nv >= v:
            raise TheoremViolation(f"repair did not lower violations at {occ}")
        v = nv
        chain.append((occ, v, route))
    return chain


def _flat(host: Permutation, occ: Occurrence) -> Permutation:
    return flatten([host(i) for i in occ])
