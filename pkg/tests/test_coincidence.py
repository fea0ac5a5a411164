import random

import numpy as np
import pytest
from hypothesis import given, settings

from meshpat.coincidence import (
    av_count,
    coincidence_sweep,
    minimal_basis_check,
    verify_coincidence,
    witness,
)
from meshpat.diagonals import EnclosedDiagonal, candidate_diagonals, is_superfluous, universe
from meshpat.errors import BoundExceeded, PreconditionError
from meshpat.mesh import MeshPattern, contains_mesh, mesh_occurrences, parse_mesh_pattern
from meshpat.perm import Permutation, all_permutations, contains_classical, occurrences, parse_perm

from conftest import mesh_patterns


def av_oracle(pattern, n):
    if isinstance(pattern, MeshPattern):
        return sum(1 for s in all_permutations(n) if not contains_mesh(s, pattern))
    return sum(1 for s in all_permutations(n) if not contains_classical(s, pattern))


def test_av_count_examples():
    assert av_oracle(parse_perm("123"), 4) == 14
    assert av_count(parse_perm("123"), 4) == 14
    assert av_count(parse_mesh_pattern("123:1,1"), 4) == 14
    assert av_count(parse_perm("1"), 3) == 0


@settings(max_examples=40, deadline=None)
@given(mesh_patterns(1, 3))
def test_av_count_matches_oracle(mp):
    for n in range(1, 6):
        assert av_count(mp, n) == av_oracle(mp, n)
        assert av_count(mp, n) >= av_count(mp.perm, n)


def test_av_count_bound():
    with pytest.raises(BoundExceeded):
        av_count(parse_perm("12"), 9)


def test_verify_examples():
    r = verify_coincidence(parse_mesh_pattern("231:1,1"), 5)
    assert r.coincident and r.verdict == "coincident-up-to-n_max"
    assert [(n, a) for n, a, b in r.per_length if a == b] == [(3, 5), (4, 14), (5, 42)]
    r = verify_coincidence(parse_mesh_pattern("231:1,1;3,2"), 4)
    assert r.witness == parse_perm("2413") and r.verdict == "witness_found"
    assert list(occurrences(parse_perm("2413"), parse_perm("231"))) == [(1, 2, 3)]
    for p in all_permutations(3):
        assert verify_coincidence(MeshPattern(p), 5).coincident


def test_verify_report_json():
    r = verify_coincidence(parse_mesh_pattern("231:1,1;3,2"), 4)
    assert r.to_json() == {
        "mesh_pattern": "231:1,1;3,2",
        "n_max": 4,
        "per_length": [
            {"n": 3, "av_classical": 5, "av_mesh": 5},
            {"n": 4, "av_classical": 14, "av_mesh": 15},
        ],
        "verdict": "witness_found",
        "witness": "2413",
    }


def test_verify_preconditions():
    with pytest.raises(PreconditionError):
        verify_coincidence(parse_mesh_pattern("231:1,1"), 2)
    with pytest.raises(BoundExceeded):
        verify_coincidence(parse_mesh_pattern("231:1,1"), 9)


@settings(max_examples=60, deadline=None)
@given(mesh_patterns(1, 3))
def test_report_invariants(mp):
    r = verify_coincidence(mp, mp.k + 2)
    for _, a, b in r.per_length:
        assert b >= a
    if r.witness is not None:
        assert contains_classical(r.witness, mp.perm)
        assert not contains_mesh(r.witness, mp)
    assert r.coincident == is_superfluous(mp)


def test_sweep_matches_single_reports():
    rng = random.Random(3)
    for p in all_permutations(3):
        masks = [rng.getrandbits(16) for _ in range(30)] + [0]
        cells = universe(p)
        masks += [sum(1 << (c * 4 + r) for c, r in rng.sample(cells, rng.randint(1, len(cells)))) for _ in range(30)]
        ok = coincidence_sweep(p, masks, 5)
        for m, flag in zip(masks, ok):
            assert verify_coincidence(MeshPattern(p, m), 5, check_theorem=False).coincident == bool(flag)


def test_witness_examples():
    assert witness(parse_perm("231"), EnclosedDiagonal((2, 0), 1, 2)) == parse_perm("3412")
    assert witness(parse_perm("231"), EnclosedDiagonal((3, 2), 1, 1)) == parse_perm("2413")
    assert witness(parse_perm("123"), EnclosedDiagonal((0, 0), 1, 4)) == parse_perm("1234")


def test_witness_rejects_non_candidate():
    with pytest.raises(PreconditionError):
        witness(parse_perm("231"), EnclosedDiagonal((1, 1), 1, 1))


def _insert_half(p, i, j):
    vals = [2 * v for v in p.word]
    vals.insert(i, 2 * j + 1)
    return tuple(1 + sum(w < v for w in vals) for v in vals)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_witness_property(k):
    for p in all_permutations(k):
        for d in candidate_diagonals(p):
            w = witness(p, d)
            assert len(w) == k + 1
            assert len(list(occurrences(w, p))) == d.h
            assert not contains_mesh(w, MeshPattern.of(p, d.squares))
            # descending witnesses via the complement equal a direct insertion of j + 1/2
            assert w.word == _insert_half(p, *d.anchor)


def test_minimal_basis_check():
    assert minimal_basis_check(parse_mesh_pattern("123:1,1"), 6)
    assert minimal_basis_check(MeshPattern.of("2413"), 6)
    box = [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert minimal_basis_check(MeshPattern.of("132", box), 6)
    with pytest.raises(PreconditionError):
        minimal_basis_check(MeshPattern.of("123", box), 6)


@pytest.mark.parametrize("word", ["123", "231", "321"])
def test_superfluous_means_same_containers(word):
    p = parse_perm(word)
    rng = random.Random(11)
    cells = universe(p)
    for _ in range(25):
        mp = MeshPattern.of(p, rng.sample(cells, rng.randint(0, len(cells))))
        if not is_superfluous(mp):
            continue
        for n in range(1, 6):
            for s in all_permutations(n):
                assert contains_classical(s, p) == bool(next(mesh_occurrences(s, mp), None))
