import itertools
from fractions import Fraction
from math import comb, sqrt

import pytest
from hypothesis import given
from hypothesis import strategies as st

from meshpat.perm import (
    Permutation,
    all_permutations,
    complement,
    contains_classical,
    flatten,
    from_word,
    identity,
    inverse,
    occurrences,
    parse_perm,
    reverse,
)

from conftest import perms

SYMS = [reverse, complement, inverse]


def rank_oracle(values):
    # rank of each value = 1 + number of smaller values
    return tuple(1 + sum(w < v for w in values) for v in values)


def occurrences_oracle(host, pattern):
    k = len(pattern)
    return [
        tuple(i + 1 for i in idx)
        for idx in itertools.combinations(range(len(host)), k)
        if rank_oracle([host.word[i] for i in idx]) == pattern.word
    ]


def test_from_word():
    assert from_word([4, 2, 1, 3, 5]).word == (4, 2, 1, 3, 5)
    assert from_word([1]).word == (1,)


@pytest.mark.parametrize("bad", [[1, 1], [], [0, 1], [1, 3], [2, 2, 1]])
def test_from_word_rejects(bad):
    with pytest.raises(ValueError):
        from_word(bad)


def test_parse_both_forms():
    assert parse_perm("42135") == parse_perm("4,2,1,3,5") == Permutation((4, 2, 1, 3, 5))
    long = parse_perm("10,9,8,7,6,5,4,3,2,1")
    assert str(long) == "10,9,8,7,6,5,4,3,2,1"
    assert str(parse_perm("42135")) == "42135"


def test_flatten_examples():
    assert flatten([sqrt(5), -1, 0]) == Permutation((3, 1, 2))
    assert flatten([1, 2, 3, 4]) == identity(4)
    assert flatten([2, 3, 0.5, 1]) == Permutation((3, 4, 1, 2))
    assert flatten([Fraction(5, 2), 2, 3, 1]) == Permutation((3, 2, 4, 1))


def test_flatten_rejects_ties():
    with pytest.raises(ValueError):
        flatten([1, 2, 1])


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=8, unique=True))
def test_flatten_matches_rank_oracle(values):
    assert flatten(values).word == rank_oracle(values)


@given(perms())
def test_flatten_idempotent(p):
    assert flatten(p.word) == p


def test_occurrences_worked_example():
    occ = list(occurrences(parse_perm("42135"), parse_perm("213")))
    assert occ == [(1, 2, 5), (1, 3, 5), (1, 4, 5), (2, 3, 4), (2, 3, 5)]
    assert list(occurrences(parse_perm("42315"), parse_perm("132"))) == []
    assert list(occurrences(identity(4), identity(4))) == [(1, 2, 3, 4)]


def test_contains_classical():
    assert contains_classical(parse_perm("42135"), parse_perm("213"))
    assert not contains_classical(parse_perm("42315"), parse_perm("132"))
    assert contains_classical(parse_perm("2413"), parse_perm("2413"))


def test_pattern_longer_than_host_yields_nothing():
    assert list(occurrences(parse_perm("12"), parse_perm("123"))) == []


@given(perms(1, 6), perms(1, 4))
def test_occurrences_match_oracle(host, pattern):
    assert list(occurrences(host, pattern)) == occurrences_oracle(host, pattern)


@pytest.mark.parametrize("n,k", [(4, 2), (5, 3), (6, 3), (5, 4)])
def test_occurrence_counts_sum_to_binomial(n, k):
    patterns = list(all_permutations(k))
    for host in all_permutations(n):
        assert sum(len(list(occurrences(host, p))) for p in patterns) == comb(n, k)


@given(perms(1, 6), perms(1, 3), st.sampled_from(SYMS))
def test_occurrence_count_symmetry_invariant(host, pattern, sym):
    before = len(list(occurrences(host, pattern)))
    assert len(list(occurrences(sym(host), sym(pattern)))) == before


def test_all_permutations():
    assert list(all_permutations(1)) == [Permutation((1,))]
    assert len(list(all_permutations(3))) == 6
    four = list(all_permutations(4))
    assert len(four) == len(set(four)) == 24
    assert four == sorted(four)
    with pytest.raises(ValueError):
        list(all_permutations(0))


def test_symmetry_examples():
    p = parse_perm("231")
    assert reverse(p) == parse_perm("132")
    assert complement(p) == parse_perm("213")
    assert inverse(p) == parse_perm("312")


@given(perms(), st.sampled_from(SYMS))
def test_symmetries_are_involutions(p, sym):
    assert sym(sym(p)) == p


@given(perms())
def test_inverse_composes_to_identity(p):
    q = inverse(p)
    assert tuple(p(q(i)) for i in range(1, len(p) + 1)) == identity(len(p)).word
