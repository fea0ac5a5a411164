import pytest
from hypothesis import strategies as st

from meshpat.mesh import MeshPattern
from meshpat.perm import Permutation


def perms(min_size=1, max_size=6):
    return st.integers(min_size, max_size).flatmap(
        lambda n: st.permutations(list(range(1, n + 1))).map(lambda w: Permutation(tuple(w)))
    )


def mesh_patterns(min_size=1, max_size=4):
    return perms(min_size, max_size).flatmap(
        lambda p: st.integers(0, (1 << (len(p) + 1) ** 2) - 1).map(lambda m: MeshPattern(p, m))
    )


@pytest.fixture
def P():
    from meshpat.perm import parse_perm

    return parse_perm


@pytest.fixture
def M():
    from meshpat.mesh import parse_mesh_pattern

    return parse_mesh_pattern
