import pytest

from linkcert.constructions import (
    EdgeSpace,
    SearchBudget,
    SearchExhausted,
    find_nonsplit_pair,
    find_three_component_base,
    find_triangle_mcycle,
    search_mod4,
)
from linkcert.harness import random_embedding
from linkcert.spatial import kernel_for


def test_edge_space_matches_kernel():
    emb = random_embedding(9, 2)
    space = EdgeSpace(emb, range(9))
    A, B = [(0, 4, 2, 7)], [(1, 3, 8, 5, 6)]
    got = int(space.lk(space.vectors(A), space.vectors(B))[0, 0])
    assert got == kernel_for(emb).linking_number(A[0], B[0])


def test_nonsplit_needs_six_vertices():
    with pytest.raises(ValueError, match="p >= 6"):
        find_nonsplit_pair(random_embedding(6, 0), range(5))


@pytest.mark.parametrize("mode", ["odd", "nonzero"])
def test_nonsplit_modes(mode):
    for seed in range(20):
        cert = find_nonsplit_pair(random_embedding(7, seed), mode=mode)
        lk = cert.lk(0, 1)
        assert lk % 2 == 1 if mode == "odd" else lk != 0


def test_budget_exhaustion_is_reported():
    emb = random_embedding(10, 1)
    with pytest.raises(SearchExhausted, match="budget exhausted"):
        search_mod4(emb, budget=SearchBudget(max_tuples=3))
    with pytest.raises(ValueError):
        SearchBudget(max_size=0)


def test_triangle_mcycle():
    with pytest.raises(ValueError, match="m >= 3"):
        find_triangle_mcycle(random_embedding(8, 0), 2)
    for m in (3, 4, 5):
        cert = find_triangle_mcycle(random_embedding(m + 3, m), m)
        assert [len(c) for c in cert.components] == [3, m] and cert.lk(0, 1) != 0


def test_three_component_base():
    for seed in range(10):
        cert = find_three_component_base(random_embedding(10, seed))
        assert cert.lk(0, 1) % 2 == 1 and cert.lk(0, 2) % 2 == 1
