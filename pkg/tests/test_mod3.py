import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkcert.constructions import (
    figure_four_cycles,
    mod3_casework,
    mod3_core,
    mod3_keys,
    mod3_two_component,
    verify_certificate,
)
from linkcert.harness import random_embedding
from linkcert.spatial import chain_add, chain_of, fuse, kernel_for

Z3 = [(0, 1, 2, 3), (4, 5, 6, 7), (8, 9, 10, 11)]


@pytest.mark.parametrize("Zs", [Z3, [tuple(range(0, 5)), tuple(range(5, 11)), tuple(range(11, 18))]])
def test_five_cycles_sum_to_the_three(Zs):
    cyc = figure_four_cycles(Zs)
    assert chain_add(*map(chain_of, cyc)) == chain_add(*map(chain_of, Zs))
    # the two unions named in the terminal case are single cycles
    fuse(cyc[2], cyc[4])
    fuse(cyc[0], cyc[1], cyc[3])


def test_every_chosen_union_is_a_cycle():
    cyc = figure_four_cycles(Z3)
    chosen = set()
    for a in itertools.product(range(-4, 5), repeat=5):
        s = sum(a)
        if s % 3 == 0 and s:
            chosen.add(mod3_casework(a)[0])
    for idx in chosen:
        fuse(*(cyc[i] for i in idx))
    assert len(chosen) >= 15


@st.composite
def classes(draw):
    a = draw(st.lists(st.integers(-30, 30), min_size=5, max_size=5))
    a[4] -= sum(a) % 3
    if sum(a) == 0:
        a[draw(st.integers(0, 4))] += 3
    return a


@settings(max_examples=2000, deadline=None)
@given(classes())
def test_casework_is_total(a):
    idx, note = mod3_casework(a)
    s = sum(a[i] for i in idx)
    assert s % 3 == 0 and s != 0 and note


def test_casework_branches():
    assert mod3_casework([1, 1, 1, 3, -3])[0] == (3,)
    assert mod3_casework([1, 1, 1, 0, 3])[0] == (0, 1, 2, 4)
    assert mod3_casework([3, 1, 1, 2, 2])[0] == (0,)
    # all nonzero mod 3, lens1 = lens2, S = (1, 2, 0) with S3 = 0 integrally
    idx, note = mod3_casework([1, 1, 2, 1, -2])
    assert "integrally" in note and sum([1, 1, 2, 1, -2][i] for i in idx) % 3 == 0
    with pytest.raises(ValueError):
        mod3_casework([1, 1, 1, 1, 1])


def test_mod3_two_component():
    for seed in range(8):
        emb = random_embedding(35, seed)
        cert = mod3_two_component(emb)
        assert cert.lk(0, 1) % 3 == 0 and cert.lk(0, 1) != 0
        assert verify_certificate(emb, cert).ok


def test_mod3_core_equal_residues():
    # exercise the five-cycle path directly on any three partners with equal residues
    for seed in range(40):
        emb = random_embedding(35, 100 + seed)
        from linkcert.constructions.mod2 import doubling_star

        star = doubling_star(emb, 3, 4, "test")
        k = kernel_for(emb)
        res = {abs(k.linking_number(star.L, z)) % 3 for z in star.components[1:]}
        if len(res) == 1 and 0 not in res:
            trace = []
            A = mod3_core(emb, star.L, star.components[1:], trace)
            lk = k.linking_number(star.L, A)
            assert lk % 3 == 0 and lk != 0 and "equal residues" in trace[-1]
            return
    pytest.skip("no equal-residue configuration among the sampled embeddings")


def test_mod3_keys():
    emb = random_embedding(35, 3)
    one = mod3_keys(emb, 1)
    assert one.lk(0, 1) % 3 == 0 and one.lk(0, 1) != 0
    emb = random_embedding(294, 1)
    cert = mod3_keys(emb, 2)
    assert all(x % 3 == 0 and x != 0 for x in cert.linking_matrix[0][1:])
    assert verify_certificate(emb, cert).ok
    with pytest.raises(ValueError, match="insufficient"):
        mod3_keys(random_embedding(100, 0), 2)
