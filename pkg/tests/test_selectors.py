from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkcert.selectors import (
    SelectionError,
    max_block_decompose,
    select_zero_subsequence_mod2,
    zero_block_select,
)


def test_zero_block_examples():
    sel = zero_block_select((1, 1, 1, 1, 2), 3)
    assert sel.indices == (0, 1, 2) and sel.block_sum == 3
    sel = zero_block_select((1, -1, 2, 2, 2), 3)
    assert sel.complement and sel.indices == (2, 3, 4) and sel.block_sum == 6


@pytest.mark.parametrize(
    "vals,m,msg",
    [((1, 1, 1, 1), 3, "not 0 mod"), ((3, -3, 0), 2, "integrally"), ((3, 3), 3, "length"), ((), 2, "empty")],
)
def test_zero_block_preconditions(vals, m, msg):
    with pytest.raises(SelectionError, match=msg):
        zero_block_select(vals, m)


def test_mod2_examples():
    assert select_zero_subsequence_mod2((1, 1, 0)).indices == (0, 1)
    assert select_zero_subsequence_mod2((0, 1, 1)).indices == (0,)
    assert select_zero_subsequence_mod2((1, 0, 1)).indices == (1,)
    with pytest.raises(SelectionError):
        select_zero_subsequence_mod2((1, 0, 0))


@st.composite
def zero_mod(draw, m):
    t = draw(st.integers(m + 1, 12))
    vals = draw(st.lists(st.integers(-50, 50), min_size=t - 1, max_size=t - 1))
    last = draw(st.integers(-50, 50))
    last -= (sum(vals) + last) % m
    vals.append(last)
    if sum(vals) == 0:
        vals[0] += m
    return vals, m


@settings(max_examples=400, deadline=None)
@given(st.integers(2, 6).flatmap(zero_mod))
def test_zero_block_is_proper_run(case):
    vals, m = case
    sel = zero_block_select(vals, m)
    assert 1 <= sel.length < len(vals)
    assert sel.block_sum % m == 0 and sel.block_sum != 0
    assert sorted(sel.indices + sel.rest) == list(range(len(vals)))


@settings(max_examples=400, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=3, max_size=12).filter(lambda v: sum(v) % 2 == 0))
def test_mod2_run_and_complement_even(vals):
    sel = select_zero_subsequence_mod2(vals)
    assert 1 <= sel.length < len(vals)
    assert sel.block_sum % 2 == 0
    assert sum(vals[i] for i in sel.rest) % 2 == 0


def _brute_max_blocks(vals, m):
    t, best = len(vals), 0
    for start in range(t):
        for cuts in product([0, 1], repeat=t - 1):
            blocks, acc, ok = 1, 0, True
            for k in range(t):
                acc += vals[(start + k) % t]
                if k < t - 1 and cuts[k]:
                    ok &= acc % m == 0
                    blocks += 1
                    acc = 0
            if ok and acc % m == 0:
                best = max(best, blocks)
    return best


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=7), st.integers(2, 3))
def test_max_block_decompose_is_optimal(vals, m):
    vals[-1] -= sum(vals) % m
    blocks = max_block_decompose(vals, m)
    assert sorted(i for b in blocks for i in b) == list(range(len(vals)))
    assert all(sum(vals[i] for i in b) % m == 0 for b in blocks)
    assert len(blocks) == _brute_max_blocks(vals, m)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 5), st.data())
def test_level_count_survives_decompositions(k, data):
    # 3 * 2^(k-1) cycles, k-1 rounds of even-block fusion, at least three left
    t = 3 * 2 ** (k - 1)
    pieces = [[i] for i in range(t)]
    for _ in range(k - 1):
        raw = data.draw(st.lists(st.integers(-5, 5), min_size=t, max_size=t))
        raw[-1] -= sum(raw) % 2
        vals = [sum(raw[i] for i in p) for p in pieces]
        pieces = [[i for b in blk for i in pieces[b]] for blk in max_block_decompose(vals, 2)]
    assert len(pieces) >= 3
