"""Pigeonhole selection of zero-sum runs in cyclic integer sequences.

The selection rules are written as numpy batch kernels over equal-length
sequences (one per row) so that exhaustive checks can push millions of
sequences through the same code the engines use; the scalar functions
validate preconditions and call the kernels on a single row.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


class SelectionError(ValueError):
    pass


@dataclass(frozen=True)
class BlockSelection:
    """A cyclic run of a sequence whose sum is 0 mod ``modulus``.

    ``indices`` lists the selected positions (0-based) in cyclic order.
    ``complement`` is set when the run is the complement of a block whose
    sum vanished integrally.
    """

    values: tuple[int, ...]
    modulus: int
    start: int
    length: int
    complement: bool
    partial_sums: tuple[int, ...]

    @property
    def indices(self) -> tuple[int, ...]:
        t = len(self.values)
        return tuple((self.start + k) % t for k in range(self.length))

    @property
    def rest(self) -> tuple[int, ...]:
        t = len(self.values)
        return tuple((self.start + self.length + k) % t for k in range(t - self.length))

    @property
    def block_sum(self) -> int:
        return sum(self.values[i] for i in self.indices)


def zero_block_select_batch(V: np.ndarray, m: int):
    """Vectorised zero-sum block choice for each row of V.

    Rows must satisfy the preconditions of :func:`zero_block_select`.
    Returns (start, length, complement) arrays.

    With S_j the j-th partial sum, the first j <= m with S_j = 0 (mod m)
    gives the block 1..j; failing that, the first j whose residue repeats an
    earlier S_i gives i+1..j.  A block with integral sum 0 is replaced by its
    complement.
    """
    # work on columns; a Fortran-ordered V makes this copy-free
    VT = np.asarray(V).T
    t, B = VT.shape
    acc = np.int16 if VT.dtype.itemsize == 1 else np.int64
    S = np.cumsum(VT[:m], axis=0, dtype=acc)
    R = S % m
    # block is lo+1 .. hi in 1-based positions
    lo = np.zeros(B, dtype=np.int8)
    hi = np.zeros(B, dtype=np.int8)
    todo = np.ones(B, dtype=bool)
    for j in range(m):
        hit = todo & (R[j] == 0)
        hi[hit] = j + 1
        todo &= ~hit
    for j in range(1, m):
        for i in range(j):
            if not todo.any():
                break
            hit = todo & (R[i] == R[j])
            lo[hit] = i + 1
            hi[hit] = j + 1
            todo &= ~hit
    if todo.any():
        raise SelectionError("precondition violated: pigeonhole found no block")
    S0 = np.concatenate([np.zeros((1, B), dtype=acc), S])
    cols = np.arange(B)
    comp = S0[hi, cols] == S0[lo, cols]
    start = np.where(comp, hi, lo)
    length = np.where(comp, t - (hi - lo), hi - lo)
    return start, length, comp


def _check_sequence(values: Sequence[int]) -> tuple[int, ...]:
    vals = tuple(int(v) for v in values)
    if not vals:
        raise SelectionError("precondition violated: empty sequence")
    return vals


def zero_block_select(values: Sequence[int], m: int) -> BlockSelection:
    """Nonempty proper cyclic run with sum = 0 (mod m) and sum != 0.

    Preconditions: len(values) >= m + 1, sum = 0 (mod m), sum != 0.
    """
    vals = _check_sequence(values)
    if m < 1:
        raise SelectionError("precondition violated: modulus must be positive")
    if len(vals) < m + 1:
        raise SelectionError(f"precondition violated: length {len(vals)} < m + 1 = {m + 1}")
    total = sum(vals)
    if total % m:
        raise SelectionError(f"precondition violated: sum {total} is not 0 mod {m}")
    if total == 0:
        raise SelectionError("precondition violated: sum is 0 integrally")
    start, length, comp = zero_block_select_batch(np.array([vals], dtype=np.int64), m)
    partial = tuple(int(x) for x in np.cumsum(vals[:m]))
    return BlockSelection(vals, m, int(start[0]), int(length[0]), bool(comp[0]), partial)


def select_mod2_batch(V: np.ndarray):
    """First proper cyclic run with even sum, scanning by start then length."""
    # start 0 works unless V_0 is odd and its partner odd entry is the last one;
    # then V_1 is even and the run (1,) is the first hit
    VT = np.asarray(V).T
    t, B = VT.shape
    odd = (VT & 1).astype(bool)
    start = np.zeros(B, dtype=np.int8)
    length = np.ones(B, dtype=np.int8)
    pending = odd[0].copy()
    for k in range(1, t - 1):
        hit = pending & odd[k]
        length[hit] = k + 1
        pending &= ~hit
    if pending.any():
        if not odd[t - 1][pending].all() or odd[1][pending].any():
            raise SelectionError("precondition violated: no proper even run")
        start[pending] = 1
    return start, length


def select_zero_subsequence_mod2(values: Sequence[int]) -> BlockSelection:
    """First proper consecutive run with even sum; its complement is then even too."""
    vals = _check_sequence(values)
    if len(vals) < 3:
        raise SelectionError(f"precondition violated: length {len(vals)} < 3")
    if sum(vals) % 2:
        raise SelectionError("precondition violated: sum is odd")
    start, length = select_mod2_batch(np.array([vals], dtype=np.int64))
    return BlockSelection(vals, 2, int(start[0]), int(length[0]), False, ())


def max_block_decompose(values: Sequence[int], m: int) -> list[tuple[int, ...]]:
    """Split the cyclic sequence into the most consecutive blocks with sum 0 mod m.

    For a fixed starting rotation, cutting at every partial sum = 0 (mod m)
    is optimal; the first rotation reaching the maximum is used.
    """
    vals = _check_sequence(values)
    if sum(vals) % m:
        raise SelectionError(f"precondition violated: sum is not 0 mod {m}")
    t = len(vals)
    best, best_start = -1, 0
    for s in range(t):
        acc, cuts = 0, 0
        for k in range(t):
            acc += vals[(s + k) % t]
            cuts += acc % m == 0
        if cuts > best:
            best, best_start = cuts, s
    blocks, cur, acc = [], [], 0
    for k in range(t):
        i = (best_start + k) % t
        cur.append(i)
        acc += vals[i]
        if acc % m == 0:
            blocks.append(tuple(cur))
            cur = []
    return blocks
