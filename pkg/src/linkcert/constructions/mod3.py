"""Engines for linking numbers divisible by 3.

Three cycles Z_1, Z_2, Z_3 linked with L are cut into five cycles: three
lenses, each joining an arc of Z_i to an arc of Z_{i+1} through two edges,
a centre cycle through the inner arcs of all three and an outer cycle
through the outer arcs.  Every connecting edge occurs in exactly two of the
five with opposite orientations, so their classes sum to sum [Z_i].
"""

from __future__ import annotations

from typing import Sequence

from ..selectors import zero_block_select
from ..sequences import alpha_prime
from ..spatial import Embedding, fuse, kernel_for
from .certificate import LinkCertificate, make_certificate, theorem_id
from .lemma import bridge_family, check_identity, oriented_positive
from .mod2 import doubling_star

Cycle = tuple[int, ...]

LENS1, LENS2, LENS3, CENTER, OUTER = range(5)
NAMES = ("lens1", "lens2", "lens3", "center", "outer")


def _arc(Z: Cycle, i: int, j: int) -> list[int]:
    """Vertices of Z from position i forward to position j (inclusive)."""
    n = len(Z)
    return [Z[(i + k) % n] for k in range((j - i) % n + 1)]


def figure_four_cycles(Zs: Sequence[Cycle]) -> list[Cycle]:
    """The five cycles (lens1, lens2, lens3, center, outer) over Z_1, Z_2, Z_3.

    Each Z needs at least four vertices; four evenly spaced positions
    p_0..p_3 split it into arcs.  Lens i runs p_2 -> p_3 on Z_i and
    p_0 -> p_1 on Z_{i+1}; the centre takes every p_1 -> p_2 arc and the
    outer cycle every p_3 -> p_0 arc, in reverse cyclic order of the Z_i.
    """
    if len(Zs) != 3:
        raise ValueError("need exactly three cycles")
    Zs = [tuple(z) for z in Zs]
    if min(map(len, Zs)) < 4:
        raise ValueError("each cycle needs at least 4 vertices")
    if len({v for z in Zs for v in z}) != sum(map(len, Zs)):
        raise ValueError("cycles are not disjoint")
    P = [[len(z) * k // 4 for k in range(4)] for z in Zs]
    arc = lambda i, a, b: _arc(Zs[i], P[i][a], P[i][b])
    lenses = [tuple(arc(i, 2, 3) + arc((i + 1) % 3, 0, 1)) for i in range(3)]
    center = tuple(v for i in range(3) for v in arc(i, 1, 2))
    outer = tuple(v for i in (2, 1, 0) for v in arc(i, 3, 0))
    return lenses + [center, outer]


def mod3_casework(a: Sequence[int]) -> tuple[tuple[int, ...], str]:
    """Which of the five cycles to fuse, from their classes alone.

    ``a`` lists the classes of (lens1, lens2, lens3, center, outer); their
    sum must be a nonzero multiple of 3.  Returns the chosen indices, whose
    classes sum to a nonzero multiple of 3, and a note for the trace.
    """
    a = [int(x) for x in a]
    if len(a) != 5:
        raise ValueError("need five classes")
    total = sum(a)
    if total % 3 or total == 0:
        raise ValueError(f"precondition violated: sum {total} is not a nonzero multiple of 3")
    every = tuple(range(5))

    def first_nonzero(*options, note):
        for opt in options:
            if sum(a[i] for i in opt) != 0:
                return tuple(sorted(opt)), note
        raise AssertionError(f"{note}: all options vanish")

    for i in (CENTER, OUTER):
        if a[i] % 3 == 0:
            if a[i]:
                return (i,), f"{NAMES[i]} = {a[i]} = 0 mod 3"
            return tuple(j for j in every if j != i), f"{NAMES[i]} = 0, take the other four"
    for i in (LENS1, LENS2, LENS3):
        if a[i] % 3 == 0:
            if a[i]:
                return (i,), f"{NAMES[i]} = {a[i]} = 0 mod 3"
            b, c = (i + 1) % 3, (i + 2) % 3
            ring = [b, CENTER, c, OUTER]
            sel = zero_block_select([a[j] for j in ring], 3)
            picked = tuple(sorted(ring[j] for j in sel.indices))
            return picked, f"{NAMES[i]} = 0, zero run of the remaining ring"
    x, y = next((p, q) for p, q in ((0, 1), (0, 2), (1, 2)) if a[p] % 3 == a[q] % 3)
    z = 3 - x - y
    S1 = a[CENTER] % 3
    S2 = (a[CENTER] + a[x]) % 3
    S3 = (a[CENTER] + a[x] + a[OUTER]) % 3
    tag = f"{NAMES[x]} = {NAMES[y]} mod 3, S = ({S1}, {S2}, {S3})"
    if S1 == S3:
        return first_nonzero((x, OUTER), (y, z, CENTER), note=f"{tag}: S1 = S3")
    if S2 == 0:
        return first_nonzero((CENTER, x), (y, z, OUTER), note=f"{tag}: S2 = 0")
    if S3 != 0:
        raise AssertionError(f"{tag}: no branch applies")
    if a[CENTER] + a[x] + a[OUTER] != 0:
        return (x, CENTER, OUTER), f"{tag}: S3 = 0 mod 3, nonzero"
    return first_nonzero((z, OUTER), (x, y, CENTER), note=f"{tag}: S3 = 0 integrally")


def mod3_core(emb: Embedding, L: Cycle, Zs: Sequence[Cycle], trace: list) -> Cycle:
    """A cycle A disjoint from L with lk(L, A) a nonzero multiple of 3."""
    k = kernel_for(emb)
    oriented = [oriented_positive(emb, L, z) for z in Zs]
    if any(q == 0 for _, q, _ in oriented):
        raise ValueError("precondition violated: some lk(L, Z_i) = 0")
    Zs = [z for z, _, _ in oriented]
    qs = [q for _, q, _ in oriented]
    res = [q % 3 for q in qs]
    if 0 in res:
        i = res.index(0)
        trace.append(f"q = {qs}: Z{i + 1} already 0 mod 3")
        return Zs[i]
    if 1 in res and 2 in res:
        i, j = res.index(1), res.index(2)
        fam = bridge_family(emb, L, Zs[i], Zs[j], 4, stage="mod 3 bridges: ")
        check_identity(fam, L)
        vals = fam.classes(L)
        sel = zero_block_select(vals, 3)
        trace.append(f"q = {qs}: residues 1 and 2, 4 bridges Z{i + 1}-Z{j + 1}, classes {vals}, run {list(sel.indices)}")
        return fam.fuse(sel.indices)
    cyc = figure_four_cycles(Zs)
    a = [k.linking_number(L, c) for c in cyc]
    if sum(a) != sum(qs):
        raise AssertionError("five-cycle bookkeeping fails")
    idx, note = mod3_casework(a)
    trace.append(f"q = {qs}: equal residues, classes {a}; {note}; take {[NAMES[i] for i in idx]}")
    A = fuse(*(cyc[i] for i in idx))
    if k.linking_number(L, A) != sum(a[i] for i in idx):
        raise AssertionError("fused cycle does not carry the selected class")
    return A


def mod3_two_component(emb: Embedding) -> LinkCertificate:
    """Two-component link with lk(A, L) a nonzero multiple of 3, on 35 vertices."""
    star = doubling_star(emb, 3, 4, "mod3")
    trace = list(star.case_trace)
    A = mod3_core(emb, star.L, star.components[1:], trace)
    return make_certificate(emb, "mod3", [star.L, A], trace)


def mod3_keys(emb: Embedding, n: int) -> LinkCertificate:
    """L, Z_1..Z_n with every lk(L, Z_i) a nonzero multiple of 3.

    Uses 7 alpha'(3n) vertices; partners are handled in groups of three.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    tid = theorem_id("mod3-keys", n=n)
    star = doubling_star(emb, 3 * n, 4, tid)
    trace = list(star.case_trace)
    L, Zs = star.L, star.components[1:]
    out = []
    for g in range(n):
        sub: list[str] = []
        out.append(mod3_core(emb, L, Zs[3 * g : 3 * g + 3], sub))
        trace.extend(f"group {g}: {x}" for x in sub)
    return make_certificate(emb, tid, [L] + out, trace, artifacts={"needed": 7 * alpha_prime(3 * n)})
