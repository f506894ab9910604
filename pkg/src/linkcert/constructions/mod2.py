"""Engines for linking numbers divisible by powers of two."""

from __future__ import annotations

from typing import Sequence

from ..selectors import max_block_decompose, select_zero_subsequence_mod2
from ..sequences import alpha_prime, gamma_prime, vertex_budget
from ..spatial import Embedding, fuse, kernel_for
from .certificate import BudgetError, LinkCertificate, make_certificate, theorem_id
from .lemma import bridge_family, check_identity, even_link_construct, iterated_doubling, oriented_positive
from .recursion import split_blocks, star_recursion
from .search import find_nonsplit_pair, find_three_component_base, find_triangle_mcycle

Cycle = tuple[int, ...]


def _verts(emb: Embedding, need: int, what: str) -> list[int]:
    if emb.n < need:
        raise ValueError(f"insufficient vertices: {what} needs {need}, embedding has {emb.n}")
    return list(range(need))


def johnson_base(m: int):
    """Base searcher: triangle (as L) and m-cycle (as partner) in a block of m + 3."""
    return lambda emb, block: find_triangle_mcycle(emb, m, block)


def _flapan_even(emb: Embedding, trace: list) -> tuple[Cycle, Cycle]:
    base = find_three_component_base(emb, _verts(emb, 10, "K_10 route"))
    L, Z, W = base.components
    trace.append(f"K_10 base: lk(L,Z) = {base.lk(0, 1)}, lk(L,W) = {base.lk(0, 2)}")
    cert = even_link_construct(emb, L, Z, W, 0)
    trace.extend(cert.case_trace)
    return L, cert.components[1]


def doubling_star(emb: Embedding, partners: int, c1: int, what: str) -> LinkCertificate:
    """Star of alpha'(partners) blocks of size c1 + 3, each hosting a triangle and a c1-cycle."""
    count = alpha_prime(partners)
    need = count * (c1 + 3)
    _verts(emb, need, what)
    blocks = split_blocks(emb.n, c1 + 3, count)
    return star_recursion(emb, blocks, partners, johnson_base(c1))


def mod2_whitehead(emb: Embedding, r: int) -> LinkCertificate:
    """Two-component link with lk(A, L) a nonzero multiple of 2^r."""
    if r < 0:
        raise ValueError("r must be >= 0")
    tid = theorem_id("mod2-whitehead", r=r)
    trace: list[str] = []
    if r == 0:
        pair = find_nonsplit_pair(emb, _verts(emb, 6, tid), mode="nonzero")
        return make_certificate(emb, tid, pair.components, pair.case_trace)
    if r == 1:
        return make_certificate(emb, tid, list(_flapan_even(emb, trace)), trace)
    c1 = vertex_budget(r)[0]
    star = doubling_star(emb, 2**r, c1, tid)
    trace.extend(star.case_trace)
    trace.append(f"blocks K_{c1 + 3}, {len(star.components) - 1} partners of >= {c1} vertices")
    cert = iterated_doubling(emb, star.L, star.components[1:], r, trace)
    return make_certificate(emb, tid, cert.components, cert.case_trace)


def _doubled_groups(emb, star: LinkCertificate, r: int, trace: list) -> list[Cycle]:
    L, Zs = star.L, star.components[1:]
    out = []
    for g in range(0, len(Zs), 2**r):
        sub = iterated_doubling(emb, L, Zs[g : g + 2**r], r, [])
        trace.extend(f"group {g // 2**r}: {x}" for x in sub.case_trace)
        out.append(sub.components[1])
    return out


def mod2_keys(emb: Embedding, n: int, r: int) -> LinkCertificate:
    """L, Z_1..Z_n with every lk(L, Z_i) a nonzero multiple of 2^r."""
    if n < 1 or r < 1:
        raise ValueError("need n >= 1 and r >= 1")
    tid = theorem_id("mod2-keys", n=n, r=r)
    trace: list[str] = []
    if n == 1 and r == 1:
        return make_certificate(emb, tid, list(_flapan_even(emb, trace)), trace)
    c1 = vertex_budget(r)[0]
    star = doubling_star(emb, n * 2**r, c1, tid)
    trace.extend(star.case_trace)
    return make_certificate(emb, tid, [star.L] + _doubled_groups(emb, star, r, trace), trace)


# ---------------------------------------------------------------------------
# three components: L, W, A


def _repeat_run(values: Sequence[int], m: int) -> tuple[int, int]:
    """First (i, j), i < j, with equal prefix sums mod m (S_0 = 0 included).

    The run values[i:j] then sums to 0 mod m.  Needs len(values) >= m.
    """
    seen = {0: 0}
    acc = 0
    for j, v in enumerate(values, start=1):
        acc = (acc + v) % m
        if acc in seen:
            return seen[acc], j
        seen[acc] = j
    raise ValueError(f"no zero run mod {m} in {list(values)}")


def three_component_core(
    emb: Embedding, L: Cycle, W: Cycle, Z1: Cycle, Z2: Cycle, r: int, trace: list | None = None
) -> LinkCertificate:
    """From lk(L,W), lk(L,Z_i) = 0 mod 2^r (nonzero), a cycle A with lk(L,A) = 0 mod 2^r,
    lk(L,A) != 0 and lk(W,A) even."""
    k = kernel_for(emb)
    q = 2**r
    trace = [] if trace is None else trace
    tid = theorem_id("mod2-rings", r=r)
    for i, Z in enumerate((Z1, Z2), start=1):
        if k.linking_number(W, Z) % 2 == 0:
            trace.append(f"lk(Z{i}, W) even, take A = Z{i}")
            return make_certificate(emb, tid, [L, W, Z], trace)
    Z1, q1, _ = oriented_positive(emb, L, Z1)
    Z2, q2, _ = oriented_positive(emb, L, Z2)
    N = (q + 1) ** 2
    fam = bridge_family(emb, L, Z1, Z2, N, stage="three-component bridges: ")
    check_identity(fam, W)
    aL, aW = fam.classes(L), fam.classes(W)
    # groups of q cycles separated by one left-out cycle; glue a zero run in each
    runs = []
    for g in range(q + 1):
        base = g * (q + 1)
        i, j = _repeat_run(aL[base : base + q], q)
        runs.append(list(range(base + i, base + j)))
    pieces = []
    for g in range(q + 1):
        start = runs[g][-1] + 1
        stop = runs[(g + 1) % (q + 1)][0]
        between = [x % N for x in range(start, stop if stop > start else stop + N)]
        pieces += [runs[g], between]
    cls = lambda idx, a: sum(a[x] for x in idx)
    bvals = [cls(pieces[2 * g + 1], aL) for g in range(q + 1)]
    i, j = _repeat_run(bvals, q)
    P = len(pieces)
    A2 = [x for p in range(2 * i + 1, 2 * j) for x in pieces[p]]
    A1 = pieces[2 * i]
    A3 = [x for p in range(2 * j, 2 * i + P) for x in pieces[p % P]]
    parts = [A1, A2, A3]
    lv = [cls(p, aL) for p in parts]
    wv = [cls(p, aW) for p in parts]
    if any(v % q for v in lv) or sum(lv) != q1 + q2:
        raise AssertionError("A'' classes are not all 0 mod 2^r")
    trace.append(f"{N} bridges, L-classes of A'' {lv}, W-classes {wv}")
    sel = select_zero_subsequence_mod2(wv)
    A = fuse(*(fam.cycles[x] for s in sel.indices for x in parts[s]))
    A_comp = fuse(*(fam.cycles[x] for s in sel.rest for x in parts[s]))
    if k.linking_number(L, A) == 0:
        trace.append(f"A'' run {list(sel.indices)} has lk(L, A) = 0, take complement")
        A = A_comp
    else:
        trace.append(f"A'' run {list(sel.indices)}")
    return make_certificate(emb, tid, [L, W, A], trace, artifacts={"family": fam, "parts": parts})


def three_component_mod(emb: Embedding, r: int) -> LinkCertificate:
    """L, W, A with lk(L,W), lk(L,A) nonzero multiples of 2^r and lk(W,A) even."""
    if r < 1:
        raise ValueError("r must be >= 1")
    tid = theorem_id("mod2-rings", r=r)
    c1 = vertex_budget(r, (2**r + 1) ** 2)[0]
    star = doubling_star(emb, 3 * 2**r, c1, tid)
    trace = list(star.case_trace)
    trace.append(f"blocks K_{c1 + 3} so partners keep >= {(2**r + 1) ** 2} vertices")
    cyc = _doubled_groups(emb, star, r, trace)
    w = min(range(3), key=lambda i: len(cyc[i]))
    W = cyc[w]
    Z1, Z2 = (cyc[i] for i in range(3) if i != w)
    return three_component_core(emb, star.L, W, Z1, Z2, r, trace)


# ---------------------------------------------------------------------------
# all pairwise linking numbers even


def _pick(emb, a, b, ref, mod=2):
    k = kernel_for(emb)
    ok = [c for c in (a, b) if k.linking_number(ref, c) % mod == 0]
    if not ok:
        return None
    return b if len(ok) == 2 and len(b) > len(a) else ok[0]


def _level(emb, L, Vs, a, b, lev, trace, tag):
    """Merge a pair at level `lev`: result is even against L and V_1..V_{lev-1}."""
    k = kernel_for(emb)
    ref = L if lev == 1 else Vs[lev - 2]
    kept = _pick(emb, a, b, ref)
    if kept is not None:
        trace.append(f"{tag}: member already even, advances")
        return kept
    if lev == 1:
        cert = even_link_construct(emb, L, a, b, 0)
        trace.append(f"{tag}: " + "; ".join(cert.case_trace))
        return cert.components[1]
    a, _, _ = oriented_positive(emb, L, a)
    b, _, _ = oriented_positive(emb, L, b)
    N = 3 * 2 ** (lev - 1)
    fam = bridge_family(emb, L, a, b, N, stage=f"{tag}: ")
    pieces = [[i] for i in range(N)]
    for ref_k in [L] + list(Vs[: lev - 2]):
        check_identity(fam, ref_k)
        cl = fam.classes(ref_k)
        vals = [sum(cl[i] for i in p) for p in pieces]
        blocks = max_block_decompose(vals, 2)
        pieces = [[i for b in blk for i in pieces[b]] for blk in blocks]
        if len(pieces) < 3:
            raise AssertionError(f"{tag}: only {len(pieces)} cycles left after decomposition")
    check_identity(fam, ref)
    cl = fam.classes(ref)
    sel = select_zero_subsequence_mod2([sum(cl[i] for i in p) for p in pieces])
    for side in (sel.indices, sel.rest):
        Wl = fuse(*(fam.cycles[i] for s in side for i in pieces[s]))
        if k.linking_number(L, Wl) != 0:
            trace.append(f"{tag}: {N} bridges, {len(pieces)} pieces, run {list(sel.indices)}")
            return Wl
    raise AssertionError(f"{tag}: both halves unlinked from L")


def all_even_core(emb: Embedding, L: Cycle, Zs: Sequence[Cycle], n: int, trace: list) -> list[Cycle]:
    """Reduce 2 + 4 + ... + 2^n partners of L to V_1..V_n."""
    if len(Zs) != 2 ** (n + 1) - 2:
        raise ValueError(f"need {2 ** (n + 1) - 2} partners, got {len(Zs)}")
    Vs: list[Cycle] = []
    pos = 0
    for j in range(1, n + 1):
        cur = list(Zs[pos : pos + 2**j])
        pos += 2**j
        for lev in range(1, j + 1):
            cur = [
                _level(emb, L, Vs, cur[p], cur[p + 1], lev, trace, f"V{j} level {lev} pair {p // 2}")
                for p in range(0, len(cur), 2)
            ]
        Vs.append(cur[0])
    return Vs


def all_even(emb: Embedding, n: int, block: int | None = None) -> LinkCertificate:
    """L, V_1..V_n with all pairwise linking numbers even and each lk(L, V_j) != 0."""
    if n < 1:
        raise ValueError("n must be >= 1")
    tid = theorem_id("all-even", n=n)
    trace: list[str] = []
    if n == 1:
        return make_certificate(emb, tid, list(_flapan_even(emb, trace)), trace)
    block = gamma_prime(n) + 3 if block is None else block
    if block < 6:
        raise ValueError("block size must be >= 6")
    star = doubling_star(emb, 2 ** (n + 1) - 2, block - 3, tid)
    trace.extend(star.case_trace)
    try:
        Vs = all_even_core(emb, star.L, star.components[1:], n, trace)
    except BudgetError as e:
        raise BudgetError(f"block size {block}: {e}") from None
    return make_certificate(emb, tid, [star.L] + Vs, trace)
