"""Many-component links by recursive doubling of key rings.

A key ring is a cycle L together with partner cycles, each linked with L
(nonzero, or odd in the parity variant).  Two rings built on disjoint
vertex blocks are merged by a connecting cycle V through an edge of each
ring's L; the counts of partners linked with V decide which fusion of
L, V and L' keeps enough partners.  Odd targets additionally route V
through one triangle of a third, small linked pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from ..sequences import alpha, alpha_prime
from ..spatial import Embedding, fuse, kernel_for
from .certificate import LinkCertificate, make_certificate, theorem_id
from .search import find_nonsplit_pair, find_three_component_base

Cycle = tuple[int, ...]


@dataclass
class KeyRing:
    L: Cycle
    partners: list[Cycle]
    trace: list[str] = field(default_factory=list)


def linked(mode: str) -> Callable[[int], bool]:
    if mode == "nonzero":
        return lambda x: x != 0
    if mode == "odd":
        return lambda x: x % 2 == 1
    raise ValueError(f"unknown mode {mode!r}")


# Candidate cycles for the new L, as formal sums of the cycles they fuse.
COMBOS = {
    "L": ("L",),
    "L'": ("L'",),
    "V": ("V",),
    "L+V+L'": ("L", "V", "L'"),
    "V+L": ("V", "L"),
    "V+L'": ("V", "L'"),
    "V+L''": ("V", "L''"),
    "L+V+L'+L''": ("L", "V", "L'", "L''"),
}


@dataclass
class MergeChoice:
    combo: str
    partners: list[int]
    note: str


def _hits(pred, table, combo, idx):
    return [i for i in idx if pred(sum(table[c][i] for c in COMBOS[combo]))]


def choose_merge(n: int, pred, table: dict, side: Sequence[int]) -> MergeChoice:
    """Decide which fused cycle becomes the new L, from linking numbers alone.

    ``table[c][i]`` is lk(c, candidate i) for c in L, L', V (and L'' when a
    third pair is present); ``side[i]`` is 0 for partners of L, 1 for
    partners of L' and 2 for T.  Linking numbers of fused cycles are sums
    of rows, so the choice and its partners are fixed before any fusion.
    """
    idx = range(len(side))
    zs = [i for i in idx if side[i] != 2]
    T = [i for i in idx if side[i] == 2]

    def take(combo, note, pool=idx):
        got = _hits(pred, table, combo, pool)
        if len(got) < n:
            raise AssertionError(f"{note}: {combo} links only {len(got)} < {n} partners")
        return MergeChoice(combo, got[:n], note)

    for combo in ("L", "L'"):
        if len(_hits(pred, table, combo, idx)) >= n:
            return take(combo, f"cross-linking, keep {combo}")
    D = [i for i in zs if pred(table["V"][i])]
    if len(D) >= n:
        return take("V", f"|D| = {len(D)}, take V", zs)
    if len(D) < n - 1:
        return take("L+V+L'", f"|D| = {len(D)}, take L+V+L'", zs)
    if not T:
        right = sum(1 for i in D if side[i] == 1)
        if right > len(D) - right:
            return take("V+L", "|D| = n-1, primed majority, take V+L", zs)
        return take("V+L'", "|D| = n-1, unprimed majority, take V+L'", zs)
    if pred(table["V"][T[0]]):
        return take("V", "|D| = n-1 and T links V, take V")
    C = [i for i in zs if i not in D]
    r = sum(1 for i in C if pred(table["L''"][i]))
    sD = [i for i in D if pred(table["L''"][i])]
    own = lambda i: table["L" if side[i] == 0 else "L'"][i]
    t = sum(1 for i in sD if not pred(own(i) + table["V"][i] + table["L''"][i]))
    s = len(sD)
    counts = f"r={r} s={s} t={t}: V+L'' >= {n + r - s + t}, L+V+L'+L'' >= {n - r + s - t}"
    combo = "V+L''" if n + r - s + t >= n else "L+V+L'+L''"
    return take(combo, f"|D| = n-1, {counts}, take {combo}")


def _merge(emb, pred, n, left: KeyRing, right: KeyRing, extra, tag) -> KeyRing:
    L, L2 = left.L, right.L
    if extra is None:
        l1, l2 = L[0], L[1]
        l2p, l1p = L2[0], L2[1]
        # V runs against L on l1-l2 and against L' on l2'-l1'
        V = (l2, l1, l1p, l2p)
        cycles = {"L": L, "L'": L2, "V": V}
    else:
        L3 = extra[0]
        l2, l1 = L[0], L[1]
        l1p, l2p = L2[0], L2[1]
        y, x = L3[0], L3[1]
        V = (l1, l2, l2p, l1p, x, y)
        cycles = {"L": L, "L'": L2, "V": V, "L''": L3}
    cands = left.partners + right.partners + ([extra[1]] if extra else [])
    side = [0] * len(left.partners) + [1] * len(right.partners) + ([2] if extra else [])
    k = kernel_for(emb)
    table = {c: [k.linking_number(C, Z) for Z in cands] for c, C in cycles.items()}
    choice = choose_merge(n, pred, table, side)
    newL = fuse(*(cycles[c] for c in COMBOS[choice.combo]))
    partners = [cands[i] for i in choice.partners]
    for i in choice.partners:
        expect = sum(table[c][i] for c in COMBOS[choice.combo])
        if k.linking_number(newL, cands[i]) != expect:
            raise AssertionError(f"{tag}: linking number of fused cycle is not additive")
    return KeyRing(newL, partners, left.trace + right.trace + [f"{tag}: {choice.note}"])


def even_step(emb: Embedding, pred, n: int, left: KeyRing, right: KeyRing, tag: str = "") -> KeyRing:
    """Merge two rings of n-1 partners each into one ring of n partners."""
    return _merge(emb, pred, n, left, right, None, tag or f"even step n={n}")


def odd_step(
    emb: Embedding, pred, n: int, left: KeyRing, right: KeyRing, extra: tuple[Cycle, Cycle], tag: str = ""
) -> KeyRing:
    """Merge two rings of n-1 partners plus a linked pair (L'', T) into n partners."""
    return _merge(emb, pred, n, left, right, tuple(extra), tag or f"odd step n={n}")


def _ring_from_cert(cert: LinkCertificate, tag: str) -> KeyRing:
    return KeyRing(cert.components[0], list(cert.components[1:]), [f"{tag}: {cert.theorem}"])


def _ring_rec(emb, verts, n, mode, depth) -> KeyRing:
    pred = linked(mode)
    tag = f"{'  ' * depth}n={n} on {verts[0]}..{verts[-1]}"
    if n == 1:
        return _ring_from_cert(find_nonsplit_pair(emb, verts[:6], mode=mode), tag)
    if n == 2:
        return _ring_from_cert(find_three_component_base(emb, verts[:10], mode=mode), tag)
    a = alpha(n - 1)
    left = _ring_rec(emb, verts[:a], n - 1, mode, depth + 1)
    right = _ring_rec(emb, verts[a : 2 * a], n - 1, mode, depth + 1)
    if n % 2 == 0:
        return even_step(emb, pred, n, left, right, tag)
    pair = find_nonsplit_pair(emb, verts[2 * a : 2 * a + 6], mode=mode)
    return odd_step(emb, pred, n, left, right, tuple(pair.components), tag)


def ring_of_keys(
    emb: Embedding, n: int, mode: str = "nonzero", vertices: Sequence[int] | None = None
) -> LinkCertificate:
    """n + 1 component link L, Z_1..Z_n with every lk(L, Z_i) nonzero (or odd).

    Uses the lowest alpha(n) vertices of the pool.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    linked(mode)
    verts = sorted(range(emb.n) if vertices is None else vertices)
    if len(verts) < alpha(n):
        raise ValueError(f"insufficient vertices: {len(verts)} < alpha({n}) = {alpha(n)}")
    ring = _ring_rec(emb, verts[: alpha(n)], n, mode, 0)
    return make_certificate(emb, theorem_id("ring-of-keys", n=n, mode=mode), [ring.L] + ring.partners, ring.trace)


BaseSearcher = Callable[[Embedding, Sequence[int]], LinkCertificate]


def _star_rec(emb, blocks, n, base, mode, depth) -> KeyRing:
    pred = linked(mode)
    tag = f"{'  ' * depth}n={n} on blocks {blocks[0][0]}..{blocks[-1][-1]}"
    if n == 1:
        return _ring_from_cert(base(emb, blocks[0]), tag)
    a = alpha_prime(n - 1)
    left = _star_rec(emb, blocks[:a], n - 1, base, mode, depth + 1)
    right = _star_rec(emb, blocks[a : 2 * a], n - 1, base, mode, depth + 1)
    if n % 2 == 0:
        return even_step(emb, pred, n, left, right, tag)
    pair = base(emb, blocks[2 * a])
    return odd_step(emb, pred, n, left, right, tuple(pair.components[:2]), tag)


def star_recursion(
    emb: Embedding,
    blocks: Sequence[Sequence[int]],
    n: int,
    base_searcher: BaseSearcher,
    mode: str = "nonzero",
) -> LinkCertificate:
    """n + 1 component link over disjoint vertex blocks, each hosting a linked pair.

    ``base_searcher(emb, block)`` must return a certificate whose first two
    components are linked; the first becomes a local L, the second a
    partner.  Needs alpha'(n) blocks; extra blocks are ignored.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    linked(mode)
    need = alpha_prime(n)
    if len(blocks) < need:
        raise ValueError(f"insufficient vertices: {len(blocks)} blocks < alpha'({n}) = {need}")
    used = [sorted(b) for b in blocks[:need]]
    flat = [v for b in used for v in b]
    if len(flat) != len(set(flat)):
        raise ValueError("blocks are not disjoint")
    ring = _star_rec(emb, used, n, base_searcher, mode, 0)
    return make_certificate(
        emb, theorem_id("star", n=n, mode=mode), [ring.L] + ring.partners, ring.trace,
        artifacts={"blocks": used},
    )


def split_blocks(n_vertices: int, size: int, count: int, vertices: Sequence[int] | None = None) -> list[list[int]]:
    """`count` consecutive blocks of `size` vertices from the lowest indices."""
    verts = sorted(range(n_vertices) if vertices is None else vertices)
    if len(verts) < size * count:
        raise ValueError(f"insufficient vertices: {len(verts)} < {count} blocks of {size}")
    return [verts[i * size : (i + 1) * size] for i in range(count)]
