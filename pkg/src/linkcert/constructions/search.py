"""Exhaustive searches for the base links every construction starts from.

All searches work on a small vertex pool.  The edge-over-edge crossing
matrix of the pool is computed once, after which the linking number of two
disjoint cycles is the bilinear form x_A M x_B of their signed edge
incidence vectors, so whole blocks of candidate pairs are scored with one
matrix product.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, islice
from typing import Callable, Sequence

import numpy as np

from ..cycles import cycles_on
from ..spatial import Embedding, kernel_for
from .certificate import LinkCertificate, SearchExhausted, make_certificate, theorem_id

Cycle = tuple[int, ...]


@dataclass(frozen=True)
class SearchBudget:
    max_size: int | None = None  # largest component considered
    max_tuples: int | None = None  # candidate tuples examined
    time_cap: float | None = None  # seconds

    def __post_init__(self):
        for name in ("max_size", "max_tuples", "time_cap"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ValueError(f"{name} must be positive")


class _Meter:
    def __init__(self, budget: SearchBudget | None, what: str):
        self.budget = budget or SearchBudget()
        self.what = what
        self.count = 0
        self.t0 = time.monotonic()

    def spend(self, k: int) -> None:
        self.count += k
        b = self.budget
        if b.max_tuples is not None and self.count > b.max_tuples:
            raise SearchExhausted(f"budget exhausted: {self.what} after {self.count} tuples")
        if b.time_cap is not None and time.monotonic() - self.t0 > b.time_cap:
            raise SearchExhausted(f"budget exhausted: {self.what} after {b.time_cap} s")


class EdgeSpace:
    """Signed edge incidences and the crossing matrix of a vertex pool."""

    def __init__(self, emb: Embedding, pool: Sequence[int]):
        self.pool = sorted(pool)
        edges, _, self.M = kernel_for(emb).edge_matrix(self.pool)
        size = max(self.pool) + 1
        self.eid = np.full((size, size), -1, dtype=np.int64)
        self.sgn = np.zeros((size, size), dtype=np.int64)
        for k, (u, v) in enumerate(edges):
            self.eid[u, v] = self.eid[v, u] = k
            self.sgn[u, v], self.sgn[v, u] = 1, -1
        self.n_edges = len(edges)

    def vectors(self, cycles) -> np.ndarray:
        C = np.asarray(cycles, dtype=np.int64)
        if C.ndim != 2 or not len(C):
            return np.zeros((0, self.n_edges), dtype=np.int64)
        nxt = np.roll(C, -1, axis=1)
        X = np.zeros((len(C), self.n_edges), dtype=np.int64)
        rows = np.repeat(np.arange(len(C)), C.shape[1])
        X[rows, self.eid[C, nxt].ravel()] = self.sgn[C, nxt].ravel()
        return X

    def lk(self, XA: np.ndarray, XB: np.ndarray) -> np.ndarray:
        return XA @ self.M @ XB.T


def _pool(emb: Embedding, vertices, need: int | None = None) -> list[int]:
    pool = sorted(range(emb.n) if vertices is None else set(vertices))
    if need is not None:
        pool = pool[:need]
    return pool


def predicate(mode: str) -> Callable[[np.ndarray], np.ndarray]:
    if mode == "odd":
        return lambda x: x % 2 == 1
    if mode == "nonzero":
        return lambda x: x != 0
    if mode == "mod4":
        return lambda x: x % 4 == 2
    raise ValueError(f"unknown mode {mode!r}")


def _pair_scan(emb, pool, pred, max_size, meter):
    """First disjoint cycle pair satisfying pred.

    Order: total size, then size of the first cycle, then vertex sets
    (lexicographic), then cycles on each set.
    """
    space = EdgeSpace(emb, pool)
    cyc: dict = {}

    def block(S):
        if S not in cyc:
            cs = list(cycles_on(S))
            cyc[S] = (cs, space.vectors(cs))
        return cyc[S]

    p = len(pool)
    for total in range(6, min(p, 2 * max_size) + 1):
        for a in range(3, total // 2 + 1):
            b = total - a
            if b > max_size:
                continue
            for S in combinations(pool, a):
                cs, XS = block(S)
                XSM = XS @ space.M
                rest = [v for v in pool if v not in S]
                for T in combinations(rest, b):
                    if a == b and T < S:
                        continue
                    ct, XT = block(T)
                    vals = XSM @ XT.T
                    hit = np.argwhere(pred(vals))
                    if len(hit):
                        i, j = hit[0]
                        meter.count += int(i) * vals.shape[1] + int(j) + 1
                        return cs[i], ct[j], int(vals[i, j]), meter.count
                    meter.spend(vals.size)
    raise SearchExhausted(f"budget exhausted: {meter.what} scanned {meter.count} pairs without a hit")


def find_nonsplit_pair(
    emb: Embedding,
    vertices: Sequence[int] | None = None,
    mode: str = "odd",
    budget: SearchBudget | None = None,
) -> LinkCertificate:
    """Two disjoint cycles with odd (or nonzero) linking number.

    Triangle pairs come first; on six vertices they always contain a hit.
    """
    pool = _pool(emb, vertices)
    if len(pool) < 6:
        raise ValueError(f"p >= 6 required, got {len(pool)} vertices")
    max_size = (budget.max_size if budget and budget.max_size else len(pool) - 3)
    A, B, val, seen = _pair_scan(emb, pool, predicate(mode), max_size, _Meter(budget, "nonsplit pair"))
    return make_certificate(
        emb, theorem_id("nonsplit", mode=mode), [A, B], [f"pair scan hit after {seen} pairs"]
    )


def search_mod4(
    emb: Embedding, vertices: Sequence[int] | None = None, budget: SearchBudget | None = None
) -> LinkCertificate:
    """Scan all disjoint cycle pairs on ten vertices for lk = 2 (mod 4)."""
    pool = _pool(emb, vertices, 10)
    if len(pool) < 10:
        raise ValueError(f"10 vertices required, got {len(pool)}")
    max_size = budget.max_size if budget and budget.max_size else 7
    try:
        A, B, val, seen = _pair_scan(emb, pool, predicate("mod4"), max_size, _Meter(budget, "mod 4 search"))
    except SearchExhausted as e:
        raise SearchExhausted(f"exhausted without hit: {e}") from None
    return make_certificate(emb, "mod4", [A, B], [f"lk = {val} after {seen} pairs"])


def find_triangle_mcycle(
    emb: Embedding,
    m: int,
    vertices: Sequence[int] | None = None,
    budget: SearchBudget | None = None,
    chunk: int = 2048,
) -> LinkCertificate:
    """A triangle and a disjoint m-cycle on m + 3 vertices with nonzero lk.

    The m-cycles on the complement of each triangle are streamed in chunks;
    triangles take turns chunk by chunk so a hit behind any one triangle is
    reached without first exhausting the others.
    """
    if m < 3:
        raise ValueError("m >= 3 required (cycles need at least 3 vertices)")
    pool = _pool(emb, vertices, m + 3)
    if len(pool) < m + 3:
        raise ValueError(f"need {m + 3} vertices, got {len(pool)}")
    space = EdgeSpace(emb, pool)
    meter = _Meter(budget, f"triangle/{m}-cycle search")
    live = []
    for tri in combinations(pool, 3):
        rest = [v for v in pool if v not in tri]
        w = space.M.T @ space.vectors([tri])[0]
        live.append((tri, w, cycles_on(rest)))
    rnd = 0
    while live:
        still = []
        for tri, w, stream in live:
            cs = list(islice(stream, chunk))
            if not cs:
                continue
            vals = space.vectors(cs) @ w
            hit = np.flatnonzero(vals)
            if len(hit):
                meter.count += int(hit[0]) + 1
                return make_certificate(
                    emb,
                    theorem_id("triangle-mcycle", m=m),
                    [tri, cs[hit[0]]],
                    [f"hit in round {rnd} after {meter.count} pairs"],
                )
            meter.spend(len(cs))
            still.append((tri, w, stream))
        live = still
        rnd += 1
    raise SearchExhausted(
        f"budget exhausted: no triangle/{m}-cycle link on {pool} ({meter.count} pairs); "
        "this contradicts the existence theorem and is a falsification candidate"
    )


def find_three_component_base(
    emb: Embedding,
    vertices: Sequence[int] | None = None,
    mode: str = "odd",
    budget: SearchBudget | None = None,
) -> LinkCertificate:
    """Three disjoint cycles L, Z, W on ten vertices with lk(L,Z), lk(L,W) odd.

    Triples are scanned by total size (nine, then ten vertices); within a
    triple each member is tried as L in turn.
    """
    pool = _pool(emb, vertices, 10)
    if len(pool) < 10:
        raise ValueError(f"10 vertices required, got {len(pool)}")
    pred = predicate(mode)
    space = EdgeSpace(emb, pool)
    tris = [c for S in combinations(pool, 3) for c in cycles_on(S)]
    quads = [c for S in combinations(pool, 4) for c in cycles_on(S)]
    cycles = tris + quads
    X = space.vectors(tris)
    X = np.vstack([X, space.vectors(quads)])
    G = pred(space.lk(X, X))
    bit = {v: 1 << k for k, v in enumerate(pool)}
    masks = [sum(bit[v] for v in c) for c in cycles]
    nt = len(tris)
    meter = _Meter(budget, "three-component search")

    def triples():
        for i in range(nt):
            for j in range(i + 1, nt):
                if masks[i] & masks[j]:
                    continue
                mij = masks[i] | masks[j]
                for k in range(j + 1, nt):
                    if not mij & masks[k]:
                        yield i, j, k
        for i in range(nt):
            for j in range(i + 1, nt):
                if masks[i] & masks[j]:
                    continue
                mij = masks[i] | masks[j]
                for k in range(nt, len(cycles)):
                    if not mij & masks[k]:
                        yield i, j, k

    for tri in triples():
        meter.spend(1)
        for pos in range(3):
            L = tri[pos]
            a, b = (x for x in tri if x != L)
            if G[L, a] and G[L, b]:
                comps = [cycles[L], cycles[a], cycles[b]]
                return make_certificate(
                    emb,
                    theorem_id("three-component", mode=mode),
                    comps,
                    [f"triple {meter.count} with member {pos} as L"],
                )
    raise SearchExhausted(
        f"budget exhausted: no three-component link on {pool} after {meter.count} triples; "
        "this contradicts the cited existence theorem and is a falsification candidate"
    )
