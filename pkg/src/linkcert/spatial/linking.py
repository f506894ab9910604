"""Exact linking numbers of disjoint cycles in a straight-line embedding."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .geometry import (
    DegenerateDirection,
    Embedding,
    ProjectionDirection,
    _segment_crossing,
    check_direction,
    det3,
    direction_candidates,
    sub,
)

Cycle = tuple[int, ...]


class LinkingError(ValueError):
    pass


MAX_DIRECTIONS = 1000


def cycle_edges(cycle: Sequence[int]):
    return [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def check_cycle(cycle: Sequence[int], n: int | None = None) -> None:
    if len(cycle) < 3:
        raise LinkingError(f"cycle {tuple(cycle)} has fewer than 3 vertices")
    if len(set(cycle)) != len(cycle):
        raise LinkingError(f"cycle {tuple(cycle)} repeats a vertex")
    if n is not None and not all(0 <= v < n for v in cycle):
        raise LinkingError(f"cycle {tuple(cycle)} uses a vertex outside 0..{n - 1}")


def _check_pair(emb: Embedding, A, B) -> None:
    check_cycle(A, emb.n)
    check_cycle(B, emb.n)
    if set(A) & set(B):
        raise LinkingError("not disjoint")


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class Crossing:
    edge_a: tuple[int, int]
    edge_b: tuple[int, int]
    sign: int
    over: str  # "A" or "B"
    s: Fraction  # parameter along edge_a
    t: Fraction  # parameter along edge_b


def _pair_crossing(P0, P1, Q0, Q1, d):
    """(crossing sign, P is over) for the projected crossing, or None."""
    hit = _segment_crossing(P0, P1, Q0, Q1, d)
    if hit is None:
        return None
    u, v = sub(P1, P0), sub(Q1, Q0)
    h = det3(u, v, sub(P0, Q0))
    if h == 0:
        raise DegenerateDirection("crossing strands at equal height")
    orient = _sign(det3(u, v, d))
    p_over = _sign(h) == orient
    # positive crossing: (over tangent, under tangent, up) is right-handed;
    # this matches the sign of the Gauss integral
    sign = orient if p_over else -orient
    return sign, p_over, hit


def crossing_diagram(emb: Embedding, A: Cycle, B: Cycle, direction: ProjectionDirection):
    """All projected crossings between edges of A and edges of B."""
    _check_pair(emb, A, B)
    check_direction(emb, direction, set(A) | set(B), True, cycle_edges(A) + cycle_edges(B))
    d = direction.vector
    C = emb.coords
    out = []
    for ea in cycle_edges(A):
        for eb in cycle_edges(B):
            res = _pair_crossing(C[ea[0]], C[ea[1]], C[eb[0]], C[eb[1]], d)
            if res is None:
                continue
            sign, a_over, (s, t) = res
            out.append(Crossing(ea, eb, sign, "A" if a_over else "B", s, t))
    return out


class LinkingKernel:
    """Per-embedding cache of edge-over-edge crossing contributions.

    ``over(e, f)`` is the signed contribution of oriented edge e passing
    over oriented edge f in the current projection direction.  Only the
    four vertex/line incidences of each queried pair are checked, which is
    all a pairwise crossing sum depends on; a degeneracy moves the kernel to
    the next candidate direction and empties the cache.
    """

    def __init__(self, emb: Embedding, seed: int = 0):
        self.emb = emb
        self._candidates = direction_candidates(seed)
        self._cache: dict = {}
        self.generation = 0
        self._advance()

    def _advance(self):
        if self.generation >= MAX_DIRECTIONS:
            raise LinkingError(f"no generic direction among {MAX_DIRECTIONS} candidates; points not in general position")
        self.direction = next(self._candidates)
        self._d = self.direction.vector
        self._cache.clear()
        self.generation += 1

    def _over_canonical(self, e, f) -> int:
        key = (e, f)
        val = self._cache.get(key)
        if val is None:
            C = self.emb.coords
            res = _pair_crossing(C[e[0]], C[e[1]], C[f[0]], C[f[1]], self._d)
            val = 0 if res is None or not res[1] else res[0]
            self._cache[key] = val
        return val

    def over(self, a: int, b: int, c: int, d: int) -> int:
        s = 1
        if a > b:
            a, b, s = b, a, -s
        if c > d:
            c, d, s = d, c, -s
        return s * self._over_canonical((a, b), (c, d))

    def linking_number(self, A: Cycle, B: Cycle) -> int:
        if not set(A).isdisjoint(B):
            raise LinkingError("not disjoint")
        while True:
            try:
                return sum(
                    self.over(a0, a1, b0, b1)
                    for a0, a1 in cycle_edges(A)
                    for b0, b1 in cycle_edges(B)
                )
            except DegenerateDirection:
                self._advance()

    def edge_matrix(self, vertices: Sequence[int]):
        """Over-contribution matrix on the edges (i < j) of a vertex pool."""
        vs = sorted(vertices)
        edges = list(combinations(vs, 2))
        index = {e: k for k, e in enumerate(edges)}
        while True:
            M = np.zeros((len(edges), len(edges)), dtype=np.int64)
            try:
                for p, e in enumerate(edges):
                    for q, f in enumerate(edges):
                        if e[0] in f or e[1] in f:
                            continue
                        M[p, q] = self._over_canonical(e, f)
            except DegenerateDirection:
                self._advance()
                continue
            return edges, index, M


def kernel_for(emb: Embedding) -> LinkingKernel:
    k = emb._memo.get("kernel")
    if k is None:
        k = emb._memo["kernel"] = LinkingKernel(emb)
    return k


def linking_number(
    emb: Embedding, A: Cycle, B: Cycle, direction: ProjectionDirection | None = None
) -> int:
    """Linking number of two vertex-disjoint oriented cycles.

    With an explicit direction the crossing diagram is built and the signs of
    crossings where A passes over B are summed.  Otherwise a cached kernel
    for the embedding is used.
    """
    _check_pair(emb, A, B)
    if direction is not None:
        return sum(c.sign for c in crossing_diagram(emb, A, B, direction) if c.over == "A")
    return kernel_for(emb).linking_number(tuple(A), tuple(B))


def incidence_vector(cycle: Sequence[int], index: dict) -> np.ndarray:
    x = np.zeros(len(index), dtype=np.int64)
    for u, v in cycle_edges(cycle):
        if u < v:
            x[index[(u, v)]] += 1
        else:
            x[index[(v, u)]] -= 1
    return x


def _segment_solid_angle(p1, p2, p3, p4) -> float:
    r13, r14 = np.subtract(p3, p1), np.subtract(p4, p1)
    r23, r24 = np.subtract(p3, p2), np.subtract(p4, p2)
    faces = [np.cross(r13, r14), np.cross(r14, r24), np.cross(r24, r23), np.cross(r23, r13)]
    norms = [np.linalg.norm(f) for f in faces]
    if min(norms) == 0.0:
        return 0.0
    n = [f / m for f, m in zip(faces, norms)]
    omega = sum(
        math.asin(max(-1.0, min(1.0, float(np.dot(n[i], n[(i + 1) % 4]))))) for i in range(4)
    )
    r34, r12 = np.subtract(p4, p3), np.subtract(p2, p1)
    s = np.dot(np.cross(r34, r12), r13)
    return omega * (1.0 if s > 0 else -1.0 if s < 0 else 0.0)


def gauss_estimate(emb: Embedding, A: Cycle, B: Cycle) -> float:
    """Gauss linking integral of two polygons, summed segment pair by segment pair.

    Floating point; meant only as an independent check of linking_number.
    """
    C = [np.asarray(p, dtype=float) for p in emb.coords]
    total = 0.0
    for a0, a1 in cycle_edges(A):
        for b0, b1 in cycle_edges(B):
            total += _segment_solid_angle(C[a0], C[a1], C[b0], C[b1])
    return total / (4 * math.pi)
