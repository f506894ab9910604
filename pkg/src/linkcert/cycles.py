"""Cycle enumeration in K_n, bridge path systems and bridge-cycle families."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterable, Iterator, Sequence

from .spatial import Embedding, LinkingError, fuse, kernel_for
from .spatial.chains import chain_add, chain_of

Cycle = tuple[int, ...]


class PathSystemError(ValueError):
    pass


def cycles_on(vertices: Sequence[int]) -> Iterator[Cycle]:
    """Every cycle through exactly these vertices, once, in canonical orientation."""
    vs = sorted(vertices)
    if len(vs) < 3:
        return
    first, rest = vs[0], vs[1:]
    for perm in permutations(rest):
        if perm[0] < perm[-1]:
            yield (first,) + perm


def enumerate_cycles(
    vertex_pool: Iterable[int], min_len: int = 3, max_len: int | None = None
) -> Iterator[Cycle]:
    """Lazily yield each undirected cycle of the complete graph on the pool once.

    Order: by length, then vertex subset (lexicographic), then permutation.
    """
    pool = sorted(set(vertex_pool))
    max_len = len(pool) if max_len is None else max_len
    if not 3 <= min_len <= max_len <= len(pool):
        raise ValueError(f"need 3 <= min_len <= max_len <= {len(pool)}")
    for k in range(min_len, max_len + 1):
        for subset in combinations(pool, k):
            yield from cycles_on(subset)


def cycle_count(p: int, k: int) -> int:
    """Number of k-cycles in K_p."""
    return comb(p, k) * factorial(k - 1) // 2 if k >= 3 else 0


def enumerate_disjoint_tuples(
    vertex_pool: Iterable[int] | int,
    arity: int,
    min_size: int = 3,
    max_size: int | None = None,
) -> Iterator[tuple[Cycle, ...]]:
    """Unordered tuples of pairwise vertex-disjoint cycles, each yielded once.

    Cycles are ordered as in :func:`enumerate_cycles`; a tuple is yielded as
    (c_1, ..., c_arity) with c_1 < c_2 < ... in that order, and tuples come
    out lexicographically.
    """
    pool = sorted(range(vertex_pool) if isinstance(vertex_pool, int) else set(vertex_pool))
    if arity < 2:
        raise ValueError("arity must be >= 2")
    max_size = len(pool) if max_size is None else max_size
    if arity * min_size > len(pool):
        return
    cycles = list(enumerate_cycles(pool, min_size, min(max_size, len(pool) - (arity - 1) * min_size)))
    sets = [frozenset(c) for c in cycles]

    def extend(start: int, used: frozenset, chosen: list):
        if len(chosen) == arity:
            yield tuple(cycles[i] for i in chosen)
            return
        room = len(pool) - len(used) - (arity - len(chosen) - 1) * min_size
        for i in range(start, len(cycles)):
            if len(cycles[i]) > room:
                break
            if used.isdisjoint(sets[i]):
                chosen.append(i)
                yield from extend(i + 1, used | sets[i], chosen)
                chosen.pop()

    yield from extend(0, frozenset(), [])


# ---------------------------------------------------------------------------
# path systems


@dataclass(frozen=True)
class PathSystem:
    """Single-edge bridges P_1..P_t from source cycle Z to target cycle W.

    ``bridges[i] = (z, w)`` is oriented from Z to W.  The W endpoints occur
    in ascending cyclic order along W, the Z endpoints in descending cyclic
    order along Z.
    """

    source: Cycle
    target: Cycle
    bridges: tuple[tuple[int, int], ...]

    @property
    def t(self) -> int:
        return len(self.bridges)


def choose_path_system(emb: Embedding | None, Z: Cycle, W: Cycle, t: int) -> PathSystem:
    """t evenly spaced bridges, ascending along W and descending along Z."""
    if set(Z) & set(W):
        raise LinkingError("not disjoint")
    if t < 1:
        raise ValueError("t must be positive")
    for name, cyc in (("Z", Z), ("W", W)):
        if len(cyc) < t:
            raise PathSystemError(f"too few vertices: {name} has {len(cyc)} < {t}")
    p, q = len(W), len(Z)
    bridges = tuple((Z[(-(k * q // t)) % q], W[k * p // t]) for k in range(t))
    return PathSystem(tuple(Z), tuple(W), bridges)


def _winds_once(positions: Sequence[int], size: int) -> bool:
    if len(set(positions)) != len(positions):
        return False
    steps = [(positions[(i + 1) % len(positions)] - positions[i]) % size for i in range(len(positions))]
    return len(positions) == 1 or sum(steps) == size


def check_path_system(ps: PathSystem) -> None:
    """Independent check of the cyclic-order and distinctness conditions."""
    Z, W = ps.source, ps.target
    zs = [z for z, _ in ps.bridges]
    ws = [w for _, w in ps.bridges]
    if len(set(zs) | set(ws)) != 2 * ps.t:
        raise PathSystemError("bridge endpoints are not distinct")
    if not (set(zs) <= set(Z) and set(ws) <= set(W)):
        raise PathSystemError("bridge endpoint off its cycle")
    if not _winds_once([W.index(w) for w in ws], len(W)):
        raise PathSystemError("bridges are not in ascending order along W")
    if not _winds_once([(-Z.index(z)) % len(Z) for z in zs], len(Z)):
        raise PathSystemError("bridges are not in descending order along Z")


def _arc(cycle: Cycle, a: int, b: int) -> list[int]:
    """Vertices of the cycle from a forward to b, inclusive."""
    i, j = cycle.index(a), cycle.index(b)
    n = len(cycle)
    return [cycle[(i + k) % n] for k in range((j - i) % n + 1)]


@dataclass
class BridgeFamily:
    """Cycles A_1..A_t cut out of Z and W by a path system.

    A_i runs along P_i, forward on W to P_{i+1}, back along P_{i+1} and
    forward on Z to P_i.  Consecutive A_i share a bridge with opposite
    orientations, so any cyclic run of them fuses to one simple cycle and
    all of them together give [Z] + [W].
    """

    paths: PathSystem
    cycles: tuple[Cycle, ...]
    emb: Embedding | None = None
    _classes: dict = field(default_factory=dict, repr=False)

    @property
    def t(self) -> int:
        return len(self.cycles)

    def classes(self, ref: Cycle) -> list[int]:
        """Linking numbers lk(A_i, ref)."""
        key = tuple(ref)
        if key not in self._classes:
            k = kernel_for(self.emb)
            self._classes[key] = [k.linking_number(a, key) for a in self.cycles]
        return self._classes[key]

    def run(self, start: int, length: int) -> list[int]:
        return [(start + k) % self.t for k in range(length)]

    def fuse(self, indices: Iterable[int]) -> Cycle:
        return fuse(*(self.cycles[i] for i in indices))

    def chain(self):
        return chain_add(*(chain_of(c) for c in self.cycles))


def bridge_cycles(ps: PathSystem) -> tuple[Cycle, ...]:
    Z, W = ps.source, ps.target
    out = []
    for i, (z, w) in enumerate(ps.bridges):
        z2, w2 = ps.bridges[(i + 1) % ps.t]
        w_arc = _arc(W, w, w2)
        z_arc = _arc(Z, z2, z)
        out.append(tuple([z] + w_arc + z_arc[:-1]))
    return tuple(out)


def build_bridge_family(
    emb: Embedding, L: Cycle, Z: Cycle, W: Cycle, ps: PathSystem
) -> BridgeFamily:
    """Build A_1..A_t and check sum_i lk(A_i, L) = lk(Z, L) + lk(W, L)."""
    if tuple(ps.source) != tuple(Z) or tuple(ps.target) != tuple(W):
        raise ValueError("path system was built for different cycles")
    used = set(Z) | set(W)
    if set(L) & used:
        raise LinkingError("not disjoint")
    fam = BridgeFamily(ps, bridge_cycles(ps), emb)
    k = kernel_for(emb)
    total = k.linking_number(tuple(Z), tuple(L)) + k.linking_number(tuple(W), tuple(L))
    if sum(fam.classes(L)) != total:
        raise AssertionError("bridge family classes do not add up to [Z] + [W]")
    return fam
