"""Integer 1-chains on the edges of K_n and fusion of cycles along shared arcs."""

from __future__ import annotations

from collections.abc import Mapping
from typing import Iterable, Sequence

from .linking import cycle_edges


class ChainError(ValueError):
    pass


class Chain(Mapping):
    """Formal sum of oriented edges, stored on keys (u, v) with u < v.

    ``chain[(v, u)]`` returns the negated multiplicity of ``(u, v)``.
    Zero entries are dropped, so two chains compare equal iff they are the
    same formal sum.
    """

    __slots__ = ("_m",)

    def __init__(self, items: Mapping | Iterable = ()):
        acc: dict[tuple[int, int], int] = {}
        pairs = items.items() if isinstance(items, Mapping) else items
        for (u, v), k in pairs:
            if u == v:
                raise ChainError(f"loop edge ({u}, {v})")
            if u > v:
                u, v, k = v, u, -k
            acc[(u, v)] = acc.get((u, v), 0) + k
        self._m = {e: k for e, k in acc.items() if k}

    def __getitem__(self, edge):
        u, v = edge
        if u > v:
            return -self._m.get((v, u), 0)
        return self._m.get((u, v), 0)

    def __iter__(self):
        return iter(self._m)

    def __len__(self):
        return len(self._m)

    def __contains__(self, edge):
        u, v = edge
        return (min(u, v), max(u, v)) in self._m

    def __eq__(self, other):
        if isinstance(other, Chain):
            return self._m == other._m
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._m.items()))

    def __add__(self, other: "Chain") -> "Chain":
        return Chain(list(self._m.items()) + list(other._m.items()))

    def __neg__(self) -> "Chain":
        return Chain({e: -k for e, k in self._m.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __repr__(self):
        return f"Chain({self._m!r})"

    @property
    def support(self) -> set[int]:
        return {v for e in self._m for v in e}


def chain_of(cycle: Sequence[int]) -> Chain:
    return Chain([(e, 1) for e in cycle_edges(cycle)])


def chain_add(*chains: Chain) -> Chain:
    out = Chain()
    for c in chains:
        out = out + c
    return out


def chain_as_cycle(c: Chain) -> tuple[int, ...]:
    """The simple oriented cycle carried by ``c``, starting at its smallest vertex."""
    succ: dict[int, int] = {}
    pred: dict[int, int] = {}
    for (u, v), k in c.items():
        if k not in (1, -1):
            raise ChainError(f"not a simple cycle: edge {(u, v)} has multiplicity {k}")
        a, b = (u, v) if k == 1 else (v, u)
        if a in succ or b in pred:
            raise ChainError(f"not a simple cycle: vertex {a if a in succ else b} has degree != 2")
        succ[a] = b
        pred[b] = a
    if not succ or set(succ) != set(pred):
        raise ChainError("not a simple cycle: open or empty support")
    start = min(succ)
    cyc = [start]
    while succ[cyc[-1]] != start:
        cyc.append(succ[cyc[-1]])
    if len(cyc) != len(succ):
        raise ChainError("not a simple cycle: support is disconnected")
    if len(cyc) < 3:
        raise ChainError("not a simple cycle: fewer than 3 vertices")
    return tuple(cyc)


def fuse(*cycles: Sequence[int]) -> tuple[int, ...]:
    """Chain-sum several cycles and read the result back as one cycle."""
    return chain_as_cycle(chain_add(*(chain_of(c) for c in cycles)))


def reverse(cycle: Sequence[int]) -> tuple[int, ...]:
    return (cycle[0],) + tuple(reversed(cycle[1:]))


def canonical(cycle: Sequence[int]) -> tuple[int, ...]:
    """Rotate so the smallest vertex comes first, keeping orientation."""
    i = cycle.index(min(cycle))
    return tuple(cycle[i:]) + tuple(cycle[:i])


def canonical_orientation(cycle: Sequence[int]) -> tuple[int, ...]:
    """Smallest vertex first and its smaller neighbour second."""
    c = canonical(cycle)
    return c if c[1] < c[-1] else reverse(c)
