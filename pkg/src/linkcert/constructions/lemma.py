"""Bridge-family doubling: the even-link construction and its iteration."""

from __future__ import annotations

from typing import Sequence

from ..cycles import (
    BridgeFamily,
    PathSystemError,
    build_bridge_family,
    check_path_system,
    choose_path_system,
)
from ..selectors import zero_block_select
from ..spatial import Embedding, kernel_for, reverse
from .certificate import BudgetError, LinkCertificate, make_certificate, theorem_id

Cycle = tuple[int, ...]


def oriented_positive(emb: Embedding, L: Cycle, Z: Cycle) -> tuple[Cycle, int, bool]:
    """Z, reversed if needed so that lk(L, Z) >= 0; returns (Z, lk, flipped)."""
    q = kernel_for(emb).linking_number(tuple(L), tuple(Z))
    if q < 0:
        return reverse(Z), -q, True
    return tuple(Z), q, False


def bridge_family(emb: Embedding, L: Cycle, Z: Cycle, W: Cycle, t: int, stage: str = "") -> BridgeFamily:
    """t evenly spaced single-edge bridges from Z to W and the cycles they cut out."""
    try:
        ps = choose_path_system(emb, Z, W, t)
    except PathSystemError as e:
        raise BudgetError(f"{stage}{e}") from None
    check_path_system(ps)
    return build_bridge_family(emb, L, Z, W, ps)


def check_identity(fam: BridgeFamily, ref: Cycle) -> int:
    """Assert sum_i lk(A_i, ref) = lk(Z, ref) + lk(W, ref); returns the sum."""
    k = kernel_for(fam.emb)
    total = k.linking_number(fam.paths.source, tuple(ref)) + k.linking_number(fam.paths.target, tuple(ref))
    if sum(fam.classes(ref)) != total:
        raise AssertionError(f"bridge family bookkeeping fails against {ref}")
    return total


def even_link_construct(emb: Embedding, L: Cycle, Z: Cycle, W: Cycle, r: int) -> LinkCertificate:
    """A cycle A with lk(A, L) a nonzero multiple of 2^(r+1).

    Requires lk(L, Z) and lk(L, W) to be nonzero multiples of 2^r; Z and W
    are reoriented so both are positive.  If either is already a multiple of
    2^(r+1) it is returned as is.  Otherwise 2^(r+1) + 1 bridges cut Z and W
    into cycles A_1..A_t and a zero-sum run of their classes is fused.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    half, mod = 2**r, 2 ** (r + 1)
    trace = []
    Z, q1, f1 = oriented_positive(emb, L, Z)
    W, q2, f2 = oriented_positive(emb, L, W)
    if f1 or f2:
        names = [c for c, f in (("Z", f1), ("W", f2)) if f]
        trace.append(f"reoriented {' and '.join(names)} so q_i > 0")
    for name, q in (("q1", q1), ("q2", q2)):
        if q == 0 or q % half:
            raise ValueError(f"precondition violated: {name} = {q} is not a nonzero multiple of {half}")
    tid = theorem_id("even-link", r=r)
    for name, C, q in (("q1", Z, q1), ("q2", W, q2)):
        if q % mod == 0:
            trace.append(f"early exit: {name} = {q} = 0 mod {mod}")
            return make_certificate(emb, tid, [L, C], trace, artifacts={"q": (q1, q2)})
    fam = bridge_family(emb, L, Z, W, mod + 1)
    vals = fam.classes(L)
    sel = zero_block_select(vals, mod)
    A = fam.fuse(sel.indices)
    kind = "complement of block" if sel.complement else "block"
    trace.append(f"t = {fam.t} bridges, classes {vals}, {kind} {list(sel.indices)} sum {sel.block_sum}")
    cert = make_certificate(
        emb, tid, [L, A], trace,
        artifacts={"q": (q1, q2), "family": fam, "selection": sel, "identity": (sum(vals), q1 + q2)},
    )
    if cert.lk(0, 1) != sel.block_sum:
        raise AssertionError("fused cycle does not carry the selected class")
    return cert


def _advance(emb, L, a, b, mod):
    """The member of a pair already 0 mod `mod` (larger if both, first on ties)."""
    k = kernel_for(emb)
    ok = [c for c in (a, b) if k.linking_number(L, c) % mod == 0]
    if not ok:
        return None
    return max(ok, key=len) if len(ok) == 2 and len(b) > len(a) else ok[0]


def iterated_doubling(
    emb: Embedding, L: Cycle, Zs: Sequence[Cycle], r: int, trace: list | None = None
) -> LinkCertificate:
    """Pair off 2^r cycles linked with L for r stages, doubling the 2-power each stage.

    Stage s brings every survivor to a nonzero multiple of 2^s using
    2^s + 1 bridges between the members of each pair.
    """
    if len(Zs) != 2**r:
        raise ValueError(f"need exactly 2^r = {2**r} cycles, got {len(Zs)}")
    k = kernel_for(emb)
    L = tuple(L)
    survivors = [tuple(z) for z in Zs]
    for z in survivors:
        if k.linking_number(L, z) == 0:
            raise ValueError("precondition violated: some lk(L, Z_i) = 0")
    trace = [] if trace is None else trace
    for s in range(1, r + 1):
        nxt = []
        for p in range(0, len(survivors), 2):
            a, b = survivors[p], survivors[p + 1]
            kept = _advance(emb, L, a, b, 2**s)
            if kept is not None:
                trace.append(f"stage {s} pair {p // 2}: member already 0 mod {2**s} advances")
                nxt.append(kept)
                continue
            if min(len(a), len(b)) < 2**s + 1:
                raise BudgetError(
                    f"stage {s}: too few vertices ({len(a)}, {len(b)}) for {2**s + 1} bridges"
                )
            cert = even_link_construct(emb, L, a, b, s - 1)
            trace.append(f"stage {s} pair {p // 2}: " + "; ".join(cert.case_trace))
            nxt.append(cert.components[1])
        survivors = nxt
    return make_certificate(emb, theorem_id("mod2-whitehead", r=r), [L, survivors[0]], trace)
