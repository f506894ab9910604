"""Link certificates: components, linking matrix, case trace, re-verification."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

from ..spatial import (
    Embedding,
    LinkingKernel,
    canonical_orientation,
    check_cycle,
    kernel_for,
)

Cycle = tuple[int, ...]


class SearchExhausted(RuntimeError):
    """A search finished its budget without a hit.

    For searches backed by an existence theorem this is falsification
    evidence and must be reported, not swallowed.
    """


class BudgetError(ValueError):
    """A stage ran out of vertices (too few for the bridges it needs)."""


@dataclass
class LinkCertificate:
    theorem: str
    components: list[Cycle]
    linking_matrix: list[list[int]]
    case_trace: list[str] = field(default_factory=list)
    orientation_flips: list[bool] = field(default_factory=list)
    seed: int = 0
    # in-memory only: bridge families, selections, identities checked
    artifacts: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def L(self) -> Cycle:
        return self.components[0]

    def lk(self, i: int, j: int) -> int:
        return self.linking_matrix[i][j]

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "components": [list(c) for c in self.components],
            "linkingMatrix": [list(r) for r in self.linking_matrix],
            "caseTrace": list(self.case_trace),
            "orientationFlips": list(self.orientation_flips),
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "LinkCertificate":
        return cls(
            theorem=d["theorem"],
            components=[tuple(int(v) for v in c) for c in d["components"]],
            linking_matrix=[[int(x) for x in r] for r in d["linkingMatrix"]],
            case_trace=list(d.get("caseTrace", [])),
            orientation_flips=[bool(b) for b in d.get("orientationFlips", [])],
            seed=int(d.get("seed", 0)),
        )

    @classmethod
    def from_json(cls, text: str) -> "LinkCertificate":
        return cls.from_dict(json.loads(text))


def linking_matrix(kernel: LinkingKernel, components: Sequence[Cycle]) -> list[list[int]]:
    k = len(components)
    M = [[0] * k for _ in range(k)]
    for i, j in combinations(range(k), 2):
        M[i][j] = M[j][i] = kernel.linking_number(components[i], components[j])
    return M


def make_certificate(
    emb: Embedding,
    theorem: str,
    components: Sequence[Cycle],
    trace: Sequence[str] = (),
    seed: int = 0,
    artifacts: dict | None = None,
) -> LinkCertificate:
    comps = [tuple(c) for c in components]
    return LinkCertificate(
        theorem=theorem,
        components=comps,
        linking_matrix=linking_matrix(kernel_for(emb), comps),
        case_trace=list(trace),
        orientation_flips=[c != canonical_orientation(c) for c in comps],
        seed=seed,
        artifacts=artifacts or {},
    )


# ---------------------------------------------------------------------------
# theorem predicates over a linking matrix


def theorem_id(name: str, **params) -> str:
    if not params:
        return name
    return name + "(" + ",".join(f"{k}={v}" for k, v in params.items()) + ")"


_ID = re.compile(r"^([A-Za-z0-9\-]+)(?:\((.*)\))?$")


def parse_theorem_id(tid: str) -> tuple[str, dict]:
    m = _ID.match(tid.strip())
    if not m:
        raise ValueError(f"malformed theorem id {tid!r}")
    params = {}
    if m.group(2):
        for part in m.group(2).split(","):
            k, v = part.split("=")
            params[k.strip()] = int(v) if v.strip().lstrip("-").isdigit() else v.strip()
    return m.group(1), params


def _linked(mode: str) -> Callable[[int], bool]:
    if mode == "odd":
        return lambda x: x % 2 == 1
    if mode == "nonzero":
        return lambda x: x != 0
    raise ValueError(f"unknown mode {mode!r}")


def _mod_nonzero(m: int) -> Callable[[int], bool]:
    return lambda x: x % m == 0 and x != 0


def _star_check(M, size: int, pred) -> list[str]:
    if len(M) != size:
        return [f"expected {size} components, got {len(M)}"]
    return [f"lk(L, component {i}) = {M[0][i]} fails" for i in range(1, size) if not pred(M[0][i])]


def _check_all_even(M, p) -> list[str]:
    n = p["n"]
    bad = _star_check(M, n + 1, _mod_nonzero(2))
    bad += [
        f"lk({i}, {j}) = {M[i][j]} is odd"
        for i, j in combinations(range(len(M)), 2)
        if M[i][j] % 2
    ]
    return bad


def _check_mod2_rings(M, p) -> list[str]:
    if len(M) != 3:
        return [f"expected 3 components, got {len(M)}"]
    q = 2 ** p["r"]
    bad = []
    if not _mod_nonzero(q)(M[0][1]):
        bad.append(f"lk(L, W) = {M[0][1]} not a nonzero multiple of {q}")
    if not _mod_nonzero(q)(M[0][2]):
        bad.append(f"lk(L, A) = {M[0][2]} not a nonzero multiple of {q}")
    if M[1][2] % 2:
        bad.append(f"lk(W, A) = {M[1][2]} is odd")
    return bad


def _check_triangle_mcycle(M, p, comps) -> list[str]:
    bad = _star_check(M, 2, _linked("nonzero"))
    if len(comps[0]) != 3 or len(comps[1]) != p["m"]:
        bad.append("component sizes are not (3, m)")
    return bad


# name -> checker(matrix, params, components) -> list of problems
THEOREMS: dict[str, Callable] = {
    "nonsplit": lambda M, p, c: _star_check(M, 2, _linked(p.get("mode", "nonzero"))),
    "triangle-mcycle": _check_triangle_mcycle,
    "three-component": lambda M, p, c: _star_check(M, 3, _linked(p.get("mode", "odd"))),
    "even-link": lambda M, p, c: _star_check(M, 2, _mod_nonzero(2 ** (p["r"] + 1))),
    "ring-of-keys": lambda M, p, c: _star_check(M, p["n"] + 1, _linked(p.get("mode", "nonzero"))),
    "star": lambda M, p, c: _star_check(M, p["n"] + 1, _linked(p.get("mode", "nonzero"))),
    "mod2-whitehead": lambda M, p, c: _star_check(M, 2, _mod_nonzero(2 ** p["r"])),
    "mod2-keys": lambda M, p, c: _star_check(M, p["n"] + 1, _mod_nonzero(2 ** p["r"])),
    "mod4": lambda M, p, c: _star_check(M, 2, lambda x: x % 4 == 2),
    "mod2-rings": lambda M, p, c: _check_mod2_rings(M, p),
    "all-even": lambda M, p, c: _check_all_even(M, p),
    "mod3": lambda M, p, c: _star_check(M, 2, _mod_nonzero(3)),
    "mod3-keys": lambda M, p, c: _star_check(M, p["n"] + 1, _mod_nonzero(3)),
}


def theorem_problems(cert: LinkCertificate, matrix=None) -> list[str]:
    name, params = parse_theorem_id(cert.theorem)
    if name not in THEOREMS:
        return [f"unknown theorem {name!r}"]
    M = cert.linking_matrix if matrix is None else matrix
    return THEOREMS[name](M, params, cert.components)


@dataclass
class Verification:
    ok: bool
    problems: list[str]
    matrix: list[list[int]]


def verify_certificate(emb: Embedding, cert: LinkCertificate, seed: int | None = None) -> Verification:
    """Re-check a certificate from the coordinates alone.

    A fresh kernel is used, started from a different projection direction
    than the one that produced the certificate.
    """
    problems = []
    comps = [tuple(c) for c in cert.components]
    for c in comps:
        try:
            check_cycle(c, emb.n)
        except ValueError as e:
            problems.append(f"bad component {c}: {e}")
    for i, j in combinations(range(len(comps)), 2):
        if set(comps[i]) & set(comps[j]):
            problems.append(f"components {i} and {j} share vertices")
    if problems:
        return Verification(False, problems, [])
    kernel = LinkingKernel(emb, seed=cert.seed + 1 if seed is None else seed)
    M = linking_matrix(kernel, comps)
    if M != [list(r) for r in cert.linking_matrix]:
        problems.append("stored linking matrix does not match recomputation")
    problems += theorem_problems(cert, M)
    flips = [c != canonical_orientation(c) for c in comps]
    if cert.orientation_flips and flips != list(cert.orientation_flips):
        problems.append("orientation flags do not match components")
    return Verification(not problems, problems, M)
