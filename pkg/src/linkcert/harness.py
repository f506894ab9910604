"""Random embeddings, verification campaigns and their reports."""

from __future__ import annotations

import csv
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable
import warnings

from .constructions import (
    LinkCertificate,
    SearchBudget,
    SearchExhausted,
    all_even,
    even_link_construct,
    find_nonsplit_pair,
    find_three_component_base,
    find_triangle_mcycle,
    mod2_keys,
    mod2_whitehead,
    mod3_keys,
    mod3_two_component,
    parse_theorem_id,
    ring_of_keys,
    search_mod4,
    split_blocks,
    star_recursion,
    theorem_id,
    three_component_mod,
    verify_certificate,
)
from .sequences import alpha, alpha_prime, beta, beta_prime, delta, epsilon, vertex_budget
from .spatial import Embedding, EmbeddingError, validate_embedding

DEFAULT_RANGE = 10**6
WORKERS_ENV = "LINKCERT_WORKERS"


def random_embedding(n: int, seed: int, M: int = DEFAULT_RANGE, max_resample: int = 10_000) -> Embedding:
    """Uniform integer points in [0, M)^3 in general position.

    Points are drawn in order from ``random.Random(seed)``; whenever the
    validator reports a violation, the highest-indexed vertex involved is
    redrawn.  The result depends only on (n, seed, M).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if M < 1:
        raise ValueError("coordinate range must be >= 1")
    rng = random.Random(seed)
    draw = lambda: (rng.randrange(M), rng.randrange(M), rng.randrange(M))
    coords = [draw() for _ in range(n)]
    for _ in range(max_resample):
        try:
            validate_embedding(coords)
        except EmbeddingError as e:
            coords[max(e.vertices)] = draw()
            continue
        emb = Embedding(tuple(coords))
        emb._memo["valid"] = True
        return emb
    raise RuntimeError(f"retry cap exceeded: no general-position sample of {n} points in [0, {M})^3")


def hopf_embedding() -> Embedding:
    """Six points in general position; triangles (0,1,2) and (3,4,5) have lk = +1."""
    return Embedding(((5, 0, 0), (-5, 3, 1), (-5, -3, -1), (1, 0, 5), (0, 6, -5), (-1, -1, -4)))


# ---------------------------------------------------------------------------
# engine registry


def _block_base(emb, block):
    return find_nonsplit_pair(emb, block, mode="nonzero")


def _even_link(emb, p, budget):
    r = p.get("r", 0)
    if r != 0:
        raise ValueError("even-link runs from the ten-vertex base, so only r=0 is available")
    base = find_three_component_base(emb, range(10), budget=budget)
    L, Z, W = base.components
    cert = even_link_construct(emb, L, Z, W, 0)
    cert.case_trace = list(base.case_trace) + cert.case_trace
    return cert


def _star(emb, p, budget):
    n = p["n"]
    blocks = split_blocks(emb.n, 6, alpha_prime(n))
    return star_recursion(emb, blocks, n, _block_base, p.get("mode", "nonzero"))


def _mod2_keys_need(n: int, r: int) -> int:
    # r = 1 blocks must hold a triangle and a 3-cycle, so K_6 rather than K_5
    if n == 1 and r == 1:
        return 10
    return max(beta_prime(n, r), alpha_prime(n * 2**r) * (vertex_budget(r)[0] + 3))


def _rings_need(r: int) -> int:
    # partners must keep (2^r + 1)^2 vertices through r doubling stages
    return max(delta(r), alpha_prime(3 * 2**r) * (vertex_budget(r, (2**r + 1) ** 2)[0] + 3))


@dataclass(frozen=True)
class Engine:
    run: Callable  # (emb, params, budget) -> LinkCertificate
    min_vertices: Callable  # params -> int
    defaults: dict = field(default_factory=dict)


ENGINES: dict[str, Engine] = {
    "nonsplit": Engine(
        lambda e, p, b: find_nonsplit_pair(e, range(6), p["mode"], b), lambda p: 6, {"mode": "odd"}
    ),
    "triangle-mcycle": Engine(
        lambda e, p, b: find_triangle_mcycle(e, p["m"], range(p["m"] + 3), b), lambda p: p["m"] + 3, {"m": 4}
    ),
    "three-component": Engine(
        lambda e, p, b: find_three_component_base(e, range(10), p["mode"], b), lambda p: 10, {"mode": "odd"}
    ),
    "even-link": Engine(_even_link, lambda p: 10, {"r": 0}),
    "ring-of-keys": Engine(
        lambda e, p, b: ring_of_keys(e, p["n"], p["mode"]), lambda p: alpha(p["n"]), {"n": 3, "mode": "nonzero"}
    ),
    "star": Engine(_star, lambda p: 6 * alpha_prime(p["n"]), {"n": 3, "mode": "nonzero"}),
    "mod2-whitehead": Engine(lambda e, p, b: mod2_whitehead(e, p["r"]), lambda p: beta(p["r"]), {"r": 2}),
    "mod2-keys": Engine(
        lambda e, p, b: mod2_keys(e, p["n"], p["r"]), lambda p: _mod2_keys_need(p["n"], p["r"]), {"n": 1, "r": 1}
    ),
    "mod4": Engine(lambda e, p, b: search_mod4(e, range(10), b), lambda p: 10),
    "mod2-rings": Engine(lambda e, p, b: three_component_mod(e, p["r"]), lambda p: _rings_need(p["r"]), {"r": 1}),
    "all-even": Engine(lambda e, p, b: all_even(e, p["n"]), lambda p: epsilon(p["n"]), {"n": 2}),
    "mod3": Engine(lambda e, p, b: mod3_two_component(e), lambda p: 35),
    "mod3-keys": Engine(lambda e, p, b: mod3_keys(e, p["n"]), lambda p: 7 * alpha_prime(3 * p["n"]), {"n": 1}),
}

ALIASES = {
    "K6-nonsplit": "nonsplit(mode=odd)",
    "mod4-K10": "mod4",
    "lemma-K10": "even-link(r=0)",
}


def resolve_engine(tid: str) -> tuple[str, Engine, dict]:
    """Canonical theorem id, engine and parameters (defaults filled in)."""
    name, params = parse_theorem_id(ALIASES.get(tid, tid))
    if name not in ENGINES:
        known = ", ".join(sorted(ENGINES) + sorted(ALIASES))
        raise KeyError(f"unknown theorem {tid!r}; known: {known}")
    eng = ENGINES[name]
    unknown = set(params) - set(eng.defaults)
    if unknown:
        raise ValueError(f"theorem {name!r} takes no parameter(s) {sorted(unknown)}")
    full = {**eng.defaults, **params}
    return theorem_id(name, **full), eng, full


def construct(tid: str, emb: Embedding, seed: int = 0, budget: SearchBudget | None = None) -> LinkCertificate:
    """Run one engine on one embedding; the certificate records ``seed``."""
    _, eng, params = resolve_engine(tid)
    cert = eng.run(emb, params, budget)
    cert.seed = seed
    return cert


# ---------------------------------------------------------------------------
# campaigns


@dataclass(frozen=True)
class CampaignSpec:
    theorem: str
    trials: int
    seed: int = 0
    n: int | None = None  # graph size; defaults to the engine's vertex requirement
    coord_range: int = DEFAULT_RANGE
    budget: SearchBudget | None = None
    out_dir: Path | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trial count must be >= 1")
        _, eng, params = resolve_engine(self.theorem)
        need = eng.min_vertices(params)
        if self.n is not None and self.n < need:
            warnings.warn(f"graph size {self.n} is below the {need} vertices {self.theorem} requires")

    @property
    def graph_size(self) -> int:
        if self.n is not None:
            return self.n
        _, eng, params = resolve_engine(self.theorem)
        return eng.min_vertices(params)


@dataclass
class TrialOutcome:
    index: int
    seed: int
    outcome: str  # certificate | exhaustion | error
    millis: int
    cert_path: str = ""
    message: str = ""
    certificate: str = ""  # certificate JSON when one was produced


@dataclass
class CampaignReport:
    spec: CampaignSpec
    trials: list[TrialOutcome]

    @property
    def counts(self) -> dict[str, int]:
        out = {"certificate": 0, "exhaustion": 0, "error": 0}
        for t in self.trials:
            out[t.outcome] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.counts["certificate"] == len(self.trials)

    def write_csv(self, path: Path | str) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["index", "outcome", "millis", "certPath"])
            for t in self.trials:
                w.writerow([t.index, t.outcome, t.millis, t.cert_path])


def run_trial(spec: CampaignSpec, index: int) -> TrialOutcome:
    """Trial ``index`` uses seed ``spec.seed + index`` for its embedding."""
    seed = spec.seed + index
    t0 = time.perf_counter()
    ms = lambda: int(round(1000 * (time.perf_counter() - t0)))
    try:
        emb = random_embedding(spec.graph_size, seed, spec.coord_range)
        cert = construct(spec.theorem, emb, seed, spec.budget)
        check = verify_certificate(emb, LinkCertificate.from_json(cert.to_json()))
    except SearchExhausted as e:
        return TrialOutcome(index, seed, "exhaustion", ms(), message=str(e))
    except Exception as e:  # recorded per trial, never aborts the campaign
        return TrialOutcome(index, seed, "error", ms(), message=f"{type(e).__name__}: {e}")
    if not check.ok:
        return TrialOutcome(index, seed, "error", ms(), message="verification failed: " + "; ".join(check.problems))
    path = ""
    if spec.out_dir is not None:
        out = Path(spec.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"trial{index:04d}.embedding.json").write_text(emb.to_json())
        p = out / f"trial{index:04d}.cert.json"
        p.write_text(cert.to_json())
        path = str(p)
    return TrialOutcome(index, seed, "certificate", ms(), path, certificate=cert.to_json())


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def run_campaign(spec: CampaignSpec, workers: int | None = None) -> CampaignReport:
    """Run all trials (in parallel when workers > 1) and collect them in index order."""
    workers = worker_count() if workers is None else max(1, workers)
    idx = range(spec.trials)
    if workers == 1:
        trials = [run_trial(spec, i) for i in idx]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            trials = list(pool.map(run_trial, [spec] * spec.trials, idx))
    report = CampaignReport(spec, trials)
    if spec.out_dir is not None:
        report.write_csv(Path(spec.out_dir) / "report.csv")
    return report
