"""Acceptance criteria 1-10, one test each.

Each test records a PASS/FAIL line (printed in the pytest terminal summary
and when this file is run as a script).
"""

import itertools
import random
import time

import numpy as np
import pytest

from linkcert import sequences as S
from linkcert.constructions import (
    SearchBudget,
    even_link_construct,
    find_nonsplit_pair,
    find_three_component_base,
    mod2_whitehead,
    mod3_two_component,
    ring_of_keys,
    search_mod4,
    verify_certificate,
)
from linkcert.constructions.certificate import LinkCertificate
from linkcert.harness import construct, hopf_embedding, random_embedding
from linkcert.selectors import select_mod2_batch, zero_block_select_batch
from linkcert.spatial import (
    canonical,
    cycle_edges,
    gauss_estimate,
    generic_direction,
    linking_number,
    reverse,
)

RESULTS: dict[int, str] = {}


def record(k: int, ok: bool, detail: str) -> None:
    line = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[k] = line
    print(line)
    assert ok, line


def test_criterion_01_k6_campaign():
    t0 = time.perf_counter()
    hits = 0
    for seed in range(100):
        emb = random_embedding(6, seed)
        cert = find_nonsplit_pair(emb, mode="odd", budget=SearchBudget(max_size=3))
        tri = all(len(c) == 3 for c in cert.components)
        hits += tri and cert.lk(0, 1) % 2 == 1 and verify_certificate(emb, cert).ok
    dt = time.perf_counter() - t0
    record(1, hits == 100 and dt < 10, f"{hits}/100 odd triangle pairs in {dt:.2f} s")


def _random_pair(rng):
    n = rng.randint(6, 10)
    emb = random_embedding(n, rng.randrange(10**9))
    verts = rng.sample(range(n), n)
    a = rng.randint(3, n - 3)
    b = rng.randint(3, n - a)
    return emb, tuple(verts[:a]), tuple(verts[a : a + b])


def _directions(emb, A, B, count):
    edges = cycle_edges(A) + cycle_edges(B)
    out, seed = [], 1
    while len(out) < count:
        d = generic_direction(emb, seed, set(A) | set(B), edges=edges)
        if d not in out:
            out.append(d)
        seed += 1
    return out


def test_criterion_02_linking_numbers():
    rng = random.Random(2024)
    cases = [(hopf_embedding(), (0, 1, 2), (3, 4, 5))] + [_random_pair(rng) for _ in range(200)]
    worst, bad = 0.0, []
    for i, (emb, A, B) in enumerate(cases):
        lk = linking_number(emb, A, B)
        g = gauss_estimate(emb, A, B)
        worst = max(worst, abs(g - lk))
        views = {linking_number(emb, A, B, d) for d in _directions(emb, A, B, 5)}
        anti = linking_number(emb, reverse(A), B) == -lk and linking_number(emb, A, reverse(B)) == -lk
        sym = linking_number(emb, B, A) == lk
        if abs(g - lk) > 1e-6 or views != {lk} or not anti or not sym:
            bad.append(i)
    hopf_ok = abs(linking_number(*cases[0])) == 1
    record(2, not bad and hopf_ok, f"{len(cases)} pairs, max |gauss - lk| = {worst:.1e}, failures {bad}")


# ---------------------------------------------------------------------------
# criterion 3: every sequence of length <= 8 over [-5, 5], stored column-wise

VALS = np.arange(-5, 6, dtype=np.int8)


def _grid(k):
    return np.stack(np.meshgrid(*([VALS] * k), indexing="ij")).reshape(k, -1)


def _run_sums(VT, start, length):
    """Brute-force sum of the cyclic run (start, length) of every column.

    Sums of at most eight entries in [-5, 5] fit in int8.
    """
    t = VT.shape[0]
    end = start + length
    out = np.zeros(VT.shape[1], dtype=np.int8)
    for k in range(t):
        out += VT[k] * (((start <= k) & (end > k)) | (end > k + t))
    return out


def _first_even_run(VT):
    """Brute-force first proper run with even sum, by start then length."""
    t, B = VT.shape
    found = np.zeros(B, dtype=bool)
    start = np.zeros(B, dtype=np.int8)
    length = np.zeros(B, dtype=np.int8)
    for s in range(t):
        acc = np.zeros(B, dtype=np.int8)
        for ln in range(1, t):
            acc += VT[(s + ln - 1) % t]
            hit = ~found & (acc % 2 == 0)
            start[hit], length[hit] = s, ln
            found |= hit
    return found, start, length


def test_criterion_03_selector_oracles():
    t0 = time.perf_counter()
    checked = 0
    problems = []
    for L in range(1, 9):
        tail = min(L, 6)
        G = _grid(tail)
        VT = np.empty((L, G.shape[1]), dtype=np.int8)
        VT[L - tail :] = G
        gtot = G.sum(axis=0, dtype=np.int16)
        for head in itertools.product(range(-5, 6), repeat=L - tail):
            VT[: L - tail] = np.array(head, dtype=np.int8)[:, None]
            tot = gtot + sum(head)
            for m in (2, 3, 4):
                if L < m + 1:
                    continue
                W = VT.take(np.flatnonzero((tot % m == 0) & (tot != 0)), axis=1)
                s, ln, _ = zero_block_select_batch(W.T, m)
                bs = _run_sums(W, s, ln)
                if not ((ln >= 1) & (ln < L) & (bs % m == 0) & (bs != 0)).all():
                    problems.append(("zero_block_select", L, m, head))
                checked += W.shape[1]
            if L >= 3:
                W = VT.take(np.flatnonzero(tot % 2 == 0), axis=1)
                s, ln = select_mod2_batch(W.T)
                bs = _run_sums(W, s, ln)
                if not ((ln >= 1) & (ln < L) & (bs % 2 == 0)).all():
                    problems.append(("mod2 validity", L, head))
                if L <= 6:
                    found, fs, fl = _first_even_run(W)
                    if not (found.all() and (fs == s).all() and (fl == ln).all()):
                        problems.append(("mod2 first run", L, head))
                checked += W.shape[1]
    dt = time.perf_counter() - t0
    record(3, not problems and dt < 60, f"{checked} selections checked in {dt:.1f} s, problems {problems[:3]}")


def test_criterion_04_even_link_k10():
    good = 0
    for seed in range(25):
        emb = random_embedding(10, seed)
        base = find_three_component_base(emb)
        L, Z, W = base.components
        cert = even_link_construct(emb, L, Z, W, 0)
        lk = cert.lk(0, 1)
        ident = cert.artifacts.get("identity")
        ident_ok = ident is None or ident[0] == ident[1]
        if "family" in cert.artifacts:
            fam = cert.artifacts["family"]
            q1, q2 = cert.artifacts["q"]
            ident_ok = ident_ok and sum(fam.classes(L)) == q1 + q2
        good += lk % 2 == 0 and lk != 0 and ident_ok and verify_certificate(emb, cert).ok
    record(4, good == 25, f"{good}/25 even nonzero with exact bookkeeping")


def test_criterion_05_mod4_k90():
    good, times = 0, []
    for seed in range(5):
        emb = random_embedding(S.beta(2), seed)
        t0 = time.perf_counter()
        cert = mod2_whitehead(emb, 2)
        times.append(time.perf_counter() - t0)
        lk = cert.lk(0, 1)
        good += lk % 4 == 0 and lk != 0 and verify_certificate(emb, cert).ok
    record(5, good == 5, f"{good}/5 on K_90, build times {[round(t, 2) for t in times]} s")


def test_criterion_06_mod3_k35():
    good = 0
    for seed in range(5):
        emb = random_embedding(35, seed)
        cert = mod3_two_component(emb)
        lk = cert.lk(0, 1)
        good += lk % 3 == 0 and lk != 0 and verify_certificate(emb, cert).ok
    record(6, good == 5, f"{good}/5 on K_35")


def test_criterion_07_mod4_search_k10():
    good, slowest = 0, 0.0
    for seed in range(10):
        emb = random_embedding(10, seed)
        t0 = time.perf_counter()
        cert = search_mod4(emb)
        slowest = max(slowest, time.perf_counter() - t0)
        good += cert.lk(0, 1) % 4 == 2 and verify_certificate(emb, cert).ok
    record(7, good == 10 and slowest < 300, f"{good}/10 with lk = 2 mod 4, slowest {slowest:.2f} s")


def test_criterion_08_sequence_table():
    got = {
        "alpha(1..5)": [S.alpha(n) for n in range(1, 6)],
        "alpha'(1,3,5)": [S.alpha_prime(n) for n in (1, 3, 5)],
        "beta(0,1)": [S.beta(0), S.beta(1)],
        "gamma(2,3,4)": [S.gamma(r) for r in (2, 3, 4)],
        "c_1(r=3,4)": [S.vertex_budget(3)[0], S.vertex_budget(4)[0]],
    }
    want = {
        "alpha(1..5)": [6, 10, 26, 52, 110],
        "alpha'(1,3,5)": [1, 5, 21],
        "beta(0,1)": [6, 10],
        "gamma(2,3,4)": [6, 30, 270],
        "c_1(r=3,4)": [27, 261],
    }
    bad = {k: got[k] for k in want if got[k] != want[k]}
    record(8, not bad, f"mismatches {bad}" if bad else "all values exact")


FUZZ = [
    ("nonsplit(mode=odd)", 6, 100),
    ("nonsplit(mode=nonzero)", 8, 40),
    ("triangle-mcycle(m=4)", 7, 40),
    ("triangle-mcycle(m=5)", 8, 20),
    ("three-component(mode=odd)", 10, 40),
    ("even-link(r=0)", 10, 50),
    ("mod4", 10, 40),
    ("ring-of-keys(n=3,mode=nonzero)", 26, 30),
    ("ring-of-keys(n=3,mode=odd)", 26, 20),
    ("star(n=3,mode=nonzero)", 30, 30),
    ("mod3", 35, 40),
    ("mod2-keys(n=1,r=1)", 10, 30),
    ("mod2-whitehead(r=2)", 90, 20),
]


def test_criterion_09_certificate_fuzz():
    total, mismatches = 0, []
    for k, (tid, n, count) in enumerate(FUZZ):
        for i in range(count):
            seed = 1000 * k + i
            emb = random_embedding(n, seed)
            cert = construct(tid, emb, seed)
            again = LinkCertificate.from_json(cert.to_json())
            check = verify_certificate(emb, again)
            total += 1
            if not check.ok or check.matrix != cert.linking_matrix:
                mismatches.append((tid, seed, check.problems))
    record(9, total == 500 and not mismatches, f"{total} certificates re-verified, {len(mismatches)} mismatches")


def test_criterion_10_ring_of_keys_k26():
    good = 0
    for seed in range(3):
        emb = random_embedding(26, seed)
        cert = ring_of_keys(emb, 3)
        row = cert.linking_matrix[0][1:]
        good += len(cert.components) == 4 and all(row) and verify_certificate(emb, cert).ok
    record(10, good == 3, f"{good}/3 four-component rings on K_26")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
