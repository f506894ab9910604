"""Command-line interface.

Exit codes: 0 success, 1 falsification or search exhaustion (or a
certificate that fails re-verification), 2 usage or precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import sequences
from .constructions import BudgetError, LinkCertificate, SearchBudget, SearchExhausted, verify_certificate
from .harness import ALIASES, ENGINES, CampaignSpec, construct, random_embedding, resolve_engine, run_campaign
from .spatial import Embedding, LinkingError, kernel_for

OK, FALSIFIED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _cycle(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cycle must be comma-separated vertex indices, got {text!r}") from None


def _load_embedding(path: str) -> Embedding:
    try:
        return Embedding.from_json(Path(path).read_text())
    except (OSError, ValueError, KeyError) as e:
        raise UsageError(f"cannot read embedding {path}: {e}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def cmd_gen(a) -> int:
    _emit(random_embedding(a.n, a.seed, a.range).to_json(), a.output)
    return OK


def cmd_lk(a) -> int:
    emb = _load_embedding(a.embedding)
    if len(a.cycle) != 2:
        raise UsageError("lk needs exactly two --cycle arguments")
    try:
        print(kernel_for(emb).linking_number(*a.cycle))
    except (LinkingError, ValueError) as e:
        raise UsageError(str(e)) from None
    return OK


def _budget(a) -> SearchBudget | None:
    if a.max_size is None and a.max_tuples is None and a.time_cap is None:
        return None
    return SearchBudget(a.max_size, a.max_tuples, a.time_cap)


def cmd_construct(a) -> int:
    tid, eng, params = resolve_engine(a.theorem)
    if a.embedding:
        emb = _load_embedding(a.embedding)
    else:
        emb = random_embedding(a.n or eng.min_vertices(params), a.seed, a.range)
    try:
        cert = construct(tid, emb, a.seed, _budget(a))
    except SearchExhausted as e:
        print(f"search exhausted: {e}", file=sys.stderr)
        return FALSIFIED
    except BudgetError as e:
        raise UsageError(str(e)) from None
    check = verify_certificate(emb, cert)
    _emit(cert.to_json(), a.output)
    if not check.ok:
        print("re-verification failed: " + "; ".join(check.problems), file=sys.stderr)
        return FALSIFIED
    return OK


def cmd_verify(a) -> int:
    spec = CampaignSpec(
        a.theorem, a.trials, a.seed, a.n, a.range, _budget(a), Path(a.out) if a.out else None
    )
    report = run_campaign(spec, a.workers)
    for t in report.trials:
        if t.outcome != "certificate":
            print(f"trial {t.index} (seed {t.seed}): {t.outcome}: {t.message}", file=sys.stderr)
    print(json.dumps({"theorem": a.theorem, "trials": a.trials, **report.counts}))
    return OK if report.ok else FALSIFIED


def cmd_seq(a) -> int:
    try:
        value = sequences.table_row(a.name, a.index, a.second)
    except KeyError:
        raise UsageError(f"unknown sequence {a.name!r}; known: {', '.join(sorted(sequences.SEQUENCES))}") from None
    except ValueError as e:
        raise UsageError(str(e)) from None
    print(json.dumps(value))
    return OK


def cmd_check_cert(a) -> int:
    emb = _load_embedding(a.embedding)
    try:
        cert = LinkCertificate.from_json(Path(a.cert).read_text())
    except (OSError, ValueError, KeyError) as e:
        raise UsageError(f"cannot read certificate {a.cert}: {e}") from None
    check = verify_certificate(emb, cert)
    print(json.dumps({"ok": check.ok, "problems": check.problems, "linkingMatrix": check.matrix}))
    return OK if check.ok else FALSIFIED


def build_parser() -> argparse.ArgumentParser:
    engines = ", ".join(sorted(ENGINES) + sorted(ALIASES))
    p = argparse.ArgumentParser(prog="linkcert", description="Certified links in embedded complete graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        if seed:
            sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--range", type=int, default=10**6, help="coordinate range M")

    def budget(sp):
        sp.add_argument("--max-size", type=int, help="largest component a search considers")
        sp.add_argument("--max-tuples", type=int, help="candidate tuples a search may examine")
        sp.add_argument("--time-cap", type=float, help="seconds a search may run")

    sp = sub.add_parser("gen", help="emit a random embedding as JSON")
    sp.add_argument("--n", type=int, required=True)
    common(sp)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("lk", help="linking number of two cycles")
    sp.add_argument("--embedding", required=True)
    sp.add_argument("--cycle", type=_cycle, action="append", required=True)
    sp.set_defaults(func=cmd_lk)

    sp = sub.add_parser("construct", help="run one engine and emit its certificate", epilog=f"theorems: {engines}")
    sp.add_argument("theorem", help="theorem id, e.g. mod3 or mod2-whitehead(r=2)")
    sp.add_argument("--n", type=int, help="graph size (default: the theorem's requirement)")
    sp.add_argument("--embedding", help="use this embedding instead of a random one")
    common(sp)
    budget(sp)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="run a seeded campaign", epilog=f"theorems: {engines}")
    sp.add_argument("--theorem", required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--out", help="directory for certificates and report.csv")
    sp.add_argument("--workers", type=int, help="parallel workers (default: $LINKCERT_WORKERS or 1)")
    common(sp)
    budget(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("seq", help="print a sequence value as JSON")
    sp.add_argument("--name", required=True, help="alpha, alpha_prime, beta, beta_prime, gamma, ...")
    sp.add_argument("--index", type=int, required=True)
    sp.add_argument("--second", type=int, help="second index (beta_prime r, vertex_budget target)")
    sp.set_defaults(func=cmd_seq)

    sp = sub.add_parser("check-cert", help="re-verify a certificate against an embedding")
    sp.add_argument("--embedding", required=True)
    sp.add_argument("--cert", required=True)
    sp.set_defaults(func=cmd_check_cert)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return args.func(args)
    except (UsageError, KeyError, ValueError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
