"""Command-line driver.

Exit codes: 0 ok/verified, 1 refuted, 2 usage or parse error, 3 infeasible
parameters, 4 budget exceeded or partial result.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .constructions import InfeasibleError, extremal_irreducible, simon_extremal
from .enumeration import EXHAUSTIVE_MAX_N
from .formats import ParseError, format_vertex_set
from .hypercube import DimensionError, MAX_N, VertexSet, as_subcube, is_irreducible, min_degree
from .measures import (
    TruthTable,
    catalog,
    check_irreducible_corollary,
    check_simon_corollary,
    measure,
)
from .search import AT_LEAST, CANONICAL_BNB, EXACT, EXHAUSTIVE, SearchConfig
from .symmetry import CANONICAL_MAX_N
from .verify import (
    CLAIMS,
    DEFAULT_FANCY_SAMPLES,
    DEFAULT_SEED,
    INFEASIBLE,
    MAIN_MAX_N,
    PARTIAL,
    REFUTED,
    Certificate,
    verify_claim,
    verify_search,
)

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_BUDGET = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _threads(value: Optional[int]) -> int:
    if value is not None:
        return value
    env = os.environ.get("CUBESENSE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"CUBESENSE_THREADS must be an integer, got {env!r}") from None
    return 1


def _emit(text: str, output: Optional[str]) -> None:
    if output and output != "-":
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _fmt(value: Any) -> str:
    return "-" if value is None else str(value)


# ---------------------------------------------------------------------------
# measure
# ---------------------------------------------------------------------------


def _load_function(args) -> TruthTable:
    if args.fn:
        try:
            return catalog(args.fn)
        except (ValueError, DimensionError) as exc:
            raise UsageError(str(exc)) from None
    try:
        return TruthTable.parse(Path(args.input).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from None


def measure_record(f: TruthTable) -> dict[str, Any]:
    rep = measure(f)
    if f.outputs:
        sv = check_simon_corollary(f)
        simon = {
            "status": "pass" if sv.holds else "fail",
            "s1": sv.s1,
            "bound": sv.bound,
            "actual": sv.actual,
            "equality": sv.equality,
            "is_subcube": sv.is_subcube,
        }
    else:
        simon = {"status": "not_applicable", "reason": "f is constant 0"}
    iv = check_irreducible_corollary(f)
    if iv.condition_met:
        irr = {
            "status": "pass" if iv.passed else "fail",
            "s1": iv.s1,
            "bound": str(iv.bound),
            "actual": iv.actual,
        }
    else:
        irr = {"status": "condition_not_met"}
    return {
        "n": f.n,
        "s": rep.s,
        "s0": rep.s0,
        "s1": rep.s1,
        "ones": rep.ones_count,
        "delta": rep.delta_of_one_set,
        "simon": simon,
        "irreducible_bound": irr,
    }


def _measure_table(rec: dict[str, Any]) -> str:
    lines = [
        f"n={rec['n']}  s={rec['s']}  s0={_fmt(rec['s0'])}  s1={_fmt(rec['s1'])}  "
        f"ones={rec['ones']}  delta={_fmt(rec['delta'])}"
    ]
    sv = rec["simon"]
    if sv["status"] == "not_applicable":
        lines.append(f"simon: not-applicable ({sv['reason']})")
    else:
        lines.append(
            f"simon: {sv['status']} ({sv['actual']} >= {sv['bound']}), "
            f"equality={sv['equality']}, subcube={sv['is_subcube']}"
        )
    iv = rec["irreducible_bound"]
    if iv["status"] == "condition_not_met":
        lines.append("irreducible-bound: condition_not_met")
    else:
        # the bound is dyadic, so float() renders it exactly
        shown = float(Fraction(iv["bound"]))
        lines.append(f"irreducible-bound: {iv['status']} ({iv['actual']} >= {shown:g})")
    return "\n".join(lines) + "\n"


def cmd_measure(args) -> int:
    f = _load_function(args)
    rec = measure_record(f)
    text = json.dumps(rec, indent=2) + "\n" if args.format == "json" else _measure_table(rec)
    _emit(text, args.output)
    failed = rec["simon"]["status"] == "fail" or rec["irreducible_bound"]["status"] == "fail"
    return EXIT_REFUTED if failed else EXIT_OK


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------


def set_summary(s: VertexSet) -> dict[str, Any]:
    return {
        "n": s.n,
        "size": len(s),
        "delta": min_degree(s) if s else None,
        "irreducible": is_irreducible(s),
        "subcube": as_subcube(s) is not None,
    }


def cmd_construct(args) -> int:
    if not 0 <= args.n <= MAX_N or not 0 <= args.d <= args.n:
        raise UsageError(f"need 0 <= d <= n <= {MAX_N}, got n={args.n}, d={args.d}")
    if args.simon:
        s = simon_extremal(args.n, args.d)
    else:
        s = extremal_irreducible(args.n, args.d)
    summary = dict(set_summary(s), kind="simon" if args.simon else "irreducible", d=args.d)
    if args.format == "json":
        report = json.dumps(dict(summary, vertices=format_vertex_set(s).splitlines()), indent=2) + "\n"
    else:
        report = (
            f"{summary['kind']} construction n={s.n} d={args.d}: {summary['size']} vertices, "
            f"delta={summary['delta']}, irreducible={summary['irreducible']}, subcube={summary['subcube']}\n"
        )
    if args.output:
        Path(args.output).write_text(format_vertex_set(s))
        sys.stdout.write(report)
    else:
        if args.format == "json":
            sys.stdout.write(report)
        else:
            sys.stdout.write(format_vertex_set(s))
            sys.stderr.write(report)
    return EXIT_OK


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


def _default_strategy(n: int, strategy: Optional[str]) -> str:
    if strategy:
        return strategy
    return EXHAUSTIVE if n <= EXHAUSTIVE_MAX_N else CANONICAL_BNB


def cmd_search(args) -> int:
    strategy = _default_strategy(args.n, args.strategy)
    if args.n > CANONICAL_MAX_N:
        raise UsageError(f"search supports n <= {CANONICAL_MAX_N}")
    if args.n > EXHAUSTIVE_MAX_N and strategy == EXHAUSTIVE:
        raise UsageError(f"exhaustive search supports n <= {EXHAUSTIVE_MAX_N}; use --strategy canonical_bnb")
    if args.n > EXHAUSTIVE_MAX_N and not args.allow_large:
        raise UsageError(f"n > {EXHAUSTIVE_MAX_N} requires --allow-large")
    if not 0 <= args.d <= args.n:
        raise UsageError(f"need 0 <= d <= n, got n={args.n}, d={args.d}")
    cfg = SearchConfig(args.n, args.d, args.degree_mode, args.irreducible, args.budget, strategy)
    cert = verify_search(cfg, _threads(args.threads))
    timing = not args.no_timing
    if args.format == "json":
        text = cert.to_json(timing)
    else:
        head = f"search n={args.n} d={args.d} mode={args.degree_mode} irreducible={args.irreducible}: "
        if cert.verdict == INFEASIBLE:
            text = head + "infeasible\n"
        elif cert.verdict == PARTIAL:
            text = head + f"budget exceeded after {cert.subsets_examined} nodes\n"
        else:
            text = head + f"size {cert.extremal_size}\n" + format_vertex_set(cert.witnesses[0])
    if args.witness_output and cert.witnesses:
        Path(args.witness_output).write_text(format_vertex_set(cert.witnesses[0]))
    _emit(text, args.output)
    return {INFEASIBLE: EXIT_INFEASIBLE, PARTIAL: EXIT_BUDGET}.get(cert.verdict, EXIT_OK)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def certificate_table(cert: Certificate) -> str:
    p = cert.params
    lines = [
        f"claim={cert.claim_id} n={p['n']} strategy={p.get('strategy')} verdict={cert.verdict} "
        f"examined={cert.subsets_examined}" + (f" seed={cert.seed}" if cert.seed is not None else "")
    ]
    det = cert.details
    if cert.claim_id == "main":
        for row in det["per_d"]:
            lines.append(
                f"  d={row['d']} expected={_fmt(row['expected'])} measured={_fmt(row['measured'])} {row['status']}"
            )
    elif cert.claim_id == "gap":
        for d, hist in det["histogram"].items():
            sizes = " ".join(f"{s}:{c}" for s, c in hist.items())
            lines.append(f"  d={d} threshold={det['threshold'][d]} sizes {sizes}")
    elif cert.claim_id == "simon":
        for row in det["per_d"]:
            lines.append(
                f"  d={row['d']} sets={row['sets']} min_size={_fmt(row['min_size'])} "
                f"equality={row['equality_cases']} subcubes={row['subcubes']}"
            )
    elif cert.claim_id == "lemma_minsize":
        for d, r in det["rhs"].items():
            lines.append(f"  d={d} rhs={_fmt(r)} gap_threshold={det['gap_threshold'][d]}")
    elif cert.claim_id == "lemma_extended":
        for d, row in det["per_d"].items():
            lines.append(f"  d'={d} sets={row['sets']} min_size={_fmt(row['min_size'])}")
    elif cert.claim_id == "lemma_fancy":
        lines.append(f"  mode={det['mode']} subcubes={det['subcubes']} violations={det['violations']}")
        if "counterexample_pair" in det:
            cp = det["counterexample_pair"]
            lines.append(
                f"  counterexample G_l={{{', '.join(cp['subcube_vertices'])}}} l={cp['l']} "
                f"d'={cp['d_prime']} |S minus G_l|={cp['removed_size']} bound={cp['bound']}"
            )
    if cert.counterexample is not None:
        lines.append(f"  counterexample S={{{', '.join(cert.counterexample.to_strings())}}}")
    for note in cert.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n"


def _verify_one(claim: str, args, workers: int) -> Certificate:
    n = args.n
    kwargs: dict[str, Any] = {}
    if claim == "main":
        strategy = _default_strategy(n, args.strategy)
        if n > MAIN_MAX_N:
            raise UsageError(f"main verification supports n <= {MAIN_MAX_N}")
        if n > EXHAUSTIVE_MAX_N and strategy == EXHAUSTIVE:
            raise UsageError(f"exhaustive verification supports n <= {EXHAUSTIVE_MAX_N}")
        kwargs = {"strategy": strategy, "budget": args.budget}
        if args.resume:
            kwargs["resume"] = Certificate.from_json(Path(args.resume).read_text())
    else:
        if n > EXHAUSTIVE_MAX_N:
            raise UsageError(f"claim {claim} supports n <= {EXHAUSTIVE_MAX_N} only")
        if args.strategy == CANONICAL_BNB:
            raise UsageError(f"claim {claim} is exhaustive only")
    if claim == "lemma_fancy":
        samples = args.samples
        if samples is None:
            samples = DEFAULT_FANCY_SAMPLES if n >= 4 else 0
        kwargs = {"samples": samples or None, "seed": args.seed}
    return verify_claim(claim, n, workers, **kwargs)


def cmd_verify(args) -> int:
    if args.n < 1:
        raise UsageError("verification needs n >= 1")
    if args.n > EXHAUSTIVE_MAX_N and not args.allow_large:
        raise UsageError(f"n > {EXHAUSTIVE_MAX_N} requires --allow-large (with --budget)")
    claims = CLAIMS if args.claim == "all" else (args.claim.replace("-", "_"),)
    workers = _threads(args.threads)
    certs = [_verify_one(c, args, workers) for c in claims]
    timing = not args.no_timing
    if args.format == "json":
        if len(certs) == 1:
            text = certs[0].to_json(timing)
        else:
            text = json.dumps({"certificates": [c.to_dict(timing) for c in certs]}, indent=2) + "\n"
    else:
        text = "".join(certificate_table(c) for c in certs)
    _emit(text, args.output)
    verdicts = {c.verdict for c in certs}
    if REFUTED in verdicts:
        return EXIT_REFUTED
    if PARTIAL in verdicts:
        return EXIT_BUDGET
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubesense", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, threads: bool = False):
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument("--output", "-o", help="write the result here instead of stdout")
        if threads:
            p.add_argument("--threads", type=int, help="worker threads (default: $CUBESENSE_THREADS or 1)")
            p.add_argument("--no-timing", action="store_true", help="omit elapsed_ms for byte-stable output")

    p = sub.add_parser("measure", help="sensitivity measures of a Boolean function")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--fn", help="catalog name: or:N, and:N, parity:N, const0:N, const1:N")
    src.add_argument("--input", help="truth-table file")
    common(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("construct", help="emit an extremal vertex set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--simon", action="store_true", help="d-subcube of size 2^d")
    kind.add_argument("--irreducible", action="store_true", help="smallest irreducible set")
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", help="minimum-size search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--degree-mode", choices=(EXACT, AT_LEAST), default=EXACT)
    p.add_argument("--irreducible", action="store_true")
    p.add_argument("--budget", type=int, help="search-node budget (canonical_bnb)")
    p.add_argument("--strategy", choices=(EXHAUSTIVE, CANONICAL_BNB))
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--witness-output", help="also write the witness as a vertex-set file")
    common(p, threads=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="verify a claim and write a certificate")
    p.add_argument(
        "--claim",
        required=True,
        choices=("simon", "main", "gap", "lemma-minsize", "lemma-extended", "lemma-fancy", "all"),
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--strategy", choices=(EXHAUSTIVE, CANONICAL_BNB))
    p.add_argument("--budget", type=int, help="search-node budget per d (canonical_bnb)")
    p.add_argument("--allow-large", action="store_true", help="permit n = 5 for the main claim")
    p.add_argument("--resume", help="previous partial main certificate to continue from")
    p.add_argument("--samples", type=int, help="lemma-fancy sample count (0 = exhaustive)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common(p, threads=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (UsageError, DimensionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
