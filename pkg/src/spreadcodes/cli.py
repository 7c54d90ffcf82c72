"""Command-line front end: ``spreadcodes {tables,simulate,decode,verify}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from spreadcodes import count, oracle
from spreadcodes.errors import BudgetExceededError, DecodingError
from spreadcodes.experiment import ConfigError, ExperimentConfig, default_model, parse_code, run_experiment
from spreadcodes.hybrid import HybridCode, hybrid_decode_cec
from spreadcodes.linalg import ErasableMatrix, format_matrix, parse_matrix
from spreadcodes.spread import SpreadCode

NAMED_TABLES = ("ex19a", "ex19b", "deletions", "hybspr")


def _write(text: str, out: str | None) -> None:
    if out and out != "-":
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[dict], fieldnames: list[str] | None = None) -> str:
    buf = io.StringIO()
    fieldnames = fieldnames or (list(rows[0]) if rows else [])
    w = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


# --- tables -------------------------------------------------------------------------

def table_rows(name: str) -> list[dict]:
    if name == "ex19a":
        return [r.as_dict() for r in count.comparison_table(extra=1)]
    if name == "ex19b":
        return [r.as_dict() for r in count.comparison_table(extra=2)]
    if name == "deletions":
        return [r.as_dict() for r in count.deletions_table()]
    if name == "hybspr":
        return [r.as_dict() for r in count.proportion_table()]
    raise ValueError(f"unknown table {name!r}")


def cmd_tables(args) -> int:
    if args.counts:
        rows = [row for k in args.k for row in count.counts_series(k, range(2, args.max_m + 1))]
    else:
        rows = table_rows(args.paper_table)
    if args.format == "json":
        _write(json.dumps(rows, indent=2) + "\n", args.out)
    else:
        _write(_csv(rows), args.out)
    return 0


# --- simulate -----------------------------------------------------------------------

def _erasures(text: str) -> int | None:
    if text == "random":
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("--erasures takes an integer or 'random'") from None


def cmd_simulate(args) -> int:
    if args.code is None:
        if args.trials:
            raise ConfigError("--code is required unless --trials is 0")
        args.code = "spread:q=2,k=2,m=2"
    cfg = ExperimentConfig(
        code=args.code,
        model=args.model,
        erasures=args.erasures,
        placement=args.placement,
        deletions=args.deletions,
        trials=args.trials,
        seed=args.seed,
        orient=args.orient,
    )
    report = run_experiment(cfg, workers=args.workers)
    summary = report.summary(timing=args.timing)
    if args.format == "json":
        doc = {
            "config": {**cfg.__dict__, "model": report.model},
            "summary": summary,
            "trials": [r.row(args.timing) for r in report.results],
        }
        _write(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        names = ["index", "message", "weight", "erased_columns", "status", "detail"]
        if args.timing:
            names.append("decode_ms")
        _write(_csv([r.row(args.timing) for r in report.results], names), args.out)
    print(json.dumps(summary), file=sys.stderr)
    return 0


# --- decode -------------------------------------------------------------------------

def decode_text(code: SpreadCode | HybridCode, model: str, text: str) -> str:
    """Decode one observation given in the matrix text format; return the report."""
    from spreadcodes.decode import decode_cec_report, decode_cec_with_deletions_report, decode_rec

    R = parse_matrix(text, code.field)
    if R.ncols != code.n:
        raise ConfigError(f"observation has {R.ncols} columns, code length is {code.n}")
    if model == "hybrid-cec":
        U = hybrid_decode_cec(code, R)
        return "subspace:\n" + format_matrix(U.basis) + "\n"
    if model == "rec":
        if isinstance(R, ErasableMatrix):
            raise ConfigError("REC observations contain no erasures; erased rows are simply absent")
        point, lines = decode_rec(code, R), []
    else:
        report = (decode_cec_report if model == "cec" else decode_cec_with_deletions_report)(code, R)
        point = report.point
        lines = [f"reference block: {report.reference_block}", f"deletions: {report.deletions}"]
    return "\n".join(
        [f"point: {point}", f"coefficients: {point.coefficient_form()}", *lines, "codeword:",
         format_matrix(code.encode(point), block=code.k)]
    ) + "\n"


def cmd_decode(args) -> int:
    code = parse_code(args.code, args.model, args.orient)
    model = args.model or default_model(code)
    if args.file == "-":
        text = sys.stdin.read()
    else:
        with open(args.file) as fh:
            text = fh.read()
    try:
        out = decode_text(code, model, text)
    except DecodingError as exc:
        print(f"decoding failed ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 1
    _write(out, args.out)
    return 0


# --- verify -------------------------------------------------------------------------

def _entry(params: dict, formula, observed, match: bool) -> dict:
    def plain(x):
        return str(x) if isinstance(x, Fraction) else x

    return {"params": params, "formula": plain(formula), "oracle": plain(observed), "match": match}


def verify_entries(suite: str, budget_bits: int, trials: int, seed: int) -> list[dict]:
    entries = []
    if suite in ("rec", "all"):
        for k, n in [(1, 4), (2, 4), (2, 6), (3, 6), (2, 8)]:
            params = {"check": "rec_count", "q": 2, "k": k, "n": n}
            try:
                got = oracle.oracle_rec_count(2, k, n, max_bits=budget_bits)
            except BudgetExceededError as exc:
                entries.append({"params": params, "skipped": str(exc)})
                continue
            want = count.rec_count(k, n)
            entries.append(_entry(params, want, got, got == want))
    if suite in ("cec", "all"):
        code = SpreadCode.create(2, 2, 2)
        N = count.block_count(2)
        counts = oracle.oracle_cec_counts(code)
        for c in counts:
            want = count.e_ell(N, code.m, c.ell)
            entries.append(_entry({"check": "e_ell lower bound", "point": str(c.point), "ell": c.ell}, want, c.count, c.count >= want))
        avg, want = oracle.average_count(counts), count.e_avg(2, 2, 2, N)
        entries.append(_entry({"check": "e_avg lower bound", "q": 2, "k": 2, "m": 2}, want, avg, avg >= want))
    if suite in ("agreement", "all"):
        runs = [
            ("cec", SpreadCode.create(2, 2, 2), 0, None),
            ("rec", SpreadCode.create(2, 2, 2, transposed=True), 0, None),
            ("cec-del", SpreadCode.create(2, 3, 2, transposed=True), 1, trials),
        ]
        for model, code, r, n_trials in runs:
            rep = oracle.oracle_decoder_agreement(code, model, deletions=r, trials=n_trials, seed=seed)
            params = {"check": "decoder agreement", "code": code.spec(), "model": model, "deletions": r,
                      "trials": "exhaustive" if n_trials is None else n_trials}
            entries.append(_entry(params, "no wrong or missed decodes",
                                  {"checked": rep.checked, "decoded": rep.decoded, "refused": rep.refused,
                                   "wrong": rep.wrong, "missed": rep.missed}, rep.ok))
    return entries


def cmd_verify(args) -> int:
    entries = verify_entries(args.suite, args.budget, args.trials, args.seed)
    _write(json.dumps(entries, indent=2) + "\n", args.out)
    return 0 if all(e.get("match", True) for e in entries) else 1


# --- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spreadcodes", description="Spread and hybrid subspace codes over erasure channels.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tables", help="comparison tables and count series as CSV")
    g = t.add_mutually_exclusive_group(required=True)
    g.add_argument("--paper-table", choices=NAMED_TABLES)
    g.add_argument("--counts", action="store_true", help="REC count and CEC average count series against n")
    t.add_argument("--k", type=int, nargs="+", default=[3, 4], help="block sizes for --counts")
    t.add_argument("--max-m", type=int, default=8)
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.add_argument("--out")
    t.set_defaults(func=cmd_tables)

    s = sub.add_parser("simulate", help="seeded Monte-Carlo trials")
    s.add_argument("--code", help='e.g. "spread:q=2,k=3,m=2" or "hybrid:q=7,n=6,np=4,k=2"')
    s.add_argument("--model", choices=("rec", "cec", "cec-del", "hybrid-cec"))
    s.add_argument("--orient", choices=("P", "T"), help="force the spread orientation (must suit the model)")
    s.add_argument("--erasures", type=_erasures, default=0, help="erased entries per trial, or 'random'")
    s.add_argument("--placement", choices=("uniform", "worst_rec", "worst_cec", "per_block"), default="uniform")
    s.add_argument("--deletions", type=int, default=0, help="rank loss r of the channel matrix")
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--timing", action="store_true", help="include decode times (not reproducible)")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--out")
    s.set_defaults(func=cmd_simulate)

    d = sub.add_parser("decode", help="decode one observation file")
    d.add_argument("file", help="matrix text file, '?' for erasures ('-' for stdin)")
    d.add_argument("--code", required=True)
    d.add_argument("--model", choices=("rec", "cec", "cec-del", "hybrid-cec"))
    d.add_argument("--orient", choices=("P", "T"))
    d.add_argument("--out")
    d.set_defaults(func=cmd_decode)

    v = sub.add_parser("verify", help="check formulas and decoders against brute-force oracles")
    v.add_argument("--suite", choices=("rec", "cec", "agreement", "all"), default="all")
    v.add_argument("--budget", type=int, default=oracle.MAX_PATTERN_BITS, help="max pattern bits k*n to enumerate")
    v.add_argument("--trials", type=int, default=10_000, help="sampled trials for the deletions agreement check")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        parser.exit(2, f"spreadcodes {args.command}: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
