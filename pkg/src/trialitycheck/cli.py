"""Command-line entry point.

Exit codes: 0 when every row is verified or inapplicable, 1 when any row is
violated or errored, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Any, Iterable

from . import charsum as cs
from . import ledger
from .field_tower import DEFAULT_SIZE_CAP, PrimePower, prime_powers_upto

ROW_KEYS = ("kind", "id", "q", "mode", "status", "y", "m", "scalar_product", "witness", "elapsed_ms")
DEFAULT_REPORT = ".trialitycheck-last.jsonl"
MAX_TERMS = 10**10


class UsageError(Exception):
    pass


def make_row(**fields: Any) -> dict:
    return {k: fields.get(k) for k in ROW_KEYS}


def _json_safe(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (int, float, str, bool)) or obj is None:
        return obj
    return str(obj)


def dumps_row(row: dict) -> str:
    return json.dumps(_json_safe(row), separators=(", ", ": "))


def _parse_q(value: str | int) -> PrimePower:
    try:
        return PrimePower.from_q(int(value))
    except ValueError as exc:
        raise UsageError(f"invalid q: {exc}") from None


def appendix_row(row: cs.AppendixRow, elapsed: float | None) -> dict:
    witness: dict[str, Any] = {}
    r = row.result
    if r is not None and r.float_estimate is not None:
        witness["float_estimate"] = round(r.float_estimate, 6)
        witness["float_imag"] = round(r.float_imag, 6)
    if row.matches_remark is not None:
        witness["matches_remark"] = row.matches_remark
    if row.reason:
        witness["reason"] = row.reason
    return make_row(
        kind="appendix", id=row.spec.label, q=row.spec.q.q, mode="exact", status=row.status,
        y=r and r.y, m=r and r.m, scalar_product=r and r.scalar_product,
        witness=witness, elapsed_ms=elapsed,
    )


def ledger_row(v: ledger.Verdict, elapsed: float | None) -> dict:
    return make_row(kind="ledger", id=v.case_id, q=v.q, mode=v.mode, status=v.status,
                    witness=v.details, elapsed_ms=elapsed)


def _ms(t0: float, timings: bool) -> float | None:
    return round((time.perf_counter() - t0) * 1000, 3) if timings else None


def run_verify_appendix(args: argparse.Namespace) -> list[dict]:
    pp = _parse_q(args.q)
    if cs.workload_terms(pp.q) > MAX_TERMS and not args.force:
        raise UsageError(f"q={pp.q} needs about {cs.workload_terms(pp.q):.2e} terms; pass --force")
    ctx = _context(pp, args)
    with_float = False if args.no_float else None
    rows = []
    for fam in cs.families_for(pp):
        for k in cs.k_range(pp, fam):
            t0 = time.perf_counter()
            rep = cs.verify_one(cs.CharSumSpec(pp, fam, k), ctx, with_float=with_float)
            rows.append(appendix_row(rep, _ms(t0, args.timings)))
    return rows


def _context(pp: PrimePower, args: argparse.Namespace) -> cs.SumContext:
    try:
        return cs.SumContext.build(pp, size_cap=args.size_cap, threads=args.threads)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def run_charsum(args: argparse.Namespace) -> list[dict]:
    pp = _parse_q(args.q)
    try:
        spec = cs.CharSumSpec(pp, cs.Family.parse(args.family), args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ctx = _context(pp, args)
    t0 = time.perf_counter()
    rep = cs.verify_one(spec, ctx, with_float=False if args.no_float else None)
    return [appendix_row(rep, _ms(t0, args.timings))]


def run_verify_reduction(args: argparse.Namespace) -> list[dict]:
    rows = []
    cases = ledger.ledger_cases()
    if args.symbolic:
        for case in cases:
            t0 = time.perf_counter()
            rows.append(ledger_row(ledger.check_case_symbolic(case.id), _ms(t0, args.timings)))
        return rows
    if args.q_max < 2:
        raise UsageError("--q-max must be at least 2")
    for case in cases:
        for q in prime_powers_upto(args.q_max):
            t0 = time.perf_counter()
            rows.append(ledger_row(ledger.check_case(case.id, q), _ms(t0, args.timings)))
    return rows


def load_rows(path: Path) -> list[dict]:
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise UsageError(f"no report at {path}") from None
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, (dict, list)):
        s = json.dumps(v, separators=(",", ":"))
        return (s[:117] + "...") if len(s) > 120 else s
    return str(v)


def render_markdown(rows: Iterable[dict]) -> str:
    rows = list(rows)
    out = []
    cols = {
        "appendix": ("id", "q", "status", "y", "m", "scalar_product", "witness"),
        "ledger": ("id", "q", "mode", "status", "witness"),
    }
    for kind in ("appendix", "ledger"):
        sel = [r for r in rows if r.get("kind") == kind]
        if not sel:
            continue
        hdr = cols[kind]
        out.append(f"## {kind}\n")
        out.append("| " + " | ".join(hdr) + " |")
        out.append("|" + "---|" * len(hdr))
        for r in sel:
            out.append("| " + " | ".join(_cell(r.get(c)).replace("|", "\\|") for c in hdr) + " |")
        out.append("")
    return "\n".join(out)


def exit_code(rows: Iterable[dict]) -> int:
    return 1 if any(r.get("status") in ("violated", "error") for r in rows) else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "markdown"), default="json")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: $TRIALITYCHECK_THREADS or CPU count)")
    common.add_argument("--size-cap", type=int, default=DEFAULT_SIZE_CAP, help="largest field size allowed")
    common.add_argument("--report-file", type=Path,
                        default=Path(os.environ.get("TRIALITYCHECK_REPORT", DEFAULT_REPORT)))
    common.add_argument("--timings", action="store_true", help="fill elapsed_ms (breaks byte-identical output)")

    parser = argparse.ArgumentParser(prog="trialitycheck", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-appendix", parents=[common], help="check every character sum at one q")
    p.add_argument("--q", required=True)
    p.add_argument("--force", action="store_true", help="ignore the workload guardrail")
    p.add_argument("--no-float", action="store_true", help="skip the floating-point cross-check")

    p = sub.add_parser("verify-reduction", parents=[common], help="check the degree-bound ledger")
    p.add_argument("--q-max", type=int, default=100)
    p.add_argument("--symbolic", action="store_true", help="certify polynomial cases for all q")

    p = sub.add_parser("charsum", parents=[common], help="evaluate one character sum")
    p.add_argument("--q", required=True)
    p.add_argument("--family", required=True, help="chi16, chi18_19 or chi20")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--no-float", action="store_true")

    p = sub.add_parser("report", parents=[common], help="render the last run as markdown")
    p.add_argument("--input", type=Path, default=None, help="JSON-lines report (default: --report-file)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "report":
            rows = load_rows(args.input or args.report_file)
            sys.stdout.write(render_markdown(rows) + "\n")
            return exit_code(rows)
        runner = {
            "verify-appendix": run_verify_appendix,
            "verify-reduction": run_verify_reduction,
            "charsum": run_charsum,
        }[args.command]
        rows = runner(args)
    except UsageError as exc:
        print(f"trialitycheck: error: {exc}", file=sys.stderr)
        return 2
    lines = [dumps_row(r) for r in rows]
    try:
        args.report_file.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    except OSError as exc:
        print(f"trialitycheck: warning: could not write {args.report_file}: {exc}", file=sys.stderr)
    if args.format == "json":
        sys.stdout.write("".join(line + "\n" for line in lines))
    else:
        sys.stdout.write(render_markdown(rows) + "\n")
    return exit_code(rows)


if __name__ == "__main__":
    sys.exit(main())
