"""Command-line interface: ``fw rv``, ``fw rv-table``, ``fw group`` and ``fw system``.

Exit codes: 0 when every selected check passes, 2 when a mathematical check
fails, 3 on bad input or unsupported requests.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import weights as W
from .catalog import CatalogError, RVCatalog, emit_tables, render_table
from .catalog.tables import TABLE_PRIMES
from .config import CapExceeded, override_caps
from .fusion import FusionError, GroupRealized
from .groups import GroupInputError, is_normal, load_group, subgroups_up_to_conjugacy
from .loader import load_fusion_system
from .modular import UnsupportedError, ZEvaluator

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 2, 3
FORMATS = ("json", "csv", "md")
CHECKS = ("main2", "section5", "appendix", "reindex", "conjectures", "m-vs-mstar")
INPUT_ERRORS = (CatalogError, GroupInputError, FusionError, UnsupportedError, CapExceeded, FileNotFoundError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % q for q in range(2, int(n**0.5) + 1))


def _prime(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not _is_prime(n):
        raise argparse.ArgumentTypeError(f"{n} is not prime")
    return n


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n <= 0:
        raise argparse.ArgumentTypeError("caps must be positive")
    return n


def _checks(text: str) -> list[str]:
    names = [c.strip() for c in text.split(",") if c.strip()]
    bad = [c for c in names if c not in CHECKS]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown checks {bad}; choose from {', '.join(CHECKS)}")
    return names


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--cap-group-order", type=_positive)
    common.add_argument("--cap-subgroups", type=_positive)
    common.add_argument("--cap-chain-sylow", type=_positive,
                        help="largest |S| for which chains of subgroups of S are enumerated")
    common.add_argument("--seedless", action="store_true",
                        help="accepted for compatibility; every algorithm here is deterministic")

    parser = _Parser(prog="fw", description="Alternating weight sums for saturated fusion systems.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    rv = sub.add_parser("rv", parents=[common], help="report for one catalog system")
    rv.add_argument("--system", required=True)
    rv.add_argument("--prime", type=_prime, required=True)

    table = sub.add_parser("rv-table", parents=[common], help="recompute the catalog table and diff it")
    table.add_argument("--prime", type=_prime, action="append", help="repeatable; default 3, 5, 7, 13")
    table.add_argument("--every-prime", action="store_true",
                       help="instantiate generic rows at every legal prime, not only the smallest")

    grp = sub.add_parser("group", parents=[common], help="checks on the fusion system of a group")
    grp.add_argument("group_file")
    grp.add_argument("--prime", type=_prime, required=True)
    grp.add_argument("--checks", type=_checks, default=["main2"])

    system = sub.add_parser("system", parents=[common], help="run a fusion-system description file")
    system.add_argument("system_file")
    system.add_argument("--checks", type=_checks, default=["main2"])
    return parser


# --- output ----------------------------------------------------------------------

def _flatten(data, prefix: str = "") -> list[tuple[str, object]]:
    if isinstance(data, dict):
        out = []
        for k in sorted(data):
            out.extend(_flatten(data[k], f"{prefix}.{k}" if prefix else str(k)))
        return out
    if isinstance(data, list) and all(not isinstance(x, (dict, list)) for x in data):
        return [(prefix, " ".join(map(str, data)))]
    if isinstance(data, list):
        out = []
        for i, x in enumerate(data):
            out.extend(_flatten(x, f"{prefix}[{i}]"))
        return out
    return [(prefix, data)]


def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    summary = {k: v for k, v in report.items() if k not in ("per_Q", "z_provenance")}
    rows = _flatten(summary)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value"])
        writer.writerows(rows)
        return buf.getvalue()
    lines = ["| key | value |", "|---|---|"] + [f"| {k} | {v} |" for k, v in rows]
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# --- commands ----------------------------------------------------------------------

def rv_report(F: RVCatalog) -> tuple[dict, bool]:
    """Weight report plus the closed-form cross-checks; the flag is False if one fails."""
    zeval = ZEvaluator(F.p)
    report = W.weight_report(F, zeval)
    checks = {
        "m_star_eq_k": {"lhs": report.m_star, "rhs": report.k, "pass": report.m_star == report.k},
        "w_closed_form": {"lhs": report.w, "rhs": F.w_closed_form(zeval), "pass": report.w == F.w_closed_form(zeval)},
    }
    for d in range(4):
        cf = F.m_d_closed_form(d, zeval)
        checks[f"m_{d}_closed_form"] = {"lhs": report.m_by_defect[d], "rhs": cf, "pass": report.m_by_defect[d] == cf}
    radical_d2 = [q["w_Q_by_defect"]["2"] for q in report.per_Q if q["label"] != "S" and q["radical"]]
    checks["radical_wQ_defect2_zero"] = {"values": radical_d2, "pass": all(v == 0 for v in radical_d2)}
    checks["conjectures"] = {"pass": all(v["pass"] for v in report.conjectures.values())}
    report.checks = checks
    return report.to_dict(), all(c["pass"] for c in checks.values())


def _normal_p_subgroups(G, p):
    return [Q for Q in subgroups_up_to_conjugacy(G, p=p) if Q.order > 1 and is_normal(G, Q)]


def group_report(F: GroupRealized, checks: list[str]) -> tuple[dict, bool]:
    zeval = ZEvaluator(F.p)
    report = W.weight_report(F, zeval)
    results: dict = {}
    for name in checks:
        if name == "main2":
            results[name] = {"m_star": report.m_star, "k": report.k, "pass": report.m_star == report.k}
        elif name == "section5":
            sums = W.section5_sums(F, zeval)
            results[name] = {"sums": sums, "k": report.k, "pass": set(sums.values()) == {report.k}}
        elif name == "appendix":
            pairs = []
            for Q in _normal_p_subgroups(F.G, F.p):
                r = W.appendix_identity_check(F.G, Q, F.p)
                r["Q_order"] = Q.order
                pairs.append(r)
            results[name] = {"pairs": pairs, "pass": all(r["pass"] for r in pairs),
                             **({} if pairs else {"status": "no nontrivial normal p-subgroup"})}
        elif name == "reindex":
            per = []
            for ld in W.local_data_of(F):
                sums = W.reindex_sums(ld, F.p, zeval)
                target = W.wQ_star(ld, F.p, zeval)
                per.append({"label": ld.label, "sums": sums, "w_star_Q": target,
                            "pass": set(sums.values()) == {target}})
            results[name] = {"per_Q": per, "pass": all(r["pass"] for r in per)}
        elif name == "conjectures":
            results[name] = {"pass": all(v["pass"] for v in report.conjectures.values())}
        elif name == "m-vs-mstar":
            # Empirical: a difference is reported as a finding and never fails the run.
            results[name] = {"m": report.m, "m_star": report.m_star, "equal": report.m == report.m_star,
                             "pass": True}
    report.checks = results
    return report.to_dict(), all(r["pass"] for r in results.values())


def _run(args) -> int:
    if args.command == "rv":
        F = RVCatalog.named(args.system, args.prime)
        report, ok = rv_report(F)
        _emit(render_report(report, args.format), args.out)
        return EXIT_OK if ok else EXIT_FAIL
    if args.command == "rv-table":
        result = emit_tables(args.prime or TABLE_PRIMES, every_prime=args.every_prime)
        if not result["rows"]:
            raise UsageError("no catalog row exists at the requested primes")
        _emit(render_table(result, args.format), args.out)
        for d in result["diffs"]:
            print(f"diff: {d}", file=sys.stderr)
        return EXIT_OK if not result["diffs"] else EXIT_FAIL
    if args.command == "group":
        F = GroupRealized(load_group(args.group_file), args.prime)
        report, ok = group_report(F, args.checks)
    else:
        F = load_fusion_system(args.system_file)
        report, ok = rv_report(F) if F.kind == "rv" else group_report(F, args.checks)
    _emit(render_report(report, args.format), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    caps = {}
    if args.cap_group_order:
        caps["group_order"] = args.cap_group_order
    if args.cap_subgroups:
        caps["subgroups"] = args.cap_subgroups
    if args.cap_chain_sylow:
        caps["chain_sylow_order"] = args.cap_chain_sylow
    try:
        with override_caps(**caps):
            return _run(args)
    except (UsageError, *INPUT_ERRORS) as exc:
        print(f"fw: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
