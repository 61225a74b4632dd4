"""Command-line interface.

Exit codes: 0 success/yes, 1 no, 2 usage or input error, 3 undecided (the
solver hit its node budget). The MIMRED_BUDGET environment variable overrides
the default node budget; an explicit --node-budget flag wins over both.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import figures, serialize
from .graph_core import mim_value
from .oracles import BudgetExceeded, solve_fvs, solve_mcc, solve_mif
from .reduction import build_reduction
from .verification import (
    LEVELS,
    random_instance,
    run_verification,
    summarize,
)
from .widths import mimw, mimw_of_order, prefix_cut_profile

EXIT_YES = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_UNDECIDED = 3


def _write_or_print(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.k < 2 or args.p < 1 or not 0.0 <= args.q <= 1.0:
        raise ValueError("need k >= 2, p >= 1 and q in [0, 1]")
    inst = random_instance(args.k, args.p, args.q, args.seed)
    _write_or_print(serialize.dumps(serialize.instance_to_obj(inst)), args.out)
    if args.label:
        witness = solve_mcc(inst)
        print(f"label: {'yes' if witness else 'no'}")
    return EXIT_YES


def _cmd_reduce(args: argparse.Namespace) -> int:
    inst = serialize.instance_from_obj(serialize.read_json(args.instance))
    out = build_reduction(inst)
    serialize.write_json(args.out, serialize.bundle_to_obj(out))
    width = mimw_of_order(out.g_prime, out.order)
    bound = 4 * inst.k * (inst.k - 1) + 1
    print(f"k' = {out.k_prime}")
    print(f"|V(G')| = {len(out.g_prime.vertices)}")
    verdict = "OK" if width <= bound else "EXCEEDED"
    print(f"certified linear mim-width = {width} (bound {bound}: {verdict})")
    return EXIT_YES


def _cmd_mimw(args: argparse.Namespace) -> int:
    g = serialize.graph_from_obj(serialize.read_json(args.graph))
    obj = serialize.read_json(args.decomposition)
    if "order" in obj:
        value = mimw_of_order(g, tuple(obj["order"]))
    else:
        value = mimw(g, serialize.decomposition_from_obj(obj))
    print(value)
    return EXIT_YES


def _cmd_solve_mcc(args: argparse.Namespace) -> int:
    inst = serialize.instance_from_obj(serialize.read_json(args.instance))
    witness = solve_mcc(inst)
    if witness is None:
        print("no")
        return EXIT_NO
    _write_or_print(serialize.dumps(list(witness.assignment)), args.out)
    return EXIT_YES


def _cmd_solve_mif(args: argparse.Namespace) -> int:
    g = serialize.graph_from_obj(serialize.read_json(args.graph))
    witness = solve_mif(g, args.size, args.node_budget)
    if witness is None:
        print("no")
        return EXIT_NO
    _write_or_print(serialize.dumps(sorted(witness.vertices)), args.out)
    return EXIT_YES


def _cmd_solve_fvs(args: argparse.Namespace) -> int:
    g = serialize.graph_from_obj(serialize.read_json(args.graph))
    witness = solve_fvs(g, args.budget, args.node_budget)
    if witness is None:
        print("no")
        return EXIT_NO
    _write_or_print(serialize.dumps(sorted(witness)), args.out)
    return EXIT_YES


def _cmd_verify(args: argparse.Namespace) -> int:
    reports = run_verification(
        args.level,
        seed=args.seed,
        kmax=args.kmax,
        pmax=args.pmax,
        count=args.count,
        jobs=args.jobs,
        node_budget=args.node_budget,
    )
    lines = "".join(
        json.dumps(serialize.report_to_obj(r), sort_keys=True) + "\n" for r in reports
    )
    summary = summarize(reports)
    if args.out_dir:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "report.jsonl").write_text(lines, encoding="utf-8")
        with (out_dir / "report.csv").open("w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["check", "instance", "status"])
            for r in reports:
                writer.writerow([r.check, r.instance, r.status])
        figures.save_report_summary(summary, out_dir / "summary.png")
        _save_profiles(reports, out_dir)
    else:
        sys.stdout.write(lines)
    totals = {"pass": 0, "fail": 0, "undecided": 0}
    for counts in summary.values():
        for status, n in counts.items():
            totals[status] += n
    stream = sys.stderr if not args.out_dir else sys.stdout
    print(
        f"level={args.level} seed={args.seed} kmax={args.kmax} pmax={args.pmax}: "
        f"{len(reports)} checks, {totals['pass']} pass, {totals['fail']} fail, "
        f"{totals['undecided']} undecided",
        file=stream,
    )
    for check in sorted(summary):
        counts = summary[check]
        print(
            f"  {check}: {counts['pass']} pass, {counts['fail']} fail, "
            f"{counts['undecided']} undecided",
            file=stream,
        )
    if totals["fail"]:
        return EXIT_NO
    if totals["undecided"]:
        return EXIT_UNDECIDED
    return EXIT_YES


def _save_profiles(reports, out_dir: Path) -> None:
    # One cut-profile figure per (k, p) combination: the first certified order.
    seen: set[str] = set()
    for r in reports:
        if r.check != "width_bound" or not r.details:
            continue
        key = r.instance.split(",q=")[0]
        if key in seen:
            continue
        seen.add(key)
        stem = "".join(c if c.isalnum() else "_" for c in key).strip("_")
        figures.save_cut_profile(
            r.details["profile"],
            r.details["bound"],
            f"{r.instance}: mimw {r.details['mimw']}",
            out_dir / f"profile_{stem}.png",
        )


def _cmd_export_dot(args: argparse.Namespace) -> int:
    if not args.out_dir:
        raise ValueError("--out-dir must not be empty")
    out = serialize.bundle_from_obj(serialize.read_json(args.bundle))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    classes = {v: c.kind for v, c in out.name_index.items()}
    (out_dir / "g_prime.dot").write_text(
        serialize.graph_to_dot(out.g_prime, classes), encoding="utf-8"
    )
    (out_dir / "h_sub.dot").write_text(
        serialize.multigraph_to_dot(out.h_sub, frozenset(out.epsilon_hosts)),
        encoding="utf-8",
    )
    (out_dir / "k_pattern.dot").write_text(
        serialize.multigraph_to_dot(out.k_pattern), encoding="utf-8"
    )
    print(f"wrote g_prime.dot, h_sub.dot, k_pattern.dot to {out_dir}")
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mimred",
        description="Clique-to-induced-forest reduction toolkit with exact width certification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a seeded random instance")
    gen.add_argument("--k", type=int, required=True, help="number of parts (>= 2)")
    gen.add_argument("--p", type=int, required=True, help="part size (>= 1)")
    gen.add_argument("--q", type=float, default=0.5, help="cross-pair edge probability")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", help="output path (stdout when omitted)")
    gen.add_argument("--label", action="store_true", help="also print the oracle's yes/no label")
    gen.set_defaults(func=_cmd_gen)

    reduce_cmd = sub.add_parser("reduce", help="run the reduction on an instance file")
    reduce_cmd.add_argument("--instance", required=True)
    reduce_cmd.add_argument("--out", required=True, help="bundle output path")
    reduce_cmd.set_defaults(func=_cmd_reduce)

    mimw_cmd = sub.add_parser("mimw", help="exact mim-width of a decomposition")
    mimw_cmd.add_argument("--graph", required=True)
    mimw_cmd.add_argument(
        "--decomposition",
        required=True,
        help='JSON with either {"order": [...]} or {"tree_edges": ..., "leaf_map": ...}',
    )
    mimw_cmd.set_defaults(func=_cmd_mimw)

    mcc = sub.add_parser("solve-mcc", help="exact multicolored clique")
    mcc.add_argument("--instance", required=True)
    mcc.add_argument("--out", help="witness output path (stdout when omitted)")
    mcc.set_defaults(func=_cmd_solve_mcc)

    mif = sub.add_parser("solve-mif", help="exact induced forest of a given size")
    mif.add_argument("--graph", required=True)
    mif.add_argument("--size", type=int, required=True)
    mif.add_argument("--out")
    mif.add_argument("--node-budget", type=int, help="search node budget")
    mif.set_defaults(func=_cmd_solve_mif)

    fvs = sub.add_parser("solve-fvs", help="exact feedback vertex set of a given size")
    fvs.add_argument("--graph", required=True)
    fvs.add_argument("--budget", type=int, required=True, help="deletion set size")
    fvs.add_argument("--out")
    fvs.add_argument("--node-budget", type=int)
    fvs.set_defaults(func=_cmd_solve_fvs)

    verify = sub.add_parser("verify", help="run the check suite over a seeded corpus")
    verify.add_argument("--level", choices=LEVELS, default="structure")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--kmax", type=int, default=3)
    verify.add_argument("--pmax", type=int, default=3)
    verify.add_argument("--count", type=int, default=20, help="random instances per (k, p)")
    verify.add_argument("--jobs", type=int, default=1, help="worker processes")
    verify.add_argument("--node-budget", type=int)
    verify.add_argument(
        "--out-dir",
        help="write report.jsonl, report.csv and figures here instead of stdout",
    )
    verify.set_defaults(func=_cmd_verify)

    export = sub.add_parser("export-dot", help="DOT files for a reduction bundle")
    export.add_argument("--bundle", required=True)
    export.add_argument("--out-dir", required=True)
    export.set_defaults(func=_cmd_export_dot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
