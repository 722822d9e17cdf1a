"""Command line front end.

Exit codes: 0 on success, 1 when an asserted verification check fails,
2 on usage or parameter errors (including the vertex budget).  All
defaults are fixed constants, so a run is reproducible from its command
line alone.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import json

from .builder import DEFAULT_BUDGET, DEFAULT_SEED, BudgetError, build
from .components import components, extract_component
from .coords import t_of
from .cycles import girth
from .field import make_field, poly_str
from .graphio import FORMATS, GraphFileError, export_graph, import_graph
from .verify import instance_summary, verify_all

__all__ = ["RunConfig", "main"]


@dataclass(frozen=True)
class RunConfig:
    """Resolved run parameters shared by the subcommands."""

    command: str
    threads: int
    budget: int | None  # None once --force lifts the cap
    force: bool
    seed: int
    out: str | None = None
    report: str | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        force = bool(getattr(args, "force", False))
        return cls(
            command=args.command,
            threads=getattr(args, "threads", None) or os.cpu_count() or 1,
            budget=None if force else getattr(args, "budget", DEFAULT_BUDGET),
            force=force,
            seed=getattr(args, "seed", DEFAULT_SEED),
            out=getattr(args, "out", None),
            report=getattr(args, "report", None),
        )


def _modulus_arg(text: str):
    return tuple(int(tok) for tok in text.split(","))


def _int_list(text: str):
    return tuple(int(tok) for tok in text.split(","))


def _print_op_table(name: str, tab) -> None:
    q = tab.shape[0]
    w = max(len(str(q - 1)), 1)
    print(f"{name} table:")
    print(" " * w + " | " + " ".join(f"{j:>{w}}" for j in range(q)))
    print("-" * (w + 2) + "+" + "-" * ((w + 1) * q))
    for i in range(q):
        print(f"{i:>{w}} | " + " ".join(f"{int(x):>{w}}" for x in tab[i]))


def cmd_field(args, cfg: RunConfig) -> int:
    spec = make_field(args.q, args.modulus)
    print(f"q = {spec.q} = {spec.p}^{spec.m}")
    print(f"p = {spec.p}")
    print(f"m = {spec.m}")
    tail = " (prime field: plain arithmetic mod p)" if spec.m == 1 else ""
    print(f"modulus = {poly_str(spec.modulus)}{tail}")
    if spec.q <= 16:
        _print_op_table("addition", spec.add_table)
        _print_op_table("multiplication", spec.mul_table)
    return 0


def _built(args, cfg: RunConfig):
    g = build(args.k, args.q, modulus=getattr(args, "modulus", None), budget=cfg.budget)
    if g.requested_k is not None:
        print(f"note: k={g.requested_k} is realized on two coordinates (same graph as k=2)")
    return g


def cmd_build(args, cfg: RunConfig) -> int:
    g = _built(args, cfg)
    print(
        f"D({args.k},{args.q}): {g.n_vertices} vertices "
        f"({g.n_points} points, {g.n_lines} lines), {g.edge_count} edges, {g.q}-regular"
    )
    if cfg.out:
        export_graph(g, cfg.out, args.format)
        print(f"wrote {args.format} file: {cfg.out}")
    return 0


def cmd_components(args, cfg: RunConfig) -> int:
    g = _built(args, cfg)
    lab = components(g, seed=cfg.seed)
    t = t_of(g.k)
    bound = g.q ** (t - 1)
    if args.json:
        obj = {
            "k": g.k,
            "q": g.q,
            "t": t,
            "n_components": lab.n_components,
            "bound": bound,
            "components": [
                {
                    "id": i,
                    "order": int(lab.orders[i]),
                    "size": int(lab.sizes[i]),
                    "invariant": list(lab.invariants[i]),
                }
                for i in range(lab.n_components)
            ],
        }
        print(json.dumps(obj, sort_keys=True))
        return 0
    print(f"N = {lab.n_components} components (lower bound q^(t-1) = {bound})")
    for i in range(lab.n_components):
        iv = list(lab.invariants[i])
        print(f"component {i}: order={int(lab.orders[i])} size={int(lab.sizes[i])} invariant={iv}")
    return 0


def cmd_cd(args, cfg: RunConfig) -> int:
    g = _built(args, cfg)
    lab = components(g, seed=cfg.seed)
    sub, _ = extract_component(g, lab, args.component)
    export_graph(sub, cfg.out, args.format)
    map_path = f"{cfg.out}.map"
    with open(map_path, "w", encoding="utf-8", newline="\n") as fh:
        for new, old in enumerate(sub.vertex_map.tolist()):
            fh.write(f"{new} {old}\n")
    print(
        f"component {args.component} of D({args.k},{args.q}): "
        f"{sub.n_vertices} vertices, {sub.edge_count} edges"
    )
    print(f"wrote {args.format} file: {cfg.out}")
    print(f"wrote id map: {map_path}")
    return 0


def cmd_girth(args, cfg: RunConfig) -> int:
    if args.infile:
        if args.k is not None or args.q is not None or args.cd:
            print("error: --in excludes --k/--q/--cd", file=sys.stderr)
            return 2
        g = import_graph(args.infile)
    else:
        if args.k is None or args.q is None:
            print("error: need --k and --q, or --in PATH", file=sys.stderr)
            return 2
        g = _built(args, cfg)
        if args.cd:
            lab = components(g, seed=cfg.seed)
            g, _ = extract_component(g, lab)
            print(f"canonical component: {g.n_vertices} vertices")
    res = girth(g, max_depth=args.max_depth, threads=cfg.threads)
    if res.mode == "exact":
        if res.girth is None:
            print("acyclic: the graph has no cycle")
        else:
            print(f"girth = {res.girth} (exact)")
    else:
        print(f"girth >= {res.floor} (no cycle up to depth {res.probed_depth})")
    if args.certificate:
        if res.certificate is None:
            print("certificate: none (no cycle found)")
        else:
            print("certificate: " + " ".join(str(v) for v in res.certificate))
    return 0


def cmd_verify(args, cfg: RunConfig) -> int:
    rep = verify_all(
        args.k,
        args.q,
        heavy=args.heavy,
        seed=cfg.seed,
        budget=cfg.budget,
        modulus=args.modulus,
        threads=cfg.threads,
    )
    for c in rep.checks:
        tag = ("PASS" if c.passed else "FAIL") if c.asserted else "info"
        note = f"  [{c.note}]" if c.note else ""
        print(f"{c.id:>4} {tag:<4} {c.claim}: measured {c.measured}{note}")
        if c.asserted and not c.passed:
            print(f"     expected {c.expected}")
    print(f"verdict: {'PASS' if rep.verdict else 'FAIL'}")
    if cfg.report:
        Path(cfg.report).write_text(rep.to_json() + "\n", encoding="utf-8")
        print(f"wrote report: {cfg.report}")
    return 0 if rep.verdict else 1


_TABLE_COLS = ("k", "q", "t", "order", "N", "q^(t-1)", "CD order", "girth", "gamma", "residual")


def cmd_table(args, cfg: RunConfig) -> int:
    rows = []
    for k in args.k_list:
        for q in args.q_list:
            try:
                s = instance_summary(
                    k, q, seed=cfg.seed, budget=cfg.budget, threads=cfg.threads
                )
            except BudgetError:
                rows.append([str(k), str(q)] + ["-"] * 7 + ["over budget"])
                continue
            except ValueError as e:
                rows.append([str(k), str(q)] + ["-"] * 7 + [str(e)])
                continue
            gamma = "-" if s["gamma"] is None else f"{s['gamma']:.4f}"
            rows.append(
                [
                    str(s["k"]),
                    str(q),
                    str(s["t"]),
                    str(s["order"]),
                    str(s["N"]),
                    str(s["bound"]),
                    str(s["cd_order"]),
                    str(s["girth"]),
                    gamma,
                    f"{s['residual']:.2e}",
                ]
            )
    widths = [
        max(len(_TABLE_COLS[i]), max((len(r[i]) for r in rows), default=0))
        for i in range(len(_TABLE_COLS))
    ]
    print("  ".join(h.rjust(widths[i]) for i, h in enumerate(_TABLE_COLS)))
    for r in rows:
        print("  ".join(r[i].rjust(widths[i]) for i in range(len(_TABLE_COLS))))
    return 0


def _add_run_flags(p: argparse.ArgumentParser, *, seed=True) -> None:
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="vertex cap (default 2^26)")
    p.add_argument("--force", action="store_true", help="lift the vertex budget")
    p.add_argument("--threads", type=int, default=None, help="worker threads (default: all cores)")
    if seed:
        p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED, help="sampling seed")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dkq",
        description="Build the bipartite graphs D(k,q), inspect their components, "
        "compute exact girth, and check the structural claims.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="print GF(q) parameters and op tables")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--modulus", type=_modulus_arg, metavar="c0,c1,...", default=None)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("build", help="build D(k,q) and optionally export it")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--modulus", type=_modulus_arg, metavar="c0,c1,...", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=FORMATS, default="edgelist")
    _add_run_flags(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("components", help="connected components and invariants")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--modulus", type=_modulus_arg, metavar="c0,c1,...", default=None)
    p.add_argument("--json", action="store_true")
    _add_run_flags(p)
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("cd", help="export one connected component plus an id map")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--modulus", type=_modulus_arg, metavar="c0,c1,...", default=None)
    p.add_argument("--component", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=FORMATS, default="edgelist")
    _add_run_flags(p)
    p.set_defaults(func=cmd_cd)

    p = sub.add_parser("girth", help="exact girth or a certified lower bound")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--modulus", type=_modulus_arg, metavar="c0,c1,...", default=None)
    p.add_argument("--cd", action="store_true", help="measure the canonical component")
    p.add_argument("--in", dest="infile", default=None, help="previously exported graph file")
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--certificate", action="store_true", help="print a shortest cycle")
    _add_run_flags(p)
    p.set_defaults(func=cmd_girth)

    p = sub.add_parser("verify", help="run the claim checks C1..C12")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--modulus", type=_modulus_arg, metavar="c0,c1,...", default=None)
    p.add_argument("--heavy", action="store_true", help="allow long exact girth runs")
    p.add_argument("--report", default=None, help="write the JSON report here")
    _add_run_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="summary table over a (k, q) grid")
    p.add_argument("--k-list", type=_int_list, required=True, metavar="K1,K2,...")
    p.add_argument("--q-list", type=_int_list, required=True, metavar="Q1,Q2,...")
    _add_run_flags(p)
    p.set_defaults(func=cmd_table)

    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        # argparse exits 0 for --help, 2 for usage errors
        return 0 if e.code in (0, None) else 2
    cfg = RunConfig.from_args(args)
    try:
        return args.func(args, cfg)
    except BudgetError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
