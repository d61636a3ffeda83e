"""Command-line front end.

Exit codes: 0 success, 1 invariant violation, 2 bad arguments, 3 budget
exceeded, 4 I/O failure.  All outputs are deterministic for a fixed
configuration; summaries carry no timestamps.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import bicombing, extremal, metrics, verify
from .config import RunConfig
from .errors import BudgetExceeded, MidpointLabError
from .exports import (
    bound_certificate_to_dict,
    load_or_build,
    separation_to_dict,
    to_jsonable,
    write_counts_csv,
    write_delta_csv,
    write_distance_csv,
    write_dot,
    write_json,
    write_manifest,
)
from .graphs import BuildBudget
from .vertex import decode, encode

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_BAD_ARGS = 2
EXIT_BUDGET = 3
EXIT_IO = 4


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="flat key=value config file; flags override it")
    p.add_argument("--n0", type=int, help="number of leaves (default 2)")
    p.add_argument("--level", type=int, help="target level n")
    p.add_argument("--power", type=int, help="power exponent m")
    p.add_argument("--k", type=int, help="base level for bounds and ratios")
    p.add_argument("--epsilon", help="rational like 1/32, strictly between 0 and 1/16")
    p.add_argument("--mode", choices=["exact", "greedy", "sampled"], help="search/check mode")
    p.add_argument("--exhaustive", action="store_true", default=None,
                   help="force exhaustive instance sets where applicable")
    p.add_argument("--threads", type=int, help="worker threads (0 = all cores)")
    p.add_argument("--seed", type=int, help="seed for randomized procedures (default 0)")
    p.add_argument("--out", help="output directory (default ./out)")
    p.add_argument("--format", choices=["dot", "csv", "json"], help="export format")
    p.add_argument("--budget-vertices", type=int, dest="budget_vertices")
    p.add_argument("--budget-edges", type=int, dest="budget_edges")
    p.add_argument("--time-cap", type=float, dest="time_cap")
    p.add_argument("--cache", help="level cache directory (optional)")


def _build_config(args) -> RunConfig:
    values = {}
    if args.config:
        values.update(RunConfig.from_file(args.config).to_dict())
    for key in ("n0", "level", "power", "k", "epsilon", "mode", "exhaustive", "threads",
                "seed", "out", "format", "budget_vertices", "budget_edges", "time_cap"):
        val = getattr(args, key, None)
        if val is not None:
            values[key] = val
    values = {k: v for k, v in values.items() if v is not None}
    if isinstance(values.get("epsilon"), str):
        values["epsilon"] = Fraction(values["epsilon"])
    return RunConfig.from_mapping(values)


def _outdir(cfg: RunConfig) -> Path:
    out = Path(cfg.out or "out")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _levels(cfg: RunConfig, args, n=None):
    budget = BuildBudget(cfg.budget_vertices, cfg.budget_edges)
    return load_or_build(cfg.n0, cfg.level if n is None else n, budget, getattr(args, "cache", None))


def cmd_build(cfg: RunConfig, args) -> int:
    levels = _levels(cfg, args)
    out = _outdir(cfg)
    write_manifest(levels, cfg.to_dict(), out / "manifest.json")
    write_counts_csv(levels, out / "counts.csv")
    if cfg.format == "dot":
        for lvl in levels[1:]:
            write_dot(lvl, out / f"level_{lvl.n}.dot")
    top = levels[-1]
    print(f"built levels 0..{top.n} (n0={cfg.n0}): top vcount={top.vcount} ecount={top.ecount}")
    return EXIT_OK


def cmd_distances(cfg: RunConfig, args) -> int:
    levels = _levels(cfg, args)
    lvl = levels[cfg.level]
    out = _outdir(cfg)
    if args.sources:
        sources = [decode(s) for s in args.sources.split(";")]
        table = metrics.bfs_distance(lvl, sources, threads=cfg.effective_threads)
        # two-sided enclosures of the limiting scaled distance for each pair
        intervals = []
        for i, x in enumerate(sources):
            for y in sources[i + 1 :]:
                iv = metrics.rho_interval(x, y, cfg.level, levels)
                intervals.append({
                    "x": encode(x), "y": encode(y), "witness_level": iv.witness_level,
                    "lower": iv.lower, "upper": iv.upper,
                })
        if intervals:
            write_json(intervals, out / f"rho_intervals_n{cfg.level}.json")
    else:
        table = metrics.all_pairs(lvl, threads=cfg.effective_threads)
    write_distance_csv(lvl, table, out / f"distances_n{cfg.level}.csv")
    print(f"wrote {len(table.sources)} x {lvl.vcount} distance rows")
    return EXIT_OK


def cmd_delta(cfg: RunConfig, args) -> int:
    levels = _levels(cfg, args)
    coords = metrics.delta_coordinates(levels, cfg.level)
    out = _outdir(cfg)
    write_delta_csv(levels[cfg.level], coords, out / f"delta_n{cfg.level}.csv")
    print(f"wrote {levels[cfg.level].vcount} coordinate rows")
    return EXIT_OK


def cmd_geodesic(cfg: RunConfig, args) -> int:
    levels = _levels(cfg, args)
    x, y = decode(args.x), decode(args.y)
    q = args.grid if args.grid is not None else 3
    samples = bicombing.geodesic_grid(x, y, q)
    payload = {
        "x": encode(x),
        "y": encode(y),
        "grid_exponent": q,
        "samples": [{"t": str(s.t), "point": encode(s.point), "level": s.point.level} for s in samples],
    }
    if max(s.point.level for s in samples) <= cfg.level:
        rep = bicombing.verify_geodesic(x, y, q, cfg.level, levels)
        payload["interval_check"] = {
            "check": rep.check,
            "level": rep.level,
            "mode": rep.mode,
            "instances": rep.instances,
            "violations": rep.violations,
            "max_slack": rep.max_slack,
        }
    out = _outdir(cfg)
    write_json(payload, out / "geodesic.json")
    print(f"geodesic grid 2^-{q}: {len(samples)} samples")
    return EXIT_OK if payload.get("interval_check", {}).get("violations", 0) == 0 else EXIT_VIOLATION


def cmd_power(cfg: RunConfig, args) -> int:
    levels = _levels(cfg, args)
    out = _outdir(cfg)
    if cfg.power is None and cfg.k is not None:
        # density trend with m = 2^(n-k) over every built level from k up
        import csv as _csv

        rows = extremal.ratio_trend(levels, cfg.k)
        path = out / f"ratios_k{cfg.k}.csv"
        with path.open("w", newline="", encoding="utf-8") as fh:
            w = _csv.writer(fh)
            w.writerow(["n", "m", "vcount", "ecount", "ratio"])
            for r in rows:
                w.writerow([r.n, r.m, r.vcount, r.power_ecount, float(r.ratio)])
        print(f"wrote {len(rows)} density rows to {path.name}")
        return EXIT_OK
    if cfg.power is None:
        raise ValueError("--power (or --k for a trend table) is required")
    lvl = levels[cfg.level]
    ec = extremal.power_edge_count(lvl, cfg.power)
    ratio = Fraction(ec, lvl.vcount**2) if lvl.vcount else Fraction(0)
    payload = {"n": cfg.level, "m": cfg.power, "vcount": lvl.vcount, "ecount": ec,
               "ratio": ratio, "ratio_float": float(ratio)}
    write_json(payload, out / f"power_n{cfg.level}_m{cfg.power}.json")
    print(f"|E(G_{cfg.level}^{cfg.power})| = {ec}  ratio = {float(ratio):.6f}")
    return EXIT_OK


def cmd_clique(cfg: RunConfig, args) -> int:
    if cfg.power is None:
        raise ValueError("--power is required")
    levels = _levels(cfg, args)
    lvl = levels[cfg.level]
    graph = extremal.power_graph(lvl, cfg.power, complement=args.complement)
    mode = "greedy" if cfg.mode == "sampled" else cfg.mode
    res = extremal.clique_search(graph, mode=mode, seed=cfg.seed, time_cap=cfg.time_cap)
    payload = {
        "n": cfg.level, "m": cfg.power, "complement": bool(args.complement),
        "mode": mode, "size": len(res.vertices),
        "vertices": [encode(lvl.vertices[i]) for i in res.vertices],
        "exact": res.exact, "completed": res.completed, "fallback": res.fallback,
    }
    out = _outdir(cfg)
    write_json(payload, out / "clique.json")
    print(f"clique size {len(res.vertices)} (mode={mode}, completed={res.completed})")
    return EXIT_OK


def cmd_separated(cfg: RunConfig, args) -> int:
    if cfg.power is None:
        raise ValueError("--power is required")
    levels = _levels(cfg, args)
    mode = "greedy" if cfg.mode == "sampled" else cfg.mode
    cert = extremal.separated_set(levels, cfg.level, cfg.power, mode=mode,
                                  seed=cfg.seed, time_cap=cfg.time_cap)
    out = _outdir(cfg)
    write_json(separation_to_dict(cert), out / f"separated_n{cfg.level}_m{cfg.power}.json")
    print(f"separated set of {cert.cardinality} vertices, "
          f"min pairwise distance {cert.min_pairwise_distance}, "
          f"rho lower bound {cert.rho_lower}")
    return EXIT_OK if cert.verified else EXIT_VIOLATION


def cmd_bound(cfg: RunConfig, args) -> int:
    if cfg.k is None:
        raise ValueError("--k is required")
    # the certificate needs levels k..n-1 only; build level n too when the
    # budget allows so the bound can be compared against the exact count
    try:
        levels = _levels(cfg, args, n=max(cfg.level, cfg.k))
    except BudgetExceeded:
        levels = _levels(cfg, args, n=max(cfg.level - 1, cfg.k))
    cert = extremal.bound_certificate(levels, cfg.level, cfg.k)
    payload = bound_certificate_to_dict(cert)
    if cfg.level < len(levels) and levels[cfg.level].vcount <= 5000:
        exact = extremal.power_edge_count(levels[cfg.level], cert.m)
        payload["exact_power_ecount"] = exact
        payload["dominates_exact"] = exact <= cert.exact_value
    if cfg.epsilon is not None:
        rep = extremal.parameter_check(cfg.n0, cfg.epsilon, cfg.k, levels=levels)
        payload["parameter_check"] = to_jsonable(rep)
    out = _outdir(cfg)
    write_json(payload, out / f"bound_n{cfg.level}_k{cfg.k}.json")
    ok = payload.get("structurally_ok", False) and payload.get("dominates_exact", True)
    print(f"bound certificate: K={cert.K} parts={cert.parts} value={cert.exact_value}")
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_verify(cfg: RunConfig, args) -> int:
    summary = verify.run_suite(cfg)
    out = _outdir(cfg)
    write_json(summary, out / "summary.json")
    for check in summary["checks"]:
        print(f"{check['status']:>15}  {check['name']}")
    print(f"violations: {summary['violations']}")
    return EXIT_OK if summary["violations"] == 0 else EXIT_VIOLATION


def cmd_export(cfg: RunConfig, args) -> int:
    levels = _levels(cfg, args)
    out = _outdir(cfg)
    if cfg.format == "dot":
        write_dot(levels[cfg.level], out / f"level_{cfg.level}.dot")
    elif cfg.format == "csv":
        write_counts_csv(levels, out / "counts.csv")
    else:
        write_manifest(levels, cfg.to_dict(), out / "manifest.json")
    print(f"exported level data as {cfg.format}")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="midpointlab",
        description="Build midpoint graph levels, verify their metric and extremal properties, and export certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    specs = {
        "build": (cmd_build, "construct levels and write counts/manifest"),
        "distances": (cmd_distances, "BFS distance table export"),
        "delta": (cmd_delta, "simplex coordinate export"),
        "geodesic": (cmd_geodesic, "evaluate a dyadic geodesic"),
        "power": (cmd_power, "power graph edge count and density ratio"),
        "clique": (cmd_clique, "clique search in a power graph or its complement"),
        "separated": (cmd_separated, "separated-set certificate"),
        "bound": (cmd_bound, "recursive edge-count bound certificate"),
        "verify": (cmd_verify, "run the full invariant suite"),
        "export": (cmd_export, "export level data in the chosen format"),
    }
    for name, (fn, help_text) in specs.items():
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        p.set_defaults(func=fn)
        if name == "distances":
            p.add_argument("--sources", help="semicolon-separated canonical encodings")
        if name == "geodesic":
            p.add_argument("--x", required=True, help="canonical encoding of the start")
            p.add_argument("--y", required=True, help="canonical encoding of the end")
            p.add_argument("--grid", type=int, help="grid exponent q (default 3)")
        if name == "clique":
            p.add_argument("--complement", action="store_true",
                           help="search the complement of the power graph")
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _build_config(args)
        return args.func(cfg, args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, KeyError) as exc:
        print(f"bad arguments: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    except MidpointLabError as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
