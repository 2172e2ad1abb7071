"""Command-line interface.

Commands: metrics, delta-scan, verify-delta, verify-contraction,
forest-check, sbm-example, solve, evaluate.  Exit codes: 0 on success, 1
when a verification command finds a violated property, 2 on usage or I/O
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .dynamics import ShiftedLaplacianSolver, center, measures
from .evaluation import (
    ALL_METHODS,
    ExperimentConfig,
    mean_by_method_eta,
    records_to_csv,
    run_experiment,
)
from .forests import enumerate_forest_table, forest_pair_distance, forest_profile_distance, forest_table
from .graphs import (
    BUILTIN_DATASETS,
    SbmConfig,
    build_graph,
    builtin_dataset,
    erdos_renyi,
    load_graph,
    load_opinions,
    path_graph,
)
from .link_delta import scan_candidates
from .optimize import solve
from .predictors import PredictorConfig
from .sbm_study import ordering_holds, run_group_study
from .spectral import contraction_experiment


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.12g}"


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _load_graph_arg(args) -> "Graph":
    if args.graph in BUILTIN_DATASETS:
        return builtin_dataset(args.graph)
    return load_graph(args.graph)


# metrics ---------------------------------------------------------------------


def cmd_metrics(args) -> int:
    graph = _load_graph_arg(args)
    s = center(load_opinions(args.opinions, graph.n))
    report = measures(graph, s)
    print(json.dumps(report.as_dict(), indent=2))
    return 0


# delta-scan ------------------------------------------------------------------


def _read_pairs(path: str) -> list[tuple[int, int]]:
    pairs = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'u v', got {raw!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    return pairs


def cmd_delta_scan(args) -> int:
    graph = _load_graph_arg(args)
    if args.opinions is None and args.sigma2 is None:
        raise ValueError("delta-scan needs --opinions, --sigma2, or both")
    s = center(load_opinions(args.opinions, graph.n)) if args.opinions else None
    pairs = _read_pairs(args.candidates) if args.candidates else graph.non_edges()
    records = scan_candidates(graph, pairs, s=s, sigma2=args.sigma2, weight=args.weight)
    lines = ["u,v,delta_c,delta_ec"]
    for r in records:
        lines.append(f"{r.edge[0]},{r.edge[1]},{_fmt(r.delta_c)},{_fmt(r.delta_ec)}")
    _write("\n".join(lines) + "\n", args.out)
    return 0


# verify-delta ----------------------------------------------------------------


def _dense_conflict(graph, s) -> float:
    m = np.eye(graph.n) + graph.laplacian
    return float(s @ np.linalg.solve(m, s))


def cmd_verify_delta(args) -> int:
    failed = False
    for name in args.datasets:
        graph = builtin_dataset(name)
        s = center(graph.degrees)
        solver = ShiftedLaplacianSolver(graph)
        candidates = graph.non_edges()
        records = scan_candidates(graph, candidates, s=s, sigma2=1.0, solver=solver)
        base = _dense_conflict(graph, s)
        worst_gap = 0.0
        worst_pos = -np.inf
        for r in records:
            dense = _dense_conflict(graph.with_edges([r.edge]), s) - base
            gap = abs(r.delta_c - dense) / max(1.0, abs(dense))
            worst_gap = max(worst_gap, gap)
            worst_pos = max(worst_pos, r.delta_c, r.delta_ec)
        # spot-check the expectation mode against a from-scratch trace
        m = np.eye(graph.n) + graph.laplacian
        base_trace = np.trace(np.linalg.inv(m))
        for r in records[: args.spot_checks]:
            mw = np.eye(graph.n) + graph.with_edges([r.edge]).laplacian
            dense_ec = float(np.trace(np.linalg.inv(mw)) - base_trace)
            worst_gap = max(worst_gap, abs(r.delta_ec - dense_ec) / max(1.0, abs(dense_ec)))
        ok = worst_pos <= args.tolerance and worst_gap <= 1e-9
        failed = failed or not ok
        print(
            f"{name}: candidates={len(records)} max_delta={worst_pos:.3e} "
            f"max_mismatch={worst_gap:.3e} {'ok' if ok else 'VIOLATION'}"
        )
    return 1 if failed else 0


# verify-contraction ----------------------------------------------------------


def cmd_verify_contraction(args) -> int:
    from .plots import contraction_svg

    rows = contraction_experiment(args.n, args.seed)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    lines = ["edges,lower,ratio,upper"]
    for r in rows:
        lines.append(f"{r.edges},{_fmt(r.lower)},{_fmt(r.ratio)},{_fmt(r.upper)}")
    (out_dir / "contraction.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    contraction_svg(rows, out_dir / "contraction.svg")
    bad = [
        r
        for r in rows
        if r.ratio > r.upper + 1e-9 or (r.lower is not None and r.lower > r.ratio + 1e-9) or r.ratio < 1.0 - 1e-9
    ]
    connected_at = next((r.edges for r in rows if r.lower is not None), None)
    print(
        f"steps={len(rows)} connected_at={connected_at} violations={len(bad)} "
        f"-> {out_dir / 'contraction.csv'}"
    )
    return 1 if bad else 0


# forest-check ----------------------------------------------------------------


def _random_connected(rng, max_nodes: int):
    while True:
        n = int(rng.integers(2, max_nodes + 1))
        g = erdos_renyi(n, 0.6, seed=int(rng.integers(1 << 31)))
        if g.is_connected():
            return g


def cmd_forest_check(args) -> int:
    rng = np.random.default_rng(args.seed)
    named = [
        ("K2", build_graph(2, [(0, 1)])),
        ("P3", path_graph(3)),
        ("K3", build_graph(3, [(0, 1), (0, 2), (1, 2)])),
    ]
    graphs = named + [(f"random{i}", _random_connected(rng, args.nodes)) for i in range(args.trials)]
    failed = False
    worst = 0.0
    for name, g in graphs:
        table = forest_table(g)
        oracle = enumerate_forest_table(g)
        exact_ok = table == oracle
        solver = ShiftedLaplacianSolver(g)
        for u in range(g.n):
            for v in range(u + 1, g.n):
                eq_pair = float(forest_pair_distance(table, u, v)) - solver.pair_resistance(u, v)
                x = solver.column_difference(u, v)
                eq_profile = float(forest_profile_distance(table, u, v)) - float(x @ x)
                worst = max(worst, abs(eq_pair), abs(eq_profile))
        if not exact_ok:
            failed = True
            print(f"{name}: COUNT MISMATCH between cofactor route and enumeration")
        elif name in ("K2", "P3", "K3"):
            print(f"{name}: total={table.total} ok")
    failed = failed or worst > 1e-12
    print(f"graphs={len(graphs)} max_identity_residual={worst:.3e} {'VIOLATION' if failed else 'ok'}")
    return 1 if failed else 0


# sbm-example -----------------------------------------------------------------


def cmd_sbm_example(args) -> int:
    from .plots import sbm_groups_svg

    config = None
    if args.sizes is not None:
        sizes = tuple(int(x) for x in args.sizes.split(","))
        config = SbmConfig(sizes=sizes)
    stats = run_group_study(
        seeds=args.seeds, links_per_group=args.links, sigma2=args.sigma2, config=config
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sbm_groups_svg(stats, out_dir / "sbm_groups.svg")
    for st in stats:
        print(
            f"{st.name}: n={st.count} mean={st.mean:.6g} "
            f"ci95=[{st.mean - st.half_width:.6g}, {st.mean + st.half_width:.6g}]"
        )
    ok = ordering_holds(stats)
    print(f"ordering group1 < group3 < group2: {'ok' if ok else 'VIOLATION'}")
    return 0 if ok else 1


# solve -----------------------------------------------------------------------


def cmd_solve(args) -> int:
    graph = _load_graph_arg(args)
    if (args.opinions is None) == (args.sigma2 is None):
        raise ValueError("solve needs exactly one of --opinions or --sigma2")
    s = center(load_opinions(args.opinions, graph.n)) if args.opinions else None
    pairs = _read_pairs(args.candidates) if args.candidates else graph.non_edges()
    result = solve(
        graph,
        pairs,
        args.budget,
        s=s,
        sigma2=args.sigma2,
        tol=args.tol,
        max_iter=args.max_iter,
    )
    lines = ["u,v,weight"]
    for (u, v), w in zip(result.addition.pairs, result.addition.weights):
        lines.append(f"{u},{v},{_fmt(float(w))}")
    _write("\n".join(lines) + "\n", args.out)
    print(
        f"objective={result.objective:.12g} iterations={result.iterations} "
        f"converged={result.converged} gap={result.gap:.3e}",
        file=sys.stderr,
    )
    return 0


# evaluate --------------------------------------------------------------------


def parse_experiment_config(path: str | Path) -> ExperimentConfig:
    """Flat key=value text; '#' comments and blank lines allowed."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = body.split("=", 1)
        raw[key.strip()] = value.strip()

    known = {
        "dataset", "graph", "opinions", "methods", "beta", "eta", "seeds", "sigma2",
        "katz_alpha", "ppr_alpha", "ppr_tol", "solver_tol", "solver_max_iter",
        "sbm_sizes", "sbm_probs", "sbm_seed",
    }
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"{path}: unknown config keys {sorted(unknown)}")

    def ints(key: str, default: tuple[int, ...]) -> tuple[int, ...]:
        if key not in raw:
            return default
        return tuple(int(x) for x in raw[key].split(","))

    seeds: tuple[int, ...]
    if "seeds" in raw:
        parts = raw["seeds"].split(",")
        seeds = tuple(range(int(parts[0]))) if len(parts) == 1 else tuple(int(x) for x in parts)
    else:
        seeds = tuple(range(10))

    sbm_kwargs = {}
    if "sbm_sizes" in raw:
        sbm_kwargs["sizes"] = tuple(int(x) for x in raw["sbm_sizes"].split(","))
    if "sbm_probs" in raw:
        sbm_kwargs["probs"] = tuple(
            tuple(float(x) for x in row.split(",")) for row in raw["sbm_probs"].split(";")
        )
    if "sbm_seed" in raw:
        sbm_kwargs["seed"] = int(raw["sbm_seed"])

    predictor_kwargs = {}
    for key in ("katz_alpha", "ppr_alpha", "ppr_tol"):
        if key in raw:
            predictor_kwargs[key] = float(raw[key])

    methods = tuple(m.strip() for m in raw["methods"].split(",")) if "methods" in raw else ALL_METHODS
    return ExperimentConfig(
        dataset=raw.get("dataset", "sbm"),
        methods=methods,
        beta=int(raw.get("beta", 100)),
        etas=ints("eta", (1, 3, 5, 7, 9)),
        seeds=seeds,
        sigma2=float(raw.get("sigma2", 1.0)),
        opinions=raw.get("opinions"),
        graph_path=raw.get("graph"),
        sbm=SbmConfig(**sbm_kwargs),
        predictor=PredictorConfig(**predictor_kwargs),
        solver_tol=float(raw.get("solver_tol", 1e-8)),
        solver_max_iter=int(raw.get("solver_max_iter", 500)),
    )


def cmd_evaluate(args) -> int:
    from dataclasses import replace as dc_replace

    from .plots import evaluation_svg

    config = parse_experiment_config(args.config)
    config = dc_replace(config, jobs=args.jobs)
    records = run_experiment(config)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "eval.csv").write_text(records_to_csv(records), encoding="utf-8")
    evaluation_svg(records, out_dir)
    table = mean_by_method_eta(records, "ca")
    etas = sorted({r.eta for r in records})
    header = "method".ljust(24) + "".join(f"eta={e:<8}" for e in etas)
    print(header)
    for method in config.methods:
        cells = table.get(method, {})
        row = method.ljust(24) + "".join(
            (f"{cells[e]:<12.4f}" if e in cells else "failed".ljust(12)) for e in etas
        )
        print(row)
    failures = sum(1 for r in records if r.failed)
    if failures:
        print(f"{failures} failed cells (see eval.csv)", file=sys.stderr)
    print(f"-> {out_dir / 'eval.csv'}")
    return 0


# parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fjconflict",
        description="Conflict calculus for opinion networks: measures, link deltas, "
        "bounds, budgeted minimization, and recommender evaluation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("metrics", help="tension measures of a graph + opinion file")
    p.add_argument("--graph", required=True, help="edge-list path or builtin dataset name")
    p.add_argument("--opinions", required=True, help="one decimal per line; centered on load")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("delta-scan", help="closed-form conflict deltas for candidate links")
    p.add_argument("--graph", required=True)
    p.add_argument("--opinions", help="enables the opinion-mode delta column")
    p.add_argument("--sigma2", type=float, help="enables the expectation-mode delta column")
    p.add_argument("--candidates", help="file of 'u v' lines; default: all non-edges")
    p.add_argument("--weight", type=float, default=1.0, help="weight of the added link")
    p.add_argument("--out", help="CSV path; default stdout")
    p.set_defaults(func=cmd_delta_scan)

    p = sub.add_parser(
        "verify-delta",
        help="closed-form deltas vs from-scratch recomputation on benchmark graphs",
    )
    p.add_argument("--datasets", nargs="+", default=list(BUILTIN_DATASETS), choices=BUILTIN_DATASETS)
    p.add_argument("--tolerance", type=float, default=1e-12, help="nonpositivity slack")
    p.add_argument("--spot-checks", type=int, default=200, help="expectation-mode recomputations per dataset")
    p.set_defaults(func=cmd_verify_delta)

    p = sub.add_parser("verify-contraction", help="incremental-edge trace of the bound chain")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_verify_contraction)

    p = sub.add_parser("forest-check", help="forest-count identities, exact vs enumeration")
    p.add_argument("--nodes", type=int, default=6, help="max nodes for random graphs")
    p.add_argument("--trials", type=int, default=25, help="number of random graphs")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_forest_check)

    p = sub.add_parser("sbm-example", help="expected conflict reduction per bridge group")
    p.add_argument("--seeds", type=int, default=10, help="number of graph draws")
    p.add_argument("--links", type=int, default=20, help="sampled links per group per graph")
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--sizes", help="comma-separated block sizes (default 100,100,10,10)")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_sbm_example)

    p = sub.add_parser("solve", help="budgeted conflict minimization over candidate links")
    p.add_argument("--graph", required=True)
    p.add_argument("--opinions", help="opinion mode")
    p.add_argument("--sigma2", type=float, help="expectation mode")
    p.add_argument("--budget", type=float, required=True)
    p.add_argument("--candidates", help="file of 'u v' lines; default: all non-edges")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=500)
    p.add_argument("--out", help="weights CSV path; default stdout")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("evaluate", help="factorial recommender benchmark from a config file")
    p.add_argument(
        "--config",
        required=True,
        help="flat key=value file; keys: dataset, graph, opinions, methods, beta, "
        "eta, seeds, sigma2, katz_alpha, ppr_alpha, ppr_tol, solver_tol, "
        "solver_max_iter, sbm_sizes, sbm_probs, sbm_seed",
    )
    p.add_argument("--out-dir", default=".")
    p.add_argument("--jobs", type=int, default=None, help="worker processes; default: cpu count")
    p.set_defaults(func=cmd_evaluate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", None) is None and args.command == "evaluate":
        import os

        args.jobs = os.cpu_count() or 1
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
