"""Command-line surface: gen, solve, oracle, validate, bench, compare.

Exit codes for solve/oracle/compare follow a stable contract:
0 = yes (or agreement), 1 = no (or disagreement), 2 = error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench as bench_mod
from .decomposition import blowup, decompose_unweighted, make_nice, project, validate_decomposition, weighted_width
from .errors import DiskFvsError, InputError
from .fileio import parse_graph, parse_objects, serialize_graph, serialize_objects
from .geometry import build_intersection_graph, planted_yes_instance, random_udg
from .graph import Graph, connected_components, induced_subgraph, peel_degree_one
from .oracle import OracleBudget, min_fvs_bruteforce
from .partition import contract, greedy_partition, validate_partition
from .solver import MODES, SolveConfig, solve

SCHEMA_VERSION = 1


def _load_instance(path: str) -> tuple[Graph, bool]:
    """Read a graph or points file; returns (graph, geometric_provenance)."""
    text = Path(path).read_text()
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        if line.startswith("p fvs"):
            return parse_graph(text), False
        if line.startswith("p objects"):
            return build_intersection_graph(parse_objects(text)), True
        break
    raise InputError(f"{path}: unrecognized file header")


def _cmd_gen(args) -> int:
    if args.udg == args.planted:
        raise InputError("choose exactly one of --udg / --planted")
    if args.udg:
        objs = random_udg(args.n, args.density, args.seed)
    else:
        objs, _ = planted_yes_instance(args.k, args.path_len, args.seed)
    g = build_intersection_graph(objs)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    points_path = out.with_suffix(".points")
    graph_path = out.with_suffix(".graph")
    points_path.write_text(serialize_objects(objs))
    graph_path.write_text(serialize_graph(g))
    print(points_path)
    print(graph_path)
    return 0


def _solution_payload(sol, cfg) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "verdict": sol.verdict,
        "fvs": sorted(sol.fvs) if sol.fvs is not None else [],
        "certificate": sol.certificate,
        "k": cfg.k,
        "weighted_width": sol.stats.get("weighted_width"),
        "high_degree_count": sol.stats.get("high_degree_count"),
        "class_count": sol.stats.get("class_count"),
        "timings": sol.stats.get("timings", {}),
    }


def _cmd_solve(args) -> int:
    g, geometric = _load_instance(args.input)
    kwargs = {}
    if args.state_budget is not None:
        kwargs["state_budget"] = args.state_budget
    cfg = SolveConfig(
        k=args.k,
        mode=args.mode,
        geometric_provenance=geometric and not args.no_thresholds,
        enable_thresholds=args.thresholds and not args.no_thresholds,
        effort=args.effort,
        **kwargs,
    )
    sol = solve(g, cfg)
    if args.json:
        print(json.dumps(_solution_payload(sol, cfg), sort_keys=True))
    else:
        size = len(sol.fvs) if sol.fvs is not None else "-"
        print(f"verdict={sol.verdict} certificate={sol.certificate} fvs_size={size}")
        if sol.fvs:
            print("fvs=" + " ".join(str(v) for v in sol.fvs))
    return 0 if sol.verdict == "yes" else 1


def _cmd_oracle(args) -> int:
    g, _ = _load_instance(args.input)
    budget = OracleBudget(max_n_subsets=args.max_n)
    size, witness = min_fvs_bruteforce(g, budget)
    verdict = "yes" if size <= args.k else "no"
    if args.json:
        payload = {
            "schema": SCHEMA_VERSION,
            "verdict": verdict,
            "min_fvs": size,
            "fvs": sorted(witness) if verdict == "yes" else [],
            "k": args.k,
            "certificate": "oracle",
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"verdict={verdict} min_fvs={size}")
    return 0 if verdict == "yes" else 1


def _cmd_validate(args) -> int:
    g, _ = _load_instance(args.input)
    peeled = peel_degree_one(g).reduced
    reports = []
    all_violations: list[str] = []
    kappa_obs = 0
    max_deg = 0
    class_count = 0
    for comp in connected_components(peeled):
        sub, _, _ = induced_subgraph(peeled, comp)
        part = greedy_partition(sub)
        prep = validate_partition(sub, part)
        kappa_obs = max(kappa_obs, prep.kappa_observed)
        max_deg = max(max_deg, prep.max_contraction_degree)
        class_count += prep.class_count
        all_violations.extend(prep.violations)
        cg = contract(sub, part)
        bg = blowup(cg)
        td_b = decompose_unweighted(bg.graph)
        td = project(td_b, bg, cg)
        drep = validate_decomposition(td, cg.base)
        all_violations.extend(drep.violations)
        nd = make_nice(td)
        nrep = validate_decomposition(nd.to_tree_decomposition(), cg.base)
        all_violations.extend(nrep.violations)
        reports.append(
            {
                "component_size": sub.n,
                "weighted_width": weighted_width(td, cg),
                "nice_nodes": nd.node_count(),
            }
        )
    payload = {
        "schema": SCHEMA_VERSION,
        "violations": all_violations,
        "kappa_observed": kappa_obs,
        "max_contraction_degree": max_deg,
        "class_count": class_count,
        "components": reports,
    }
    print(json.dumps(payload, sort_keys=True))
    return 0 if not all_violations else 1


def _cmd_bench(args) -> int:
    k_values = [int(x) for x in args.k_list.split(",") if x.strip()]
    report = bench_mod.run_sweep(
        k_values=k_values,
        seeds=args.seeds,
        path_len_base=args.path_len,
        mode=args.mode,
        effort=args.effort,
    )
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.with_suffix(".csv").write_text(bench_mod.report_to_csv(report))
    out.with_suffix(".json").write_text(bench_mod.report_to_json(report))
    print(
        f"rows={len(report.rows)} slope={report.slope} coeff_c={report.coeff_c}"
    )
    print(out.with_suffix(".csv"))
    print(out.with_suffix(".json"))
    return 0


def _cmd_compare(args) -> int:
    g, _ = _load_instance(args.input)
    results = {}
    for mode in ("dp-naive", "dp-rank", "oracle"):
        cfg = SolveConfig(k=args.k, mode=mode)
        sol = solve(g, cfg)
        results[mode] = sol.verdict
    agree = len(set(results.values())) == 1
    payload = {"schema": SCHEMA_VERSION, "k": args.k, "verdicts": results, "agree": agree}
    print(json.dumps(payload, sort_keys=True))
    return 0 if agree else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diskfvs",
        description="Feedback vertex set solving on fat-object intersection graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate instances (points + graph files)")
    p_gen.add_argument("--udg", action="store_true", help="random unit disk instance")
    p_gen.add_argument("--planted", action="store_true", help="planted yes-instance")
    p_gen.add_argument("-n", type=int, default=50, help="number of disks (udg)")
    p_gen.add_argument("--density", type=float, default=0.2, help="disks per unit area (udg)")
    p_gen.add_argument("-k", type=int, default=4, help="planted hub count")
    p_gen.add_argument("--path-len", type=int, default=40, help="planted path length")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", default="instance", help="output path prefix")
    p_gen.set_defaults(func=_cmd_gen)

    p_solve = sub.add_parser("solve", help="decide FVS <= k via the DP pipeline")
    p_solve.add_argument("input", help="graph or points file")
    p_solve.add_argument("--k", type=int, required=True)
    p_solve.add_argument("--mode", choices=MODES, default="auto")
    p_solve.add_argument("--no-thresholds", action="store_true",
                         help="never use threshold no-certificates")
    p_solve.add_argument("--thresholds", action="store_true",
                         help="force threshold certificates on")
    p_solve.add_argument("--effort", choices=("min-degree", "min-fill", "best"),
                         default="best")
    p_solve.add_argument("--state-budget", type=int, default=None,
                         help="cap on DP states examined (default 50M)")
    p_solve.add_argument("--json", action="store_true")
    p_solve.set_defaults(func=_cmd_solve)

    p_oracle = sub.add_parser("oracle", help="exhaustive reference solver")
    p_oracle.add_argument("input")
    p_oracle.add_argument("--k", type=int, required=True)
    p_oracle.add_argument("--max-n", type=int, default=20, help="size budget")
    p_oracle.add_argument("--json", action="store_true")
    p_oracle.set_defaults(func=_cmd_oracle)

    p_val = sub.add_parser("validate", help="audit partition and decomposition")
    p_val.add_argument("input")
    p_val.set_defaults(func=_cmd_validate)

    p_bench = sub.add_parser("bench", help="planted sweep with width/degree stats")
    p_bench.add_argument("--k-list", default="4,9,16,25,36")
    p_bench.add_argument("--seeds", type=int, default=20)
    p_bench.add_argument("--path-len", type=int, default=40)
    p_bench.add_argument("--mode", choices=("dp-naive", "dp-rank"), default="dp-rank")
    p_bench.add_argument("--effort", choices=("min-degree", "min-fill", "best"),
                         default="best")
    p_bench.add_argument("--out", default="bench", help="output path prefix")
    p_bench.set_defaults(func=_cmd_bench)

    p_cmp = sub.add_parser("compare", help="cross-check solver modes and oracle")
    p_cmp.add_argument("input")
    p_cmp.add_argument("--k", type=int, required=True)
    p_cmp.set_defaults(func=_cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DiskFvsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
