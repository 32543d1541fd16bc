"""Command line front end: generate graphs, solve, verify, benchmark.

Exit codes: 0 success, 2 bad usage or malformed input, 3 a solver gave up
or a construction stage failed, 4 the graph has no irregular weighting at
all, 5 a supplied weighting failed verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from fractions import Fraction

from .errors import SearchBudgetError, StageFailure
from .exact import exact_strength
from .graph import (
    FamilyError,
    Graph,
    GraphFamilySpec,
    GraphFormatError,
    edge_list_text,
    generate,
    load_edge_list,
    save_edge_list,
)
from .pipeline import fallback_greedy, run_pipeline
from .report import SolveReport, params_echo
from .weighting import (
    WeightFormatError,
    bounds,
    collision_witness,
    finite_strength,
    is_irregular,
    load_weights,
    save_weights,
    vertex_weights,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FAILED = 3
EXIT_INFINITE = 4
EXIT_INVALID = 5

_AUTO_EXACT_MAX_N = 8


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _check_eps_gamma(eps: str, gamma: str) -> tuple:
    """Range-check tuning parameters; ValueError maps to a usage error."""
    e = Fraction(eps)
    g = Fraction(gamma)
    if not Fraction(0) < e < Fraction(1, 4):
        raise ValueError(f"--eps must lie in (0, 1/4), got {eps}")
    if not Fraction(0) < 2 * g < e:
        raise ValueError(f"need 0 < 2*gamma < eps, got --gamma {gamma}")
    return e, g


def _cmd_gen(args) -> int:
    conns = None
    if args.connections:
        conns = tuple(int(t) for t in args.connections.split(","))
    spec = GraphFamilySpec(
        family=args.family, n=args.n, d=args.d, connections=conns,
        seed=args.seed,
    )
    g = generate(spec)
    if args.out == "-":
        sys.stdout.write(edge_list_text(g))
    else:
        save_edge_list(g, args.out)
        print(f"wrote {g.n} vertices, {g.m} edges to {args.out}")
    return EXIT_OK


def _bound_fields(graph: Graph, eps, gamma) -> dict:
    d = graph.is_regular()
    if d is None or d < 1:
        return {"d": d if d is not None else None}
    b = bounds(graph.n, d, eps, gamma)
    return {
        "d": d,
        "safe_lower": b.safe_lower,
        "paper_lower": b.paper_lower,
        "beta": b.beta,
        "thm_dense": b.thm_dense,
        "thm_dense_applicable": b.thm_dense_applicable,
        "thm_general": b.thm_general,
    }


def _emit_report(report: SolveReport, args) -> None:
    if args.report == "-":
        sys.stdout.write(report.to_json())
    elif args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())


def _cmd_solve(args) -> int:
    try:
        eps, gamma = _check_eps_gamma(args.eps, args.gamma)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_USAGE
    graph = load_edge_list(args.infile)
    base = dict(
        n=graph.n,
        algorithm=args.algo,
        achieved_k=None,
        valid=False,
        seed=args.seed,
        **_bound_fields(graph, eps, gamma),
    )
    if not finite_strength(graph):
        report = SolveReport(
            stage_failure="precheck",
            stage_detail="no irregular weighting exists for this graph",
            **base,
        )
        _emit_report(report, args)
        if args.report != "-":
            print("this graph has no irregular weighting at any k")
        return EXIT_INFINITE

    algo = args.algo
    d = graph.is_regular()
    if algo == "auto":
        if graph.n <= _AUTO_EXACT_MAX_N:
            algo = "exact"
        elif d is not None and d >= 1:
            algo = "paper"
        else:
            algo = "fallback"

    weighting = None
    report_kw = dict(base)
    t0 = time.perf_counter()
    if algo == "paper":
        budget = args.budget if args.budget is not None else 1000
        res = run_pipeline(
            graph, eps=eps, gamma=gamma, seed=args.seed, budget=budget
        )
        report_kw["resamples"] = res.resamples
        if res.params is not None:
            report_kw["params"] = params_echo(res.params)
        if not args.no_timings:
            report_kw["timings"] = {
                k: round(v, 6) for k, v in res.timings.items()
            }
        if res.ok:
            weighting = res.weighting
        else:
            report_kw["stage_failure"] = res.stage_failure
            report_kw["stage_detail"] = res.stage_detail
    elif algo == "fallback":
        try:
            weighting = fallback_greedy(graph, seed=args.seed)
        except RuntimeError as exc:
            report_kw["stage_failure"] = "search"
            report_kw["stage_detail"] = str(exc)
    elif algo == "exact":
        node_budget = args.budget if args.budget is not None else 10**8
        try:
            res = exact_strength(graph, node_budget=node_budget)
            weighting = res.weighting
        except SearchBudgetError as exc:
            report_kw["stage_failure"] = "search"
            report_kw["stage_detail"] = str(exc)

    # auto retries with local search when the construction bails out
    if weighting is None and args.algo == "auto" and algo == "paper":
        algo = "fallback"
        report_kw["stage_failure"] = None
        report_kw["stage_detail"] = None
        try:
            weighting = fallback_greedy(graph, seed=args.seed)
        except RuntimeError as exc:
            report_kw["stage_failure"] = "search"
            report_kw["stage_detail"] = str(exc)
    elapsed = time.perf_counter() - t0
    report_kw["algorithm"] = algo
    if not args.no_timings and "timings" not in report_kw:
        report_kw["timings"] = {"total": round(elapsed, 6)}

    if weighting is not None:
        assert is_irregular(graph, weighting), "internal verification failed"
        report_kw["valid"] = True
        report_kw["achieved_k"] = weighting.k
        if args.weights_out:
            save_weights(weighting, args.weights_out)
    report = SolveReport(**report_kw)
    _emit_report(report, args)
    if args.report != "-":
        if weighting is not None:
            lower = report.safe_lower
            extra = f" (safe lower bound {lower})" if lower else ""
            print(f"{algo}: irregular with k={weighting.k}{extra}")
        else:
            print(
                f"{algo}: failed at stage {report.stage_failure}: "
                f"{report.stage_detail}"
            )
    return EXIT_OK if weighting is not None else EXIT_FAILED


def _cmd_verify(args) -> int:
    graph = load_edge_list(args.infile)
    weighting = load_weights(args.weights, graph)
    witness = collision_witness(graph, weighting)
    if witness is None:
        print(f"valid irregular weighting, k={weighting.k}")
        return EXIT_OK
    sums = vertex_weights(graph, weighting)
    print(
        f"not irregular: vertices {witness[0]} and {witness[1]} both have "
        f"weighted degree {int(sums[witness[0]])}"
    )
    return EXIT_INVALID


def _parse_grid(spec: str) -> dict:
    fields = {}
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ValueError(f"grid term {chunk!r} is not key=value")
        key, val = chunk.split("=", 1)
        fields[key.strip()] = val.strip()
    for key in ("n", "d", "seeds"):
        if key not in fields:
            raise ValueError(f"grid needs {key}=...")
    out = {
        "n": [int(t) for t in fields["n"].split(",")],
        "d": [int(t) for t in fields["d"].split(",")],
        "eps": fields.get("eps", "0.1").split(","),
        "gamma": fields.get("gamma", "0.04").split(","),
    }
    seeds = fields["seeds"]
    if ":" in seeds:
        a, b = seeds.split(":", 1)
        out["seeds"] = list(range(int(a), int(b)))
    else:
        out["seeds"] = [int(t) for t in seeds.split(",")]
    if not out["seeds"]:
        raise ValueError("empty seed range")
    return out


_BENCH_COLUMNS = [
    "n", "d", "eps", "gamma", "seed", "algorithm", "valid", "achieved_k",
    "safe_lower", "paper_lower", "resamples", "stage_failure",
    "t_partition", "t_step2", "t_step3", "t_total",
]


def _bench_row(n, d, eps, gamma, seed, algo, budget, with_timings):
    row = {c: "" for c in _BENCH_COLUMNS}
    row.update(n=n, d=d, eps=eps, gamma=gamma, seed=seed, algorithm=algo)
    try:
        graph = generate(GraphFamilySpec("random-regular", n=n, d=d, seed=seed))
    except FamilyError as exc:
        row["valid"] = "false"
        row["stage_failure"] = f"gen: {exc}"
        return row
    b = bounds(n, d)
    row["safe_lower"] = b.safe_lower
    row["paper_lower"] = b.paper_lower
    t0 = time.perf_counter()
    if algo == "paper":
        res = run_pipeline(
            graph, eps=Fraction(eps), gamma=Fraction(gamma), seed=seed,
            budget=budget if budget is not None else 1000,
        )
        row["valid"] = "true" if res.ok else "false"
        if res.resamples is not None:
            row["resamples"] = res.resamples
        if res.ok:
            row["achieved_k"] = res.weighting.k
        else:
            row["stage_failure"] = res.stage_failure
        if with_timings:
            for stage, col in (
                ("partition", "t_partition"),
                ("step2", "t_step2"),
                ("step3", "t_step3"),
            ):
                if stage in res.timings:
                    row[col] = f"{res.timings[stage]:.6f}"
            row["t_total"] = f"{sum(res.timings.values()):.6f}"
        return row
    if algo == "fallback":
        try:
            w = fallback_greedy(graph, seed=seed)
            row["valid"] = "true"
            row["achieved_k"] = w.k
        except RuntimeError as exc:
            row["valid"] = "false"
            row["stage_failure"] = f"search: {exc}"
    else:  # exact
        try:
            res = exact_strength(
                graph, node_budget=budget if budget is not None else 10**8
            )
            row["valid"] = "true"
            row["achieved_k"] = res.s
        except SearchBudgetError:
            row["valid"] = "false"
            row["stage_failure"] = "search: node budget exceeded"
    if with_timings:
        row["t_total"] = f"{time.perf_counter() - t0:.6f}"
    return row


def _cmd_bench(args) -> int:
    try:
        grid = _parse_grid(args.grid)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_USAGE
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for n in grid["n"]:
        for d in grid["d"]:
            for eps in grid["eps"]:
                for gamma in grid["gamma"]:
                    try:
                        _check_eps_gamma(eps, gamma)
                    except ValueError as exc:
                        _err(str(exc))
                        return EXIT_USAGE
                    for seed in grid["seeds"]:
                        writer.writerow(
                            _bench_row(
                                n, d, eps, gamma, seed, args.algo,
                                args.budget, not args.no_timings,
                            )
                        )
    text = buf.getvalue()
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="irrstrength",
        description="Irregular edge weightings of regular graphs.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a graph family member")
    g.add_argument(
        "--family",
        required=True,
        choices=[
            "complete", "cycle", "circulant", "hypercube", "petersen",
            "random-regular",
        ],
    )
    g.add_argument("--n", type=int)
    g.add_argument("--d", type=int)
    g.add_argument("--connections", help="circulant offsets, e.g. 1,2")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default="-", help="output path, - for stdout")
    g.set_defaults(func=_cmd_gen)

    s = sub.add_parser("solve", help="find an irregular weighting")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument(
        "--algo", default="auto",
        choices=["auto", "paper", "fallback", "exact"],
    )
    s.add_argument("--eps", default="0.1")
    s.add_argument("--gamma", default="0.04")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument(
        "--budget", type=int, default=None,
        help="resample budget (construction) or node budget (exact)",
    )
    s.add_argument("--report", help="JSON report path, - for stdout")
    s.add_argument("--weights-out", dest="weights_out")
    s.add_argument("--no-timings", dest="no_timings", action="store_true")
    s.set_defaults(func=_cmd_solve)

    v = sub.add_parser("verify", help="check a weighting for irregularity")
    v.add_argument("--in", dest="infile", required=True)
    v.add_argument("--weights", required=True)
    v.set_defaults(func=_cmd_verify)

    b = sub.add_parser("bench", help="run a parameter grid, write CSV")
    b.add_argument(
        "--grid", required=True,
        help="e.g. 'n=1200,2000;d=300;eps=0.1;gamma=0.04;seeds=0:5'",
    )
    b.add_argument("--out", default="-", help="CSV path, - for stdout")
    b.add_argument(
        "--algo", default="paper", choices=["paper", "fallback", "exact"]
    )
    b.add_argument("--budget", type=int, default=None)
    b.add_argument("--no-timings", dest="no_timings", action="store_true")
    b.set_defaults(func=_cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, WeightFormatError, FamilyError) as exc:
        _err(str(exc))
        return EXIT_USAGE
    except FileNotFoundError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except StageFailure as exc:
        _err(f"{exc.stage}: {exc.detail}")
        return EXIT_FAILED
    except SearchBudgetError as exc:
        _err(str(exc))
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
