"""Command line interface.

Subcommands: gen, exact, simulate, verify-expansion, bounds, zigzag,
scaling.  Outputs are deterministic functions of the arguments: CSV
starts with '#' metadata lines (command, version, sorted parameters,
never a timestamp), JSON is an envelope {command, version, params,
results} dumped with sorted keys.  Re-running a command with the same
arguments reproduces the output byte for byte.

A config file (--config) holds key=value lines using option dests
(e.g. "trials=100"); explicit command line flags win because config
tokens are injected before them.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .bounds import (
    bernstein_degree,
    chernoff_additive,
    chernoff_lower,
    chernoff_relative,
    f_eps,
    g_eps,
    psi,
    zigzag,
)
from .expansion import (
    DenseExpansionParams,
    accessibility_check,
    AccessibilityWitness,
    dense_probes,
    low_degree_set,
    sparse_probes,
    sparse_report,
    verify_dense_lower,
    verify_witness,
)
from .game import play
from .graph import (
    GraphView,
    complete_graph,
    cycle_graph,
    grid_graph,
    path_graph,
    petersen_graph,
    read_edge_list,
    star_graph,
    to_edge_list_text,
)
from .models import gnm, gnp, random_regular
from .solver import BudgetError, is_copwin_dismantlable, solve_k
from .strategies import (
    DenseStrategyConfig,
    ScheduleError,
    dense_strategy,
    radius_schedule,
    robber_greedy,
    sparse_strategy,
)

DEFAULT_HORIZON = 400


# ---------------------------------------------------------------------------
# Deterministic output


def _render_csv(command: str, params: dict, fieldnames: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    buf.write(f"# pursuit {command}\n")
    buf.write(f"# version={__version__}\n")
    buf.write("# params: " + " ".join(f"{k}={params[k]}" for k in sorted(params)) + "\n")
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _render_json(command: str, params: dict, results) -> str:
    payload = {
        "command": command,
        "version": __version__,
        "params": params,
        "results": results,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _write_out(out: str, text: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _emit(args, command: str, params: dict, fieldnames: list[str] | None, rows) -> None:
    """Write rows as CSV (fieldnames required) or a JSON envelope."""
    if args.format == "csv":
        if fieldnames is None:
            raise ValueError("CSV output needs fieldnames")
        text = _render_csv(command, params, fieldnames, rows)
    else:
        text = _render_json(command, params, rows)
    _write_out(args.out, text)


# ---------------------------------------------------------------------------
# Seeds and graphs


def _trial_entropy(seed: int, trial: int, salt: int = 0) -> tuple[int, int]:
    """Independent (graph_seed, strategy_seed) pair for one trial."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(salt), int(trial)))
    a, b = ss.generate_state(2, np.uint64)
    return int(a), int(b)


def named_graph(spec: str) -> GraphView:
    """Parse graph names: path-K, cycle-K, complete-K, star-K, petersen,
    grid-RxC."""
    if spec == "petersen":
        return petersen_graph()
    if "-" in spec:
        kind, _, arg = spec.partition("-")
        if kind == "grid" and "x" in arg:
            r, _, c = arg.partition("x")
            return grid_graph(int(r), int(c))
        table = {
            "path": path_graph,
            "cycle": cycle_graph,
            "complete": complete_graph,
            "star": star_graph,
        }
        if kind in table:
            return table[kind](int(arg))
    raise SystemExit(f"unknown graph name: {spec!r}")


def _load_graph(args) -> tuple[GraphView, str]:
    if getattr(args, "graph_file", None):
        return read_edge_list(args.graph_file), args.graph_file
    if getattr(args, "graph", None):
        return named_graph(args.graph), args.graph
    raise SystemExit("provide --graph NAME or --graph-file PATH")


# ---------------------------------------------------------------------------
# Trial workers (top level so process pools can pickle them)


def _dense_trial(task: dict) -> dict:
    n, d, C, seed, trial, horizon = (
        task["n"], task["d"], task["C"], task["seed"], task["trial"], task["horizon"],
    )
    gs, ss = _trial_entropy(seed, trial, salt=1)
    p = min(1.0, d / (n - 1))
    g = gnp(n, p, gs)
    strat = dense_strategy(g, DenseStrategyConfig(C=C, seed=ss))
    res = play(g, strat, robber_greedy(), horizon=horizon)
    meta = res.meta
    return {
        "trial": trial,
        "n": n,
        "d": d,
        "C": C,
        "case": meta.get("case"),
        "r": meta.get("r"),
        "omega": meta.get("omega"),
        "cops_used": meta.get("budget_total"),
        "captured": int(res.winner == "cops"),
        "capture_time": res.capture_time,
        "failures": len(meta.get("failures", [])),
    }


def _sparse_trial(task: dict) -> dict:
    n, d, C, eps0, F, seed, trial, horizon = (
        task["n"], task["d"], task["C"], task["eps0"], task["F"],
        task["seed"], task["trial"], task["horizon"],
    )
    gs, ss = _trial_entropy(seed, trial, salt=2)
    g = gnp(n, min(1.0, d / n), gs)
    row = {
        "trial": trial,
        "n": n,
        "d": d,
        "C": C,
        "eps0": eps0,
        "F": F,
        "cops_used": None,
        "captured": 0,
        "capture_time": None,
        "rounds": None,
        "sealed": None,
        "round1_vulnerable": None,
        "failures": None,
        "error": "",
    }
    try:
        sched = radius_schedule(n, d, eps0, F, C)
    except ScheduleError as exc:
        row["error"] = f"schedule: {exc}"
        return row
    density_eps = min(1.0, max(0.05, d / math.log(n) - 0.5))
    x_set = low_degree_set(g, density_eps, d)
    strat = sparse_strategy(g, sched, x_set, seed=ss)
    res = play(g, strat, robber_greedy(), horizon=horizon)
    meta = res.meta
    row.update(
        cops_used=meta.get("budget_total"),
        captured=int(res.winner == "cops"),
        capture_time=res.capture_time,
        rounds=len(meta.get("rounds", [])),
        sealed=meta.get("sealed"),
        round1_vulnerable=meta.get("round1_vulnerable"),
        failures=len(meta.get("failures", [])),
    )
    return row


def _dense_verify_trial(task: dict) -> dict:
    n, d, seed, trial, count, c, tol = (
        task["n"], task["d"], task["seed"], task["trial"],
        task["count"], task["c"], task["tol"],
    )
    gs, ps = _trial_entropy(seed, trial, salt=3)
    g = gnp(n, min(1.0, d / (n - 1)), gs)
    probes = dense_probes(g, ps, count)
    report = verify_dense_lower(g, DenseExpansionParams(c=c, rel_tol=tol), probes)
    worst = report.worst_ratio["ratio"] if report.worst_ratio else None
    return {
        "trial": trial,
        "n": n,
        "d": d,
        "checked": report.checked,
        "skipped": report.skipped,
        "lower_failures": len(report.lower_failures),
        "ratio_failures": len(report.ratio_failures),
        "worst_ratio": worst,
        "passed": int(report.passed),
    }


def _sparse_verify_trial(task: dict) -> dict:
    n, d, seed, trial, count, eps, delta = (
        task["n"], task["d"], task["seed"], task["trial"],
        task["count"], task["eps"], task["delta"],
    )
    gs, ps = _trial_entropy(seed, trial, salt=4)
    g = gnp(n, min(1.0, d / n), gs)
    probes = sparse_probes(g, ps, d, count=count, delta=delta)
    report = sparse_report(g, eps, delta, probes, d=d)
    cond = report.per_condition
    witnesses = emitted = failed = verrors = 0
    for v, vprime, rp in probes.union_probes[:3]:
        u_set = [x for x in vprime if x not in report.low_degree]
        if not u_set:
            continue
        emitted += 1
        out = accessibility_check(g, list(u_set), rp + 1, 1.0 / 50.0, 1.0 / 9.0, d)
        if isinstance(out, AccessibilityWitness):
            witnesses += 1
            verrors += len(verify_witness(g, out))
        else:
            failed += 1
    q_ok = all(qs.per_a_max <= qs.bound for qs in report.q_sets)
    return {
        "trial": trial,
        "n": n,
        "d": d,
        "eps": eps,
        "delta": delta,
        "d_set_size": len(report.low_degree),
        "d_size_ok": int(report.d_size_ok),
        "upper_checked": cond["sphere_upper"]["checked"],
        "upper_passed": cond["sphere_upper"]["passed"],
        "lower_checked": cond["sphere_lower"]["checked"],
        "lower_passed": cond["sphere_lower"]["passed"],
        "union_checked": cond["union"]["checked"],
        "union_passed": cond["union"]["passed"],
        "q_overlap_ok": int(q_ok),
        "witnesses_emitted": emitted,
        "witnesses_ok": witnesses,
        "witnesses_failed": failed,
        "witness_verify_errors": verrors,
    }


def _run_tasks(worker, tasks: list[dict], jobs: int) -> list[dict]:
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(worker, tasks))
    return [worker(t) for t in tasks]


# ---------------------------------------------------------------------------
# Subcommand drivers


def cmd_gen(args) -> None:
    if args.model == "gnp":
        if args.p is None:
            raise SystemExit("gnp needs --p")
        g = gnp(args.n, args.p, args.seed)
    elif args.model == "gnm":
        if args.m is None:
            raise SystemExit("gnm needs --m")
        g = gnm(args.n, args.m, args.seed)
    elif args.model == "regular":
        if args.d is None:
            raise SystemExit("regular needs --d")
        g = random_regular(args.n, int(args.d), args.seed)
    else:
        raise SystemExit(f"unknown model {args.model!r}")
    _write_out(args.out, to_edge_list_text(g))


def cmd_exact(args) -> None:
    g, name = _load_graph(args)
    c = None
    capture_time = None
    for k in range(1, args.k_max + 1):
        try:
            table = solve_k(g, k, position_budget=args.budget)
        except BudgetError as err:
            raise SystemExit(
                f"exact: {err}; no winning placement for k < {k}; "
                "raise --budget or lower --k-max"
            )
        best = table.best_placement()
        if best is not None:
            c = k
            capture_time = best[1]
            break
    result = {
        "graph": name,
        "n": g.n,
        "m": g.num_edges,
        "cop_number": c,
        "capture_time": capture_time,
        "dismantlable": is_copwin_dismantlable(g),
        "k_max_checked": args.k_max,
    }
    params = {"graph": name, "k_max": args.k_max, "budget": args.budget}
    if args.format == "csv":
        _emit(args, "exact", params, list(result.keys()), [result])
    else:
        _emit(args, "exact", params, None, result)


def cmd_simulate(args) -> None:
    n = args.n
    if args.d is None:
        d = math.log(n) ** 3 if args.regime == "dense" else 1.1 * math.log(n)
    else:
        d = args.d
    horizon = args.horizon
    common = {"n": n, "d": d, "C": args.C, "seed": args.seed, "horizon": horizon}
    if args.regime == "dense":
        tasks = [dict(common, trial=t) for t in range(args.trials)]
        rows = _run_tasks(_dense_trial, tasks, args.jobs)
        fields = ["trial", "n", "d", "C", "case", "r", "omega", "cops_used",
                  "captured", "capture_time", "failures"]
        params = dict(common, regime="dense", trials=args.trials)
    else:
        tasks = [dict(common, eps0=args.eps0, F=args.F, trial=t) for t in range(args.trials)]
        rows = _run_tasks(_sparse_trial, tasks, args.jobs)
        fields = ["trial", "n", "d", "C", "eps0", "F", "cops_used", "captured",
                  "capture_time", "rounds", "sealed", "round1_vulnerable",
                  "failures", "error"]
        params = dict(common, regime="sparse", trials=args.trials,
                      eps0=args.eps0, F=args.F)
    _emit(args, "simulate", params, fields, rows)


def cmd_verify_expansion(args) -> None:
    n = args.n
    if args.regime == "dense":
        d = args.d if args.d is not None else math.log(n) ** 3
        tasks = [
            {"n": n, "d": d, "seed": args.seed, "trial": t, "count": args.count,
             "c": args.c, "tol": args.tol}
            for t in range(args.trials)
        ]
        rows = _run_tasks(_dense_verify_trial, tasks, args.jobs)
        fields = ["trial", "n", "d", "checked", "skipped", "lower_failures",
                  "ratio_failures", "worst_ratio", "passed"]
        params = {"regime": "dense", "n": n, "d": d, "seed": args.seed,
                  "trials": args.trials, "count": args.count, "c": args.c,
                  "tol": args.tol}
    else:
        d = args.d if args.d is not None else 1.1 * math.log(n)
        tasks = [
            {"n": n, "d": d, "seed": args.seed, "trial": t, "count": args.count,
             "eps": args.eps, "delta": args.delta}
            for t in range(args.trials)
        ]
        rows = _run_tasks(_sparse_verify_trial, tasks, args.jobs)
        fields = ["trial", "n", "d", "eps", "delta", "d_set_size", "d_size_ok",
                  "upper_checked", "upper_passed", "lower_checked", "lower_passed",
                  "union_checked", "union_passed", "q_overlap_ok",
                  "witnesses_emitted", "witnesses_ok", "witnesses_failed",
                  "witness_verify_errors"]
        params = {"regime": "sparse", "n": n, "d": d, "seed": args.seed,
                  "trials": args.trials, "count": args.count, "eps": args.eps,
                  "delta": args.delta}
    _emit(args, "verify-expansion", params, fields, rows)


def cmd_bounds(args) -> None:
    kind = args.kind
    if kind == "relative":
        value = chernoff_relative(args.mean, args.dev_eps).value
        shown = {"mean": args.mean, "dev_eps": args.dev_eps}
    elif kind == "additive":
        value = chernoff_additive(args.n, args.p, args.a).value
        shown = {"n": args.n, "p": args.p, "a": args.a}
    elif kind == "lower":
        value = chernoff_lower(args.mean, args.t).value
        shown = {"mean": args.mean, "t": args.t}
    elif kind == "bernstein":
        value = bernstein_degree(args.mean, args.x).value
        shown = {"mean": args.mean, "x": args.x}
    elif kind == "psi":
        value = psi(args.x)
        shown = {"x": args.x}
    elif kind == "feps":
        value = f_eps(args.eps, args.x)
        shown = {"eps": args.eps, "x": args.x}
    elif kind == "geps":
        value = g_eps(args.eps)
        shown = {"eps": args.eps}
    else:
        raise SystemExit(f"unknown bound kind {kind!r}")
    result = {"kind": kind, "params": shown, "value": value}
    params = dict(shown, kind=kind)
    if args.format == "csv":
        row = dict(shown, kind=kind, value=value)
        _emit(args, "bounds", params, list(row.keys()), [row])
    else:
        _emit(args, "bounds", params, None, result)


def cmd_zigzag(args) -> None:
    if args.x is not None:
        xs = [args.x]
    else:
        xs = [i / args.points for i in range(1, args.points + 1)]
    rows = [{"x": x, "value": zigzag(x)} for x in xs]
    params = {"points": args.points, "x": args.x}
    _emit(args, "zigzag", params, ["x", "value"], rows)


def cmd_scaling(args) -> None:
    sizes = [int(s) for s in args.sizes.split(",")]
    cs = [float(c) for c in args.Cs.split(",")]
    rows = []
    for n in sizes:
        d = math.log(n) ** 3
        chosen = None
        for C in cs:
            tasks = [
                {"n": n, "d": d, "C": C, "seed": args.seed, "trial": t,
                 "horizon": args.horizon}
                for t in range(args.trials)
            ]
            out = _run_tasks(_dense_trial, tasks, args.jobs)
            captures = sum(r["captured"] for r in out)
            rate = captures / len(out)
            mean_cops = sum(r["cops_used"] for r in out) / len(out)
            achieved = rate >= args.target
            rows.append(
                {
                    "n": n,
                    "d": d,
                    "C": C,
                    "trials": args.trials,
                    "rate": rate,
                    "mean_cops": mean_cops,
                    "ratio_to_sqrt_n": mean_cops / math.sqrt(n),
                    "achieved": int(achieved),
                    "chosen": 0,
                }
            )
            if achieved and chosen is None:
                chosen = len(rows) - 1
                break
        if chosen is not None:
            rows[chosen]["chosen"] = 1
    params = {"sizes": args.sizes, "Cs": args.Cs, "trials": args.trials,
              "target": args.target, "seed": args.seed, "horizon": args.horizon}
    fields = ["n", "d", "C", "trials", "rate", "mean_cops", "ratio_to_sqrt_n",
              "achieved", "chosen"]
    _emit(args, "scaling", params, fields, rows)


# ---------------------------------------------------------------------------
# Parser assembly


def _add_common(sub, *, trials: bool = True) -> None:
    sub.add_argument("--seed", type=int, default=0)
    if trials:
        sub.add_argument("--trials", type=int, default=10)
    sub.add_argument("--out", default="-")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--config", default=None)
    sub.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pursuit", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    g = subs.add_parser("gen", help="generate a random graph as an edge list")
    g.add_argument("--model", choices=("gnp", "gnm", "regular"), default="gnp")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=float, default=None)
    g.add_argument("--m", type=int, default=None)
    g.add_argument("--d", type=float, default=None)
    _add_common(g, trials=False)
    g.set_defaults(func=cmd_gen)

    e = subs.add_parser("exact", help="exact cop number of a small graph")
    e.add_argument("--graph", default=None, help="path-K, cycle-K, complete-K, star-K, petersen, grid-RxC")
    e.add_argument("--graph-file", default=None)
    e.add_argument("--k-max", type=int, default=4)
    e.add_argument("--budget", type=int, default=50_000_000)
    _add_common(e, trials=False)
    e.set_defaults(func=cmd_exact)

    s = subs.add_parser("simulate", help="play seeded pursuit games on random graphs")
    s.add_argument("--regime", choices=("dense", "sparse"), required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=float, default=None)
    s.add_argument("--C", type=float, default=8.0)
    s.add_argument("--eps0", type=float, default=0.5)
    s.add_argument("--F", type=float, default=1.0)
    s.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    _add_common(s)
    s.set_defaults(func=cmd_simulate)

    v = subs.add_parser("verify-expansion", help="empirical expansion checks on random graphs")
    v.add_argument("--regime", choices=("dense", "sparse"), required=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--d", type=float, default=None)
    v.add_argument("--count", type=int, default=100)
    v.add_argument("--c", type=float, default=0.5)
    v.add_argument("--tol", type=float, default=0.25)
    v.add_argument("--eps", type=float, default=0.6)
    v.add_argument("--delta", type=float, default=0.05)
    _add_common(v)
    v.set_defaults(func=cmd_verify_expansion)

    b = subs.add_parser("bounds", help="evaluate one tail bound or helper function")
    b.add_argument("--kind", required=True,
                   choices=("relative", "additive", "lower", "bernstein", "psi", "feps", "geps"))
    b.add_argument("--mean", type=float, default=None)
    b.add_argument("--dev-eps", type=float, default=None)
    b.add_argument("--n", type=int, default=None)
    b.add_argument("--p", type=float, default=None)
    b.add_argument("--a", type=float, default=None)
    b.add_argument("--t", type=float, default=None)
    b.add_argument("--x", type=float, default=None)
    b.add_argument("--eps", type=float, default=None)
    _add_common(b, trials=False)
    b.set_defaults(func=cmd_bounds)

    z = subs.add_parser("zigzag", help="tabulate the zigzag function")
    z.add_argument("--points", type=int, default=1000)
    z.add_argument("--x", type=float, default=None)
    _add_common(z, trials=False)
    z.set_defaults(func=cmd_zigzag)

    c = subs.add_parser("scaling", help="cop budget against sqrt(n) across sizes")
    c.add_argument("--sizes", default="400,900,1600,2500")
    c.add_argument("--Cs", default="2,4,8,16")
    c.add_argument("--target", type=float, default=0.9)
    c.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    _add_common(c)
    c.set_defaults(func=cmd_scaling)

    return parser


def _parse_config(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SystemExit(f"{path}:{lineno}: expected key=value")
            key, _, val = line.partition("=")
            out[key.strip()] = val.strip()
    return out


def _inject_config(argv: list[str]) -> list[str]:
    """Expand --config into CLI tokens placed before explicit flags."""
    if not argv or argv[0].startswith("-"):
        return argv
    path = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
    if path is None:
        return argv
    tokens: list[str] = []
    for key, val in _parse_config(path).items():
        flag = "--" + key.replace("_", "-")
        if val.lower() in ("true", "false"):
            if val.lower() == "true":
                tokens.append(flag)
        else:
            tokens.extend([flag, val])
    return [argv[0]] + tokens + argv[1:]


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    argv = _inject_config(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.func(args)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
