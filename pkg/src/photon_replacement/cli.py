"""Command-line front end: ``photon-replacement <command> ...``.

Exit codes: 0 success, 2 solver failure or infeasible stage, 3 invalid configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict

import numpy as np

from . import __version__
from ._io import matrix_csv, table_csv, to_json
from .cascade import STRATEGIES, build_strategy, failure_overlap, run_cascade, stage_input_overlap
from .errors import BranchError, DegenerateStateError, InfeasibleStageError, NoRootError
from .fock import fock
from .orthogonalize import (
    analytic_normalized_overlap,
    closed_form_T,
    displacement_sweep,
    dv_conversion_report,
    heralded_pair,
    helstrom_error,
    idp_bound,
    pair_overlap,
    solve_T,
    success_probability,
    transformed_cat,
)
from .wigner import wigner_grid

EXIT_SOLVER = 2
EXIT_CONFIG = 3


class ConfigError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _range(values, name):
    lo, hi, num = float(values[0]), float(values[1]), int(float(values[2]))
    if num < 1 or hi < lo:
        raise ConfigError(f"{name} range must satisfy lo <= hi and n >= 1")
    return np.linspace(lo, hi, num)


def _as_number(v):
    try:
        return float(v) if isinstance(v, str) else v
    except ValueError:
        return v


def _meta(args, command):
    config = {}
    for k, v in sorted(vars(args).items()):
        if k in ("func", "output", "config"):
            continue
        config[k] = [_as_number(x) for x in v] if isinstance(v, list) else v
    return {"version": __version__, "command": command, "config": config, "tol": args.tol}


def _emit(args, text):
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_table(args, command, columns, rows, extra=None):
    meta = _meta(args, command)
    if extra:
        meta.update(extra)
    if args.format == "json":
        _emit(args, to_json({"meta": meta, "columns": list(columns), "rows": rows}))
    else:
        _emit(args, table_csv(columns, rows, meta))


def cmd_orthogonalize(args):
    alpha = args.alpha
    if alpha == 0:
        raise DegenerateStateError("alpha = 0 cannot be orthogonalised")
    T = args.t if args.t is not None else solve_T(alpha, args.tol)
    plus, _ = heralded_pair(alpha, T)
    row = {
        "alpha": alpha,
        "T": T,
        "T_closed_form": closed_form_T(alpha),
        "overlap": pair_overlap(alpha, T),
        "initial_overlap": math.exp(-2 * alpha**2),
        "P_success": plus.probability,
        "P_IDP": idp_bound(alpha),
        "P_err_helstrom": helstrom_error(alpha),
    }
    report = dv_conversion_report(alpha, T, args.squeezing_db)
    for r in report.rows:
        row[f"F[{r.output}|{r.target}]"] = r.fidelity
        row[f"rootF[{r.output}|{r.target}]"] = r.root_fidelity
    _emit_table(args, "orthogonalize", list(row), [row])


def cmd_sweep(args):
    alphas = _range(args.alpha_range, "alpha")
    if np.any(alphas <= 0):
        raise ConfigError("sweep alphas must be > 0")
    if args.what == "surface":
        ts = _range(args.t_range, "T")
        if ts[0] < 0 or ts[-1] > 1:
            raise ConfigError("T range must lie in [0, 1]")
        rows = [
            {"alpha": a, "T": t, "overlap": abs(analytic_normalized_overlap(a, t))}
            for a in alphas
            for t in ts
        ]
        _emit_table(args, "sweep", ["alpha", "T", "overlap"], rows)
        return
    rows = []
    for a in alphas:
        T = solve_T(a, args.tol)
        rows.append(
            {
                "alpha": a,
                "T_opt": T,
                "overlap": pair_overlap(a, T),
                "P_success": success_probability(a, T),
                "P_IDP": idp_bound(a),
            }
        )
    _emit_table(args, "sweep", ["alpha", "T_opt", "overlap", "P_success", "P_IDP"], rows)


def cmd_cascade(args):
    names = ["unadapted", "adapted-success", "adapted-both"] if args.strategy == "all" else [args.strategy]
    if args.alpha <= 0:
        raise DegenerateStateError("alpha must be > 0")
    rows, halts, traces = [], {}, []
    for name in names:
        trace = run_cascade(args.alpha, build_strategy(name, args.stages), strategy=name, tol=args.tol)
        traces.append(trace.to_json())
        halts[name] = trace.halted_at
        for depth in range(1, args.stages + 1):
            row = {"strategy": name, "depth": depth, "cumulative_success": trace.cumulative_at(depth)}
            if depth <= len(trace.stages):
                row.update(trace.rows()[depth - 1])
            rows.append(row)
    columns = [
        "strategy", "depth", "k", "m_success", "m_fail", "T", "p_success", "p_fail", "p_discard",
        "cumulative_success", "overlap_input", "overlap_success", "overlap_fail",
    ]
    extra = {"halted_at": halts, "P_IDP": idp_bound(args.alpha)}
    if args.format == "json":
        _emit(args, to_json({"meta": {**_meta(args, "cascade"), **extra}, "traces": traces}))
    else:
        _emit_table(args, "cascade", columns, rows, extra)


def cmd_fail_overlap(args):
    alphas = _range(args.alpha_range, "alpha")
    if np.any(alphas <= 0):
        raise ConfigError("alphas must be > 0")
    rows, infeasible = [], []
    for a in alphas:
        row = {"alpha": a, "initial_overlap": math.exp(-2 * a**2)}
        try:
            row["pre_stage_overlap"] = stage_input_overlap(a, args.stage, args.strategy)
            row["failure_overlap"] = failure_overlap(a, args.stage, args.herald, args.strategy)
        except InfeasibleStageError:
            row.setdefault("pre_stage_overlap", math.nan)
            row["failure_overlap"] = math.nan
            infeasible.append(float(a))
        rows.append(row)
    _emit_table(
        args, "fail-overlap", ["alpha", "initial_overlap", "pre_stage_overlap", "failure_overlap"], rows,
        {"infeasible_alphas": infeasible},
    )


def _wigner_state(spec, alpha, T):
    if spec == "vacuum":
        return fock(0, 1)
    if spec.startswith("fock:"):
        n = int(spec.split(":", 1)[1])
        return fock(n, n + 1)
    if T is None:
        T = solve_T(alpha)
    if spec in ("psi+", "psi-"):
        plus, minus = heralded_pair(alpha, T)
        return plus.state if spec == "psi+" else minus.state
    if spec == "even-cat-out":
        return transformed_cat(alpha, T, 0.0).state
    if spec == "odd-cat-out":
        return transformed_cat(alpha, T, math.pi).state
    raise ConfigError(f"unknown state {spec!r}")


def cmd_wigner(args):
    state = _wigner_state(args.state, args.alpha, args.t)
    xs = _range(args.x_range, "x")
    ps = _range(args.p_range, "p")
    grid = wigner_grid(state, xs, ps)
    if args.format == "json":
        _emit(args, to_json({"meta": _meta(args, "wigner"), **grid.to_json()}))
    else:
        _emit(args, matrix_csv(grid.x, grid.p, grid.values, _meta(args, "wigner")))


def cmd_dv_report(args):
    report = dv_conversion_report(args.alpha, args.t, args.squeezing_db)
    rows = [asdict(r) for r in report.rows]
    extra = {"T": report.T, "squeezing_orientation": report.squeezing_orientation}
    if args.displacement_range:
        betas = _range(args.displacement_range, "displacement")
        for branch, name in ((1, "psi+"), (-1, "psi-")):
            res = displacement_sweep(args.alpha, report.T, betas, branch)
            rows.append({
                "output": f"D({res.beta.real:.6g}){name}",
                "target": "(|0>-|1>)/sqrt2" if branch > 0 else "(|0>+|1>)/sqrt2",
                "fidelity": res.fidelity,
                "root_fidelity": math.sqrt(res.fidelity),
            })
    _emit_table(args, "dv-report", ["output", "target", "fidelity", "root_fidelity"], rows, extra)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="photon-replacement", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--output", "-o", help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--tol", type=float, default=1e-10, help="overlap tolerance for root solves")
        p.add_argument("--seed", type=int, default=None, help="accepted and ignored (no randomness)")
        p.add_argument("--config", help="JSON file with default values for this command")

    p = sub.add_parser("orthogonalize", help="single-stage report")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--t", type=float, default=None, help="fixed transmissivity (default: solve)")
    p.add_argument("--squeezing-db", type=float, default=2.4)
    common(p)
    p.set_defaults(func=cmd_orthogonalize)

    p = sub.add_parser("sweep", help="overlap surface or zero-overlap contour")
    p.add_argument("--alpha-range", nargs=3, default=["0.05", "2.0", "40"], metavar=("LO", "HI", "N"))
    p.add_argument("--t-range", nargs=3, default=["0.0", "1.0", "101"], metavar=("LO", "HI", "N"))
    p.add_argument("--what", choices=("contour", "surface"), default="contour")
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("cascade", help="multi-stage success probabilities")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--strategy", choices=STRATEGIES[:3] + ("all",), default="all")
    p.add_argument("--stages", type=int, default=8)
    common(p)
    p.set_defaults(func=cmd_cascade)

    p = sub.add_parser("fail-overlap", help="branch overlap after a failure herald")
    p.add_argument("--alpha-range", nargs=3, default=["0.05", "1.5", "30"], metavar=("LO", "HI", "N"))
    p.add_argument("--stage", type=int, default=1)
    p.add_argument("--herald", type=int, default=0)
    p.add_argument("--strategy", choices=STRATEGIES[:3], default="adapted-success")
    common(p)
    p.set_defaults(func=cmd_fail_overlap)

    p = sub.add_parser("wigner", help="Wigner function on a grid")
    p.add_argument("--state", default="psi+", help="psi+|psi-|even-cat-out|odd-cat-out|vacuum|fock:n")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--x-range", nargs=3, default=["-4", "4", "81"], metavar=("LO", "HI", "N"))
    p.add_argument("--p-range", nargs=3, default=["-4", "4", "81"], metavar=("LO", "HI", "N"))
    common(p)
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("dv-report", help="conversion fidelities")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--squeezing-db", type=float, default=2.4)
    p.add_argument("--displacement-range", nargs=3, default=None, metavar=("LO", "HI", "N"))
    common(p)
    p.set_defaults(func=cmd_dv_report)
    return parser


def _apply_config(parser, argv):
    """Re-parse with defaults taken from ``--config`` (command-line flags still win)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known_args, _ = pre.parse_known_args(argv)
    choices = parser._subparsers._group_actions[0].choices
    command = next((a for a in argv if a in choices), None)
    if not known_args.config or command is None:
        return parser.parse_args(argv)
    with open(known_args.config, encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ConfigError("config file must hold a JSON object")
    subparser = choices[command]
    known = {a.dest for a in subparser._actions}
    cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    unknown = set(cfg) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for action in subparser._actions:
        if action.dest in cfg:
            action.required = False
    subparser.set_defaults(**cfg)
    return parser.parse_args(argv)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        if args.tol <= 0:
            raise ConfigError("--tol must be > 0")
        args.func(args)
    except (ConfigError, DegenerateStateError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NoRootError, BranchError, InfeasibleStageError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    return 0


if __name__ == "__main__":
    sys.exit(main())
