"""Command-line front end: JSON results on stdout, CSV and figures on disk.

Subcommands: scatter, bog-min, bog-sweep, asymptote, estimate, lieb-liniger,
reproduce.  Exit codes: 0 success, 2 invalid input, 3 solver non-convergence
or failed acceptance criteria, 64 unknown subcommand.

A JSON config file passed with --config supplies defaults for any flag;
explicit flags win.  BDL_JOBS sets the default worker count for sweeps.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone

import numpy as np

from . import __version__, acceptance, asymptotics, bogoliubov, liebliniger, report, scattering
from .asymptotics import DiluteInputs, HigherOrderConstants
from .errors import SolverError, ValidationError
from .potentials import potential_from_json

SUBCOMMANDS = ("scatter", "bog-min", "bog-sweep", "asymptote", "estimate",
               "lieb-liniger", "reproduce")

_USAGE = (
    "usage: boselab {scatter | bog-min | bog-sweep | asymptote | estimate | "
    "lieb-liniger | reproduce} [options]\n"
    "Run 'boselab <subcommand> --help' for the options of each subcommand."
)


def _record(subcommand: str, inputs: dict, outputs: dict, provenance: dict | None = None) -> dict:
    return {
        "subcommand": subcommand,
        "inputs": inputs,
        "outputs": outputs,
        "provenance": {"package": "boselab", "version": __version__,
                       **(provenance or {})},
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def _emit(record: dict) -> None:
    print(json.dumps(record, indent=2, sort_keys=True, default=float))


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise ValidationError("config file must hold a JSON object")
    return cfg


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("BDL_JOBS", "1")))
    except ValueError:
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boselab", description=__doc__)
    parser.add_argument("--version", action="version", version=f"boselab {__version__}")
    sub = parser.add_subparsers(dest="command")

    def add_common(p):
        p.add_argument("--config", help="JSON file with default option values")

    p = sub.add_parser("scatter", help="zero-energy scattering length and function")
    add_common(p)
    p.add_argument("--potential", help='potential JSON, e.g. {"kind":"hardcore","R":1}')
    p.add_argument("--dim", type=int, choices=(1, 2, 3))
    p.add_argument("--grid-points", type=int, dest="grid_points")
    p.add_argument("--rout-factor", type=float, dest="rout_factor")
    p.add_argument("--csv", help="write (r, u) samples to this CSV file")
    p.add_argument("--figure", help="render u(r) to this PNG file")

    p = sub.add_parser("bog-min", help="minimize the quasi-free energy at fixed density")
    add_common(p)
    p.add_argument("--rho", type=float)
    p.add_argument("--mode", choices=("full", "scattering-constant"))
    p.add_argument("--a", type=float, help="scattering length (substitution mode)")
    p.add_argument("--potential", help="potential JSON (full mode)")
    p.add_argument("--grid-nodes", type=int, dest="grid_nodes")
    p.add_argument("--cutoff", type=float)
    p.add_argument("--p-min", type=float, dest="p_min")

    p = sub.add_parser("bog-sweep", help="diluteness sweep of the minimized energy")
    add_common(p)
    p.add_argument("--mode", choices=("full", "scattering-constant"))
    p.add_argument("--a", type=float)
    p.add_argument("--potential")
    p.add_argument("--rho-a3-min", type=float, dest="rho_a3_min")
    p.add_argument("--rho-a3-max", type=float, dest="rho_a3_max")
    p.add_argument("--count", type=int)
    p.add_argument("--grid-nodes", type=int, dest="grid_nodes")
    p.add_argument("--cutoff", type=float)
    p.add_argument("--jobs", type=int)
    p.add_argument("--csv", help="write sweep rows to this CSV file")
    p.add_argument("--no-figures", action="store_true",
                   help="skip the PNG rendered alongside the CSV")

    p = sub.add_parser("asymptote", help="closed-form energy density expansions")
    add_common(p)
    p.add_argument("--formula", choices=("lhy", "e2d", "mora-castin", "e1d",
                                         "hardcore1d", "wu"))
    p.add_argument("--dim", type=int, choices=(1, 2, 3))
    p.add_argument("--rho", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--constants", help='JSON for {"D","r_s","C","I"}')
    p.add_argument("--csv", help="append (formula, rho, a, energy) to this CSV file")

    p = sub.add_parser("estimate", help="healing length, mode count, depletion bound")
    add_common(p)
    p.add_argument("--rho", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--R-trap", type=float, dest="r_trap")
    p.add_argument("--L-box", type=float, dest="l_box")

    p = sub.add_parser("lieb-liniger", help="exact 1D delta-gas ground state")
    add_common(p)
    p.add_argument("--gamma", type=float, help="dimensionless coupling c/rho")
    p.add_argument("--rho", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--nodes", type=int)
    p.add_argument("--csv", help="write (x, g) samples to this CSV file")
    p.add_argument("--figure", help="render g(x) to this PNG file")

    p = sub.add_parser("reproduce", help="run the acceptance suite and report")
    add_common(p)
    p.add_argument("--outdir", default="reproduce_out")
    p.add_argument("--no-figures", action="store_true")

    return parser


def _pick(args, config: dict, key: str, default=None, required: bool = False):
    val = getattr(args, key, None)
    if val is None:
        val = config.get(key, config.get(key.replace("_", "-"), default))
    if required and val is None:
        raise ValidationError(f"missing required option --{key.replace('_', '-')}")
    return val


def _cmd_scatter(args, config) -> int:
    pot_spec = _pick(args, config, "potential", required=True)
    dim = int(_pick(args, config, "dim", required=True))
    steps = int(_pick(args, config, "grid_points", 10_000))
    rout = float(_pick(args, config, "rout_factor", 2.0))
    pot = potential_from_json(pot_spec)
    grid = scattering.ScatteringGrid(steps=steps, rout_factor=rout)
    sol = scattering.solve(pot, dim, grid)
    outputs = {"a": sol.a, "R": sol.range, "residual": sol.residual, "dim": sol.dim}
    csv_path = _pick(args, config, "csv")
    if csv_path:
        rows = zip((f"{r:.12e}" for r in sol.grid), (f"{u:.12e}" for u in sol.u))
        report.write_csv(csv_path, ["r", "u"], rows)
        outputs["csv"] = csv_path
    fig_path = _pick(args, config, "figure")
    if fig_path:
        report.render_scattering_figure(fig_path, sol)
        outputs["figure"] = fig_path
    _emit(_record("scatter", {"potential": pot.to_json(), "dim": dim,
                              "grid_points": steps, "rout_factor": rout}, outputs,
                  {"ode": "rk4", "step": f"R/{steps}"}))
    return 0


def _interaction_mode(args, config):
    mode_name = _pick(args, config, "mode", required=True)
    if mode_name == "scattering-constant":
        a = _pick(args, config, "a", required=True)
        return bogoliubov.ScatteringConstant(a=float(a)), {"mode": mode_name, "a": float(a)}
    pot = potential_from_json(_pick(args, config, "potential", required=True))
    return bogoliubov.FullPotential(pot), {"mode": mode_name, "potential": pot.to_json()}


def _grid_spec(args, config) -> bogoliubov.GridSpec:
    nodes = int(_pick(args, config, "grid_nodes", 400))
    cutoff = _pick(args, config, "cutoff")
    p_min = _pick(args, config, "p_min")
    return bogoliubov.GridSpec(nodes=nodes,
                               p_min=None if p_min is None else float(p_min),
                               cutoff=None if cutoff is None else float(cutoff))


def _cmd_bog_min(args, config) -> int:
    rho = float(_pick(args, config, "rho", required=True))
    mode, mode_echo = _interaction_mode(args, config)
    grid_spec = _grid_spec(args, config)
    state, energy, diag = bogoliubov.minimize(rho, mode, grid_spec)
    dep = bogoliubov.depletion(state)
    outputs = {
        "energy": energy.as_dict(),
        "depletion": {"rho_plus": dep.rho_plus, "fraction": dep.fraction},
        "rho0": state.rho0,
        "diagnostics": diag.__dict__,
    }
    _emit(_record("bog-min", {"rho": rho, **mode_echo,
                              "grid_nodes": grid_spec.nodes,
                              "cutoff": grid_spec.cutoff, "p_min": grid_spec.p_min},
                  outputs, {"grad_tol": diag.grad_tol}))
    return 0


def _sweep_payload(x: float, mode_echo: dict, grid_spec) -> dict:
    return {"x": x, "mode": mode_echo,
            "nodes": grid_spec.nodes, "cutoff": grid_spec.cutoff, "p_min": grid_spec.p_min}


def _sweep_worker(payload: dict) -> dict:
    echo = payload["mode"]
    if echo["mode"] == "scattering-constant":
        mode = bogoliubov.ScatteringConstant(a=echo["a"])
    else:
        mode = bogoliubov.FullPotential(potential_from_json(echo["potential"]))
    grid_spec = bogoliubov.GridSpec(nodes=payload["nodes"], p_min=payload["p_min"],
                                    cutoff=payload["cutoff"])
    pt = bogoliubov.lhy_sweep(mode, [payload["x"]], grid_spec)[0]
    return pt.__dict__


def _cmd_bog_sweep(args, config) -> int:
    mode, mode_echo = _interaction_mode(args, config)
    lo = float(_pick(args, config, "rho_a3_min", required=True))
    hi = float(_pick(args, config, "rho_a3_max", required=True))
    count = int(_pick(args, config, "count", 6))
    if count < 2:
        raise ValidationError("sweep count must be >= 2")
    if not (0 < lo < hi):
        raise ValidationError("need 0 < rho-a3-min < rho-a3-max")
    jobs = int(_pick(args, config, "jobs", _default_jobs()))
    grid_spec = _grid_spec(args, config)
    xs = np.logspace(math.log10(lo), math.log10(hi), count)

    if jobs > 1:
        payloads = [_sweep_payload(float(x), mode_echo, grid_spec) for x in xs]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            dicts = list(pool.map(_sweep_worker, payloads))
        points = [bogoliubov.SweepPoint(**d) for d in dicts]
    else:
        points = bogoliubov.lhy_sweep(mode, xs, grid_spec)
    fit = bogoliubov.fit_sqrt_slope(points)

    outputs = {
        "points": [pt.__dict__ for pt in points],
        "fit": {"slope": fit.slope, "intercept": fit.intercept},
        "reference_slope": asymptotics.LHY_COEFFICIENT,
    }
    csv_path = _pick(args, config, "csv")
    if csv_path:
        report.write_sweep_csv(csv_path, points)
        outputs["csv"] = csv_path
        if not args.no_figures:
            fig_path = os.path.splitext(csv_path)[0] + ".png"
            report.render_sweep_figure(fig_path, points, fit,
                                       asymptotics.LHY_COEFFICIENT,
                                       title=f"{mode_echo['mode']} sweep")
            outputs["figure"] = fig_path
    _emit(_record("bog-sweep", {**mode_echo, "rho_a3_min": lo, "rho_a3_max": hi,
                                "count": count, "jobs": jobs,
                                "grid_nodes": grid_spec.nodes}, outputs))
    return 0


def _cmd_asymptote(args, config) -> int:
    formula = _pick(args, config, "formula", required=True)
    rho = float(_pick(args, config, "rho", required=True))
    a = float(_pick(args, config, "a", required=True))
    consts_spec = _pick(args, config, "constants")
    consts = HigherOrderConstants(**json.loads(consts_spec)) if consts_spec \
        else HigherOrderConstants()
    dims = {"lhy": 3, "wu": 3, "e2d": 2, "mora-castin": 2, "e1d": 1, "hardcore1d": 1}
    dim = int(_pick(args, config, "dim", dims[formula]))
    if dim != dims[formula]:
        raise ValidationError(f"formula {formula} is defined in d = {dims[formula]}")

    if formula == "lhy":
        energy = asymptotics.e3d_lhy(DiluteInputs(rho, a, 3))
    elif formula == "wu":
        energy = asymptotics.wu_expansion(DiluteInputs(rho, a, 3), consts)
    elif formula == "e2d":
        energy = asymptotics.e2d(DiluteInputs(rho, a, 2))
    elif formula == "mora-castin":
        energy = asymptotics.mora_castin(DiluteInputs(rho, a, 2), consts)
    elif formula == "e1d":
        energy = asymptotics.e1d(DiluteInputs(rho, a, 1))
    else:
        energy = asymptotics.e1d_hardcore_exact(rho, a)

    diluteness = rho * abs(a) ** dim
    outputs = {"energy_density": energy, "diluteness": diluteness,
               "constants": {"D": consts.D, "r_s": consts.r_s, "C": consts.C,
                             "I": consts.I, "note": consts.note}}
    csv_path = _pick(args, config, "csv")
    if csv_path:
        report.append_csv(csv_path, ["formula", "dim", "rho", "a", "energy_density"],
                          [formula, dim, f"{rho:.12e}", f"{a:.12e}", f"{energy:.12e}"])
        outputs["csv"] = csv_path
    _emit(_record("asymptote", {"formula": formula, "dim": dim, "rho": rho, "a": a},
                  outputs))
    return 0


def _cmd_estimate(args, config) -> int:
    rho = float(_pick(args, config, "rho", required=True))
    a = float(_pick(args, config, "a", required=True))
    r_trap = float(_pick(args, config, "r_trap", required=True))
    l_box = float(_pick(args, config, "l_box", required=True))
    est = asymptotics.physical_estimates(rho, a, r_trap, l_box)
    outputs = {
        "healing_length": est.healing_length,
        "mode_count": est.mode_count,
        "mode_count_rounded": est.mode_count_rounded,
        "mode_count_display": f"~ {est.mode_count_rounded}",
        "depletion_bound": est.depletion_bound,
    }
    _emit(_record("estimate", {"rho": rho, "a": a, "R_trap": r_trap, "L_box": l_box},
                  outputs))
    return 0


def _cmd_lieb_liniger(args, config) -> int:
    gamma = _pick(args, config, "gamma")
    rho = _pick(args, config, "rho")
    c = _pick(args, config, "c")
    if gamma is None:
        if rho is None or c is None:
            raise ValidationError("need --gamma or both --rho and --c")
        gamma = float(c) / float(rho)
    gamma = float(gamma)
    nodes = int(_pick(args, config, "nodes", 128))
    sol = liebliniger.solve(gamma, liebliniger.QuadSpec(nodes=nodes))
    outputs = {"gamma": sol.gamma_ll, "lambda": sol.lam, "e_tilde": sol.e_tilde,
               "residual": sol.residual}
    if rho is not None:
        outputs["energy_density"] = float(rho) ** 3 * sol.e_tilde
    csv_path = _pick(args, config, "csv")
    if csv_path:
        rows = zip((f"{x:.12e}" for x in sol.x), (f"{g:.12e}" for g in sol.g))
        report.write_csv(csv_path, ["x", "g"], rows)
        outputs["csv"] = csv_path
    fig_path = _pick(args, config, "figure")
    if fig_path:
        report.render_density_figure(fig_path, sol)
        outputs["figure"] = fig_path
    _emit(_record("lieb-liniger", {"gamma": gamma, "nodes": nodes}, outputs))
    return 0


def _cmd_reproduce(args, config) -> int:
    outdir = _pick(args, config, "outdir", "reproduce_out")
    os.makedirs(outdir, exist_ok=True)
    results = acceptance.run_all()
    print(report.format_table(results))
    for res in results:
        rows = res.data.get("gap_decay")
        if rows:
            print("\n1D delta-gas gap decay (normalized by the free-fermion value):")
            print(f"{'rho/c':>10}  {'gap':>12}  {'gap/(rho/c)':>12}")
            for row in rows:
                print(f"{row['rho_over_c']:>10.0e}  {row['gap']:>12.4e}  "
                      f"{row['gap_over_rho_over_c']:>12.4e}")
    csv_path = report.write_acceptance_csv(os.path.join(outdir, "acceptance.csv"), results)
    json_path = os.path.join(outdir, "acceptance.json")
    with open(json_path, "w") as fh:
        json.dump({"results": [r.row() for r in results],
                   "generated": datetime.now(timezone.utc).isoformat()}, fh, indent=2)
    artifacts = [csv_path, json_path]
    if not args.no_figures:
        artifacts += report.render_acceptance_figures(results, outdir)
    print("artifacts:", ", ".join(artifacts))
    return 0 if all(r.passed for r in results) else 3


_HANDLERS = {
    "scatter": _cmd_scatter,
    "bog-min": _cmd_bog_min,
    "bog-sweep": _cmd_bog_sweep,
    "asymptote": _cmd_asymptote,
    "estimate": _cmd_estimate,
    "lieb-liniger": _cmd_lieb_liniger,
    "reproduce": _cmd_reproduce,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    if argv and argv[0] in ("-h", "--help"):
        print(_USAGE)
        return 0
    if argv and argv[0] == "--version":
        print(f"boselab {__version__}")
        return 0
    if not argv or argv[0] not in SUBCOMMANDS:
        print(_USAGE, file=sys.stderr)
        return 64
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 0
        return code
    try:
        config = _load_config(getattr(args, "config", None))
        return _HANDLERS[args.command](args, config)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
