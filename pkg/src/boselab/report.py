"""Delimited outputs and the matplotlib figures rendered alongside them.

All figures are written to files with the headless Agg backend; nothing here
opens a window.  CSV data columns never contain wall-clock values, so repeated
runs with the same configuration produce byte-identical data files.
"""

from __future__ import annotations

import csv
import math
import os
from typing import Iterable, Sequence

from .acceptance import CriterionResult

SWEEP_HEADER = ["rho_a3", "e_over_4pi_rho2_a", "depletion_fraction", "iterations"]


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]) -> str:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
    return path


def append_csv(path: str, header: Sequence[str], row: Sequence) -> str:
    """Append one row, writing the header only when the file is new."""
    new = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", newline="") as fh:
        writer = csv.writer(fh)
        if new:
            writer.writerow(header)
        writer.writerow(row)
    return path


def write_sweep_csv(path: str, points) -> str:
    rows = [[f"{pt.rho_a3:.12e}", f"{pt.e_over_4pi_rho2_a:.12e}",
             f"{pt.depletion_fraction:.12e}", pt.iterations] for pt in points]
    return write_csv(path, SWEEP_HEADER, rows)


def render_sweep_figure(path: str, points, fit=None, reference_slope: float | None = None,
                        title: str = "diluteness sweep") -> str:
    """Correction term versus sqrt(rho a^3) with the fitted line."""
    plt = _pyplot()
    x = [math.sqrt(pt.rho_a3) for pt in points]
    y = [pt.e_over_4pi_rho2_a - 1.0 for pt in points]
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    ax.loglog(x, y, "o", color="tab:blue", label="minimizer")
    if fit is not None:
        xs = [min(x), max(x)]
        ax.loglog(xs, [fit.slope * t + fit.intercept for t in xs], "-",
                  color="tab:blue", alpha=0.7, label=f"fit: slope {fit.slope:.3f}")
    if reference_slope is not None:
        ax.loglog([min(x), max(x)], [reference_slope * min(x), reference_slope * max(x)],
                  "--", color="tab:red", label=f"slope {reference_slope:.4f}")
    ax.set_xlabel(r"$\sqrt{\rho a^3}$")
    ax.set_ylabel(r"$e/(4\pi\rho^2 a) - 1$")
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
    return path


def render_scattering_figure(path: str, solution, title: str = "scattering function") -> str:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    ax.plot(solution.grid, solution.u, "-", color="tab:blue", label="u(r)")
    ax.axvline(solution.range, color="gray", ls=":", lw=1, label="range R")
    ax.set_xlabel("r")
    ax.set_ylabel("u")
    ax.set_title(f"{title}  (a = {solution.a:.6g})")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
    return path


def render_density_figure(path: str, solution, title: str = "quasi-momentum density") -> str:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    ax.plot(solution.x, solution.g, "-", color="tab:green")
    ax.set_xlabel("x")
    ax.set_ylabel("g(x)")
    ax.set_title(f"{title}  (gamma = {solution.gamma_ll:g})")
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
    return path


def format_table(results: list[CriterionResult]) -> str:
    """Fixed-width pass/fail table for the reproduce report."""
    lines = []
    head = f"{'status':6}  {'criterion':48}  {'measured':>13}  {'target':>13}  tolerance"
    lines.append(head)
    lines.append("-" * len(head))
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status:6}  {r.name:48}  {r.measured:13.6g}  {r.target:13.6g}  {r.tolerance}")
        if r.notes:
            lines.append(f"{'':6}  {'':48}  {r.notes}")
    n_fail = sum(not r.passed for r in results)
    lines.append("-" * len(head))
    lines.append(f"{len(results) - n_fail}/{len(results)} criteria passed")
    return "\n".join(lines)


def write_acceptance_csv(path: str, results: list[CriterionResult]) -> str:
    header = ["criterion", "status", "measured", "target", "tolerance", "notes"]
    rows = [[r.name, "PASS" if r.passed else "FAIL", f"{r.measured:.10g}",
             f"{r.target:.10g}", r.tolerance, r.notes] for r in results]
    return write_csv(path, header, rows)


def render_acceptance_figures(results: list[CriterionResult], outdir: str) -> list[str]:
    """Figures for the reproduce report: slope fits and the 1D cross-check."""
    from .bogoliubov import SlopeFit, SweepPoint
    from .asymptotics import LHY_COEFFICIENT, TONKS_COEFFICIENT
    from . import liebliniger

    plt = _pyplot()
    paths = []
    by_name = {r.name: r for r in results}

    sweeps = []
    sc = by_name.get("sqrt-diluteness slope, substitution mode")
    if sc and sc.data.get("points"):
        sweeps.append(("substitution mode", sc, "tab:blue"))
    full = by_name.get("full-potential slope mismatch (negative result)")
    if full and full.data.get("points"):
        sweeps.append(("full potential", full, "tab:orange"))
    if sweeps:
        fig, ax = plt.subplots(figsize=(6.0, 4.4))
        xmin, xmax = math.inf, 0.0
        for label, res, color in sweeps:
            pts = [SweepPoint(**d) for d in res.data["points"]]
            fit = SlopeFit(**res.data["fit"])
            x = [math.sqrt(pt.rho_a3) for pt in pts]
            y = [pt.e_over_4pi_rho2_a - 1.0 for pt in pts]
            xmin, xmax = min(xmin, *x), max(xmax, *x)
            ax.loglog(x, y, "o", color=color, ms=5)
            ax.loglog(x, [fit.slope * t + fit.intercept for t in x], "-", color=color,
                      label=f"{label}: slope {fit.slope:.3f}")
        ax.loglog([xmin, xmax], [LHY_COEFFICIENT * xmin, LHY_COEFFICIENT * xmax], "--",
                  color="tab:red", label=f"universal slope {LHY_COEFFICIENT:.4f}")
        ax.set_xlabel(r"$\sqrt{\rho a^3}$")
        ax.set_ylabel(r"$e/(4\pi\rho^2 a) - 1$")
        ax.set_title("sqrt-diluteness correction: substitution vs full potential")
        ax.legend(fontsize=8)
        fig.tight_layout()
        p = os.path.join(outdir, "lhy_slope.png")
        fig.savefig(p, dpi=160)
        plt.close(fig)
        paths.append(p)

    ll = by_name.get("Lieb-Liniger strong coupling")
    if ll:
        gammas = [math.exp(t) for t in
                  [math.log(1.0) + i * (math.log(1e4) - math.log(1.0)) / 17 for i in range(18)]]
        e_vals = [liebliniger.solve(g).e_tilde for g in gammas]
        closed = [TONKS_COEFFICIENT / (1.0 + 2.0 / g) ** 2 for g in gammas]
        fig, axes = plt.subplots(1, 2, figsize=(9.0, 4.0))
        axes[0].semilogx(gammas, e_vals, "o-", ms=4, label="integral equation")
        axes[0].semilogx(gammas, closed, "--", label=r"$(\pi^2/3)(1+2/\gamma)^{-2}$")
        axes[0].axhline(TONKS_COEFFICIENT, color="gray", ls=":", lw=1, label=r"$\pi^2/3$")
        axes[0].set_xlabel(r"$\gamma$")
        axes[0].set_ylabel(r"$\tilde e(\gamma)$")
        axes[0].legend(fontsize=8)
        rows = ll.data.get("gap_decay", [])
        if rows:
            x = [row["rho_over_c"] for row in rows]
            y = [row["gap"] for row in rows]
            axes[1].loglog(x, y, "o-", label="gap to two-term expansion")
            axes[1].loglog(x, [12.0 * t**2 for t in x], "--",
                           label=r"$12\,(\rho/c)^2$ guide")
            axes[1].set_xlabel(r"$\rho/c$")
            axes[1].set_ylabel("normalized gap")
            axes[1].legend(fontsize=8)
        fig.suptitle("1D delta gas against the dilute expansion")
        fig.tight_layout()
        p = os.path.join(outdir, "lieb_liniger.png")
        fig.savefig(p, dpi=160)
        plt.close(fig)
        paths.append(p)
    return paths
