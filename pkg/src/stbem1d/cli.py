"""Command-line front end: verification suites, manufactured solves and refinement studies.

Exit codes: 0 success, 1 failed verification, 2 bad configuration, 3 solver failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from pathlib import Path

import numpy as np

from .boundary import BoundaryGrid, CauchyData
from .config import ConfigError, load_config
from .errors import SolverError
from .solvers import default_modes, reconstruct_field, solve_dirichlet, solve_neumann
from .verification import (
    calderon_checks,
    calderon_sweep,
    convergence_study,
    first_failure,
    ht_property_suite,
    jump_suite,
    manufactured_field,
)

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_SOLVER = 0, 1, 2, 3
# residuals below this count as exact on travel-time aligned grids
CALDERON_FLOOR = 1e-12
CONVERGENCE_COLUMNS = ("level", "m", "h", "err_L2", "err_dual_proxy", "rate")


def fmt(x):
    return "" if x is None else f"{x:.12e}"


def _write_csv(header, rows, target):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    text = buf.getvalue()
    if target is None:
        sys.stdout.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")
        print(f"wrote {target}")


def _report(title, checks):
    print(title)
    for c in checks:
        print("  " + c.line())
    bad = first_failure(checks)
    if bad is not None:
        print(f"verification failed: {bad.name}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(cfg, args):
    if args.suite == "ht":
        return _report("modified Hilbert transformation properties", ht_property_suite())
    if args.suite == "jumps":
        return _report("jump relations", jump_suite())
    table = calderon_sweep(cfg.calderon_T, cfg.levels)
    print(f"Calderon residuals, T = {cfg.calderon_T}, m = {', '.join(map(str, cfg.levels))}")
    for name, rs in table.items():
        print(f"  {name}: " + " ".join(f"{r:.3e}" for r in rs))
    return _report("Calderon refinement", calderon_checks(table, CALDERON_FLOOR))


def _density_rows(d):
    times = d.grid.midpoints if d.degree == 0 else d.grid.nodes[1:]
    return [(e, i, fmt(float(times[i])), fmt(float(d.values[e, i]))) for e in (0, 1) for i in range(d.grid.m_steps)]


def _manufactured(cfg):
    grid = BoundaryGrid(cfg.T, cfg.m_steps)
    return grid, manufactured_field(cfg.power).cauchy_data(cfg.T)


def _solve_dirichlet(cfg):
    grid, cauchy = _manufactured(cfg)
    modes = max(cfg.n_modes, default_modes(grid))
    return grid, cauchy, solve_dirichlet(grid, cauchy.dirichlet, cfg.method, modes)


def cmd_solve_dirichlet(cfg, args):
    _, cauchy, w = _solve_dirichlet(cfg)
    err = (w.to_function() - cauchy.neumann).l2_norm()
    print(f"Dirichlet problem ({cfg.method}), m = {cfg.m_steps}: L2 error of Neumann datum {err:.6e}", file=sys.stderr)
    _write_csv(("endpoint", "index", "t", "neumann_datum"), _density_rows(w), args.output)
    return EXIT_OK


def cmd_solve_neumann(cfg, args):
    grid, cauchy = _manufactured(cfg)
    z = solve_neumann(grid, cauchy.neumann, cfg.rhs_operator)
    err = (z.to_function() - cauchy.dirichlet).l2_norm()
    print(f"Neumann problem ({cfg.rhs_operator}), m = {cfg.m_steps}: L2 error of Dirichlet datum {err:.6e}", file=sys.stderr)
    _write_csv(("endpoint", "index", "t", "dirichlet_datum"), _density_rows(z), args.output)
    return EXIT_OK


def cmd_reconstruct(cfg, args):
    _, cauchy, w = _solve_dirichlet(cfg)
    field = manufactured_field(cfg.power)
    n = cfg.reconstruct_points
    pts = [((i + 1) / (n + 1), cfg.T * (j + 1) / (n + 1)) for i in range(n) for j in range(n)]
    u = reconstruct_field(CauchyData(cauchy.dirichlet, w), pts)
    exact = np.array([field.value(x, t) for x, t in pts])
    print(f"max reconstruction error {np.max(np.abs(u - exact)):.6e}", file=sys.stderr)
    rows = [(fmt(x), fmt(t), fmt(a), fmt(b), fmt(abs(a - b))) for (x, t), a, b in zip(pts, u, exact)]
    _write_csv(("x", "t", "u", "u_exact", "abs_error"), rows, args.output)
    return EXIT_OK


def cmd_convergence(cfg, args):
    rows = convergence_study(
        cfg.problem, cfg.levels, cfg.T, cfg.power, cfg.method, cfg.rhs_operator, cfg.n_modes
    )
    cols = [c for c in CONVERGENCE_COLUMNS if c not in ("err_L2", "err_dual_proxy") or c[4:] in cfg.norms]
    table = [tuple(str(r[c]) if c in ("level", "m") else fmt(r[c]) for c in cols) for r in rows]
    _write_csv(cols, table, args.output or cfg.output)
    errs = [r["err_L2"] for r in rows]
    if any(b >= a for a, b in zip(errs, errs[1:])):
        print("verification failed: L2 error not strictly decreasing", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "solve-dirichlet": cmd_solve_dirichlet,
    "solve-neumann": cmd_solve_neumann,
    "reconstruct": cmd_reconstruct,
    "convergence": cmd_convergence,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", help="INI run configuration (built-in defaults when omitted)")
    common.add_argument("-o", "--output", help="output file (stdout for solves; convergence defaults to [study] output)")
    common.add_argument("-v", "--verbose", action="store_true")
    parser = argparse.ArgumentParser(prog="stbem1d", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=("ht", "jumps", "calderon"))
    for name in COMMANDS:
        if name != "verify":
            sub.add_parser(name, parents=[common])
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[args.command](cfg, args)
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
