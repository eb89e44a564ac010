"""Verification suites and refinement studies used by the CLI and the acceptance tests."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .boundary import (
    DUAL,
    NORMALS,
    POINTS,
    TRACE,
    BoundaryDensity,
    BoundaryGrid,
    PowerProfile,
    WaveField,
)
from .errors import ParameterError
from .hilbert import ht_apply, ht_gram, ht_inverse
from .operators import calderon_residuals, function_spectral_norm
from .potentials import (
    DIRICHLET,
    DOUBLE,
    EXTERIOR,
    INTERIOR,
    NEUMANN,
    SINGLE,
    double_layer_dx,
    double_layer_eval,
    potential_trace,
    single_layer_dx,
    single_layer_eval,
)
from .solvers import default_modes, solve_dirichlet, solve_neumann
from .spectral import SINE, COSINE, QuarterWaveSeries, TimeInterval, differentiate, l2_inner, l2_norm


@dataclass(frozen=True)
class Check:
    """One named invariant: worst observed deviation against its tolerance."""

    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self):
        return bool(np.isfinite(self.deviation) and self.deviation <= self.tolerance)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: max deviation {self.deviation:.3e} (tolerance {self.tolerance:.0e})"


def first_failure(checks):
    return next((c for c in checks if not c.passed), None)


# -- modified Hilbert transformation -------------------------------------


def ht_property_suite(n_samples=1000, max_modes=64, seed=0, tol=1e-12, positivity_tol=1e-10):
    """Adjointness, derivative anti-commutation, isometry, positivity and inverse composition.

    Each sample draws T in [0.5, 4], a truncation n <= max_modes and normal
    coefficient vectors.  Pairings use the closed-form Gram matrices.
    """
    rng = np.random.default_rng(seed)
    worst = dict.fromkeys(("adjoint", "derivative", "isometry", "positivity", "inverse"), 0.0)
    for _ in range(n_samples):
        iv = TimeInterval(float(rng.uniform(0.5, 4.0)), int(rng.integers(1, max_modes + 1)))
        n = iv.n_modes
        u = QuarterWaveSeries(iv, SINE, rng.standard_normal(n))
        v = QuarterWaveSeries(iv, COSINE, rng.standard_normal(n))

        adj = abs(l2_inner(ht_apply(u), v) - l2_inner(u, ht_inverse(v)))
        lhs = differentiate(ht_apply(u))
        rhs = ht_inverse(differentiate(u))
        der = float(np.max(np.abs(lhs.coeffs + rhs.coeffs))) if lhs.basis_kind == rhs.basis_kind else math.inf
        iso = abs(l2_norm(ht_apply(u)) - l2_norm(u))
        back = ht_inverse(ht_apply(u))
        inv = float(np.max(np.abs(back.coeffs - u.coeffs))) if back.basis_kind == SINE else math.inf
        M = ht_gram(iv).sym()
        quad = float(u.coeffs @ M @ u.coeffs)

        worst["adjoint"] = max(worst["adjoint"], adj)
        worst["derivative"] = max(worst["derivative"], der)
        worst["isometry"] = max(worst["isometry"], iso)
        worst["inverse"] = max(worst["inverse"], inv)
        worst["positivity"] = max(worst["positivity"], -quad)
    return [
        Check("adjointness <H u, v> = <u, H^-1 v>", worst["adjoint"], tol),
        Check("derivative anti-commutation d/dt H u = -H^-1 d/dt u", worst["derivative"], tol),
        Check("isometry |H u| = |u|", worst["isometry"], tol),
        Check("positivity <u, H u> >= 0", max(worst["positivity"], 0.0), positivity_tol),
        Check("inverse composition H^-1 H u = u", worst["inverse"], tol),
    ]


# -- jump relations -------------------------------------------------------


def _random_density(rng, grid, degree):
    vals = rng.uniform(-1.0, 1.0, (2, grid.m_steps))
    return BoundaryDensity(grid, degree, vals, DUAL if degree == 0 else TRACE)


def _limit(point_eval, e, t, delta):
    """(interior, exterior) values of a potential evaluator approaching end point e."""
    y, n = POINTS[e], NORMALS[e]
    return point_eval(y - n * delta, t), point_eval(y + n * delta, t)


def jump_suite(n_densities=50, m_values=(8, 16), T=2.0, seed=0, tol=1e-10, delta=1e-12):
    """The four jump relations at grid midpoints.

    Each identity is checked twice: from the one-sided trace formulas and from
    point evaluations of the potentials at distance ``delta`` on either side.
    Densities alternate between piecewise constants and hats.
    """
    rng = np.random.default_rng(seed)
    worst = {k: 0.0 for k in ("S dirichlet", "S neumann", "D dirichlet", "D neumann")}
    for k in range(n_densities):
        grid = BoundaryGrid(T, m_values[k % len(m_values)])
        w = _random_density(rng, grid, k % 2)
        z = _random_density(rng, grid, 1)
        wf, zf = w.to_function(), z.to_function()
        for e in (0, 1):
            n = NORMALS[e]
            y = POINTS[e]
            for t in grid.midpoints:
                def jmp(kind, which, dens):
                    return potential_trace(kind, which, EXTERIOR, dens, y, t) - potential_trace(
                        kind, which, INTERIOR, dens, y, t
                    )

                si, se = _limit(lambda x, s: single_layer_eval(wf, x, s), e, t, delta)
                ni, ne = _limit(lambda x, s: n * single_layer_dx(wf, x, s), e, t, delta)
                di, de = _limit(lambda x, s: double_layer_eval(zf, x, s), e, t, delta)
                mi, me = _limit(lambda x, s: n * double_layer_dx(zf, x, s), e, t, delta)
                we, ze = wf(e, t), zf(e, t)
                worst["S dirichlet"] = max(worst["S dirichlet"], abs(jmp(SINGLE, DIRICHLET, w)), abs(se - si))
                worst["S neumann"] = max(worst["S neumann"], abs(jmp(SINGLE, NEUMANN, w) + we), abs(ne - ni + we))
                worst["D dirichlet"] = max(worst["D dirichlet"], abs(jmp(DOUBLE, DIRICHLET, z) - ze), abs(de - di - ze))
                worst["D neumann"] = max(worst["D neumann"], abs(jmp(DOUBLE, NEUMANN, z)), abs(me - mi))
    return [
        Check("[gamma S w] = 0", worst["S dirichlet"], tol),
        Check("[gamma_N S w] = -w", worst["S neumann"], tol),
        Check("[gamma D z] = z", worst["D dirichlet"], tol),
        Check("[gamma_N D z] = 0", worst["D neumann"], tol),
    ]


# -- Calderon identities --------------------------------------------------


def calderon_sweep(T=1.5, levels=(8, 16, 32, 64)):
    """Residuals per level, {identity: [r_m for m in levels]}."""
    table = {}
    for m in levels:
        for name, r in calderon_residuals(BoundaryGrid(T, m)).items():
            table.setdefault(name, []).append(r)
    return table


def calderon_checks(table, floor=0.0):
    """Worst successive ratio r_2m / r_m per identity; passes below 1.

    Pairs where both residuals are at or below ``floor`` count as resolved
    (identities that hold to roundoff on grids aligned with the travel time).
    """
    checks = []
    for name, rs in table.items():
        ratios = [b / a for a, b in zip(rs, rs[1:]) if max(a, b) > floor]
        checks.append(Check(f"Calderon {name} decreasing", max(ratios, default=0.0), math.nextafter(1.0, 0.0)))
    return checks


# -- refinement studies ---------------------------------------------------


DIRICHLET_PROBLEM, NEUMANN_PROBLEM = "dirichlet", "neumann"


def manufactured_field(power=3):
    """Right-moving d'Alembert wave F(t - x) with F(s) = s^power for s > 0."""
    return WaveField(PowerProfile(power))


def convergence_rows(errors):
    """log2 ratios of successive errors; the first entry has no rate."""
    return [None] + [math.log2(a / b) if a > 0 and b > 0 else math.nan for a, b in zip(errors, errors[1:])]


def convergence_study(
    problem=DIRICHLET_PROBLEM,
    levels=(8, 16, 32, 64),
    T=2.0,
    power=3,
    method="ht",
    rhs_operator="Kp",
    n_modes=None,
):
    """Solve on each level and compare with the manufactured traces.

    The exact manufactured traces are the data.  Returns one dict per level with keys level, m, h, err_L2, err_dual_proxy
    and rate (log2 of the L2 error ratio to the previous level).  The proxy is
    the order -1/2 quarter-wave norm of the density error.
    """
    if problem not in (DIRICHLET_PROBLEM, NEUMANN_PROBLEM):
        raise ParameterError(f"problem must be dirichlet or neumann, got {problem!r}")
    cauchy = manufactured_field(power).cauchy_data(T)
    rows = []
    for level, m in enumerate(levels):
        grid = BoundaryGrid(T, int(m))
        modes = default_modes(grid) if n_modes is None else max(int(n_modes), 4 * grid.m_steps)
        if problem == DIRICHLET_PROBLEM:
            sol = solve_dirichlet(grid, cauchy.dirichlet, method, modes)
            exact = cauchy.neumann
        else:
            sol = solve_neumann(grid, cauchy.neumann, rhs_operator)
            exact = cauchy.dirichlet
        diff = sol.to_function() - exact
        rows.append(
            {
                "level": level,
                "m": grid.m_steps,
                "h": grid.h,
                "err_L2": diff.l2_norm(),
                "err_dual_proxy": function_spectral_norm(diff, T, -0.5, COSINE, modes),
            }
        )
    for row, rate in zip(rows, convergence_rows([r["err_L2"] for r in rows])):
        row["rate"] = rate
    return rows
