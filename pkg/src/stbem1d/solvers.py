"""First-kind boundary integral equations for the interior Dirichlet and Neumann problems."""

from __future__ import annotations

import logging

import numpy as np
from scipy import linalg

from .boundary import DUAL, TRACE, BoundaryDensity, CauchyData, as_function
from .errors import ContractError, ParameterError, SolverError
from .matrix import OperatorMatrix
from .operators import (
    apply_dirichlet_rhs,
    apply_neumann_rhs,
    assemble,
    assemble_energetic,
    assemble_ht_weighted,
    assemble_V,
    assemble_W,
    basis,
    ht_load_vector,
    load_vector,
    min_modes,
    time_derivative,
)
from .potentials import representation_formula
from .spectral import DEFAULT_MODES

log = logging.getLogger(__name__)

METHODS = ("ht", "energetic")
# condition numbers above this count as singular
MAX_CONDITION = 1e13


def default_modes(grid):
    return max(DEFAULT_MODES, min_modes(grid))


def dense_solve(A, b, what="system"):
    A = np.asarray(A, dtype=float)
    cond = float(np.linalg.cond(A))
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise SolverError(f"{what} is singular to working precision (condition estimate {cond:.3e})", cond)
    log.debug("%s: condition number %.3e", what, cond)
    return linalg.lu_solve(linalg.lu_factor(A), b)


def _trace_data(g):
    if isinstance(g, BoundaryDensity) and g.space_tag != TRACE:
        raise ContractError("Dirichlet data must be a trace density")
    f = as_function(g)
    if not f.vanishes_at_zero(tol=1e-10):
        raise ContractError("Dirichlet data must vanish at t = 0")
    return f


def dirichlet_system(grid, g, method="ht", n_modes=None):
    """Galerkin matrix and load vector for V w = (1/2 I + K) g."""
    f = _trace_data(g)
    rhs = apply_dirichlet_rhs(f)
    if method == "ht":
        n_modes = default_modes(grid) if n_modes is None else n_modes
        A = assemble_ht_weighted("V", grid, n_modes)
        b = ht_load_vector(rhs, grid, n_modes)
    elif method == "energetic":
        A = assemble_energetic(grid, "V")
        b = load_vector(time_derivative(rhs), grid, 0)
    else:
        raise ParameterError(f"method must be one of {METHODS}, got {method!r}")
    return A, b


def solve_dirichlet(grid, g, method="ht", n_modes=None):
    """Neumann datum w of the interior Dirichlet problem, piecewise constant in time."""
    A, b = dirichlet_system(grid, g, method, n_modes)
    w = dense_solve(A.entries, b, f"Dirichlet ({method}) system")
    return BoundaryDensity.from_vector(grid, 0, w, DUAL)


def neumann_system(grid, lam, rhs_operator="Kp"):
    """Galerkin matrix and load vector for W z = (1/2 I - K') lam, degree-0 tests.

    ``rhs_operator="K"`` selects the literal (1/2 I - K) right-hand side instead.
    """
    if isinstance(lam, BoundaryDensity) and lam.space_tag != DUAL:
        raise ContractError("Neumann data must be a dual density")
    if rhs_operator not in ("Kp", "K"):
        raise ParameterError(f"rhs_operator must be 'Kp' or 'K', got {rhs_operator!r}")
    f = as_function(lam)
    A = assemble_W(grid, 0)
    b = load_vector(apply_neumann_rhs(f, use_adjoint=rhs_operator == "Kp"), grid, 0)
    return A, b


def solve_neumann(grid, lam, rhs_operator="Kp"):
    """Dirichlet datum z of the interior Neumann problem, continuous piecewise linear."""
    A, b = neumann_system(grid, lam, rhs_operator)
    z = dense_solve(A.entries, b, "Neumann system")
    return BoundaryDensity.from_vector(grid, 1, z, TRACE)


def steklov_poincare(grid, method="ht", n_modes=None):
    """Discrete Dirichlet-to-Neumann map V^{-1}(1/2 I + K): degree-1 coefficients -> degree-0 coefficients."""
    if method == "ht":
        n_modes = default_modes(grid) if n_modes is None else n_modes
        A = assemble_ht_weighted("V", grid, n_modes).entries
        B = assemble_ht_weighted("rhs", grid, n_modes).entries
    elif method == "energetic":
        A = assemble_energetic(grid, "V").entries
        B = assemble_energetic(grid, "rhs").entries
    elif method == "galerkin":
        A = assemble_V(grid, 0, 0).entries
        B = assemble(apply_dirichlet_rhs, grid, 1, 0).entries
    else:
        raise ParameterError(f"unknown method {method!r}")
    S = dense_solve(A, B, "single layer system")
    return OperatorMatrix(S, basis(grid, 1), basis(grid, 0), name=f"S_i ({method})")


def reconstruct_field(cauchy, points):
    """Evaluate the representation formula at interior (x, t) points."""
    if not isinstance(cauchy, CauchyData):
        raise ContractError("reconstruction needs CauchyData")
    c = CauchyData(as_function(cauchy.dirichlet), as_function(cauchy.neumann))
    return np.array([representation_formula(c, float(x), float(t)) for x, t in points])
