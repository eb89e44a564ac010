"""Galerkin matrices of the boundary integral operators on a uniform time grid.

Trial and test spaces per end point: degree 0 (indicators of the time steps,
the dual family) and degree 1 (hats at t_1..t_m vanishing at t = 0, the
trace family).  Entries are exact: every operator maps piecewise polynomials
to piecewise polynomials whose break points include the retarded light-cone
times t_j + 1, and each sub-piece is integrated with a Gauss rule of
sufficient degree.
"""

from __future__ import annotations

import numpy as np
from scipy import linalg

from .boundary import DUAL, TRACE, BoundaryDensity, BoundaryFunction, as_function
from .errors import ContractError, ParameterError, SolverError
from .matrix import Basis, OperatorMatrix
from .piecewise import PiecewisePoly, _gauss, _horner, merge_breaks
from .potentials import DIRICHLET, DOUBLE, EXTERIOR, INTERIOR, NEUMANN, SINGLE, trace_function
from .spectral import SINE, TimeInterval, time_moments
from .spectral import omegas as _omegas

TAGS = {0: DUAL, 1: TRACE}


# -- operators acting on boundary functions ----------------------------


def _require_trace(z):
    if not z.vanishes_at_zero(tol=1e-12):
        raise ContractError("trace-family densities must vanish at t = 0")


def apply_V(w):
    return trace_function(SINGLE, DIRICHLET, INTERIOR, as_function(w))


def apply_K(z):
    z = as_function(z)
    _require_trace(z)
    return 0.5 * (trace_function(DOUBLE, DIRICHLET, INTERIOR, z) + trace_function(DOUBLE, DIRICHLET, EXTERIOR, z))


def apply_Kp(w):
    w = as_function(w)
    return 0.5 * (trace_function(SINGLE, NEUMANN, INTERIOR, w) + trace_function(SINGLE, NEUMANN, EXTERIOR, w))


def apply_W(z):
    z = as_function(z)
    _require_trace(z)
    return -trace_function(DOUBLE, NEUMANN, INTERIOR, z)


def apply_identity(f):
    return as_function(f)


def apply_dirichlet_rhs(g, sign=1.0):
    """(1/2 I + sign * K) g."""
    g = as_function(g)
    return 0.5 * g + sign * apply_K(g)


def apply_neumann_rhs(lam, use_adjoint=True):
    """(1/2 I - K') lam, or (1/2 I - K) lam with ``use_adjoint=False``."""
    lam = as_function(lam)
    if use_adjoint:
        return 0.5 * lam - apply_Kp(lam)
    # K acting on a dual density: same retarded formula, no trace-family check
    return 0.5 * lam - 0.5 * (
        trace_function(DOUBLE, DIRICHLET, INTERIOR, lam) + trace_function(DOUBLE, DIRICHLET, EXTERIOR, lam)
    )


def time_derivative(f):
    f = as_function(f)
    f._require_exact()
    return BoundaryFunction(tuple(p.derivative() for p in f.parts))


BASE_OPERATORS = {
    "V": (apply_V, 0),
    "K": (apply_K, 1),
    "Kp": (apply_Kp, 0),
    "W": (apply_W, 1),
    "rhs": (apply_dirichlet_rhs, 1),
}


# -- bases and exact load vectors ---------------------------------------


def basis(grid, degree, weighting=None):
    return Basis("piecewise", 2 * grid.ndof(degree), grid, degree, TAGS[degree], weighting)


def basis_function(grid, degree, j):
    """Basis function j (end point j // m, local index j % m) as a boundary function."""
    m = grid.m_steps
    e, i = divmod(j, m)
    nodes = grid.nodes
    c = np.zeros((m, degree + 1))
    if degree == 0:
        c[i, 0] = 1.0
    else:
        # hat at node i + 1: rises on step i, falls on step i + 1
        c[i] = [0.0, 1.0 / grid.h]
        if i + 1 < m:
            c[i + 1] = [1.0, -1.0 / grid.h]
    f = PiecewisePoly(nodes, c)
    z = PiecewisePoly.zero(grid.T).with_degree(degree)
    return BoundaryFunction((f, z) if e == 0 else (z, f))


def step_moments(f, grid):
    """Per time step: int f dt and int f (t - t_left) dt."""
    T, nodes, m = grid.T, grid.nodes, grid.m_steps
    f = f.clip(0.0, T)
    b = merge_breaks(f.breaks, nodes, scale=T)
    g = f.refine(b)
    L = np.diff(b)
    step = np.clip(np.searchsorted(nodes, 0.5 * (b[:-1] + b[1:])) - 1, 0, m - 1)
    x, wq = _gauss(g.degree + 2)
    s = L[:, None] * x[None, :]
    vals = _horner(g.coeffs[:, None, :], s)
    offset = (b[:-1] - nodes[step])[:, None] + s
    m0 = (vals @ wq) * L
    m1 = ((vals * offset) @ wq) * L
    return np.bincount(step, m0, minlength=m), np.bincount(step, m1, minlength=m)


def load_vector(f, grid, degree):
    """Pairings <f, psi_i>_Sigma with every test basis function psi_i of the given degree."""
    f = as_function(f)
    out = []
    h = grid.h
    for part in f.parts:
        m0, m1 = step_moments(part, grid)
        if degree == 0:
            out.append(m0)
        elif degree == 1:
            rise = m1 / h
            fall = np.append(m0[1:] - m1[1:] / h, 0.0)
            out.append(rise + fall)
        else:
            raise ParameterError(f"test degree must be 0 or 1, got {degree}")
    return np.concatenate(out)


def assemble(apply, grid, trial_degree, test_degree, name=""):
    n = 2 * grid.m_steps
    A = np.empty((n, n))
    for j in range(n):
        A[:, j] = load_vector(apply(basis_function(grid, trial_degree, j)), grid, test_degree)
    return OperatorMatrix(A, basis(grid, trial_degree), basis(grid, test_degree), name=name)


def _check_degree(value, allowed, what):
    if value not in allowed:
        raise ParameterError(f"{what} degree {value} not supported (allowed: {allowed})")


def assemble_V(grid, trial_degree=0, test_degree=0):
    _check_degree(trial_degree, (0,), "V trial")
    _check_degree(test_degree, (0, 1), "V test")
    return assemble(apply_V, grid, trial_degree, test_degree, "V")


def assemble_K(grid, test_degree=0):
    _check_degree(test_degree, (0, 1), "K test")
    return assemble(apply_K, grid, 1, test_degree, "K")


def assemble_Kp(grid, test_degree=0):
    _check_degree(test_degree, (0, 1), "K' test")
    return assemble(apply_Kp, grid, 0, test_degree, "Kp")


def assemble_W(grid, test_degree=0):
    _check_degree(test_degree, (0, 1), "W test")
    return assemble(apply_W, grid, 1, test_degree, "W")


def assemble_mass(grid, trial_degree, test_degree):
    _check_degree(trial_degree, (0, 1), "mass trial")
    _check_degree(test_degree, (0, 1), "mass test")
    return assemble(apply_identity, grid, trial_degree, test_degree, "M")


# -- H_T weighted and energetic forms -----------------------------------


def min_modes(grid):
    return 4 * grid.m_steps


def _cosine_test_moments(grid, w):
    """C[k, i] = int_{t_i}^{t_{i+1}} cos(w_k t) dt."""
    S = np.sin(np.multiply.outer(w, grid.nodes))
    return np.diff(S, axis=1) / w[:, None]


def ht_load_vector(f, grid, n_modes):
    """<H_T f, psi_i>_Sigma for the degree-0 test functions, H_T truncated to n_modes.

    Piecewise polynomial parts are analysed exactly, callables by quadrature.
    """
    f = as_function(f)
    interval = TimeInterval(grid.T, n_modes)
    C = _cosine_test_moments(grid, interval.omegas)
    out = []
    for part in f.parts:
        sine = time_moments(part, interval, SINE)
        out.append((2.0 / grid.T) * (C.T @ sine))
    return np.concatenate(out)


def assemble_ht_weighted(base, grid, n_modes):
    """Entries <H_T (B phi_j), psi_i>_Sigma with degree-0 tests.

    ``base`` is ``"V"`` (degree-0 trials) or ``"rhs"`` for 1/2 I + K (degree-1 trials).
    """
    if base not in ("V", "rhs"):
        raise ParameterError(f"base must be 'V' or 'rhs', got {base!r}")
    if n_modes < min_modes(grid):
        raise ParameterError(f"n_modes={n_modes} below the resolution safeguard 4*m={min_modes(grid)}")
    apply, trial_degree = BASE_OPERATORS[base]
    n = 2 * grid.m_steps
    A = np.empty((n, n))
    for j in range(n):
        A[:, j] = ht_load_vector(apply(basis_function(grid, trial_degree, j)), grid, n_modes)
    return OperatorMatrix(
        A, basis(grid, trial_degree), basis(grid, 0, weighting="H_T"), name=f"H_T {base}"
    )


def assemble_energetic(grid, base="V"):
    """Entries <d/dt (B phi_j), psi_i>_Sigma with degree-0 tests psi_i.

    This is the energetic pairing: testing V w = g with the time derivative,
    whose quadratic form <d/dt V w, w> is the boundary energy flux.
    """
    if base not in ("V", "rhs"):
        raise ParameterError(f"base must be 'V' or 'rhs', got {base!r}")
    apply, trial_degree = BASE_OPERATORS[base]
    return OperatorMatrix(
        assemble(lambda f: time_derivative(apply(f)), grid, trial_degree, 0).entries,
        basis(grid, trial_degree),
        basis(grid, 0, weighting="d/dt"),
        name=f"energetic {base}",
    )


# -- spectral proxy norms -----------------------------------------------


def spectral_gram(grid, degree, order, kind, n_modes):
    """Gram matrix of the basis in the truncated quarter-wave norm of the given order.

    ``kind`` is ``"sine"`` (family vanishing at 0) or ``"cosine"`` (vanishing at T).
    """
    from .spectral import SOBOLEV_ORDERS

    if order not in SOBOLEV_ORDERS:
        raise ParameterError(f"order must be one of {SOBOLEV_ORDERS}")
    n = 2 * grid.m_steps
    F = _basis_moments(grid, degree, kind, n_modes)
    wts = (1.0 + _omegas(grid.T, n_modes) ** 2) ** order
    G = np.zeros((n, n))
    m = grid.m_steps
    for e in (0, 1):
        blk = slice(e * m, (e + 1) * m)
        G[blk, blk] = (2.0 / grid.T) * F.T @ (wts[:, None] * F)
    return G


def _basis_moments(grid, degree, kind, n_modes):
    w = _omegas(grid.T, n_modes)
    m = grid.m_steps
    F = np.empty((n_modes, m))
    for i in range(m):
        part = basis_function(grid, degree, i)[0]
        s, c = part.trig_moments(w)
        F[:, i] = s if kind == "sine" else c
    return F


def function_spectral_norm(f, T, order, kind, n_modes):
    """Truncated quarter-wave norm of an exact boundary function (both end points)."""
    f = as_function(f)
    w = _omegas(T, n_modes)
    wts = (1.0 + w**2) ** order
    total = 0.0
    for part in f.parts:
        s, c = part.clip(0.0, T).trig_moments(w)
        mom = s if kind == "sine" else c
        total += (2.0 / T) * np.sum(wts * mom**2)
    return float(np.sqrt(total))


def operator_norm(A, G_out, G_in):
    """sup_x sqrt(x^T A^T G_out A x / x^T G_in x)."""
    A = np.asarray(A)
    lam = linalg.eigh(A.T @ G_out @ A, G_in, eigvals_only=True)
    return float(np.sqrt(max(lam[-1], 0.0)))


def continuity_norm_V(grid, n_modes):
    """Discrete norm of V from the dual proxy norm (order -1/2, cosine) into the trace proxy norm (order 1/2, sine)."""
    w = _omegas(grid.T, n_modes)
    n = 2 * grid.m_steps
    wts = (1.0 + w**2) ** 0.5
    S = np.empty((2, n_modes, n))
    for j in range(n):
        out = apply_V(basis_function(grid, 0, j))
        for e in (0, 1):
            S[e, :, j] = out[e].trig_moments(w)[0]
    num = sum((2.0 / grid.T) * S[e].T @ (wts[:, None] * S[e]) for e in (0, 1))
    den = spectral_gram(grid, 0, -0.5, "cosine", n_modes)
    lam = linalg.eigh(num, den, eigvals_only=True)
    return float(np.sqrt(lam[-1]))


def mass_normalized_singular_values(A, M_test, M_trial):
    """Singular values of L_test^{-1} A L_trial^{-T} with M = L L^T (Cholesky)."""
    Lt = linalg.cholesky(np.asarray(M_test), lower=True)
    Lr = linalg.cholesky(np.asarray(M_trial), lower=True)
    X = linalg.solve_triangular(Lt, np.asarray(A), lower=True)
    X = linalg.solve_triangular(Lr, X.T, lower=True).T
    return linalg.svdvals(X)


# -- Calderon identities --------------------------------------------------


def calderon_matrices(grid):
    return {
        "M00": assemble_mass(grid, 0, 0).entries,
        "M11": assemble_mass(grid, 1, 1).entries,
        "M10": assemble_mass(grid, 1, 0).entries,
        "V00": assemble_V(grid, 0, 0).entries,
        "V01": assemble_V(grid, 0, 1).entries,
        "K10": assemble_K(grid, 0).entries,
        "K11": assemble_K(grid, 1).entries,
        "Kp00": assemble_Kp(grid, 0).entries,
        "W10": assemble_W(grid, 0).entries,
    }


def probe_densities(grid, degree, powers=(3, 4)):
    """Columns: smooth densities t**p on one end point, interpolated (degree 1) or projected (degree 0)."""
    cols = []
    z = PiecewisePoly.zero(grid.T)
    for e in (0, 1):
        for p in powers:
            f = PiecewisePoly.monomial(p, 0.0, grid.T)
            bf = BoundaryFunction((f, z) if e == 0 else (z, f))
            if degree == 1:
                d = BoundaryDensity.interpolate(grid, bf)
            else:
                d = BoundaryDensity.step_average(grid, bf)
            cols.append(d.vector)
    return np.array(cols).T


def calderon_residuals(grid, matrices=None):
    """Relative residuals of the four product identities of the Calderon projector.

    Operators are composed through L2 projections onto the trial spaces
    (dual-valued results onto degree 0, trace-valued onto degree 1).  Both
    sides are applied to smooth probe densities and the tested residual is
    measured in the L2(Sigma) norm of its degree-0 representative, i.e.
    sqrt(trace(R^T M00^{-1} R)), relative to the same norm of the left side.
    """
    mats = calderon_matrices(grid) if matrices is None else matrices
    M00, M11, M10 = mats["M00"], mats["M11"], mats["M10"]
    V00, V01, K10, K11 = mats["V00"], mats["V01"], mats["K10"], mats["K11"]
    Kp00, W10 = mats["Kp00"], mats["W10"]

    def proj(M, A):
        try:
            return linalg.solve(M, A, assume_a="pos")
        except linalg.LinAlgError as exc:
            raise SolverError("singular mass matrix: assembly bug") from exc

    def dual_norm(R):
        return float(np.sqrt(np.trace(R.T @ proj(M00, R))))

    X0, X1 = probe_densities(grid, 0), probe_densities(grid, 1)
    pairs = {
        "VW=(I/2-K)(I/2+K)": (V00 @ proj(M00, W10), (0.5 * M10 - K10) @ proj(M11, 0.5 * M11 + K11), X1),
        "WV=(I/2-K')(I/2+K')": (W10 @ proj(M11, V01), (0.5 * M00 - Kp00) @ proj(M00, 0.5 * M00 + Kp00), X0),
        "VK'=KV": (V00 @ proj(M00, Kp00), K10 @ proj(M11, V01), X0),
        "K'W=WK": (Kp00 @ proj(M00, W10), W10 @ proj(M11, K11), X1),
    }
    return {name: dual_norm((lhs - rhs) @ X) / dual_norm(lhs @ X) for name, (lhs, rhs, X) in pairs.items()}
