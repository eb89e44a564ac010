import numpy as np
import pytest

from stbem1d.boundary import BoundaryDensity, BoundaryFunction, BoundaryGrid, CauchyData, PowerProfile, WaveField
from stbem1d.errors import ContractError, DomainError, ParameterError, SolverError
from stbem1d.operators import spectral_gram, operator_norm
from stbem1d.piecewise import PiecewisePoly
from stbem1d.solvers import dense_solve, reconstruct_field, solve_dirichlet, solve_neumann, steklov_poincare

T = 2.0


def cauchy(power=3):
    return WaveField(PowerProfile(power)).cauchy_data(T)


def l2_error(density, exact):
    return (density.to_function() - exact).l2_norm()


@pytest.mark.parametrize("method", ["ht", "energetic"])
def test_zero_data_gives_zero_solution(method):
    grid = BoundaryGrid(T, 4)
    w = solve_dirichlet(grid, BoundaryDensity.zeros(grid, 1), method)
    assert w.space_tag == "dual" and not np.any(w.values)
    z = solve_neumann(grid, BoundaryDensity.zeros(grid, 0))
    assert z.space_tag == "trace" and not np.any(z.values)


def test_dirichlet_contracts():
    grid = BoundaryGrid(T, 4)
    with pytest.raises(ContractError):
        solve_dirichlet(grid, BoundaryDensity.zeros(grid, 0))
    bad = BoundaryFunction((PiecewisePoly.constant(1.0, 0.0, T), PiecewisePoly.zero(T)))
    with pytest.raises(ContractError):
        solve_dirichlet(grid, bad)
    with pytest.raises(ParameterError):
        solve_dirichlet(grid, cauchy().dirichlet, method="collocation")
    with pytest.raises(ParameterError):
        solve_neumann(grid, cauchy().neumann, rhs_operator="W")


def test_singular_system_reports_condition():
    with pytest.raises(SolverError) as info:
        dense_solve(np.zeros((3, 3)), np.ones(3))
    assert "condition" in str(info.value)


@pytest.mark.parametrize("method", ["ht", "energetic"])
def test_dirichlet_error_decreases_for_quadratic_profile(method):
    c = cauchy(2)
    errs = [l2_error(solve_dirichlet(BoundaryGrid(T, m), c.dirichlet, method), c.neumann) for m in (8, 16, 32, 64)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_solution_causality():
    c = cauchy()
    # the right-moving wave reaches x = 1 at t = 1
    for m in (8, 16):
        grid = BoundaryGrid(T, m)
        early = slice(0, m // 2)
        we = solve_dirichlet(grid, c.dirichlet, "energetic")
        assert np.max(np.abs(we.values[1, early])) <= 1e-10
    leak = []
    for m in (8, 16, 32):
        grid = BoundaryGrid(T, m)
        wh = solve_dirichlet(grid, c.dirichlet, "ht")
        leak.append(np.max(np.abs(wh.values[1, : m // 2])))
        assert leak[-1] <= l2_error(wh, c.neumann)
    # H_T couples all times; early coefficients must shrink or already sit at roundoff
    assert leak[-1] < leak[0] or max(leak) <= 1e-12


def test_neumann_rhs_switch_and_convergence():
    c = cauchy()
    errs = []
    for m in (8, 16, 32):
        grid = BoundaryGrid(T, m)
        z = solve_neumann(grid, c.neumann)
        zk = solve_neumann(grid, c.neumann, rhs_operator="K")
        assert zk.values.shape == z.values.shape and np.all(np.isfinite(zk.values))
        errs.append(l2_error(z, c.dirichlet))
    assert errs[1] < errs[0] and errs[2] < errs[1]


def test_round_trip_dirichlet_then_neumann():
    c = cauchy()
    for m in (8, 16):
        grid = BoundaryGrid(T, m)
        w = solve_dirichlet(grid, c.dirichlet)
        z = solve_neumann(grid, w)
        one_way = l2_error(solve_neumann(grid, c.neumann), c.dirichlet)
        assert l2_error(z, c.dirichlet) < 2 * one_way


def test_steklov_poincare():
    c = cauchy()
    errs, norms = [], []
    for m in (8, 16, 32):
        grid = BoundaryGrid(T, m)
        S = steklov_poincare(grid)
        assert not np.any(S @ np.zeros(2 * m))
        g = BoundaryDensity.interpolate(grid, c.dirichlet)
        w = BoundaryDensity.from_vector(grid, 0, S @ g.vector)
        errs.append(l2_error(w, c.neumann))
        norms.append(
            operator_norm(S.entries, spectral_gram(grid, 0, -0.5, "cosine", 256), spectral_gram(grid, 1, 0.5, "sine", 256))
        )
    assert errs[1] < errs[0] and errs[2] < errs[1]
    assert all(b / a <= 1.1 for a, b in zip(norms, norms[1:]))


def test_reconstruction():
    pts = [(0.5, 1.0), (0.25, 0.1)]
    zero = CauchyData(BoundaryFunction.zero(T), BoundaryFunction.zero(T))
    assert not np.any(reconstruct_field(zero, pts))
    field = WaveField(PowerProfile(3))
    c = field.cauchy_data(T)
    rng = np.random.default_rng(0)
    pts = list(zip(rng.uniform(0.01, 0.99, 50), rng.uniform(0.0, T, 50)))
    exact = np.array([field.value(x, t) for x, t in pts])
    errs = []
    for m in (8, 16, 32):
        w = solve_dirichlet(BoundaryGrid(T, m), c.dirichlet)
        cd = CauchyData(c.dirichlet, w)
        errs.append(np.max(np.abs(reconstruct_field(cd, pts) - exact)))
        # before the first wave reaches x
        assert np.all(np.abs(reconstruct_field(cd, [(0.6, 0.55), (0.3, 0.2)])) <= 1e-8)
    assert errs[1] < errs[0] and errs[2] < errs[1]
    with pytest.raises(DomainError):
        reconstruct_field(c, [(0.0, 1.0)])
