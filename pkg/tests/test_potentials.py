import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stbem1d.boundary import (
    BoundaryDensity,
    BoundaryFunction,
    BoundaryGrid,
    CallableProfile,
    CauchyData,
    PowerProfile,
    WaveField,
)
from stbem1d.errors import DomainError, SingularityError, UnsupportedError
from stbem1d.piecewise import PiecewisePoly
from stbem1d.potentials import (
    DIRICHLET,
    DOUBLE,
    EXTERIOR,
    INTERIOR,
    NEUMANN,
    SINGLE,
    double_layer_eval,
    fundamental_solution,
    jump,
    potential_trace,
    representation_formula,
    single_layer_eval,
    trace_function,
)

T = 2.0


def on_first(part):
    return BoundaryFunction((part, PiecewisePoly.zero(T)))


ONE0 = on_first(PiecewisePoly.constant(1.0, 0.0, T))
ONES = BoundaryFunction((PiecewisePoly.constant(1.0, 0.0, T), PiecewisePoly.constant(1.0, 0.0, T)))


def test_fundamental_solution():
    assert fundamental_solution(1, 0.5, 0.2) == 0.0
    assert fundamental_solution(1, 0.5, 2.0) == 0.5
    assert fundamental_solution(2, [0.3, 0.0], 0.5) == pytest.approx(1 / (2 * np.pi * 0.4))
    with pytest.raises(SingularityError):
        fundamental_solution(2, [0.3, 0.4], 0.5)
    with pytest.raises(UnsupportedError):
        fundamental_solution(3, [0.1, 0.0, 0.0], 1.0)


def test_single_layer_examples():
    assert single_layer_eval(ONE0, 0.5, 0.25) == 0.0
    assert single_layer_eval(ONE0, 0.5, 1.0) == pytest.approx(0.25)
    assert single_layer_eval(ONES, 0.0, 2.0) == pytest.approx(1.5)
    with pytest.raises(DomainError):
        single_layer_eval(ONE0, 0.5, 2.5)


def test_double_layer_examples():
    assert double_layer_eval(BoundaryFunction.zero(T), 0.4, 1.0) == 0.0
    assert double_layer_eval(ONE0, 0.5, 0.25) == 0.0
    # interior side of x = 0: jump [gamma D z] = z fixes the sign to -1/2
    assert double_layer_eval(ONE0, 0.5, 1.0) == pytest.approx(-0.5)
    with pytest.raises(DomainError):
        double_layer_eval(ONE0, 0.0, 1.0)


def test_trace_examples():
    t = 0.7
    for side in (INTERIOR, EXTERIOR):
        assert potential_trace(SINGLE, DIRICHLET, side, ONE0, 0.0, t) == pytest.approx(t / 2)
    assert potential_trace(SINGLE, NEUMANN, INTERIOR, ONE0, 0.0, t) == pytest.approx(0.5)
    assert potential_trace(SINGLE, NEUMANN, EXTERIOR, ONE0, 0.0, t) == pytest.approx(-0.5)
    z = on_first(PiecewisePoly.monomial(2, 0.0, T))
    a = potential_trace(DOUBLE, NEUMANN, INTERIOR, z, 0.0, 1.3)
    b = potential_trace(DOUBLE, NEUMANN, EXTERIOR, z, 0.0, 1.3)
    assert a == pytest.approx(b)


def random_density(seed, degree, m=8):
    rng = np.random.default_rng(seed)
    return BoundaryDensity(BoundaryGrid(T, m), degree, rng.uniform(-1, 1, (2, m)))


@given(st.integers(0, 100_000))
@settings(max_examples=25, deadline=None)
def test_jump_relations_as_functions(seed):
    w, z = random_density(seed, 0), random_density(seed + 1, 1)
    ts = w.grid.midpoints
    wf, zf = w.to_function(), z.to_function()
    for e in (0, 1):
        assert np.allclose(jump(SINGLE, DIRICHLET, w)[e](ts), 0.0, atol=1e-12)
        assert np.allclose(jump(SINGLE, NEUMANN, w)[e](ts), -wf[e](ts), atol=1e-12)
        assert np.allclose(jump(DOUBLE, DIRICHLET, z)[e](ts), zf[e](ts), atol=1e-12)
        assert np.allclose(jump(DOUBLE, NEUMANN, z)[e](ts), 0.0, atol=1e-12)


def test_trace_function_agrees_with_pointwise_traces():
    w = random_density(5, 1)
    rng = np.random.default_rng(1)
    for kind in (SINGLE, DOUBLE):
        for which in (DIRICHLET, NEUMANN):
            for side in (INTERIOR, EXTERIOR):
                f = trace_function(kind, which, side, w)
                for t in rng.uniform(0, T, 5):
                    for e, y in enumerate((0.0, 1.0)):
                        assert f[e](t) == pytest.approx(potential_trace(kind, which, side, w, y, t), abs=1e-12)


def test_single_layer_solves_wave_equation():
    w = BoundaryFunction((PiecewisePoly.monomial(2, 0.0, T), PiecewisePoly.monomial(3, 0.0, T, 0.5)))
    h = 1e-3
    for x, t in [(0.3, 1.6), (0.6, 1.9), (0.45, 0.8)]:
        u = lambda a, b: single_layer_eval(w, a, b)  # noqa: E731
        utt = (u(x, t + h) - 2 * u(x, t) + u(x, t - h)) / h**2
        uxx = (u(x + h, t) - 2 * u(x, t) + u(x - h, t)) / h**2
        assert abs(utt - uxx) <= 1e-4


def test_causality_of_potentials():
    late = on_first(PiecewisePoly.monomial(2, 0.5, T))
    for x in (0.2, 0.7):
        for t in np.linspace(0, 0.5 + x - 1e-9, 5):
            assert single_layer_eval(late, x, t) == 0.0
            assert double_layer_eval(late, x, t) == 0.0


def test_representation_formula_examples():
    field = WaveField(PowerProfile(2))
    c = field.cauchy_data(T)
    assert representation_formula(c, 0.5, 1.2) == pytest.approx(0.49, abs=1e-8)
    assert representation_formula(c, 0.5, 0.4) == 0.0
    zero = CauchyData(BoundaryFunction.zero(T), BoundaryFunction.zero(T))
    assert representation_formula(zero, 0.3, 1.0) == 0.0
    with pytest.raises(DomainError):
        representation_formula(c, 1.0, 1.0)


def test_representation_formula_with_callable_profile():
    F = CallableProfile(lambda s: np.sin(s) ** 3, lambda s: 3 * np.sin(s) ** 2 * np.cos(s))
    field = WaveField(F, right=0.7, left=-0.4)
    c = field.cauchy_data(T)
    for x, t in [(0.2, 0.9), (0.5, 1.7), (0.8, 1.95)]:
        assert representation_formula(c, x, t) == pytest.approx(field.value(x, t), abs=1e-8)
