import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from stbem1d.boundary import BoundaryDensity, BoundaryGrid, PowerProfile, WaveField
from stbem1d.errors import ContractError
from stbem1d.hilbert import ht_apply, ht_gram, ht_inverse, ht_inverse_spacetime, ht_spacetime, time_reversal
from stbem1d.piecewise import PiecewisePoly
from stbem1d.spectral import (
    COSINE,
    SINE,
    QuarterWaveSeries,
    SpaceTimeSeries,
    TimeInterval,
    differentiate,
    l2_inner,
    l2_norm,
    synthesize_spacetime,
    synthesize_time,
)


def series(kind, c, T=1.0):
    return QuarterWaveSeries(TimeInterval(T, len(c)), kind, c)


def test_apply_and_inverse_relabel():
    out = ht_apply(series(SINE, [1, 0]))
    assert out.basis_kind == COSINE and list(out.coeffs) == [1, 0]
    assert list(ht_apply(series(SINE, [0.3, -1.2, 0.5])).coeffs) == [0.3, -1.2, 0.5]
    back = ht_inverse(series(COSINE, [1, 0]))
    assert back.basis_kind == SINE and list(back.coeffs) == [1, 0]
    s = series(SINE, [0.7, 0.1, -2])
    assert np.array_equal(ht_inverse(ht_apply(s)).coeffs, s.coeffs)
    assert not np.any(ht_apply(series(SINE, [0, 0])).coeffs)


def test_wrong_kind_is_a_contract_error():
    with pytest.raises(ContractError):
        ht_apply(series(COSINE, [1.0]))
    with pytest.raises(ContractError):
        ht_inverse(series(SINE, [1.0]))


def test_spacetime_relabel():
    iv = TimeInterval(1.0, 3)
    c = np.random.default_rng(0).standard_normal((3, 3))
    out = ht_spacetime(SpaceTimeSeries(iv, 3, SINE, c))
    assert out.basis_kind == COSINE and np.array_equal(out.coeffs, c)
    assert ht_inverse_spacetime(out).basis_kind == SINE
    e = np.zeros((2, 2))
    e[0, 0] = 1.0
    unit = ht_spacetime(SpaceTimeSeries(TimeInterval(1.0, 2), 2, SINE, e))
    assert synthesize_spacetime(unit, 0.4, 0.3) == pytest.approx(np.cos(np.pi / 2 * 0.3))
    with pytest.raises(ContractError):
        ht_spacetime(out)


def test_gram_examples():
    M = ht_gram(TimeInterval(1.0, 8)).entries
    ref = integrate.quad(lambda t: np.sin(np.pi / 2 * t) * np.cos(np.pi / 2 * t), 0, 1)[0]
    assert M[0, 0] == pytest.approx(1 / np.pi, abs=1e-14)
    assert M[0, 0] == pytest.approx(ref, abs=1e-12)
    assert np.linalg.eigvalsh(0.5 * (M + M.T)).min() >= -1e-12
    M3 = ht_gram(TimeInterval(3.0, 8)).entries
    assert np.allclose(M3, 3.0 * M, atol=1e-13)


def test_gram_gives_ht_pairing():
    s = series(SINE, [0.4, -1.0, 2.0], T=1.7)
    M = ht_gram(s.interval).entries
    ref = integrate.quad(lambda t: synthesize_time(s, t) * synthesize_time(ht_apply(s), t), 0, 1.7)[0]
    assert s.coeffs @ M @ s.coeffs == pytest.approx(ref, abs=1e-12)


@given(st.lists(st.floats(-5, 5), min_size=1, max_size=32), st.floats(0.5, 3.0))
@settings(max_examples=80, deadline=None)
def test_adjoint_derivative_isometry_positivity(c, T):
    u = series(SINE, c, T)
    v = series(COSINE, c[::-1], T)
    scale = max(1.0, float(np.sum(np.square(c))))
    assert abs(l2_inner(ht_apply(u), v) - l2_inner(u, ht_inverse(v))) <= 1e-12 * scale
    assert np.array_equal(differentiate(ht_apply(u)).coeffs, -ht_inverse(differentiate(u)).coeffs)
    assert l2_norm(ht_apply(u)) == pytest.approx(l2_norm(u), rel=1e-13, abs=1e-13)
    M = ht_gram(u.interval).sym()
    assert u.coeffs @ M @ u.coeffs >= -1e-10 * scale


def test_time_reversal_of_step_density():
    grid = BoundaryGrid(2.0, 2)
    d = BoundaryDensity(grid, 0, [[1.0, 0.0], [0.0, 0.0]])
    r = time_reversal(d)
    assert np.array_equal(r.values, [[0.0, 1.0], [0.0, 0.0]])
    assert np.array_equal(time_reversal(r).values, d.values)
    with pytest.raises(ContractError):
        time_reversal(BoundaryDensity(grid, 1, [[1.0, 0.0], [0.0, 0.0]]))


def test_time_reversal_maps_first_sine_to_cosine():
    T = 1.3
    s = series(SINE, [1.0, 0.0, 0.0], T)
    r = time_reversal(s)
    assert r.basis_kind == COSINE
    for t in np.linspace(0, T, 7):
        assert synthesize_time(r, t) == pytest.approx(np.sin(np.pi / (2 * T) * (T - t)), abs=1e-14)
        assert synthesize_time(r, t) == pytest.approx(np.cos(np.pi / (2 * T) * t), abs=1e-14)
    s3 = series(SINE, [0.3, -0.8, 1.1], T)
    for t in np.linspace(0, T, 5):
        assert synthesize_time(time_reversal(s3), t) == pytest.approx(synthesize_time(s3, T - t), abs=1e-13)
    assert np.array_equal(time_reversal(time_reversal(s3)).coeffs, s3.coeffs)


def test_time_reversal_of_fields_and_polynomials():
    f = WaveField(PowerProfile(3))
    r = time_reversal(f, 2.0)
    assert r.value(0.3, 0.5) == pytest.approx(f.value(0.3, 1.5))
    assert time_reversal(r, 2.0) == f
    with pytest.raises(ContractError):
        time_reversal(f)
    p = PiecewisePoly.monomial(2, 0.2, 2.0)
    assert time_reversal(p, 2.0)(0.5) == pytest.approx(p(1.5))
