"""Modified Hilbert transformation H_T and the time-reversal map.

H_T sends sin(w_k t) to cos(w_k t) with unchanged coefficients, so on
quarter-wave series it is a relabelling of the basis.  Functions that are not
series are first analysed into sine coefficients.
"""

from __future__ import annotations

from functools import singledispatch

import numpy as np

from .boundary import BoundaryDensity, BoundaryFunction, CallableDensity, WaveField
from .errors import ContractError
from .matrix import Basis, OperatorMatrix
from .piecewise import PiecewisePoly
from .spectral import (
    COSINE,
    SINE,
    QuarterWaveSeries,
    SpaceTimeSeries,
    TimeInterval,
    analyze_time,
    trig_gram,
)


def _flip(s, expected, target):
    if s.basis_kind != expected:
        raise ContractError(f"expected a {expected} series, got {s.basis_kind}")
    return s.with_coeffs(s.coeffs, target)


def ht_apply(s: QuarterWaveSeries) -> QuarterWaveSeries:
    return _flip(s, SINE, COSINE)


def ht_inverse(s: QuarterWaveSeries) -> QuarterWaveSeries:
    return _flip(s, COSINE, SINE)


def ht_spacetime(s: SpaceTimeSeries) -> SpaceTimeSeries:
    if s.basis_kind != SINE:
        raise ContractError("H_T acts on series with a sine temporal basis")
    return SpaceTimeSeries(s.interval, s.n_space, COSINE, s.coeffs)


def ht_inverse_spacetime(s: SpaceTimeSeries) -> SpaceTimeSeries:
    if s.basis_kind != COSINE:
        raise ContractError("the inverse acts on series with a cosine temporal basis")
    return SpaceTimeSeries(s.interval, s.n_space, SINE, s.coeffs)


def ht_function(f, interval: TimeInterval) -> QuarterWaveSeries:
    """Truncated H_T f as a cosine series (f a piecewise polynomial or callable)."""
    return ht_apply(analyze_time(f, interval, SINE))


def ht_gram(interval: TimeInterval, n: int | None = None) -> OperatorMatrix:
    """M[j, k] = int_0^T sin(w_j t) cos(w_k t) dt.

    For w = sum_j c_j sin(w_j t) the quadratic form c^T M c equals
    <w, H_T w>_{L2(0,T)}.
    """
    n = interval.n_modes if n is None else n
    M = trig_gram(interval.T, n, SINE, COSINE)
    return OperatorMatrix(M, Basis(SINE, n), Basis(SINE, n), name="ht_gram")


# -- time reversal ------------------------------------------------------


@singledispatch
def time_reversal(obj, T=None):
    """kappa_T: w(., t) -> w(., T - t)."""
    raise TypeError(f"time reversal is not defined for {type(obj).__name__}")


@time_reversal.register
def _(obj: PiecewisePoly, T=None):
    return obj.reverse(T)


@time_reversal.register
def _(obj: CallableDensity, T=None):
    return obj.reverse(T)


@time_reversal.register
def _(obj: BoundaryFunction, T=None):
    return BoundaryFunction(tuple(time_reversal(p, T) for p in obj.parts))


@time_reversal.register
def _(obj: BoundaryDensity, T=None):
    if T is not None and T != obj.grid.T:
        raise ContractError("a grid density can only be reversed about its own final time")
    if obj.degree != 0:
        # a reversed hat space vanishes at t = T, which is not the grid's trace family
        raise ContractError("only piecewise constant densities reverse onto the same grid")
    return BoundaryDensity(obj.grid, 0, obj.values[:, ::-1], obj.space_tag)


@time_reversal.register
def _(obj: WaveField, T=None):
    if T is None:
        raise ContractError("reversing a wave field needs the final time T")
    return obj.reversed(T)


@time_reversal.register
def _(obj: QuarterWaveSeries, T=None):
    # sin(w_k (T - t)) = (-1)^k cos(w_k t) and cos(w_k (T - t)) = (-1)^k sin(w_k t)
    if T is not None and T != obj.interval.T:
        raise ContractError("series can only be reversed about their own T")
    sign = (-1.0) ** np.arange(obj.interval.n_modes)
    target = COSINE if obj.basis_kind == SINE else SINE
    return obj.with_coeffs(sign * obj.coeffs, target)
