"""Retarded layer potentials for the 1D wave equation on Omega = (0, 1).

With G(x, t) = H(t - |x|) / 2 the potentials collapse to retarded point
evaluations.  For densities w, z on the two end points y_e with outward
normals n_e:

    (S w)(x, t) = 1/2 sum_e W_e(t - |x - y_e|),           W_e = int_0^. w_e
    (D z)(x, t) = 1/2 sum_e n_e sign(x - y_e) z_e(t - |x - y_e|)

The double layer follows from d/dn_y H(t - |x - y|) = n_y sign(x - y) delta(t - |x - y|).
Traces at an end point y are one-sided limits: a source sitting at y itself is
approached from inside (sign(x - y) = -n_y) or outside (sign(x - y) = +n_y);
the other source is at distance 1.  Retarded arguments s <= 0 evaluate to 0.
"""

from __future__ import annotations

import numpy as np

from .boundary import NORMALS, POINTS, BoundaryFunction, as_function
from .errors import DomainError, ParameterError, SingularityError, UnsupportedError

SINGLE, DOUBLE = "single", "double"
DIRICHLET, NEUMANN = "dirichlet", "neumann"
INTERIOR, EXTERIOR = "interior", "exterior"


def fundamental_solution(n, x, t):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    r = float(np.linalg.norm(x))
    if n == 1:
        return 0.5 if t - r > 0 else 0.0
    if n == 2:
        if t == r:
            raise SingularityError("the 2D fundamental solution is singular on the light cone")
        return 1.0 / (2.0 * np.pi * np.sqrt(t * t - r * r)) if t > r else 0.0
    if n == 3:
        raise UnsupportedError("the 3D fundamental solution is a distribution without point values")
    raise ParameterError(f"dimension must be 1, 2 or 3, got {n}")


def fundamental_solution_3d_retarded(w, x, t, points, weights):
    """Kirchhoff-type single layer 1/(4 pi) sum_q w(y_q, t - |x - y_q|) / |x - y_q| * weight_q.

    Evaluator for a quadrature of the 3D retarded single layer; no assembly is
    built on it.
    """
    x = np.asarray(x, dtype=float)
    total = 0.0
    for y, q in zip(np.asarray(points, dtype=float), weights):
        r = np.linalg.norm(x - y)
        if r == 0.0:
            raise SingularityError("evaluation point coincides with a quadrature point")
        total += q * w(y, t - r) / r
    return total / (4.0 * np.pi)


def _check_time(t, T):
    if t < 0.0 or t > T * (1.0 + 1e-14):
        raise DomainError(f"time {t} outside [0, {T}]")


def _value(f, s):
    return 0.0 if s <= 0.0 else float(f(s))


def _primitive(f, s):
    return 0.0 if s <= 0.0 else float(f.integral(s))


def _slope(f, s):
    return 0.0 if s <= 0.0 else float(f.derivative()(s))


def single_layer_eval(w, x, t):
    w = as_function(w)
    _check_time(t, w.T)
    return 0.5 * sum(_primitive(w[e], t - abs(x - y)) for e, y in enumerate(POINTS))


def single_layer_dx(w, x, t):
    w = as_function(w)
    _check_time(t, w.T)
    if x in POINTS:
        raise DomainError("use potential_trace on the boundary")
    return -0.5 * sum(np.sign(x - y) * _value(w[e], t - abs(x - y)) for e, y in enumerate(POINTS))


def double_layer_eval(z, x, t):
    z = as_function(z)
    _check_time(t, z.T)
    if x in POINTS:
        raise DomainError("the double layer potential is discontinuous on the boundary; use potential_trace")
    return 0.5 * sum(NORMALS[e] * np.sign(x - y) * _value(z[e], t - abs(x - y)) for e, y in enumerate(POINTS))


def double_layer_dx(z, x, t):
    z = as_function(z)
    _check_time(t, z.T)
    if x in POINTS:
        raise DomainError("use potential_trace on the boundary")
    return -0.5 * sum(NORMALS[e] * _slope(z[e], t - abs(x - y)) for e, y in enumerate(POINTS))


def _sources(i, side):
    """(source index, retardation distance, limiting sign(x - y_source)) seen from end point i."""
    if side not in (INTERIOR, EXTERIOR):
        raise ParameterError(f"side must be interior or exterior, got {side!r}")
    y0, n0 = POINTS[i], NORMALS[i]
    out = []
    for e, y in enumerate(POINTS):
        if e == i:
            out.append((e, 0.0, -n0 if side == INTERIOR else n0))
        else:
            out.append((e, abs(y0 - y), float(np.sign(y0 - y))))
    return out


def _point_index(y):
    if y in (0, 0.0):
        return 0
    if y in (1, 1.0):
        return 1
    raise DomainError(f"{y} is not a boundary point")


def potential_trace(kind, which, side, density, y, t):
    """One-sided Dirichlet trace or conormal derivative n_y d/dx of a potential at y."""
    f = as_function(density)
    _check_time(t, f.T)
    i = _point_index(y)
    n0 = NORMALS[i]
    total = 0.0
    for e, d, sigma in _sources(i, side):
        s = t - d
        if kind == SINGLE and which == DIRICHLET:
            total += 0.5 * _primitive(f[e], s)
        elif kind == SINGLE and which == NEUMANN:
            total += n0 * (-0.5 * sigma) * _value(f[e], s)
        elif kind == DOUBLE and which == DIRICHLET:
            total += 0.5 * NORMALS[e] * sigma * _value(f[e], s)
        elif kind == DOUBLE and which == NEUMANN:
            total += n0 * (-0.5 * NORMALS[e]) * _slope(f[e], s)
        else:
            raise ParameterError(f"unknown potential/trace combination {kind!r}/{which!r}")
    return total


def trace_function(kind, which, side, density):
    """The same one-sided trace as an exact piecewise polynomial in time on each end point."""
    f = as_function(density)
    f._require_exact()
    T = f.T
    parts = []
    for i in (0, 1):
        n0 = NORMALS[i]
        acc = None
        for e, d, sigma in _sources(i, side):
            src = f[e]
            if kind == SINGLE and which == DIRICHLET:
                term = 0.5 * src.antiderivative()
            elif kind == SINGLE and which == NEUMANN:
                term = (n0 * -0.5 * sigma) * src
            elif kind == DOUBLE and which == DIRICHLET:
                term = (0.5 * NORMALS[e] * sigma) * src
            elif kind == DOUBLE and which == NEUMANN:
                term = (n0 * -0.5 * NORMALS[e]) * src.derivative()
            else:
                raise ParameterError(f"unknown potential/trace combination {kind!r}/{which!r}")
            if d > 0.0:
                term = term.shift(d, T)
            acc = term if acc is None else acc + term
        parts.append(acc)
    return BoundaryFunction(tuple(parts))


def jump(kind, which, density):
    """Exterior minus interior trace, as a boundary function."""
    return trace_function(kind, which, EXTERIOR, density) - trace_function(kind, which, INTERIOR, density)


def representation_formula(cauchy, x, t):
    """u(x, t) = (S gamma_N u)(x, t) - (D gamma u)(x, t) for x in (0, 1)."""
    if not 0.0 < x < 1.0:
        raise DomainError("the representation formula is evaluated at interior points")
    return single_layer_eval(cauchy.neumann, x, t) - double_layer_eval(cauchy.dirichlet, x, t)
