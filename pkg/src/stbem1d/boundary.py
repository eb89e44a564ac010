"""Lateral boundary of the space-time cylinder (0, 1) x (0, T) and data on it.

The boundary consists of the two end points x = 0 and x = 1 with outward
normals -1 and +1.  Time functions attached to an end point are either exact
piecewise polynomials or wrapped callables.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import ContractError, InputError, ParameterError
from .piecewise import PiecewisePoly

POINTS = (0.0, 1.0)
NORMALS = (-1.0, 1.0)
# distance between the two end points, i.e. the travel time from one to the other
TRAVEL = 1.0

DUAL = "dual"
TRACE = "trace"


@dataclass(frozen=True)
class BoundaryGrid:
    T: float
    m_steps: int

    def __post_init__(self):
        if not self.T > 0:
            raise ParameterError(f"final time must be positive, got {self.T}")
        if int(self.m_steps) != self.m_steps or self.m_steps < 1:
            raise ParameterError(f"m_steps must be a positive integer, got {self.m_steps}")

    @property
    def h(self):
        return self.T / self.m_steps

    @cached_property
    def nodes(self):
        return np.linspace(0.0, self.T, self.m_steps + 1)

    @property
    def midpoints(self):
        n = self.nodes
        return 0.5 * (n[:-1] + n[1:])

    def ndof(self, degree):
        """Unknowns per end point; degree-1 functions vanish at t = 0."""
        if degree not in (0, 1):
            raise ParameterError(f"degree must be 0 or 1, got {degree}")
        return self.m_steps

    def refined(self):
        return BoundaryGrid(self.T, 2 * self.m_steps)


class CallableDensity:
    """A time function given by a Python callable (vectorised or not)."""

    def __init__(self, func: Callable, T: float, deriv: Callable | None = None, epsabs=1e-10):
        self.func = func
        self.T = float(T)
        self.deriv = deriv
        self.epsabs = epsabs

    @property
    def end(self):
        return self.T

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        val = np.vectorize(lambda s: float(self.func(s)) if 0.0 <= s <= self.T else 0.0)(t)
        if not np.all(np.isfinite(val)):
            raise InputError("density returned non-finite values")
        return val if val.ndim else float(val)

    def integral(self, t):
        def one(s):
            if s <= 0.0:
                return 0.0
            s = min(s, self.T)
            val, _ = integrate.quad(self.func, 0.0, s, epsabs=self.epsabs, epsrel=1e-12, limit=200)
            return val

        out = np.vectorize(one)(np.asarray(t, dtype=float))
        return out if out.ndim else float(out)

    def derivative(self):
        if self.deriv is None:
            raise InputError("no derivative supplied for this density")
        return CallableDensity(self.deriv, self.T)

    def __mul__(self, c):
        c = float(c)
        d = None if self.deriv is None else (lambda s: c * self.deriv(s))
        return CallableDensity(lambda s: c * self.func(s), self.T, d, self.epsabs)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __add__(self, other):
        f, g = self.func, other.func
        d = None
        if self.deriv is not None and getattr(other, "deriv", None) is not None:
            d = lambda s: self.deriv(s) + other.deriv(s)  # noqa: E731
        return CallableDensity(lambda s: f(s) + g(s), self.T, d, self.epsabs)

    def __sub__(self, other):
        return self + (-other)

    def reverse(self, T=None):
        T = self.T if T is None else T
        d = None if self.deriv is None else (lambda s: -self.deriv(T - s))
        return CallableDensity(lambda s: self.func(T - s), T, d, self.epsabs)


@dataclass(frozen=True)
class BoundaryFunction:
    """One time function per end point (index 0 <-> x = 0, index 1 <-> x = 1)."""

    parts: tuple

    def __post_init__(self):
        if len(self.parts) != 2:
            raise ValueError("a boundary function has exactly two parts")

    @classmethod
    def zero(cls, T):
        return cls((PiecewisePoly.zero(T), PiecewisePoly.zero(T)))

    @property
    def T(self):
        return float(self.parts[0].end)

    def __getitem__(self, i):
        return self.parts[i]

    def __call__(self, i, t):
        return self.parts[i](t)

    @property
    def exact(self):
        return all(isinstance(p, PiecewisePoly) for p in self.parts)

    def _require_exact(self):
        if not self.exact:
            raise ContractError("operation needs piecewise polynomial parts")

    def __add__(self, other):
        return BoundaryFunction((self[0] + other[0], self[1] + other[1]))

    def __sub__(self, other):
        return BoundaryFunction((self[0] - other[0], self[1] - other[1]))

    def __mul__(self, c):
        return BoundaryFunction((self[0] * c, self[1] * c))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def to_function(self):
        return self

    def inner(self, other):
        return self[0].inner(other[0]) + self[1].inner(other[1])

    def l2_norm(self):
        return float(np.sqrt(max(self.inner(self), 0.0)))

    def vanishes_at_zero(self, tol=1e-12):
        return all(abs(p(0.0)) <= tol for p in self.parts)


@dataclass(frozen=True)
class BoundaryDensity:
    """Coefficients of a piecewise polynomial on a boundary grid.

    ``values[e, i]`` is the coefficient of basis function ``i`` at end point
    ``e``.  Degree 0 uses the indicator of step ``i``; degree 1 uses the hat
    function centred at node ``i + 1`` (hats vanish at t = 0).
    """

    grid: BoundaryGrid
    degree: int
    values: np.ndarray
    space_tag: str = ""

    def __post_init__(self):
        if self.degree not in (0, 1):
            raise ParameterError(f"degree must be 0 or 1, got {self.degree}")
        tag = self.space_tag or (DUAL if self.degree == 0 else TRACE)
        if tag not in (DUAL, TRACE):
            raise ParameterError(f"unknown space tag {tag!r}")
        if tag == TRACE and self.degree == 0:
            raise ContractError("trace densities must be continuous (degree 1)")
        vals = np.array(self.values, dtype=float).reshape(2, self.grid.m_steps)
        if not np.all(np.isfinite(vals)):
            raise InputError("density coefficients must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "space_tag", tag)
        object.__setattr__(self, "values", vals)

    @classmethod
    def zeros(cls, grid, degree, space_tag=""):
        return cls(grid, degree, np.zeros((2, grid.m_steps)), space_tag)

    @classmethod
    def from_vector(cls, grid, degree, vec, space_tag=""):
        return cls(grid, degree, np.asarray(vec).reshape(2, grid.m_steps), space_tag)

    @property
    def vector(self):
        return self.values.reshape(-1)

    def _part(self, v):
        nodes = self.grid.nodes
        if self.degree == 0:
            return PiecewisePoly(nodes, v[:, None])
        full = np.concatenate([[0.0], v])
        c = np.stack([full[:-1], np.diff(full) / self.grid.h], axis=1)
        return PiecewisePoly(nodes, c)

    def to_function(self):
        return BoundaryFunction((self._part(self.values[0]), self._part(self.values[1])))

    def __call__(self, i, t):
        return self.to_function()(i, t)

    @classmethod
    def interpolate(cls, grid, func, space_tag=TRACE):
        """Nodal interpolant in the degree-1 space (values at t_1, ..., t_m)."""
        f = as_function(func)
        if not f.vanishes_at_zero(tol=1e-10):
            raise ContractError("trace data must vanish at t = 0")
        nodes = grid.nodes[1:]
        vals = np.stack([np.asarray(f[e](nodes), dtype=float) for e in (0, 1)])
        return cls(grid, 1, vals, space_tag)

    @classmethod
    def step_average(cls, grid, func):
        """L2 projection onto piecewise constants."""
        f = as_function(func)
        vals = np.empty((2, grid.m_steps))
        for e in (0, 1):
            F = np.asarray(f[e].integral(grid.nodes), dtype=float)
            vals[e] = np.diff(F) / grid.h
        return cls(grid, 0, vals, DUAL)


def as_function(d):
    """Coerce a density, boundary function or (f0, f1) pair to a BoundaryFunction."""
    if isinstance(d, BoundaryFunction):
        return d
    if isinstance(d, BoundaryDensity):
        return d.to_function()
    if isinstance(d, tuple) and len(d) == 2:
        return BoundaryFunction(d)
    raise TypeError(f"cannot interpret {type(d).__name__} as boundary data")


@dataclass(frozen=True)
class CauchyData:
    dirichlet: object
    neumann: object

    def __post_init__(self):
        g, lam = self.dirichlet, self.neumann
        if isinstance(g, BoundaryDensity) and isinstance(lam, BoundaryDensity) and g.grid != lam.grid:
            raise ContractError("Cauchy data must share one grid")
        if isinstance(g, BoundaryDensity) and g.space_tag != TRACE:
            raise ContractError("Dirichlet data must be a trace density")
        if isinstance(lam, BoundaryDensity) and lam.space_tag != DUAL:
            raise ContractError("Neumann data must be a dual density")


# -- travelling wave fields -------------------------------------------------


@dataclass(frozen=True)
class PowerProfile:
    """F(s) = scale * s**p for s > 0 and 0 otherwise."""

    p: int
    scale: float = 1.0

    def __post_init__(self):
        if int(self.p) != self.p or self.p < 1:
            raise ParameterError("profile power must be an integer >= 1")

    def __call__(self, s, order=0):
        s = np.asarray(s, dtype=float)
        p = self.p
        if order > p:
            out = np.zeros_like(s)
        else:
            c = self.scale
            for k in range(order):
                c *= p - k
            out = np.where(s > 0.0, c * np.maximum(s, 0.0) ** (p - order), 0.0)
        return out if out.ndim else float(out)

    def time_function(self, delay, T, order=0):
        """Exact piecewise polynomial of ``t -> F^(order)(t - delay)`` on [0, T]."""
        if order > self.p:
            return PiecewisePoly.zero(T)
        c = self.scale
        for k in range(order):
            c *= self.p - k
        return PiecewisePoly.monomial(self.p - order, delay, T, c)


@dataclass(frozen=True)
class CallableProfile:
    """Smooth profile given by callables for F and F'; F must vanish on (-inf, 0]."""

    func: Callable
    deriv: Callable

    def __call__(self, s, order=0):
        f = {0: self.func, 1: self.deriv}.get(order)
        if f is None:
            raise ParameterError("only F and F' are available for callable profiles")
        s = np.asarray(s, dtype=float)
        out = np.vectorize(lambda v: float(f(v)) if v > 0 else 0.0)(s)
        return out if out.ndim else float(out)

    def time_function(self, delay, T, order=0):
        f = self.func if order == 0 else self.deriv
        df = self.deriv if order == 0 else None
        return CallableDensity(
            lambda t: f(t - delay) if t - delay > 0 else 0.0,
            T,
            None if df is None else (lambda t: df(t - delay) if t - delay > 0 else 0.0),
        )


@dataclass(frozen=True)
class WaveField:
    """u(x, t) = right * F(t - x) + left * F(t - (1 - x)).

    Both travelling waves vanish identically for t <= 0 inside (0, 1), so u
    has zero initial data.  ``reversal_time`` set to T evaluates u(x, T - t).
    """

    profile: object
    right: float = 1.0
    left: float = 0.0
    reversal_time: float | None = field(default=None)

    def _tx(self, t):
        return t if self.reversal_time is None else self.reversal_time - np.asarray(t, dtype=float)

    def value(self, x, t):
        t = self._tx(t)
        F = self.profile
        return self.right * F(t - x) + self.left * F(t - (1.0 - x))

    def dt(self, x, t):
        sign = 1.0 if self.reversal_time is None else -1.0
        t = self._tx(t)
        F = self.profile
        return sign * (self.right * F(t - x, 1) + self.left * F(t - (1.0 - x), 1))

    def dx(self, x, t):
        t = self._tx(t)
        F = self.profile
        return -self.right * F(t - x, 1) + self.left * F(t - (1.0 - x), 1)

    def cauchy_data(self, T):
        """Exact interior Dirichlet and Neumann traces on [0, T].

        Neumann trace n * du/dx: at x = 0 it is a F'(t) - b F'(t - 1),
        at x = 1 it is -a F'(t - 1) + b F'(t).
        """
        if self.reversal_time is not None:
            raise ContractError("Cauchy data are defined for causal fields only")
        F, a, b = self.profile, self.right, self.left
        f0 = lambda d, k: F.time_function(d, T, k)  # noqa: E731
        g = BoundaryFunction((a * f0(0.0, 0) + b * f0(TRAVEL, 0), a * f0(TRAVEL, 0) + b * f0(0.0, 0)))
        lam = BoundaryFunction((a * f0(0.0, 1) - b * f0(TRAVEL, 1), -a * f0(TRAVEL, 1) + b * f0(0.0, 1)))
        return CauchyData(g, lam)

    def reversed(self, T):
        if self.reversal_time is None:
            return replace(self, reversal_time=T)
        if self.reversal_time != T:
            raise ContractError("field is already reversed about a different final time")
        return replace(self, reversal_time=None)
