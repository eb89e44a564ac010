"""Quarter-wave temporal series on (0, T) and the Neumann eigenbasis of (0, 1).

Temporal modes are sin(w_k t) and cos(w_k t) with w_k = (pi/2 + k pi) / T.
The sine modes vanish at t = 0, the cosine modes at t = T.  Both families
are orthogonal in L2(0, T) with squared norm T/2, and coefficients follow the
convention u_k = (2/T) int_0^T u(t) sin(w_k t) dt.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError, DomainError, InputError, ParameterError
from .piecewise import PiecewisePoly

SINE = "sine"
COSINE = "cosine"
DEFAULT_MODES = 256
SOBOLEV_ORDERS = (-0.5, 0.0, 0.5, 1.0)


def omegas(T, n):
    return (0.5 + np.arange(n)) * np.pi / T


@dataclass(frozen=True)
class TimeInterval:
    T: float
    n_modes: int = DEFAULT_MODES

    def __post_init__(self):
        if not self.T > 0:
            raise ParameterError(f"T must be positive, got {self.T}")
        if int(self.n_modes) != self.n_modes or self.n_modes < 1:
            raise ParameterError(f"n_modes must be a positive integer, got {self.n_modes}")

    @property
    def omegas(self):
        return omegas(self.T, self.n_modes)


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class QuarterWaveSeries:
    interval: TimeInterval
    basis_kind: str
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.basis_kind not in (SINE, COSINE):
            raise ParameterError(f"basis_kind must be 'sine' or 'cosine', got {self.basis_kind!r}")
        c = _frozen(self.coeffs)
        if c.shape != (self.interval.n_modes,):
            raise InputError(f"expected {self.interval.n_modes} coefficients, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise InputError("series coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    def with_coeffs(self, coeffs, basis_kind=None):
        return QuarterWaveSeries(self.interval, basis_kind or self.basis_kind, coeffs)


@dataclass(frozen=True)
class SpaceTimeSeries:
    """u(x, t) = sum_{i,k} coeffs[i, k] * phi_i(x) * mode_k(t)."""

    interval: TimeInterval
    n_space: int
    basis_kind: str
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.basis_kind not in (SINE, COSINE):
            raise ParameterError(f"basis_kind must be 'sine' or 'cosine', got {self.basis_kind!r}")
        c = _frozen(self.coeffs)
        if c.shape != (self.n_space, self.interval.n_modes):
            raise InputError(f"coefficient matrix must be {self.n_space} x {self.interval.n_modes}")
        if not np.all(np.isfinite(c)):
            raise InputError("series coefficients must be finite")
        object.__setattr__(self, "coeffs", c)


def _modes(kind, w, t):
    arg = np.multiply.outer(np.asarray(t, dtype=float), w)
    return np.sin(arg) if kind == SINE else np.cos(arg)


def _callable_moments(f, T, w, kind):
    # composite Gauss-Legendre, 32 nodes per half period of the fastest mode
    n_cells = max(1, int(np.ceil(T * w[-1] / np.pi)))
    x, wts = np.polynomial.legendre.leggauss(32)
    edges = np.linspace(0.0, T, n_cells + 1)
    half = 0.5 * np.diff(edges)
    t = (edges[:-1, None] + half[:, None] * (x[None, :] + 1.0)).ravel()
    q = (half[:, None] * wts[None, :]).ravel()
    try:
        vals = np.asarray(f(t), dtype=float)
    except (TypeError, ValueError):
        vals = None
    if vals is None or vals.shape != t.shape:
        vals = np.array([f(s) for s in t], dtype=float)
    if not np.all(np.isfinite(vals)):
        raise InputError("function samples must be finite")
    return (vals * q) @ _modes(kind, w, t)


def time_moments(f, interval, kind=SINE):
    """int_0^T f(t) mode_k(t) dt for k < n_modes."""
    w = interval.omegas
    if isinstance(f, PiecewisePoly):
        s, c = f.clip(0.0, interval.T).trig_moments(w)
        return s if kind == SINE else c
    return _callable_moments(f, interval.T, w, kind)


def analyze_time(f, interval, kind=SINE):
    """Quarter-wave coefficients (2/T) int_0^T f mode_k dt.

    Piecewise polynomials are integrated exactly; other callables with a
    composite Gauss-Legendre rule.
    """
    if kind not in (SINE, COSINE):
        raise ParameterError(f"unknown basis kind {kind!r}")
    return QuarterWaveSeries(interval, kind, 2.0 / interval.T * time_moments(f, interval, kind))


def synthesize_time(s, t):
    t_arr = np.asarray(t, dtype=float)
    T = s.interval.T
    if np.any(t_arr < 0.0) or np.any(t_arr > T):
        raise DomainError(f"time outside [0, {T}]")
    out = _modes(s.basis_kind, s.interval.omegas, t_arr) @ s.coeffs
    return out if np.ndim(out) else float(out)


def sobolev_weights(interval, order):
    if order not in SOBOLEV_ORDERS:
        raise ParameterError(f"order must be one of {SOBOLEV_ORDERS}, got {order}")
    return (1.0 + interval.omegas**2) ** order


def sobolev_norm(s, order):
    """Interpolation norm sqrt((T/2) sum_k (1 + w_k^2)^order c_k^2).

    Order 0 is the L2(0, T) norm.  Sine series stand for the family vanishing
    at t = 0, cosine series for the family vanishing at t = T.
    """
    wts = sobolev_weights(s.interval, order)
    return float(np.sqrt(0.5 * s.interval.T * np.sum(wts * s.coeffs**2)))


def differentiate(s):
    """Exact time derivative of a band-limited series.

    d/dt sin(w t) = w cos(w t) and d/dt cos(w t) = -w sin(w t), so the
    derivative of a series stays in the paired basis.
    """
    w = s.interval.omegas
    if s.basis_kind == SINE:
        return s.with_coeffs(w * s.coeffs, COSINE)
    return s.with_coeffs(-w * s.coeffs, SINE)


def trig_gram(T, n, kind_a, kind_b):
    """G[j, k] = int_0^T a_j(t) b_k(t) dt from the trigonometric antiderivatives."""
    if kind_a not in (SINE, COSINE) or kind_b not in (SINE, COSINE):
        raise ParameterError("kinds must be 'sine' or 'cosine'")
    if kind_a == COSINE and kind_b == SINE:
        return trig_gram(T, n, SINE, COSINE).T
    w = omegas(T, n)
    wp = w[:, None] + w[None, :]
    wm = w[:, None] - w[None, :]
    diag = np.eye(n, dtype=bool)
    safe = np.where(diag, 1.0, wm)
    if kind_a == SINE and kind_b == COSINE:
        # sin a cos b = (sin(a+b) + sin(a-b)) / 2
        g = 0.5 * (1.0 - np.cos(wp * T)) / wp + np.where(diag, 0.0, 0.5 * (1.0 - np.cos(wm * T)) / safe)
    else:
        sign = -1.0 if kind_a == SINE else 1.0
        # sin a sin b = (cos(a-b) - cos(a+b)) / 2, cos a cos b = (cos(a-b) + cos(a+b)) / 2
        g = 0.5 * np.where(diag, T, np.sin(wm * T) / safe) + sign * 0.5 * np.sin(wp * T) / wp
    return g


def l2_inner(a, b):
    """Exact L2(0, T) pairing of two series via closed-form Gram matrices."""
    if a.interval != b.interval:
        raise ContractError("series live on different intervals")
    G = trig_gram(a.interval.T, a.interval.n_modes, a.basis_kind, b.basis_kind)
    return float(a.coeffs @ G @ b.coeffs)


def l2_norm(s):
    return float(np.sqrt(max(l2_inner(s, s), 0.0)))


# -- spatial Neumann eigenbasis on (0, 1) --------------------------------


def neumann_eigenvalue(i):
    if i < 0:
        raise DomainError("mode index must be non-negative")
    return (i * np.pi) ** 2


def neumann_eigenfunction(i, x):
    """phi_0 = 1, phi_i = sqrt(2) cos(i pi x); orthonormal in L2(0, 1)."""
    if i < 0:
        raise DomainError("mode index must be non-negative")
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0.0) or np.any(x_arr > 1.0):
        raise DomainError("x must lie in [0, 1]")
    out = np.ones_like(x_arr) if i == 0 else np.sqrt(2.0) * np.cos(i * np.pi * x_arr)
    return out if out.ndim else float(out)


def synthesize_spacetime(s, x, t):
    T = s.interval.T
    if not 0.0 <= t <= T:
        raise DomainError(f"time outside [0, {T}]")
    phi = np.array([neumann_eigenfunction(i, x) for i in range(s.n_space)])
    modes = _modes(s.basis_kind, s.interval.omegas, t)
    return float(phi @ s.coeffs @ modes)
