"""Exact piecewise polynomials in time.

Every time function on [0, T] that the 1D boundary element engine touches
(basis functions, retarded shifts, antiderivatives, polynomial Cauchy data)
is a piecewise polynomial, so all pairings can be evaluated exactly up to
round-off.
"""

from __future__ import annotations

from functools import cached_property
from math import comb

import numpy as np

# break points closer than this (relative to the interval length) are merged
BREAK_TOL = 1e-12


def _gauss(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def _horner(coeffs, s):
    """Evaluate rows of local power coefficients at local abscissae ``s``."""
    out = np.zeros_like(s, dtype=float)
    for j in range(coeffs.shape[-1] - 1, -1, -1):
        out = out * s + coeffs[..., j]
    return out


def merge_breaks(*arrays, scale=1.0):
    b = np.unique(np.concatenate([np.asarray(a, dtype=float) for a in arrays]))
    if b.size < 2:
        return b
    keep = np.concatenate([[True], np.diff(b) > BREAK_TOL * scale])
    b = b[keep]
    return b


def _trig_integrals(lengths, omegas, degree):
    """E[p, k, j] = integral over [0, L_p] of s**j exp(i w_k s) ds."""
    L = lengths[:, None]
    w = omegas[None, :]
    z = w * L
    E = np.empty(z.shape + (degree + 1,), dtype=complex)
    small = np.abs(z) < 4.0
    big = ~small
    if np.any(big):
        Lb = np.broadcast_to(L, z.shape)[big]
        wb = np.broadcast_to(w, z.shape)[big]
        eiz = np.exp(1j * wb * Lb)
        prev = (eiz - 1.0) / (1j * wb)
        E[..., 0][big] = prev
        for j in range(1, degree + 1):
            prev = (Lb**j * eiz - j * prev) / (1j * wb)
            E[..., j][big] = prev
    if np.any(small):
        Ls = np.broadcast_to(L, z.shape)[small]
        zs = z[small]
        for j in range(degree + 1):
            # power series in (i w L); 40 terms is far beyond round-off for |z| < 4
            term = np.ones_like(zs, dtype=complex)
            acc = term / (j + 1)
            for n in range(1, 40):
                term = term * (1j * zs) / n
                acc = acc + term / (j + n + 1)
            E[..., j][small] = acc * Ls ** (j + 1)
    return E


class PiecewisePoly:
    """Piecewise polynomial on ``[breaks[0], breaks[-1]]``, zero outside.

    ``coeffs[i, j]`` multiplies ``(t - breaks[i])**j`` on piece ``i``.
    Pieces are closed on the left; the last piece is also closed on the right.
    """

    def __init__(self, breaks, coeffs):
        breaks = np.asarray(breaks, dtype=float)
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.ndim == 1:
            coeffs = coeffs[:, None]
        if breaks.ndim != 1 or breaks.size < 2:
            raise ValueError("need at least two break points")
        if coeffs.shape[0] != breaks.size - 1:
            raise ValueError("one coefficient row per piece is required")
        if np.any(np.diff(breaks) <= 0):
            raise ValueError("break points must be strictly increasing")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("non-finite polynomial coefficients")
        self.breaks = breaks
        self.coeffs = coeffs

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, T):
        return cls([0.0, T], [[0.0]])

    @classmethod
    def constant(cls, value, a, b):
        return cls([a, b], [[float(value)]])

    @classmethod
    def monomial(cls, power, start, T, scale=1.0):
        """``scale * (t - start)**power`` for t > start, zero before, on [0, T]."""
        c = np.zeros(power + 1)
        c[power] = scale
        if start >= T:
            return cls.zero(T)
        if start <= 0.0:
            # re-centre at 0
            return cls([start, T], [c]).refine([0.0, T])
        return cls([0.0, start, T], [np.zeros(power + 1), c])

    # -- basic properties -----------------------------------------------
    @property
    def degree(self):
        return self.coeffs.shape[1] - 1

    @property
    def start(self):
        return self.breaks[0]

    @property
    def end(self):
        return self.breaks[-1]

    def __repr__(self):
        return f"PiecewisePoly(pieces={len(self.coeffs)}, degree={self.degree}, [{self.start}, {self.end}])"

    def _locate(self, t):
        idx = np.searchsorted(self.breaks, t, side="right") - 1
        return np.clip(idx, 0, len(self.coeffs) - 1)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        idx = self._locate(t)
        s = t - self.breaks[idx]
        val = _horner(self.coeffs[idx], s)
        inside = (t >= self.start) & (t <= self.end)
        out = np.where(inside, val, 0.0)
        return out if out.ndim else float(out)

    # -- structural operations ------------------------------------------
    def with_degree(self, degree):
        if degree < self.degree:
            raise ValueError("cannot lower the degree")
        pad = degree - self.degree
        if pad == 0:
            return self
        return PiecewisePoly(self.breaks, np.pad(self.coeffs, ((0, 0), (0, pad))))

    def refine(self, breaks):
        """Re-express on a finer set of break points inside the current support."""
        breaks = np.asarray(breaks, dtype=float)
        left = breaks[:-1]
        idx = self._locate(left + 0.5 * np.diff(breaks))
        delta = left - self.breaks[idx]
        old = self.coeffs[idx]
        d = self.degree
        new = np.zeros_like(old)
        # Taylor shift of each local polynomial by delta
        for j in range(d + 1):
            for l in range(j, d + 1):
                new[:, j] += comb(l, j) * old[:, l] * delta ** (l - j)
        inside = (left + 0.5 * np.diff(breaks) > self.start) & (left + 0.5 * np.diff(breaks) < self.end)
        new[~inside] = 0.0
        return PiecewisePoly(breaks, new)

    def clip(self, a, b):
        """Restrict (or zero-extend) to [a, b]."""
        inner = self.breaks[(self.breaks > a) & (self.breaks < b)]
        pts = merge_breaks([a, b], inner, scale=max(1.0, abs(b - a)))
        return self.refine(pts)

    def shift(self, delay, end=None):
        """``t -> f(t - delay)`` on the same window ``[start, end]``."""
        end = self.end if end is None else end
        if delay >= end - self.start:
            return PiecewisePoly([self.start, end], [[0.0] * (self.degree + 1)])
        moved = PiecewisePoly(self.breaks + delay, self.coeffs)
        return moved.clip(self.start, end)

    def reverse(self, T=None):
        """``t -> f(T - t)`` on [0, T]."""
        T = self.end if T is None else T
        rb = (T - self.breaks)[::-1]
        d = self.degree
        # new piece i starts at T - old right end; s_new = right_old - t_old
        rows = []
        lengths = np.diff(self.breaks)
        for c, L in zip(self.coeffs, lengths):
            # p(s) with s = L - s_new
            q = np.zeros(d + 1)
            for l in range(d + 1):
                for j in range(l + 1):
                    q[j] += c[l] * comb(l, j) * L ** (l - j) * (-1) ** j
            rows.append(q)
        return PiecewisePoly(rb, np.array(rows[::-1]))

    def _aligned(self, other):
        scale = max(1.0, abs(self.end), abs(other.end))
        b = merge_breaks(self.breaks, other.breaks, scale=scale)
        d = max(self.degree, other.degree)
        return self.with_degree(d).refine(b), other.with_degree(d).refine(b)

    def __add__(self, other):
        if isinstance(other, (int, float)) and other == 0:
            return self
        a, b = self._aligned(other)
        return PiecewisePoly(a.breaks, a.coeffs + b.coeffs)

    __radd__ = __add__

    def __neg__(self):
        return PiecewisePoly(self.breaks, -self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return PiecewisePoly(self.breaks, float(scalar) * self.coeffs)

    __rmul__ = __mul__

    # -- calculus -------------------------------------------------------
    def derivative(self):
        d = self.degree
        if d == 0:
            return PiecewisePoly(self.breaks, np.zeros_like(self.coeffs))
        c = self.coeffs[:, 1:] * np.arange(1, d + 1)
        return PiecewisePoly(self.breaks, c)

    def antiderivative(self):
        """Continuous primitive vanishing at ``start``."""
        d = self.degree
        c = np.zeros((len(self.coeffs), d + 2))
        c[:, 1:] = self.coeffs / np.arange(1, d + 2)
        lengths = np.diff(self.breaks)
        totals = _horner(c, lengths)
        c[:, 0] = np.concatenate([[0.0], np.cumsum(totals)[:-1]])
        return PiecewisePoly(self.breaks, c)

    @cached_property
    def primitive(self):
        return self.antiderivative()

    def integral(self, t):
        """``int_start^t f``; constant after ``end``, zero before ``start``."""
        t = np.asarray(t, dtype=float)
        F = self.primitive
        tc = np.clip(t, self.start, self.end)
        out = np.where(t <= self.start, 0.0, F(tc))
        return out if out.ndim else float(out)

    def integrate(self):
        return float(self.integral(self.end))

    def inner(self, other):
        """Exact L2 pairing over the common window."""
        a, b = self._aligned(other)
        n = a.degree + 1
        x, w = _gauss(n + 1)
        L = np.diff(a.breaks)
        s = L[:, None] * x[None, :]
        fa = _horner(a.coeffs[:, None, :], s)
        fb = _horner(b.coeffs[:, None, :], s)
        return float(np.sum((fa * fb) @ w * L))

    def norm(self):
        return np.sqrt(max(self.inner(self), 0.0))

    def trig_moments(self, omegas):
        """Exact ``int f(t) sin(w t) dt`` and ``int f(t) cos(w t) dt`` for each w."""
        omegas = np.asarray(omegas, dtype=float)
        L = np.diff(self.breaks)
        E = _trig_integrals(L, omegas, self.degree)
        local = np.einsum("pkj,pj->pk", E, self.coeffs.astype(complex))
        phase = np.exp(1j * self.breaks[:-1, None] * omegas[None, :])
        total = np.sum(phase * local, axis=0)
        return total.imag, total.real
