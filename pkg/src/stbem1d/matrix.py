from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class Basis:
    """Describes the functions indexing one side of an operator matrix.

    ``family`` is ``"piecewise"`` (grid, degree, space tag) or one of the
    quarter-wave families ``"sine"`` / ``"cosine"``.
    """

    family: str
    size: int
    grid: object = None
    degree: int | None = None
    space_tag: str | None = None
    weighting: str | None = None


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense Galerkin matrix; ``entries[i, j] = <A trial_j, test_i>``."""

    entries: np.ndarray = field(repr=False)
    trial: Basis
    test: Basis
    name: str = ""

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.shape != (self.test.size, self.trial.size):
            raise InputError(f"matrix shape {a.shape} does not match bases ({self.test.size}, {self.trial.size})")
        if not np.all(np.isfinite(a)):
            raise InputError(f"non-finite entries in {self.name or 'operator matrix'}")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def shape(self):
        return self.entries.shape

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __matmul__(self, other):
        return self.entries @ np.asarray(other)

    def sym(self):
        return 0.5 * (self.entries + self.entries.T)
