"""Validated sampling grids, complex vectors, and method parameters."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DuplicateNodeError,
    LengthMismatchError,
    NonPositiveDampingError,
    OutOfRangeError,
)

DEFAULT_MIN_GAP = 1e-12
DEFAULT_SPREAD_WIDTH = 14


def as_complex_vector(values, length: int | None = None, name: str = "vector") -> np.ndarray:
    """Coerce to a finite 1-D complex128 array, optionally of fixed length."""
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 1:
        raise LengthMismatchError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise LengthMismatchError(f"{name} must be nonempty")
    if length is not None and arr.size != length:
        raise LengthMismatchError(f"{name} has length {arr.size}, expected {length}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf entries")
    return arr


@dataclass(frozen=True)
class NonuniformGrid:
    """Sampling instants in [0, 1), pairwise distinct.

    ``instants`` keeps the caller's ordering; ``order`` is the permutation
    that sorts it ascending. All transform outputs follow caller order.
    """

    instants: np.ndarray
    order: np.ndarray
    min_gap: float

    @property
    def size(self) -> int:
        return self.instants.size

    @property
    def sorted_instants(self) -> np.ndarray:
        return self.instants[self.order]

    def __eq__(self, other):
        if not isinstance(other, NonuniformGrid):
            return NotImplemented
        return self.size == other.size and bool(np.all(self.instants == other.instants))

    def __hash__(self):
        return hash((self.size, self.instants.tobytes()))


def validate_grid(instants, min_gap: float = DEFAULT_MIN_GAP) -> NonuniformGrid:
    """Check range and distinctness, returning an immutable grid.

    Rejects instants outside [0, 1) and circular gaps below ``min_gap``;
    coincident nodes would make the interpolation kernel derivative vanish.
    Validation is idempotent: a validated grid's instants validate again to
    an equal grid.
    """
    if isinstance(instants, NonuniformGrid):
        instants = instants.instants
    t = np.asarray(instants, dtype=np.float64)
    if t.ndim != 1 or t.size < 1:
        raise OutOfRangeError("grid must be a nonempty 1-D sequence of instants")
    if not np.all(np.isfinite(t)):
        raise OutOfRangeError("grid contains non-finite instants")
    if np.any(t < 0.0) or np.any(t >= 1.0):
        bad = t[(t < 0.0) | (t >= 1.0)][0]
        raise OutOfRangeError(f"instant {bad!r} outside the fundamental period [0, 1)")
    order = np.argsort(t, kind="stable")
    if t.size > 1:
        ts = t[order]
        gaps = np.empty(t.size)
        gaps[:-1] = np.diff(ts)
        gaps[-1] = 1.0 - ts[-1] + ts[0]
        if gaps.min() < min_gap:
            i = int(np.argmin(gaps))
            raise DuplicateNodeError(
                f"circular gap {gaps[i]:.3e} below floor {min_gap:.3e} near t={ts[i]!r}"
            )
    t = t.copy()
    t.setflags(write=False)
    order.setflags(write=False)
    return NonuniformGrid(instants=t, order=order, min_gap=min_gap)


def damping_from_mu(mu: float, P: int, eta: int) -> float:
    """Invert the truncation-ratio relation mu = exp(-2 pi (eta P - 1) a) / (eta P - 1).

    Returns the damping a > 0 whose forward evaluation reproduces ``mu``.
    """
    if not 0.0 < mu < 1.0:
        raise NonPositiveDampingError(f"truncation ratio must lie in (0, 1), got {mu!r}")
    n = eta * P - 1
    if n < 1:
        raise NonPositiveDampingError("need eta * P >= 2 to define the truncation ratio")
    if mu * n >= 1.0:
        raise NonPositiveDampingError(
            f"mu * (eta P - 1) = {mu * n!r} >= 1: truncation too loose to need damping"
        )
    return -math.log(mu * n) / (2.0 * math.pi * n)


def mu_from_damping(a: float, P: int, eta: int) -> float:
    """Forward truncation ratio for a given damping a."""
    if a <= 0.0:
        raise NonPositiveDampingError(f"damping must be positive, got {a!r}")
    n = eta * P - 1
    if n < 1:
        raise NonPositiveDampingError("need eta * P >= 2 to define the truncation ratio")
    return math.exp(-2.0 * math.pi * n * a) / n


@dataclass(frozen=True)
class MethodParams:
    """Inversion parameters: damping, oversampling, truncation, gridding width.

    Exactly one of (damping_a, mu) is supplied to the factories; the other is
    derived from the truncation-ratio relation for the target grid size.
    """

    damping_a: float
    eta: int
    mu: float
    spread_width: int = DEFAULT_SPREAD_WIDTH
    refine_passes: int = 1

    def __post_init__(self):
        if self.damping_a <= 0.0:
            raise NonPositiveDampingError(f"damping must be positive, got {self.damping_a!r}")
        if int(self.eta) != self.eta or self.eta < 1:
            raise ValueError(f"oversampling factor must be an integer >= 1, got {self.eta!r}")
        if not 0.0 < self.mu < 1.0:
            raise ValueError(f"truncation ratio must lie in (0, 1), got {self.mu!r}")
        if self.spread_width < 1:
            raise ValueError("spread_width must be >= 1")
        if self.refine_passes < 0:
            raise ValueError("refine_passes must be >= 0")

    @classmethod
    def from_mu(cls, mu: float, P: int, eta: int = 1, **kwargs) -> "MethodParams":
        a = damping_from_mu(mu, P, eta)
        return cls(damping_a=a, eta=eta, mu=mu, **kwargs)

    @classmethod
    def from_damping(cls, a: float, P: int, eta: int = 1, **kwargs) -> "MethodParams":
        mu = mu_from_damping(a, P, eta)
        return cls(damping_a=a, eta=eta, mu=mu, **kwargs)
