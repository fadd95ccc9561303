"""Restricted-zero polynomial classes: membership, sampling, parametrization.

The central class has parameters (n, k): degree at most n with at least
n - k zeros in the closed upper half-disk {|z| <= 1, Im z >= 0}, optionally
with one zero pinned to the real interval [-1, 1].  The incomplete classes
require a high-order zero at the origin instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MembershipError
from .poly import Polynomial, from_zeros


@dataclass(frozen=True)
class ClassSpec:
    """Parameters (n, k) plus side constraints for the restricted class."""

    n: int
    k: int
    pin_interval_zero: bool = False
    geom_tol: float = 1e-9

    def __post_init__(self):
        if not (0 <= self.k <= self.n):
            raise ValueError(f"need 0 <= k <= n, got n={self.n}, k={self.k}")
        if self.geom_tol < 0:
            raise ValueError("geom_tol must be nonnegative")


@dataclass(frozen=True)
class HalfDiskPoint:
    """Polar coordinates of a point of the closed upper half-disk."""

    r: float
    theta: float

    def __post_init__(self):
        if not (0.0 <= self.r <= 1.0 and 0.0 <= self.theta <= np.pi):
            raise ValueError("need r in [0,1] and theta in [0,pi]")

    def to_complex(self) -> complex:
        return self.r * complex(np.cos(self.theta), np.sin(self.theta))


@dataclass(frozen=True)
class IncompleteSpec:
    """Degree <= n + k with at least n + 1 zeros at the origin."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("incomplete class needs n >= 1 and k >= 1")


@dataclass(frozen=True)
class MembershipReport:
    ok: bool
    constrained_indices: tuple
    pinned_index: int | None
    detail: str

    def __bool__(self) -> bool:
        return self.ok


def in_upper_half_disk(z: complex, tol: float = 1e-9) -> bool:
    return abs(z) <= 1.0 + tol and z.imag >= -tol


def is_member(P: Polynomial, spec: ClassSpec) -> MembershipReport:
    """Check degree, half-disk count, and the optional pinned interval zero."""
    if P.is_zero:
        return MembershipReport(False, (), None, "zero polynomial")
    if P.is_coefficient_backed:
        return MembershipReport(False, (), None,
                                "coefficient-backed polynomial has no zero list")
    if P.degree > spec.n:
        return MembershipReport(False, (), None,
                                f"degree {P.degree} exceeds n={spec.n}")
    tol = spec.geom_tol
    constrained = tuple(i for i, z in enumerate(P.zeros) if in_upper_half_disk(z, tol))
    need = spec.n - spec.k
    if len(constrained) < need:
        return MembershipReport(False, constrained, None,
                                f"only {len(constrained)} zeros in the half-disk, "
                                f"need {need}")
    pinned = None
    if spec.pin_interval_zero:
        for i, z in enumerate(P.zeros):
            if abs(z.imag) <= tol and -1.0 - tol <= z.real <= 1.0 + tol:
                pinned = i
                break
        if pinned is None:
            return MembershipReport(False, constrained, None,
                                    "no zero on the interval [-1,1]")
    return MembershipReport(True, constrained, pinned, "ok")


def _rng(seed) -> np.random.Generator:
    # counter-based generator so parallel sweeps stay reproducible
    return np.random.Generator(np.random.Philox(key=np.uint64(seed) if np.isscalar(seed) else seed))


def sample(spec: ClassSpec, seed: int = 0) -> Polynomial:
    """Random member, deterministic in the seed.

    n - k zeros are drawn area-uniform in the upper half-disk, the k free
    zeros uniform in the square [-2,2]^2.  With the pin flag one of the
    constrained zeros (or, when k = n, one free zero) is resampled
    uniformly from [-1, 1].
    """
    rng = _rng(seed)
    nc = spec.n - spec.k
    if spec.n == 0:
        if spec.pin_interval_zero:
            raise MembershipError("a constant has no zero to pin in [-1,1]")
        return from_zeros(1.0, ())
    r = np.sqrt(rng.uniform(0.0, 1.0, nc))
    th = rng.uniform(0.0, np.pi, nc)
    constrained = list(r * np.exp(1j * th))
    free = list(rng.uniform(-2.0, 2.0, spec.k) + 1j * rng.uniform(-2.0, 2.0, spec.k))
    if spec.pin_interval_zero:
        pin = complex(rng.uniform(-1.0, 1.0), 0.0)
        if nc >= 1:
            constrained[0] = pin
        else:
            free[0] = pin
    P = from_zeros(1.0, constrained + free)
    rep = is_member(P, spec)
    if not rep:
        raise MembershipError(f"sampler produced a non-member: {rep.detail}")
    return P


def embed(params, spec: ClassSpec) -> Polynomial:
    """Map a flat real vector to a class member (for derivative-free search).

    Constrained zeros use clamped polar pairs (r, theta), so boundary
    configurations like zeros exactly at +-1 are reachable; free zeros use a
    tanh box [-3,3]^2.  With the pin flag the first constrained pair (first
    free pair when k = n) contributes one clamped coordinate in [-1,1] and
    ignores its partner.
    """
    p = np.asarray(params, dtype=float)
    want = 2 * spec.n
    if p.shape != (want,):
        raise ValueError(f"parameter vector must have length {want}, got {p.shape}")
    nc = spec.n - spec.k
    zeros = []
    pin_slot = 0 if spec.pin_interval_zero and spec.n >= 1 else None
    for i in range(spec.n):
        a, b = p[2 * i], p[2 * i + 1]
        if pin_slot is not None and i == pin_slot:
            zeros.append(complex(np.clip(a, -1.0, 1.0), 0.0))
        elif i < nc:
            r = float(np.clip(a, 0.0, 1.0))
            th = float(np.clip(b, 0.0, np.pi))
            zeros.append(r * complex(np.cos(th), np.sin(th)))
        else:
            zeros.append(complex(3.0 * np.tanh(a), 3.0 * np.tanh(b)))
    P = from_zeros(1.0, zeros)
    rep = is_member(P, spec)
    if not rep:
        raise MembershipError(f"embedding produced a non-member: {rep.detail}")
    return P


def incomplete_member(P: Polynomial, spec: IncompleteSpec,
                      geom_tol: float = 1e-9) -> bool:
    if P.is_zero or P.is_coefficient_backed:
        return False
    if P.degree > spec.n + spec.k:
        return False
    at_origin = sum(1 for z in P.zeros if abs(z) <= geom_tol)
    return at_origin >= spec.n + 1
