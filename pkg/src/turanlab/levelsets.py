"""Measures of logarithmic-derivative level sets and pointwise decay checks.

The level sets {|Q'/Q| <= c} and {|R'/R| >= c} are computed division-free:
membership is the sign condition on the real polynomial
G = |Q'|^2 - c^2 |Q|^2 (as coefficient polynomials on the real line), so
poles of the logarithmic derivative at real zeros need no special casing.
The measure is the total length of the matching sign intervals between
consecutive roots of G.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classes import ClassSpec, is_member
from .errors import DegreeCapError, MembershipError
from .poly import (
    Interval,
    Polynomial,
    RealPolynomial,
    derivative,
    derivative_values,
    evaluate_many,
    from_zeros,
    modulus_square_on_reals,
)
from .supnorm import CertifiedValue, argmax_abs, real_roots, sup_norm

# level-set measures expand |Q|^2, so the input degree is capped at half
# the coefficient expansion cap
_LEVELSET_DEGREE_CAP = 30

_ROOT_TOL = 1e-12

SMALL_SET_CONSTANT = 70.0 * math.e       # bound m{|Q'/Q| <= n*delta} < 70e*delta
LARGE_SET_CONSTANT = 8.0 * math.sqrt(2)  # bound m{|R'/R| >= alpha} <= 8*sqrt(2)*k/alpha


@dataclass(frozen=True)
class LevelSetReport:
    measure: CertifiedValue
    bound: float
    parameter: float
    satisfied: bool
    intervals: tuple

    def to_payload(self) -> dict:
        return {
            "measure": self.measure.value,
            "err": self.measure.err,
            "bound": self.bound,
            "parameter": self.parameter,
            "satisfied": self.satisfied,
            "intervals": [[iv.lo, iv.hi] for iv in self.intervals],
        }


@dataclass(frozen=True)
class DecayReport:
    max_violation: float | None
    interval: Interval | None
    vacuous: bool
    satisfied: bool
    samples: int

    def to_payload(self) -> dict:
        return {
            "max_violation": self.max_violation,
            "interval": None if self.interval is None else [self.interval.lo, self.interval.hi],
            "vacuous": self.vacuous,
            "satisfied": self.satisfied,
            "samples": self.samples,
        }


@dataclass(frozen=True)
class FlippedDecayReport:
    restricted_sup: float
    full_sup: float
    degenerate: bool
    satisfied: bool

    def to_payload(self) -> dict:
        return {
            "restricted_sup": self.restricted_sup,
            "full_sup": self.full_sup,
            "degenerate": self.degenerate,
            "satisfied": self.satisfied,
        }


def _difference_polynomial(A: RealPolynomial, B: RealPolynomial, c2: float) -> RealPolynomial:
    """Coefficients of A - c2 * B."""
    a = np.asarray(A.coeffs, dtype=float)
    b = np.asarray(B.coeffs, dtype=float)
    m = max(a.size, b.size)
    out = np.zeros(m)
    out[: a.size] += a
    out[: b.size] -= c2 * b
    return RealPolynomial(tuple(out))


def _sign_region(G: RealPolynomial, ambient: Interval, keep_nonpositive: bool):
    """Measure and intervals of {G <= 0} (or {G >= 0}) inside ambient."""
    lo, hi = ambient.lo, ambient.hi
    if G.is_zero:
        full = (Interval(lo, hi),) if keep_nonpositive else (Interval(lo, hi),)
        return CertifiedValue(hi - lo, 0.0, "critical-points"), full
    if G.degree == 0:
        inside = (G.coeffs[0] <= 0) if keep_nonpositive else (G.coeffs[0] >= 0)
        if inside:
            return CertifiedValue(hi - lo, 0.0, "critical-points"), (Interval(lo, hi),)
        return CertifiedValue(0.0, 0.0, "critical-points"), ()
    rl = real_roots(G, ambient, _ROOT_TOL)
    pts = np.unique(np.concatenate([[lo, hi], np.asarray(rl.roots, dtype=float)]))
    intervals = []
    for a, b in zip(pts[:-1], pts[1:]):
        mid = 0.5 * (a + b)
        v = float(G(mid))
        inside = (v <= 0.0) if keep_nonpositive else (v >= 0.0)
        if inside:
            if intervals and intervals[-1][1] == a:
                intervals[-1][1] = b
            else:
                intervals.append([a, b])
    measure = float(sum(b - a for a, b in intervals))
    err = max(len(rl.roots), 1) * _ROOT_TOL
    ivs = tuple(Interval(a, b) for a, b in intervals)
    return CertifiedValue(measure, err, "critical-points"), ivs


def small_logderiv_measure(Q: Polynomial, delta: float,
                           ambient: Interval = Interval()) -> LevelSetReport:
    """Measure of {x in ambient : |Q'(x)/Q(x)| <= n*delta}, n = deg Q.

    Q must have all its zeros in the closed upper half-disk; the reported
    bound is 70e * delta and satisfaction is strict.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    n = Q.degree
    if Q.is_zero or n == 0:
        raise ValueError("needs a nonconstant polynomial")
    if n > _LEVELSET_DEGREE_CAP:
        raise DegreeCapError(n, _LEVELSET_DEGREE_CAP)
    rep = is_member(Q, ClassSpec(n, 0))
    if not rep:
        raise MembershipError(
            f"level-set hypothesis needs all zeros in the upper half-disk: {rep.detail}")
    dQ = derivative(Q)
    G = _difference_polynomial(modulus_square_on_reals(dQ),
                               modulus_square_on_reals(Q), (n * delta) ** 2)
    measure, intervals = _sign_region(G, ambient, keep_nonpositive=True)
    bound = SMALL_SET_CONSTANT * delta
    satisfied = measure.value + measure.err < bound
    return LevelSetReport(measure, bound, delta, satisfied, intervals)


def large_logderiv_measure(R: Polynomial, alpha: float,
                           ambient: Interval = Interval()) -> LevelSetReport:
    """Measure of {x in ambient : |R'(x)/R(x)| >= alpha}.

    The set is defined on all of R; only its restriction to the ambient
    interval is measured here.  Real zeros of R belong to the set (the
    logarithmic derivative blows up), which the sign formulation handles
    automatically.  A constant R has measure zero.  Bound: 8*sqrt(2)*k/alpha
    with k = deg R, non-strict.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if R.is_zero:
        raise ValueError("needs a nonzero polynomial")
    k = R.degree
    if k == 0:
        measure = CertifiedValue(0.0, 0.0, "critical-points")
        return LevelSetReport(measure, 0.0, alpha, True, ())
    if k > _LEVELSET_DEGREE_CAP:
        raise DegreeCapError(k, _LEVELSET_DEGREE_CAP)
    dR = derivative(R)
    H = _difference_polynomial(modulus_square_on_reals(dR),
                               modulus_square_on_reals(R), alpha ** 2)
    measure, intervals = _sign_region(H, ambient, keep_nonpositive=False)
    bound = LARGE_SET_CONSTANT * k / alpha
    satisfied = measure.value - measure.err <= bound
    return LevelSetReport(measure, bound, alpha, satisfied, intervals)


def _zeros_at(P: Polynomial, point: complex, tol: float = 1e-9) -> int:
    return sum(1 for z in P.zeros if abs(z - point) <= tol)


def incomplete_decay_check(S: Polynomial, n: int, k: int,
                           samples: int = 10_000) -> DecayReport:
    """Check |S(x)| <= x^((n-k)/2) * ||S||_[0,1] on [0, 1 - 10k/(n-k)].

    S must factor as x^(n-k) * R with deg R <= k.  The comparison interval
    can be empty (10k >= n-k), which is reported as a vacuous pass.
    """
    if not (1 <= k <= n - 1):
        raise ValueError(f"needs 1 <= k <= n-1, got n={n}, k={k}")
    if S.is_zero or S.is_coefficient_backed:
        raise MembershipError("needs a factored nonzero polynomial")
    if S.degree > n or _zeros_at(S, 0.0) < n - k:
        raise MembershipError(
            f"shape mismatch: need degree <= {n} with >= {n - k} zeros at 0")
    hi = 1.0 - 10.0 * k / (n - k)
    if hi <= 0.0:
        return DecayReport(None, None, True, True, 0)
    norm = sup_norm(S, Interval(0.0, 1.0)).value
    xs = np.linspace(0.0, hi, samples)
    vals = np.abs(evaluate_many(S, xs))
    envelope = xs ** ((n - k) / 2.0) * norm
    viol = float(np.max(vals - envelope))
    return DecayReport(viol, Interval(0.0, hi), False,
                       viol <= 1e-12 * (1.0 + norm), samples)


def flipped_decay_check(W: Polynomial, n: int, k: int) -> FlippedDecayReport:
    """Check sup of |y^(1/2) W(y)| over [10(2k+1)/n, 1] < sup over [0, 1].

    W must factor as (1-x)^(n-k) * V with deg V <= k and 1 <= k <= n/2.
    Both sups are taken through the auxiliary polynomial x * W(x)^2, whose
    absolute value on [0,1] is the square of the target quantity.
    """
    if not (1 <= k and 2 * k <= n):
        raise ValueError(f"needs 1 <= k <= n/2, got n={n}, k={k}")
    if W.is_zero or W.is_coefficient_backed:
        raise MembershipError("needs a factored nonzero polynomial")
    if W.degree > n or _zeros_at(W, 1.0) < n - k:
        raise MembershipError(
            f"shape mismatch: need degree <= {n} with >= {n - k} zeros at 1")
    aux = from_zeros(W.leading ** 2, W.zeros + W.zeros + (0.0,))
    y0 = 10.0 * (2 * k + 1) / n
    degenerate = y0 >= 1.0
    lo = min(y0, 1.0)
    full = sup_norm(aux, Interval(0.0, 1.0))
    restricted = sup_norm(aux, Interval(lo, 1.0))
    r = math.sqrt(max(restricted.value, 0.0))
    f = math.sqrt(max(full.value, 0.0))
    satisfied = r + restricted.err < f - full.err
    return FlippedDecayReport(r, f, degenerate, satisfied)


@dataclass(frozen=True)
class MeanValueReport:
    ratio: float
    window: Interval
    min_abs: float
    half_norm: float
    satisfied: bool


def mean_value_window_check(P: Polynomial, I: Interval = Interval(),
                            samples: int = 200) -> MeanValueReport:
    """Around a maximizer x0 of |P|, check |P(y)| >= ||P||/2 for
    |y - x0| <= 1/(2M) with M = ||P'||/||P||."""
    den = sup_norm(P, I)
    if den.value == 0:
        raise ValueError("needs a nonzero polynomial")
    num = sup_norm(derivative(P), I)
    M = num.value / den.value
    x0 = argmax_abs(P, I)
    half_width = 0.5 / M if M > 0 else (I.hi - I.lo)
    window = Interval(max(I.lo, x0 - half_width), min(I.hi, x0 + half_width))
    ys = np.linspace(window.lo, window.hi, samples)
    min_abs = float(np.min(np.abs(evaluate_many(P, ys))))
    ok = min_abs >= 0.5 * den.value - 1e-9 * (1.0 + den.value)
    return MeanValueReport(M, window, min_abs, 0.5 * den.value, ok)


def logderiv_values(P: Polynomial, xs) -> np.ndarray:
    """|P'/P| at sample points (inf where P vanishes)."""
    v = evaluate_many(P, xs)
    dv = derivative_values(P, xs)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.abs(dv) / np.abs(v)
    out[~np.isfinite(out)] = np.inf
    return out
