"""Factored and expanded polynomial representations.

The factored form (leading coefficient plus zero multiset) is the source
of truth everywhere in this package: evaluating ``leading * prod(x - z_i)``
directly keeps the relative error near machine precision even when the
expanded coefficients would cancel catastrophically (think zeros packed
inside [-1,1] at degree 30, where the sup-norm is ~2^(1-n)).  Expansion to
coefficients is only performed where a coefficient equation is genuinely
needed (critical points, level-set boundaries) and is capped at degree 60,
past which double-precision coefficient growth is unreliable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeCapError, OverflowEvaluationError

EXPANSION_CAP = 60

# Above this many (zeros x points) entries, factored evaluation streams
# over the zeros instead of building the full broadcast matrix.
_BROADCAST_LIMIT = 2_000_000


@dataclass(frozen=True)
class Interval:
    """Closed real interval; defaults to [-1, 1]."""

    lo: float = -1.0
    hi: float = 1.0

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (np.isfinite(lo) and np.isfinite(hi)):
            raise ValueError("interval endpoints must be finite")
        if lo > hi:
            raise ValueError(f"interval requires lo <= hi, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class Polynomial:
    """Polynomial over the complex numbers in factored form.

    ``coeffs`` is normally ``None``; it is populated only on
    coefficient-backed instances (produced when re-factoring after
    differentiation fails its residual check), in which case the stored
    ascending coefficients are authoritative and ``zeros`` is empty.
    """

    leading: complex
    zeros: tuple = ()
    is_zero: bool = False
    coeffs: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "leading", complex(self.leading))
        object.__setattr__(self, "zeros", tuple(complex(z) for z in self.zeros))
        if self.coeffs is not None:
            object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if not self.is_zero and self.leading == 0 and self.coeffs is None:
            raise ValueError(
                "leading coefficient must be nonzero; use Polynomial.zero() "
                "for the zero polynomial"
            )

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(leading=0.0, zeros=(), is_zero=True)

    @property
    def degree(self) -> int:
        if self.is_zero:
            return 0
        if self.coeffs is not None:
            return len(self.coeffs) - 1
        return len(self.zeros)

    @property
    def is_coefficient_backed(self) -> bool:
        return self.coeffs is not None

    def __call__(self, x):
        return evaluate(self, x)


@dataclass(frozen=True)
class RealPolynomial:
    """Real-coefficient polynomial, ascending power order."""

    coeffs: tuple

    def __post_init__(self):
        cs = [float(c) for c in self.coeffs]
        while len(cs) > 1 and cs[-1] == 0.0:
            cs.pop()
        if not cs:
            cs = [0.0]
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0.0,)

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x, np.asarray(self.coeffs))

    def derivative(self) -> "RealPolynomial":
        if self.degree == 0:
            return RealPolynomial((0.0,))
        return RealPolynomial(tuple(np.polynomial.polynomial.polyder(np.asarray(self.coeffs))))


def from_zeros(leading, zeros) -> Polynomial:
    """Build a polynomial leading * prod(x - z_i) from its zero multiset."""
    if complex(leading) == 0:
        raise ValueError(
            "leading coefficient must be nonzero; request the zero polynomial "
            "explicitly via Polynomial.zero()"
        )
    return Polynomial(leading=complex(leading), zeros=tuple(zeros))


def conjugate(P: Polynomial) -> Polynomial:
    """The polynomial whose coefficients are conjugated (zeros conjugate too)."""
    if P.is_zero:
        return Polynomial.zero()
    if P.is_coefficient_backed:
        return Polynomial(np.conj(P.leading), (), coeffs=tuple(np.conj(c) for c in P.coeffs))
    return Polynomial(np.conj(P.leading), tuple(np.conj(z) for z in P.zeros))


def evaluate_many(P: Polynomial, xs) -> np.ndarray:
    """Vectorized evaluation; factored product unless coefficient-backed."""
    x = np.atleast_1d(np.asarray(xs, dtype=complex))
    if P.is_zero:
        return np.zeros(x.shape, dtype=complex)
    if P.is_coefficient_backed:
        return np.polynomial.polynomial.polyval(x, np.asarray(P.coeffs, dtype=complex))
    zs = np.asarray(P.zeros, dtype=complex)
    if zs.size == 0:
        return np.full(x.shape, P.leading, dtype=complex)
    if zs.size * x.size <= _BROADCAST_LIMIT:
        return P.leading * np.prod(x[None, :] - zs[:, None], axis=0)
    out = np.full(x.shape, P.leading, dtype=complex)
    for z in zs:
        out *= x - z
    return out


def evaluate(P: Polynomial, x) -> complex:
    return complex(evaluate_many(P, [x])[0])


def derivative_values(P: Polynomial, xs) -> np.ndarray:
    """Values of P' at xs without expanding or re-factoring.

    Uses P'(x) = P(x) * sum_i 1/(x - z_i); points that collide with a zero
    (where the sum formula degenerates to inf*0) are repaired with the
    exact leave-one-out product.
    """
    x = np.atleast_1d(np.asarray(xs, dtype=complex))
    if P.is_zero:
        return np.zeros(x.shape, dtype=complex)
    if P.is_coefficient_backed:
        dc = np.polynomial.polynomial.polyder(np.asarray(P.coeffs, dtype=complex))
        return np.polynomial.polynomial.polyval(x, dc)
    zs = np.asarray(P.zeros, dtype=complex)
    if zs.size == 0:
        return np.zeros(x.shape, dtype=complex)
    vals = evaluate_many(P, x)
    with np.errstate(divide="ignore", invalid="ignore"):
        if zs.size * x.size <= _BROADCAST_LIMIT:
            s = np.sum(1.0 / (x[None, :] - zs[:, None]), axis=0)
        else:
            s = np.zeros(x.shape, dtype=complex)
            for z in zs:
                s += 1.0 / (x - z)
        out = vals * s
    bad = np.flatnonzero(~np.isfinite(out))
    for i in bad:
        xi = x.flat[i]
        diffs = xi - zs
        total = 0.0 + 0.0j
        for j in range(zs.size):
            total += np.prod(np.delete(diffs, j))
        out.flat[i] = P.leading * total
    return out


def expand(P: Polynomial) -> np.ndarray:
    """Ascending complex coefficients; raises past the expansion cap."""
    if P.is_zero:
        return np.zeros(1, dtype=complex)
    if P.is_coefficient_backed:
        return np.asarray(P.coeffs, dtype=complex)
    if P.degree > EXPANSION_CAP:
        raise DegreeCapError(P.degree, EXPANSION_CAP)
    c = np.array([P.leading], dtype=complex)
    for z in P.zeros:
        c = np.convolve(c, np.array([-z, 1.0], dtype=complex))
    if not np.all(np.isfinite(c)):
        raise OverflowEvaluationError("coefficient expansion")
    return c


# Residual threshold (relative to the derivative's coefficient scale) for
# accepting a re-factored derivative.
_REFACTOR_RTOL = 1e-8


def derivative(P: Polynomial) -> Polynomial:
    """Differentiate; re-factors through the complex root finder.

    When the residual check on the recovered roots fails, the result is a
    coefficient-backed Polynomial rather than a silently wrong factored one.
    """
    if P.is_zero or P.degree == 0:
        return Polynomial.zero()
    if P.is_coefficient_backed:
        dc = np.polynomial.polynomial.polyder(np.asarray(P.coeffs, dtype=complex))
        return _refactor_from_coeffs(dc)
    if P.degree > EXPANSION_CAP:
        raise DegreeCapError(P.degree, EXPANSION_CAP)
    dc = np.polynomial.polynomial.polyder(expand(P))
    return _refactor_from_coeffs(dc)


def _refactor_from_coeffs(dc: np.ndarray) -> Polynomial:
    dc = np.asarray(dc, dtype=complex)
    nz = np.flatnonzero(np.abs(dc) > 0)
    if nz.size == 0:
        return Polynomial.zero()
    dc = dc[: nz[-1] + 1]
    if len(dc) == 1:
        return Polynomial(dc[0], ())
    roots = np.polynomial.polynomial.polyroots(dc)
    scale = float(np.max(np.abs(dc)))
    cand = Polynomial(dc[-1], tuple(roots))
    resid = np.max(np.abs(evaluate_many(cand, roots)))
    if resid <= _REFACTOR_RTOL * scale:
        return cand
    return Polynomial(dc[-1], (), coeffs=tuple(dc))


def modulus_square_on_reals(P: Polynomial) -> RealPolynomial:
    """Coefficients of P(x) * conj(P)(x); equals |P(x)|^2 for real x."""
    if P.is_zero:
        return RealPolynomial((0.0,))
    c = expand(P)
    g = np.convolve(c, np.conj(c))
    return RealPolynomial(tuple(g.real))


def to_payload(P: Polynomial) -> dict:
    """JSON-ready dict: {"leading": [re, im], "zeros": [[re, im], ...]}."""
    if P.is_coefficient_backed:
        raise ValueError("coefficient-backed polynomials have no zero-list payload")
    if P.is_zero:
        return {"leading": [0.0, 0.0], "zeros": []}
    return {
        "leading": [P.leading.real, P.leading.imag],
        "zeros": [[z.real, z.imag] for z in P.zeros],
    }


def from_payload(obj: dict) -> Polynomial:
    try:
        lead = complex(obj["leading"][0], obj["leading"][1])
        zeros = tuple(complex(z[0], z[1]) for z in obj["zeros"])
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed polynomial payload: {exc}") from exc
    if lead == 0 and not zeros:
        return Polynomial.zero()
    return from_zeros(lead, zeros)
