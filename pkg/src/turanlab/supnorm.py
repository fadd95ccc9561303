"""Certified sup-norms on intervals, real-root isolation, total variation.

Two backends compute ``max |P|`` over an interval:

* critical-points (degree <= 60): the real critical points of |P(x)|^2 are
  located from the expanded coefficient equation, then polished against the
  numerically accurate factored form h(x) = 2 Re(conj(P) P'); candidate
  values are always taken from the factored form, so coefficient
  cancellation in the expansion cannot corrupt the maximum.
* certified-grid (any degree): branch-and-bound over subintervals with a
  Lipschitz certificate from the classical derivative bound
  ||P'|| <= d^2 (2/|I|) ||P||, seeded by a coarse pass inflated 2x.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OverflowEvaluationError
from .poly import (
    EXPANSION_CAP,
    Interval,
    Polynomial,
    RealPolynomial,
    derivative,
    derivative_values,
    evaluate_many,
    expand,
    modulus_square_on_reals,
)

_EPS = float(np.finfo(float).eps)

# Roots closer than this are merged and reported as one multiplicity cluster.
_CLUSTER_TOL = 1e-9


@dataclass(frozen=True)
class CertifiedValue:
    """A value together with a guaranteed absolute-error radius."""

    value: float
    err: float
    method: str  # "critical-points" | "certified-grid"

    def __post_init__(self):
        if self.err < 0:
            raise ValueError("error radius must be nonnegative")


@dataclass(frozen=True)
class RootList:
    roots: tuple
    residuals: tuple
    multiplicities: tuple


def _polish_roots(f, hints, lo, hi, xtol):
    """Bracket each hint by sign change, then lockstep bisection (vectorized)."""
    hints = np.unique(np.clip(np.asarray(hints, dtype=float), lo, hi))
    if hints.size == 0:
        return hints, np.zeros(0, dtype=bool)
    span = max(hi - lo, xtol)
    widths = xtol * 4.0 ** np.arange(40)
    widths = widths[widths <= span]
    blo = np.full(hints.shape, np.nan)
    bhi = np.full(hints.shape, np.nan)
    open_ = np.ones(hints.shape, dtype=bool)
    for w in widths:
        if not open_.any():
            break
        a = np.clip(hints - w, lo, hi)
        b = np.clip(hints + w, lo, hi)
        idx = np.flatnonzero(open_)
        fa = f(a[idx])
        fb = f(b[idx])
        hit = idx[np.sign(fa) * np.sign(fb) <= 0]
        blo[hit] = a[hit]
        bhi[hit] = b[hit]
        open_[hit] = False
    bracketed = ~np.isnan(blo)
    roots = hints.copy()
    a = blo[bracketed]
    b = bhi[bracketed]
    if a.size:
        fa = f(a)
        for _ in range(90):
            mid = 0.5 * (a + b)
            fm = f(mid)
            left = np.sign(fa) * np.sign(fm) <= 0
            b = np.where(left, mid, b)
            a = np.where(left, a, mid)
            fa = np.where(left, fa, fm)
            if np.max(b - a) <= xtol:
                break
        roots[bracketed] = 0.5 * (a + b)
    return roots, bracketed


def real_roots(G: RealPolynomial, I: Interval = Interval(), tol: float = 1e-12,
               refine_fn=None) -> RootList:
    """All real roots of G inside I, bracketed to width <= tol.

    Hints come from the companion-matrix eigenvalues plus a sign-change scan
    on a Chebyshev grid; each hint is polished by bisection against
    ``refine_fn`` when given (an accurate reevaluation of G) or G itself.
    Roots closer than 1e-9 are merged into one entry with a multiplicity
    estimate.
    """
    if G.is_zero:
        raise ValueError("real_roots requires a nonzero polynomial")
    if tol <= 0:
        raise ValueError("tol must be positive")
    lo, hi = I.lo, I.hi
    f = refine_fn if refine_fn is not None else (lambda x: np.asarray(G(x), dtype=float))
    if G.degree == 0:
        return RootList((), (), ())

    margin = 0.05 * max(1.0, hi - lo)
    eig = np.atleast_1d(np.polynomial.polynomial.polyroots(np.asarray(G.coeffs)))
    eig_real = np.array([z.real for z in eig
                         if abs(z.imag) <= margin
                         and lo - margin <= z.real <= hi + margin])
    hints = list(eig_real)

    m = max(32, 4 * G.degree + 9)
    grid = lo + (hi - lo) * 0.5 * (1.0 - np.cos(np.pi * np.arange(m + 1) / m))
    gv = f(grid)
    sgn = np.sign(gv)
    flips = np.flatnonzero(sgn[:-1] * sgn[1:] < 0)
    hints.extend(0.5 * (grid[i] + grid[i + 1]) for i in flips)
    hints.extend(grid[np.flatnonzero(sgn == 0)])

    roots, bracketed = _polish_roots(f, np.asarray(hints, dtype=float), lo, hi, tol)
    if roots.size == 0:
        return RootList((), (), ())

    scale = float(np.max(np.abs(gv))) + float(np.max(np.abs(np.asarray(G.coeffs))))
    resid = np.abs(f(roots))
    keep = bracketed | (resid <= 1e-7 * max(scale, 1e-300))
    roots = roots[keep]
    resid = resid[keep]
    order = np.argsort(roots)
    roots, resid = roots[order], resid[order]

    # Distinct hints converging to one simple root are deduplicated; the
    # multiplicity estimate comes from the companion-eigenvalue multiset
    # (an m-fold real root shows up as m eigenvalues splattered around it).
    out_roots, out_res, out_mult = [], [], []
    i = 0
    while i < roots.size:
        j = i
        while j + 1 < roots.size and roots[j + 1] - roots[j] <= _CLUSTER_TOL:
            j += 1
        pick = i + int(np.argmin(resid[i : j + 1]))
        rep = float(roots[pick])
        radius = max(1e-6 * max(1.0, hi - lo), _CLUSTER_TOL)
        mult = int(np.sum(np.abs(eig_real - rep) <= radius)) if eig_real.size else 0
        out_roots.append(rep)
        out_res.append(float(resid[pick]))
        out_mult.append(max(mult, 1))
        i = j + 1
    return RootList(tuple(out_roots), tuple(out_res), tuple(out_mult))


def _critical_point_sup(P: Polynomial, I: Interval, tol: float):
    """(value, err, argmax) via the critical-points method; degree <= 60."""
    lo, hi = I.lo, I.hi
    d = P.degree
    g = modulus_square_on_reals(P)
    dg = g.derivative()

    cands = [np.array([lo, hi])]
    if not dg.is_zero and dg.degree >= 0 and len(dg.coeffs) > 1:
        margin = 0.05 * max(1.0, hi - lo)
        eig = np.polynomial.polynomial.polyroots(np.asarray(dg.coeffs))
        hints = np.array([z.real for z in np.atleast_1d(eig)
                          if abs(z.imag) <= margin and lo - margin <= z.real <= hi + margin])

        def h(x):
            # accurate (|P|^2)' from the factored form
            v = evaluate_many(P, x)
            dv = derivative_values(P, x)
            return 2.0 * (np.conj(v) * dv).real

        if hints.size:
            roots, _ = _polish_roots(h, hints, lo, hi, 1e-13 * max(1.0, hi - lo))
            cands.append(roots)
    m = max(8, 4 * d)
    cands.append(lo + (hi - lo) * 0.5 * (1.0 - np.cos(np.pi * np.arange(m + 1) / m)))
    xs = np.concatenate(cands)
    vals = np.abs(evaluate_many(P, xs))
    if not np.all(np.isfinite(vals)):
        raise OverflowEvaluationError("sup-norm evaluation")
    best = float(np.max(vals))
    near = xs[vals >= best * (1.0 - 64.0 * _EPS)]
    argmax = float(np.min(near)) if near.size else float(xs[int(np.argmax(vals))])
    err = 64.0 * (d + 1) * _EPS * best
    return best, err, argmax


def _bnb_max(values_fn, degree: int, I: Interval, tol: float):
    """(value, err, argmax) via Lipschitz-certified branch-and-bound.

    values_fn(xs) -> |values| on xs.  The certificate is the derivative
    bound L = degree^2 * (2/|I|) * Mhat with Mhat from a coarse pass whose
    step already certifies M <= 2 * coarse max, inflated 2x.
    """
    lo, hi = I.lo, I.hi
    L = hi - lo
    if L <= 0:
        v = float(values_fn(np.array([lo]))[0])
        return v, 0.0, lo
    d = max(degree, 1)
    m0 = int(min(max(256, 2 * d * d), 6_000_000))
    xs = np.linspace(lo, hi, m0 + 1)
    vals = values_fn(xs)
    if not np.all(np.isfinite(vals)):
        raise OverflowEvaluationError("certified-grid sampling")
    i0 = int(np.argmax(vals))
    best = float(vals[i0])
    best_x = float(xs[i0])
    if best == 0.0:
        return 0.0, 0.0, lo
    mhat = 2.0 * best
    lip = d * d * (2.0 / L) * mhat

    a = xs[:-1]
    b = xs[1:]
    va = vals[:-1]
    vb = vals[1:]
    tol_eff = max(tol, 64.0 * _EPS * best)
    for _ in range(200):
        w = b - a
        ub = np.maximum(va, vb) + 0.5 * lip * w
        keep = ub > best + tol_eff
        if not np.any(keep):
            gap = float(np.max(ub - best)) if ub.size else 0.0
            return best, max(min(gap, tol_eff), 0.0), best_x
        a, b, va, vb = a[keep], b[keep], va[keep], vb[keep]
        mid = 0.5 * (a + b)
        vm = values_fn(mid)
        j = int(np.argmax(vm))
        if float(vm[j]) > best:
            best = float(vm[j])
            best_x = float(mid[j])
            tol_eff = max(tol, 64.0 * _EPS * best)
        a = np.concatenate([a, mid])
        b = np.concatenate([mid, b])
        va = np.concatenate([va, vm])
        vb = np.concatenate([vm, vb])
    ub = np.maximum(va, vb) + 0.5 * lip * (b - a)
    return best, max(float(np.max(ub)) - best, 0.0), best_x


def _sup_with_argmax(P: Polynomial, I: Interval, tol: float, method=None):
    if tol <= 0:
        raise ValueError("tol must be positive")
    if P.is_zero:
        return 0.0, 0.0, I.lo, "critical-points"
    if P.degree == 0:
        v = abs(P.leading)
        if not np.isfinite(v):
            raise OverflowEvaluationError("sup-norm evaluation")
        return float(v), 0.0, I.lo, "critical-points"
    if method is None:
        method = "critical-points" if P.degree <= EXPANSION_CAP else "certified-grid"
    if method == "critical-points":
        if P.degree > EXPANSION_CAP:
            raise ValueError("critical-points backend needs degree <= "
                             f"{EXPANSION_CAP}; got {P.degree}")
        v, e, x = _critical_point_sup(P, I, tol)
        return v, e, x, "critical-points"
    if method == "certified-grid":
        fn = lambda xs: np.abs(evaluate_many(P, xs))
        v, e, x = _bnb_max(fn, P.degree, I, tol)
        return v, e, x, "certified-grid"
    raise ValueError(f"unknown sup-norm method: {method!r}")


def sup_norm(P: Polynomial, I: Interval = Interval(), tol: float = 1e-10,
             method: str | None = None) -> CertifiedValue:
    """Certified max of |P| over I."""
    v, e, _, m = _sup_with_argmax(P, I, tol, method)
    return CertifiedValue(v, e, m)


def argmax_abs(P: Polynomial, I: Interval = Interval(), tol: float = 1e-10,
               method: str | None = None) -> float:
    """Leftmost certified maximizer of |P| on I (deterministic tie-break)."""
    _, _, x, _ = _sup_with_argmax(P, I, tol, method)
    return x


def sup_norm_derivative(P: Polynomial, I: Interval = Interval(),
                        tol: float = 1e-10) -> CertifiedValue:
    """Certified max of |P'| over I without expanding P.

    Works at any degree: |P'| is evaluated through the factored
    log-derivative formula and certified with the branch-and-bound grid
    (P' has degree P.degree - 1, so the same Lipschitz certificate applies).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if P.is_zero or P.degree == 0:
        return CertifiedValue(0.0, 0.0, "certified-grid")
    fn = lambda xs: np.abs(derivative_values(P, xs))
    v, e, _ = _bnb_max(fn, P.degree, I, tol)
    return CertifiedValue(v, e, "certified-grid")


def argmax_abs_derivative(P: Polynomial, I: Interval = Interval(),
                          tol: float = 1e-10) -> float:
    fn = lambda xs: np.abs(derivative_values(P, xs))
    _, _, x = _bnb_max(fn, P.degree if P.degree else 1, I, tol)
    return x


def total_variation(P: Polynomial, I: Interval = Interval()) -> CertifiedValue:
    """V_a^b(P) = integral of |P'|, summed exactly between critical points.

    Requires P real-valued on I (checked at probe points) and degree <= 60.
    """
    probes = np.linspace(I.lo, I.hi, 5)
    pv = evaluate_many(P, probes)
    if np.any(np.abs(pv.imag) > 1e-9 * (1.0 + np.abs(pv))):
        raise ValueError("total_variation requires a real-valued polynomial "
                         "on the interval")
    if P.is_zero or P.degree == 0:
        return CertifiedValue(0.0, 0.0, "critical-points")
    dP = derivative(P)
    c = expand(dP)
    dReal = RealPolynomial(tuple(c.real))
    tol = 1e-12
    pts = [I.lo, I.hi]
    if not dReal.is_zero and dReal.degree >= 1:
        rl = real_roots(dReal, I, tol,
                        refine_fn=lambda xs: derivative_values(P, xs).real)
        pts.extend(rl.roots)
    pts = np.unique(np.clip(np.asarray(pts, dtype=float), I.lo, I.hi))
    vals = evaluate_many(P, pts).real
    tv = float(np.sum(np.abs(np.diff(vals))))
    md = sup_norm(dP, I).value if dP.degree <= EXPANSION_CAP else float(np.max(np.abs(c))) * len(c)
    err = 2.0 * len(pts) * (tol * md + 16.0 * _EPS * (1.0 + float(np.max(np.abs(vals)))))
    return CertifiedValue(tv, err, "critical-points")
