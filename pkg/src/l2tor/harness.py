"""Numeric and asymptotic checks of the exact engine.

The heat traces here are Gaussian integrals of Plancherel-type densities.
Exact large-time expansions carry a ``sqrt(pi)`` factor, so they use
:class:`SqrtPiScalar` rather than the core :class:`~l2tor.exact.PiScalar`.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import mpmath
import numpy as np

from .catalog import Space, SpaceData, as_space
from .errors import QuadratureError, UnsupportedSpace
from .exact import PiScalar, Polynomial, format_scalar, integrate_polynomial
from .invariants import (
    INF_PLUS,
    NSValue,
    density_at,
    density_polynomials,
    dual_volume,
    plancherel_constant,
    t2,
)
from .roots import dot, root_product_line

# -- sqrt(pi) extension --------------------------------------------------------


@dataclass(frozen=True)
class SqrtPiScalar:
    """``base * sqrt(pi)`` if ``half`` else ``base``."""

    base: PiScalar
    half: bool = False

    def __mul__(self, other: "SqrtPiScalar | PiScalar | int | Fraction") -> "SqrtPiScalar":
        if not isinstance(other, SqrtPiScalar):
            other = SqrtPiScalar(PiScalar.coerce(other))
        base = self.base * other.base
        if self.half and other.half:
            return SqrtPiScalar(base * PiScalar.pi(), False)
        return SqrtPiScalar(base, self.half or other.half)

    __rmul__ = __mul__

    def __add__(self, other: "SqrtPiScalar") -> "SqrtPiScalar":
        if self.base.is_zero():
            return other
        if other.base.is_zero():
            return self
        if self.half != other.half:
            raise ValueError("cannot add integer and half-integer pi powers")
        return SqrtPiScalar(self.base + other.base, self.half)

    def is_zero(self) -> bool:
        return self.base.is_zero()

    def to_mpf(self, dps: int = 30):
        with mpmath.workdps(dps):
            v = self.base.to_mpf(dps)
            return v * mpmath.sqrt(mpmath.pi) if self.half else v

    def __float__(self):
        return float(self.to_mpf())

    def __str__(self):
        s = format_scalar(self.base, "ascii")
        if not self.half:
            return s
        return "sqrt(pi)" if s == "1" else f"({s}) * sqrt(pi)"


def _gamma_ratio(k: int, m_dim: int) -> SqrtPiScalar:
    """``pi^(m/2) Gamma(k + m/2) / Gamma(m/2)`` exactly."""
    r = Fraction(1)
    for j in range(k):
        r *= Fraction(m_dim, 2) + j
    return SqrtPiScalar(PiScalar.monomial(r, m_dim // 2), m_dim % 2 == 1)


# -- heat expansions -----------------------------------------------------------


@dataclass(frozen=True)
class HeatTerm:
    """``weight * exp(-t c^2) * int exp(-t |y|^2) density(|y|) dy``."""

    density: Polynomial
    c_squared: Fraction = Fraction(0)
    weight: Fraction = Fraction(1)

    def __post_init__(self):
        if self.c_squared < 0:
            raise ValueError("c_squared must be non-negative")
        if not self.density.is_even():
            raise ValueError("heat densities must be even")


@dataclass(frozen=True)
class AsymptoticExpansion:
    """``exp(-decay * t) * sum coef * t^(-exponent)`` with exponents increasing."""

    terms: tuple[tuple[Fraction, SqrtPiScalar], ...]
    decay: Fraction = Fraction(0)

    def __post_init__(self):
        if not self.terms or self.terms[0][1].is_zero():
            raise ValueError("leading coefficient must be nonzero")
        exps = [e for e, _ in self.terms]
        if any(b <= a for a, b in zip(exps, exps[1:])):
            raise ValueError("exponents must increase strictly")

    @property
    def exponentially_suppressed(self) -> bool:
        return self.decay > 0

    @property
    def leading_exponent(self) -> Fraction:
        return self.terms[0][0]

    def __call__(self, t: float) -> float:
        s = sum(float(c) * t ** (-float(e)) for e, c in self.terms)
        return s * float(np.exp(-float(self.decay) * t))

    def __str__(self):
        body = " + ".join(f"{c} t^-{e}" for e, c in self.terms)
        return f"exp(-{self.decay} t) * ({body})" if self.decay else body


def heat_expansion(term: HeatTerm, m_dim: int = 1, order: int | None = None) -> AsymptoticExpansion:
    """Large-t expansion of ``term`` integrated over ``R^m_dim``.

    For a radial density ``sum a_k |y|^(2k)`` the result is exact:
    ``sum a_k pi^(m/2) Gamma(k + m/2) / Gamma(m/2) t^-(k + m/2)``.  ``order``
    caps the number of terms returned.
    """
    if m_dim < 1:
        raise ValueError("m_dim must be positive")
    if order is not None and order < 1:
        raise ValueError("order must be at least 1")
    if term.density.is_zero():
        raise ValueError("zero density has no expansion")
    out = []
    for i, a in enumerate(term.density.coeffs):
        if a == 0:
            continue
        k = i // 2
        coef = _gamma_ratio(k, m_dim) * (a * term.weight)
        out.append((Fraction(2 * k + m_dim, 2), coef))
    if order is not None:
        out = out[:order]
    return AsymptoticExpansion(tuple(out), term.c_squared)


# -- Novikov-Shubin -----------------------------------------------------------


def _xi_parameter(sd: SpaceData):
    """A Weyl conjugate of ``rho_g`` orthogonal to ``alpha0``, M-dominant."""
    g = sd.g_roots
    rho = g.rho
    if g.family == "D":
        # move the zero entry of rho = (k-1, ..., 1, 0) into the a-slot
        lam = (rho[-1],) + rho[:-1]
    elif g.family == "A" and g.rank == 2:
        from itertools import permutations

        lam = next(
            p
            for p in permutations(rho)
            if dot(p, sd.alpha0) == 0 and all(dot(p, a) > 0 for a in sd.m_roots.positive_roots)
        )
    else:
        raise UnsupportedSpace(f"no rank-one data for {g.label()}")
    assert dot(lam, sd.alpha0) == 0 and sorted(lam) == sorted(rho)
    return lam


def ns_density(space: SpaceData | Space) -> Polynomial:
    """``y -> (-1)^u root_product(Lambda_xi + y alpha0)``, positive at 0."""
    sd = space if isinstance(space, SpaceData) else space.rank_one_factor
    if sd is None or sd.m != 1 or not sd.resolved:
        raise UnsupportedSpace("the Novikov-Shubin density needs m = 1")
    P = root_product_line(sd.g_roots, _xi_parameter(sd), sd.alpha0) * (-1) ** sd.u
    assert P(0) > 0, "Novikov-Shubin density must be positive at 0"
    return P


def ns_exponent(space: SpaceData | Space, p: int) -> NSValue:
    """``alpha_p`` derived from the heat expansion of the band-degree trace.

    The band is where ``C(m-1, p-(n-m)/2)`` is nonzero.  For m = 1 the decay
    exponent comes from the expansion of :func:`ns_density`; reduced atoms
    with m >= 2 carry no density and use a constant one, as the leading
    coefficient is positive there too.
    """
    space = as_space(space)
    n, m = space.n, space.m
    j = p - (n - m) // 2
    if m == 0 or not 0 <= j <= m - 1 or comb(m - 1, j) == 0:
        return INF_PLUS
    P = ns_density(space) if m == 1 else Polynomial([1])
    if P(0) <= 0:
        return INF_PLUS
    exp = heat_expansion(HeatTerm(P.on_imaginary_axis()), m_dim=m).leading_exponent
    return NSValue.finite(2 * exp)


def heat_trace(space: SpaceData | Space, p: int, ts, nodes: int = 64) -> np.ndarray:
    """Coclosed heat trace of degree ``p`` per unit volume at times ``ts``.

    Evaluated by Gauss-Hermite quadrature of ``int exp(-t y^2) P(iy) dy``,
    independently of the closed-form expansion.  The prefactor
    ``c_X |W_A| chi(X^d_M) / 2`` is bookkeeping only and never asserted.
    """
    space = as_space(space)
    if ns_exponent(space, p) == INF_PLUS:
        raise ValueError(f"degree {p} lies in the spectral gap")
    if space.m != 1:
        raise UnsupportedSpace("heat traces are implemented for m = 1")
    sd = space.rank_one_factor
    Q = ns_density(sd).on_imaginary_axis()
    coeffs = np.array([float(c) for c in Q.coeffs])
    z, w = np.polynomial.hermite.hermgauss(nodes)
    ts = np.asarray(ts, dtype=float)
    vals = np.array([w @ np.polynomial.polynomial.polyval(z / np.sqrt(t), coeffs) / np.sqrt(t) for t in ts])
    pref = float(plancherel_constant(sd).to_mpf()) * sd.w_A_order * sd.chi_dual_M / 2
    for f in space.flat_factors:
        pref *= float((PiScalar(f.chi_dual) / dual_volume(f)).to_mpf())
    return pref * vals


def fit_slope(ts, values) -> float:
    """Least-squares slope of ``log values`` against ``log ts``."""
    slope, _ = np.polyfit(np.log(np.asarray(ts, float)), np.log(np.abs(np.asarray(values, float))), 1)
    return float(slope)


def slope_grid(lo: float = 10.0, hi: float = 1e4, num: int = 50) -> np.ndarray:
    return np.logspace(np.log10(lo), np.log10(hi), num)


# -- regularized log-determinants ---------------------------------------------


@dataclass(frozen=True)
class LogdetResult:
    value: float
    exact: Fraction
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual < self.tol

    @property
    def exact_value(self) -> float:
        return float(-2 * mpmath.pi * self.exact)


def _small_t_part(Q: Polynomial, c: Fraction) -> float:
    """``d/ds|0 Gamma(s)^-1 int_0^1 t^(s-1) k(t) dt`` term by term."""
    with mpmath.workdps(40):
        x = mpmath.mpf(c.numerator) / c.denominator
        out = mpmath.mpf(0)
        for i, q in enumerate(Q.coeffs):
            if q == 0:
                continue
            k = i // 2
            a = mpmath.mpf(k) + mpmath.mpf(1) / 2
            b = mpmath.mpf(q.numerator) / q.denominator * mpmath.gamma(a)
            if c == 0:
                out += b / (-a)
            else:
                lower = mpmath.gamma(-a) - mpmath.gammainc(-a, x**2)
                out += b * x ** (2 * a) * lower
        return float(out)


def _gauss(a: float, b: float, f, x: np.ndarray, w: np.ndarray) -> float:
    h = (b - a) / 2
    return h * float(w @ f(a + h * (x + 1)))


def adaptive_gauss(f, a: float, b: float, x, w, tol: float, max_panels: int = 2000) -> float:
    """Bisect until each panel's two-half estimate agrees with the whole."""
    total, panels = 0.0, 0
    stack = [(a, b, _gauss(a, b, f, x, w), tol)]
    while stack:
        lo, hi, whole, eps = stack.pop()
        mid = (lo + hi) / 2
        left, right = _gauss(lo, mid, f, x, w), _gauss(mid, hi, f, x, w)
        panels += 1
        if abs(left + right - whole) < eps:
            total += left + right
            continue
        if panels >= max_panels:
            raise QuadratureError(f"no convergence to {tol:g} within {max_panels} panels")
        # right half pushed first so panels are summed left to right
        stack.append((mid, hi, right, eps / 2))
        stack.append((lo, mid, left, eps / 2))
    return total


def _tail_cutoff(Q: Polynomial, tol: float) -> float:
    mags = [abs(float(c)) for c in Q.coeffs]
    Z = max(4.0, float(np.sqrt(len(mags))))
    while sum(a * Z**i for i, a in enumerate(mags)) * np.exp(-Z * Z) >= tol / 10:
        Z *= 1.25
    return Z


def _large_t_part(Q: Polynomial, c: Fraction, quad_points: int, tol: float, adaptive: bool) -> float:
    """``int_1^inf k(t) dt / t`` with ``t = 1/w^2``, as a (w, z) Gaussian integral."""
    x, w = np.polynomial.legendre.leggauss(quad_points)
    coeffs = np.array([float(q) for q in Q.coeffs])
    Z = _tail_cutoff(Q, tol)
    panels = int(np.ceil(Z))
    zs = np.concatenate([(i + (x + 1) / 2) * Z / panels for i in range(panels)])
    zw = np.concatenate([w * Z / (2 * panels)] * panels)
    c2 = float(c) ** 2

    def integrand(ws: np.ndarray) -> np.ndarray:
        inner = np.polynomial.polynomial.polyval(np.outer(ws, zs), coeffs) @ (zw * np.exp(-zs * zs))
        with np.errstate(divide="ignore", over="ignore", under="ignore"):
            damp = np.exp(-c2 / ws**2)
        return 4 * damp * inner

    if adaptive:
        return adaptive_gauss(integrand, 0.0, 1.0, x, w, tol / 10)
    return _gauss(0.0, 1.0, integrand, x, w)


def regularized_logdet(P: Polynomial, c, quad_points: int = 64, tol: float = 1e-8, adaptive: bool = True) -> float:
    """Zeta-regularized value for ``k(t) = exp(-c^2 t) int exp(-t y^2) P(iy) dy``."""
    if quad_points < 16:
        raise ValueError("quad_points must be at least 16")
    c = Fraction(c)
    if c < 0:
        raise ValueError("c must be non-negative")
    Q = P.on_imaginary_axis()
    return _small_t_part(Q, c) + _large_t_part(Q, c, quad_points, tol, adaptive)


def logdet_identity_check(
    P: Polynomial, c, quad_points: int = 64, tol: float = 1e-8, adaptive: bool = True
) -> LogdetResult:
    """Compare the regularized value against ``-2 pi int_0^c P``."""
    c = Fraction(c)
    exact = integrate_polynomial(P, 0, c)
    value = regularized_logdet(P, c, quad_points, tol, adaptive)
    residual = abs(value - float(-2 * mpmath.pi * exact))
    return LogdetResult(value, exact, residual, tol)


# -- torsion ------------------------------------------------------------------


@dataclass(frozen=True)
class CrosscheckResult:
    exact: PiScalar
    numeric: float
    rel_error: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.rel_error < self.tol


def _threads(jobs: int) -> int:
    cap = os.environ.get("L2TOR_THREADS")
    limit = int(cap) if cap and cap.isdigit() and int(cap) > 0 else os.cpu_count() or 1
    return max(1, min(limit, jobs))


def torsion_crosscheck(space: SpaceData | Space, tol: float = 1e-6, quad_points: int = 64) -> CrosscheckResult:
    """Rebuild ``T2`` from regularized ``k_l`` integrals and compare with the exact value.

    ``R_l`` is the regularized value for ``P(s) = p_l(s alpha0 / |alpha0|)``
    and ``c = |u - l| |alpha0|``; only ``l <= u`` are integrated since
    ``p_l = p_{2u-l}``.
    """
    space = as_space(space)
    sd = space.rank_one_factor
    if sd is None:
        raise UnsupportedSpace("torsion cross-check needs m = 1")
    norm = sd.alpha0_norm
    if norm is None:
        raise UnsupportedSpace("the cross-check needs a rational ||alpha0||")
    u = sd.u
    dens = density_polynomials(sd) + [density_at(sd, u)]

    def job(l: int) -> float:
        P = Polynomial(c / norm**i for i, c in enumerate(dens[l].coeffs))
        return regularized_logdet(P, (u - l) * norm, quad_points, tol * 1e-3)

    with ThreadPoolExecutor(_threads(u + 1)) as pool:
        R = list(pool.map(job, range(u + 1)))
    total = sum((-1) ** (l + 1) * R[min(l, 2 * u - l)] for l in range(2 * u + 1))
    pref = (-1) ** ((sd.n - 1) // 2) * sd.chi_dual_M / (4 * float(norm) * float(dual_volume(sd).to_mpf()))
    numeric = pref * total
    for f in space.flat_factors:
        numeric *= (-1) ** (f.n // 2) * f.chi_dual / float(dual_volume(f).to_mpf())
    exact = t2(space)
    ev = float(exact.to_mpf())
    return CrosscheckResult(exact, numeric, abs(numeric - ev) / abs(ev), tol)
