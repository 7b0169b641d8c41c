"""L2-Betti numbers, Novikov-Shubin invariants and L2-torsion in closed form.

All quantities are per unit volume of the quotient unless a volume is
supplied; values are exact :class:`~l2tor.exact.PiScalar` numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .catalog import (
    Metric,
    Space,
    SpaceData,
    SpaceDescriptor,
    as_space,
    parse_descriptor,
    resolve_space,
)
from .errors import UnsupportedMetric, UnsupportedSpace
from .exact import PiScalar, Polynomial, format_scalar, integrate_polynomial
from .roots import Weight, root_product_line, weyl_dimension

SpaceLike = Union[Space, SpaceData]


@dataclass(frozen=True, order=False)
class NSValue:
    """A Novikov-Shubin value: a positive rational or the gap symbol ``inf+``."""

    value: Fraction | None = None

    @property
    def is_gap(self) -> bool:
        return self.value is None

    def __lt__(self, other: "NSValue") -> bool:
        if self.is_gap:
            return False
        return other.is_gap or self.value < other.value

    def __str__(self):
        return "inf+" if self.is_gap else str(self.value)

    @classmethod
    def finite(cls, x) -> "NSValue":
        x = Fraction(x)
        if x <= 0:
            raise ValueError("finite Novikov-Shubin values are positive")
        return cls(x)


INF_PLUS = NSValue()


def _one_factor(x: SpaceLike) -> SpaceData:
    if isinstance(x, SpaceData):
        return x
    f = x.rank_one_factor
    if f is None:
        raise UnsupportedSpace("requires fundamental rank m = 1")
    return f


# -- Betti and Novikov-Shubin ------------------------------------------------


def betti_profile(space: SpaceLike) -> list[PiScalar]:
    """``b_p / vol(Y)`` for ``p = 0..n``: ``chi(X^d)/vol(X^d)`` in degree n/2 iff m = 0."""
    space = as_space(space)
    out = [PiScalar(0)] * (space.n + 1)
    if space.m == 0:
        chi = 1
        for f in space.factors:
            chi *= f.chi_dual
        out[space.n // 2] = PiScalar(chi) / dual_volume(space)
    return out


def ns_profile(space: SpaceLike) -> tuple[list[NSValue], list[NSValue]]:
    """(alpha_p, tilde-alpha_p) for ``p = 0..n``."""
    space = as_space(space)
    n, m = space.n, space.m
    alpha = [INF_PLUS] * (n + 1)
    if m > 0:
        for p in range((n - m) // 2, (n + m) // 2):
            alpha[p] = NSValue.finite(m)
    tilde = [min(alpha[p], alpha[p - 1] if p > 0 else INF_PLUS) for p in range(n + 1)]
    return alpha, tilde


# -- torsion ingredients -----------------------------------------------------


def _lambda_density(sd: SpaceData, lams: Sequence[Weight]) -> Polynomial:
    out = Polynomial()
    for lam in lams:
        out = out + root_product_line(sd.g_roots, lam, sd.alpha0)
    return out


@lru_cache(maxsize=None)
def _densities(sd: SpaceData, upto: int) -> tuple[Polynomial, ...]:
    return tuple(_lambda_density(sd, sd.lambda_at(l)) for l in range(upto + 1))


def density_polynomials(space: SpaceLike, include_middle: bool = False, generic: bool = False) -> list[Polynomial]:
    """``y -> p_l(y * alpha0)`` for ``l = 0..u-1`` (through ``u`` if requested).

    Catalog overrides stored on the space data replace the generic Weyl
    product unless ``generic`` is set.
    """
    sd = _one_factor(space)
    if sd.m != 1 or not sd.resolved:
        raise UnsupportedSpace("density polynomials require m = 1")
    u = sd.u
    gen = list(_densities(sd, u if include_middle else u - 1))
    if sd.density_override is not None and not generic:
        gen[: len(sd.density_override)] = sd.density_override
    return gen


@lru_cache(maxsize=None)
def density_at(sd: SpaceData, l: int) -> Polynomial:
    """``p_l`` for any ``0 <= l <= 2u``, built from ``Lambda_l`` directly."""
    if sd.density_override is not None and min(l, 2 * sd.u - l) < len(sd.density_override):
        return sd.density_override[min(l, 2 * sd.u - l)]
    return _lambda_density(sd, sd.lambda_at(l))


def q_terms(space: SpaceLike, generic: bool = False) -> list[Fraction]:
    """Signed summands ``(-1)^l * int_0^{u-l} p_l(y alpha0) dy``."""
    sd = _one_factor(space)
    ps = density_polynomials(sd, generic=generic)
    return [(-1) ** l * integrate_polynomial(p, 0, sd.u - l) for l, p in enumerate(ps)]


def q_invariant(space: SpaceLike, generic: bool = False) -> Fraction:
    """The positive rational ``Q_X`` of a fundamental-rank-one space."""
    terms = q_terms(space, generic)
    if any(t <= 0 for t in terms):
        raise ArithmeticError(f"term-wise positivity violated: {terms}")
    return sum(terms, Fraction(0))


def _root_pairing_product(rs) -> Fraction:
    out = Fraction(1)
    for a in rs.positive_roots:
        out *= rs.pairing(a, rs.rho)
    return out


def sphere_a_volume(sd: SpaceData) -> PiScalar:
    """``vol(S^d_A) = 2 pi / ||alpha0||`` (1 when m = 0)."""
    if sd.m == 0:
        return PiScalar(1)
    norm = sd.alpha0_norm
    if norm is None:
        raise UnsupportedMetric(
            f"{sd.atom} at metric multiplier {sd.scale}: ||alpha0||^2 = {sd.alpha0_norm_sq} has no rational root"
        )
    return PiScalar.monomial(2 / norm, 1)


def _atom_dual_volume(sd: SpaceData) -> PiScalar:
    if not sd.resolved or sd.m > 1:
        raise UnsupportedSpace(f"dual volume of {sd.atom} (m = {sd.m}) is not resolved")
    ratio = _root_pairing_product(sd.k_roots) / _root_pairing_product(sd.g_roots)
    two_pi = PiScalar.monomial(2, 1)
    return two_pi ** ((sd.n - sd.m) // 2) * sphere_a_volume(sd) * ratio


def dual_volume(space: SpaceLike) -> PiScalar:
    """Volume of the compact dual ``X^d``; multiplicative over factors."""
    out = PiScalar(1)
    for f in as_space(space).factors:
        out = out * _atom_dual_volume(f)
    return out


def plancherel_constant(space: SpaceLike) -> PiScalar:
    """``c_X = vol(S^d_A) / (|W_A| (2 pi)^m vol(X^d))``, per factor."""
    out = PiScalar(1)
    for sd in as_space(space).factors:
        if sd.m == 0:
            out = out / _atom_dual_volume(sd)
        elif sd.m == 1 and sd.resolved:
            c = sphere_a_volume(sd) / PiScalar.monomial(2 * sd.w_A_order, 1)
            out = out * c / _atom_dual_volume(sd)
        else:
            raise UnsupportedSpace(f"Plancherel constant of {sd.atom} (m = {sd.m})")
    return out


def formal_degree(space: SpaceLike, highest_weight: Sequence) -> PiScalar:
    """``dim(tau) / vol(X^d)`` for discrete series with the character of ``tau``."""
    space = as_space(space)
    if space.m != 0 or len(space.factors) != 1:
        raise UnsupportedSpace("formal degrees need a single atom with m = 0")
    sd = space.factors[0]
    return PiScalar(weyl_dimension(sd.g_roots, highest_weight)) / dual_volume(sd)


def _irreducible_t2(sd: SpaceData, generic: bool = False) -> PiScalar:
    sign = (-1) ** ((sd.n - 1) // 2)
    q = q_invariant(sd, generic)
    return PiScalar.monomial(sign * sd.chi_dual_M * q, 1) / _atom_dual_volume(sd)


def t2(space: SpaceLike, generic: bool = False) -> PiScalar:
    """``T2(X)`` with ``rho2(Y) = vol(Y) * T2(X)``.

    Zero unless m = 1; for a product ``X1 x X0`` with ``m(X0) = 0`` each flat
    factor contributes ``(-1)^(n0/2) chi(X0^d) / vol(X0^d)``.
    """
    space = as_space(space)
    if space.m != 1:
        return PiScalar(0)
    x1 = space.rank_one_factor
    out = _irreducible_t2(x1, generic)
    for f in space.flat_factors:
        out = out * PiScalar((-1) ** (f.n // 2) * f.chi_dual) / _atom_dual_volume(f)
    return out


def quotient_torsion(report_or_t2: "InvariantReport | PiScalar", volY: PiScalar) -> PiScalar:
    """``rho2(Y) = vol(Y) * T2(X)`` for a positive monomial volume."""
    T = report_or_t2.T2 if isinstance(report_or_t2, InvariantReport) else report_or_t2
    volY = PiScalar.coerce(volY)
    if not volY.is_monomial() or volY.leading()[1] <= 0:
        raise ValueError(f"vol(Y) must be a positive monomial, got {volY}")
    return volY * T


# -- report ------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantReport:
    space: SpaceDescriptor
    n: int
    m: int
    betti_per_vol: tuple[PiScalar, ...]
    alpha: tuple[NSValue, ...]
    alpha_tilde: tuple[NSValue, ...]
    discrete_spectrum_nonempty: bool
    Q: Fraction | None
    chi_dual_M: int | None
    vol_dual: PiScalar | None
    T2: PiScalar
    rho2: PiScalar | None

    def to_json_dict(self) -> dict:
        s = lambda x: None if x is None else format_scalar(x, "ascii")  # noqa: E731
        return {
            "schema": 1,
            "space": str(self.space),
            "n": self.n,
            "m": self.m,
            "betti": [s(b) for b in self.betti_per_vol],
            "alpha": [str(a) for a in self.alpha],
            "alpha_tilde": [str(a) for a in self.alpha_tilde],
            "Q": None if self.Q is None else str(self.Q),
            "chi_dual_M": self.chi_dual_M,
            "vol_dual": s(self.vol_dual),
            "T2": s(self.T2),
            "rho2": s(self.rho2),
            "discrete_spectrum_nonempty": self.discrete_spectrum_nonempty,
        }

    def render_text(self) -> str:
        d = self.to_json_dict()
        lines = [
            f"space: {d['space']}",
            f"n = {self.n}, m = {self.m}",
            f"discrete spectrum nonempty: {str(self.discrete_spectrum_nonempty).lower()}",
            "p    b_p/vol(Y)    alpha_p    alpha~_p",
        ]
        for p in range(self.n + 1):
            lines.append(f"{p:<4} {d['betti'][p]:<13} {d['alpha'][p]:<10} {d['alpha_tilde'][p]}")
        lines += [
            f"Q = {d['Q'] if d['Q'] is not None else '-'}",
            f"chi(X^d_M) = {d['chi_dual_M'] if d['chi_dual_M'] is not None else '-'}",
            f"vol(X^d) = {d['vol_dual'] if d['vol_dual'] is not None else '-'}",
            f"T2 = {d['T2']}",
        ]
        if self.rho2 is not None:
            lines.append(f"rho2 = {d['rho2']}")
        return "\n".join(lines)


def full_report(
    desc: SpaceDescriptor | str,
    volY: PiScalar | None = None,
    default_metric: Metric = None,
    generic: bool = False,
) -> InvariantReport:
    """Assemble every invariant for a descriptor."""
    if isinstance(desc, str):
        desc = parse_descriptor(desc)
    space = resolve_space(desc, default_metric, generic)
    n, m = space.n, space.m
    alpha, tilde = ns_profile(space)
    Q = chi_M = None
    if m == 1:
        x1 = space.rank_one_factor
        Q = q_invariant(x1, generic)
        chi_M = x1.chi_dual_M
        for f in space.flat_factors:
            chi_M *= f.chi_dual
    try:
        vol = dual_volume(space)
    except UnsupportedSpace:
        vol = None
    T = t2(space, generic)
    return InvariantReport(
        space=desc,
        n=n,
        m=m,
        betti_per_vol=tuple(betti_profile(space)),
        alpha=tuple(alpha),
        alpha_tilde=tuple(tilde),
        discrete_spectrum_nonempty=(m == 0),
        Q=Q,
        chi_dual_M=chi_M,
        vol_dual=vol,
        T2=T,
        rho2=None if volY is None else quotient_torsion(T, volY),
    )
