"""Symmetric-space descriptors and their resolution into root-theoretic data.

Supported atoms are ``SO(p,q)`` (``H^n`` is ``SO(1,n)``) and ``SL(n,R)``.
Each atom carries a metric, given either by name or as a positive rational
multiple of a reference invariant form:

* ``SO(p,q)``: the form ``tr(XY)/2`` of the defining representation, whose
  restriction to ``p = R^{p x q}`` is the Frobenius norm.  For ``p = 1`` it
  is the curvature ``-1`` metric on hyperbolic space.
* ``SL(n,R)``: the trace form ``tr(XY)``.

With either reference form the dual inner product on the Cartan subalgebra
is the standard dot product in the coordinates used here, so a multiplier
``r`` becomes the root-system scale ``1/r``.

Coordinates for spaces of fundamental rank one are split: index 0 is the
``a``-axis and the remaining entries are ``t``-coordinates.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Union

from .errors import DescriptorError, UnsupportedMetric, UnsupportedSpace
from .exact import Polynomial, exact_sqrt
from .roots import (
    RootSystem,
    Weight,
    add,
    direct_sum,
    dot,
    embedded,
    smul,
    weyl_order,
)

NAMED_METRICS = ("curvature-1", "trace2")

Metric = Union[str, Fraction, None]


# -- descriptors ---------------------------------------------------------------


@dataclass(frozen=True)
class SOpq:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < self.p or self.p + self.q < 3:
            raise DescriptorError(f"SO({self.p},{self.q}) needs 1 <= p <= q and p + q >= 3")

    def __str__(self):
        return f"H^{self.q}" if self.p == 1 else f"SO({self.p},{self.q})"


@dataclass(frozen=True)
class SLnR:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise DescriptorError(f"SL({self.n},R) needs n >= 2")

    def __str__(self):
        return f"SL({self.n},R)"


Atom = Union[SOpq, SLnR]


def Hn(n: int) -> SOpq:
    """Real hyperbolic space of dimension ``n``."""
    if n < 2:
        raise DescriptorError(f"H^{n} needs n >= 2")
    return SOpq(1, n)


@dataclass(frozen=True)
class SpaceDescriptor:
    """A product of atoms, each with an optional metric."""

    factors: tuple[tuple[Atom, Metric], ...]

    def __post_init__(self):
        if not self.factors:
            raise DescriptorError("empty descriptor")

    def __str__(self):
        return " x ".join(_factor_str(a, m) for a, m in self.factors)

    @classmethod
    def of(cls, *atoms: Atom, metric: Metric = None) -> "SpaceDescriptor":
        return cls(tuple((a, metric) for a in atoms))


def _metric_str(m: Metric) -> str:
    if isinstance(m, Fraction):
        return str(m)
    return str(m)


def _factor_str(atom: Atom, metric: Metric) -> str:
    return str(atom) if metric is None else f"{atom} @ {_metric_str(metric)}"


_ATOM_PATTERNS = [
    ("SO", re.compile(r"SO\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)")),
    ("SL", re.compile(r"SL\s*\(\s*(\d+)\s*,\s*R\s*\)")),
    ("H", re.compile(r"H\s*\^\s*(\d+)")),
]
_METRIC = re.compile(r"(\d+(?:\s*/\s*\d+)?)|([A-Za-z][A-Za-z0-9_-]*)")
_WS = re.compile(r"\s*")


def parse_descriptor(text: str) -> SpaceDescriptor:
    """Parse ``atom ["@" metric] ("x" atom ["@" metric])*``.

    Atoms are ``SO(p,q)``, ``SL(n,R)`` and ``H^n``; metrics are a name
    (``curvature-1``, ``trace2``) or a positive rational multiplier.
    """
    pos = _WS.match(text, 0).end()
    factors: list[tuple[Atom, Metric]] = []
    while True:
        for kind, pat in _ATOM_PATTERNS:
            m = pat.match(text, pos)
            if m:
                break
        else:
            raise DescriptorError("expected SO(p,q), SL(n,R) or H^n", pos)
        try:
            if kind == "SO":
                atom: Atom = SOpq(int(m.group(1)), int(m.group(2)))
            elif kind == "SL":
                atom = SLnR(int(m.group(1)))
            else:
                atom = Hn(int(m.group(1)))
        except DescriptorError as exc:
            raise DescriptorError(str(exc), pos) from None
        pos = _WS.match(text, m.end()).end()
        metric: Metric = None
        if text.startswith("@", pos):
            pos = _WS.match(text, pos + 1).end()
            mm = _METRIC.match(text, pos)
            if not mm:
                raise DescriptorError("expected metric name or rational", pos)
            if mm.group(1):
                metric = Fraction(mm.group(1).replace(" ", ""))
                if metric <= 0:
                    raise DescriptorError("metric multiplier must be positive", pos)
            else:
                metric = mm.group(2)
            pos = _WS.match(text, mm.end()).end()
        factors.append((atom, metric))
        if pos == len(text):
            break
        if text[pos] in "x×":
            pos = _WS.match(text, pos + 1).end()
            continue
        raise DescriptorError(f"unexpected {text[pos]!r}", pos)
    return SpaceDescriptor(tuple(factors))


# -- structural data -----------------------------------------------------------


def dimension(atom: Atom) -> int:
    if isinstance(atom, SOpq):
        return atom.p * atom.q
    return atom.n * (atom.n + 1) // 2 - 1


def fundamental_rank(atom: Atom | SpaceDescriptor) -> int:
    """``rk_C G - rk_C K``; additive over products."""
    if isinstance(atom, SpaceDescriptor):
        return sum(fundamental_rank(a) for a, _ in atom.factors)
    if isinstance(atom, SOpq):
        return (atom.p + atom.q) // 2 - atom.p // 2 - atom.q // 2
    return (atom.n - 1) - atom.n // 2


def metric_scale(atom: Atom, metric: Metric) -> Fraction:
    """Multiplier of the reference invariant form selected by ``metric``."""
    if metric is None:
        # SL(3,R) at multiplier 1 would give an irrational ||alpha0||
        return Fraction(2) if atom == SLnR(3) else Fraction(1)
    if isinstance(metric, (int, Fraction)):
        if metric <= 0:
            raise UnsupportedMetric("metric multiplier must be positive")
        return Fraction(metric)
    if metric == "curvature-1":
        if isinstance(atom, SOpq):
            return Fraction(1)
        if atom.n == 2:
            return Fraction(2)
        raise UnsupportedMetric(f"curvature-1 is not defined for {atom}")
    if metric == "trace2":
        if isinstance(atom, SLnR):
            return Fraction(2)
        raise UnsupportedMetric(f"trace2 applies to SL(n,R) only, not {atom}")
    raise UnsupportedMetric(f"unknown metric {metric!r}")


@dataclass(frozen=True)
class SpaceData:
    """Resolved structure of one irreducible symmetric space.

    Atoms with ``m >= 2`` resolve to a reduced record (``resolved`` false)
    holding only ``n`` and ``m``.  For ``m = 1`` the fundamental parabolic
    data is filled in: ``u = dim(n)/2``, ``v = dim(p_m)/2``, the restricted
    root ``alpha0`` and the parameters ``Lambda_l`` of the M-modules
    ``Lambda^l n``.
    """

    atom: Atom
    scale: Fraction
    n: int
    m: int
    resolved: bool = True
    g_roots: RootSystem | None = None
    k_roots: RootSystem | None = None
    m_roots: RootSystem | None = None
    km_roots: RootSystem | None = None
    alpha0: Weight | None = None
    alpha0_norm_sq: Fraction | None = None
    u: int | None = None
    v: int | None = None
    rho_m: Weight | None = None
    n_weights: tuple[Weight, ...] = ()
    middle_split: bool = False
    chi_dual: int = 0
    chi_dual_M: int | None = None
    w_A_order: int | None = None
    density_override: tuple[Polynomial, ...] | None = field(default=None, compare=False)
    conventions: tuple[str, ...] = ()

    @property
    def alpha0_norm(self) -> Fraction | None:
        """Exact ``||alpha0||`` or ``None`` when irrational."""
        if self.alpha0_norm_sq is None:
            return None
        return exact_sqrt(self.alpha0_norm_sq)

    def lambda_at(self, l: int) -> tuple[Weight, ...]:
        """Infinitesimal character(s) of the irreducible pieces of ``Lambda^l n``.

        Returns two weights (``Lambda_+``, ``Lambda_-``) where the middle power
        splits, one otherwise.
        """
        if self.m != 1 or not self.resolved:
            raise UnsupportedSpace("Lambda parameters exist only for m = 1")
        u = self.u
        if not 0 <= l <= 2 * u:
            raise ValueError(f"l must lie in [0, {2 * u}]")
        j = min(l, 2 * u - l)
        hw = tuple(Fraction(0) for _ in self.rho_m)
        for w in self.n_weights[:j]:
            hw = add(hw, w)
        base = add(self.rho_m, hw)
        if l == u and self.middle_split:
            last = self.n_weights[u - 1]
            return (base, add(base, smul(-2, last)))
        return (base,)

    @property
    def lambda_params(self) -> tuple[Weight, ...]:
        """``Lambda_0 .. Lambda_{u-1}`` (one weight per index)."""
        return tuple(self.lambda_at(l)[0] for l in range(self.u))

    @property
    def rho_a(self) -> Weight:
        """Half-sum of the restrictions of positive roots to ``a``."""
        a0 = self.alpha0
        nn = dot(a0, a0)
        acc = tuple(Fraction(0) for _ in a0)
        for r in self.g_roots.positive_roots:
            acc = add(acc, smul(dot(r, a0) / nn, a0))
        return smul(Fraction(1, 2), acc)

    def to_dict(self) -> dict:
        def w(x):
            return None if x is None else [str(c) for c in x]

        def rs(r: RootSystem | None):
            if r is None:
                return None
            return {
                "type": r.label(),
                "scale": str(r.scale),
                "positive_roots": [w(a) for a in r.positive_roots],
                "rho": w(r.rho),
                "weyl_order": weyl_order(r),
            }

        out = {
            "atom": str(self.atom),
            "metric_scale": str(self.scale),
            "n": self.n,
            "m": self.m,
            "resolved": self.resolved,
        }
        if not self.resolved:
            return out
        out.update(
            g_roots=rs(self.g_roots),
            k_roots=rs(self.k_roots),
            chi_dual=self.chi_dual,
        )
        if self.m == 1:
            out.update(
                u=self.u,
                v=self.v,
                alpha0=w(self.alpha0),
                alpha0_norm_sq=str(self.alpha0_norm_sq),
                lambda_params=[w(x) for x in self.lambda_params],
                lambda_middle=[w(x) for x in self.lambda_at(self.u)],
                chi_dual_M=self.chi_dual_M,
                w_A_order=self.w_A_order,
                conventions=list(self.conventions),
            )
        return out


def _unit(dim: int, i: int) -> Weight:
    return tuple(Fraction(1 if j == i else 0) for j in range(dim))


def _so_type(d: int) -> tuple[str, int]:
    """Root-system type of so(d, C) as (family, rank); d = 2 gives abelian D1."""
    return ("D", d // 2) if d % 2 == 0 else ("B", (d - 1) // 2)


def _resolve_so(atom: SOpq, scale: Fraction) -> SpaceData:
    p, q = atom.p, atom.q
    n, m = p * q, fundamental_rank(atom)
    s = 1 / scale
    if m == 0:
        r = (p + q) // 2
        g = direct_sum(r, [_so_type(p + q) + (0,)], s)
        fp, rp = _so_type(p)
        fq, rq = _so_type(q)
        k = direct_sum(r, [(fp, rp, 0), (fq, rq, p // 2)], s)
        return SpaceData(atom, scale, n, m, g_roots=g, k_roots=k, chi_dual=weyl_order(g) // weyl_order(k))
    # p, q odd: split Cartan a + t of so(p+q, C) = D_k
    k_ = (p + q) // 2
    a, b = (p - 1) // 2, (q - 1) // 2
    g = direct_sum(k_, [("D", k_, 0)], s)
    kr = direct_sum(k_, [("B", a, 1), ("B", b, 1 + a)], s)
    mr = direct_sum(k_, [("D", k_ - 1, 1)], s)
    kmr = direct_sum(k_, [("D", a, 1), ("D", b, 1 + a)], s)
    alpha0 = _unit(k_, 0)
    return SpaceData(
        atom,
        scale,
        n,
        m,
        g_roots=g,
        k_roots=kr,
        m_roots=mr,
        km_roots=kmr,
        alpha0=alpha0,
        alpha0_norm_sq=g.pairing(alpha0, alpha0),
        u=k_ - 1,
        v=(p - 1) * (q - 1) // 2,
        rho_m=mr.rho,
        n_weights=tuple(_unit(k_, i) for i in range(1, k_)),
        middle_split=True,
        chi_dual=0,
        chi_dual_M=weyl_order(mr) // weyl_order(kmr),
        w_A_order=2 if p == 1 else 1,
    )


SL3_PINNED_DENSITY = (Polynomial([0, 0, 1]),)


def _resolve_sl(atom: SLnR, scale: Fraction, generic: bool) -> SpaceData:
    n_, s = atom.n, 1 / scale
    n, m = dimension(atom), fundamental_rank(atom)
    if n_ == 2:
        g = direct_sum(2, [("A", 1, 0)], s)
        k = direct_sum(2, [], s)
        return SpaceData(atom, scale, n, m, g_roots=g, k_roots=k, chi_dual=weyl_order(g) // weyl_order(k))
    if n_ == 3:
        F = Fraction
        g = direct_sum(3, [("A", 2, 0)], s)
        # so(3) inside sl(3): its root is the t-part of e1 - e3
        k = embedded(3, "B", 1, [(F(1, 2), F(-1, 2), F(0))], s)
        mr = direct_sum(3, [("A", 1, 0)], s)
        kmr = direct_sum(3, [], s)
        alpha0 = (F(1, 2), F(1, 2), F(-1))
        if generic:
            norm_sq, override, conv = g.pairing(alpha0, alpha0), None, ()
        else:
            # the restricted-root length is taken equal to the root length of
            # sl(3); with the y^2 torsion integrand this is the normalization
            # under which trace2 gives vol = 4 pi^3 and T = 1/(6 pi^2)
            norm_sq = g.pairing(g.positive_roots[0], g.positive_roots[0])
            override = SL3_PINNED_DENSITY
            conv = ("sl3-pinned-density", "sl3-root-length-alpha0")
        return SpaceData(
            atom,
            scale,
            n,
            m,
            g_roots=g,
            k_roots=k,
            m_roots=mr,
            km_roots=kmr,
            alpha0=alpha0,
            alpha0_norm_sq=norm_sq,
            u=1,
            v=1,
            rho_m=mr.rho,
            n_weights=((F(1, 2), F(-1, 2), F(0)),),
            middle_split=False,
            chi_dual=0,
            chi_dual_M=weyl_order(mr) // weyl_order(kmr),
            w_A_order=1,
            density_override=override,
            conventions=conv,
        )
    if n_ == 4:
        # sl(4, R) = so(3, 3); tr_4 on sl(4) matches tr_6/2 on so(3, 3)
        sd = _resolve_so(SOpq(3, 3), scale)
        return _replace_atom(sd, atom)
    return SpaceData(atom, scale, n, m, resolved=False)


def _replace_atom(sd: SpaceData, atom: Atom) -> SpaceData:
    from dataclasses import replace

    return replace(sd, atom=atom)


@lru_cache(maxsize=None)
def _resolve_cached(atom: Atom, scale: Fraction, generic: bool) -> SpaceData:
    if isinstance(atom, SOpq):
        return _resolve_so(atom, scale)
    return _resolve_sl(atom, scale, generic)


def resolve(atom: Atom, metric: Metric = None, generic: bool = False) -> SpaceData:
    """Structural data of one atom under the given metric.

    ``generic`` disables the catalog conventions pinned for SL(3,R) and
    derives its data from the plain root-theoretic construction instead.
    """
    if not isinstance(atom, (SOpq, SLnR)):
        raise UnsupportedSpace(f"non-catalog atom {atom!r}")
    return _resolve_cached(atom, metric_scale(atom, metric), generic)


def dual_euler_char(atom: Atom, metric: Metric = None) -> int:
    """``chi(X^d)`` as the Weyl-order quotient ``|W(g,t)| / |W(k,t)|``; 0 if m > 0."""
    if fundamental_rank(atom) > 0:
        return 0
    return resolve(atom, metric).chi_dual


def check_structure(sd: SpaceData) -> None:
    """Assert the structural identities every resolved atom must satisfy."""
    assert (sd.n - sd.m) % 2 == 0 and sd.n - sd.m > 0, "n - m must be even and positive"
    if sd.resolved and sd.m == 1:
        assert sd.u + sd.v == (sd.n - 1) // 2 and (sd.n - 1) % 2 == 0, "u + v != (n-1)/2"
        assert sd.rho_a == smul(sd.u, sd.alpha0), "rho_a != u * alpha0"
        assert dot(sd.lambda_at(0)[0], sd.alpha0) == 0
    if sd.resolved and sd.m == 0:
        assert sd.chi_dual > 0


# -- products ------------------------------------------------------------------


@dataclass(frozen=True)
class Space:
    """A resolved descriptor: one :class:`SpaceData` per factor."""

    descriptor: SpaceDescriptor
    factors: tuple[SpaceData, ...]

    @property
    def n(self) -> int:
        return sum(f.n for f in self.factors)

    @property
    def m(self) -> int:
        return sum(f.m for f in self.factors)

    def __iter__(self) -> Iterator[SpaceData]:
        return iter(self.factors)

    @property
    def rank_one_factor(self) -> SpaceData | None:
        """The unique factor with m = 1 when the product has m = 1."""
        if self.m != 1:
            return None
        return next(f for f in self.factors if f.m == 1)

    @property
    def flat_factors(self) -> tuple[SpaceData, ...]:
        """Factors with m = 0."""
        return tuple(f for f in self.factors if f.m == 0)

    def to_json(self) -> str:
        return json.dumps(
            {"schema": 1, "space": str(self.descriptor), "factors": [f.to_dict() for f in self.factors]},
            indent=2,
            sort_keys=True,
        )


def resolve_space(desc: SpaceDescriptor | str, default_metric: Metric = None, generic: bool = False) -> Space:
    """Resolve every factor of a descriptor (or descriptor text)."""
    if isinstance(desc, str):
        desc = parse_descriptor(desc)
    factors = tuple(resolve(a, m if m is not None else default_metric, generic) for a, m in desc.factors)
    return Space(desc, factors)


def as_space(x: "Space | SpaceData") -> Space:
    if isinstance(x, Space):
        return x
    return Space(SpaceDescriptor(((x.atom, x.scale),)), (x,))
