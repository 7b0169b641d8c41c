"""Classical root systems of type A, B, D with exact rational pairings.

Weights are tuples of :class:`~fractions.Fraction` in the ambient coordinate
space.  The inner product is ``scale * dot``; ``scale`` is kept explicit so
that the scale invariance of Weyl-type quotients stays checkable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Iterable, Sequence

from .exact import Number, Polynomial

Weight = tuple[Fraction, ...]

FAMILIES = ("A", "B", "D")


def weight(*coords: Number) -> Weight:
    return tuple(Fraction(c) for c in coords)


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    if len(x) != len(y):
        raise ValueError("dimension mismatch")
    # roots are sparse; skipping zeros keeps high-rank products cheap
    acc = Fraction(0)
    for a, b in zip(x, y):
        if a and b:
            acc += a * b
    return acc


def add(x: Weight, y: Weight) -> Weight:
    return tuple(a + b for a, b in zip(x, y))


def smul(c: Number, x: Weight) -> Weight:
    return tuple(Fraction(c) * a for a in x)


def _unit(dim: int, i: int) -> Weight:
    v = [Fraction(0)] * dim
    v[i] = Fraction(1)
    return tuple(v)


def _combo(basis: Sequence[Weight], coefs: dict[int, int]) -> Weight:
    dim = len(basis[0])
    out = [Fraction(0)] * dim
    for i, c in coefs.items():
        for j, x in enumerate(basis[i]):
            if x:
                out[j] += c * x
    return tuple(out)


def _component_roots(family: str, rank: int, basis: Sequence[Weight]) -> tuple[list[Weight], list[Weight]]:
    """(positive roots, simple roots) of one simple component.

    ``basis[i]`` is the ambient image of the i-th standard coordinate.
    """
    pos: list[Weight] = []
    simple: list[Weight] = []
    if family == "A":
        for a in range(rank + 1):
            for b in range(a + 1, rank + 1):
                pos.append(_combo(basis, {a: 1, b: -1}))
        simple = [_combo(basis, {a: 1, a + 1: -1}) for a in range(rank)]
    elif family in ("B", "D"):
        for a in range(rank):
            for b in range(a + 1, rank):
                pos.append(_combo(basis, {a: 1, b: -1}))
                pos.append(_combo(basis, {a: 1, b: 1}))
        simple = [_combo(basis, {a: 1, a + 1: -1}) for a in range(rank - 1)]
        if family == "B":
            pos.extend(_combo(basis, {a: 1}) for a in range(rank))
            simple.append(_combo(basis, {rank - 1: 1}))
        elif rank >= 2:
            simple.append(_combo(basis, {rank - 2: 1, rank - 1: 1}))
    else:
        raise ValueError(f"unsupported root-system family {family!r}")
    return pos, simple


def _component_weyl_order(family: str, rank: int) -> int:
    if rank == 0:
        return 1
    if family == "A":
        return factorial(rank + 1)
    if family == "B":
        return 2**rank * factorial(rank)
    if family == "D":
        # D_1 is the abelian so(2): trivial Weyl group
        return 2 ** (rank - 1) * factorial(rank)
    raise ValueError(f"unsupported root-system family {family!r}")


Component = tuple[str, int, tuple[Weight, ...]]


@dataclass(frozen=True)
class RootSystem:
    """Positive system of a (possibly reducible) classical root system.

    ``components`` holds ``(family, rank, basis)`` per simple summand, where
    ``basis`` embeds the summand's standard coordinates into the ambient
    space.  Ambient directions orthogonal to every component are abelian.
    """

    ambient_dim: int
    components: tuple[Component, ...]
    scale: Fraction = Fraction(1)
    positive_roots: tuple[Weight, ...] = field(init=False, repr=False, compare=False)
    simple_roots: tuple[Weight, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        pos: list[Weight] = []
        simple: list[Weight] = []
        for fam, rank, basis in self.components:
            if any(len(b) != self.ambient_dim for b in basis):
                raise ValueError("component basis outside the ambient space")
            p, s = _component_roots(fam, rank, basis)
            pos.extend(p)
            simple.extend(s)
        object.__setattr__(self, "positive_roots", tuple(pos))
        object.__setattr__(self, "simple_roots", tuple(simple))
        if any(self.pairing(a, self.rho) == 0 for a in self.positive_roots):
            raise AssertionError("rho is not regular")

    @property
    def family(self) -> str | None:
        return self.components[0][0] if len(self.components) == 1 else None

    @property
    def rank(self) -> int:
        return sum(r for _, r, _ in self.components)

    @cached_property
    def rho(self) -> Weight:
        acc = [Fraction(0)] * self.ambient_dim
        for a in self.positive_roots:
            for i, x in enumerate(a):
                acc[i] += x
        return tuple(x / 2 for x in acc)

    def pairing(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        return self.scale * dot(x, y)

    def with_scale(self, scale: Number) -> "RootSystem":
        return RootSystem(self.ambient_dim, self.components, Fraction(scale))

    def reflect(self, alpha: Weight, lam: Weight) -> Weight:
        c = 2 * dot(alpha, lam) / dot(alpha, alpha)
        return tuple(x - c * a for x, a in zip(lam, alpha))

    def label(self) -> str:
        return " + ".join(f"{f}{r}" for f, r, _ in self.components) or "0"


def build_root_system(family: str, rank: int, scale: Number = 1) -> RootSystem:
    """Standard realization of A_r (sum-zero R^{r+1}), B_r or D_r (R^r)."""
    if family not in FAMILIES:
        raise ValueError(f"unsupported root-system family {family!r}")
    if rank < 1 or (family == "D" and rank < 2):
        raise ValueError(f"unsupported rank {rank} for family {family}")
    dim = rank + 1 if family == "A" else rank
    return direct_sum(dim, [(family, rank, 0)], scale)


def direct_sum(ambient_dim: int, blocks: Iterable[tuple[str, int, int]], scale: Number = 1) -> RootSystem:
    """Orthogonal sum of components on consecutive coordinates from ``offset``.

    Rank-0 blocks are dropped; ``D1`` (abelian so(2)) has no roots but is kept
    for the bookkeeping of Weyl orders.
    """
    comps = []
    for fam, rank, off in blocks:
        if rank <= 0:
            continue
        width = rank + 1 if fam == "A" else rank
        comps.append((fam, rank, tuple(_unit(ambient_dim, off + i) for i in range(width))))
    return RootSystem(ambient_dim, tuple(comps), Fraction(scale))


def embedded(ambient_dim: int, family: str, rank: int, basis: Sequence[Sequence[Number]], scale: Number = 1) -> RootSystem:
    """A single component whose standard coordinates map to ``basis``."""
    b = tuple(tuple(Fraction(x) for x in v) for v in basis)
    return RootSystem(ambient_dim, ((family, rank, b),), Fraction(scale))


def weyl_order(rs: RootSystem) -> int:
    out = 1
    for fam, rank, _ in rs.components:
        out *= _component_weyl_order(fam, rank)
    return out


def root_product(rs: RootSystem, lam: Sequence[Number]) -> Fraction:
    """``prod <alpha, lam> / prod <alpha, rho>`` over the positive roots."""
    lam = tuple(Fraction(x) for x in lam)
    if len(lam) != rs.ambient_dim:
        raise ValueError("weight does not live in the root system's ambient space")
    num, den = Fraction(1), Fraction(1)
    for a in rs.positive_roots:
        num *= rs.pairing(a, lam)
        den *= rs.pairing(a, rs.rho)
    return num / den


def root_product_line(rs: RootSystem, base: Sequence[Number], direction: Sequence[Number]) -> Polynomial:
    """The polynomial ``y -> root_product(rs, base + y * direction)``."""
    base = tuple(Fraction(x) for x in base)
    direction = tuple(Fraction(x) for x in direction)
    if len(base) != rs.ambient_dim or len(direction) != rs.ambient_dim:
        raise ValueError("weight does not live in the root system's ambient space")
    const = Fraction(1)
    linear: list[Polynomial] = []
    den = Fraction(1)
    for a in rs.positive_roots:
        c0, c1 = rs.pairing(a, base), rs.pairing(a, direction)
        den *= rs.pairing(a, rs.rho)
        if c1 == 0:
            const *= c0
        else:
            linear.append(Polynomial.linear(c0, c1))
    out = Polynomial([const / den])
    for f in linear:
        out = out * f
    return out


def is_dominant_integral(rs: RootSystem, lam: Sequence[Number]) -> bool:
    lam = tuple(Fraction(x) for x in lam)
    for a in rs.simple_roots:
        c = 2 * dot(a, lam) / dot(a, a)
        if c.denominator != 1 or c < 0:
            return False
    return True


def weyl_dimension(rs: RootSystem, highest_weight: Sequence[Number]) -> int:
    """Dimension of the irreducible module with the given highest weight."""
    hw = tuple(Fraction(x) for x in highest_weight)
    if len(hw) != rs.ambient_dim:
        raise ValueError("weight does not live in the root system's ambient space")
    for fam, _, basis in rs.components:
        if fam == "A" and dot(hw, tuple(sum(col) for col in zip(*basis))) != 0:
            raise ValueError("A-type weights must have coordinates summing to zero")
    if not is_dominant_integral(rs, hw):
        raise ValueError(f"{hw} is not dominant integral for {rs.label()}")
    d = root_product(rs, add(hw, rs.rho))
    assert d.denominator == 1 and d > 0
    return int(d)
