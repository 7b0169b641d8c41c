"""Exact arithmetic over Q[pi, 1/pi] and one-variable rational polynomials.

Every exact invariant lands in :class:`PiScalar`, a finite sum of
``rational * pi**k`` with ``k`` any integer.  Rationals are stdlib
:class:`fractions.Fraction` values.
"""

from __future__ import annotations

import re
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

import mpmath

Rational = Fraction
Number = Union[int, Fraction]

__all__ = [
    "Rational",
    "PiScalar",
    "Polynomial",
    "integrate_polynomial",
    "format_scalar",
    "parse_scalar",
    "exact_sqrt",
    "pi_scalar_arith",
    "poly_product",
]


def exact_sqrt(x: Number) -> Fraction | None:
    """Square root of a non-negative rational, or ``None`` if irrational."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("square root of a negative rational")
    from math import isqrt

    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class PiScalar:
    """Finite Laurent sum ``sum_k c_k * pi**k`` with rational ``c_k``.

    Instances are immutable and kept canonical: no zero coefficients are
    stored, so equality and hashing are structural.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Number] | Number = 0):
        if isinstance(terms, Mapping):
            items = ((int(k), Fraction(v)) for k, v in terms.items())
        else:
            items = iter([(0, Fraction(terms))])
        self._terms = tuple(sorted((k, v) for k, v in items if v != 0))

    @classmethod
    def monomial(cls, coef: Number, power: int = 0) -> "PiScalar":
        return cls({power: coef})

    @classmethod
    def pi(cls, power: int = 1) -> "PiScalar":
        return cls({power: 1})

    @staticmethod
    def coerce(x: "PiScalar | Number") -> "PiScalar":
        if isinstance(x, PiScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return PiScalar(x)
        raise TypeError(f"cannot convert {type(x).__name__} to PiScalar")

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def leading(self) -> tuple[int, Fraction]:
        """(power, coefficient) of the single term of a monomial."""
        if not self.is_monomial():
            raise ValueError("not a monomial")
        return self._terms[0]

    def is_rational(self) -> bool:
        return self.is_zero() or (self.is_monomial() and self._terms[0][0] == 0)

    def rational(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._terms[0][1]

    def sign(self) -> int:
        """Sign of the real number represented (pi > 0)."""
        if self.is_zero():
            return 0
        if self.is_monomial():
            c = self._terms[0][1]
            return 1 if c > 0 else -1
        v = self.to_mpf(50)
        if v == 0:
            raise ArithmeticError("sign undecidable at working precision")
        return 1 if v > 0 else -1

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        try:
            other = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        acc = dict(self._terms)
        for k, v in other._terms:
            acc[k] = acc.get(k, Fraction(0)) + v
        return PiScalar(acc)

    __radd__ = __add__

    def __neg__(self):
        return PiScalar({k: -v for k, v in self._terms})

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return PiScalar.coerce(other) - self

    def __mul__(self, other):
        try:
            other = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for k1, v1 in self._terms:
            for k2, v2 in other._terms:
                acc[k1 + k2] = acc.get(k1 + k2, Fraction(0)) + v1 * v2
        return PiScalar(acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("PiScalar division by zero")
        if not other.is_monomial():
            raise ValueError(f"division by multi-term PiScalar {other} is unsupported")
        k, c = other._terms[0]
        return PiScalar({p - k: v / c for p, v in self._terms})

    def __rtruediv__(self, other):
        return PiScalar.coerce(other) / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return PiScalar(1) / (self ** (-e))
        out = PiScalar(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __bool__(self):
        return bool(self._terms)

    # -- numerics -----------------------------------------------------------

    def to_mpf(self, dps: int = 30):
        with mpmath.workdps(dps):
            return mpmath.fsum(
                mpmath.mpf(v.numerator) / v.denominator * mpmath.pi**k for k, v in self._terms
            )

    def __float__(self):
        return float(self.to_mpf(30))

    def __repr__(self):
        return f"PiScalar({format_scalar(self, 'ascii')!r})"

    def __str__(self):
        return format_scalar(self, "ascii")


class Polynomial:
    """Dense one-variable polynomial with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``y**i``; trailing zeros are trimmed.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coef: Number = 1) -> "Polynomial":
        return cls([0] * degree + [coef])

    @classmethod
    def linear(cls, const: Number, slope: Number) -> "Polynomial":
        return cls([const, slope])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_even(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def is_odd(self) -> bool:
        return all(c == 0 for c in self.coeffs[0::2])

    def vanishing_order(self) -> int:
        """Order of the zero at y = 0 (``-1`` for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return -1

    def __call__(self, y):
        acc = 0 * y if not isinstance(y, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(c * other for c in self.coeffs)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return Polynomial(c / other for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def antiderivative(self) -> "Polynomial":
        return Polynomial([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def on_imaginary_axis(self) -> "Polynomial":
        """The real polynomial ``y -> P(i*y)``; requires ``P`` even."""
        if not self.is_even():
            raise ValueError("P(iy) is real only for even P")
        return Polynomial(c * (-1) ** (i // 2) if i % 2 == 0 else 0 for i, c in enumerate(self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "Polynomial(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "Polynomial(" + " + ".join(parts) + ")"


def integrate_polynomial(P: Polynomial, a: Number, b: Number) -> Fraction:
    """Exact definite integral of ``P`` over ``[a, b]``."""
    F = P.antiderivative()
    return F(Fraction(b)) - F(Fraction(a))


# -- rendering and parsing ----------------------------------------------------


def _ascii_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _ascii_term(k: int, c: Fraction) -> str:
    if k == 0:
        return _ascii_coef(c)
    if k == 1:
        return f"{_ascii_coef(c)} * pi"
    return f"{_ascii_coef(c)} * pi^{k}"


def _latex_term(k: int, c: Fraction) -> str:
    if c.denominator == 1:
        coef = str(abs(c.numerator))
    else:
        coef = rf"\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"
    if k == 0:
        body = coef
    else:
        if coef == "1":
            coef = ""
        body = coef + (r"\pi" if k == 1 else rf"\pi^{{{k}}}")
    return body


def format_scalar(x: PiScalar | Number, style: str = "ascii", digits: int | None = None) -> str:
    """Render ``x`` as ``"ascii"``, ``"latex"`` or ``"decimal"`` text.

    Decimal rendering rounds half-even at ``digits`` places after the point,
    using pi to ``digits + 20`` significant digits.
    """
    x = PiScalar.coerce(x)
    if style == "decimal":
        if digits is None or digits < 1:
            raise ValueError("decimal style requires digits >= 1")
        mag = max(abs(float(x.to_mpf(20))), 1.0)
        dps = digits + 20 + int(mpmath.log10(mag))
        with mpmath.workdps(dps):
            s = mpmath.nstr(x.to_mpf(dps), dps, strip_zeros=False, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
        with localcontext() as ctx:
            ctx.prec = dps + 10
            q = Decimal(s).quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN)
        return f"{q:f}"
    if x.is_zero():
        return "0"
    items = sorted(x.terms.items(), reverse=True)
    if style == "ascii":
        out = _ascii_term(*items[0])
        for k, c in items[1:]:
            out += (" - " if c < 0 else " + ") + _ascii_term(k, abs(c))
        return out
    if style == "latex":
        out = ""
        for i, (k, c) in enumerate(items):
            sep = ("-" if c < 0 else "") if i == 0 else (" - " if c < 0 else " + ")
            out += sep + _latex_term(k, c)
        return out
    raise ValueError(f"unknown style {style!r}")


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<num>\d+)(?:\s*/\s*(?P<den>\d+))?
          (?:\s*\*\s*pi(?:\s*\^\s*(?P<exp>[+-]?\d+))?)?
        |
          pi(?:\s*\^\s*(?P<exp2>[+-]?\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_scalar(text: str) -> PiScalar:
    """Parse the ascii grammar emitted by :func:`format_scalar`.

    ``term := coef ("*" "pi" ("^" int)?)?`` with ``coef := int ("/" posint)?``;
    terms are joined by ``+`` or ``-``.  A bare ``pi`` term is also accepted.
    """
    pos, acc, first = 0, PiScalar(0), True
    text = text.strip()
    if not text:
        raise ValueError("empty scalar")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos or (not first and m.group("sign") is None):
            raise ValueError(f"cannot parse scalar {text!r} at position {pos}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("num") is not None:
            den = int(m.group("den")) if m.group("den") else 1
            if den == 0:
                raise ValueError(f"zero denominator in {text!r}")
            coef = Fraction(int(m.group("num")), den)
            exp = m.group("exp")
            power = 0 if "pi" not in m.group(0) else (int(exp) if exp else 1)
        else:
            coef = Fraction(1)
            power = int(m.group("exp2")) if m.group("exp2") else 1
        acc = acc + PiScalar.monomial(sign * coef, power)
        pos, first = m.end(), False
    return acc


def pi_scalar_arith(a: PiScalar, b: PiScalar, op: str) -> PiScalar:
    """Binary operation by name: ``add``, ``sub``, ``mul`` or ``div``."""
    ops = {
        "add": lambda x, y: x + y,
        "sub": lambda x, y: x - y,
        "mul": lambda x, y: x * y,
        "div": lambda x, y: x / y,
    }
    if op not in ops:
        raise ValueError(f"unknown op {op!r}")
    return ops[op](PiScalar.coerce(a), PiScalar.coerce(b))


def poly_product(factors: Sequence[Polynomial]) -> Polynomial:
    out = Polynomial([1])
    for f in factors:
        out = out * f
    return out
