"""Rational self-maps of the projective line with exact coefficients."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .polynomial import Polynomial, poly_gcd


class DivisionByZeroFunction(ZeroDivisionError):
    """The denominator of a rational function is identically zero."""


class ConstantFunction(ValueError):
    """A nonconstant rational function was required."""


class Cusp(enum.Enum):
    """The three punctures 0, 1, infinity of the moduli space."""

    ZERO = "0"
    ONE = "1"
    INF = "inf"

    @classmethod
    def parse(cls, text: str) -> Cusp:
        key = text.strip().lower()
        aliases = {"0": cls.ZERO, "1": cls.ONE, "inf": cls.INF, "oo": cls.INF, "infinity": cls.INF, "∞": cls.INF}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"not a cusp: {text!r} (expected 0, 1 or inf)") from None

    def __str__(self) -> str:
        return self.value


CUSPS = (Cusp.ZERO, Cusp.ONE, Cusp.INF)


class RationalFunction:
    """A reduced quotient ``num/den`` of polynomials.

    Normal form: num and den have integer coefficients with no common
    integer content, gcd(num, den) = 1 and den has positive leading
    coefficient.  Two equal functions therefore have equal (num, den).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial([1])
        if den.is_zero():
            raise DivisionByZeroFunction("denominator is the zero polynomial")
        if num.is_zero():
            num, den = Polynomial(), Polynomial([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            num, den = _normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def identity(cls) -> RationalFunction:
        return cls(Polynomial.x())

    @classmethod
    def constant(cls, c: int | Fraction) -> RationalFunction:
        return cls(Polynomial([c]))

    @classmethod
    def mobius(cls, a, b, c, d) -> RationalFunction:
        """``(a*w + b) / (c*w + d)``; requires ``a*d - b*c != 0``."""
        if Fraction(a) * d - Fraction(b) * c == 0:
            raise ValueError("degenerate Mobius map")
        return cls(Polynomial([b, a]), Polynomial([d, c]))

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def is_constant(self) -> bool:
        return self.degree <= 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({self.to_str('w')!r})"

    # -- field operations ----------------------------------------------

    def __add__(self, other) -> RationalFunction:
        other = _coerce(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> RationalFunction:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> RationalFunction:
        return _coerce(other) - self

    def __mul__(self, other) -> RationalFunction:
        other = _coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalFunction:
        other = _coerce(other)
        if other.num.is_zero():
            raise DivisionByZeroFunction("division by the zero function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> RationalFunction:
        return _coerce(other) / self

    def __pow__(self, n: int) -> RationalFunction:
        if n < 0:
            return RationalFunction.constant(1) / (self ** (-n))
        return RationalFunction(self.num**n, self.den**n)

    def compose(self, inner: RationalFunction) -> RationalFunction:
        """``self(inner(w))``, homogenized so poles of ``inner`` are handled."""
        n = self.degree
        p, q = inner.num, inner.den
        p_pows = [Polynomial([1])]
        q_pows = [Polynomial([1])]
        for _ in range(n):
            p_pows.append(p_pows[-1] * p)
            q_pows.append(q_pows[-1] * q)
        num = Polynomial()
        den = Polynomial()
        for k in range(n + 1):
            term = p_pows[k] * q_pows[n - k]
            num = num + term.scale(self.num[k])
            den = den + term.scale(self.den[k])
        return RationalFunction(num, den)

    def __call__(self, x: int | Fraction) -> Fraction | None:
        """Value at a rational point; ``None`` stands for infinity."""
        d = self.den(x)
        if d == 0:
            return None
        return self.num(x) / d

    def value_at_infinity(self) -> Fraction | None:
        if self.num.degree > self.den.degree:
            return None
        if self.num.degree < self.den.degree:
            return Fraction(0)
        return self.num.lead / self.den.lead

    def to_str(self, var: str = "x") -> str:
        """Canonical printed form; ``parse_rational_function`` inverts it."""
        if self.den.degree == 0:
            return self.num.scale(1 / self.den.lead).to_str(var)
        return f"({self.num.to_str(var)})/({self.den.to_str(var)})"


def _coerce(f) -> RationalFunction:
    if isinstance(f, RationalFunction):
        return f
    if isinstance(f, Polynomial):
        return RationalFunction(f)
    if isinstance(f, (int, Fraction)):
        return RationalFunction.constant(f)
    raise TypeError(f"cannot treat {type(f).__name__} as a rational function")


def _normalize(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    m = lcm(num.denominator_lcm(), den.denominator_lcm())
    n_int = [int(c * m) for c in num.coeffs]
    d_int = [int(c * m) for c in den.coeffs]
    g = reduce(gcd, n_int + d_int, 0)
    if d_int[-1] < 0:
        g = -g
    return Polynomial([c // g for c in n_int]), Polynomial([c // g for c in d_int])


@dataclass(frozen=True)
class BinaryForm:
    """A homogeneous form of ``total_degree`` given by its affine part.

    The roots are the affine roots of ``affine_part`` together with the
    point at infinity, counted ``inf_multiplicity`` times.
    """

    affine_part: Polynomial
    inf_multiplicity: int
    total_degree: int

    def __post_init__(self):
        if self.inf_multiplicity < 0:
            raise ValueError("negative multiplicity at infinity")
        if self.total_degree != self.affine_part.degree + self.inf_multiplicity:
            raise ValueError("total degree does not match affine degree plus multiplicity at infinity")


def fiber_form(f: RationalFunction, cusp: Cusp) -> BinaryForm:
    """The fiber of ``f`` over a cusp as a binary form with multiplicities."""
    if f.is_constant():
        raise ConstantFunction("fiber of a constant function")
    if cusp is Cusp.ZERO:
        affine = f.num
    elif cusp is Cusp.INF:
        affine = f.den
    elif cusp is Cusp.ONE:
        affine = f.num - f.den
    else:
        raise ValueError(f"unknown cusp {cusp!r}")
    d = f.degree
    return BinaryForm(affine, d - affine.degree, d)
