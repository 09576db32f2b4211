"""Coefficient arithmetic in three modes: exact rational, exact Gaussian
rational, and complex float.

A series fixes one mode for all of its coefficients.  Exact modes never
round, so associativity and distributivity hold on the nose.  Mixed-mode
arithmetic between series is rejected rather than coerced; the only
implicit promotions are the lossless ones (int -> rational -> gaussian).
Dropping to floats always happens through an explicit conversion.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction

from .errors import InvalidInputError, ModeMismatchError


class Mode(Enum):
    RATIONAL = "rational"
    GAUSSIAN = "gaussian"
    FLOAT = "float"


_RANK = {Mode.RATIONAL: 0, Mode.GAUSSIAN: 1, Mode.FLOAT: 2}

#: machine-epsilon-scale tolerance used by float-mode comparisons
FLOAT_TOL = 1e-12


class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # -- arithmetic ---------------------------------------------------
    def _lift(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    # -- queries ------------------------------------------------------
    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """|z|^2 as an exact rational."""
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.sqrt(float(self.norm()))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


def mode_of(x) -> Mode:
    """Mode a scalar value naturally lives in (ints count as rational)."""
    if isinstance(x, bool):
        raise InvalidInputError("bool is not a series coefficient")
    if isinstance(x, (int, Fraction)):
        return Mode.RATIONAL
    if isinstance(x, GaussianRational):
        return Mode.GAUSSIAN
    if isinstance(x, (float, complex)):
        return Mode.FLOAT
    raise InvalidInputError(f"unsupported coefficient type {type(x).__name__}")


def join_modes(a: Mode, b: Mode) -> Mode:
    return a if _RANK[a] >= _RANK[b] else b


def coerce(x, mode: Mode):
    """Lift ``x`` into ``mode``.  Demotions (float -> exact) are refused."""
    src = mode_of(x)
    if _RANK[src] > _RANK[mode]:
        raise ModeMismatchError(f"cannot place {src.value} value into {mode.value} mode")
    if mode is Mode.RATIONAL:
        return Fraction(x)
    if mode is Mode.GAUSSIAN:
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(Fraction(x), 0)
    return to_complex(x)


def to_complex(x) -> complex:
    if isinstance(x, GaussianRational):
        return complex(x)
    if isinstance(x, Fraction):
        return complex(float(x), 0.0)
    return complex(x)


def zero(mode: Mode):
    return coerce(0, mode)


def one(mode: Mode):
    return coerce(1, mode)


def is_zero(x) -> bool:
    if isinstance(x, (float, complex)):
        return x == 0
    return not bool(x)


def abs_float(x) -> float:
    """|x| as a float; huge exact values saturate to inf instead of raising."""
    try:
        return abs(float(x)) if isinstance(x, (int, Fraction)) else abs(x)
    except OverflowError:
        return math.inf


def log_abs(x):
    """Natural log of |x|, overflow-safe for huge exact values; None if x == 0."""
    if is_zero(x):
        return None
    if isinstance(x, bool):
        raise InvalidInputError("bool is not a series coefficient")
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return math.log(abs(x.numerator)) - math.log(x.denominator)
    if isinstance(x, GaussianRational):
        n = x.norm()
        return (math.log(n.numerator) - math.log(n.denominator)) / 2.0
    return math.log(abs(complex(x)))


def phase(x) -> complex:
    """x / |x| as a unit complex number, overflow-safe for exact values."""
    if is_zero(x):
        raise InvalidInputError("phase of zero")
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return complex(1.0 if x > 0 else -1.0, 0.0)
    if isinstance(x, GaussianRational):
        n = x.norm()
        re = math.copysign(math.sqrt(float(x.re * x.re / n)), x.re)
        im = math.copysign(math.sqrt(float(x.im * x.im / n)), x.im)
        return complex(re, im)
    z = complex(x)
    return z / abs(z)


def parse_rational(text) -> Fraction:
    """Parse "p/q" or "p" with an ASCII or unicode minus sign."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise InvalidInputError(f"expected rational string, got {type(text).__name__}")
    try:
        return Fraction(text.strip().replace("−", "-"))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"bad rational literal {text!r}") from exc


def scalar_to_json(x):
    """Serialize one coefficient.

    Exact rationals become decimal-free "p/q" strings, Gaussian rationals a
    {re, im} record of such strings, and floats plain JSON numbers (complex
    values with a nonzero imaginary part become a {re, im} number record).
    """
    if isinstance(x, bool):
        raise InvalidInputError("bool is not a series coefficient")
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, GaussianRational):
        return {"re": str(x.re), "im": str(x.im)}
    z = complex(x)
    if z.imag == 0:
        return z.real
    return {"re": z.real, "im": z.imag}


def scalar_from_json(obj):
    """Inverse of :func:`scalar_to_json`.

    JSON integers and strings parse exactly; numbers with a fractional part
    are float mode; {re, im} records follow the type of their entries.
    """
    if isinstance(obj, bool):
        raise InvalidInputError("bool is not a series coefficient")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, float):
        return complex(obj, 0.0)
    if isinstance(obj, str):
        return parse_rational(obj)
    if isinstance(obj, dict) and set(obj) == {"re", "im"}:
        re, im = obj["re"], obj["im"]
        if isinstance(re, str) or isinstance(im, str):
            return GaussianRational(parse_rational(re), parse_rational(im))
        return complex(float(re), float(im))
    raise InvalidInputError(f"bad scalar payload {obj!r}")
