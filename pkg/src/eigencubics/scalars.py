"""Exact scalars: Gaussian rationals with one optional square-root extension.

A scalar is a + b*w where a, b are Gaussian rationals (pairs of
``fractions.Fraction``) and w*w equals a fixed non-square radicand in Q(i).
Scalars without an extension part interoperate freely; mixing two different
radicands is an error.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

try:  # gmpy2's mpq is a drop-in rational ~10x faster than Fraction
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

_F0 = _Q(0)
_F1 = _Q(1)

_RE_REAL = re.compile(r"^([+-]?\d+(?:/\d+)?)$")
_RE_IMAG = re.compile(r"^([+-]?\d+(?:/\d+)?)i$")
_RE_UNIT_IMAG = re.compile(r"^([+-]?)i$")
_RE_MIXED = re.compile(r"^([+-]?\d+(?:/\d+)?)([+-])((?:\d+(?:/\d+)?)?)i$")


def _fraction_sqrt(q):
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    n, d = int(q.numerator), int(q.denominator)
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return _Q(rn, rd)
    return None


def _gauss_sqrt(x, y):
    """Exact square root of x + y*i in Q(i), as an (re, im) pair, or None."""
    if y == 0:
        if x == 0:
            return (_F0, _F0)
        r = _fraction_sqrt(x)
        if r is not None:
            return (r, _F0)
        r = _fraction_sqrt(-x)
        if r is not None:
            return (_F0, r)
        return None
    q = _fraction_sqrt(x * x + y * y)
    if q is None:
        return None
    u = _fraction_sqrt((x + q) / 2)
    if u is None or u == 0:
        return None
    return (u, y / (2 * u))


class Scalar:
    """Element of Q(i), or of Q(i)(w) with w*w = rad, in canonical reduced form."""

    __slots__ = ("ar", "ai", "br", "bi", "rad")

    def __init__(self, ar=0, ai=0, br=0, bi=0, rad=None):
        if type(ar) is not type(_F0):
            ar = _Q(ar)
        if type(ai) is not type(_F0):
            ai = _Q(ai)
        if type(br) is not type(_F0):
            br = _Q(br)
        if type(bi) is not type(_F0):
            bi = _Q(bi)
        if (br or bi) and rad is None:
            raise ValueError("extension part requires a radicand")
        if not br and not bi:
            rad = None
        object.__setattr__(self, "ar", ar)
        object.__setattr__(self, "ai", ai)
        object.__setattr__(self, "br", br)
        object.__setattr__(self, "bi", bi)
        object.__setattr__(self, "rad", rad)

    def __setattr__(self, *_):
        raise AttributeError("Scalar is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def of(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return parse_scalar(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to Scalar")

    # -- predicates ------------------------------------------------------------

    def __bool__(self):
        return bool(self.ar or self.ai or self.br or self.bi)

    def is_zero(self) -> bool:
        return not self

    def in_base_field(self) -> bool:
        return self.rad is None

    def is_rational(self) -> bool:
        return self.rad is None and self.ai == 0

    # -- arithmetic -----------------------------------------------------------

    def _join_rad(self, other: "Scalar"):
        if self.rad is None:
            return other.rad
        if other.rad is None or other.rad == self.rad:
            return self.rad
        raise ValueError("cannot mix scalars from different quadratic extensions")

    def __add__(self, other):
        other = Scalar.of(other)
        rad = self._join_rad(other)
        return Scalar(self.ar + other.ar, self.ai + other.ai,
                      self.br + other.br, self.bi + other.bi, rad)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.ar, -self.ai, -self.br, -self.bi, self.rad)

    def __sub__(self, other):
        return self + (-Scalar.of(other))

    def __rsub__(self, other):
        return (-self) + Scalar.of(other)

    def __mul__(self, other):
        other = Scalar.of(other)
        rad = self._join_rad(other)
        # (a1 + b1 w)(a2 + b2 w) = a1 a2 + b1 b2 rad + (a1 b2 + a2 b1) w
        ar = self.ar * other.ar - self.ai * other.ai
        ai = self.ar * other.ai + self.ai * other.ar
        if rad is not None and (self.br or self.bi) and (other.br or other.bi):
            pr = self.br * other.br - self.bi * other.bi
            pi = self.br * other.bi + self.bi * other.br
            rr, ri = rad
            ar += pr * rr - pi * ri
            ai += pr * ri + pi * rr
        br = self.ar * other.br - self.ai * other.bi + self.br * other.ar - self.bi * other.ai
        bi = self.ar * other.bi + self.ai * other.br + self.br * other.ai + self.bi * other.ar
        return Scalar(ar, ai, br, bi, rad)

    __rmul__ = __mul__

    def _base_inverse(self):
        n = self.ar * self.ar + self.ai * self.ai
        if n == 0:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(self.ar / n, -self.ai / n)

    def inverse(self) -> "Scalar":
        if self.rad is None or (not self.br and not self.bi):
            return Scalar(1)._base_div(self)
        # 1/(a + b w) = (a - b w) / (a^2 - b^2 rad); the norm lies in Q(i)
        conj = Scalar(self.ar, self.ai, -self.br, -self.bi, self.rad)
        norm = self * conj
        assert norm.rad is None or (not norm.br and not norm.bi)
        return conj * Scalar(norm.ar, norm.ai)._base_inverse()

    def _base_div(self, other: "Scalar"):
        n = other.ar * other.ar + other.ai * other.ai
        if n == 0:
            raise ZeroDivisionError("scalar division by zero")
        cr, ci = other.ar / n, -other.ai / n
        return self * Scalar(cr, ci)

    def __truediv__(self, other):
        other = Scalar.of(other)
        if other.rad is None or (not other.br and not other.bi):
            return self._base_div(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.of(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Scalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            other = Scalar.of(other)
        except TypeError:
            return NotImplemented
        if (self.ar, self.ai, self.br, self.bi) != (other.ar, other.ai, other.br, other.bi):
            return False
        if (self.br or self.bi) and self.rad != other.rad:
            return False
        return True

    def __hash__(self):
        if not self.br and not self.bi:
            return hash((self.ar, self.ai))
        return hash((self.ar, self.ai, self.br, self.bi, self.rad))

    # -- conversions ------------------------------------------------------------

    def to_complex(self) -> complex:
        z = complex(float(self.ar), float(self.ai))
        if self.br or self.bi:
            rr, ri = self.rad
            w = complex(float(rr), float(ri)) ** 0.5
            z += complex(float(self.br), float(self.bi)) * w
        return z

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def __str__(self):
        if self.br or self.bi:
            rr, ri = self.rad
            rad_s = format_gauss(rr, ri)
            return f"({format_gauss(self.ar, self.ai)})+({format_gauss(self.br, self.bi)})w[{rad_s}]"
        return format_gauss(self.ar, self.ai)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def format_gauss(re: Fraction, im: Fraction) -> str:
    """Render re + im*i in the scalar text grammar."""
    if im == 0:
        return str(re)
    if re == 0:
        return f"{im}i"
    if im > 0:
        return f"{re}+{im}i"
    return f"{re}-{-im}i"


def parse_scalar(text: str) -> Scalar:
    """Parse a Q(i) scalar string: '-3', '1/2', '2i', '-1i', '3+1/2i', 'i'."""
    s = text.strip().replace(" ", "")
    m = _RE_REAL.match(s)
    if m:
        return Scalar(Fraction(m.group(1)))
    m = _RE_UNIT_IMAG.match(s)
    if m:
        return Scalar(0, -1 if m.group(1) == "-" else 1)
    m = _RE_IMAG.match(s)
    if m:
        return Scalar(0, Fraction(m.group(1)))
    m = _RE_MIXED.match(s)
    if m:
        re_part = Fraction(m.group(1))
        mag = Fraction(m.group(3)) if m.group(3) else _F1
        im_part = -mag if m.group(2) == "-" else mag
        return Scalar(re_part, im_part)
    raise ValueError(f"malformed scalar string: {text!r}")


def sqrt_exact(value: Scalar):
    """Exact square root of a Q(i) scalar, or None if it is not a square."""
    if not value.in_base_field():
        raise ValueError("square root only supported over Q(i)")
    root = _gauss_sqrt(value.ar, value.ai)
    if root is None:
        return None
    return Scalar(root[0], root[1])


def sqrt_or_adjoin(value: Scalar) -> Scalar:
    """Square root of a Q(i) scalar, adjoining w with w*w = value when needed."""
    root = sqrt_exact(value)
    if root is not None:
        return root
    return Scalar(0, 0, 1, 0, (value.ar, value.ai))
