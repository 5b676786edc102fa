"""Exact arithmetic in the Gaussian rationals Q(i).

Elements of the real subfield Q are stored as plain ``gmpy2.mpq`` values;
only elements with a nonzero imaginary part become
:class:`GaussianRational`.  Every operation renormalizes, so a value whose
imaginary part cancels drops back to ``mpq``.  This keeps the common
rational case on gmpy2's fast path while the mixed case goes through the
reflected operators below.
"""

from fractions import Fraction
import numbers

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)


class GaussianRational:
    """``re + im*i`` with ``im != 0``; build through :func:`gauss`."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = re
        self.im = im

    @property
    def real_part(self):
        return self.re

    @property
    def imag_part(self):
        return self.im

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return gauss(self.re + other.re, self.im + other.im)
        try:
            return GaussianRational(self.re + other, self.im)
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return gauss(self.re - other.re, self.im - other.im)
        try:
            return GaussianRational(self.re - other, self.im)
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        try:
            return GaussianRational(other - self.re, -self.im)
        except TypeError:
            return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return gauss(a * c - b * d, a * d + b * c)
        try:
            if not other:
                return ZERO
            return GaussianRational(self.re * other, self.im * other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            c, d = other.re, other.im
            n = c * c + d * d
            a, b = self.re, self.im
            return gauss((a * c + b * d) / n, (b * c - a * d) / n)
        try:
            return GaussianRational(self.re / other, self.im / other)
        except TypeError:
            return NotImplemented

    def __rtruediv__(self, other):
        try:
            n = self.re * self.re + self.im * self.im
            return gauss(other * self.re / n, -other * self.im / n)
        except TypeError:
            return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ONE / (self ** (-k))
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (numbers.Number, type(ZERO))):
            return False
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_coefficient(self)


def gauss(re, im=0):
    """Normalized element ``re + im*i``."""
    if im:
        return GaussianRational(mpq(re), mpq(im))
    return mpq(re)


I = GaussianRational(ZERO, ONE)


def to_field(x):
    """Coerce ints, Fractions, mpq, complex-with-integer-parts or strings."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, type(ZERO)):
        return x
    if isinstance(x, (int, Fraction)):
        return mpq(x)
    if isinstance(x, complex):
        if x.real != int(x.real) or x.imag != int(x.imag):
            raise TypeError("only complex numbers with integral parts convert exactly")
        return gauss(int(x.real), int(x.imag))
    if isinstance(x, str):
        return parse_coefficient(x)
    if isinstance(x, numbers.Rational):
        return mpq(x.numerator, x.denominator)
    raise TypeError(f"cannot convert {x!r} to a Gaussian rational")


def real_part(c):
    return c.re if isinstance(c, GaussianRational) else c


def imag_part(c):
    return c.im if isinstance(c, GaussianRational) else ZERO


def is_real(c):
    return not isinstance(c, GaussianRational)


def conj(c):
    """The conjugation sigma; identity on the real subfield."""
    return c.conjugate() if isinstance(c, GaussianRational) else c


def denominator_lcm(values):
    from math import lcm

    out = 1
    for c in values:
        if isinstance(c, GaussianRational):
            out = lcm(out, int(c.re.denominator), int(c.im.denominator))
        else:
            out = lcm(out, int(c.denominator))
    return out


def _fmt_rational(q):
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_coefficient(c):
    """Grammar-compatible text for a single coefficient."""
    if not isinstance(c, GaussianRational):
        return _fmt_rational(c)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_fmt_rational(c.im)}*i"
    im = c.im
    sign = "+" if im > 0 else "-"
    mag = abs(im)
    body = "i" if mag == 1 else f"{_fmt_rational(mag)}*i"
    return f"({_fmt_rational(c.re)}{sign}{body})"


def parse_coefficient(text):
    from .poly import parse_terms

    terms = parse_terms(text, 1)
    if any(sum(e) for e in terms):
        raise ValueError(f"not a constant: {text!r}")
    return terms.get((0,), ZERO)
