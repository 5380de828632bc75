"""Exact arithmetic in real quadratic fields: numbers a + b*sqrt(d).

Coefficients a, b are rationals and d is a square-free nonnegative integer.
Every comparison, floor, and fractional part is decided without floating
point, which is what boundary-sensitive circle codings need: whether
frac(x0 + n*alpha) falls left or right of a cut must never depend on
rounding.  Floats appear only as throwaway first guesses for floor, and
every guess is corrected by exact sign tests.
"""

from fractions import Fraction
import math


def _square_free(d):
    """Split d = s*s * d0 with d0 square-free; returns (s, d0)."""
    s, f = 1, 2
    while f * f <= d:
        while d % (f * f) == 0:
            d //= f * f
            s *= f
        f += 1
    return s, d


class QuadExact:
    """a + b*sqrt(d) with exact comparisons.

    Arithmetic stays inside one quadratic field: adding or multiplying two
    irrational values with different d raises.  Rational values (b == 0)
    mix freely with everything and hash like their Fraction.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=0):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if d < 0:
            raise ValueError("negative radicand")
        if d > 0 and b != 0:
            s, d0 = _square_free(d)
            b *= s
            d = d0
            if d == 1:
                a += b
                b = Fraction(0)
                d = 0
        else:
            b = Fraction(0)
            d = 0
        if b == 0:
            d = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExact is immutable")

    @property
    def is_rational(self):
        return self.b == 0

    def as_fraction(self):
        if self.b != 0:
            raise ValueError("not rational: %r" % (self,))
        return self.a

    @staticmethod
    def _coerce(x):
        if isinstance(x, QuadExact):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadExact(x)
        return NotImplemented

    def _sign(self):
        """Exact sign of a + b*sqrt(d).

        After normalization b != 0 implies sqrt(d) irrational, so the value
        is never zero unless a = b = 0; when a and b have opposite signs the
        comparison reduces to the integer comparison a^2 vs b^2*d.
        """
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        lhs, rhs = a * a, b * b * self.d
        if a > 0:
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.b == 0:
            return QuadExact(self.a + o.a, o.b, o.d)
        if o.b == 0:
            return QuadExact(self.a + o.a, self.b, self.d)
        if self.d != o.d:
            raise ValueError("mixed radicands %d and %d" % (self.d, o.d))
        return QuadExact(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExact(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.b == 0:
            return QuadExact(self.a * o.a, self.a * o.b, o.d)
        if o.b == 0:
            return QuadExact(self.a * o.a, o.a * self.b, self.d)
        if self.d != o.d:
            raise ValueError("mixed radicands %d and %d" % (self.d, o.d))
        return QuadExact(self.a * o.a + self.b * o.b * self.d,
                         self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.b == 0:
            if o.a == 0:
                raise ZeroDivisionError
            return QuadExact(self.a / o.a, self.b / o.a, self.d)
        # multiply by the conjugate: 1/(a+b*sqrt(d)) = (a-b*sqrt(d))/(a^2-b^2 d)
        norm = o.a * o.a - o.b * o.b * o.d
        return self * QuadExact(o.a / norm, -o.b / norm, o.d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    # -- comparisons ---------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.d == o.d

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o)._sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o)._sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o)._sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o)._sign() >= 0

    # -- rounding ------------------------------------------------------

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __floor__(self):
        if self.b == 0:
            return math.floor(self.a)
        g = math.floor(float(self))
        # the float guess can be off by one near an integer; fix exactly
        while self < g:
            g -= 1
        while self >= g + 1:
            g += 1
        return g

    def frac(self):
        """Fractional part, exactly: self - floor(self), in [0, 1)."""
        return self - math.floor(self)

    def __repr__(self):
        if self.b == 0:
            return "QuadExact(%s)" % (self.a,)
        return "QuadExact(%s, %s, %d)" % (self.a, self.b, self.d)


def sqrt_exact(d):
    """sqrt(d) as a QuadExact (d a nonnegative integer)."""
    return QuadExact(0, 1, d)


def frac_exact(x):
    """Fractional part of an exact number (Fraction, int, or QuadExact)."""
    if isinstance(x, QuadExact):
        return x.frac()
    x = Fraction(x)
    return x - math.floor(x)


#: (sqrt(5) - 1) / 2, the rotation number of the golden-ratio codings.
GOLDEN_MEAN_ALPHA = QuadExact(Fraction(-1, 2), Fraction(1, 2), 5)
