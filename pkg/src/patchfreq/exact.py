"""Exact arithmetic in the real fields used by the two tilings.

``QuarticReal`` lives in K = Q[x]/(x^4 - 5x^2 + 5) read at x = 2cos(pi/10).
Every cosine and sine of a multiple of pi/10 is an element of K, so all
Penrose coordinates, areas and frequencies stay inside this one field.
``GoldenExact`` (Q(tau)) and ``SilverExact`` (Q(sqrt 2)) carry the final
frequencies of the Penrose and Ammann-Beenker tilings respectively.

Signs are decided exactly through the tower Q < Q(sqrt 5) < K: an element
A + B*x with A, B in Q(sqrt 5) has the sign of A unless the two parts
disagree, in which case it has the sign of A * (A^2 - B^2 x^2), and
x^2 = (5 + sqrt 5)/2 lies in Q(sqrt 5) again.
"""
from __future__ import annotations

import decimal
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Generic, Optional, TypeVar, Union

from .errors import NotInGoldenSubfield, ZeroValue

X_FLOAT = 2.0 * math.cos(math.pi / 10.0)
TAU_FLOAT = (1.0 + math.sqrt(5.0)) / 2.0
SQRT2_FLOAT = math.sqrt(2.0)
LAMBDA_FLOAT = 1.0 + SQRT2_FLOAT

_X_POWERS = (1.0, X_FLOAT, X_FLOAT**2, X_FLOAT**3)

RationalLike = Union[int, Fraction]


def _sign_sqrt5(u: Fraction, v: Fraction) -> int:
    """Sign of u + v*sqrt(5)."""
    su = (u > 0) - (u < 0)
    sv = (v > 0) - (v < 0)
    if sv == 0:
        return su
    if su == 0 or su == sv:
        return sv
    d = u * u - 5 * v * v
    return su * ((d > 0) - (d < 0))


def _y_sign(p: Fraction, q: Fraction) -> int:
    # p + q*y with y = x^2 = (5 + sqrt5)/2
    return _sign_sqrt5(p + Fraction(5, 2) * q, q / 2)


def _y_mul(p, q, r, s):
    # (p + q y)(r + s y), y^2 = 5y - 5
    qs = q * s
    return p * r - 5 * qs, p * s + q * r + 5 * qs


class QuarticReal:
    """Element c0 + c1*x + c2*x^2 + c3*x^3 of K.

    Stored as four integer numerators over one positive denominator in
    lowest terms; ``coeffs`` exposes the four rational coefficients.
    """

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, c0: RationalLike = 0, c1: RationalLike = 0,
                 c2: RationalLike = 0, c3: RationalLike = 0):
        cs = [Fraction(c) for c in (c0, c1, c2, c3)]
        d = 1
        for c in cs:
            d = d * c.denominator // math.gcd(d, c.denominator)
        self._set(tuple(c.numerator * (d // c.denominator) for c in cs), d)

    @classmethod
    def _raw(cls, nums, den) -> "QuarticReal":
        obj = cls.__new__(cls)
        obj._set(nums, den)
        return obj

    def _set(self, nums, den):
        if den < 0:
            nums = tuple(-n for n in nums)
            den = -den
        g = math.gcd(*nums, den)
        if g != 1:
            nums = tuple(n // g for n in nums)
            den //= g
        self._n = tuple(nums)
        self._d = den
        self._hash = None

    @classmethod
    def coerce(cls, value) -> "QuarticReal":
        if isinstance(value, QuarticReal):
            return value
        if isinstance(value, GoldenExact):
            return value.to_quartic()
        if isinstance(value, (int, Fraction)) or isinstance(value, Rational):
            f = Fraction(value)
            return cls._raw((f.numerator, 0, 0, 0), f.denominator)
        raise TypeError(f"cannot coerce {type(value).__name__} to QuarticReal")

    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(Fraction(n, self._d) for n in self._n)

    @property
    def numerators(self) -> tuple[int, int, int, int]:
        return self._n

    @property
    def denominator(self) -> int:
        return self._d

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        try:
            o = QuarticReal.coerce(other)
        except TypeError:
            return NotImplemented
        a, da = self._n, self._d
        b, db = o._n, o._d
        if da == db:
            return QuarticReal._raw(tuple(p + q for p, q in zip(a, b)), da)
        return QuarticReal._raw(tuple(p * db + q * da for p, q in zip(a, b)), da * db)

    __radd__ = __add__

    def __neg__(self):
        return QuarticReal._raw(tuple(-n for n in self._n), self._d)

    def __sub__(self, other):
        try:
            o = QuarticReal.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return QuarticReal._raw(tuple(n * other for n in self._n), self._d)
        try:
            o = QuarticReal.coerce(other)
        except TypeError:
            return NotImplemented
        a0, a1, a2, a3 = self._n
        b0, b1, b2, b3 = o._n
        d0 = a0 * b0
        d1 = a0 * b1 + a1 * b0
        d2 = a0 * b2 + a1 * b1 + a2 * b0
        d3 = a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0
        d4 = a1 * b3 + a2 * b2 + a3 * b1
        d5 = a2 * b3 + a3 * b2
        d6 = a3 * b3
        # x^4 = 5x^2 - 5, x^5 = 5x^3 - 5x, x^6 = 20x^2 - 25
        return QuarticReal._raw(
            (d0 - 5 * d4 - 25 * d6, d1 - 5 * d5, d2 + 5 * d4 + 20 * d6, d3 + 5 * d5),
            self._d * o._d,
        )

    __rmul__ = __mul__

    def _tower(self):
        # value = A + B x with A = c0 + c2 y, B = c1 + c3 y
        c0, c1, c2, c3 = self.coeffs
        return (c0, c2), (c1, c3)

    def inverse(self) -> "QuarticReal":
        if self.is_zero():
            raise ZeroDivisionError("division by the zero element of K")
        (p, q), (r, s) = self._tower()
        # 1/(A + Bx) = (A - Bx) / (A^2 - B^2 y)
        a2 = _y_mul(p, q, p, q)
        b2 = _y_mul(r, s, r, s)
        b2y = _y_mul(b2[0], b2[1], 0, 1)
        np_, nq = a2[0] - b2y[0], a2[1] - b2y[1]
        # 1/(n + m y) = (n + 5m - m y) / (n^2 + 5nm + 5m^2)
        norm = np_ * np_ + 5 * np_ * nq + 5 * nq * nq
        ip, iq = (np_ + 5 * nq) / norm, -nq / norm
        ap, aq = _y_mul(p, q, ip, iq)
        bp, bq = _y_mul(-r, -s, ip, iq)
        return QuarticReal(ap, bp, aq, bq)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by the zero element of K")
            f = Fraction(other)
            return QuarticReal._raw(tuple(n * f.denominator for n in self._n),
                                    self._d * f.numerator)
        try:
            o = QuarticReal.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return QuarticReal.coerce(other) * self.inverse()

    # comparison -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self._n)

    def sign(self) -> int:
        n0, n1, n2, n3 = self._n
        if not (n1 or n3):
            if not n2:
                return (n0 > 0) - (n0 < 0)
        approx = n0 + n1 * X_FLOAT + n2 * _X_POWERS[2] + n3 * _X_POWERS[3]
        scale = abs(n0) + abs(n1) * 2.0 + abs(n2) * 4.0 + abs(n3) * 7.0
        if abs(approx) > 1e-9 * scale:
            return 1 if approx > 0 else -1
        if self.is_zero():
            return 0
        return self._exact_sign()

    def _exact_sign(self) -> int:
        n0, n1, n2, n3 = (Fraction(n) for n in self._n)
        sa = _y_sign(n0, n2)
        sb = _y_sign(n1, n3)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        a2 = _y_mul(n0, n2, n0, n2)
        b2 = _y_mul(n1, n3, n1, n3)
        b2y = _y_mul(b2[0], b2[1], 0, 1)
        return sa * _y_sign(a2[0] - b2y[0], a2[1] - b2y[1])

    def __eq__(self, other):
        if isinstance(other, QuarticReal):
            return self._d == other._d and self._n == other._n
        try:
            o = QuarticReal.coerce(other)
        except TypeError:
            return NotImplemented
        return self._d == o._d and self._n == o._n

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, self._d))
        return self._hash

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return sum(n * p for n, p in zip(self._n, _X_POWERS)) / self._d

    def __repr__(self):
        return f"QuarticReal({', '.join(str(c) for c in self.coeffs)})"

    def serialize(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    @classmethod
    def parse(cls, text: str) -> "QuarticReal":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected four rationals, got {text!r}")
        return cls(*(Fraction(p) for p in parts))

    def to_golden(self) -> "GoldenExact":
        return to_golden(self)


X = QuarticReal(0, 1)
ONE = QuarticReal(1)
ZERO = QuarticReal(0)
SQRT5 = QuarticReal(-5, 0, 2)  # 2x^2 - 5
TAU = QuarticReal(-2, 0, 1)  # x^2 - 2


class _QuadraticBase:
    """a + b*w for a fixed quadratic irrationality w (subclass hook)."""

    __slots__ = ("a", "b")
    _W_SQUARE: tuple  # w^2 = p + q*w
    _W_FLOAT: float
    _SYMBOL: str

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def coerce(cls, value):
        if isinstance(value, cls):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to {cls.__name__}")

    def __add__(self, other):
        try:
            o = self.coerce(other)
        except TypeError:
            return NotImplemented
        return type(self)(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(-self.a, -self.b)

    def __sub__(self, other):
        try:
            o = self.coerce(other)
        except TypeError:
            return NotImplemented
        return type(self)(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self.coerce(other)
        except TypeError:
            return NotImplemented
        p, q = self._W_SQUARE
        bb = self.b * o.b
        return type(self)(self.a * o.a + p * bb, self.a * o.b + self.b * o.a + q * bb)

    __rmul__ = __mul__

    def conjugate(self):
        raise NotImplementedError

    def norm(self) -> Fraction:
        c = self * self.conjugate()
        return c.a

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError(f"division by zero in {type(self).__name__}")
        c = self.conjugate()
        return type(self)(c.a / n, c.b / n)

    def __truediv__(self, other):
        try:
            o = self.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = type(self)(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __eq__(self, other):
        try:
            o = self.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((type(self).__name__, self.a, self.b))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return float(self.a) + float(self.b) * self._W_FLOAT

    def __repr__(self):
        return f"{type(self).__name__}({self.a}, {self.b})"

    def integer_form(self) -> tuple[int, int, int]:
        """(p, q, d) with value (p + q*w)/d, d > 0 minimal."""
        d = self.a.denominator * self.b.denominator // math.gcd(self.a.denominator,
                                                                self.b.denominator)
        return int(self.a * d), int(self.b * d), d

    def serialize(self) -> str:
        p, q, d = self.integer_form()
        op = "-" if q < 0 else "+"
        return f"({p} {op} {abs(q)}*{self._SYMBOL})/{d}"

    @classmethod
    def parse(cls, text: str):
        m = re.fullmatch(
            r"\s*\(\s*(-?\d+)\s*([+-])\s*(\d+)\s*\*\s*" + re.escape(cls._SYMBOL)
            + r"\s*\)\s*/\s*(\d+)\s*", text)
        if not m:
            raise ValueError(f"not a {cls.__name__} literal: {text!r}")
        p, op, q, d = m.groups()
        qv = int(q) if op == "+" else -int(q)
        return cls(Fraction(int(p), int(d)), Fraction(qv, int(d)))

    def in_module(self, denominator: int) -> bool:
        """True iff denominator * self has integer coordinates."""
        return (self.a * denominator).denominator == 1 and \
            (self.b * denominator).denominator == 1


class GoldenExact(_QuadraticBase):
    """a + b*tau with tau = (1 + sqrt 5)/2, tau^2 = tau + 1."""

    __slots__ = ()
    _W_SQUARE = (1, 1)
    _W_FLOAT = TAU_FLOAT
    _SYMBOL = "tau"

    def conjugate(self):
        # tau -> 1 - tau
        return GoldenExact(self.a + self.b, -self.b)

    def sign(self) -> int:
        # a + b/2 + (b/2) sqrt5
        return _sign_sqrt5(self.a + self.b / 2, self.b / 2)

    def to_quartic(self) -> QuarticReal:
        return self.a + self.b * TAU


class SilverExact(_QuadraticBase):
    """a + b*sqrt2; the silver mean is lambda = 1 + sqrt2."""

    __slots__ = ()
    _W_SQUARE = (2, 0)
    _W_FLOAT = SQRT2_FLOAT
    _SYMBOL = "sqrt2"

    def conjugate(self):
        return SilverExact(self.a, -self.b)

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        d = self.a * self.a - 2 * self.b * self.b
        return sa * ((d > 0) - (d < 0))

    def lambda_form(self) -> tuple[Fraction, Fraction]:
        """(u, v) with value u + v*lambda."""
        return self.a - self.b, self.b


TAU_G = GoldenExact(0, 1)
SQRT2 = SilverExact(0, 1)
LAMBDA = SilverExact(1, 1)


def to_golden(a: QuarticReal) -> GoldenExact:
    """Rewrite an element of Q(sqrt5) inside K in the basis {1, tau}."""
    c0, c1, c2, c3 = a.coeffs
    if c1 != 0 or c3 != 0:
        raise NotInGoldenSubfield(f"{a!r} does not lie in Q(tau)")
    # x^2 = tau + 2
    return GoldenExact(c0 + 2 * c2, c2)


def field_ops(op: str, a: QuarticReal, b: QuarticReal) -> QuarticReal:
    """Dispatch one of add/sub/mul/div/neg; ``neg`` ignores ``b``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "neg":
        return -a
    raise ValueError(f"unknown operation {op!r}")


def sign_of(a) -> int:
    """Exact sign of a field element or a plain rational."""
    if isinstance(a, Rational):
        return (a > 0) - (a < 0)
    return a.sign()


# power forms ------------------------------------------------------------------

@dataclass(frozen=True)
class PowerForm:
    prefix: str
    sign: int
    exponent: int
    base: str

    def __str__(self):
        body = f"{self.base}^{self.exponent}"
        if self.prefix == "1":
            out = body
        elif self.prefix.startswith("1/"):
            out = f"{body}/{self.prefix[2:]}"
        else:
            out = f"{self.prefix}*{body}"
        return ("-" if self.sign < 0 else "") + out


_GOLDEN_PREFIXES = (
    ("1", GoldenExact(1)),
    ("1/2", GoldenExact(Fraction(1, 2))),
    ("1/5", GoldenExact(Fraction(1, 5))),
    ("1/10", GoldenExact(Fraction(1, 10))),
    ("(2*tau-1)/5", GoldenExact(Fraction(-1, 5), Fraction(2, 5))),
    ("(2*tau-1)/10", GoldenExact(Fraction(-1, 10), Fraction(2, 10))),
)
_SILVER_PREFIXES = (
    ("1", SilverExact(1)),
    ("1/2", SilverExact(Fraction(1, 2))),
)
MAX_POWER = 64


def power_form(v: Union[GoldenExact, SilverExact]) -> Optional[PowerForm]:
    """Write v as prefix * (+-base^n) with |n| <= 64 when possible."""
    if v.is_zero():
        raise ZeroValue("power form of zero is undefined")
    if isinstance(v, GoldenExact):
        prefixes, base, name = _GOLDEN_PREFIXES, TAU_G, "tau"
    elif isinstance(v, SilverExact):
        prefixes, base, name = _SILVER_PREFIXES, LAMBDA, "lambda"
    else:
        raise TypeError(f"unsupported value type {type(v).__name__}")
    bf = math.log(float(base))
    for label, pre in prefixes:
        q = v / pre
        s = q.sign()
        qa = q if s > 0 else -q
        n = round(math.log(float(qa)) / bf)
        if abs(n) > MAX_POWER:
            continue
        for cand in (n - 1, n, n + 1):
            if abs(cand) <= MAX_POWER and base ** cand == qa:
                return PowerForm(label, s, cand, name)
    return None


T = TypeVar("T")


@dataclass(frozen=True)
class Point2(Generic[T]):
    x: T
    y: T

    def __add__(self, other: "Point2[T]") -> "Point2[T]":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2[T]") -> "Point2[T]":
        return Point2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Point2[T]":
        return Point2(-self.x, -self.y)

    def scale(self, k) -> "Point2[T]":
        return Point2(self.x * k, self.y * k)

    def to_float(self) -> tuple[float, float]:
        return float(self.x), float(self.y)


def _dec(q: Fraction) -> decimal.Decimal:
    return decimal.Decimal(q.numerator) / decimal.Decimal(q.denominator)


def to_decimal(value, prec: int = 50) -> decimal.Decimal:
    """High-precision decimal of an exact value (floats lose digits to cancellation)."""
    with decimal.localcontext() as ctx:
        ctx.prec = prec + 10
        if isinstance(value, QuarticReal):
            s5 = decimal.Decimal(5).sqrt()
            x = ((5 + s5) / 2).sqrt()
            xs = (1, x, x * x, x * x * x)
            out = sum((_dec(c) * p for c, p in zip(value.coeffs, xs)), decimal.Decimal(0))
        elif isinstance(value, GoldenExact):
            out = _dec(value.a) + _dec(value.b) * (1 + decimal.Decimal(5).sqrt()) / 2
        elif isinstance(value, SilverExact):
            out = _dec(value.a) + _dec(value.b) * decimal.Decimal(2).sqrt()
        else:
            out = _dec(Fraction(value))
    with decimal.localcontext() as ctx:
        ctx.prec = prec
        return +out


def decimal_str(value, digits: int = 12) -> str:
    """``digits`` correct significant digits, in the style of float's g format."""
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    d = to_decimal(value, digits + 20)
    return "0" if d.is_zero() else f"{d:.{digits}g}"
