"""Scalar coefficient domains.

Four rings are supported:

* ``RationalRing``   -- :class:`fractions.Fraction` values (always in lowest terms)
* ``QuadraticRing``  -- :class:`QuadraticElement`, exact elements ``a + b*sqrt(D)``
* ``PolynomialRing`` -- :class:`DPolynomial`, polynomials in the exponent ``d``
* ``IntervalRing``   -- :class:`IntervalValue`, outward-rounded binary intervals

Elements use the ordinary Python operators.  Plain ``int`` and ``Fraction``
scalars mix freely with every ring since Q embeds canonically in each of them;
anything else (a quadratic element in a rational series, say) needs an explicit
:func:`promote`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Union

import gmpy2

Rational = Fraction
Scalar = Union[int, Fraction]


class Sign(str, enum.Enum):
    NEGATIVE = "negative"
    ZERO = "zero"
    POSITIVE = "positive"
    UNKNOWN = "unknown"


class RingMismatch(TypeError):
    """Operands come from different coefficient rings."""


class UnsupportedQuery(TypeError):
    """The ring has no meaningful answer for this query (sign of a polynomial in d)."""


class IntervalDivisionError(ZeroDivisionError):
    """Division by an interval that contains zero."""


def _sign_of(x) -> Sign:
    if x > 0:
        return Sign.POSITIVE
    if x < 0:
        return Sign.NEGATIVE
    return Sign.ZERO


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an int or Fraction, got {type(x).__name__}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, an integer, or a finite decimal such as ``"0.23"`` exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    return str(x)


def _is_squarefree(n: int) -> bool:
    if n < 2:
        return n == 1
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


# ---------------------------------------------------------------------------
# Quadratic field Q(sqrt D)
# ---------------------------------------------------------------------------


class QuadraticElement:
    """Exact element ``a + b*sqrt(D)`` of a real quadratic field."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a: Scalar, b: Scalar, D: int):
        if not isinstance(D, int) or D < 2 or not _is_squarefree(D):
            raise ValueError(f"D must be a square-free integer >= 2, got {D!r}")
        self.a = _as_fraction(a)
        self.b = _as_fraction(b)
        self.D = D

    def _coerce(self, other) -> QuadraticElement | None:
        if isinstance(other, QuadraticElement):
            if other.D != self.D:
                raise RingMismatch(f"Q(sqrt {self.D}) vs Q(sqrt {other.D})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticElement(other, 0, self.D)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticElement(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticElement(-self.a, -self.b, self.D)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticElement(self.a - o.a, self.b - o.b, self.D)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadraticElement(self.a * other, self.b * other, self.D)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticElement(
            self.a * o.a + self.b * o.b * self.D,
            self.a * o.b + o.a * self.b,
            self.D,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadraticElement:
        return QuadraticElement(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.D

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(sqrt D)")
            return QuadraticElement(self.a / other, self.b / other, self.D)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt D)")
        return (self * o.conjugate()) / n

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = QuadraticElement(1, 0, self.D)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadraticElement):
            return (self.a, self.b, self.D) == (other.a, other.b, other.D)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def sign(self) -> Sign:
        # exact case analysis, compares a^2 with b^2 D when signs differ
        sa, sb = _sign_of(self.a), _sign_of(self.b)
        if sb is Sign.ZERO:
            return sa
        if sa is Sign.ZERO or sa is sb:
            return sb
        lhs, rhs = self.a * self.a, self.b * self.b * self.D
        return sa if lhs > rhs else sb

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.D)

    def __repr__(self):
        return f"QuadraticElement({self.a}, {self.b}, D={self.D})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        op = "-" if self.b < 0 else "+"
        return f"{self.a} {op} {abs(self.b)}*sqrt({self.D})"


# (9 - sqrt 73)/2, the smaller root of d^2 - 9d + 2
CRITICAL_EXPONENT = QuadraticElement(Fraction(9, 2), Fraction(-1, 2), 73)


# ---------------------------------------------------------------------------
# Polynomials in the exponent d
# ---------------------------------------------------------------------------


class DPolynomial:
    """Polynomial in ``d`` with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: list[Fraction]) -> DPolynomial:
        # skips validation; caller hands over Fractions
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        p = cls.__new__(cls)
        p.coeffs = tuple(coeffs)
        return p

    @classmethod
    def variable(cls) -> DPolynomial:
        return cls((0, 1))

    @classmethod
    def constant(cls, c: Scalar) -> DPolynomial:
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    @staticmethod
    def _coerce(other) -> DPolynomial | None:
        if isinstance(other, DPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return DPolynomial((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return DPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return DPolynomial._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return DPolynomial()
            return DPolynomial._raw([c * other for c in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return DPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(o.coeffs):
                    out[i + j] += x * y
        return DPolynomial._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by nonzero constants stays inside the ring
        if isinstance(other, DPolynomial):
            if other.degree > 0:
                raise TypeError("polynomial division is not closed; use divmod")
            other = other.leading()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a polynomial by zero")
            return DPolynomial._raw([c / other for c in self.coeffs])
        return NotImplemented

    def __divmod__(self, other: DPolynomial):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading()
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c:
                f = c / lead
                quot[k - dq] = f
                for i, oc in enumerate(other.coeffs):
                    rem[k - dq + i] -= f * oc
        return DPolynomial._raw(quot), DPolynomial._raw(rem[:dq])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = DPolynomial((1,))
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def derivative(self) -> DPolynomial:
        return DPolynomial._raw([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> DPolynomial:
        if self.is_zero():
            return self
        return self / self.leading()

    def primitive_integer_coeffs(self) -> list[int]:
        """Integer coefficient list proportional to ``self`` with content 1 and positive lead."""
        if self.is_zero():
            return []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return [v // g for v in ints]

    def __call__(self, x):
        return poly_evaluate(self, x)

    def __repr__(self):
        return f"DPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("d" if k == 1 else f"d^{k}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


FORMAL_D = DPolynomial.variable()


def poly_evaluate(p: DPolynomial, x):
    """Horner evaluation of ``p`` at ``x``; the result lives in ``x``'s ring."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    if isinstance(acc, int):
        return Fraction(acc)
    return acc


# ---------------------------------------------------------------------------
# Intervals
# ---------------------------------------------------------------------------


def _ctx(bits: int, rnd):
    return gmpy2.context(gmpy2.get_context(), precision=bits, round=rnd)


class IntervalValue:
    """Closed interval ``[lo, hi]`` of binary floats at ``bits`` of precision.

    Every operation rounds outward, so the exact result of the corresponding
    real operation on any members of the operands lies inside the output.
    """

    __slots__ = ("lo", "hi", "bits")

    def __init__(self, lo, hi, bits: int = 128):
        with _ctx(bits, gmpy2.RoundDown):
            lo = gmpy2.mpfr(lo)
        with _ctx(bits, gmpy2.RoundUp):
            hi = gmpy2.mpfr(hi)
        if not lo <= hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo, self.hi, self.bits = lo, hi, bits

    @classmethod
    def from_rational(cls, x: Scalar, bits: int = 128) -> IntervalValue:
        q = gmpy2.mpq(_as_fraction(x).numerator, _as_fraction(x).denominator)
        return cls(q, q, bits)

    @classmethod
    def from_quadratic(cls, x: QuadraticElement, bits: int = 128) -> IntervalValue:
        with _ctx(bits, gmpy2.RoundDown):
            s_lo = gmpy2.sqrt(gmpy2.mpfr(x.D))
        with _ctx(bits, gmpy2.RoundUp):
            s_hi = gmpy2.sqrt(gmpy2.mpfr(x.D))
        root = IntervalValue(s_lo, s_hi, bits)
        return cls.from_rational(x.a, bits) + cls.from_rational(x.b, bits) * root

    def _coerce(self, other) -> IntervalValue | None:
        if isinstance(other, IntervalValue):
            return other
        if isinstance(other, (int, Fraction)):
            return IntervalValue.from_rational(other, self.bits)
        return None

    def _bits_with(self, o: IntervalValue) -> int:
        return max(self.bits, o.bits)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        bits = self._bits_with(o)
        with _ctx(bits, gmpy2.RoundDown):
            lo = self.lo + o.lo
        with _ctx(bits, gmpy2.RoundUp):
            hi = self.hi + o.hi
        return IntervalValue(lo, hi, bits)

    __radd__ = __add__

    def __neg__(self):
        return IntervalValue(-self.hi, -self.lo, self.bits)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        bits = self._bits_with(o)
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        with _ctx(bits, gmpy2.RoundDown):
            lo = min(x * y for x, y in pairs)
        with _ctx(bits, gmpy2.RoundUp):
            hi = max(x * y for x, y in pairs)
        return IntervalValue(lo, hi, bits)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.lo <= 0 <= o.hi:
            raise IntervalDivisionError(f"divisor [{o.lo}, {o.hi}] contains zero")
        bits = self._bits_with(o)
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        with _ctx(bits, gmpy2.RoundDown):
            lo = min(x / y for x, y in pairs)
        with _ctx(bits, gmpy2.RoundUp):
            hi = max(x / y for x, y in pairs)
        return IntervalValue(lo, hi, bits)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def contains(self, x) -> bool:
        if isinstance(x, Fraction):
            x = gmpy2.mpq(x.numerator, x.denominator)
        return self.lo <= x <= self.hi

    def width(self):
        return self.hi - self.lo

    def sign(self) -> Sign:
        if self.lo > 0:
            return Sign.POSITIVE
        if self.hi < 0:
            return Sign.NEGATIVE
        if self.lo == 0 and self.hi == 0:
            return Sign.ZERO
        return Sign.UNKNOWN

    def __eq__(self, other):
        if isinstance(other, IntervalValue):
            return self.lo == other.lo and self.hi == other.hi
        return NotImplemented

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __float__(self):
        return float((self.lo + self.hi) / 2)

    def __repr__(self):
        return f"IntervalValue({self.lo}, {self.hi}, bits={self.bits})"


# ---------------------------------------------------------------------------
# Ring descriptors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalRing:
    tag: ClassVar[str] = "rational"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def contains(self, x) -> bool:
        return isinstance(x, Fraction)

    def coerce(self, x):
        return _as_fraction(x)


@dataclass(frozen=True)
class QuadraticRing:
    D: int
    tag: ClassVar[str] = "quadratic"

    def zero(self):
        return QuadraticElement(0, 0, self.D)

    def one(self):
        return QuadraticElement(1, 0, self.D)

    def contains(self, x) -> bool:
        return isinstance(x, QuadraticElement) and x.D == self.D

    def coerce(self, x):
        if isinstance(x, QuadraticElement):
            if x.D != self.D:
                raise RingMismatch(f"Q(sqrt {x.D}) element in Q(sqrt {self.D})")
            return x
        return QuadraticElement(_as_fraction(x), 0, self.D)


@dataclass(frozen=True)
class PolynomialRing:
    tag: ClassVar[str] = "polynomial"

    def zero(self):
        return DPolynomial()

    def one(self):
        return DPolynomial((1,))

    def contains(self, x) -> bool:
        return isinstance(x, DPolynomial)

    def coerce(self, x):
        if isinstance(x, DPolynomial):
            return x
        return DPolynomial((_as_fraction(x),))


@dataclass(frozen=True)
class IntervalRing:
    bits: int = 128
    tag: ClassVar[str] = "interval"

    def zero(self):
        return IntervalValue(0, 0, self.bits)

    def one(self):
        return IntervalValue(1, 1, self.bits)

    def contains(self, x) -> bool:
        return isinstance(x, IntervalValue)

    def coerce(self, x):
        if isinstance(x, IntervalValue):
            return x
        if isinstance(x, QuadraticElement):
            return IntervalValue.from_quadratic(x, self.bits)
        return IntervalValue.from_rational(x, self.bits)


Ring = Union[RationalRing, QuadraticRing, PolynomialRing, IntervalRing]
RATIONAL = RationalRing()
POLYNOMIAL = PolynomialRing()


def ring_of(x) -> Ring:
    if isinstance(x, (int, Fraction)):
        return RATIONAL
    if isinstance(x, QuadraticElement):
        return QuadraticRing(x.D)
    if isinstance(x, DPolynomial):
        return POLYNOMIAL
    if isinstance(x, IntervalValue):
        return IntervalRing(x.bits)
    raise TypeError(f"not a coefficient value: {type(x).__name__}")


def promote(x, ring: Ring):
    """Explicitly embed ``x`` into ``ring``.

    Rationals embed everywhere and quadratic elements embed into intervals;
    every other direction is a :class:`RingMismatch`.
    """
    src = ring_of(x)
    if src == ring:
        return x
    if isinstance(src, RationalRing) or (
        isinstance(src, QuadraticRing) and isinstance(ring, IntervalRing)
    ):
        return ring.coerce(x)
    if isinstance(src, IntervalRing) and isinstance(ring, IntervalRing):
        return x
    raise RingMismatch(f"cannot promote {src.tag} value into {ring.tag} ring")


def ring_sign(x) -> Sign:
    """Sign of a ring element; exact rings never answer ``UNKNOWN``."""
    if isinstance(x, DPolynomial):
        raise UnsupportedQuery("the sign of a polynomial in d depends on d")
    if isinstance(x, (int, Fraction)):
        return _sign_of(x)
    if isinstance(x, (QuadraticElement, IntervalValue)):
        return x.sign()
    raise TypeError(f"not a coefficient value: {type(x).__name__}")


def is_certainly_nonnegative(x) -> bool:
    if isinstance(x, IntervalValue):
        return x.lo >= 0
    return ring_sign(x) in (Sign.ZERO, Sign.POSITIVE)


# ---------------------------------------------------------------------------
# Serialization: exact values never pass through binary floats
# ---------------------------------------------------------------------------


def _mpfr_to_str(x) -> str:
    q = gmpy2.mpq(x)
    return format_rational(Fraction(int(q.numerator), int(q.denominator)))


def serialize_value(x):
    if isinstance(x, (int, Fraction)):
        return format_rational(Fraction(x))
    if isinstance(x, QuadraticElement):
        return {"a": format_rational(x.a), "b": format_rational(x.b), "D": x.D}
    if isinstance(x, DPolynomial):
        return [format_rational(c) for c in x.coeffs]
    if isinstance(x, IntervalValue):
        return {"lo": _mpfr_to_str(x.lo), "hi": _mpfr_to_str(x.hi), "bits": x.bits}
    raise TypeError(f"not a coefficient value: {type(x).__name__}")


def deserialize_value(obj, ring: Ring):
    if isinstance(ring, RationalRing):
        return parse_rational(obj)
    if isinstance(ring, QuadraticRing):
        if obj["D"] != ring.D:
            raise RingMismatch(f"serialized D={obj['D']} in ring D={ring.D}")
        return QuadraticElement(parse_rational(obj["a"]), parse_rational(obj["b"]), obj["D"])
    if isinstance(ring, PolynomialRing):
        return DPolynomial([parse_rational(c) for c in obj])
    if isinstance(ring, IntervalRing):
        lo, hi = parse_rational(obj["lo"]), parse_rational(obj["hi"])
        return IntervalValue(
            gmpy2.mpq(lo.numerator, lo.denominator),
            gmpy2.mpq(hi.numerator, hi.denominator),
            int(obj["bits"]),
        )
    raise TypeError(f"unknown ring {ring!r}")


def ring_to_json(ring: Ring) -> dict:
    out = {"tag": ring.tag}
    if isinstance(ring, QuadraticRing):
        out["D"] = ring.D
    elif isinstance(ring, IntervalRing):
        out["bits"] = ring.bits
    return out


def ring_from_json(obj) -> Ring:
    tag = obj["tag"] if isinstance(obj, dict) else obj
    if tag == "rational":
        return RATIONAL
    if tag == "quadratic":
        return QuadraticRing(int(obj["D"]))
    if tag == "polynomial":
        return POLYNOMIAL
    if tag == "interval":
        return IntervalRing(int(obj.get("bits", 128)))
    raise ValueError(f"unknown ring tag {tag!r}")
