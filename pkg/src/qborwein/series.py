"""Dense truncated power series in q over a coefficient ring."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from operator import mul
from typing import Iterable, Sequence

from .rings import (
    RATIONAL,
    IntervalRing,
    PolynomialRing,
    Ring,
    RingMismatch,
    deserialize_value,
    promote,
    ring_from_json,
    ring_of,
    ring_to_json,
    serialize_value,
)


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Coefficients ``c_0 .. c_N`` of a power series known modulo ``q^(N+1)``.

    ``order`` is ``len(coeffs) - 1``.  An order of ``-1`` (no coefficients)
    is allowed for dissection components of very short sources.
    """

    coeffs: tuple
    ring: Ring = RATIONAL

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @classmethod
    def from_values(cls, values: Iterable, ring: Ring | None = None, order: int | None = None):
        """Build a series, coercing scalars into ``ring`` and zero-padding up to ``order``."""
        values = list(values)
        if ring is None:
            ring = ring_of(values[0]) if values else RATIONAL
        cs = [ring.coerce(v) for v in values]
        if order is not None:
            if len(cs) > order + 1:
                cs = cs[: order + 1]
            cs.extend(ring.zero() for _ in range(order + 1 - len(cs)))
        return cls(tuple(cs), ring)

    @classmethod
    def one(cls, order: int, ring: Ring = RATIONAL) -> TruncatedSeries:
        return cls.from_values([1], ring, order)

    @classmethod
    def zero(cls, order: int, ring: Ring = RATIONAL) -> TruncatedSeries:
        return cls.from_values([], ring, order)

    @classmethod
    def polynomial(cls, terms: dict[int, int | Fraction], order: int, ring: Ring = RATIONAL):
        """Series from a sparse ``{exponent: coefficient}`` map; terms beyond ``order`` drop."""
        cs = [ring.zero()] * (order + 1)
        for k, c in terms.items():
            if 0 <= k <= order:
                cs[k] = cs[k] + ring.coerce(c)
        return cls(tuple(cs), ring)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if len(self.coeffs) > 8 else ""
        return f"TruncatedSeries([{shown}{more}], order={self.order}, ring={self.ring.tag})"

    # -- structure ----------------------------------------------------------

    def _check_ring(self, other: TruncatedSeries):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring!r} series combined with {other.ring!r} series")

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1], self.ring)

    def promote(self, ring: Ring) -> TruncatedSeries:
        return TruncatedSeries(tuple(promote(c, ring) for c in self.coeffs), ring)

    def map(self, fn) -> TruncatedSeries:
        """Apply ``fn`` to every coefficient; the result ring is inferred."""
        cs = [fn(c) for c in self.coeffs]
        ring = ring_of(cs[0]) if cs else self.ring
        return TruncatedSeries(tuple(cs), ring)

    def __eq__(self, other):
        # coefficient-wise over the common order
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.ring != other.ring:
            return False
        n = min(len(self.coeffs), len(other.coeffs))
        return self.coeffs[:n] == other.coeffs[:n]

    __hash__ = None

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_ring(other)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.ring)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_ring(other)
        return TruncatedSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.ring)

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.ring)

    def scale(self, c) -> TruncatedSeries:
        """Multiply every coefficient by the scalar ``c`` (rational, or an element of the ring)."""
        if not isinstance(c, (int, Fraction)):
            c = promote(c, self.ring)
        return TruncatedSeries(tuple(x * c for x in self.coeffs), self.ring)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def derivative(self) -> TruncatedSeries:
        return series_derivative(self)

    def inflate(self, m: int) -> TruncatedSeries:
        return series_inflate(self, m)

    def mul_binomial_factor(self, j: int, sign: int = 1) -> TruncatedSeries:
        return series_mul_binomial_factor(self, j, sign)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "ring": ring_to_json(self.ring),
            "coeffs": [serialize_value(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> TruncatedSeries:
        ring = ring_from_json(obj["ring"])
        cs = tuple(deserialize_value(c, ring) for c in obj["coeffs"])
        if len(cs) != obj["order"] + 1:
            raise ValueError("coefficient count does not match the stated order")
        return cls(cs, ring)


def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f + g


def series_sub(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f - g


def _integer_form(cs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for c in cs:
        d = c.denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    if den == 1:
        return [c.numerator for c in cs], 1
    return [c.numerator * (den // c.denominator) for c in cs], den


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller order."""
    f._check_ring(g)
    n = min(f.order, g.order)
    if n < 0:
        return TruncatedSeries((), f.ring)
    a, b = f.coeffs[: n + 1], g.coeffs[: n + 1]
    if f.ring == RATIONAL:
        # common-denominator integer convolution; same exact result, far fewer Fraction ops
        ia, da = _integer_form(a)
        ib, db = _integer_form(b)
        den = da * db
        rb = ib[::-1]
        out = []
        for k in range(n + 1):
            s = sum(map(mul, ia[: k + 1], rb[n - k :]))
            out.append(Fraction(s, den) if den != 1 else Fraction(s))
        return TruncatedSeries(tuple(out), f.ring)
    zero = f.ring.zero()
    out = []
    for k in range(n + 1):
        s = zero
        for i in range(k + 1):
            s = s + a[i] * b[k - i]
        out.append(s)
    return TruncatedSeries(tuple(out), f.ring)


def series_derivative(f: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries(tuple(k * c for k, c in enumerate(f.coeffs))[1:], f.ring)


def series_inflate(f: TruncatedSeries, m: int) -> TruncatedSeries:
    """Substitute ``q -> q^m``."""
    if m < 1:
        raise ValueError(f"inflation factor must be >= 1, got {m}")
    if m == 1 or f.order < 0:
        return f
    zero = f.ring.zero()
    out = [zero] * (m * f.order + 1)
    for k, c in enumerate(f.coeffs):
        out[m * k] = c
    return TruncatedSeries(tuple(out), f.ring)


def series_mul_binomial_factor(f: TruncatedSeries, j: int, sign: int = 1) -> TruncatedSeries:
    """Multiply by ``1 - q^j`` (``sign=+1``) or ``1 + q^j`` (``sign=-1``) in O(N)."""
    if j < 1:
        raise ValueError(f"factor exponent must be >= 1, got {j}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    cs = list(f.coeffs)
    if j > f.order:
        return f
    # descending so each c_{k-j} read is still the original value
    if sign == 1:
        for k in range(len(cs) - 1, j - 1, -1):
            cs[k] = cs[k] - cs[k - j]
    else:
        for k in range(len(cs) - 1, j - 1, -1):
            cs[k] = cs[k] + cs[k - j]
    return TruncatedSeries(tuple(cs), f.ring)


def _require_constant(f: TruncatedSeries, value: int, op: str):
    if f.order < 0 or f.coeffs[0] != value:
        raise ValueError(f"{op} needs constant term {value}")


def series_log(f: TruncatedSeries) -> TruncatedSeries:
    """Formal logarithm of a series with constant term 1.

    Uses ``n g_n = n f_n - sum_{k=1}^{n-1} k g_k f_{n-k}``, i.e. ``g' f = f'``.
    """
    _require_constant(f, 1, "log")
    zero = f.ring.zero()
    g = [zero] * (f.order + 1)
    for n in range(1, f.order + 1):
        s = n * f.coeffs[n]
        for k in range(1, n):
            s = s - (k * g[k]) * f.coeffs[n - k]
        g[n] = s / n
    return TruncatedSeries(tuple(g), f.ring)


def series_exp(f: TruncatedSeries, scale=None) -> TruncatedSeries:
    """Formal exponential of ``scale * f`` for ``f`` with zero constant term.

    ``scale`` defaults to 1.  When given it may come from a larger ring than
    ``f``'s coefficients (a quadratic or formal exponent times a rational log);
    the result then lives in the scale's ring.  The recurrence is
    ``n g_n = scale * sum_{k=1}^{n} k f_k g_{n-k}``.
    """
    _require_constant(f, 0, "exp")
    if scale is None:
        ring = f.ring
    else:
        ring = f.ring if isinstance(scale, (int, Fraction)) else ring_of(scale)
        if ring != f.ring and f.ring != RATIONAL:
            raise RingMismatch(f"exp scale in {ring.tag} ring over a {f.ring.tag} series")
    N = f.order
    weights = [k * c for k, c in enumerate(f.coeffs)]
    g = [ring.one()] + [ring.zero()] * N
    for n in range(1, N + 1):
        s = ring.zero()
        for k in range(1, n + 1):
            w = weights[k]
            if w:
                s = s + w * g[n - k]
        if scale is not None:
            s = s * scale
        g[n] = s / n
    return TruncatedSeries(tuple(g), ring)


def series_pow_real(f: TruncatedSeries, d) -> TruncatedSeries:
    """``f^d`` for ``f`` with constant term 1.

    The unique ``g`` with ``g_0 = 1`` and ``g' f = d f' g``; coefficientwise
    ``n g_n = sum_{k=1}^{n} (d k - (n - k)) f_k g_{n-k}``.  A non-rational ``d``
    requires ``f`` to already live in ``d``'s ring (see :meth:`TruncatedSeries.promote`).
    """
    _require_constant(f, 1, "pow")
    if not isinstance(d, (int, Fraction)):
        dr = ring_of(d)
        if dr != f.ring:
            raise RingMismatch(
                f"exponent in {dr.tag} ring; promote the {f.ring.tag} series first"
            )
    ring = f.ring
    N = f.order
    a = f.coeffs
    g = [ring.one()] + [ring.zero()] * N
    for n in range(1, N + 1):
        s = ring.zero()
        for k in range(1, n + 1):
            if a[k]:
                s = s + (d * k - (n - k)) * (a[k] * g[n - k])
        g[n] = s / n
    return TruncatedSeries(tuple(g), ring)


def is_formal(ring: Ring) -> bool:
    return isinstance(ring, PolynomialRing)


def is_exact(ring: Ring) -> bool:
    return not isinstance(ring, IntervalRing)


__all__ = [
    "TruncatedSeries",
    "series_add",
    "series_sub",
    "series_mul",
    "series_log",
    "series_exp",
    "series_pow_real",
    "series_derivative",
    "series_inflate",
    "series_mul_binomial_factor",
    "is_formal",
    "is_exact",
]
