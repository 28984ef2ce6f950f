"""Exact real root isolation for polynomials with rational coefficients.

Square-free decomposition (Yun) followed by Descartes' rule of signs with
bisection.  All arithmetic is on Python integers and Fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .rings import DPolynomial


# -- integer polynomial helpers (coefficient lists, lowest degree first) -----


def to_integer_coeffs(p: DPolynomial) -> list[int]:
    """Positive multiple of ``p`` with integer coefficients of content 1 (sign kept)."""
    if p.is_zero():
        return []
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [c.numerator * (den // c.denominator) for c in p.coeffs]
    return _primitive(ints)


def _primitive(ints: list[int]) -> list[int]:
    g = 0
    for v in ints:
        g = math.gcd(g, v)
        if g == 1:
            return ints
    if g in (0, 1):
        return ints
    return [v // g for v in ints]


def eval_sign(ints: list[int], x: Fraction) -> int:
    """Sign of the integer polynomial at a rational point, via homogeneous evaluation."""
    p, q = x.numerator, x.denominator
    n = len(ints) - 1
    acc = 0
    qpow = 1
    # sum a_i p^i q^(n-i), Horner in p with q powers carried alongside
    for c in reversed(ints):
        acc = acc * p + c * qpow
        qpow *= q
    return (acc > 0) - (acc < 0)


def _taylor_shift1(ints: list[int]) -> list[int]:
    # coefficients of P(x + 1)
    a = list(ints)
    n = len(a)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] += a[j + 1]
    return a


def _variations(ints: list[int]) -> int:
    v = 0
    prev = 0
    for c in ints:
        if c:
            if prev and (c > 0) != (prev > 0):
                v += 1
            prev = c
    return v


def _descartes_unit(ints: list[int]) -> int:
    """Descartes bound on the number of roots in the open interval (0, 1)."""
    return _variations(_taylor_shift1(ints[::-1]))


def _compose_affine(ints: list[int], a: Fraction, w: Fraction) -> list[int]:
    """Integer coefficients proportional (positively) to ``P(a + w x)``."""
    out: list[Fraction] = []
    for c in reversed(ints):
        # out = out * (a + w x) + c
        new = [Fraction(0)] * (len(out) + 1)
        for i, v in enumerate(out):
            new[i] += v * a
            new[i + 1] += v * w
        new[0] += c
        out = new
    while out and out[-1] == 0:
        out.pop()
    return to_integer_coeffs(DPolynomial._raw(out)) if out else []


def count_roots_open(ints: list[int], lo: Fraction, hi: Fraction) -> int:
    """Descartes bound for roots in ``(lo, hi)``; exact when it returns 0 or 1."""
    if lo >= hi:
        return 0
    return _descartes_unit(_compose_affine(ints, lo, hi - lo))


def _isolate_squarefree(ints: list[int], a: Fraction, b: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for the roots of a square-free polynomial in ``[a, b]``.

    Returned pairs ``(lo, hi)`` satisfy ``lo == hi`` for an exact rational root,
    otherwise exactly one root lies in ``(lo, hi)`` and neither endpoint is a root.
    """
    if len(ints) <= 1:
        return []
    if len(ints) == 2:
        r = Fraction(-ints[0], ints[1])
        return [(r, r)] if a <= r <= b else []
    found: list[tuple[Fraction, Fraction]] = []
    if eval_sign(ints, a) == 0:
        found.append((a, a))
    if b != a and eval_sign(ints, b) == 0:
        found.append((b, b))
    if b <= a:
        return found
    w = b - a
    top = _compose_affine(ints, a, w)
    stack = [(top, 0, 0)]
    while stack:
        Q, c, k = stack.pop()
        n = len(Q) - 1
        left_root = Q[0] == 0
        right_root = sum(Q) == 0
        if left_root and c % 2 == 1:
            # left endpoint of a right child: an interior bisection point
            found.append((a + w * Fraction(c, 1 << k),) * 2)
        v = _descartes_unit(Q)
        if v == 0:
            continue
        if v == 1 and not left_root and not right_root:
            found.append((a + w * Fraction(c, 1 << k), a + w * Fraction(c + 1, 1 << k)))
            continue
        left = _primitive([q << (n - i) for i, q in enumerate(Q)])
        right = _primitive(_taylor_shift1(left))
        stack.append((right, 2 * c + 1, k + 1))
        stack.append((left, 2 * c, k + 1))
    return found


def cauchy_bound(ints: list[int]) -> int:
    lead = abs(ints[-1])
    return 1 + max((abs(c) + lead - 1) // lead for c in ints[:-1]) if len(ints) > 1 else 1


# -- polynomial algebra over Q -----------------------------------------------


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    r = list(a)
    lc = b[-1]
    nb = len(b)
    while len(r) >= nb:
        c = r[-1]
        shift = len(r) - nb
        r = [x * lc for x in r]
        for i, bc in enumerate(b):
            r[shift + i] -= c * bc
        while r and r[-1] == 0:
            r.pop()
    return _primitive(r)


def integer_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd of integer polynomials via the primitive remainder sequence."""
    a, b = _primitive(list(a)), _primitive(list(b))
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _pseudo_rem(a, b)
    return _positive_lead(a) if a else []


def poly_gcd(p: DPolynomial, q: DPolynomial) -> DPolynomial:
    """Monic gcd over Q (zero if both are zero)."""
    g = integer_gcd(to_integer_coeffs(p), to_integer_coeffs(q))
    return DPolynomial(g).monic()


def squarefree_decomposition(p: DPolynomial) -> list[tuple[DPolynomial, int]]:
    """Yun's algorithm: pairwise coprime square-free factors with multiplicities."""
    if p.degree < 1:
        return []
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = divmod(p, a)[0]
    c = divmod(dp, a)[0]
    dd = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, dd)
        if a.degree > 0:
            out.append((a.monic(), i))
        b = divmod(b, a)[0]
        c = divmod(dd, a)[0]
        dd = c - b.derivative()
        i += 1
    return out


def squarefree_part(p: DPolynomial) -> DPolynomial:
    return divmod(p, poly_gcd(p, p.derivative()))[0].monic()


# -- algebraic numbers -------------------------------------------------------


@dataclass(frozen=True)
class AlgebraicNumber:
    """A real root of the square-free integer polynomial ``poly`` pinned down by ``[lo, hi]``.

    Either ``lo == hi`` (a rational root) or the polynomial changes sign
    strictly between the endpoints and has no other root in that interval.
    """

    poly: tuple[int, ...]
    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    @classmethod
    def rational(cls, x: Fraction, multiplicity: int = 1) -> AlgebraicNumber:
        x = Fraction(x)
        return cls((-x.numerator, x.denominator), x, x, multiplicity)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def width(self) -> Fraction:
        return self.hi - self.lo

    def bisect(self) -> AlgebraicNumber:
        if self.is_exact:
            return self
        mid = (self.lo + self.hi) / 2
        s_mid = eval_sign(list(self.poly), mid)
        if s_mid == 0:
            return AlgebraicNumber(self.poly, mid, mid, self.multiplicity)
        if s_mid == eval_sign(list(self.poly), self.lo):
            return AlgebraicNumber(self.poly, mid, self.hi, self.multiplicity)
        return AlgebraicNumber(self.poly, self.lo, mid, self.multiplicity)

    def refine(self, width) -> AlgebraicNumber:
        """Bisect until the interval is no wider than ``width``."""
        width = Fraction(width)
        x = self
        while x.width() > width:
            x = x.bisect()
        return x

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def __float__(self):
        x = self.refine(Fraction(1, 1 << 60))
        return float((x.lo + x.hi) / 2)

    def decimal(self, digits: int = 15) -> str:
        x = self.refine(Fraction(1, 10 ** (digits + 2)))
        mid = (x.lo + x.hi) / 2
        return f"{float(mid):.{digits}g}" if digits <= 16 else str(mid)

    @cached_property
    def minimal_polynomial(self) -> tuple[int, ...]:
        """Primitive integer minimal polynomial (positive leading coefficient)."""
        if self.is_exact:
            x = self.lo
            return (-x.numerator, x.denominator)
        if len(self.poly) == 2:
            return _positive_lead(self.poly)
        import sympy

        X = sympy.Symbol("x")
        P = sympy.Poly(list(reversed(self.poly)), X)
        _, factors = P.factor_list()
        for g, _mult in factors:
            ints = [int(c) for c in reversed(g.all_coeffs())]
            if eval_sign(ints, self.lo) * eval_sign(ints, self.hi) < 0:
                return _positive_lead(tuple(ints))
        raise AssertionError("no irreducible factor has a root in the isolating interval")

    def canonical(self):
        """Exact rational when the root is rational, else this number on its minimal polynomial."""
        mp = self.minimal_polynomial
        if len(mp) == 2:
            return Fraction(-mp[0], mp[1])
        if mp == self.poly:
            return self
        return AlgebraicNumber(mp, self.lo, self.hi, self.multiplicity)

    def minimal_dpolynomial(self) -> DPolynomial:
        return DPolynomial(self.minimal_polynomial)

    def __repr__(self):
        return f"AlgebraicNumber(root of {DPolynomial(self.poly)} in [{self.lo}, {self.hi}])"

    def __str__(self):
        if self.is_exact:
            return str(self.lo)
        return f"root of {DPolynomial(self.minimal_polynomial)} near {self.decimal(12)}"


def _positive_lead(ints):
    if ints[-1] < 0:
        return type(ints)(-c for c in ints)
    return ints


def isolate_real_roots(
    p: DPolynomial, lo: Fraction | None = None, hi: Fraction | None = None
) -> list[AlgebraicNumber]:
    """Distinct real roots of ``p`` (optionally restricted to ``[lo, hi]``), sorted.

    Each root carries its multiplicity in ``p``.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    roots: list[AlgebraicNumber] = []
    for factor, mult in squarefree_decomposition(p):
        ints = to_integer_coeffs(factor)
        B = Fraction(cauchy_bound(ints))
        a = -B if lo is None else Fraction(lo)
        b = B if hi is None else Fraction(hi)
        for r_lo, r_hi in _isolate_squarefree(ints, a, b):
            roots.append(AlgebraicNumber(tuple(ints), r_lo, r_hi, mult))
    return sort_points(roots)


# -- exact comparison of points ----------------------------------------------


def _has_root_closed(ints: list[int], lo: Fraction, hi: Fraction) -> bool:
    # caller guarantees at most one root of this square-free poly in [lo, hi]
    if len(ints) <= 1:
        return False
    s_lo, s_hi = eval_sign(ints, lo), eval_sign(ints, hi)
    if s_lo == 0 or s_hi == 0:
        return True
    return s_lo != s_hi


def compare(x, y) -> int:
    """Exact three-way comparison of Fractions and :class:`AlgebraicNumber` values."""
    if isinstance(x, AlgebraicNumber) and x.is_exact:
        x = x.lo
    if isinstance(y, AlgebraicNumber) and y.is_exact:
        y = y.lo
    if not isinstance(x, AlgebraicNumber) and not isinstance(y, AlgebraicNumber):
        x, y = Fraction(x), Fraction(y)
        return (x > y) - (x < y)
    if not isinstance(x, AlgebraicNumber):
        return -compare(y, x)
    if not isinstance(y, AlgebraicNumber):
        y = Fraction(y)
        if eval_sign(list(x.poly), y) == 0 and x.lo < y < x.hi:
            return 0
        while True:
            if y < x.lo:
                return 1
            if y > x.hi:
                return -1
            x = x.bisect()
            if x.is_exact:
                return compare(x.lo, y)
    # both algebraic
    g = None
    while True:
        if x.is_exact or y.is_exact:
            return compare(x, y)
        if x.hi < y.lo:
            return -1
        if y.hi < x.lo:
            return 1
        if g is None:
            g = to_integer_coeffs(poly_gcd(DPolynomial(x.poly), DPolynomial(y.poly)))
        if len(g) > 1 and _has_root_closed(g, max(x.lo, y.lo), min(x.hi, y.hi)):
            return 0
        x, y = x.bisect(), y.bisect()


def sort_points(points: list) -> list:
    from functools import cmp_to_key

    return sorted(points, key=cmp_to_key(compare))


def sign_at(p: DPolynomial, x) -> int:
    """Exact sign of ``p`` at a Fraction or :class:`AlgebraicNumber`."""
    ints = to_integer_coeffs(p)
    if not ints:
        return 0
    if isinstance(x, AlgebraicNumber) and x.is_exact:
        x = x.lo
    if not isinstance(x, AlgebraicNumber):
        return eval_sign(ints, Fraction(x))
    g = to_integer_coeffs(poly_gcd(p, DPolynomial(x.poly)))
    if len(g) > 1 and _has_root_closed(g, x.lo, x.hi):
        return 0
    while True:
        s_lo, s_hi = eval_sign(ints, x.lo), eval_sign(ints, x.hi)
        if s_lo != 0 and s_lo == s_hi and count_roots_open(ints, x.lo, x.hi) == 0:
            return s_lo
        x = x.bisect()
        if x.is_exact:
            return eval_sign(ints, x.lo)
