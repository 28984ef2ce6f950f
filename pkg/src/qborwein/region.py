"""Sign constraints on the exponent d and the region where they all hold.

The coefficient of ``q^t`` in ``(q, q^2; q^3)_inf^d`` is a polynomial in ``d``
of degree ``t``.  Under the (+, -, -) dissection signs, nonnegativity of the
dissected series asks for ``p_t(d) >= 0`` where ``p_t`` is that coefficient
for ``t = 0 mod 3`` and its negative otherwise.  The feasible region at order
``N`` intersects these conditions for ``t = 1..N`` using exact roots only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .qproducts import borwein_product_fractional
from .rings import FORMAL_D, DPolynomial, format_rational
from .roots import (
    AlgebraicNumber,
    compare,
    eval_sign,
    isolate_real_roots,
    sign_at,
    sort_points,
    to_integer_coeffs,
)

Point = Union[Fraction, AlgebraicNumber]
DEFAULT_DOMAIN = (Fraction(0), Fraction(4))
DEFAULT_SYMBOLIC_ORDER = 60
REGION_VERSION = 1


class NotAnEndpoint(ValueError):
    pass


def coefficient_polynomials(N: int) -> list[DPolynomial]:
    """Coefficients ``0..N`` of the formal-d product."""
    return list(borwein_product_fractional(FORMAL_D, N).coeffs)


def coefficient_polynomial(t: int, N: int | None = None) -> DPolynomial:
    if N is None:
        N = t
    if not 0 <= t <= N:
        raise ValueError(f"need 0 <= t <= N, got t={t}, N={N}")
    return coefficient_polynomials(N)[t]


def _adjust(t: int, p: DPolynomial) -> DPolynomial:
    return p if t % 3 == 0 else -p


def sign_adjusted_constraint(t: int, N: int | None = None) -> DPolynomial:
    """``p_t`` with the convention that nonnegativity of the dissection means ``p_t(d) >= 0``."""
    if t < 1:
        raise ValueError("constraints start at t = 1")
    return _adjust(t, coefficient_polynomial(t, N))


def constraint_polynomials(N: int) -> list[DPolynomial]:
    """``[p_1, ..., p_N]`` from a single formal expansion."""
    coeffs = coefficient_polynomials(N)
    return [_adjust(t, coeffs[t]) for t in range(1, N + 1)]


def _as_point(x) -> Point:
    if isinstance(x, AlgebraicNumber):
        return x.lo if x.is_exact else x
    return Fraction(x)


def _separating_rational(x: Point, y: Point) -> Fraction:
    """A rational strictly between ``x < y``."""
    while True:
        xu = x.hi if isinstance(x, AlgebraicNumber) else x
        yl = y.lo if isinstance(y, AlgebraicNumber) else y
        if xu < yl:
            return (xu + yl) / 2
        wx = x.width() if isinstance(x, AlgebraicNumber) else Fraction(0)
        wy = y.width() if isinstance(y, AlgebraicNumber) else Fraction(0)
        if wx >= wy:
            x = _as_point(x.bisect())
        else:
            y = _as_point(y.bisect())


def point_to_json(x: Point) -> dict:
    if isinstance(x, AlgebraicNumber):
        return {
            "type": "algebraic",
            "minpoly": [str(c) for c in x.minimal_polynomial],
            "interval": [format_rational(x.lo), format_rational(x.hi)],
            "approx": x.decimal(15),
        }
    return {"type": "rational", "value": format_rational(x)}


def point_label(x: Point) -> str:
    return str(x)


def _vanishes(p: DPolynomial, x: Point) -> bool:
    if isinstance(x, AlgebraicNumber):
        # exact: the minimal polynomial divides p
        return (p % x.minimal_dpolynomial()).is_zero()
    return eval_sign(to_integer_coeffs(p), x) == 0 if not p.is_zero() else True


@dataclass
class FeasibleRegion:
    intervals: list[tuple[Point, Point]]
    constraint_order: int
    domain: tuple[Fraction, Fraction] = DEFAULT_DOMAIN
    isolated_points: list[Point] = field(default_factory=list)
    constraints: list[DPolynomial] = field(default_factory=list, repr=False)

    def endpoints(self) -> list[Point]:
        out = []
        for lo, hi in self.intervals:
            out.append(lo)
            if compare(lo, hi) != 0:
                out.append(hi)
        return out

    def contains(self, x) -> bool:
        x = _as_point(x)
        for lo, hi in self.intervals:
            if compare(lo, x) <= 0 <= compare(hi, x):
                return True
        return any(compare(p, x) == 0 for p in self.isolated_points)

    def is_subset_of(self, other: FeasibleRegion) -> bool:
        for lo, hi in self.intervals:
            if not any(
                compare(olo, lo) <= 0 and compare(hi, ohi) <= 0 for olo, ohi in other.intervals
            ):
                return False
        return all(other.contains(p) for p in self.isolated_points)

    def binding_constraints(self, boundary) -> list[int]:
        boundary = _as_point(boundary)
        match = next((e for e in self.endpoints() if compare(e, boundary) == 0), None)
        if match is None:
            raise NotAnEndpoint(f"{boundary} is not an endpoint of the region")
        return [t for t, p in enumerate(self.constraints, start=1) if _vanishes(p, match)]

    def binding(self) -> dict[str, list[int]]:
        return {point_label(e): self.binding_constraints(e) for e in self.endpoints()}

    def intersect_interval(self, lo: Fraction, hi: Fraction) -> list[tuple[Point, Point]]:
        out = []
        for a, b in self.intervals:
            left = a if compare(a, lo) > 0 else lo
            right = b if compare(b, hi) < 0 else hi
            if compare(left, right) <= 0:
                out.append((left, right))
        return out

    def gap_report(self, lo=Fraction(1), hi=Fraction(2)) -> dict:
        parts = self.intersect_interval(lo, hi)
        covered = any(compare(a, lo) <= 0 and compare(b, hi) >= 0 for a, b in parts)
        return {
            "interval": [format_rational(lo), format_rational(hi)],
            "feasible_parts": [[point_to_json(a), point_to_json(b)] for a, b in parts],
            "fully_feasible": covered,
        }

    def to_json(self) -> dict:
        return {
            "version": REGION_VERSION,
            "constraint_order": self.constraint_order,
            "domain": [format_rational(self.domain[0]), format_rational(self.domain[1])],
            "intervals": [{"lo": point_to_json(a), "hi": point_to_json(b)} for a, b in self.intervals],
            "isolated_points": [point_to_json(p) for p in self.isolated_points],
            "binding": self.binding(),
            "gap_1_2": self.gap_report(),
        }

    def summary(self) -> str:
        if not self.intervals:
            body = "empty"
        else:
            body = " U ".join(f"[{a}, {b}]" for a, b in self.intervals)
        extra = ""
        if self.isolated_points:
            extra = "; isolated points " + ", ".join(str(p) for p in self.isolated_points)
        return f"order {self.constraint_order}: {body}{extra}"


def _distinct(points: list[Point]) -> list[Point]:
    out: list[Point] = []
    for p in sort_points(points):
        if out and compare(out[-1], p) == 0:
            if isinstance(out[-1], AlgebraicNumber) and not isinstance(p, AlgebraicNumber):
                out[-1] = p
            continue
        out.append(p)
    return out


def _canonical(x: Point) -> Point:
    return x.canonical() if isinstance(x, AlgebraicNumber) else x


def feasible_region(
    N: int,
    domain: tuple = DEFAULT_DOMAIN,
    constraints: list[DPolynomial] | None = None,
) -> FeasibleRegion:
    """Set of ``d`` in ``domain`` with ``p_t(d) >= 0`` for every ``t <= N``.

    Reported as the closure of its interior (a list of closed intervals) plus
    any isolated feasible points.  Cells between consecutive constraint roots
    are classified by one exact rational sample each.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    lo, hi = Fraction(domain[0]), Fraction(domain[1])
    if lo > hi:
        raise ValueError("empty domain")
    if constraints is None:
        constraints = constraint_polynomials(N)
    constraints = constraints[:N]
    ints = [to_integer_coeffs(p) for p in constraints]

    raw: list[Point] = [lo, hi]
    for p in constraints:
        raw.extend(_as_point(r) for r in isolate_real_roots(p, lo, hi))
    pts = _distinct(raw)

    def ok_at_rational(x: Fraction) -> bool:
        return all(eval_sign(c, x) >= 0 for c in ints)

    cells = [ok_at_rational(_separating_rational(a, b)) for a, b in zip(pts, pts[1:])]

    intervals: list[tuple[Point, Point]] = []
    start = None
    for i, ok in enumerate(cells):
        if ok and start is None:
            start = i
        if not ok and start is not None:
            intervals.append((pts[start], pts[i]))
            start = None
    if start is not None:
        intervals.append((pts[start], pts[-1]))

    isolated = []
    for i, p in enumerate(pts):
        left_ok = i > 0 and cells[i - 1]
        right_ok = i < len(cells) and cells[i]
        if left_ok or right_ok:
            continue
        if all(sign_at(c, p) >= 0 for c in constraints):
            isolated.append(p)

    return FeasibleRegion(
        intervals=[(_canonical(a), _canonical(b)) for a, b in intervals],
        constraint_order=N,
        domain=(lo, hi),
        isolated_points=[_canonical(p) for p in isolated],
        constraints=list(constraints),
    )


def binding_constraints(N: int, boundary, region: FeasibleRegion | None = None) -> list[int]:
    """Indices ``t <= N`` whose constraint vanishes at a region endpoint."""
    if region is None:
        region = feasible_region(N)
    return region.binding_constraints(boundary)
