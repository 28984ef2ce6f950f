"""m-dissections of series and coefficient nonnegativity verdicts."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .qproducts import (
    ProductSpec,
    borwein_polynomial_degree,
    borwein_product_fractional,
    build_product,
)
from .rings import (
    IntervalValue,
    PolynomialRing,
    QuadraticElement,
    Sign,
    UnsupportedQuery,
    is_certainly_nonnegative,
    ring_sign,
    ring_to_json,
    serialize_value,
)
from .series import TruncatedSeries, series_inflate

BORWEIN_SIGNS = (1, -1, -1)
COMPONENT_NAMES = ("A", "B", "C")
REPORT_VERSION = 1


def dissect(f: TruncatedSeries, m: int, sign_pattern: Sequence[int]) -> list[TruncatedSeries]:
    """Split ``f`` by exponent residue mod ``m``.

    Component ``r`` holds ``sign_pattern[r] * c_{m k + r}`` at index ``k``, so
    ``f = sum_r sign_pattern[r] q^r component_r(q^m)``.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if len(sign_pattern) != m or any(s not in (1, -1) for s in sign_pattern):
        raise ValueError("sign pattern must hold m entries of +1/-1")
    parts = []
    for r, s in enumerate(sign_pattern):
        cs = f.coeffs[r::m]
        if s == -1:
            cs = tuple(-c for c in cs)
        parts.append(TruncatedSeries(tuple(cs), f.ring))
    return parts


def reassemble(parts: Sequence[TruncatedSeries], sign_pattern: Sequence[int], order: int) -> TruncatedSeries:
    """Inverse of :func:`dissect` up to ``order``."""
    m = len(parts)
    ring = parts[0].ring
    out = [ring.zero()] * (order + 1)
    for r, (part, s) in enumerate(zip(parts, sign_pattern)):
        if part.order < 0:
            continue
        inflated = series_inflate(part, m)
        for k, c in enumerate(inflated.coeffs):
            t = k + r
            if t <= order:
                out[t] = out[t] + c if s == 1 else out[t] - c
    return TruncatedSeries(tuple(out), ring)


@dataclass(frozen=True)
class Dissection3:
    A: TruncatedSeries
    B: TruncatedSeries
    C: TruncatedSeries
    source_order: int

    @classmethod
    def of(cls, f: TruncatedSeries) -> Dissection3:
        A, B, C = dissect(f, 3, BORWEIN_SIGNS)
        return cls(A, B, C, f.order)

    @property
    def components(self) -> dict[str, TruncatedSeries]:
        return {"A": self.A, "B": self.B, "C": self.C}

    def reassemble(self) -> TruncatedSeries:
        return reassemble([self.A, self.B, self.C], BORWEIN_SIGNS, self.source_order)


class Status(str, enum.Enum):
    VERIFIED = "verified-nonnegative"
    VIOLATION = "violation"
    INCONCLUSIVE = "inconclusive"

    @property
    def exit_code(self) -> int:
        return {Status.VERIFIED: 0, Status.VIOLATION: 1, Status.INCONCLUSIVE: 2}[self]

    @property
    def severity(self) -> int:
        return {Status.VERIFIED: 0, Status.INCONCLUSIVE: 1, Status.VIOLATION: 2}[self]


def worst_status(statuses) -> Status:
    return max(statuses, key=lambda s: s.severity, default=Status.VERIFIED)


@dataclass
class ComponentVerdict:
    first_violation: int | None = None
    witness: object = None
    first_unknown: int | None = None
    length: int = 0

    def to_json(self) -> dict:
        out = {
            "first_violation": self.first_violation,
            "witness": None if self.witness is None else serialize_value(self.witness),
        }
        if self.first_unknown is not None:
            out["first_unknown"] = self.first_unknown
        return out


@dataclass
class VerificationReport:
    status: Status
    components: dict[str, ComponentVerdict]
    checked_order: int
    ring: object
    params: dict = field(default_factory=dict)
    research_finding: bool = False

    @property
    def exit_code(self) -> int:
        return self.status.exit_code

    def to_json(self) -> dict:
        ring = ring_to_json(self.ring)
        out = {
            "version": REPORT_VERSION,
            "status": self.status.value,
            "params": self.params,
            "checked_order": self.checked_order,
            "ring": ring["tag"],
            "components": {k: v.to_json() for k, v in self.components.items()},
        }
        if "bits" in ring:
            out["bits"] = ring["bits"]
        if self.research_finding:
            out["research_finding"] = True
        return out

    def summary(self) -> str:
        parts = [f"{self.status.value} (order {self.checked_order}, ring {self.ring.tag})"]
        for name, v in self.components.items():
            if v.first_violation is not None:
                parts.append(f"{name}[{v.first_violation}] = {v.witness}")
            elif v.first_unknown is not None:
                parts.append(f"{name}[{v.first_unknown}] sign unknown")
        return "; ".join(parts)


def _scan_component(part: TruncatedSeries) -> ComponentVerdict:
    verdict = ComponentVerdict(length=len(part))
    for k, c in enumerate(part.coeffs):
        s = ring_sign(c)
        if s is Sign.NEGATIVE:
            verdict.first_violation = k
            verdict.witness = c
            return verdict
        if verdict.first_unknown is None and not is_certainly_nonnegative(c):
            verdict.first_unknown = k
    return verdict


def verify_nonnegative(components: Dissection3, params: dict | None = None) -> VerificationReport:
    """Scan every coefficient of A, B, C for a certainly-negative entry."""
    ring = components.A.ring
    if isinstance(ring, PolynomialRing):
        raise UnsupportedQuery("coefficients are polynomials in d; use the region computation")
    verdicts = {name: _scan_component(part) for name, part in components.components.items()}
    if any(v.first_violation is not None for v in verdicts.values()):
        status = Status.VIOLATION
    elif any(v.first_unknown is not None for v in verdicts.values()):
        status = Status.INCONCLUSIVE
    else:
        status = Status.VERIFIED
    return VerificationReport(status, verdicts, components.source_order, ring, dict(params or {}))


def verify_series(f: TruncatedSeries, params: dict | None = None) -> VerificationReport:
    return verify_nonnegative(Dissection3.of(f), params)


def interval_exponent(d, bits: int) -> IntervalValue:
    """Enclose an exact or interval exponent at ``bits`` of precision."""
    if isinstance(d, IntervalValue):
        return IntervalValue(d.lo, d.hi, bits)
    if isinstance(d, QuadraticElement):
        return IntervalValue.from_quadratic(d, bits)
    return IntervalValue.from_rational(d, bits)


def verify_fractional(d, N: int, bits: int | None = None, max_bits: int = 1024) -> VerificationReport:
    """Build ``(q, q^2; q^3)_inf^d`` to order ``N``, dissect, and verify.

    ``bits`` selects the interval ring; an inconclusive interval verdict is
    retried once at doubled precision (capped at ``max_bits``).
    """

    def run(value):
        spec = ProductSpec(N=N, d=value)
        return verify_series(borwein_product_fractional(value, N), spec.to_json())

    if bits is None and not isinstance(d, IntervalValue):
        return run(d)
    if bits is None:
        bits = d.bits
    report = run(interval_exponent(d, bits))
    if report.status is Status.INCONCLUSIVE and bits < max_bits:
        report = run(interval_exponent(d, min(2 * bits, max_bits)))
    return report


def verify_finite_borwein(n: int, squared: bool = False) -> VerificationReport:
    """Dissect ``(q, q^2; q^3)_n`` (or its square) at its full polynomial degree."""
    degree = borwein_polynomial_degree(n) * (2 if squared else 1)
    # keep A, B, C nonempty even for the constant polynomial
    N = max(degree, 2)
    spec = ProductSpec(N=N, n=n, squared=squared)
    report = verify_series(build_product(spec), spec.to_json())
    if squared and report.status is Status.VIOLATION:
        report.research_finding = True
    return report
