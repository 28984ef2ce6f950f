"""The q-Pochhammer products around (q, q^2; q^3).

Everything is built at an explicit truncation order ``N`` supplied by the
caller; no function here picks an order on its own.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .rings import (
    FORMAL_D,
    POLYNOMIAL,
    RATIONAL,
    DPolynomial,
    IntervalValue,
    QuadraticElement,
    ring_of,
    serialize_value,
)
from .series import TruncatedSeries, series_exp, series_mul

PRODUCT_SPEC_VERSION = 1


@dataclass(frozen=True)
class ProductSpec:
    """Parameters of ``(q^r1, q^r2, ...; q^M)_n ^ d`` truncated at ``N``.

    ``n is None`` stands for the infinite product.  ``d`` is a coefficient
    value, or :data:`~qborwein.rings.FORMAL_D` for the formal exponent.
    """

    N: int
    d: object = Fraction(1)
    n: int | None = None
    residues: tuple[int, ...] = (1, 2)
    modulus: int = 3
    squared: bool = False
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.N < 0:
            raise ValueError(f"truncation order must be >= 0, got {self.N}")
        if any(r < 1 for r in self.residues):
            raise ValueError("residues must be >= 1")
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        if self.n is not None and self.n < 0:
            raise ValueError("n must be >= 0")

    def to_json(self) -> dict:
        out = {
            "residues": list(self.residues),
            "modulus": self.modulus,
            "n": "inf" if self.n is None else self.n,
            "d": "formal" if self.d is FORMAL_D else serialize_value(self.d),
            "N": self.N,
            "version": PRODUCT_SPEC_VERSION,
        }
        if isinstance(self.d, (QuadraticElement, IntervalValue, DPolynomial)):
            out["ring"] = ring_of(self.d).tag
        if self.squared:
            out["squared"] = True
        return out

    def canonical_json(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def pochhammer_finite(s: int, modulus: int, n: int, N: int) -> TruncatedSeries:
    """``prod_{k=0}^{n-1} (1 - q^(s + k*modulus))`` truncated at order ``N``."""
    if s < 1 or modulus < 1:
        raise ValueError("exponent offset and modulus must be positive")
    if n < 0:
        raise ValueError("n must be >= 0")
    f = TruncatedSeries.one(N)
    for k in range(n):
        j = s + k * modulus
        if j > N:
            break
        f = f.mul_binomial_factor(j)
    return f


def borwein_product_finite(n: int, N: int) -> TruncatedSeries:
    """``(q; q^3)_n (q^2; q^3)_n`` truncated at ``N``."""
    f = TruncatedSeries.one(N)
    for k in range(n):
        for s in (1, 2):
            j = s + 3 * k
            if j <= N:
                f = f.mul_binomial_factor(j)
    return f


def borwein_polynomial_degree(n: int) -> int:
    return 3 * n * n


def borwein_product_squared_finite(n: int, N: int) -> TruncatedSeries:
    f = borwein_product_finite(n, N)
    return series_mul(f, f)


def _non3_divisor_sums(N: int) -> list[int]:
    # entry t: sum of divisors j of t with 3 not dividing j
    sig = [0] * (N + 1)
    for j in range(1, N + 1):
        if j % 3:
            for t in range(j, N + 1, j):
                sig[t] += j
    return sig


def borwein_log_series(N: int) -> TruncatedSeries:
    """Logarithm of the infinite product ``prod_{3 !| j} (1 - q^j)`` to order ``N``.

    Assembled straight from ``log(1 - q^j) = -sum_m q^(jm)/m``: coefficient
    ``t`` is ``-sum 1/m`` over ``t = j*m`` with ``3 !| j``.  No series
    logarithm or product is involved.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    cs = [Fraction(0)] * (N + 1)
    for j in range(1, N + 1):
        if j % 3 == 0:
            continue
        for m in range(1, N // j + 1):
            cs[j * m] -= Fraction(1, m)
    return TruncatedSeries(tuple(cs), RATIONAL)


def _exponent_ring(d):
    if d is FORMAL_D or isinstance(d, DPolynomial):
        return POLYNOMIAL
    return ring_of(d)


def borwein_product_fractional(d, N: int) -> TruncatedSeries:
    """``(q, q^2; q^3)_inf ^ d`` to order ``N`` as ``exp(d * L)``.

    ``d`` may be an int/Fraction, a :class:`QuadraticElement`, an
    :class:`IntervalValue`, or ``FORMAL_D`` (coefficients become polynomials
    in d, the ``q^t`` one of degree exactly ``t``).
    """
    if isinstance(d, int):
        d = Fraction(d)
    ring = _exponent_ring(d)
    L = borwein_log_series(N)
    out = series_exp(L, scale=d)
    if out.ring != ring:
        raise TypeError(f"unsupported exponent type {type(d).__name__}")
    return out


def borwein_product_direct(N: int) -> TruncatedSeries:
    """The d=1 infinite product by sparse multiplication of ``(1 - q^j)``, ``3 !| j <= N``."""
    f = TruncatedSeries.one(N)
    for j in range(1, N + 1):
        if j % 3:
            f = f.mul_binomial_factor(j)
    return f


def build_product(spec: ProductSpec) -> TruncatedSeries:
    """Dispatch a :class:`ProductSpec` for the Borwein residues ``(1, 2) mod 3``."""
    if tuple(spec.residues) != (1, 2) or spec.modulus != 3:
        return _generic_product(spec)
    if spec.n is None:
        if spec.squared:
            f = borwein_product_fractional(spec.d, spec.N)
            return series_mul(f, f)
        return borwein_product_fractional(spec.d, spec.N)
    if spec.d != 1:
        raise ValueError("finite products are only built with exponent 1")
    if spec.squared:
        return borwein_product_squared_finite(spec.n, spec.N)
    return borwein_product_finite(spec.n, spec.N)


def _generic_product(spec: ProductSpec) -> TruncatedSeries:
    N = spec.N
    if spec.n is not None:
        if spec.d != 1:
            raise ValueError("finite products are only built with exponent 1")
        f = TruncatedSeries.one(N)
        for s in spec.residues:
            f = series_mul(f, pochhammer_finite(s, spec.modulus, spec.n, N))
        return series_mul(f, f) if spec.squared else f
    cs = [Fraction(0)] * (N + 1)
    for s in spec.residues:
        for j in range(s, N + 1, spec.modulus):
            for m in range(1, N // j + 1):
                cs[j * m] -= Fraction(1, m)
    L = TruncatedSeries(tuple(cs), RATIONAL)
    d = Fraction(spec.d) if isinstance(spec.d, int) else spec.d
    f = series_exp(L, scale=d)
    return series_mul(f, f) if spec.squared else f


# ---------------------------------------------------------------------------
# Jacobi triple product at z = +-1
# ---------------------------------------------------------------------------


@dataclass
class IdentityCheck:
    passed: bool
    order: int
    z: int
    first_mismatch: int | None = None
    product_value: Fraction | None = None
    sum_value: Fraction | None = None

    def to_json(self) -> dict:
        return {
            "version": 1,
            "identity": "jacobi_triple_product",
            "z": self.z,
            "order": self.order,
            "passed": self.passed,
            "first_mismatch": self.first_mismatch,
            "product_value": None if self.product_value is None else str(self.product_value),
            "sum_value": None if self.sum_value is None else str(self.sum_value),
        }


class PreconditionError(ValueError):
    pass


def theta_sum(z: int, N: int, K: int) -> TruncatedSeries:
    """``sum_{k=-K}^{K} z^k q^(k^2)`` truncated at ``N``."""
    cs = [Fraction(0)] * (N + 1)
    for k in range(-K, K + 1):
        e = k * k
        if e <= N:
            cs[e] += Fraction(z) ** k
    return TruncatedSeries(tuple(cs), RATIONAL)


def triple_product_side(z: int, N: int) -> TruncatedSeries:
    """``prod_{n=1}^{ceil(N/2)+1} (1 - q^2n)(1 + z q^(2n-1))(1 + q^(2n-1)/z)`` to order ``N``."""
    f = TruncatedSeries.one(N)
    for n in range(1, math.ceil(N / 2) + 2):
        f = f.mul_binomial_factor(2 * n, 1) if 2 * n <= N else f
        # (1 + z x)(1 + x/z) with z = +-1 is (1 + z x)^2
        for _ in range(2):
            if 2 * n - 1 <= N:
                f = f.mul_binomial_factor(2 * n - 1, -z)
    return f


def jacobi_triple_product_check(N: int, K: int, z: int = 1) -> IdentityCheck:
    if z not in (1, -1):
        raise ValueError("only the z = 1 and z = -1 specializations are supported")
    if (K + 1) ** 2 <= N:
        raise PreconditionError(f"summation bound K={K} too small for order {N}: need (K+1)^2 > N")
    lhs = triple_product_side(z, N)
    rhs = theta_sum(z, N, K)
    for t in range(N + 1):
        if lhs[t] != rhs[t]:
            return IdentityCheck(False, N, z, t, lhs[t], rhs[t])
    return IdentityCheck(True, N, z)
