"""Exact truncated q-series for fractional powers of (q, q^2; q^3)_inf."""

from .dissection import Dissection3, Status, VerificationReport, dissect, verify_finite_borwein, verify_fractional, verify_nonnegative
from .qproducts import (
    ProductSpec,
    borwein_log_series,
    borwein_product_finite,
    borwein_product_fractional,
    borwein_product_squared_finite,
    jacobi_triple_product_check,
    pochhammer_finite,
)
from .region import FeasibleRegion, binding_constraints, coefficient_polynomial, feasible_region, sign_adjusted_constraint
from .rings import (
    CRITICAL_EXPONENT,
    FORMAL_D,
    DPolynomial,
    IntervalValue,
    QuadraticElement,
    Sign,
    poly_evaluate,
    ring_sign,
)
from .roots import AlgebraicNumber, isolate_real_roots
from .series import TruncatedSeries, series_exp, series_log, series_mul, series_pow_real

__version__ = "0.1.0"
