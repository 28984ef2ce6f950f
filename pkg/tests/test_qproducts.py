from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rationals
from qborwein.qproducts import (
    PreconditionError,
    ProductSpec,
    borwein_log_series,
    borwein_polynomial_degree,
    borwein_product_direct,
    borwein_product_finite,
    borwein_product_fractional,
    borwein_product_squared_finite,
    build_product,
    jacobi_triple_product_check,
    pochhammer_finite,
)
from qborwein.rings import CRITICAL_EXPONENT, FORMAL_D, DPolynomial, QuadraticElement
from qborwein.series import series_pow_real

F = Fraction


def expand_polynomial(factors, N):
    """Oracle: multiply integer polynomials ``1 - q^j`` out in full, then cut."""
    q = sympy.Symbol("q")
    expr = sympy.Integer(1)
    for j in factors:
        expr *= 1 - q**j
    poly = sympy.Poly(sympy.expand(expr), q)
    return [int(poly.coeff_monomial(q**k)) for k in range(N + 1)]


def non3_factors(n):
    return [s + 3 * k for k in range(n) for s in (1, 2)]


# -- finite products -------------------------------------------------------------


def test_pochhammer_examples():
    assert list(pochhammer_finite(1, 3, 2, 6)) == [1, -1, 0, 0, -1, 1, 0]
    assert list(pochhammer_finite(2, 3, 2, 10)) == [1, 0, -1, 0, 0, -1, 0, 1, 0, 0, 0]
    assert list(pochhammer_finite(2, 3, 0, 4)) == [1, 0, 0, 0, 0]
    with pytest.raises(ValueError):
        pochhammer_finite(0, 3, 1, 4)


def test_finite_borwein_small_n():
    assert list(borwein_product_finite(1, 3)) == [1, -1, -1, 1]
    assert list(borwein_product_finite(0, 5)) == [1, 0, 0, 0, 0, 0]
    n2 = borwein_product_finite(2, 12)
    assert list(n2) == [1, -1, -1, 1, -1, 0, 2, 0, -1, 1, -1, -1, 1]
    assert list(n2) == expand_polynomial([1, 2, 4, 5], 12)
    assert n2[12] == 1 and borwein_polynomial_degree(2) == 12


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_finite_borwein_matches_sympy_expansion(n):
    N = borwein_polynomial_degree(n) + 2
    assert list(borwein_product_finite(n, N)) == expand_polynomial(non3_factors(n), N)


def test_squared_finite():
    assert list(borwein_product_squared_finite(1, 6)) == [1, -2, -1, 4, -1, -2, 1]
    assert list(borwein_product_squared_finite(0, 3)) == [1, 0, 0, 0]
    assert borwein_product_squared_finite(2, 12)[2] == -1


# -- the infinite product ----------------------------------------------------------


def test_log_series_matches_divisor_oracle():
    N = 40
    L = borwein_log_series(N)
    for t in range(1, N + 1):
        sigma = sum(j for j in range(1, t + 1) if t % j == 0 and j % 3)
        assert L[t] == F(-sigma, t)
    assert list(L)[:7] == [0, -1, F(-3, 2), F(-1, 3), F(-7, 4), F(-6, 5), F(-1, 2)]


def test_fractional_d1_equals_direct_product():
    N = 7
    expected = expand_polynomial([j for j in range(1, N + 1) if j % 3], N)
    assert list(borwein_product_fractional(1, N)) == expected
    assert list(borwein_product_direct(N)) == expected


def test_fractional_d1_large_order():
    assert borwein_product_fractional(1, 120) == borwein_product_direct(120)


def test_fractional_d0_is_one():
    assert list(borwein_product_fractional(0, 9)) == [1] + [0] * 9


def test_fractional_integer_powers():
    N = 30
    base = borwein_product_direct(N)
    for k in (2, 3):
        assert borwein_product_fractional(k, N) == series_pow_real(base, k)


def test_formal_coefficients():
    g = borwein_product_fractional(FORMAL_D, 6)
    assert g[0] == DPolynomial([1])
    assert g[1] == -FORMAL_D
    assert g[3] == DPolynomial([0, F(-1, 3), F(3, 2), F(-1, 6)])
    for t in range(7):
        assert g[t].degree == t


def test_formal_coefficients_against_sympy():
    N = 6
    d, q = sympy.symbols("d q")
    prod = sympy.Integer(1)
    for j in range(1, N + 1):
        if j % 3:
            prod *= 1 - q**j
    expansion = sympy.series(sympy.exp(d * sympy.log(prod)), q, 0, N + 1).removeO()
    g = borwein_product_fractional(FORMAL_D, N)
    for t in range(N + 1):
        want = sympy.Poly(sympy.expand(expansion).coeff(q, t), d)
        got = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * d**i
                             for i, c in enumerate(g[t].coeffs)), d)
        assert want == got


def test_quadratic_exponent():
    g = borwein_product_fractional(CRITICAL_EXPONENT, 5)
    assert g[1] == -CRITICAL_EXPONENT
    # the q^3 coefficient vanishes at the boundary exponent
    assert g[3] == 0
    assert isinstance(g[4], QuadraticElement)


def test_stabilization_through_3n():
    for n in (1, 3, 7):
        N = 3 * n
        assert list(borwein_product_finite(n, N)) == list(borwein_product_fractional(1, N))


@settings(max_examples=10, deadline=None)
@given(rationals)
def test_formal_evaluation_commutes_with_numeric(d0):
    N = 12
    formal = borwein_product_fractional(FORMAL_D, N)
    numeric = borwein_product_fractional(d0, N)
    assert all(formal[t](d0) == numeric[t] for t in range(N + 1))


# -- spec / dispatch -----------------------------------------------------------------


def test_product_spec_json():
    spec = ProductSpec(N=10, d=F(1, 2))
    assert spec.to_json() == {
        "residues": [1, 2], "modulus": 3, "n": "inf", "d": "1/2", "N": 10, "version": 1,
    }
    assert ProductSpec(N=4, d=CRITICAL_EXPONENT).to_json()["ring"] == "quadratic"
    assert ProductSpec(N=4, n=2, squared=True).to_json()["squared"] is True
    assert ProductSpec(N=4).canonical_json() == ProductSpec(N=4, d=F(1)).canonical_json()
    with pytest.raises(ValueError):
        ProductSpec(N=-1)


def test_build_product_dispatch():
    assert build_product(ProductSpec(N=12, n=2)) == borwein_product_finite(2, 12)
    assert build_product(ProductSpec(N=12, n=2, squared=True)) == borwein_product_squared_finite(2, 12)
    assert build_product(ProductSpec(N=20, d=F(1, 3))) == borwein_product_fractional(F(1, 3), 20)
    with pytest.raises(ValueError):
        build_product(ProductSpec(N=5, n=2, d=F(1, 2)))


def test_generic_residues_match_pochhammer():
    # (q; q^4)_inf truncated, against direct factors 1, 5, 9, ...
    N = 20
    got = build_product(ProductSpec(N=N, residues=(1,), modulus=4))
    assert list(got) == expand_polynomial(range(1, N + 1, 4), N)
    got = build_product(ProductSpec(N=N, n=3, residues=(1, 3), modulus=4))
    assert list(got) == expand_polynomial([1, 5, 9, 3, 7, 11], N)


# -- Jacobi triple product -------------------------------------------------------------


@pytest.mark.parametrize("z", [1, -1])
def test_jacobi_triple_product(z):
    check = jacobi_triple_product_check(50, 7, z)
    assert check.passed and check.first_mismatch is None
    assert check.to_json()["passed"] is True


def test_jacobi_precondition():
    with pytest.raises(PreconditionError):
        jacobi_triple_product_check(16, 3)
    with pytest.raises(ValueError):
        jacobi_triple_product_check(10, 5, z=2)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 60), st.sampled_from([1, -1]))
def test_jacobi_any_order(N, z):
    K = int(N**0.5) + 1
    assert jacobi_triple_product_check(N, K, z).passed
