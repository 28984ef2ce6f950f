from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qborwein.rings import DPolynomial
from qborwein.roots import (
    AlgebraicNumber,
    compare,
    count_roots_open,
    eval_sign,
    isolate_real_roots,
    poly_gcd,
    sign_at,
    squarefree_decomposition,
    squarefree_part,
    to_integer_coeffs,
)

F = Fraction
T3 = DPolynomial([2, -9, 1])  # d^2 - 9d + 2


def from_roots(*roots):
    p = DPolynomial([1])
    for r in roots:
        p = p * DPolynomial([-F(r), 1])
    return p


def test_quadratic_roots_and_decimal():
    small, big = isolate_real_roots(T3)
    r = small.refine(F(1, 10**12))
    assert r.width() <= F(1, 10**12)
    # every point of the refined interval truncates to the printed 11 digits
    assert F("0.22799812734") <= r.lo and r.hi < F("0.22799812735")
    assert big.refine(F(1, 10**9)).contains(F("8.7720018726"))
    assert small.minimal_polynomial == (2, -9, 1)


def test_refine_to_1e11_contains_decimal():
    (small, _) = isolate_real_roots(T3)
    assert small.refine(F(1, 10**11)).contains(F("0.22799812734"))


def test_linear_and_no_roots():
    (r,) = isolate_real_roots(DPolynomial([0, 1]))
    assert r.is_exact and r.lo == 0
    assert isolate_real_roots(DPolynomial([1, 0, 1])) == []
    with pytest.raises(ValueError):
        isolate_real_roots(DPolynomial([]))


def test_multiplicities_reported():
    p = from_roots(1, 1, 1, F(1, 2), -2, -2)
    roots = isolate_real_roots(p)
    got = [(r.canonical(), r.multiplicity) for r in roots]
    assert got == [(-2, 2), (F(1, 2), 1), (1, 3)]


def test_squarefree_decomposition():
    p = from_roots(1, 1, 2) * DPolynomial([1, 0, 1])
    parts = squarefree_decomposition(p)
    assert {m for _, m in parts} == {1, 2}
    assert squarefree_part(p).degree == 4
    assert poly_gcd(p, p.derivative()).degree == 1


def test_domain_restriction_includes_endpoints():
    p = from_roots(0, 1, 3)
    roots = isolate_real_roots(p, F(0), F(3))
    assert [r.canonical() for r in roots] == [0, 1, 3]
    assert [r.canonical() for r in isolate_real_roots(p, F(1, 2), F(2))] == [1]


def test_close_roots_separated():
    p = DPolynomial([F(-1), 0, 10**8]) * DPolynomial([F(-1, 10**4) - F(1, 10**9), 1])
    roots = isolate_real_roots(p)
    assert len(roots) == 3
    assert all(compare(a, b) < 0 for a, b in zip(roots, roots[1:]))


def test_compare_and_sign_at():
    small, big = isolate_real_roots(T3)
    assert compare(small, big) < 0
    assert compare(small, F(1, 4)) < 0 and compare(F(1, 5), small) < 0
    # the same number on a different defining polynomial
    other = isolate_real_roots(T3 * DPolynomial([-5, 1]), F(0), F(1))[0]
    assert compare(small, other) == 0
    assert sign_at(T3, small) == 0
    assert sign_at(DPolynomial([F(-1, 4), 1]), small) < 0
    assert sign_at(T3 * DPolynomial([0, 0, 1]), small) == 0


polys = st.lists(st.integers(-20, 20), min_size=2, max_size=7).map(DPolynomial)


@settings(max_examples=60, deadline=None)
@given(polys)
def test_isolation_soundness(p):
    assume(not p.is_zero() and p.degree >= 1)
    sf = to_integer_coeffs(squarefree_part(p))
    roots = isolate_real_roots(p)
    x = sympy.Symbol("x")
    expected = sympy.Poly(list(reversed(to_integer_coeffs(p))), x).count_roots()
    assert len(roots) == len(sympy.Poly(list(reversed(sf)), x).real_roots())
    assert sum(r.multiplicity for r in roots) == expected
    for r in roots:
        if r.is_exact:
            assert eval_sign(sf, r.lo) == 0
            continue
        # exactly one sign change of the square-free part
        assert eval_sign(sf, r.lo) * eval_sign(sf, r.hi) < 0
        assert count_roots_open(sf, r.lo, r.hi) == 1
        half = r.bisect()
        assert half.is_exact or half.width() == r.width() / 2


def test_refinement_halves_width():
    (small, _) = isolate_real_roots(T3)
    x = small
    for _ in range(20):
        nxt = x.bisect()
        assert nxt.width() == x.width() / 2
        x = nxt


def test_rational_algebraic_number():
    x = AlgebraicNumber.rational(F(3, 2))
    assert x.is_exact and x.minimal_polynomial == (-3, 2)
    assert x.canonical() == F(3, 2)
