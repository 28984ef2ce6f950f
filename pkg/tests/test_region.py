import json
import random
from fractions import Fraction

import pytest

from qborwein.dissection import Dissection3
from qborwein.qproducts import borwein_product_fractional
from qborwein.rings import CRITICAL_EXPONENT, FORMAL_D, DPolynomial
from qborwein.region import (
    NotAnEndpoint,
    binding_constraints,
    coefficient_polynomial,
    constraint_polynomials,
    feasible_region,
    sign_adjusted_constraint,
)
from qborwein.roots import AlgebraicNumber, compare, eval_sign, to_integer_coeffs

F = Fraction
SAMPLES = [F(23, 100), F(1, 2), F(1), F(2), F(5, 2), F(3)]
CRITICAL_EXPONENT_POINT = AlgebraicNumber((2, -9, 1), F(0), F(1, 2))


def test_constraint_examples():
    assert sign_adjusted_constraint(1) == FORMAL_D
    assert sign_adjusted_constraint(2) == DPolynomial([0, F(3, 2), F(-1, 2)])
    assert sign_adjusted_constraint(3) == DPolynomial([0, F(-1, 3), F(3, 2), F(-1, 6)])
    assert coefficient_polynomial(1) == -FORMAL_D
    with pytest.raises(ValueError):
        sign_adjusted_constraint(0)


def test_constraints_share_one_expansion():
    assert constraint_polynomials(8)[6] == sign_adjusted_constraint(7, 8)


def test_region_n1():
    r = feasible_region(1)
    assert r.intervals == [(0, 4)]
    assert r.isolated_points == []


def test_region_n3():
    r = feasible_region(3)
    ((lo, hi),) = r.intervals
    assert isinstance(lo, AlgebraicNumber)
    assert lo.minimal_polynomial == (2, -9, 1)
    assert compare(lo, CRITICAL_EXPONENT_POINT) == 0
    assert hi == 3
    # d = 0 satisfies every constraint but is cut off from the interval
    assert r.isolated_points == [0]
    assert r.binding_constraints(lo) == [3]
    assert r.binding_constraints(F(3)) == [2]


def test_region_n2_binding_at_zero():
    r = feasible_region(2)
    assert r.intervals == [(0, 3)]
    assert binding_constraints(2, F(0), r) == [1, 2]


def test_binding_needs_endpoint():
    r = feasible_region(3)
    with pytest.raises(NotAnEndpoint):
        r.binding_constraints(F(1))


def test_region_n6_splits_at_gap():
    r = feasible_region(6)
    assert len(r.intervals) == 2
    (a, b), (c, e) = r.intervals
    assert compare(a, CRITICAL_EXPONENT_POINT) == 0
    assert (b, c, e) == (1, 2, 3)
    assert r.binding_constraints(F(1)) == [5]
    assert not r.gap_report()["fully_feasible"]


def test_shrinking_chain():
    regions = [feasible_region(N) for N in range(1, 16)]
    for smaller, larger in zip(regions[1:], regions):
        assert smaller.is_subset_of(larger)


def test_samples_contained_for_small_orders():
    for N in range(1, 25):
        r = feasible_region(N)
        assert all(r.contains(s) for s in SAMPLES), N


def test_cells_agree_with_pointwise_evaluation():
    N = 12
    r = feasible_region(N)
    ints = [to_integer_coeffs(p) for p in constraint_polynomials(N)]
    for k in range(0, 401):
        x = F(k, 100)
        assert r.contains(x) == all(eval_sign(c, x) >= 0 for c in ints), x


def test_exactness_bridge():
    rng = random.Random(11)
    N = 20
    constraints = constraint_polynomials(N)
    for _ in range(10):
        d0 = F(rng.randint(0, 400), rng.randint(1, 100))
        parts = Dissection3.of(borwein_product_fractional(d0, N))
        for t, p in enumerate(constraints, start=1):
            entry = parts.components["ABC"[t % 3]][t // 3]
            assert eval_sign(to_integer_coeffs(p), d0) == (entry > 0) - (entry < 0)


def test_region_json():
    obj = feasible_region(3).to_json()
    json.dumps(obj)
    assert obj["constraint_order"] == 3
    lo = obj["intervals"][0]["lo"]
    assert lo["type"] == "algebraic" and lo["minpoly"] == ["2", "-9", "1"]
    a, b = (F(x) for x in lo["interval"])
    assert a < F("0.228") < b
    assert obj["intervals"][0]["hi"] == {"type": "rational", "value": "3"}
    assert obj["binding"][str(feasible_region(3).intervals[0][0])] == [3]
    assert obj["binding"]["3"] == [2]


def test_domain_option():
    r = feasible_region(3, domain=(F(-1), F(4)))
    assert r.intervals[0][1] == 3
    assert not r.contains(F(-1, 2))


def test_critical_exponent_is_in_region():
    assert feasible_region(9).contains(CRITICAL_EXPONENT_POINT)
    assert CRITICAL_EXPONENT * CRITICAL_EXPONENT - 9 * CRITICAL_EXPONENT + 2 == 0
