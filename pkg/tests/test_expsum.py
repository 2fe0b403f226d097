import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from newton_circle.arith import torus_distance
from newton_circle.expsum import (
    PhaseHypothesisError,
    double_sum,
    double_sum_abs,
    sum_integral_gap,
    weyl_sum,
)
from newton_circle.poly import UniPoly, parse_poly, scale


def brute_weyl(xs, N, K=0):
    total = 0j
    for n in range(K + 1, N + 1):
        phase = sum(float(x) * n ** (i + 1) for i, x in enumerate(xs))
        total += cmath.exp(2j * math.pi * phase)
    return total


def test_weyl_examples():
    assert abs(weyl_sum([Fraction(1, 2)], 4).value) < 1e-12
    assert weyl_sum([0, 0], 9).value == 9
    assert abs(weyl_sum([Fraction(1, 3)], 3).value) < 1e-12


def test_weyl_modes():
    assert weyl_sum([Fraction(1, 3), Fraction(1, 5)], 10).mode == "exact"
    assert weyl_sum([0.3], 10).mode == "float"
    assert weyl_sum([Fraction(1, 3)], 10).error_budget == 0.0


def test_weyl_against_brute_force():
    for xs in ([Fraction(2, 7)], [0.137, 0.71], [Fraction(1, 3), 0.5, Fraction(1, 4)]):
        got = weyl_sum(xs, 30)
        want = brute_weyl(xs, 30)
        assert abs(got.value - want) < 1e-9


def test_weyl_range_parameter():
    full = weyl_sum([Fraction(1, 7)], 20)
    head = weyl_sum([Fraction(1, 7)], 12)
    tail = weyl_sum([Fraction(1, 7)], 20, K=12)
    assert abs(full.value - head.value - tail.value) < 1e-12


def test_weyl_validation():
    with pytest.raises(ValueError):
        weyl_sum([0.1] * 9, 10)
    with pytest.raises(ValueError):
        weyl_sum([0.1], 5, K=5)


def test_geometric_bound_rational_linear_phase(rng):
    # |sum| <= 1/dist(xi, Z) for one-dimensional rational phases
    for _ in range(60):
        q = rng.randint(2, 50)
        a = rng.choice([a for a in range(1, q) if math.gcd(a, q) == 1])
        N = rng.randint(1, 10**4)
        value = abs(weyl_sum([Fraction(a, q)], N).value)
        assert value <= 1 / float(torus_distance(Fraction(a, q))) + 1e-9


def test_double_sum_examples():
    zero = scale(parse_poly("m1*m2"), 0)
    assert double_sum(zero, 0, 3, 0, 5).value == 15
    half = scale(parse_poly("m1*m2"), Fraction(1, 2))
    assert abs(double_sum(half, 0, 2, 0, 2).value - 2) < 1e-12
    integer = scale(parse_poly("m1^2*m2 + 3*m1"), 1)
    assert double_sum(integer, 0, 4, 0, 6).value == pytest.approx(24)


def test_double_sum_against_brute_force(rng):
    P = parse_poly("2*m1^2*m2 - m1*m2^3")
    for xi in (Fraction(3, 7), 0.318):
        Q = scale(P, xi)
        got = double_sum(Q, 1, 6, 0, 5).value
        want = 0j
        for m1 in range(2, 7):
            for m2 in range(1, 6):
                want += cmath.exp(2j * math.pi * float(xi) * (2 * m1**2 * m2 - m1 * m2**3))
        assert abs(got - want) < 1e-9


def test_double_sum_conjugation():
    P = parse_poly("m1^2*m2^3 + m1*m2")
    pos = double_sum(scale(P, Fraction(2, 7)), 0, 5, 0, 5).value
    neg = double_sum(scale(P, Fraction(-2, 7)), 0, 5, 0, 5).value
    assert neg == pytest.approx(pos.conjugate(), abs=1e-12)


def test_double_sum_range_additivity():
    Q = scale(parse_poly("m1*m2^2"), Fraction(1, 5))
    whole = double_sum(Q, 0, 9, 0, 4).value
    split = double_sum(Q, 0, 6, 0, 4).value + double_sum(Q, 6, 9, 0, 4).value
    assert abs(whole - split) < 1e-12
    Qf = scale(parse_poly("m1*m2^2"), 0.2137)
    whole = double_sum(Qf, 0, 9, 0, 4).value
    split = double_sum(Qf, 0, 6, 0, 4).value + double_sum(Qf, 6, 9, 0, 4).value
    assert abs(whole - split) < 1e-10


def test_scale_periodicity_exact():
    P = parse_poly("m1^3*m2 + m1*m2^3")
    a = double_sum(scale(P, Fraction(2, 5)), 0, 6, 0, 6).value
    b = double_sum(scale(P, Fraction(2, 5) + 1), 0, 6, 0, 6).value
    assert a == b


def test_partitioned_summation_matches_sequential():
    Q = scale(parse_poly("m1^2*m2"), Fraction(3, 11))
    base = double_sum(Q, 0, 40, 0, 17, workers=1).value
    for w in (2, 3, 5):
        assert abs(double_sum(Q, 0, 40, 0, 17, workers=w).value - base) < 1e-12
    # bit-reproducible for a fixed worker count
    assert double_sum(Q, 0, 40, 0, 17, workers=3).value == double_sum(
        Q, 0, 40, 0, 17, workers=3).value


def test_weyl_partitioned_matches_sequential():
    xs = [Fraction(1, 7), Fraction(3, 5)]
    base = weyl_sum(xs, 101, workers=1).value
    for w in (2, 4, 7):
        assert abs(weyl_sum(xs, 101, workers=w).value - base) < 1e-12


def test_double_sum_abs_examples():
    zero = scale(parse_poly("m1*m2"), 0)
    assert double_sum_abs(zero, 0, 3, 0, 5) == pytest.approx(15)
    half = scale(parse_poly("m1*m2"), Fraction(1, 2))
    assert double_sum_abs(half, 0, 2, 0, 2, outer_axis=1) == pytest.approx(2)


def test_triangle_domination(rng):
    for _ in range(20):
        P = parse_poly("m1^2*m2 + m1*m2^2")
        xi = Fraction(rng.randint(1, 30), 31)
        Q = scale(P, xi)
        s = abs(double_sum(Q, 0, 6, 0, 7).value)
        assert s <= double_sum_abs(Q, 0, 6, 0, 7, 1) + 1e-10
        assert s <= double_sum_abs(Q, 0, 6, 0, 7, 2) + 1e-10


def test_modulus_within_budget_invariant():
    v = weyl_sum([0.123456], 5000)
    assert abs(v.value) <= v.term_count + v.error_budget


def test_sum_integral_constant_phase():
    assert sum_integral_gap(UniPoly(()), 0, 7.5) == pytest.approx(0.5)


def test_sum_integral_full_periods():
    assert sum_integral_gap(UniPoly((0, Fraction(1, 4))), 0, 8) < 1e-10
    assert sum_integral_gap(UniPoly((0, 0.1)), 0, 10) <= 3.0


def test_sum_integral_quadratic_phase():
    # slowly varying quadratic phase stays under a small absolute constant
    phase = UniPoly((0, 0.001, 0.00001))
    assert sum_integral_gap(phase, 0, 100) <= 3.0


def test_sum_integral_hypothesis_errors():
    with pytest.raises(PhaseHypothesisError):
        sum_integral_gap(UniPoly((0, 2)), 0, 5)  # derivative 2 > 1/2
    with pytest.raises(PhaseHypothesisError):
        sum_integral_gap(UniPoly((0, -0.4, 0, 0.002)), -10, 10)  # non-monotone derivative


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=40), st.integers(min_value=1, max_value=40),
       st.fractions(min_value=0, max_value=1, max_denominator=64))
def test_double_sum_modulus_bound(m1, m2, xi):
    v = double_sum(scale(parse_poly("m1*m2"), xi), 0, m1, 0, m2)
    assert abs(v.value) <= v.term_count + 1e-9
