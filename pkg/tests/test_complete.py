import math
from fractions import Fraction

import pytest

from newton_circle.complete import (
    WorkCapExceeded,
    averaged_partial,
    dyadic_envelope,
    gauss_sum,
    gauss_sum_sweep,
    moment_curve_counts,
    moment_identity_gap,
    partial_gauss,
    vinogradov_count,
    vinogradov_diagonal,
    vinogradov_table,
)
from newton_circle.expsum import double_sum
from newton_circle.poly import parse_poly, scale


def test_gauss_examples():
    assert gauss_sum(parse_poly("m1*m2"), Fraction(1, 3)) == pytest.approx(1 / 3)
    assert gauss_sum(parse_poly("m1^2*m2 - m2"), Fraction(0, 1)) == 1
    assert gauss_sum(parse_poly("m1^2*m2^3"), Fraction(1, 2)) == pytest.approx(1 / 2)


def test_partial_gauss_examples():
    P = parse_poly("m1*m2")
    assert partial_gauss(P, Fraction(0, 1), 5, 1) == 1
    assert partial_gauss(P, Fraction(1, 3), 3, 1) == pytest.approx(1)
    assert abs(partial_gauss(P, Fraction(1, 3), 1, 1)) < 1e-12


def test_averaged_partial_examples():
    P = parse_poly("m1*m2")
    assert averaged_partial(P, Fraction(1, 3), 3, 1) == pytest.approx(1 / 3)
    assert averaged_partial(P, Fraction(0, 1), 7, 1) == pytest.approx(1)
    assert averaged_partial(P, Fraction(1, 3), 6, 1) == pytest.approx(1 / 3)


def test_gauss_modulus_and_periodicity(rng):
    P = parse_poly("m1^2*m2^3 + 2*m1*m2")
    for _ in range(20):
        q = rng.randint(1, 30)
        a = rng.choice([a for a in range(q) if math.gcd(a, q) == 1] or [0])
        g = gauss_sum(P, Fraction(a, q))
        assert abs(g) <= 1 + 1e-12
        shifted = gauss_sum(P, Fraction(a % q, q))
        assert g == pytest.approx(shifted)


def test_gauss_equals_double_sum(rng):
    P = parse_poly("m1^2*m2^3")
    for q in (1, 2, 3, 5, 8, 12, 24):
        a = 1 if q > 1 else 0
        lhs = gauss_sum(P, Fraction(a, q)) * q * q
        rhs = double_sum(scale(P, Fraction(a, q)), 0, q, 0, q).value
        assert lhs == pytest.approx(rhs, abs=1e-10 * q * q)


def test_sweep_agrees_with_direct(rng):
    P = parse_poly("2*m1*m2 - m2^4")
    rows = gauss_sum_sweep(P, range(1, 25))
    for row in rows:
        q = row["q"]
        direct = max(
            abs(gauss_sum(P, Fraction(a, q)))
            for a in range(q) if math.gcd(a, q) == 1
        )
        assert row["max_abs_G"] == pytest.approx(direct, abs=1e-10)
        expected_count = 1 if q == 1 else sum(1 for a in range(1, q) if math.gcd(a, q) == 1)
        assert row["a_count"] == expected_count


def test_moment_counts_base_cases():
    counts = moment_curve_counts(1, 2, 5)
    assert counts == {(x, x * x): 1 for x in range(1, 6)}
    assert sum(moment_curve_counts(3, 2, 4).values()) == 4**3


def test_count_examples():
    assert vinogradov_count(1, 2, 5, (0, 0)).count == 5
    assert vinogradov_count(2, 2, 3, (0, 0)).count == 15
    for lam in range(-8, 9):
        assert vinogradov_count(1, 1, 9, (lam,)).count == max(0, 9 - abs(lam))


def test_count_brute_force_small():
    # full enumeration over [N]^4 for the two-equation system
    N, s, k = 5, 2, 2
    table = {}
    for x1 in range(1, N + 1):
        for x2 in range(1, N + 1):
            for y1 in range(1, N + 1):
                for y2 in range(1, N + 1):
                    key = (x1 + x2 - y1 - y2, x1**2 + x2**2 - y1**2 - y2**2)
                    table[key] = table.get(key, 0) + 1
    assert table == vinogradov_table(s, k, N)


def test_diagonal_formula():
    for N in range(2, 30):
        assert vinogradov_diagonal(2, 2, N) == 2 * N * N - N


def test_table_invariants():
    for s, k, N in [(2, 2, 9), (3, 2, 6), (2, 3, 5)]:
        table = vinogradov_table(s, k, N)
        diag = table[(0,) * k]
        assert sum(table.values()) == N ** (2 * s)
        assert all(table[lam] == table[tuple(-x for x in lam)] for lam in table)
        assert all(v <= diag for v in table.values())
        assert diag >= N**s
        assert all(
            abs(lam[i]) <= s * N ** (i + 1) for lam in table for i in range(k)
        )


def test_count_outside_support_is_zero():
    assert vinogradov_count(2, 2, 5, (100, 0)).count == 0


def test_work_cap():
    with pytest.raises(WorkCapExceeded):
        vinogradov_count(6, 3, 200, (0, 0, 0), work_cap=10**4)


def test_moment_identity_examples():
    assert moment_identity_gap(2, 2, 6, [Fraction(0), Fraction(0)]) == 0.0
    for xi in (0.21, 0.73):
        gap = moment_identity_gap(1, 1, 16, [xi])
        assert gap <= 1e-9 * 16**2
    gap = moment_identity_gap(2, 2, 8, [0.511, 0.207])
    assert gap <= 1e-8 * 8**4


def test_envelope_row_shape():
    rows = dyadic_envelope(parse_poly("m1*m2"), (2, 4))
    assert [r["Q"] for r in rows] == [2, 4]
    assert all(0 <= r["envelope"] <= 1 for r in rows)


def test_fitted_decay_exponent_is_positive():
    from newton_circle.complete import fitted_decay_exponent

    # decay exists for non-degenerate polynomials; the rate is only reported
    d_hat = fitted_decay_exponent(parse_poly("m1^2*m2^3"), q_max=100)
    assert 0.1 < d_hat < 2.5
    d_mixed = fitted_decay_exponent(parse_poly("m1*m2"), q_max=100)
    assert d_mixed > 0.5
