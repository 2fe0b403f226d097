import math
from fractions import Fraction

import pytest

from newton_circle.iw import (
    ConfigurationError,
    EnumerationCapError,
    IWParams,
    build_p_le,
    build_sigma,
    lcm_log2,
    sigma_fractions,
    sigma_new,
    verify_iw_properties,
)


def test_params_derived_quantities():
    p = IWParams(rho=Fraction(1, 2), l=2)
    assert (p.D, p.N0, p.Q0) == (5, 2, 32)
    p = IWParams(rho=Fraction(1, 4), l=3)
    assert p.D == 9
    assert p.N0 == 2
    assert p.Q0 == 2**9


def test_params_invariants():
    for rho in (Fraction(1, 2), Fraction(1, 4), Fraction(2, 3), Fraction(99, 100)):
        for l in range(5):
            p = IWParams(rho=rho, l=l)
            assert p.D >= 3
            assert p.N0 >= 2


def test_params_validation():
    with pytest.raises(ConfigurationError):
        IWParams(rho=Fraction(3, 2), l=1)
    with pytest.raises(ConfigurationError):
        IWParams(rho=Fraction(1, 2), l=12, enumeration_cap=100)


def test_level0_denominators():
    sets = build_p_le(IWParams(rho=Fraction(1, 2), l=0))
    assert sets.p_le == (1, 2, 4, 8, 16, 32)
    assert not sets.truncated


def test_level2_denominators():
    sets = build_p_le(IWParams(rho=Fraction(1, 2), l=2))
    divisors = {1, 2, 4, 8, 16, 32}
    products = {1, 3, 9, 27, 81, 243}
    expected = sorted({d * w for d in divisors for w in products})
    assert sets.p_le == tuple(expected)
    # medium primes in (2, 4] are exactly {3}
    assert 3 in sets.p_le and 5 not in sets.p_le


def test_initial_segment_contained():
    sets = build_p_le(IWParams(rho=Fraction(1, 2), l=2))
    assert all(n in set(sets.p_le) for n in range(1, 5))


def test_factorization_structure():
    params = IWParams(rho=Fraction(1, 2), l=3)
    sets = build_p_le(params)
    primes_mid = [p for p in (3, 5, 7) if p > params.N0]
    for q in sets.p_le:
        w = 1
        rest = q
        for p in primes_mid:
            while rest % p == 0:
                rest //= p
                w *= p
        assert params.Q0 % rest == 0


def test_truncation_flag():
    sets = build_p_le(IWParams(rho=Fraction(1, 2), l=4, enumeration_cap=10**4))
    assert sets.truncated
    assert all(q <= 10**4 for q in sets.p_le)


def test_sigma_level0_count():
    sig = build_sigma(IWParams(rho=Fraction(1, 2), l=0), 1)
    assert len(sig) == 32
    # equals the totient sum over the denominator set
    tot = sum(
        1 if q == 1 else sum(1 for a in range(1, q) if math.gcd(a, q) == 1)
        for q in build_p_le(IWParams(rho=Fraction(1, 2), l=0)).p_le
    )
    assert tot == 32


def test_sigma_entries_reduced():
    for (a,), q in build_sigma(IWParams(rho=Fraction(1, 2), l=2), 1):
        assert 0 <= a < q
        assert math.gcd(a, q) == 1
    for (a1, a2), q in build_sigma(IWParams(rho=Fraction(1, 2), l=0), 2):
        assert math.gcd(math.gcd(a1, a2), q) == 1


def test_sigma_nesting():
    lo = set(sigma_fractions(IWParams(rho=Fraction(1, 2), l=0)))
    hi = set(sigma_fractions(IWParams(rho=Fraction(1, 2), l=1)))
    assert lo <= hi
    new = sigma_new(IWParams(rho=Fraction(1, 2), l=2), 1)
    assert all(Fraction(a, q) not in lo for (a,), q in new)


def test_sigma_single_fraction_for_q1():
    sig = [e for e in build_sigma(IWParams(rho=Fraction(1, 2), l=0), 1) if e[1] == 1]
    assert sig == [((0,), 1)]


def test_sigma_cap():
    with pytest.raises(EnumerationCapError):
        build_sigma(IWParams(rho=Fraction(1, 2), l=3), 2, cardinality_cap=10)


def test_properties_pass():
    for rho in (Fraction(1, 2), Fraction(1, 4)):
        for check in verify_iw_properties(rho, 3):
            assert check["pass"], check


def test_properties_catch_broken_set(monkeypatch):
    # regression fixture: removing 3 from a level-2 set must break containment
    import newton_circle.iw as iw_mod

    real = iw_mod.p_le_values

    def broken(rho, l, cap=iw_mod.DEFAULT_ENUMERATION_CAP):
        vals = real(rho, l, cap)
        if l == 2:
            vals = tuple(v for v in vals if v != 3)
        return vals

    monkeypatch.setattr(iw_mod, "p_le_values", broken)
    checks = iw_mod.verify_iw_properties(Fraction(1, 2), 2)
    failed = [c for c in checks if not c["pass"]]
    assert any(c["name"] == "initial_segment_l2" for c in failed)


def test_lcm_log2():
    sets = build_p_le(IWParams(rho=Fraction(1, 2), l=0))
    assert lcm_log2(sets) == pytest.approx(5.0)
