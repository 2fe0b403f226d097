from fractions import Fraction

import pytest

from newton_circle.poly import (
    Poly2,
    PolynomialSyntaxError,
    UniPoly,
    axis_decompose,
    evaluate,
    format_poly,
    is_degenerate,
    parse_poly,
    scale,
    separable,
    support,
)


def test_support_examples():
    assert support(parse_poly("m1^2*m2^3")) == {(2, 3)}
    assert support(Poly2.zero()) == frozenset()
    assert support(parse_poly("m1^3*m2 + m1*m2^3")) == {(3, 1), (1, 3)}


def test_degeneracy_examples():
    assert is_degenerate(parse_poly("m1^2 + m2^3"))
    assert not is_degenerate(parse_poly("m1*m2"))
    assert not is_degenerate(parse_poly("m1^2*m2^3 + m1"))
    with pytest.raises(ValueError):
        is_degenerate(parse_poly("m1*m2 + 3"))


def test_degeneracy_matches_split_witness(rng):
    # explicit separability witness: every exponent pair touches an axis
    for _ in range(100):
        terms = {}
        for _ in range(rng.randint(1, 6)):
            g = (rng.randint(0, 4), rng.randint(0, 4))
            if g == (0, 0):
                continue
            terms[g] = rng.randint(1, 5)
        if not terms:
            continue
        P = Poly2(terms)
        witness = all(g1 == 0 or g2 == 0 for g1, g2 in terms)
        assert is_degenerate(P) == witness


def test_evaluate_examples():
    assert evaluate(parse_poly("m1^2*m2^3"), (2, 3)) == 108
    assert evaluate(parse_poly("m1^3*m2 + m1*m2^3"), (2, 1)) == 10
    assert evaluate(parse_poly("m1*m2 - m1"), (0, 0)) == 0


def test_evaluate_two_paths_agree(rng):
    # term-by-term big-integer evaluation vs Horner through the decomposition
    for _ in range(50):
        terms = {(rng.randint(0, 5), rng.randint(0, 5)): rng.randint(-9, 9)
                 for _ in range(rng.randint(1, 8))}
        P = Poly2({g: c for g, c in terms.items() if c})
        parts = axis_decompose(P, 2).parts
        for m1 in range(-3, 4):
            for m2 in range(-3, 4):
                horner = sum(int(p(m1)) * m2**g2 for g2, p in parts.items())
                assert evaluate(P, (m1, m2)) == horner


def test_axis_decompose_examples():
    parts = axis_decompose(parse_poly("m1^3*m2 + m1*m2^3"), 2).parts
    assert parts[1].coeffs == (0, 0, 0, 1)
    assert parts[3].coeffs == (0, 1)
    assert axis_decompose(parse_poly("m1^2*m2^3"), 2).parts[3].coeffs == (0, 0, 1)
    p = axis_decompose(parse_poly("m1 + m2"), 2).parts
    assert p[0].coeffs == (0, 1) and p[1].coeffs == (1,)


def test_axis_decompose_reexpansion_grid():
    P = parse_poly("2*m1^3*m2 - m1*m2^3 + 4*m2^2 - m1^2")
    for axis in (1, 2):
        parts = axis_decompose(P, axis).parts
        for u in range(10):
            for v in range(10):
                m1, m2 = (u, v)
                outer = m2 if axis == 2 else m1
                inner = m1 if axis == 2 else m2
                total = sum(int(p(inner)) * outer**g for g, p in parts.items())
                assert total == evaluate(P, (m1, m2))


def test_axis_top_degrees():
    ad2 = axis_decompose(parse_poly("m1^3*m2 + m1*m2^3"), 2)
    assert ad2.max_exponent == 3 and ad2.top_part_degree == 1
    ad1 = axis_decompose(parse_poly("m1^3*m2 + m1*m2^3"), 1)
    assert ad1.max_exponent == 3 and ad1.top_part_degree == 1


def test_scale_examples():
    assert scale(parse_poly("m1*m2"), 0).terms == {}
    half = scale(parse_poly("m1*m2"), Fraction(1, 2))
    assert half.terms == {(1, 1): Fraction(1, 2)} and half.exact
    quarter = scale(parse_poly("m1^2*m2^3"), 0.25)
    assert quarter.terms == {(2, 3): 0.25} and not quarter.exact


def test_parse_examples():
    assert parse_poly("m1^2*m2^3").terms == {(2, 3): 1}
    assert parse_poly("2*m1*m2 - m2^4").terms == {(1, 1): 2, (0, 4): -1}
    assert parse_poly("m1 - m1").is_zero


def test_parse_whitespace_and_signs():
    assert parse_poly("  - 3 * m1 ^ 2 + m2  ").terms == {(2, 0): -3, (0, 1): 1}
    assert parse_poly("m1*m1*m2").terms == {(2, 1): 1}


@pytest.mark.parametrize("bad", ["", "bogus(", "m3", "m1^", "2**m1", "m1 + ", "^2"])
def test_parse_errors_carry_position(bad):
    with pytest.raises(PolynomialSyntaxError) as err:
        parse_poly(bad)
    assert err.value.position >= 0


def test_format_roundtrip(rng):
    for _ in range(50):
        terms = {(rng.randint(0, 6), rng.randint(0, 6)): rng.randint(-9, 9)
                 for _ in range(rng.randint(1, 6))}
        P = Poly2({g: c for g, c in terms.items() if c})
        assert parse_poly(format_poly(P)) == P


def test_separable_composition():
    P = separable(UniPoly((0, 0, 1)), UniPoly((0, 0, 0, 1)))
    assert P == parse_poly("m1^2 + m2^3")
    with pytest.raises(ValueError):
        separable(UniPoly((1, 1)), UniPoly((0, 1)))


def test_exponent_cap():
    with pytest.raises(ValueError):
        Poly2({(65, 0): 1})
