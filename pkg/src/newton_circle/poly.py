"""Sparse bivariate integer polynomials, axis decompositions, and real scaling.

A polynomial is a map from exponent pairs (g1, g2) to nonzero coefficients.
Exponents are capped at 64 per axis; coefficients are arbitrary-precision
integers, so evaluation can never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Tuple, Union

from .arith import RealLike, is_exact

MAX_EXPONENT = 64

ExpPair = Tuple[int, int]


class PolynomialSyntaxError(ValueError):
    """Raised on malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _validated_terms(terms: Mapping[ExpPair, int], allow_real: bool = False) -> Dict[ExpPair, object]:
    out = {}
    for (g1, g2), c in terms.items():
        if not (0 <= g1 <= MAX_EXPONENT and 0 <= g2 <= MAX_EXPONENT):
            raise ValueError(f"exponents must lie in [0, {MAX_EXPONENT}], got ({g1}, {g2})")
        if c == 0:
            continue
        if not allow_real and not isinstance(c, int):
            raise TypeError(f"integer coefficient required at ({g1}, {g2}), got {type(c).__name__}")
        out[(int(g1), int(g2))] = c
    return out


class Poly2:
    """Sparse bivariate polynomial with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[ExpPair, int]):
        self.terms: Dict[ExpPair, int] = _validated_terms(terms)

    @classmethod
    def monomial(cls, g1: int, g2: int, c: int = 1) -> "Poly2":
        return cls({(g1, g2): c})

    @classmethod
    def zero(cls) -> "Poly2":
        return cls({})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        return max((g1 + g2 for g1, g2 in self.terms), default=0)

    @property
    def partial_degrees(self) -> ExpPair:
        d1 = max((g1 for g1, _ in self.terms), default=0)
        d2 = max((g2 for _, g2 in self.terms), default=0)
        return d1, d2

    def constant_term(self) -> int:
        return self.terms.get((0, 0), 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly2) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"Poly2({format_poly(self)!r})"


class RealPoly2:
    """Bivariate polynomial with real coefficients; exact when all are rational."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[ExpPair, Union[int, float, Fraction]]):
        clean = {}
        for key, c in _validated_terms(terms, allow_real=True).items():
            if isinstance(c, float) and not math.isfinite(c):
                raise ValueError(f"non-finite coefficient at {key}")
            clean[key] = c
        self.terms = clean

    @property
    def exact(self) -> bool:
        return all(is_exact(c) for c in self.terms.values())

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*m1^{g1}*m2^{g2}" for (g1, g2), c in sorted(self.terms.items()))
        return f"RealPoly2({body or '0'})"


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial as a coefficient tuple (c0, c1, ...)."""

    coeffs: Tuple[RealLike, ...]

    def __post_init__(self):
        c = tuple(self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __call__(self, x: RealLike) -> RealLike:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i >= 1))

    @classmethod
    def from_dict(cls, d: Mapping[int, RealLike]) -> "UniPoly":
        n = max(d, default=-1)
        return cls(tuple(d.get(i, 0) for i in range(n + 1)))


def support(P: Union[Poly2, RealPoly2]) -> frozenset:
    """Exponent pairs carrying a nonzero coefficient."""
    return frozenset(P.terms)


def is_degenerate(P: Poly2) -> bool:
    """True iff P has no mixed monomial, i.e. splits as P1(m1) + P2(m2)."""
    if P.constant_term() != 0:
        raise ValueError("degeneracy test requires P(0,0) = 0")
    return all(g1 == 0 or g2 == 0 for g1, g2 in P.terms)


def evaluate(P: Union[Poly2, RealPoly2], m: Tuple[int, int]):
    """Value at an integer point: exact big integer for Poly2, float otherwise."""
    m1, m2 = m
    total = 0
    for (g1, g2), c in P.terms.items():
        total += c * m1**g1 * m2**g2
    if isinstance(P, RealPoly2):
        return float(total)
    return total


def evaluate_exact(P: Union[Poly2, RealPoly2], m: Tuple[int, int]):
    """Exact value (int or Fraction); requires an exact-coefficient polynomial."""
    if isinstance(P, RealPoly2) and not P.exact:
        raise ValueError("exact evaluation needs rational coefficients")
    m1, m2 = m
    total = 0
    for (g1, g2), c in P.terms.items():
        total += c * m1**g1 * m2**g2
    return total


@dataclass(frozen=True)
class AxisParts:
    """Collected coefficients of P along one axis: P = sum_g parts[g] * m_axis^g."""

    axis: int
    parts: Mapping[int, UniPoly]

    @property
    def max_exponent(self) -> int:
        """Partial degree in the collected axis (d_2 for axis=2, d_1 for axis=1)."""
        return max(self.parts, default=0)

    @property
    def top_part_degree(self) -> int:
        """Degree of the coefficient polynomial attached to the top exponent."""
        if not self.parts:
            return 0
        return self.parts[self.max_exponent].degree


def axis_decompose(P: Poly2, axis: int) -> AxisParts:
    """Rewrite P as a polynomial in one variable with UniPoly coefficients.

    axis=2 returns {g2 -> Q_g2(m1)} with P(m1,m2) = sum_g2 Q_g2(m1) * m2^g2;
    axis=1 is the symmetric decomposition.
    """
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    grouped: Dict[int, Dict[int, int]] = {}
    for (g1, g2), c in P.terms.items():
        outer, inner = (g2, g1) if axis == 2 else (g1, g2)
        grouped.setdefault(outer, {})[inner] = c
    parts = {g: UniPoly.from_dict(d) for g, d in grouped.items()}
    return AxisParts(axis=axis, parts=parts)


def separable(p1: UniPoly, p2: UniPoly) -> Poly2:
    """The degenerate polynomial p1(m1) + p2(m2); both constant terms must vanish."""
    terms: Dict[ExpPair, int] = {}
    for i, c in enumerate(p1.coeffs):
        if c:
            terms[(i, 0)] = terms.get((i, 0), 0) + int(c)
    for i, c in enumerate(p2.coeffs):
        if c:
            terms[(0, i)] = terms.get((0, i), 0) + int(c)
    poly = Poly2(terms)
    if poly.constant_term() != 0:
        raise ValueError("separable composition requires p1(0) = p2(0) = 0")
    return poly


def scale(P: Poly2, xi: RealLike) -> RealPoly2:
    """The scaled polynomial xi * P; exact (rational coefficients) when xi is."""
    if is_exact(xi):
        x = xi if isinstance(xi, Fraction) else Fraction(xi)
        return RealPoly2({g: x * c for g, c in P.terms.items()})
    return RealPoly2({g: float(xi) * c for g, c in P.terms.items()})


# ---------------------------------------------------------------------------
# Text grammar, shared with the CLI:
#   term  := [+|-] factor (* factor)*
#   factor:= INT | m1[^INT] | m2[^INT]
# e.g. "2*m1*m2 - m2^4".  Whitespace is insignificant; like terms merge.
# ---------------------------------------------------------------------------


def parse_poly(text: str) -> Poly2:
    terms: Dict[ExpPair, int] = {}
    i, n = 0, len(text)

    def skip_ws(j: int) -> int:
        while j < n and text[j].isspace():
            j += 1
        return j

    def parse_int(j: int) -> Tuple[int, int]:
        start = j
        while j < n and text[j].isdigit():
            j += 1
        if j == start:
            raise PolynomialSyntaxError("expected an integer", start)
        return int(text[start:j]), j

    i = skip_ws(i)
    if i == n:
        raise PolynomialSyntaxError("empty polynomial", 0)
    first = True
    while i < n:
        sign = 1
        i = skip_ws(i)
        if i < n and text[i] in "+-":
            sign = -1 if text[i] == "-" else 1
            i = skip_ws(i + 1)
        elif not first:
            raise PolynomialSyntaxError("expected '+' or '-' between terms", i)
        first = False
        coeff, g1, g2 = 1, 0, 0
        saw_factor = False
        while True:
            i = skip_ws(i)
            if i < n and text[i].isdigit():
                value, i = parse_int(i)
                coeff *= value
            elif text.startswith("m1", i) or text.startswith("m2", i):
                which = text[i + 1]
                i = skip_ws(i + 2)
                exp = 1
                if i < n and text[i] == "^":
                    exp, i = parse_int(skip_ws(i + 1))
                if which == "1":
                    g1 += exp
                else:
                    g2 += exp
            else:
                raise PolynomialSyntaxError("expected a coefficient, m1 or m2", i)
            saw_factor = True
            i = skip_ws(i)
            if i < n and text[i] == "*":
                i += 1
                continue
            break
        if not saw_factor:
            raise PolynomialSyntaxError("empty term", i)
        if g1 > MAX_EXPONENT or g2 > MAX_EXPONENT:
            raise PolynomialSyntaxError(f"exponent exceeds {MAX_EXPONENT}", i)
        key = (g1, g2)
        terms[key] = terms.get(key, 0) + sign * coeff
        i = skip_ws(i)
        if i < n and text[i] not in "+-":
            raise PolynomialSyntaxError("expected '+' or '-' between terms", i)
    return Poly2({k: v for k, v in terms.items() if v != 0})


def format_poly(P: Poly2) -> str:
    """Inverse of parse_poly up to term order and spacing."""
    if P.is_zero:
        return "0"
    pieces = []
    for (g1, g2), c in sorted(P.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), kv[0])):
        factors = []
        if abs(c) != 1 or (g1 == 0 and g2 == 0):
            factors.append(str(abs(c)))
        if g1:
            factors.append("m1" if g1 == 1 else f"m1^{g1}")
        if g2:
            factors.append("m2" if g2 == 1 else f"m2^{g2}")
        body = "*".join(factors)
        pieces.append(("- " if c < 0 else "+ ") + body)
    joined = " ".join(pieces)
    return joined[2:] if joined.startswith("+ ") else "-" + joined[2:]
