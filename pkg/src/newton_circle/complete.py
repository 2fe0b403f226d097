"""Complete Gauss-type sums over residue boxes and moment-system counts.

The solution counts use a sparse dynamic program: the s-fold additive
convolution of the moment-curve point mass on [N] lives on at most
C(N+s-1, s) lattice points (multisets of size s), so counts stay exact in
big-integer arithmetic at desk scale.  A work guard rejects configurations
whose correlation table would exceed the configured cell cap rather than
truncating anything silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .arith import RealLike, is_exact
from .expsum import CompensatedComplex, unit_phase, weyl_sum
from .poly import Poly2, evaluate

WORK_CAP_CELLS = 10**8


class WorkCapExceeded(RuntimeError):
    """The requested count table would exceed the configured cell cap."""


def gauss_sum(P: Poly2, a_over_q: Fraction) -> complex:
    """Normalized complete sum q^-2 * sum over (r1, r2) in [1,q]^2 of e(a*P/q)."""
    a, q = a_over_q.numerator, a_over_q.denominator
    acc = CompensatedComplex()
    for r1 in range(1, q + 1):
        for r2 in range(1, q + 1):
            t = a * evaluate(P, (r1, r2)) % q
            acc.add(unit_phase(t, q))
    return acc.total / q**2


def partial_gauss(P: Poly2, a_over_q: Fraction, frozen: int, axis: int) -> complex:
    """Normalized complete sum in one residue with the other variable frozen."""
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    a, q = a_over_q.numerator, a_over_q.denominator
    acc = CompensatedComplex()
    for r in range(1, q + 1):
        point = (frozen, r) if axis == 1 else (r, frozen)
        acc.add(unit_phase(a * evaluate(P, point) % q, q))
    return acc.total / q


def averaged_partial(P: Poly2, a_over_q: Fraction, M: int, axis: int) -> float:
    """Mean of |partial complete sum| over the frozen variable in [1, M]."""
    if M < 1:
        raise ValueError("M must be positive")
    total = 0.0
    for m in range(1, M + 1):
        total += abs(partial_gauss(P, a_over_q, m, axis))
    return total / M


def gauss_sum_sweep(P: Poly2, q_values: Iterable[int]) -> List[dict]:
    """|G(a/q)| envelope rows for every q: count of coprime a and the max modulus.

    A q x q residue histogram of P mod q turns each coprime a into an O(q)
    evaluation; rows are cross-checkable against gauss_sum directly.
    """
    rows = []
    for q in q_values:
        if q < 1:
            raise ValueError("moduli must be positive")
        if q == 1:
            rows.append({"q": 1, "a_count": 1, "max_abs_G": 1.0})
            continue
        r = np.arange(1, q + 1, dtype=np.int64)
        table = np.zeros((q, q), dtype=np.int64)
        for (g1, g2), c in P.terms.items():
            p1 = np.ones(q, dtype=np.int64)
            base1 = r % q
            for _ in range(g1):
                p1 = (p1 * base1) % q
            p2 = np.ones(q, dtype=np.int64)
            for _ in range(g2):
                p2 = (p2 * base1) % q
            table = (table + (c % q) * np.outer(p1, p2)) % q
        hist = np.bincount(table.ravel(), minlength=q).astype(np.float64)
        roots = np.exp(2j * np.pi * np.arange(q) / q)
        best = 0.0
        a_count = 0
        for a in range(1, q):
            if math.gcd(a, q) != 1:
                continue
            a_count += 1
            val = (hist * roots[(a * np.arange(q)) % q]).sum() / q**2
            mag = abs(val)
            if mag > best:
                best = mag
        rows.append({"q": q, "a_count": a_count, "max_abs_G": float(best)})
    return rows


def dyadic_envelope(P: Poly2, starts: Sequence[int]) -> List[dict]:
    """max |G(a/q)| over q in [Q, 2Q] for each dyadic start Q."""
    rows = []
    for Q in starts:
        sweep = gauss_sum_sweep(P, range(Q, 2 * Q + 1))
        rows.append({"Q": Q, "envelope": max(r["max_abs_G"] for r in sweep)})
    return rows


def fitted_decay_exponent(P: Poly2, q_max: int = 200) -> float:
    """Least-squares exponent d in max_a |G(a/q)| ~ q**-d over 2 <= q <= q_max.

    The true decay rate is existential, so it is reported, never asserted;
    exact-zero rows are floored at machine scale before taking logs.
    """
    rows = gauss_sum_sweep(P, range(2, q_max + 1))
    xs = np.array([math.log(r["q"]) for r in rows])
    ys = np.array([math.log(max(r["max_abs_G"], 1e-300)) for r in rows])
    slope = ((xs - xs.mean()) * (ys - ys.mean())).sum() / ((xs - xs.mean()) ** 2).sum()
    return -slope


# ---------------------------------------------------------------------------
# Moment-system solution counts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VinogradovCount:
    s: int
    k: int
    N: int
    lam: Tuple[int, ...]
    count: int


def _check_params(s: int, k: int, N: int, work_cap: int, table: bool = False) -> None:
    if not 1 <= s <= 6:
        raise ValueError(f"s must lie in [1, 6], got {s}")
    if not 1 <= k <= 3:
        raise ValueError(f"k must lie in [1, 3], got {k}")
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    cells = math.comb(N + s - 1, s)  # exact bound on the sparse support
    needed = cells * cells if table else cells
    if needed > work_cap:
        raise WorkCapExceeded(
            f"count table needs up to {needed} cells, cap is {work_cap}"
        )


@lru_cache(maxsize=32)
def moment_curve_counts(s: int, k: int, N: int) -> Dict[Tuple[int, ...], int]:
    """Counts of representations of lambda as a sum of s moment-curve points.

    Returned mapping: lambda -> #{(x_1..x_s) in [N]^s : sum (x_i,..,x_i^k) = lambda}.
    Treat as immutable; results are cached.
    """
    _check_params(s, k, N, WORK_CAP_CELLS)
    base = {tuple(x**i for i in range(1, k + 1)): 1 for x in range(1, N + 1)}
    counts = base
    for _ in range(s - 1):
        nxt: Dict[Tuple[int, ...], int] = {}
        for u, cu in counts.items():
            for v, cv in base.items():
                key = tuple(a + b for a, b in zip(u, v))
                nxt[key] = nxt.get(key, 0) + cu * cv
        counts = nxt
    return counts


def vinogradov_count(s: int, k: int, N: int, lam: Sequence[int],
                     work_cap: int = WORK_CAP_CELLS) -> VinogradovCount:
    """Number of solutions of the inhomogeneous moment system in 2s variables.

    Counts tuples x, y in [N]^s with sum x_j^i - sum y_j^i = lam_i for i <= k.
    """
    _check_params(s, k, N, work_cap)
    lam = tuple(int(v) for v in lam)
    if len(lam) != k:
        raise ValueError(f"lambda must have length k={k}")
    counts = moment_curve_counts(s, k, N)
    total = 0
    for u, cu in counts.items():
        shifted = tuple(a - b for a, b in zip(u, lam))
        cv = counts.get(shifted)
        if cv:
            total += cu * cv
    return VinogradovCount(s=s, k=k, N=N, lam=lam, count=total)


@lru_cache(maxsize=16)
def vinogradov_table(s: int, k: int, N: int) -> Dict[Tuple[int, ...], int]:
    """Full sparse table lambda -> count for the inhomogeneous moment system."""
    _check_params(s, k, N, WORK_CAP_CELLS, table=True)
    counts = moment_curve_counts(s, k, N)
    table: Dict[Tuple[int, ...], int] = {}
    for u, cu in counts.items():
        for v, cv in counts.items():
            key = tuple(a - b for a, b in zip(u, v))
            table[key] = table.get(key, 0) + cu * cv
    return table


def vinogradov_diagonal(s: int, k: int, N: int) -> int:
    """Count at lambda = 0, the largest entry of the table."""
    counts = moment_curve_counts(s, k, N)
    return sum(c * c for c in counts.values())


def moment_identity_gap(s: int, k: int, N: int, xi: Sequence[RealLike]) -> float:
    """|  |S_k(xi;N)|^(2s) - sum_lambda J(lambda) e(xi.lambda) |.

    The left side is the direct power sum; the right side is evaluated from
    the sparse count table, an independent combinatorial path.
    """
    xs = tuple(xi)
    if len(xs) != k:
        raise ValueError(f"xi must have length k={k}")
    ws = weyl_sum(xs, N)
    v = ws.value
    lhs = (v.real * v.real + v.imag * v.imag) ** s
    table = vinogradov_table(s, k, N)
    if all(is_exact(x) and Fraction(x) == 0 for x in xs):
        return abs(lhs - float(sum(table.values())))
    lam = np.array(list(table.keys()), dtype=np.float64)
    counts = np.array(list(table.values()), dtype=np.float64)
    phases = (lam @ np.array([float(x) for x in xs])) % 1.0
    rhs = (counts * np.exp(2j * np.pi * phases)).sum()
    return abs(lhs - rhs)
