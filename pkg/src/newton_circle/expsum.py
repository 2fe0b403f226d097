"""One- and two-parameter exponential sums with exact or compensated phases.

Exact mode applies whenever every phase coefficient is rational: phases are
reduced mod 1 in big-integer arithmetic before any trigonometric evaluation,
so no phase error accumulates no matter how large the polynomial values get.
Roots of unity come from a cached table for denominators up to 2**16; larger
denominators fall back to one correctly-rounded float division per term.
Float mode uses Neumaier compensated summation and reports an engineering
error budget of 8 ulp of the running magnitude per term.

Summation over the outer index range may be partitioned (NEWTON_CIRCLE_THREADS
or the ``workers`` argument); partial sums combine in a fixed tree order, so
results are bit-reproducible for a given worker count.  The default is a
single partition.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence, Tuple

import numpy as np

from .arith import RealLike, as_fraction, is_exact
from .poly import RealPoly2, UniPoly

ROOT_TABLE_MAX = 1 << 16


class PhaseHypothesisError(ValueError):
    """The sum-vs-integral hypotheses (monotone, small derivative) fail."""


class QuadratureConvergenceError(RuntimeError):
    """Panel refinement exceeded the depth cap without meeting tolerance."""


@dataclass(frozen=True)
class ExpSumValue:
    value: complex
    mode: str                 # "exact" or "float"
    term_count: int
    error_budget: float       # 0 in exact mode

    def __complex__(self) -> complex:
        return self.value


def workers_from_env(workers=None) -> int:
    if workers is not None:
        if workers < 1:
            raise ValueError("worker count must be positive")
        return int(workers)
    raw = os.environ.get("NEWTON_CIRCLE_THREADS", "1")
    try:
        w = int(raw)
    except ValueError as exc:
        raise ValueError(f"NEWTON_CIRCLE_THREADS must be a positive integer, got {raw!r}") from exc
    return max(1, w)


@lru_cache(maxsize=64)
def _root_table(q: int) -> Tuple[complex, ...]:
    return tuple(cmath.exp(2j * math.pi * (t / q)) for t in range(q))


def unit_phase(t: int, q: int) -> complex:
    """e(t/q) with t already reduced mod q."""
    if q <= ROOT_TABLE_MAX:
        return _root_table(q)[t]
    return cmath.exp(2j * math.pi * (t / q))  # big-int division is correctly rounded


class _Neumaier:
    __slots__ = ("s", "c")

    def __init__(self):
        self.s = 0.0
        self.c = 0.0

    def add(self, x: float) -> None:
        t = self.s + x
        if abs(self.s) >= abs(x):
            self.c += (self.s - t) + x
        else:
            self.c += (x - t) + self.s
        self.s = t

    @property
    def total(self) -> float:
        return self.s + self.c


class CompensatedComplex:
    """Complex accumulator with per-component Neumaier compensation."""

    __slots__ = ("re", "im", "max_mag")

    def __init__(self):
        self.re = _Neumaier()
        self.im = _Neumaier()
        self.max_mag = 0.0

    def add(self, z: complex) -> None:
        self.re.add(z.real)
        self.im.add(z.imag)
        mag = abs(self.re.s) + abs(self.im.s)
        if mag > self.max_mag:
            self.max_mag = mag

    @property
    def total(self) -> complex:
        return complex(self.re.total, self.im.total)


def _combine_tree(parts: Sequence[complex]) -> complex:
    vals = list(parts)
    if not vals:
        return 0j
    while len(vals) > 1:
        nxt = []
        for i in range(0, len(vals) - 1, 2):
            nxt.append(vals[i] + vals[i + 1])
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def _partition(lo: int, hi: int, workers: int):
    # contiguous chunks of (lo, hi]; empty chunks are dropped
    total = hi - lo
    if total <= 0:
        return []
    w = min(workers, total)
    step = total // w
    extra = total % w
    chunks = []
    start = lo
    for i in range(w):
        size = step + (1 if i < extra else 0)
        chunks.append((start, start + size))
        start += size
    return chunks


def _run_chunks(chunk_fn: Callable[[int, int], Tuple[complex, float]], lo: int, hi: int,
                workers: int) -> Tuple[complex, float]:
    chunks = _partition(lo, hi, workers)
    if not chunks:
        return 0j, 0.0
    if len(chunks) == 1:
        return chunk_fn(*chunks[0])
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        results = list(pool.map(lambda c: chunk_fn(*c), chunks))
    value = _combine_tree([r[0] for r in results])
    max_mag = max(max(r[1] for r in results), abs(value.real) + abs(value.imag))
    return value, max_mag


def _exact_coeffs(values: Sequence[Fraction]) -> Tuple[Tuple[int, ...], int]:
    L = 1
    for v in values:
        L = L * v.denominator // math.gcd(L, v.denominator)
    return tuple(v.numerator * (L // v.denominator) % L for v in values), L


def weyl_sum(xi: Sequence[RealLike], N: int, K: int = 0, workers=None) -> ExpSumValue:
    """Sum of e(xi_1 n + ... + xi_k n^k) over n in (K, N]."""
    xs = tuple(xi)
    k = len(xs)
    if not 1 <= k <= 8:
        raise ValueError(f"moment-curve dimension must lie in [1, 8], got {k}")
    if N < 1 or K < 0 or K >= N:
        raise ValueError(f"need 0 <= K < N, got K={K}, N={N}")
    w = workers_from_env(workers)
    count = N - K
    if all(is_exact(x) for x in xs):
        coeffs, L = _exact_coeffs([as_fraction(x) for x in xs])

        def chunk(lo: int, hi: int) -> Tuple[complex, float]:
            acc = CompensatedComplex()
            rev = tuple(reversed(coeffs))
            for n in range(lo + 1, hi + 1):
                t = 0
                for c in rev:
                    t = (t + c) * n % L
                acc.add(unit_phase(t, L))
            return acc.total, acc.max_mag

        value, _ = _run_chunks(chunk, K, N, w)
        return ExpSumValue(value=value, mode="exact", term_count=count, error_budget=0.0)

    fs = tuple(float(x) for x in xs)

    def chunk(lo: int, hi: int) -> Tuple[complex, float]:
        acc = CompensatedComplex()
        rev = tuple(reversed(fs))
        for n in range(lo + 1, hi + 1):
            p = 0.0
            for c in rev:
                p = (p + c) * n
            acc.add(cmath.exp(2j * math.pi * (p % 1.0)))
        return acc.total, acc.max_mag

    value, max_mag = _run_chunks(chunk, K, N, w)
    budget = 8.0 * count * math.ulp(max(1.0, max_mag))
    return ExpSumValue(value=value, mode="float", term_count=count, error_budget=budget)


def _axis_grouped(Q: RealPoly2):
    # terms grouped as {g2: [(g1, c), ...]} for Horner in m1 then m2
    grouped = {}
    for (g1, g2), c in Q.terms.items():
        grouped.setdefault(g2, []).append((g1, c))
    for lst in grouped.values():
        lst.sort()
    return grouped


def _inner_sums_exact(Q: RealPoly2, K1, M1, K2, M2):
    """Yield per-row Horner coefficients (m1, rev, L) for exact inner sums."""
    fracs = {g: as_fraction(c) for g, c in Q.terms.items()} or {(0, 0): Fraction(0)}
    keys = list(fracs)
    ints, L = _exact_coeffs([fracs[k] for k in keys])
    grouped = {}
    for key, c in zip(keys, ints):
        grouped.setdefault(key[1], []).append((key[0], c))
    top = max(grouped)
    for m1 in range(K1 + 1, M1 + 1):
        # collapse the m1-dependence: b[g2] = sum_g1 c*m1^g1 mod L
        b = {}
        for g2, lst in grouped.items():
            acc = 0
            for g1, c in lst:
                acc = (acc + c * pow(m1, g1, L)) % L
            b[g2] = acc
        rev = tuple(b.get(g, 0) for g in range(top, -1, -1))
        yield m1, rev, L


def _exact_row_sum(rev, L, K2, M2, acc: CompensatedComplex) -> complex:
    row = CompensatedComplex()
    for m2 in range(K2 + 1, M2 + 1):
        t = 0
        for c in rev:
            t = (t * m2 + c) % L
        z = unit_phase(t, L)
        row.add(z)
        acc.add(z)
    return row.total


def _float_row_sum(coeffs_by_g2, K2, M2, acc: CompensatedComplex) -> complex:
    top = max(coeffs_by_g2)
    rev = tuple(coeffs_by_g2.get(g, 0.0) for g in range(top, -1, -1))
    row = CompensatedComplex()
    for m2 in range(K2 + 1, M2 + 1):
        p = 0.0
        for c in rev:
            p = p * m2 + c
        z = cmath.exp(2j * math.pi * (p % 1.0))
        row.add(z)
        acc.add(z)
    return row.total


def _check_ranges(K1, M1, K2, M2):
    if not (0 <= K1 <= M1 and 0 <= K2 <= M2):
        raise ValueError(f"need 0 <= K1 <= M1 and 0 <= K2 <= M2, got {(K1, M1, K2, M2)}")


def double_sum(Q: RealPoly2, K1: int, M1: int, K2: int, M2: int, workers=None) -> ExpSumValue:
    """Sum of e(Q(m1, m2)) over the lattice box (K1, M1] x (K2, M2]."""
    _check_ranges(K1, M1, K2, M2)
    w = workers_from_env(workers)
    count = (M1 - K1) * (M2 - K2)
    if count == 0:
        return ExpSumValue(0j, "exact" if Q.exact else "float", 0, 0.0)
    if Q.exact:
        fracs = {g: as_fraction(c) for g, c in Q.terms.items()} or {(0, 0): Fraction(0)}
        coeff_list = list(fracs.items())
        ints, L = _exact_coeffs([c for _, c in coeff_list])
        grouped = {}
        for (key, _), c in zip(coeff_list, ints):
            grouped.setdefault(key[1], []).append((key[0], c))
        top = max(grouped)

        def chunk(lo: int, hi: int) -> Tuple[complex, float]:
            acc = CompensatedComplex()
            for m1 in range(lo + 1, hi + 1):
                b = {}
                for g2, lst in grouped.items():
                    s = 0
                    for g1, c in lst:
                        s = (s + c * pow(m1, g1, L)) % L
                    b[g2] = s
                rev = tuple(b.get(g, 0) for g in range(top, -1, -1))
                for m2 in range(K2 + 1, M2 + 1):
                    t = 0
                    for c in rev:
                        t = (t * m2 + c) % L
                    acc.add(unit_phase(t, L))
            return acc.total, acc.max_mag

        value, _ = _run_chunks(chunk, K1, M1, w)
        return ExpSumValue(value=value, mode="exact", term_count=count, error_budget=0.0)

    grouped_f = {}
    for (g1, g2), c in Q.terms.items():
        grouped_f.setdefault(g2, []).append((g1, float(c)))

    def chunk(lo: int, hi: int) -> Tuple[complex, float]:
        acc = CompensatedComplex()
        for m1 in range(lo + 1, hi + 1):
            b = {g2: sum(c * m1**g1 for g1, c in lst) for g2, lst in grouped_f.items()}
            _float_row_sum(b, K2, M2, acc)
        return acc.total, acc.max_mag

    value, max_mag = _run_chunks(chunk, K1, M1, w)
    budget = 8.0 * count * math.ulp(max(1.0, max_mag))
    return ExpSumValue(value=value, mode="float", term_count=count, error_budget=budget)


def _transpose(Q: RealPoly2) -> RealPoly2:
    return RealPoly2({(g2, g1): c for (g1, g2), c in Q.terms.items()})


def double_sum_abs(Q: RealPoly2, K1: int, M1: int, K2: int, M2: int, outer_axis: int = 1) -> float:
    """Outer sum of absolute inner sums: axis 1 keeps m1 outside, axis 2 transposes."""
    _check_ranges(K1, M1, K2, M2)
    if outer_axis == 2:
        return double_sum_abs(_transpose(Q), K2, M2, K1, M1, outer_axis=1)
    if outer_axis != 1:
        raise ValueError("outer_axis must be 1 or 2")
    total = _Neumaier()
    if Q.exact:
        sink = CompensatedComplex()
        for _m1, rev, L in _inner_sums_exact(Q, K1, M1, K2, M2):
            total.add(abs(_exact_row_sum(rev, L, K2, M2, sink)))
        return total.total
    grouped_f = {}
    for (g1, g2), c in Q.terms.items():
        grouped_f.setdefault(g2, []).append((g1, float(c)))
    sink = CompensatedComplex()
    for m1 in range(K1 + 1, M1 + 1):
        b = {g2: sum(c * m1**g1 for g1, c in lst) for g2, lst in grouped_f.items()}
        total.add(abs(_float_row_sum(b, K2, M2, sink)))
    return total.total


# ---------------------------------------------------------------------------
# Sum-vs-integral comparison
# ---------------------------------------------------------------------------


@lru_cache(maxsize=8)
def _leggauss(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def gauss_legendre_adaptive(f, a: float, b: float, tol: float = 1e-12,
                            order: int = 32, max_depth: int = 20) -> complex:
    """Integrate a vectorized complex f over [a, b] by dyadic panel refinement.

    Refinement stops when two successive levels agree within tol.
    """
    if b <= a:
        raise ValueError("empty integration interval")
    x, w = _leggauss(order)
    prev = None
    for depth in range(max_depth + 1):
        panels = 1 << depth
        edges = np.linspace(a, b, panels + 1)
        half = (edges[1:] - edges[:-1]) / 2.0
        mid = (edges[1:] + edges[:-1]) / 2.0
        nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        vals = f(nodes).reshape(panels, order)
        cur = complex((vals * w[None, :]).sum(axis=1) @ half)
        if prev is not None and abs(cur - prev) < tol:
            return cur
        prev = cur
    raise QuadratureConvergenceError(f"no convergence to {tol} within depth {max_depth}")


def _poly_on_array(p: UniPoly, s: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(s)
    for c in reversed(p.coeffs):
        acc = acc * s + float(c)
    return acc


def sum_integral_gap(phase: UniPoly, a: float, b: float, tol: float = 1e-12) -> float:
    """|sum of e(phase(n)) over integers in (a, b]  -  integral of e(phase(s)) ds|.

    Requires a monotonic derivative bounded by 1/2 in absolute value on [a, b]:
    endpoints are tested directly and monotonicity comes from a sign-constant
    second derivative (checked exactly for degree <= 3, sampled above that).
    """
    if not b > a:
        raise ValueError("need b > a")
    dp = phase.derivative()
    d2 = dp.derivative()
    if abs(float(dp(a))) > 0.5 or abs(float(dp(b))) > 0.5:
        raise PhaseHypothesisError(
            f"|phase'| exceeds 1/2 at an endpoint: {float(dp(a)):.4g}, {float(dp(b)):.4g}"
        )
    if phase.degree <= 3:
        signs = {s for s in (float(d2(a)), float(d2(b))) if s != 0.0}
    else:
        samples = np.linspace(a, b, 129)
        vals = _poly_on_array(d2, samples)
        signs = {s for s in np.sign(vals).tolist() if s != 0.0}
    if len(signs) > 1:
        raise PhaseHypothesisError("phase derivative is not monotonic on the interval")
    acc = CompensatedComplex()
    for n in range(math.floor(a) + 1, math.floor(b) + 1):
        acc.add(cmath.exp(2j * math.pi * (float(phase(n)) % 1.0)))
    integral = gauss_legendre_adaptive(
        lambda s: np.exp(2j * math.pi * _poly_on_array(phase, s)), float(a), float(b), tol=tol
    )
    return abs(acc.total - integral)
