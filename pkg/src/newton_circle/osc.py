"""Multi-parameter oscillation semi-norms and 1-D variation semi-norms.

Index sets are finite points in R^k for k in {1, 2}; scalars are accepted for
one-parameter families and normalized to 1-tuples.  Boxes attached to an
increasing sequence are half-open, and the last sequence point opens no box,
so suprema only ever range over explicitly listed indices; empty suprema
contribute zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, Optional, Sequence, Tuple

Point = Tuple[float, ...]


def _as_point(t) -> Point:
    if isinstance(t, tuple):
        return t
    return (t,)


@dataclass(frozen=True)
class IndexedFamily:
    """Finitely many complex values indexed by points of R^k."""

    values: Dict[Point, complex]

    @classmethod
    def of(cls, mapping) -> "IndexedFamily":
        return cls({_as_point(t): complex(v) for t, v in mapping.items()})

    @property
    def dim(self) -> int:
        for t in self.values:
            return len(t)
        return 1

    @property
    def index_set(self) -> frozenset:
        return frozenset(self.values)

    def __post_init__(self):
        dims = {len(t) for t in self.values}
        if len(dims) > 1:
            raise ValueError(f"mixed index dimensions: {sorted(dims)}")
        if dims and dims != {1} and dims != {2}:
            raise ValueError("only 1- and 2-parameter families are supported")


@dataclass(frozen=True)
class IncreasingSequence:
    """Candidate strictly increasing sequence of index points; J = len - 1."""

    points: Tuple[Point, ...]

    @classmethod
    def of(cls, pts: Iterable) -> "IncreasingSequence":
        return cls(tuple(_as_point(p) for p in pts))

    @property
    def J(self) -> int:
        return len(self.points) - 1

    def is_strictly_increasing(self) -> bool:
        return all(
            all(a < b for a, b in zip(p, q))
            for p, q in zip(self.points, self.points[1:])
        )


def validate_sequence(seq: IncreasingSequence, ambient: Iterable) -> bool:
    """True iff all points lie in the ambient set and strictly increase
    coordinatewise."""
    amb = {_as_point(p) for p in ambient}
    if len(seq.points) < 2:
        return False
    return all(p in amb for p in seq.points) and seq.is_strictly_increasing()


def _in_box(t: Point, lo: Point, hi: Point) -> bool:
    return all(l <= x < h for x, l, h in zip(t, lo, hi))


def oscillation(family: IndexedFamily, seq: IncreasingSequence,
                subdomain: Optional[Iterable] = None) -> float:
    """Square-summed box suprema of deviations from the box anchors.

    For each consecutive pair (I_j, I_{j+1}) the half-open box between them is
    scanned for the largest |a_t - a_{I_j}| with t restricted to the subdomain.
    """
    if not seq.is_strictly_increasing() or len(seq.points) < 2:
        raise ValueError("sequence must be strictly increasing with at least 2 points")
    missing = [p for p in seq.points if p not in family.values]
    if missing:
        raise ValueError(f"sequence points outside the family index set: {missing[:3]}")
    domain = family.index_set if subdomain is None else (
        {_as_point(p) for p in subdomain} & family.index_set
    )
    total = 0.0
    for lo, hi in zip(seq.points, seq.points[1:]):
        anchor = family.values[lo]
        best = 0.0
        for t in domain:
            if _in_box(t, lo, hi):
                dev = abs(family.values[t] - anchor)
                if dev > best:
                    best = dev
        total += best * best
    return math.sqrt(total)


def variation(family: IndexedFamily, rho: float = 2.0) -> float:
    """Sup over increasing subsequences of the rho-sum of increments, 1-D only.

    Dynamic programming is exact for rho in {1, 2}; other exponents fall back
    to full subsequence enumeration and require at most 16 index points.
    """
    if family.dim != 1:
        raise ValueError("variation is defined for 1-parameter families")
    if rho < 1:
        raise ValueError("variation exponent must be >= 1")
    pts = sorted(family.index_set)
    vals = [family.values[t] for t in pts]
    n = len(vals)
    if n < 2:
        return 0.0
    if rho in (1.0, 2.0):
        best = [0.0] * n
        for i in range(1, n):
            best[i] = max(
                best[j] + abs(vals[i] - vals[j]) ** rho for j in range(i)
            )
        return max(best) ** (1.0 / rho)
    if n > 16:
        raise ValueError("subsequence enumeration capped at 16 points")
    out = 0.0
    for size in range(2, n + 1):
        for sub in combinations(range(n), size):
            s = sum(
                abs(vals[b] - vals[a]) ** rho for a, b in zip(sub, sub[1:])
            )
            out = max(out, s ** (1.0 / rho))
    return out


def _interval_family(family: IndexedFamily) -> Tuple[int, int, Sequence[complex]]:
    pts = sorted(family.index_set)
    ints = [int(p[0]) for p in pts]
    if any(p[0] != i for p, i in zip(pts, ints)):
        raise ValueError("family must be indexed by integers")
    j0, top = ints[0], ints[-1] + 1
    if ints != list(range(j0, top)):
        raise ValueError("family index set must be a contiguous integer interval")
    if top <= 0 or top & (top - 1):
        raise ValueError(f"interval must end at a power of two, got [{j0}, {top})")
    return j0, top, [family.values[(i,)] for i in ints]


def dyadic_block_rhs(family: IndexedFamily) -> float:
    """Dyadic-block majorant: sqrt(2) * sum over block sizes of the l2 norm of
    telescoped block increments, blocks fully inside the index interval."""
    j0, top, vals = _interval_family(family)
    m = top.bit_length() - 1
    get = lambda i: vals[i - j0]
    total = 0.0
    for i in range(m + 1):
        size = 1 << i
        level = 0.0
        for j in range(0, (top >> i)):
            lo, hi = j * size, (j + 1) * size
            if lo < j0 or hi > top:
                continue
            upper = min(hi, top - 1)
            if upper <= lo:
                continue
            inc = get(upper) - get(lo)
            level += abs(inc) ** 2
        total += math.sqrt(level)
    return math.sqrt(2.0) * total


def rademacher_menshov_sides(family: IndexedFamily,
                             seq: IncreasingSequence) -> Tuple[float, float]:
    """(oscillation, dyadic-block majorant) on an integer interval [j0, 2**m).

    The first component never exceeds the second; the majorant telescopes
    increments over dyadic blocks contained in the interval.
    """
    lhs = oscillation(family, seq)
    rhs = dyadic_block_rhs(family)
    return lhs, rhs


def axis_projection_sides(family: IndexedFamily, seq: IncreasingSequence,
                          axis: int) -> Tuple[float, float]:
    """(oscillation, per-axis sup majorant) for a two-parameter family.

    The majorant is the l2 norm over one coordinate of suprema over the other.
    The comparison constant is not quantified, so both sides are reported and
    nothing is asserted.
    """
    if family.dim != 2:
        raise ValueError("axis projection needs a two-parameter family")
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    lhs = oscillation(family, seq)
    i = axis - 1
    sups: Dict[float, float] = {}
    for t, v in family.values.items():
        sups[t[i]] = max(sups.get(t[i], 0.0), abs(v))
    rhs = math.sqrt(sum(s * s for s in sups.values()))
    return lhs, rhs
