"""Backwards Newton diagram: vertices, normals, cones, sectors, and gap constants.

The diagram of P is the convex hull of the union of translated lower-left
quadrants at each support point.  Its corner chain, read top-left to
bottom-right, carries everything downstream: edge normals (gcd-reduced to
coprime positive integers, which pins the determinants and gap constants to
canonical values), the closed sector cones spanned by consecutive normals,
their integer subsector coordinates, and the dominant monomial per sector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Tuple, Union

from .poly import Poly2, is_degenerate, support

Vec = Tuple[int, int]


class DegeneratePolynomialError(ValueError):
    """The polynomial splits as P1(m1) + P2(m2); no mixed monomial exists."""


@dataclass(frozen=True)
class NewtonDiagram:
    support: FrozenSet[Vec]
    vertices: Tuple[Vec, ...]
    normals: Tuple[Vec, ...]          # length r+1, normals[0]=(0,1), normals[r]=(1,0)
    determinants: Tuple[int, ...]     # d_j = -det[w_{j-1} | w_j] > 0
    gaps: Tuple[Union[Fraction, float], ...]  # per-vertex gap constant, inf if no competitor

    @property
    def r(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class SectorPoint:
    """A lattice point resolved into subsector coordinates of one sector.

    branch 1 means d_j*(a,b) = (offset_n+level_N)*w_{j-1} + level_N*w_j;
    branch 2 swaps the roles of the two normals.
    """

    point: Vec
    sector: int
    branch: int
    level_N: int
    offset_n: int


def _pareto_maximal(points) -> list:
    pts = sorted(points)
    keep = []
    for p in pts:
        dominated = any(
            q != p and q[0] >= p[0] and q[1] >= p[1] for q in pts
        )
        if not dominated:
            keep.append(p)
    return keep


def _reduced_normal(v: Vec, w: Vec) -> Vec:
    # inward edge v -> w has dx > 0, dy < 0; outward normal is (-dy, dx)
    dx, dy = w[0] - v[0], w[1] - v[1]
    n1, n2 = -dy, dx
    g = math.gcd(n1, n2)
    return (n1 // g, n2 // g)


def build_diagram(P: Poly2) -> NewtonDiagram:
    """Construct the diagram of a non-degenerate P with P(0,0) = 0."""
    if P.constant_term() != 0:
        raise ValueError("diagram requires P(0,0) = 0")
    if is_degenerate(P):
        raise DegeneratePolynomialError(
            "polynomial splits as P1(m1) + P2(m2); its averages factor and "
            "no mixed dominant monomial exists"
        )
    supp = support(P)
    pareto = _pareto_maximal(supp)
    # upper convex chain over the Pareto points (x increasing, y decreasing)
    chain: list = []
    for p in pareto:
        while len(chain) >= 2:
            ax, ay = chain[-2]
            bx, by = chain[-1]
            cross = (bx - ax) * (p[1] - by) - (by - ay) * (p[0] - bx)
            if cross >= 0:  # middle point is on or below the a->p segment
                chain.pop()
            else:
                break
        chain.append(p)
    vertices = tuple(chain)
    r = len(vertices)
    normals = [(0, 1)]
    for j in range(r - 1):
        normals.append(_reduced_normal(vertices[j], vertices[j + 1]))
    normals.append((1, 0))
    dets = []
    for j in range(1, r + 1):
        w_prev, w = normals[j - 1], normals[j]
        d = w_prev[1] * w[0] - w_prev[0] * w[1]
        if d <= 0:
            raise AssertionError(f"normal chain not convex at j={j}: {normals}")
        dets.append(d)
    gaps = tuple(_gap(supp, vertices[j - 1], normals[j - 1], normals[j], dets[j - 1])
                 for j in range(1, r + 1))
    return NewtonDiagram(
        support=supp,
        vertices=vertices,
        normals=tuple(normals),
        determinants=tuple(dets),
        gaps=gaps,
    )


def _gap(supp, vertex, w_prev, w, d) -> Union[Fraction, float]:
    others = [v for v in supp if v != vertex]
    if not others:
        return math.inf
    s = w_prev[0] + w[0], w_prev[1] + w[1]
    return min(
        Fraction((vertex[0] - v[0]) * s[0] + (vertex[1] - v[1]) * s[1], d)
        for v in others
    )


def _check_j(diagram: NewtonDiagram, j: int) -> None:
    if not 1 <= j <= diagram.r:
        raise ValueError(f"sector index must lie in [1, {diagram.r}], got {j}")


def cone_coordinates(diagram: NewtonDiagram, j: int, point) -> Tuple:
    """Integer coordinates (t1, t2) with d_j*(a,b) = t1*w_{j-1} + t2*w_j.

    Accepts real coordinates as well; the result is then real-valued.
    """
    _check_j(diagram, j)
    a, b = point
    w_prev = diagram.normals[j - 1]
    w = diagram.normals[j]
    t1 = -a * w[1] + b * w[0]
    t2 = a * w_prev[1] - b * w_prev[0]
    return t1, t2


def sector_membership(diagram: NewtonDiagram, point: Vec) -> FrozenSet[int]:
    """Indices j of every closed sector cone containing the point.

    The closed-cone sign test is cross-checked against the half-plane
    description of the open cones; boundary points belong to two sectors.
    """
    a, b = point
    if a < 0 or b < 0:
        raise ValueError("sector membership is defined on nonnegative lattice points")
    members = set()
    for j in range(1, diagram.r + 1):
        t1, t2 = cone_coordinates(diagram, j, point)
        closed = t1 >= 0 and t2 >= 0
        if closed:
            members.add(j)
        if a > 0 and b > 0:
            open_cone = t1 > 0 and t2 > 0
            if open_cone != _half_plane_open(diagram, j, point):
                raise AssertionError(
                    f"cone tests disagree at point {point}, sector {j}"
                )
    if not members:
        raise AssertionError(f"sectors fail to cover {point}")
    return frozenset(members)


def _half_plane_open(diagram: NewtonDiagram, j: int, point: Vec) -> bool:
    # open cone of strictly dominating directions; whole positive quadrant if
    # the support is a single vertex
    vj = diagram.vertices[j - 1]
    a, b = point
    return all(
        a * (v[0] - vj[0]) + b * (v[1] - vj[1]) < 0
        for v in diagram.support
        if v != vj
    )


def canonical_sector(diagram: NewtonDiagram, point: Vec) -> int:
    """Smallest sector index containing the point (boundary tie-break)."""
    return min(sector_membership(diagram, point))


def subsector(diagram: NewtonDiagram, j: int, point: Vec) -> SectorPoint:
    """Resolve a sector point into its branch, level N, and offset n."""
    t1, t2 = cone_coordinates(diagram, j, point)
    if t1 < 0 or t2 < 0:
        raise ValueError(f"point {point} lies outside sector {j}")
    if t1 >= t2:
        return SectorPoint(point=point, sector=j, branch=1, level_N=t2, offset_n=t1 - t2)
    return SectorPoint(point=point, sector=j, branch=2, level_N=t1, offset_n=t2 - t1)


def vertex_gap(diagram: NewtonDiagram, j: int) -> Union[Fraction, float]:
    """Gap constant of sector j: by how much the vertex beats every other
    support point along the subsector direction, per unit of level N."""
    _check_j(diagram, j)
    return diagram.gaps[j - 1]


def dominant_monomial(diagram: NewtonDiagram, j: int, P: Poly2) -> Poly2:
    """Single-term polynomial carried by the j-th vertex."""
    _check_j(diagram, j)
    v = diagram.vertices[j - 1]
    if v not in P.terms:
        raise ValueError("diagram does not belong to this polynomial")
    return Poly2.monomial(v[0], v[1], P.terms[v])


_SECTOR_TOL = 1e-9


def in_sector_scales(diagram: NewtonDiagram, j: int, M1: float, M2: float) -> bool:
    """Whether the scale pair (M1, M2) lies over sector j.

    Cones are scale-invariant, so the test uses natural logs of the scales;
    a small relative tolerance absorbs float rounding on boundaries.
    """
    _check_j(diagram, j)
    if M1 < 1 or M2 < 1:
        raise ValueError("scales must be >= 1")
    x, y = math.log(M1), math.log(M2)
    t1, t2 = cone_coordinates(diagram, j, (x, y))
    bound = -_SECTOR_TOL * max(1.0, abs(x), abs(y))
    return t1 >= bound and t2 >= bound


def dominant_scale(diagram: NewtonDiagram, j: int, M1: float, M2: float) -> float:
    """The scale that controls logarithmic thresholds in sector j.

    Sector 1 is governed by M2, sector r by M1, interior sectors (and the
    single-vertex case) by the larger of the two.
    """
    if not in_sector_scales(diagram, j, M1, M2):
        raise ValueError(f"scales ({M1}, {M2}) do not lie over sector {j}")
    r = diagram.r
    if r == 1 or 1 < j < r:
        return max(M1, M2)
    if j == 1:
        return M2
    return M1
