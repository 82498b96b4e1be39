"""Fundamental alcoves, order polytopes of convex sets, and the geometry bounds.

The fundamental alcove is the simplex cut from the dominant chamber by
<x, highest root> <= 1; its translates under the group tile the order
polytope of a convex set.  Everything here is exact: centroids and
half-spaces are rational, and the e-based lower bounds are certified by
comparing against partial sums of the exponential series (strict rational
lower bounds on e^x), so a confirmed inequality is rigorous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .convex import ConvexSet, WeylContext
from .linalg import Vector, add, dot, scale, zero
from .rootsys import RootSystem
from . import weyl


@dataclass(frozen=True)
class AlcoveParams:
    """Per-type constants controlling the exponential balance bound.

    ``min_mark``/``max_mark`` are the smallest and largest coefficients of
    the highest root over the simple roots, ``height`` their sum, ``margin``
    the centroid pairing bound multiplier, and ``exponent`` = margin *
    max_mark the exponent in the 1/(2 e^exponent) lower bound.
    """

    family: str
    rank: int
    min_mark: int
    max_mark: int
    height: int
    margin: Fraction
    exponent: Fraction


def alcove_params(rs: RootSystem) -> AlcoveParams:
    marks = rs.coefficients[rs.highest_root_index]
    m0 = min(marks)
    m1 = max(marks)
    ht = sum(marks)
    margin = Fraction(rs.rank, m0) + Fraction(1, m1) - Fraction(ht, m0 * m1)
    return AlcoveParams(
        family=rs.family,
        rank=rs.rank,
        min_mark=int(m0),
        max_mark=int(m1),
        height=int(ht),
        margin=margin,
        exponent=margin * m1,
    )


@dataclass(frozen=True)
class AlcoveData:
    """Vertices and centroid of the fundamental alcove (plus short-root data)."""

    root_system: RootSystem
    vertices: Tuple[Vector, ...]  # origin plus coweight/mark vertices
    centroid: Vector
    short_vertices: Optional[Tuple[Vector, ...]]  # non-simply-laced only


def alcove_data(rs: RootSystem) -> AlcoveData:
    marks = rs.coefficients[rs.highest_root_index]
    verts = [zero(rs.ambient_dim)]
    for i in range(rs.rank):
        verts.append(scale(Fraction(1, 1) / marks[i], rs.coweights[i]))
    centroid = zero(rs.ambient_dim)
    for v in verts:
        centroid = add(centroid, v)
    centroid = scale(Fraction(1, rs.rank + 1), centroid)

    short_verts = None
    if rs.highest_short_root_index is not None:
        eta = rs.positive_roots[rs.highest_short_root_index]
        short_verts = [zero(rs.ambient_dim)]
        for i in range(rs.rank):
            short_verts.append(
                scale(Fraction(1, 1) / dot(rs.coweights[i], eta), rs.coweights[i])
            )
        short_verts = tuple(short_verts)
    return AlcoveData(rs, tuple(verts), centroid, short_verts)


HalfSpace = Tuple[Vector, str, Fraction]  # (normal, "<=" or ">=", bound)


def order_polytope_halfspaces(c: ConvexSet) -> List[HalfSpace]:
    """Defining half-spaces of the union of member alcoves.

    <x, alpha> <= 0 for alpha in the lower set D, <x, beta> >= 0 for beta
    outside the upper set A, and the caps <x, w^{-1} xi> <= 1 over members.
    """
    ctx = c.ctx
    if not isinstance(ctx, WeylContext):
        raise TypeError("order polytopes need a finite Weyl context")
    rs = ctx.root_system
    hs: List[HalfSpace] = []
    for k in c.canonical_lower:
        hs.append((rs.positive_roots[k], "<=", Fraction(0)))
    for k in range(rs.num_positive_roots):
        if k not in c.upper:
            hs.append((rs.positive_roots[k], ">=", Fraction(0)))
    xi = rs.highest_root
    for m in c.members:
        hs.append((weyl.inverse(m).apply(xi), "<=", Fraction(1)))
    return hs


def contains(halfspaces: Sequence[HalfSpace], point: Vector) -> bool:
    for normal, sense, bound in halfspaces:
        val = dot(normal, point)
        if sense == "<=" and val > bound:
            return False
        if sense == ">=" and val < bound:
            return False
    return True


def alcove_vertices_of(c: ConvexSet, member_index: int) -> List[Vector]:
    """Vertices of the alcove w^{-1} Q_id for the given member."""
    ctx = c.ctx
    data = alcove_data(ctx.root_system)
    winv = weyl.inverse(c.members[member_index])
    return [winv.apply(v) for v in data.vertices]


def centroid(c: ConvexSet) -> Vector:
    """Centroid of the order polytope: the average of the member alcove centroids."""
    ctx = c.ctx
    if not isinstance(ctx, WeylContext):
        raise TypeError("order polytopes need a finite Weyl context")
    rs = ctx.root_system
    data = alcove_data(rs)
    total = zero(rs.ambient_dim)
    for m in c.members:
        total = add(total, weyl.inverse(m).apply(data.centroid))
    return scale(Fraction(1, len(c.members)), total)


# -- mean heights and witnesses ------------------------------------------------


def mean_height(c: ConvexSet, root_index: int) -> Fraction:
    """Average height of the images w(beta) over the members."""
    rs = c.ctx.root_system
    total = 0
    for m in c.members:
        img = m.apply_root_index(root_index)
        total += rs.heights[img - 1] if img > 0 else -rs.heights[-img - 1]
    return Fraction(total, len(c.members))


def small_mean_height_root(c: ConvexSet) -> Optional[int]:
    """First positive root whose mean image height is strictly below 1."""
    if len(c) < 2:
        raise ValueError("needs a non-singleton set")
    rs = c.ctx.root_system
    for k in range(rs.num_positive_roots):
        if abs(mean_height(c, k)) < 1:
            return k
    return None


def centroid_split_root(c: ConvexSet) -> Optional[int]:
    """A root splitting the set whose centroid pairing obeys the margin bound.

    Scans positive roots in (height, lex) order and returns the first k with
    0 < |C_k| < |C| and |<centroid, root_k>| <= margin / (rank + 1).
    """
    if len(c) < 2:
        raise ValueError("needs a non-singleton set")
    rs = c.ctx.root_system
    params = alcove_params(rs)
    o = centroid(c)
    limit = params.margin / (rs.rank + 1)
    n = len(c)
    for k in range(rs.num_positive_roots):
        cnt = c.inversion_count(k)
        if 0 < cnt < n and abs(dot(o, rs.positive_roots[k])) <= limit:
            return k
    return None


# -- rigorous exponential bounds ----------------------------------------------


def exp_lower_bound(x: Fraction, terms: int = 80) -> Fraction:
    """A rational lower bound on e^x via a partial exponential series sum.

    For x > 0 every term is positive, so the partial sum is strictly below
    e^x; with 80 terms the gap is negligible for the exponents used here.
    """
    if x < 0:
        raise ValueError("needs x >= 0")
    acc = Fraction(0)
    term = Fraction(1)
    for k in range(terms):
        acc += term
        term = term * x / (k + 1)
    return acc


def exponential_bound_threshold(rs: RootSystem) -> Fraction:
    """A strict rational upper bound on 1/(2 e^exponent) for the type."""
    return Fraction(1, 2) / exp_lower_bound(alcove_params(rs).exponent)


def check_exponential_bound(c: ConvexSet) -> bool:
    """Certify balance >= 1/(2 e^exponent) through the rational threshold."""
    if len(c) < 2:
        raise ValueError("needs a non-singleton set")
    return c.balance_value() >= exponential_bound_threshold(c.ctx.root_system)


def short_root_bound_threshold() -> Fraction:
    return Fraction(1, 2) / exp_lower_bound(Fraction(1))


def check_short_root_bound(c: ConvexSet) -> bool:
    """Certify the improved type B bound balance >= 1/(2e)."""
    rs = c.ctx.root_system
    if rs.family != "B":
        raise ValueError("the short-root bound is asserted for type B only")
    if len(c) < 2:
        raise ValueError("needs a non-singleton set")
    return c.balance_value() >= short_root_bound_threshold()
