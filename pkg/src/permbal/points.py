"""Exact planar points with epsilon-lexicographic coordinates.

A coordinate is a pair (base, eps) meaning base + eps * epsilon for an
infinitesimal epsilon > 0; comparison is lexicographic.  This realizes
every "+epsilon" point insertion and the infinitesimally rotated grids
without any floating point.  Plain tuples are used so that Python's tuple
ordering does the comparisons.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import TiedCoordinates
from .perms import Perm

Coord = tuple[Fraction, int]  # (base, eps multiplier)
Point = tuple[Coord, Coord]


def coord(base, eps: int = 0) -> Coord:
    return (Fraction(base), int(eps))


def point(x_base, y_base, x_eps: int = 0, y_eps: int = 0) -> Point:
    return (coord(x_base, x_eps), coord(y_base, y_eps))


def grid_point(x: int, y: int) -> Point:
    return (coord(x), coord(y))


def check_point_set(points: Sequence[Point]) -> None:
    """No two points may share an x- or a y-coordinate (exactly)."""
    xs = {p[0] for p in points}
    if len(xs) != len(points):
        raise TiedCoordinates("two points share an x-coordinate")
    ys = {p[1] for p in points}
    if len(ys) != len(points):
        raise TiedCoordinates("two points share a y-coordinate")


def from_points(points: Iterable[Point]) -> Perm:
    """Rank-normalize a point set into its permutation.

    Sort by x; the permutation value at each position is the rank of the
    point's y-coordinate.
    """
    pts = list(points)
    check_point_set(pts)
    by_x = sorted(pts, key=lambda p: p[0])
    y_sorted = sorted(p[1] for p in pts)
    y_rank = {y: r + 1 for r, y in enumerate(y_sorted)}
    return tuple(y_rank[p[1]] for p in by_x)
