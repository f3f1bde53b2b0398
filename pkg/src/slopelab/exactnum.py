"""Exact numeric foundations shared by every other module.

Three small pieces live here:

* ``Fraction`` -- re-export of :class:`fractions.Fraction`.  The standard
  library type already guarantees lowest terms, a positive denominator and
  exact arbitrary-precision arithmetic, which is all the rest of the package
  requires.  No floating point is used anywhere in this package's geometry.
* ``ExtCount`` -- a natural number extended with a single absorbing infinity,
  used for dimension counts that may be infinite.
* ``ConvexPolygon`` -- a lower-convex polygon anchored at the origin, the
  common shape of Newton and Hodge polygons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from typing import Iterable, Union

__all__ = [
    "Fraction",
    "DomainError",
    "ExtCount",
    "INFINITY",
    "ConvexPolygon",
    "polygon_from_slopes",
    "lies_on_or_above",
    "share_endpoints",
]


class DomainError(ValueError):
    """Raised when an operation is asked for input outside its domain."""


RationalLike = Union[int, Fraction]


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce an int or Fraction to Fraction, rejecting anything inexact."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise DomainError(f"expected an exact rational, got {value!r}")


@dataclass(frozen=True)
class ExtCount:
    """A count in {0, 1, 2, ...} extended with infinity.

    ``count is None`` encodes infinity.  Addition saturates: anything plus
    infinity is infinity.  Use the module constant ``INFINITY`` rather than
    spelling ``ExtCount(None)`` at call sites.
    """

    count: int | None

    def __post_init__(self) -> None:
        if self.count is not None:
            if not isinstance(self.count, int) or self.count < 0:
                raise DomainError(f"ExtCount needs a natural number, got {self.count!r}")

    @property
    def is_finite(self) -> bool:
        return self.count is not None

    def __add__(self, other: "ExtCount | int") -> "ExtCount":
        if isinstance(other, int):
            other = ExtCount(other)
        if not isinstance(other, ExtCount):
            return NotImplemented
        if self.count is None or other.count is None:
            return INFINITY
        return ExtCount(self.count + other.count)

    __radd__ = __add__

    def __str__(self) -> str:
        return "inf" if self.count is None else str(self.count)


INFINITY = ExtCount(None)

Breakpoint = tuple[int, Fraction]


@dataclass(frozen=True)
class ConvexPolygon:
    """Lower-convex polygon: breakpoints from (0, 0), slopes nondecreasing.

    Breakpoints have strictly increasing integer x coordinates and exact
    rational heights.  A single breakpoint (0, 0) is the empty polygon.
    """

    breakpoints: tuple[Breakpoint, ...]

    def __post_init__(self) -> None:
        pts = self.breakpoints
        if not pts:
            raise DomainError("a polygon needs at least the origin breakpoint")
        if pts[0] != (0, Fraction(0)):
            raise DomainError(f"polygon must start at (0, 0), got {pts[0]!r}")
        for (x0, _), (x1, _) in zip(pts, pts[1:]):
            if not (isinstance(x0, int) and isinstance(x1, int) and x0 < x1):
                raise DomainError("breakpoint x coordinates must be strictly increasing integers")
        slopes = [
            (y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(pts, pts[1:])
        ]
        for s0, s1 in zip(slopes, slopes[1:]):
            if s0 > s1:
                raise DomainError("segment slopes must be nondecreasing left to right")

    @property
    def width(self) -> int:
        """Largest x coordinate covered by the polygon."""
        return self.breakpoints[-1][0]

    @property
    def endpoint(self) -> Breakpoint:
        return self.breakpoints[-1]

    def height_at(self, x: RationalLike) -> Fraction:
        """Exact height of the polygon above x, for 0 <= x <= width."""
        x = as_fraction(x)
        if x < 0 or x > self.width:
            raise DomainError(f"x = {x} outside polygon range [0, {self.width}]")
        pts = self.breakpoints
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        return pts[-1][1]


def polygon_from_slopes(slopes: Iterable[tuple[RationalLike, int]]) -> ConvexPolygon:
    """Build the polygon whose segments are the given (slope, rank) pairs.

    Slopes are sorted ascending; equal slopes merge into one segment.  Each
    pair contributes a run of horizontal length ``rank`` with the given
    slope.  The empty multiset gives the single-point polygon at the origin.
    """
    cleaned: list[tuple[Fraction, int]] = []
    for slope, rank in slopes:
        if not isinstance(rank, int) or rank <= 0:
            raise DomainError(f"segment rank must be a positive integer, got {rank!r}")
        cleaned.append((as_fraction(slope), rank))
    cleaned.sort(key=lambda pair: pair[0])
    points: list[Breakpoint] = [(0, Fraction(0))]
    for slope, group in groupby(cleaned, key=lambda pair: pair[0]):
        run = sum(rank for _, rank in group)
        x, y = points[-1]
        points.append((x + run, y + slope * run))
    return ConvexPolygon(tuple(points))


def _check_same_range(p: ConvexPolygon, q: ConvexPolygon) -> None:
    if p.width != q.width:
        raise DomainError(
            f"polygons cover different x ranges: [0, {p.width}] vs [0, {q.width}]"
        )


def lies_on_or_above(p: ConvexPolygon, q: ConvexPolygon) -> bool:
    """True when p is pointwise on or above q over their shared x range.

    Both polygons break only at integer x, so between consecutive integers
    each is affine and checking integer x alone is exact.
    """
    _check_same_range(p, q)
    return all(p.height_at(x) >= q.height_at(x) for x in range(p.width + 1))


def share_endpoints(p: ConvexPolygon, q: ConvexPolygon) -> bool:
    """True when p and q start and end at the same points."""
    _check_same_range(p, q)
    return p.endpoint == q.endpoint
