"""Exact tensor arithmetic on slope data.

Isocrystals and Frobenius modules over the relevant period rings share one
classification: every object is a direct sum of standard simples M(c, d),
one for each coprime pair with d >= 1, and the multiset of pairs determines
the object up to isomorphism.  M(c, d) has rank d, degree c and slope c/d.
Everything the tensor category does to objects (tensor, dual, twists,
exterior powers, Frobenius restriction, Hom spaces) acts computably on that
multiset, so this module tracks isomorphism classes only: no bases, no
matrices, no ring elements.

The non-coprime notation M(nc, nd) means M(c, d) to the n-th direct power;
``normalize`` applies that rule to raw (c, d, copies) triples.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, comb, floor, gcd, lcm
from typing import Iterable, Iterator, NamedTuple

from slopelab.exactnum import (
    ConvexPolygon,
    DomainError,
    ExtCount,
    Fraction,
    INFINITY,
    RationalLike,
    as_fraction,
    polygon_from_slopes,
)

__all__ = [
    "SimpleSummand",
    "DivisionAlgebra",
    "SlopeType",
    "normalize",
    "EMPTY",
    "UNIT",
    "simple_summands_between",
    "iter_slope_types",
]


class DivisionAlgebra(NamedTuple):
    """Invariants of the endomorphism algebra of a simple: a central
    division algebra of the given dimension with the given Hasse invariant."""

    dimension: int
    hasse: Fraction


@dataclass(frozen=True, slots=True)
class SimpleSummand:
    """The simple object M(c, d): rank d, degree c, slope c/d.

    Requires gcd(c, d) = 1 and d >= 1; in particular c = 0 forces d = 1.
    """

    c: int
    d: int

    def __post_init__(self) -> None:
        if not isinstance(self.c, int) or not isinstance(self.d, int):
            raise DomainError(f"summand needs integer c, d; got ({self.c!r}, {self.d!r})")
        if self.d < 1:
            raise DomainError(f"summand rank d must be >= 1, got {self.d}")
        if gcd(self.c, self.d) != 1:
            raise DomainError(f"summand ({self.c}, {self.d}) is not coprime; use normalize()")

    @property
    def slope(self) -> Fraction:
        return Fraction(self.c, self.d)

    @property
    def rank(self) -> int:
        return self.d

    @property
    def degree(self) -> int:
        return self.c

    @property
    def sort_key(self) -> tuple[Fraction, int, int]:
        return (self.slope, self.c, self.d)

    def end_algebra(self) -> DivisionAlgebra:
        """End(M(c, d)): dimension d^2, Hasse invariant c/d mod 1 in [0, 1)."""
        return DivisionAlgebra(self.d * self.d, self.slope % 1)


def _merge(raw: Iterable[tuple[int, int, int]]) -> tuple[tuple[SimpleSummand, int], ...]:
    counts: dict[tuple[int, int], int] = {}
    for c, d, copies in raw:
        if not (isinstance(c, int) and isinstance(d, int) and isinstance(copies, int)):
            raise DomainError(f"normalize needs integer triples, got ({c!r}, {d!r}, {copies!r})")
        if d < 1:
            raise DomainError(f"rank d must be >= 1, got d = {d}")
        if copies < 1:
            raise DomainError(f"copies must be >= 1, got {copies}")
        g = gcd(c, d)
        key = (c // g, d // g)
        counts[key] = counts.get(key, 0) + copies * g
    simples = sorted((SimpleSummand(c, d) for c, d in counts), key=lambda s: s.sort_key)
    return tuple((s, counts[(s.c, s.d)]) for s in simples)


@dataclass(frozen=True)
class SlopeType:
    """Canonical multiset of simple summands with positive copy counts.

    ``summands`` holds (SimpleSummand, copies) pairs sorted by ascending
    (slope, c, d) with no duplicate keys.  The empty tuple is the rank-0
    object.  Build values through :func:`normalize` unless the input is
    already canonical.
    """

    summands: tuple[tuple[SimpleSummand, int], ...] = ()

    def __post_init__(self) -> None:
        keys = []
        for summand, copies in self.summands:
            if not isinstance(summand, SimpleSummand):
                raise DomainError(f"expected SimpleSummand, got {summand!r}")
            if not isinstance(copies, int) or copies < 1:
                raise DomainError(f"copies must be >= 1, got {copies!r}")
            keys.append(summand.sort_key)
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise DomainError("summands must be strictly sorted by (slope, c, d); use normalize()")

    # -- bookkeeping ------------------------------------------------------

    @property
    def rank(self) -> int:
        return sum(s.d * m for s, m in self.summands)

    @property
    def degree(self) -> int:
        return sum(s.c * m for s, m in self.summands)

    def weight(self) -> Fraction:
        """Average slope degree/rank; undefined on the rank-0 object."""
        if not self.summands:
            raise DomainError("weight of the rank-0 object is undefined")
        return Fraction(self.degree, self.rank)

    def slope_multiplicities(self) -> list[tuple[Fraction, int]]:
        """Ascending (slope, total rank at that slope) pairs."""
        return [(s.slope, s.d * m) for s, m in self.summands]

    def copies_of(self, c: int, d: int) -> int:
        for s, m in self.summands:
            if (s.c, s.d) == (c, d):
                return m
        return 0

    @property
    def sort_key(self) -> tuple:
        return tuple((s.slope, s.c, s.d, m) for s, m in self.summands)

    def min_slope(self) -> Fraction:
        if not self.summands:
            raise DomainError("min_slope of the rank-0 object is undefined")
        return self.summands[0][0].slope

    def max_slope(self) -> Fraction:
        if not self.summands:
            raise DomainError("max_slope of the rank-0 object is undefined")
        return self.summands[-1][0].slope

    def is_isoclinic(self) -> bool:
        """True when at most one distinct slope occurs."""
        return len(self.summands) <= 1

    def newton_polygon(self) -> ConvexPolygon:
        return polygon_from_slopes(self.slope_multiplicities())

    def decency_integer(self) -> int:
        """Least s >= 1 making s times every slope integral: lcm of the d's."""
        if not self.summands:
            raise DomainError("decency integer of the rank-0 object is undefined")
        return lcm(*(s.d for s, _ in self.summands))

    # -- tensor-category operations ---------------------------------------

    def direct_sum(self, other: "SlopeType") -> "SlopeType":
        raw = [(s.c, s.d, m) for s, m in self.summands]
        raw += [(s.c, s.d, m) for s, m in other.summands]
        return normalize(raw)

    def tensor(self, other: "SlopeType") -> "SlopeType":
        """Bilinear extension of M(c,d) (x) M(c',d') = M(cd'+c'd, dd')."""
        raw = [
            (s.c * t.d + t.c * s.d, s.d * t.d, m * k)
            for s, m in self.summands
            for t, k in other.summands
        ]
        return normalize(raw)

    def dual(self) -> "SlopeType":
        """M(c,d) goes to M(-c,d), copies preserved."""
        return normalize([(-s.c, s.d, m) for s, m in self.summands])

    def tate_twist(self, r: int) -> "SlopeType":
        """Tensor with the rank-1 object of slope r: every slope shifts by r."""
        return normalize([(s.c + r * s.d, s.d, m) for s, m in self.summands])

    def determinant(self) -> "SlopeType":
        """Top exterior power: the rank-1 object of degree = total degree."""
        return normalize([(self.degree, 1, 1)])

    def exterior_power(self, k: int) -> "SlopeType":
        """k-th exterior power.

        Expanded multiplicatively over the summands: wedge^k(X + Y) is the
        sum over i + j = k of wedge^i X (x) wedge^j Y.  An isoclinic block
        of slope s and rank m has wedge^i isoclinic of slope i*s and rank
        binomial(m, i); that rank is always divisible by the reduced
        denominator of i*s (checked at runtime), so the block renormalizes
        to copies of a single simple.
        """
        if not isinstance(k, int) or k < 0 or k > self.rank:
            raise DomainError(f"exterior power k = {k!r} outside 0..{self.rank}")
        table: dict[int, SlopeType] = {0: UNIT}
        for s, copies in self.summands:
            m = s.d * copies
            block = {
                i: _isoclinic(s.slope * i, comb(m, i)) for i in range(min(m, k) + 1)
            }
            grown: dict[int, SlopeType] = {}
            for j, acc in table.items():
                for i, wedge in block.items():
                    if i + j > k:
                        break
                    prior = grown.get(i + j, EMPTY)
                    grown[i + j] = prior.direct_sum(acc.tensor(wedge))
            table = grown
        return table[k]

    def frobenius_restriction(self, b: int) -> "SlopeType":
        """Restriction along the b-th power of Frobenius: slopes scale by b,
        rank is preserved.  For a single M(c, d) with b = d this is the
        stated special case M(c, 1) to the d-th power."""
        if not isinstance(b, int) or b < 1:
            raise DomainError(f"restriction index must be a positive integer, got {b!r}")
        return normalize([(b * s.c, s.d, m) for s, m in self.summands])

    # -- cohomology counts -------------------------------------------------

    def h0_dim(self) -> ExtCount:
        """Dimension of the Frobenius invariants: a positive slope block
        contributes 0, each unit copy M(0, 1) contributes 1, and any
        negative slope makes the count infinite."""
        total = ExtCount(0)
        for s, copies in self.summands:
            if s.c < 0:
                return INFINITY
            if s.c == 0:
                total += copies
        return total

    def hom_dim(self, other: "SlopeType") -> ExtCount:
        """dim Hom(self, other) = h0 of (dual of self) tensor other."""
        return self.dual().tensor(other).h0_dim()


def normalize(raw: Iterable[tuple[int, int, int]]) -> SlopeType:
    """Build a SlopeType from raw (c, d, copies) triples.

    Each triple is reduced by g = gcd(c, d) to g*copies copies of the simple
    (c/g, d/g); duplicates merge.  d must be positive and copies >= 1.
    """
    return SlopeType(_merge(raw))


EMPTY = SlopeType(())
UNIT = normalize([(0, 1, 1)])


def _isoclinic(slope: Fraction, rank: int) -> SlopeType:
    """The isoclinic object of the given slope and rank: M(p, q)^(rank/q)
    for slope p/q in lowest terms.  rank = 0 gives the empty object."""
    if rank == 0:
        return EMPTY
    q = slope.denominator
    if rank % q:
        raise AssertionError(
            f"internal consistency error: isoclinic rank {rank} not divisible by "
            f"slope denominator {q}"
        )
    return SlopeType(((SimpleSummand(slope.numerator, q), rank // q),))


# -- enumeration ------------------------------------------------------------


def simple_summands_between(
    lo: RationalLike, hi: RationalLike, max_rank: int
) -> list[SimpleSummand]:
    """All simples of rank <= max_rank with slope in [lo, hi], ascending."""
    lo, hi = as_fraction(lo), as_fraction(hi)
    found = [
        SimpleSummand(c, d)
        for d in range(1, max_rank + 1)
        for c in range(ceil(lo * d), floor(hi * d) + 1)
        if gcd(c, d) == 1
    ]
    found.sort(key=lambda s: s.sort_key)
    return found


def iter_slope_types(
    rank: int,
    lo: RationalLike,
    hi: RationalLike,
    degree: int | None = None,
) -> Iterator[SlopeType]:
    """Every SlopeType of exactly the given rank whose slopes lie in
    [lo, hi], optionally restricted to a fixed total degree.

    Deterministic: simples are consumed in ascending (slope, c, d) order,
    copy counts of the current simple explored from 0 upward.
    """
    if not isinstance(rank, int) or rank < 0:
        raise DomainError(f"rank must be a natural number, got {rank!r}")
    lo, hi = as_fraction(lo), as_fraction(hi)
    simples = simple_summands_between(lo, hi, rank)

    def walk(
        index: int, rank_left: int, acc: list[tuple[SimpleSummand, int]]
    ) -> Iterator[SlopeType]:
        if rank_left == 0:
            cand = SlopeType(tuple(acc))
            if degree is None or cand.degree == degree:
                yield cand
            return
        if index == len(simples):
            return
        s = simples[index]
        if degree is not None:
            # Remaining slopes all lie in [s.slope, hi]; prune infeasible degree.
            used = sum(t.c * m for t, m in acc)
            need = degree - used
            if need < rank_left * s.slope or need > rank_left * hi:
                return
        for m in range(rank_left // s.d + 1):
            if m:
                acc.append((s, m))
            yield from walk(index + 1, rank_left - m * s.d, acc)
            if m:
                acc.pop()

    yield from walk(0, rank, [])
