"""Filtered isocrystals with a minuscule filtration, at the slope level.

A filtered isocrystal here is slope data (a SlopeType) together with a
two-step filtration datum: the filtration is everything in degree h - 1,
an f-dimensional subspace in degree h, and zero above.  Two integers rule
the theory:

* ``t_newton``: the valuation of the Frobenius determinant = total degree
  of the slope data;
* ``t_hodge``: the filtration degree h*f + (h-1)*(n-f).

Weak admissibility demands t_hodge = t_newton globally and, for every
Frobenius-stable subobject, filtration degree <= Newton degree.  At slope
level the subobjects are sub-selections of the summand multiset, and the
one quantity not determined by slope data alone is how much of the
f-dimensional filtration step each subobject captures.  That is supplied by
an intersection profile: ``GENERIC`` models a filtration step in general
position against every individual subobject, an ``ExplicitProfile`` pins
the intersection dimensions by hand.

The degree of the Frobenius module attached to such a filtered isocrystal
is t_newton - t_hodge, and its summand slopes are confined to the window
[min_slope - h, max_slope - h + 1]; ``candidate_module_types`` enumerates
every slope type meeting those constraints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Mapping, NamedTuple, Union

from slopelab.exactnum import (
    ConvexPolygon,
    DomainError,
    lies_on_or_above,
    polygon_from_slopes,
    share_endpoints,
)
from slopelab.slopecalc import SimpleSummand, SlopeType, iter_slope_types

__all__ = [
    "MinusculeHodge",
    "SubSelection",
    "GenericProfile",
    "ExplicitProfile",
    "GENERIC",
    "IntersectionProfile",
    "FilteredType",
    "SubCheck",
    "wa_exists",
    "is_unit_root",
]


@dataclass(frozen=True)
class MinusculeHodge:
    """Minuscule filtration datum: jump at h, step dimension f, ambient rank n.

    Concretely: degree h - 1 holds everything, degree h holds an
    f-dimensional subspace, degree h + 1 holds zero.
    """

    h: int
    f: int
    n: int

    def __post_init__(self) -> None:
        if not all(isinstance(v, int) for v in (self.h, self.f, self.n)):
            raise DomainError("Hodge datum needs integer h, f, n")
        if not 0 <= self.f <= self.n:
            raise DomainError(f"need 0 <= f <= n, got f = {self.f}, n = {self.n}")

    @property
    def t_hodge(self) -> int:
        """Filtration degree: f dimensions in degree h, n - f in degree h - 1."""
        return self.h * self.f + (self.h - 1) * (self.n - self.f)

    def polygon(self) -> ConvexPolygon:
        pairs = [(self.h - 1, self.n - self.f), (self.h, self.f)]
        return polygon_from_slopes([(s, r) for s, r in pairs if r > 0])


@dataclass(frozen=True)
class SubSelection:
    """A Frobenius-stable subobject at slope level: per summand key of the
    ambient SlopeType, how many copies the subobject takes."""

    pairs: tuple[tuple[SimpleSummand, int], ...]

    def __post_init__(self) -> None:
        if any(not isinstance(k, int) or k < 0 for _, k in self.pairs):
            raise DomainError("selection counts must be naturals")

    @classmethod
    def of(cls, iso: SlopeType, counts: tuple[int, ...]) -> "SubSelection":
        if len(counts) != len(iso.summands):
            raise DomainError(
                f"selection needs {len(iso.summands)} counts, got {len(counts)}"
            )
        for (summand, copies), chosen in zip(iso.summands, counts):
            if not 0 <= chosen <= copies:
                raise DomainError(
                    f"selection takes {chosen} copies of ({summand.c},{summand.d}) "
                    f"but only {copies} exist"
                )
        return cls(tuple((s, k) for (s, _), k in zip(iso.summands, counts)))

    @classmethod
    def enumerate(cls, iso: SlopeType) -> Iterator["SubSelection"]:
        """Every selection, componentwise from all-zero to full."""
        ranges = [range(copies + 1) for _, copies in iso.summands]
        for counts in product(*ranges):
            yield cls.of(iso, counts)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(k for _, k in self.pairs)

    @property
    def rank(self) -> int:
        return sum(s.d * k for s, k in self.pairs)

    @property
    def t_newton(self) -> int:
        return sum(s.c * k for s, k in self.pairs)

    def as_slope_type(self) -> SlopeType:
        return SlopeType(tuple((s, k) for s, k in self.pairs if k > 0))


class GenericProfile:
    """Filtration step in general position against each subobject: the
    intersection has the smallest dimension linear algebra allows."""

    def intersection_dim(self, selection: SubSelection, hodge: MinusculeHodge) -> int:
        return max(0, selection.rank + hodge.f - hodge.n)

    def __repr__(self) -> str:
        return "GENERIC"


GENERIC = GenericProfile()


@dataclass(frozen=True)
class ExplicitProfile:
    """Hand-pinned intersection dimensions, keyed by selection counts.

    The table must cover every selection of the ambient slope type and obey
    what an actual filtration forces on dim(sub /\\ step):

    * max(0, rank + f - n) <= value <= min(rank, f) (linear algebra bounds),
    * monotone under enlarging the selection,
    * empty selection gets 0, full selection gets f.
    """

    table: Mapping[tuple[int, ...], int] = field(default_factory=dict)

    def intersection_dim(self, selection: SubSelection, hodge: MinusculeHodge) -> int:
        counts = selection.counts
        if counts not in self.table:
            raise DomainError(f"profile has no entry for selection {counts}")
        return self.table[counts]

    def validate(self, iso: SlopeType, hodge: MinusculeHodge) -> None:
        f, n = hodge.f, hodge.n
        selections = list(SubSelection.enumerate(iso))
        for sel in selections:
            value = self.intersection_dim(sel, hodge)
            if not isinstance(value, int):
                raise DomainError(f"profile value for {sel.counts} must be an integer")
            low = max(0, sel.rank + f - n)
            high = min(sel.rank, f)
            if not low <= value <= high:
                raise DomainError(
                    f"profile value {value} for selection {sel.counts} outside "
                    f"the linear-algebra range [{low}, {high}]"
                )
        by_counts = {sel.counts: sel for sel in selections}
        for sel in selections:
            for i, (_, copies) in enumerate(iso.summands):
                if sel.counts[i] < copies:
                    bigger = list(sel.counts)
                    bigger[i] += 1
                    grown = by_counts[tuple(bigger)]
                    if self.intersection_dim(sel, hodge) > self.intersection_dim(grown, hodge):
                        raise DomainError(
                            f"profile not monotone: {sel.counts} -> {tuple(bigger)}"
                        )
        full = tuple(copies for _, copies in iso.summands)
        if self.table.get(tuple(0 for _ in iso.summands)) != 0:
            raise DomainError("profile must give the empty selection 0")
        if self.table.get(full) != f:
            raise DomainError(f"profile must give the full selection f = {f}")


IntersectionProfile = Union[GenericProfile, ExplicitProfile]


class SubCheck(NamedTuple):
    """One row of the weak-admissibility ledger: a subobject's selection
    counts, its Newton degree, and the filtration degree it must dominate."""

    selection: tuple[int, ...]
    t_newton: int
    bound: int

    @property
    def ok(self) -> bool:
        return self.bound <= self.t_newton


@dataclass(frozen=True)
class FilteredType:
    """Slope data plus a minuscule filtration datum and intersection profile."""

    iso: SlopeType
    hodge: MinusculeHodge
    profile: IntersectionProfile = GENERIC

    def __post_init__(self) -> None:
        if self.hodge.n != self.iso.rank:
            raise DomainError(
                f"Hodge datum rank n = {self.hodge.n} does not match "
                f"slope data rank {self.iso.rank}"
            )

    @property
    def t_newton(self) -> int:
        """Valuation of the Frobenius determinant: the total degree."""
        return self.iso.degree

    @property
    def t_hodge(self) -> int:
        return self.hodge.t_hodge

    @property
    def module_degree(self) -> int:
        """Degree of the attached Frobenius module: t_newton - t_hodge."""
        return self.t_newton - self.t_hodge

    def hodge_polygon(self) -> ConvexPolygon:
        return self.hodge.polygon()

    def _validated_profile(self) -> IntersectionProfile:
        if isinstance(self.profile, ExplicitProfile):
            self.profile.validate(self.iso, self.hodge)
        return self.profile

    def subobject_checks(self) -> list[SubCheck]:
        """The full weak-admissibility ledger over all sub-selections.

        Each subobject inherits the filtration; its filtration degree is
        (h - 1) * rank + intersection_dim, which must not exceed its
        Newton degree.
        """
        profile = self._validated_profile()
        h = self.hodge.h
        rows = []
        for sel in SubSelection.enumerate(self.iso):
            iota = profile.intersection_dim(sel, self.hodge)
            bound = (h - 1) * sel.rank + iota
            rows.append(SubCheck(sel.counts, sel.t_newton, bound))
        return rows

    def is_weakly_admissible(self) -> bool:
        """Top degrees equal, and every subobject's filtration degree is
        dominated by its Newton degree."""
        self._validated_profile()
        if self.t_hodge != self.t_newton:
            return False
        return all(row.ok for row in self.subobject_checks())

    def slope_window(self) -> tuple:
        """Slope interval [min - h, max - h + 1] confining every summand of
        the attached Frobenius module (from the twisted lattice sandwich)."""
        if not self.iso.summands:
            raise DomainError("slope window needs rank > 0")
        h = self.hodge.h
        return (self.iso.min_slope() - h, self.iso.max_slope() - h + 1)

    def candidate_module_types(self) -> list[SlopeType]:
        """All slope types the attached Frobenius module could have: rank n,
        degree t_newton - t_hodge, slopes inside the sandwich window.
        Exhaustive, in canonical ascending order."""
        if self.iso.rank == 0:
            raise DomainError("candidate enumeration needs rank > 0")
        lo, hi = self.slope_window()
        wanted_degree = self.module_degree
        found = list(iter_slope_types(self.iso.rank, lo, hi, degree=wanted_degree))
        for cand in found:
            assert cand.rank == self.iso.rank and cand.degree == wanted_degree
        found.sort(key=lambda t: t.sort_key)
        return found


def wa_exists(iso: SlopeType, hodge: MinusculeHodge) -> bool:
    """Polygon criterion for the filtration datum to carry some weakly
    admissible filtration: the Hodge polygon lies on or below the Newton
    polygon and the two share endpoints."""
    if hodge.n != iso.rank:
        raise DomainError(
            f"Hodge datum rank n = {hodge.n} does not match slope data rank {iso.rank}"
        )
    newton = iso.newton_polygon()
    hodgegon = hodge.polygon()
    return lies_on_or_above(newton, hodgegon) and share_endpoints(newton, hodgegon)


def is_unit_root(module: SlopeType) -> bool:
    """True when the slope type is a direct sum of unit objects M(0, 1)."""
    return all((s.c, s.d) == (0, 1) for s, _ in module.summands)
