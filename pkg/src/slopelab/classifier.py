"""Decides whether weak admissibility pins down admissibility.

Input: the Newton slopes of an isocrystal, all within [0, 1], as a
SlopeType.  For the minuscule filtration datum attached to such slope data,
the weakly admissible locus coincides with the admissible locus exactly
when the slopes match one of three good patterns:

* kind A: integer slopes plus at most one simple of slope 1/h;
* kind B: integer slopes plus at most one simple of slope (h-1)/h;
* kind C: integer slopes plus exactly two copies of the slope-1/2 simple.

Any other multiset contains one of five minimal bad sub-multisets, each of
which already forces the two loci apart, and the classifier reports the
first one it finds as a witness:

* T1: a single simple M(c, h) with 2 <= c <= h - 2 (so h >= 5);
* T5: three copies of M(1, 2);
* T2: simples of slopes 1/h1 and 1/h2 with 2 <= h1 <= h2, h2 > 2;
* T3: the dual picture, slopes (h1-1)/h1 and (h2-1)/h2, same bounds;
* T4: slopes 1/h1 and (h2-1)/h2 with h1, h2 >= 3.

Exactly one of pattern/witness applies to every valid input; ``classify``
asserts that dichotomy at runtime, and the sweep helpers re-verify it
exhaustively.  The verdict is a statement about the loci as analytic
spaces, rational points over finite extensions agree regardless.

Slope duality (every slope replaced by its reflection 1 - s) exchanges A
with B, fixes C, exchanges T2 with T3, and fixes T1, T4, T5 as families,
so verdicts are duality-invariant; enlarging slope data never destroys a
witness, so non-equal verdicts are monotone under direct sum.  Both facts
are exercised by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator, Optional

from slopelab.exactnum import DomainError
from slopelab.slopecalc import SimpleSummand, SlopeType, iter_slope_types, normalize

__all__ = [
    "GoodPattern",
    "BadWitness",
    "Verdict",
    "validate_input",
    "match_pattern",
    "find_witness",
    "classify",
    "dual_slopes",
    "iter_unit_interval_types",
    "xor_violations",
    "duality_violations",
]


@dataclass(frozen=True)
class GoodPattern:
    """A matched good configuration.

    ``h1`` and ``h0`` count the slope-1 and slope-0 multiplicities.  ``h``
    is the denominator of the fractional block: kind A carries one simple
    of slope 1/h (h = 0 when no fractional block exists), kind B one
    simple of slope (h-1)/h with h >= 3, kind C the fixed block of two
    slope-1/2 simples, recorded as h = 2.
    """

    kind: str
    h1: int
    h: int
    h0: int

    def __post_init__(self) -> None:
        if self.kind not in ("A", "B", "C"):
            raise DomainError(f"unknown pattern kind {self.kind!r}")
        if self.h1 < 0 or self.h0 < 0:
            raise DomainError("slope multiplicities must be naturals")
        if self.kind == "A" and (self.h < 0 or self.h == 1):
            raise DomainError(f"kind A needs h = 0 or h >= 2, got {self.h}")
        if self.kind == "B" and self.h < 3:
            raise DomainError(f"kind B needs h >= 3, got {self.h}")
        if self.kind == "C" and self.h != 2:
            raise DomainError(f"kind C fixes h = 2, got {self.h}")


@dataclass(frozen=True)
class BadWitness:
    """A minimal bad sub-multiset, by kind and parameters."""

    kind: str
    params: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        kind, p = self.kind, self.params
        if kind == "T1":
            c, h = _expect_params(p, 2, kind)
            if gcd(c, h) != 1 or not 2 <= c <= h - 2 or h < 5:
                raise DomainError(f"T1 needs coprime 2 <= c <= h - 2, got {p}")
        elif kind in ("T2", "T3"):
            h1, h2 = _expect_params(p, 2, kind)
            if not (2 <= h1 <= h2 and h2 > 2):
                raise DomainError(f"{kind} needs 2 <= h1 <= h2 and h2 > 2, got {p}")
        elif kind == "T4":
            h1, h2 = _expect_params(p, 2, kind)
            if h1 < 3 or h2 < 3:
                raise DomainError(f"T4 needs h1, h2 >= 3, got {p}")
        elif kind == "T5":
            _expect_params(p, 0, kind)
        else:
            raise DomainError(f"unknown witness kind {kind!r}")

    def sub_multiset(self) -> SlopeType:
        """The witnessing slope data itself, as a SlopeType."""
        kind, p = self.kind, self.params
        if kind == "T1":
            c, h = p
            return normalize([(c, h, 1)])
        if kind == "T2":
            h1, h2 = p
            return normalize([(1, h1, 1), (1, h2, 1)])
        if kind == "T3":
            h1, h2 = p
            return normalize([(h1 - 1, h1, 1), (h2 - 1, h2, 1)])
        if kind == "T4":
            h1, h2 = p
            return normalize([(1, h1, 1), (h2 - 1, h2, 1)])
        return normalize([(1, 2, 3)])


def _expect_params(params: tuple[int, ...], count: int, kind: str) -> tuple[int, ...]:
    if len(params) != count or not all(isinstance(v, int) for v in params):
        raise DomainError(f"{kind} takes exactly {count} integer parameters, got {params}")
    return params


@dataclass(frozen=True)
class Verdict:
    """Outcome of the classification: the loci are equal iff a good pattern
    matched, and otherwise a bad-type witness explains the difference."""

    equal: bool
    pattern: Optional[GoodPattern] = None
    witness: Optional[BadWitness] = None

    def __post_init__(self) -> None:
        if self.equal != (self.pattern is not None) or self.equal != (self.witness is None):
            raise DomainError("verdict must carry exactly one of pattern/witness")


def validate_input(iso: SlopeType) -> bool:
    """True when every slope lies in [0, 1]."""
    return all(0 <= s.slope <= 1 for s, _ in iso.summands)


def _require_unit_interval(iso: SlopeType) -> None:
    if not validate_input(iso):
        raise DomainError("classification needs every slope within [0, 1]")


def _fractional_summands(iso: SlopeType) -> list[tuple[SimpleSummand, int]]:
    return [(s, m) for s, m in iso.summands if 0 < s.slope < 1]


def match_pattern(iso: SlopeType) -> Optional[GoodPattern]:
    """Match the slope data against the three good patterns.

    Integer slopes 0 and 1 are stripped off in any multiplicity; the
    fractional remainder decides the kind.  A slope-1/2 simple with one
    copy matches both A and B readings; the fixed tie-break reports A.
    """
    _require_unit_interval(iso)
    h1 = iso.copies_of(1, 1)
    h0 = iso.copies_of(0, 1)
    frac = _fractional_summands(iso)
    if not frac:
        return GoodPattern("A", h1, 0, h0)
    if len(frac) > 1:
        return None
    simple, copies = frac[0]
    if copies == 1 and simple.c == 1:
        return GoodPattern("A", h1, simple.d, h0)
    if copies == 1 and simple.c == simple.d - 1:
        return GoodPattern("B", h1, simple.d, h0)
    if copies == 2 and (simple.c, simple.d) == (1, 2):
        return GoodPattern("C", h1, 2, h0)
    return None


def find_witness(iso: SlopeType) -> Optional[BadWitness]:
    """Search for a minimal bad sub-multiset.

    Fixed priority T1, T5, T2, T3, T4, then ascending parameters within a
    kind, so the reported witness is reproducible.  Any witness, not the
    specific one, decides the verdict.
    """
    _require_unit_interval(iso)
    frac = _fractional_summands(iso)

    middles = sorted((s.c, s.d) for s, _ in frac if 2 <= s.c <= s.d - 2)
    if middles:
        return BadWitness("T1", middles[0])

    if iso.copies_of(1, 2) >= 3:
        return BadWitness("T5")

    low = sorted((s.d, m) for s, m in frac if s.c == 1)
    pair = _smallest_pair(low, lambda h1, h2: h2 > 2)
    if pair:
        return BadWitness("T2", pair)

    high = sorted((s.d, m) for s, m in frac if s.c == s.d - 1)
    pair = _smallest_pair(high, lambda h1, h2: h2 > 2)
    if pair:
        return BadWitness("T3", pair)

    low3 = [d for d, _ in low if d >= 3]
    high3 = [d for d, _ in high if d >= 3]
    if low3 and high3:
        return BadWitness("T4", (low3[0], high3[0]))

    return None


def _smallest_pair(family, admissible) -> Optional[tuple[int, int]]:
    """Lexicographically least (h1, h2), h1 <= h2, drawn from (denominator,
    copies) rows of one slope family, honoring multiplicity."""
    best = None
    for i, (h1, copies) in enumerate(family):
        if copies >= 2 and admissible(h1, h1):
            cand = (h1, h1)
            best = cand if best is None else min(best, cand)
        for h2, _ in family[i + 1:]:
            if admissible(h1, h2):
                cand = (h1, h2)
                best = cand if best is None else min(best, cand)
    return best


def classify(iso: SlopeType) -> Verdict:
    """Full decision: match a good pattern or produce a bad-type witness.

    Both searches always run; exactly one must succeed, and a failure of
    that dichotomy is an internal error, not a verdict.
    """
    pattern = match_pattern(iso)
    witness = find_witness(iso)
    if (pattern is None) == (witness is None):
        raise AssertionError(
            f"internal consistency error: pattern={pattern!r} witness={witness!r} "
            f"for {iso!r}"
        )
    return Verdict(equal=pattern is not None, pattern=pattern, witness=witness)


def dual_slopes(iso: SlopeType) -> SlopeType:
    """Reflect every slope through 1/2: (c, d) becomes (d - c, d)."""
    _require_unit_interval(iso)
    return normalize([(s.d - s.c, s.d, m) for s, m in iso.summands])


def iter_unit_interval_types(rank: int) -> Iterator[SlopeType]:
    """Every slope multiset in [0, 1] of exactly the given rank."""
    return iter_slope_types(rank, 0, 1)


def xor_violations(max_rank: int) -> list[SlopeType]:
    """Slope data of rank <= max_rank where the pattern/witness dichotomy
    fails.  Expected empty; returned, not raised, so sweeps can report."""
    bad = []
    for n in range(1, max_rank + 1):
        for iso in iter_unit_interval_types(n):
            if (match_pattern(iso) is None) == (find_witness(iso) is None):
                bad.append(iso)
    return bad


def duality_violations(max_rank: int) -> list[SlopeType]:
    """Slope data of rank <= max_rank whose verdict is not invariant under
    slope reflection.  Expected empty."""
    bad = []
    for n in range(1, max_rank + 1):
        for iso in iter_unit_interval_types(n):
            if classify(iso).equal != classify(dual_slopes(iso)).equal:
                bad.append(iso)
    return bad
