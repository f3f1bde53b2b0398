"""Classifier tests: good patterns, bad-type witnesses, and the dichotomy.

Expected verdicts for the pinned examples were worked out by hand from the
pattern definitions; the sweeps then re-check the pattern/witness split
exhaustively on every slope multiset of small rank.
"""

from hypothesis import given, settings
from hypothesis import strategies as st

import pytest

from slopelab.classifier import (
    BadWitness,
    GoodPattern,
    Verdict,
    classify,
    dual_slopes,
    duality_violations,
    find_witness,
    iter_unit_interval_types,
    match_pattern,
    validate_input,
    xor_violations,
)
from slopelab.admissibility import FilteredType, MinusculeHodge, is_unit_root
from slopelab.exactnum import DomainError
from slopelab.slopecalc import EMPTY, SlopeType, normalize


def unit_entries():
    # raw (c, d, copies) triples whose slopes stay inside [0, 1]
    return st.integers(1, 4).flatmap(
        lambda d: st.tuples(
            st.integers(0, d), st.just(d), st.integers(1, 2)
        )
    )


def unit_types(max_entries=4):
    return st.lists(unit_entries(), min_size=0, max_size=max_entries).map(normalize)


class TestValidation:
    def test_unit_interval_accepted(self):
        assert validate_input(normalize([(0, 1, 2), (1, 2, 1), (1, 1, 1)]))

    def test_slope_above_one_rejected(self):
        assert not validate_input(normalize([(3, 2, 1)]))
        with pytest.raises(DomainError):
            classify(normalize([(3, 2, 1)]))

    def test_negative_slope_rejected(self):
        assert not validate_input(normalize([(-1, 2, 1)]))
        with pytest.raises(DomainError):
            match_pattern(normalize([(-1, 2, 1)]))
        with pytest.raises(DomainError):
            find_witness(normalize([(-1, 2, 1)]))

    def test_rank_zero_is_trivially_good(self):
        verdict = classify(EMPTY)
        assert verdict.equal
        assert verdict.pattern == GoodPattern("A", 0, 0, 0)


class TestGoodPattern:
    def test_kind_a_single_low_slope(self):
        verdict = classify(normalize([(1, 5, 1)]))
        assert verdict.equal
        assert verdict.pattern == GoodPattern("A", 0, 5, 0)
        assert verdict.witness is None

    def test_kind_a_with_integer_padding(self):
        iso = normalize([(1, 1, 2), (1, 5, 1), (0, 1, 3)])
        verdict = classify(iso)
        assert verdict.equal
        assert verdict.pattern == GoodPattern("A", 2, 5, 3)

    def test_integer_slopes_only(self):
        verdict = classify(normalize([(0, 1, 3), (1, 1, 2)]))
        assert verdict.pattern == GoodPattern("A", 2, 0, 3)

    def test_kind_b_single_high_slope(self):
        verdict = classify(normalize([(2, 3, 1)]))
        assert verdict.equal
        assert verdict.pattern == GoodPattern("B", 0, 3, 0)

    def test_half_slope_tie_break_reports_kind_a(self):
        # slope 1/2 reads as 1/h and as (h-1)/h; the fixed tie-break is A
        verdict = classify(normalize([(1, 2, 1)]))
        assert verdict.pattern == GoodPattern("A", 0, 2, 0)

    def test_kind_c_two_half_slopes(self):
        verdict = classify(normalize([(1, 2, 2)]))
        assert verdict.equal
        assert verdict.pattern == GoodPattern("C", 0, 2, 0)

    def test_kind_c_with_padding(self):
        verdict = classify(normalize([(1, 2, 2), (0, 1, 1), (1, 1, 4)]))
        assert verdict.pattern == GoodPattern("C", 4, 2, 1)

    def test_pattern_invariants_enforced(self):
        with pytest.raises(DomainError):
            GoodPattern("A", 0, 1, 0)
        with pytest.raises(DomainError):
            GoodPattern("B", 0, 2, 0)
        with pytest.raises(DomainError):
            GoodPattern("C", 0, 3, 0)
        with pytest.raises(DomainError):
            GoodPattern("A", -1, 0, 0)
        with pytest.raises(DomainError):
            GoodPattern("D", 0, 0, 0)


class TestBadWitness:
    def test_middle_slope_is_t1(self):
        verdict = classify(normalize([(2, 5, 1)]))
        assert not verdict.equal
        assert verdict.pattern is None
        assert verdict.witness == BadWitness("T1", (2, 5))

    def test_two_low_slopes_are_t2(self):
        verdict = classify(normalize([(1, 2, 1), (1, 3, 1)]))
        assert verdict.witness == BadWitness("T2", (2, 3))

    def test_three_half_slopes_are_t5(self):
        verdict = classify(normalize([(1, 2, 3)]))
        assert verdict.witness == BadWitness("T5")

    def test_repeated_half_with_third_low_is_still_t2(self):
        verdict = classify(normalize([(1, 2, 2), (1, 3, 1)]))
        assert verdict.witness == BadWitness("T2", (2, 3))

    def test_two_high_slopes_are_t3(self):
        verdict = classify(normalize([(1, 2, 1), (3, 4, 1)]))
        assert verdict.witness == BadWitness("T3", (2, 4))

    def test_mixed_ends_are_t4(self):
        verdict = classify(normalize([(1, 3, 1), (2, 3, 1)]))
        assert verdict.witness == BadWitness("T4", (3, 3))

    def test_t1_outranks_t5(self):
        iso = normalize([(2, 5, 1), (1, 2, 3)])
        assert find_witness(iso) == BadWitness("T1", (2, 5))

    def test_t5_outranks_t2(self):
        iso = normalize([(1, 2, 3), (1, 3, 1)])
        assert find_witness(iso) == BadWitness("T5")

    def test_t1_parameters_ascend(self):
        assert find_witness(normalize([(3, 5, 1), (2, 7, 1)])) == BadWitness("T1", (2, 7))
        assert find_witness(normalize([(3, 7, 1), (2, 5, 1)])) == BadWitness("T1", (2, 5))

    def test_t2_parameters_ascend(self):
        iso = normalize([(1, 5, 1), (1, 3, 1), (1, 4, 1)])
        assert find_witness(iso) == BadWitness("T2", (3, 4))

    def test_witness_invariants_enforced(self):
        with pytest.raises(DomainError):
            BadWitness("T1", (1, 5))
        with pytest.raises(DomainError):
            BadWitness("T1", (2, 4))
        with pytest.raises(DomainError):
            BadWitness("T2", (1, 3))
        with pytest.raises(DomainError):
            BadWitness("T2", (2, 2))
        with pytest.raises(DomainError):
            BadWitness("T3", (3, 2))
        with pytest.raises(DomainError):
            BadWitness("T4", (2, 3))
        with pytest.raises(DomainError):
            BadWitness("T5", (1,))
        with pytest.raises(DomainError):
            BadWitness("T9")

    def test_witness_multisets(self):
        assert BadWitness("T1", (2, 5)).sub_multiset() == normalize([(2, 5, 1)])
        assert BadWitness("T2", (3, 3)).sub_multiset() == normalize([(1, 3, 2)])
        assert BadWitness("T3", (2, 4)).sub_multiset() == normalize([(1, 2, 1), (3, 4, 1)])
        assert BadWitness("T4", (3, 3)).sub_multiset() == normalize([(1, 3, 1), (2, 3, 1)])
        assert BadWitness("T5").sub_multiset() == normalize([(1, 2, 3)])


class TestVerdictShape:
    def test_exactly_one_side_required(self):
        pattern = GoodPattern("A", 0, 0, 0)
        witness = BadWitness("T5")
        with pytest.raises(DomainError):
            Verdict(True, pattern, witness)
        with pytest.raises(DomainError):
            Verdict(True, None, None)
        with pytest.raises(DomainError):
            Verdict(False, pattern, None)


class TestDuality:
    def test_reflection(self):
        assert dual_slopes(normalize([(1, 5, 1)])) == normalize([(4, 5, 1)])
        assert dual_slopes(normalize([(0, 1, 2), (1, 2, 1)])) == normalize(
            [(1, 1, 2), (1, 2, 1)]
        )

    def test_reflection_is_an_involution(self):
        iso = normalize([(1, 3, 2), (2, 5, 1), (1, 1, 1)])
        assert dual_slopes(dual_slopes(iso)) == iso

    def test_patterns_swap_kinds(self):
        a = classify(normalize([(1, 5, 1)])).pattern
        b = classify(normalize([(4, 5, 1)])).pattern
        assert (a.kind, b.kind) == ("A", "B")
        assert a.h == b.h == 5

    def test_witness_families_swap(self):
        t2 = classify(normalize([(1, 2, 1), (1, 3, 1)])).witness
        t3 = classify(dual_slopes(normalize([(1, 2, 1), (1, 3, 1)]))).witness
        assert t2 == BadWitness("T2", (2, 3))
        assert t3 == BadWitness("T3", (2, 3))

    @given(unit_types())
    def test_verdict_is_duality_invariant(self, iso):
        assert classify(iso).equal == classify(dual_slopes(iso)).equal


class TestDichotomy:
    def test_small_ranks_are_all_good(self):
        for rank in range(5):
            for iso in iter_unit_interval_types(rank):
                assert classify(iso).equal, iso

    def test_bad_data_appears_at_rank_five(self):
        bad = [
            iso for iso in iter_unit_interval_types(5) if not classify(iso).equal
        ]
        assert normalize([(2, 5, 1)]) in bad
        assert normalize([(1, 2, 1), (1, 3, 1)]) in bad

    def test_exhaustive_sweep_is_clean(self):
        assert xor_violations(7) == []

    def test_duality_sweep_is_clean(self):
        assert duality_violations(6) == []

    @given(unit_types())
    def test_classify_returns_exactly_one_side(self, iso):
        verdict = classify(iso)
        assert verdict.equal == (verdict.pattern is not None)
        assert verdict.equal == (verdict.witness is None)

    @given(unit_types(max_entries=3), unit_types(max_entries=2))
    @settings(max_examples=150)
    def test_badness_is_monotone_under_direct_sum(self, a, b):
        if find_witness(a) is not None:
            assert find_witness(a.direct_sum(b)) is not None

    @given(unit_types())
    def test_witness_is_a_genuine_sub_multiset(self, iso):
        witness = find_witness(iso)
        if witness is None:
            return
        sub = witness.sub_multiset()
        for simple, copies in sub.summands:
            assert iso.copies_of(simple.c, simple.d) >= copies
        # the witness alone is already bad
        assert not classify(sub).equal


class TestAdmissibilityConsistency:
    """Verdicts line up with the candidate enumeration of the filtered side."""

    def test_strict_example_has_a_non_unit_root_candidate(self):
        iso = normalize([(2, 5, 1)])
        assert not classify(iso).equal
        filtered = FilteredType(iso, MinusculeHodge(1, 2, 5))
        candidates = filtered.candidate_module_types()
        assert any(not is_unit_root(candidate) for candidate in candidates)

    def test_pattern_inputs_keep_the_unit_root_candidate(self):
        # at h = 1 weak admissibility forces f = total degree
        for rank in range(1, 7):
            unit_root = normalize([(0, 1, rank)])
            for iso in iter_unit_interval_types(rank):
                if not classify(iso).equal:
                    continue
                filtered = FilteredType(iso, MinusculeHodge(1, iso.degree, rank))
                if not filtered.is_weakly_admissible():
                    continue
                assert unit_root in filtered.candidate_module_types()
