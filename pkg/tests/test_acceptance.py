"""Acceptance suite: one test per release criterion, with pinned time limits.

Each criterion is a separate test so the -v run shows one pass/fail line
per criterion.  Time limits are asserted with perf_counter around the
computational core; exact values are asserted with no tolerance, since
every quantity in the engine is exact rational arithmetic.
"""

import json
import random
import time
from math import gcd

from slopelab.admissibility import FilteredType, MinusculeHodge, wa_exists
from slopelab.classifier import (
    BadWitness,
    classify,
    dual_slopes,
    find_witness,
    iter_unit_interval_types,
    match_pattern,
)
from slopelab.cli import main as run_cli
from slopelab.exactnum import INFINITY, ExtCount, Fraction
from slopelab.slopecalc import iter_slope_types, normalize, simple_summands_between


def multiplicity_free_unit_types(max_rank):
    """Every slope multiset in [0, 1] of rank <= max_rank with all distinct
    simple summands (single copy each)."""
    simples = simple_summands_between(0, 1, max_rank)
    found = []

    def extend(start, chosen, rank):
        if chosen:
            found.append(normalize([(s.c, s.d, 1) for s in chosen]))
        for index in range(start, len(simples)):
            if rank + simples[index].d <= max_rank:
                extend(index + 1, chosen + [simples[index]], rank + simples[index].d)

    extend(0, [], 0)
    return found


def report(number, elapsed, detail=""):
    suffix = f" ({detail})" if detail else ""
    print(f"[acceptance] criterion {number}: PASS in {elapsed:.2f}s{suffix}")


def test_criterion_01_rank_five_example_enumeration(capsys):
    start = time.perf_counter()
    code = run_cli(
        ["enumerate", "--iso", "2/5^5", "--hodge", "1,2", "--format", "json"]
    )
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    assert code == 0
    payload = json.loads(out)
    assert payload["result"]["count"] == 2
    assert payload["result"]["candidates"] == ["-1/2^2,1/3^3", "0^5"]
    assert elapsed < 1.0
    with capsys.disabled():
        report(1, elapsed, "exactly the two expected candidates, canonical order")


def test_criterion_02_spot_verdicts(capsys):
    expectations = [
        ("1/5^5", 0, {"kind": "A", "h1": 0, "h": 5, "h0": 0}, None),
        ("2/5^5", 3, None, {"kind": "T1", "params": [2, 5]}),
        ("1/2^4", 0, {"kind": "C", "h1": 0, "h": 2, "h0": 0}, None),
        ("1/2^6", 3, None, {"kind": "T5", "params": []}),
        ("4/5^5", 0, {"kind": "B", "h1": 0, "h": 5, "h0": 0}, None),
    ]
    start = time.perf_counter()
    for spec, want_code, want_pattern, want_witness in expectations:
        code = run_cli(["classify", "--iso", spec, "--format", "json"])
        payload = json.loads(capsys.readouterr().out)
        assert code == want_code, spec
        assert payload["result"]["equal"] == (want_code == 0), spec
        if want_pattern is None:
            assert payload["result"]["pattern"] is None, spec
        else:
            for key, value in want_pattern.items():
                assert payload["result"]["pattern"][key] == value, spec
        if want_witness is None:
            assert payload["result"]["witness"] is None, spec
        else:
            assert payload["result"]["witness"] == want_witness, spec
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    with capsys.disabled():
        report(2, elapsed, "five verdicts exact")


def test_criterion_03_small_rank_always_equal():
    start = time.perf_counter()
    checked = 0
    for rank in range(1, 5):
        for iso in iter_unit_interval_types(rank):
            assert classify(iso).equal, iso
            checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    report(3, elapsed, f"{checked} slope multisets of rank <= 4, zero violations")


def test_criterion_04_dichotomy_rank_ten():
    start = time.perf_counter()
    checked = 0
    for rank in range(1, 11):
        for iso in iter_unit_interval_types(rank):
            matched = match_pattern(iso) is not None
            witnessed = find_witness(iso) is not None
            assert matched != witnessed, iso
            checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 120.0
    report(4, elapsed, f"{checked} slope multisets of rank <= 10, exactly one side each")


def test_criterion_05_hom_dimension_table():
    # independent expectation: compare slopes directly, never via dual/tensor
    start = time.perf_counter()
    coprime = [
        (c, d)
        for d in range(1, 9)
        for c in range(-8, 9)
        if gcd(c, d) == 1
    ]
    checked = 0
    for c, d in coprime:
        a = normalize([(c, d, 1)])
        value = a.h0_dim()
        slope = Fraction(c, d)
        if slope > 0:
            assert value == ExtCount(0)
        elif slope == 0:
            assert value == ExtCount(1)
        else:
            assert value == INFINITY
        for e, f in coprime:
            b = normalize([(e, f, 1)])
            hom = a.hom_dim(b)
            if Fraction(e, f) > slope:
                assert hom == ExtCount(0)
            elif (e, f) == (c, d):
                assert hom == ExtCount(d * d)
            else:
                assert hom == INFINITY
            checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    report(5, elapsed, f"{checked} coprime pairs with denominators <= 8")


def test_criterion_06_algebra_laws_exhaustive():
    start = time.perf_counter()
    types = [t for rank in range(0, 7) for t in iter_slope_types(rank, -1, 1)]
    for a in types:
        assert a.dual().dual() == a
        assert a.determinant() == normalize([(a.degree, 1, 1)])
        assert a.exterior_power(a.rank) == a.determinant()
        for r in (-2, -1, 0, 1, 2):
            assert a.tate_twist(r) == a.tensor(normalize([(r, 1, 1)]))
    for a in types:
        for b in types:
            product = a.tensor(b)
            assert product.rank == a.rank * b.rank
            assert product.degree == a.degree * b.rank + b.degree * a.rank
    for simple in simple_summands_between(-1, 1, 6):
        restricted = normalize([(simple.c, simple.d, 1)]).frobenius_restriction(simple.d)
        assert restricted == normalize([(simple.c, 1, simple.d)])
    assert normalize([(-3, 5, 1)]).exterior_power(2) == normalize([(-6, 5, 2)])
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    report(6, elapsed, f"{len(types)} types, {len(types) ** 2} tensor pairs")


def test_criterion_07_degree_formula_across_sweep():
    start = time.perf_counter()
    candidates_seen = 0
    for iso in multiplicity_free_unit_types(8):
        n = iso.rank
        for f in range(0, n + 1):
            filtered = FilteredType(iso, MinusculeHodge(1, f, n))
            assert filtered.module_degree == filtered.t_newton - filtered.t_hodge
            for candidate in filtered.candidate_module_types():
                assert candidate.degree == filtered.module_degree
                assert candidate.rank == n
                candidates_seen += 1
    elapsed = time.perf_counter() - start
    report(7, elapsed, f"{candidates_seen} enumerated candidates, all on-degree")


def random_unit_type(rng, max_entries=4):
    entries = []
    for _ in range(rng.randint(1, max_entries)):
        d = rng.randint(1, 5)
        entries.append((rng.randint(0, d), d, rng.randint(1, 2)))
    return normalize(entries)


def test_criterion_08_duality_and_monotonicity_randomized():
    rng = random.Random(20260819)
    start = time.perf_counter()
    for _ in range(10_000):
        a = random_unit_type(rng)
        b = random_unit_type(rng, max_entries=2)
        assert classify(a).equal == classify(dual_slopes(a)).equal
        if find_witness(a) is not None:
            assert find_witness(a.direct_sum(b)) is not None
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    report(8, elapsed, "10000 random cases, zero violations")


def bad_family_members(max_h=12):
    yield BadWitness("T5")
    for h in range(5, max_h + 1):
        for c in range(2, h - 1):
            if gcd(c, h) == 1:
                yield BadWitness("T1", (c, h))
    for h1 in range(2, max_h + 1):
        for h2 in range(max(h1, 3), max_h + 1):
            yield BadWitness("T2", (h1, h2))
            yield BadWitness("T3", (h1, h2))
    for h1 in range(3, max_h + 1):
        for h2 in range(3, max_h + 1):
            yield BadWitness("T4", (h1, h2))


def test_criterion_09_admissibility_cross_checks():
    start = time.perf_counter()
    configurations = 0
    for iso in multiplicity_free_unit_types(8):
        n = iso.rank
        for f in range(0, n + 1):
            hodge = MinusculeHodge(1, f, n)
            filtered = FilteredType(iso, hodge)
            assert filtered.is_weakly_admissible() == wa_exists(iso, hodge), (iso, f)
            configurations += 1
    families = 0
    for witness in bad_family_members():
        iso = witness.sub_multiset()
        assert not classify(iso).equal, witness
        hodge = MinusculeHodge(1, iso.degree, iso.rank)
        assert wa_exists(iso, hodge), witness
        families += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    report(
        9,
        elapsed,
        f"{configurations} generic-profile configurations, {families} bad-family members",
    )
