import random
import re

import pytest
from hypothesis import given, settings, strategies as st
from sympy import primerange

from kummer_tower.errors import BadCongruence, MissingFact
from kummer_tower.fixtures import EXPECTED_CLAIMS
from kummer_tower.tower_logic import (ASSUMED, CERTIFIED, CONDITIONAL, INDEX, RULES, SCRIPTS, Fact,
                                      FactOptions, claims_json, classify, collect_facts,
                                      cubic_residue_is_trivial, derive, dump_facts, load_facts,
                                      script_dependencies)

SAMPLE = [(3, 2), (5, 2), (7, 2), (2, 2), (23, 2), (3, 3), (5, 3), (7, 3), (13, 3)]


def _facts(p, ell):
    return collect_facts(p, ell)


def test_classify_by_residues():
    for p in primerange(2, 400):
        t2 = classify(p, 2)
        want2 = {3: "3 mod 8", 5: "5 mod 8"}.get(p % 8)
        if p == 2:
            want2 = "p=2"
        elif p % 16 == 7:
            want2 = "7 mod 16"
        if want2:
            assert t2.tag == want2 and t2.supported
        else:
            assert not t2.supported
        t3 = classify(p, 3)
        if p % 9 in (4, 7):
            cubes = {pow(x, 3, p) for x in range(1, p)}
            assert t3.supported == (3 not in cubes)
    assert str(classify(17, 2)) == "Unsupported(1 mod 8)"
    with pytest.raises(ValueError):
        classify(15, 2)


def test_cubic_residue_oracle():
    for p in primerange(7, 500):
        if p % 3 == 1:
            assert cubic_residue_is_trivial(p) == (3 in {pow(x, 3, p) for x in range(1, p)})
    with pytest.raises(BadCongruence):
        cubic_residue_is_trivial(5)
    assert [p for p in primerange(5, 200) if p % 9 in (4, 7) and cubic_residue_is_trivial(p)] == \
        [61, 67, 103, 151, 193]


@pytest.mark.parametrize("p,ell", SAMPLE)
def test_expected_claims(p, ell):
    case = classify(p, ell)
    claims, mismatches = derive(_facts(p, ell), case)
    assert mismatches == []
    got = {c.cid: c.status for c in claims}
    for cid, status in EXPECTED_CLAIMS[case.tag].items():
        assert got[cid] == status


@pytest.mark.parametrize("p,ell", SAMPLE)
def test_derivation_is_deterministic(p, ell):
    case = classify(p, ell)
    facts = _facts(p, ell)
    first = claims_json(derive(facts, case)[0])
    reloaded = load_facts(dump_facts(facts))
    assert reloaded == facts
    shuffled = list(facts)
    random.Random(p).shuffle(shuffled)
    assert claims_json(derive(reloaded, case)[0]) == first
    assert claims_json(derive(shuffled, case)[0]) == first


@pytest.mark.parametrize("p,ell", SAMPLE)
def test_missing_fact_raises(p, ell):
    case = classify(p, ell)
    facts = _facts(p, ell)
    dep = script_dependencies(case)[0]
    with pytest.raises(MissingFact):
        derive([f for f in facts if f.key != dep], case)


@pytest.mark.parametrize("p,ell", SAMPLE)
def test_monotone_in_facts(p, ell):
    case = classify(p, ell)
    facts = _facts(p, ell)
    base = {c.cid for c in derive(facts, case)[0]}
    extra = facts + [Fact(INDEX, "unrelated[%d]" % i, i, "test") for i in range(5)]
    assert {c.cid for c in derive(extra, case)[0]} == base


def test_mismatch_blocks_dependents():
    case = classify(5, 2)
    facts = _facts(5, 2)
    bad = [Fact(f.kind, f.key, 2, f.provenance) if f.key == "gras[K32/K02]" else f
           for f in facts]
    claims, mismatches = derive(bad, case)
    assert mismatches == [("g32", "gras[K32/K02]", 1, 2)]
    ids = {c.cid for c in claims}
    assert "a32" not in ids and "thm_a" not in ids


def test_conditional_propagates():
    claims, _ = derive(_facts(7, 2), classify(7, 2))
    by_id = {c.cid: c for c in claims}
    assert by_id["thm_1m"].status == CONDITIONAL
    assert by_id["thm_1m"].assumptions == ("kida[lambda=1]",)
    assert all(c.status == CERTIFIED for c in claims if c.cid != "thm_1m")
    # replacing the Assumed input by a computed one makes the claim Certified
    facts = [Fact(INDEX, f.key, f.value, "computed") if f.kind == ASSUMED else f
             for f in _facts(7, 2)]
    assert {c.status for c in derive(facts, classify(7, 2))[0]} == {CERTIFIED}


def test_unsupported_case_derives_nothing():
    assert derive([], classify(17, 2)) == ([], [])
    assert collect_facts(17, 2) == []


def test_rule_anchors_are_descriptive():
    for rule in RULES.values():
        assert not re.search(r"\d+\.\d+|§", rule.anchor)
    for steps in SCRIPTS.values():
        for s in steps:
            assert s.rule in RULES


def test_principality_without_unit_scan():
    facts = collect_facts(7, 2, FactOptions(principality=False))
    v = {f.key: f.value for f in facts}["principality[q_2,0]"]
    assert v == "NonPrincipal"


keys = st.text(st.characters(min_codepoint=33, max_codepoint=126), min_size=1, max_size=20)
values = st.one_of(st.integers(-10**30, 10**30), st.booleans(), st.text(max_size=10).filter(
    lambda s: not s.lstrip("-").isdigit()), st.lists(st.integers(0, 100), max_size=4).map(tuple))


@given(st.sampled_from([INDEX, ASSUMED]), keys, values)
@settings(max_examples=300)
def test_fact_round_trip(kind, key, value):
    f = Fact(kind, key, value, "p")
    assert Fact.from_line(f.to_line()) == f


def test_torn_line_is_skipped():
    facts = _facts(3, 2)
    text = dump_facts(facts)
    assert load_facts(text + text.splitlines()[0][:17]) == facts
    with pytest.raises(ValueError):
        Fact("Bogus", "k", 1, "p")
