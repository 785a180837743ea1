from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gufo_check import violations as registry
from gufo_check.graph import Graph
from gufo_check.inference import compute_closures
from gufo_check.rules import MSG_R1, MSG_R2, MSG_R3, MSG_R4, MSG_R5, MSG_R6, run_rules
from gufo_check.terms import GUFO, IRI
from gufo_check.turtle import parse_file
from gufo_check.violations import ConfigError, RuleConfig, registered_ids
from gufo_check.vocabulary import builtin_vocabulary, merge_external

from .conftest import RULES, check, corpus_files, corpus_listing, findings, ttl

EX = "http://example.org/"


def ex(name):
    return IRI(EX + name)


def only(found, rule):
    return [v for v in found if v.rule_id == rule]


# -- R1 ----------------------------------------------------------------------


def test_r1_kind_under_phase():
    found = findings(":Person a gufo:Kind . :Adult a gufo:Phase . :Person rdfs:subClassOf :Adult .", "R1")
    assert len(found) == 1
    assert found[0].focus == ex("Person") and found[0].secondary == (ex("Adult"),)
    assert found[0].message == MSG_R1 and found[0].severity == "error"


def test_r1_published_direction_is_fine():
    assert only(check(parse_file(corpus_listing("endurantypes"))), "R1") == []


def test_r1_mixin_under_role_mixin():
    assert len(findings(":M a gufo:Mixin ; rdfs:subClassOf :R . :R a gufo:RoleMixin .", "R1")) == 1


def test_r1_empty():
    assert check(Graph()) == []


# -- R2 ----------------------------------------------------------------------


def test_r2_examples():
    found = findings(":Insured a gufo:RoleMixin ; rdfs:subClassOf :Person . :Person a gufo:Kind .", "R2")
    assert [v.message for v in found] == [MSG_R2]
    assert findings(":Student a gufo:Role ; rdfs:subClassOf :Person . :Person a gufo:Kind .", "R2") == []


# -- R3 ----------------------------------------------------------------------


def test_r3_examples():
    found = findings(":Student a gufo:Role .", "R3")
    assert [(v.message, v.severity) for v in found] == [(MSG_R3, "error")]
    assert findings(":Student a gufo:Role ; rdfs:subClassOf :Person . :Person a gufo:Kind .", "R3") == []
    assert findings(":Animal a gufo:Category .", "R3") == []


def test_r3_transitive_identity_provider():
    body = ":A a gufo:Kind . :B a gufo:SubKind ; rdfs:subClassOf :A . :C a gufo:Role ; rdfs:subClassOf :B ."
    assert findings(body, "R3") == []


def test_r3_unknown_superclass_downgrades_to_warning():
    found = findings(":Supercarrier a gufo:SubKind ; rdfs:subClassOf :Ship .", "R3")
    assert [(v.severity, v.secondary) for v in found] == [("warning", (ex("Ship"),))]


def test_r3_typed_non_sortal_superclass_stays_error():
    found = findings(":Student a gufo:Role ; rdfs:subClassOf :Agent . :Agent a gufo:Category .", "R3")
    assert [v.severity for v in found] == ["error"]
    # a gufo class above is known and never an identity provider
    found = findings(":Student a gufo:Role ; rdfs:subClassOf gufo:Object .", "R3")
    assert [v.severity for v in found] == ["error"]


def test_r3_severity_override():
    found = findings(":Student a gufo:Role .", "R3", severity={"R3": "warning"})
    assert [v.severity for v in found] == ["warning"]
    found = findings(":S a gufo:SubKind ; rdfs:subClassOf :Ship .", "R3", severity={"R3": "error"})
    assert [v.severity for v in found] == ["error"]


def test_r3_disabled():
    assert findings(":Student a gufo:Role .", enable=[r for r in registered_ids() if r != "R3"]) == []


# -- R4 ----------------------------------------------------------------------


def test_r4_examples():
    found = findings(":Dog a gufo:Kind ; rdfs:subClassOf :Pet . :Pet a gufo:Role .", "R4")
    assert [v.message for v in found] == [MSG_R4]
    assert findings(":Dog a gufo:Kind ; rdfs:subClassOf :Animal . :Animal a gufo:Category .", "R4") == []


def test_r4_kind_under_kind():
    found = findings(":Dog a gufo:Kind ; rdfs:subClassOf :Animal . :Animal a gufo:Kind .", "R4")
    assert len(found) == 1 and found[0].secondary == (ex("Animal"),)


def test_r4_one_finding_per_focus():
    found = findings((RULES / "r4_invalid.ttl").read_text().split("\n", 4)[-1], "R4")
    assert len(found) == 1
    assert found[0].secondary == (ex("Animal"), ex("Mammal"))


# -- R5 ----------------------------------------------------------------------


def test_r5_examples():
    found = findings(":Marriage a gufo:Kind ; rdfs:subClassOf gufo:Event .", "R5")
    assert [v.message for v in found] == [MSG_R5]
    assert findings(":Marriage a gufo:Kind ; rdfs:subClassOf gufo:Relator .", "R5") == []
    assert findings(":Marriage a gufo:Kind .", "R5") == []


def test_r5_time_instant_and_transitive():
    body = ":T a gufo:Phase ; rdfs:subClassOf :Moment . :Moment rdfs:subClassOf time:Instant ."
    assert len(findings(body, "R5")) == 1
    assert findings(body, "R5", direct=True) == []


# -- R6 ----------------------------------------------------------------------


def test_r6_examples():
    body = ":ShipType gufo:categorizes :Ship . :Supercarrier a :ShipType ; rdfs:subClassOf :Ship ."
    assert findings(body, "R6") == []
    found = findings(":ShipType gufo:categorizes :Ship . :Supercarrier a :ShipType .", "R6")
    assert len(found) == 1
    assert found[0].message == MSG_R6
    assert found[0].focus == ex("ShipType")
    assert found[0].secondary == (ex("Supercarrier"), ex("Ship"))
    assert findings(":ShipType gufo:categorizes :Ship .", "R6") == []


def test_r6_applies_to_partitions_and_skips_reflexive_case():
    found = findings(":AS gufo:partitions :Animal . :Lion a :AS .", "R6")
    assert len(found) == 1
    assert findings(":T gufo:categorizes :B . :B a :T .", "R6") == []


def test_r6_direct_mode_uses_asserted_types():
    body = """
        :H gufo:categorizes :B . :SubH rdfs:subClassOf :H .
        :X a :SubH .
    """
    assert len(findings(body, "R6")) == 1
    assert findings(body, "R6", direct=True) == []


# -- R7 ----------------------------------------------------------------------


def _species(extra: str = "") -> str:
    return (corpus_listing("partitioning").read_text() + extra).split("\n", 1)[1]


def test_r7_listing_is_fine():
    assert only(check(parse_file(corpus_listing("partitioning"))), "R7") == []


def test_r7_third_species():
    found = findings(_species(":Zebra a :AnimalSpecies ; rdfs:subClassOf :Animal ."), "R7")
    assert sorted(v.secondary for v in found) == [(ex("Hiena"), ex("Zebra")), (ex("Lion"), ex("Zebra"))]
    assert found[0].message == (
        "Instances :Hiena and :Zebra of the partitioning type :AnimalSpecies are not declared disjoint."
    )


def test_r7_single_instance():
    assert findings(":AS gufo:partitions :A . :Lion a :AS ; rdfs:subClassOf :A .", "R7") == []


@pytest.mark.parametrize("cover", [
    ":Lion owl:disjointWith :Hiena .",
    ":Hiena owl:disjointWith :Lion .",
    "[] a owl:AllDisjointClasses ; owl:members ( :Lion :Hiena ) .",
    ":Animal owl:disjointUnionOf ( :Hiena :Lion ) .",
    ":Lion owl:equivalentClass :Hiena .",
    ":Hiena owl:sameAs :Lion .",
])
def test_r7_covering_forms(cover):
    body = ":AS gufo:partitions :Animal . :Lion a :AS . :Hiena a :AS . " + cover
    assert findings(body, "R7") == []


def test_r7_message_falls_back_to_full_iri():
    # no prefix table, so both names print as full IRIs
    found = only(check(Graph.from_triples(parse_file(RULES / "r7_invalid.ttl"))), "R7")
    assert found[0].message.startswith("Instances <http://example.org/Hiena> and <http://example.org/Lion>")


def test_r7_malformed_list_is_structural_error():
    body = (":AS gufo:partitions :A . :L a :AS ; rdfs:subClassOf :A . :H a :AS ; rdfs:subClassOf :A ."
            " [] a owl:AllDisjointClasses ; owl:members :bad . :bad rdf:first :L .")
    found = findings(body)
    assert [v.rule_id for v in found if v.severity == "error"] == ["G2", "R7"]


# -- R8 ----------------------------------------------------------------------


def test_r8_examples():
    found = findings(":Dog a gufo:Kind . :Person a gufo:Kind . :Fido a :Dog, :Person .", "R8")
    assert len(found) == 1 and found[0].focus == ex("Fido")
    assert found[0].secondary == (ex("Dog"), ex("Person"))
    corpus = Graph.union(parse_file(corpus_listing("scenarios")), parse_file(corpus_listing("johnsbrain")))
    assert only(check(corpus), "R8") == []
    assert findings(":Brain rdfs:subClassOf gufo:Object . :B1 a :Brain .", "R8") == []


def test_r8_kinds_through_subclasses_and_punned_classes_skipped():
    body = ":Dog a gufo:Kind . :Person a gufo:Kind . :Puppy rdfs:subClassOf :Dog . :Rex a :Puppy , :Person ."
    assert len(findings(body, "R8")) == 1
    # a class that happens to be typed by two kinds is a metalevel entity
    assert findings(":K1 a gufo:Kind . :K2 a gufo:Kind . :C a :K1, :K2 ; rdfs:subClassOf gufo:Object .", "R8") == []


# -- R9 ----------------------------------------------------------------------


def test_r9_examples():
    found = findings(":Ship a gufo:Kind ; gufo:categorizes :Hull .", "R9")
    assert len(found) == 1 and found[0].focus == ex("Ship")
    assert only(check(parse_file(corpus_listing("highorder2"))), "R9") == []
    assert findings(":Ship a gufo:Kind .", "R9") == []


# -- R10 ---------------------------------------------------------------------


def test_r10_examples():
    found = findings(":X a gufo:Event, gufo:Situation .", "R10")
    assert len(found) == 1 and found[0].secondary == (GUFO.Event, GUFO.Situation)
    g = Graph.union(parse_file(corpus_listing("events")), parse_file(corpus_listing("earthquake2")))
    assert only(check(g), "R10") == []
    assert check(Graph()) == []


def test_r10_user_disjointness_through_subclasses():
    body = (":Earthquake owl:disjointWith :Tsunami . :Big rdfs:subClassOf :Earthquake ."
            " :e a :Big , :Tsunami .")
    assert len(findings(body, "R10")) == 1


def test_r10_one_finding_per_individual():
    found = findings(":x a gufo:Event, gufo:Situation, gufo:Object .", "R10")
    assert len(found) == 1


# -- structural checks ------------------------------------------------------


def test_g1_cycle_is_info():
    found = findings(":A rdfs:subClassOf :B . :B rdfs:subClassOf :A .", "G1")
    assert [(v.severity, v.focus) for v in found] == [("info", ex("A"))]


def test_g3_imports_note():
    found = findings("<http://example.org/onto> owl:imports <http://purl.org/nemo/gufo#> .", "G3")
    assert [v.severity for v in found] == ["info"]


def test_v1_reports_merge_warnings():
    g = ttl("gufo:Event rdfs:subClassOf gufo:Endurant .")
    v = merge_external(builtin_vocabulary(), g)
    found = run_rules(Graph(), v, compute_closures(Graph(), v))
    assert [(x.rule_id, x.severity) for x in found] == [("V1", "warning")]


# -- configuration and contracts ------------------------------------------


def test_config_validation():
    with pytest.raises(ConfigError):
        RuleConfig(frozenset({"R99"}))
    with pytest.raises(ConfigError):
        RuleConfig(severity_overrides={"R1": "fatal"})
    assert {f"R{i}" for i in range(1, 11)} <= set(registered_ids())


def test_union_of_single_rule_fixtures():
    g = Graph.union(parse_file(RULES / "r1_invalid.ttl"), ttl(
        ":Cat a gufo:Kind ; rdfs:subClassOf :Feline . :Feline a gufo:SubKind ; rdfs:subClassOf :Animal ."
    ))
    assert {v.rule_id for v in check(g) if v.severity == "error"} == {"R1", "R4"}


def test_corpus_has_no_errors():
    g = Graph.union(*(parse_file(p) for p in corpus_files()))
    errors = [v for v in check(g) if v.severity == "error"]
    assert errors == []


_METATYPES = ["Kind", "SubKind", "Phase", "Role", "Category", "PhaseMixin", "RoleMixin", "Mixin"]


@st.composite
def typologies(draw):
    n = draw(st.integers(1, 8))
    lines = []
    for i in range(n):
        for m in draw(st.lists(st.sampled_from(_METATYPES), max_size=2, unique=True)):
            lines.append(f":T{i} a gufo:{m} .")
    for a, b in draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=10)):
        if a != b:
            lines.append(f":T{a} rdfs:subClassOf :T{b} .")
    for i in draw(st.lists(st.integers(0, n - 1), max_size=3)):
        lines.append(f":x{i} a :T{i} .")
    return "\n".join(lines)


@settings(max_examples=80, deadline=None)
@given(typologies(), st.randoms(use_true_random=False))
def test_rule_order_independence(body, rnd):
    g = ttl(body)
    v = builtin_vocabulary()
    c = compute_closures(g, v)
    expected = run_rules(g, v, c)
    ids = registered_ids()
    rnd.shuffle(ids)
    ctx = registry.Context(RuleConfig(), dict(g.prefixes))
    shuffled = set()
    for rid in ids:
        shuffled.update(registry.REGISTRY[rid].func(g, v, c, ctx))
    assert set(expected) == shuffled


_TARGETS = {
    "R1": {"RigidType", "Category", "Kind", "SubKind", "SemiRigidType", "Mixin"},
    "R2": {"NonSortal", "Category", "PhaseMixin", "RoleMixin", "Mixin"},
    "R3": {"SubKind", "Phase", "Role"},
    "R4": {"Kind"},
}


@settings(max_examples=80, deadline=None)
@given(typologies())
def test_taxonomy_findings_target_their_metatypes(body):
    g = ttl(body)
    c = compute_closures(g, builtin_vocabulary())
    for v in check(g):
        if v.rule_id in _TARGETS:
            assert {GUFO[m] for m in _TARGETS[v.rule_id]} & c.types(v.focus)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.sampled_from(_METATYPES), min_size=2, max_size=2))
def test_direct_mode_agrees_on_single_edges(pair):
    body = f":A a gufo:{pair[0]} . :B a gufo:{pair[1]} . :A rdfs:subClassOf :B ."
    assert findings(body) == findings(body, direct=True)
