"""Typology-of-types and multi-level constraints (R1-R10).

Each rule is a pure function of the graph, the vocabulary and the closures.
R1-R7 carry the exact messages of the published gUFO SHACL shapes. By
default superclasses are taken from the transitive closure of
``rdfs:subClassOf``; with ``direct_subclass_only`` only one-hop edges count,
as in the shapes' ``sh:path rdfs:subClassOf``.
"""

from __future__ import annotations

from collections.abc import Iterator

from .graph import Graph, ListError
from .inference import ClosureSet
from .terms import GUFO, OWL, RDF_TYPE, RDFS, SUBCLASS_OF, Term, compact, term_key
from .violations import (
    ERROR,
    INFO,
    WARNING,
    Context,
    RuleConfig,
    Violation,
    edge_location,
    make,
    register,
    run_checks,
)
from .vocabulary import Vocabulary

MSG_R1 = "Rigid and semi-rigid types can't specialize anti-rigid types."
MSG_R2 = "Non-Sortal types can't specialize Sortal types."
MSG_R3 = "Sortal types must specialize a kind or some other sortal."
MSG_R4 = "Kinds cannot specialize sortal types (i.e., types that already set or inherit an identity principle)."
MSG_R5 = "Endurant types cannot specialize classes disjoint from Endurant."
MSG_R6 = "Instances of a categorizing higher-order type (focus node) must be subclasses of the categorized base type."
MSG_R7 = "Instances {?type1} and {?type2} of the partitioning type {$this} are not declared disjoint."
MSG_R8 = "Individual instantiates more than one kind."
MSG_R9 = "Categorizing type is itself a first-order type (an instance of an individual type)."
MSG_R10 = "Individual is an instance of disjoint classes."

_LIST_PROPERTIES = (OWL.members, OWL.disjointUnionOf, OWL.unionOf, OWL.intersectionOf, OWL.oneOf)


def _by_key(terms) -> list[Term]:
    return sorted(terms, key=term_key)


def _typed_with(c: ClosureSet, group: frozenset) -> Iterator[Term]:
    """Terms whose closed types meet ``group``."""
    for x, ts in c.types_of.items():
        if not ts.isdisjoint(group):
            yield x


def _offending_supers(graph, c: ClosureSet, ctx: Context, x: Term, group: frozenset) -> list[Term]:
    return _by_key(s for s in c.superclasses(x, ctx.direct) if not c.types(s).isdisjoint(group))


def _specialization_rule(graph, c, ctx, rule_id, message, targets, forbidden) -> Iterator[Violation]:
    for x in _typed_with(c, targets):
        bad = _offending_supers(graph, c, ctx, x, forbidden)
        if bad:
            yield make(ctx, rule_id, x, message, bad, edge_location(graph, x, SUBCLASS_OF, bad[0]))


@register("R1", "rigid or semi-rigid type specializes an anti-rigid type")
def r1_rigid_specializes_antirigid(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    return list(_specialization_rule(
        graph, c, ctx, "R1", MSG_R1, v.rigid_group | v.semirigid_group, v.antirigid_group))


@register("R2", "non-sortal type specializes a sortal type")
def r2_nonsortal_specializes_sortal(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    return list(_specialization_rule(graph, c, ctx, "R2", MSG_R2, v.nonsortal_group, v.sortal_group))


def typology(v: Vocabulary) -> frozenset:
    """gufo:Type and every vocabulary class below it."""
    return frozenset(k for k in v.class_iris if k == GUFO.Type or GUFO.Type in v.superclasses(k))


@register("R3", "sortal without an identity provider")
def r3_sortal_missing_identity_provider(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    """Base sortals must specialize some sortal.

    Open-world refinement: when no superclass is known to be a sortal but at
    least one user-defined superclass carries no metatype at all, the finding
    is reported as a warning, since that class may well be a kind.
    """
    out = []
    types_of_types = typology(v)
    for x in _typed_with(c, v.base_sortal_group):
        supers = c.superclasses(x, ctx.direct)
        if any(not c.types(s).isdisjoint(v.sortal_group) for s in supers):
            continue
        unknown = [
            s for s in supers
            if s.is_iri and s != x and not v.is_known(s) and c.types(s).isdisjoint(types_of_types)
        ]
        severity = WARNING if unknown else ERROR
        out.append(make(ctx, "R3", x, MSG_R3, _by_key(unknown), graph.subject_location(x), severity))
    return out


@register("R4", "kind specializes a sortal")
def r4_kind_specializes_sortal(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    forbidden = v.base_sortal_group | {GUFO.Kind}
    return list(_specialization_rule(graph, c, ctx, "R4", MSG_R4, frozenset({GUFO.Kind}), forbidden))


@register("R5", "endurant type specializes a class disjoint from gufo:Endurant")
def r5_endurant_type_bad_specialization(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    disjoint = frozenset(v.endurant_disjoint_list)
    out = []
    for x in _typed_with(c, v.endurant_type_targets):
        bad = _by_key(s for s in c.superclasses(x, ctx.direct) if s in disjoint)
        if bad:
            out.append(make(ctx, "R5", x, MSG_R5, bad, edge_location(graph, x, SUBCLASS_OF, bad[0])))
    return out


def _instances(c: ClosureSet, ctx: Context, cls: Term) -> frozenset:
    return c.instances_of(cls, asserted_only=ctx.direct)


@register("R6", "instance of a categorizing type does not specialize the base type")
def r6_categorization_subclassing(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    out = []
    for high, base in c.effective(GUFO.categorizes):
        for x in _instances(c, ctx, high):
            if x == base or base in c.superclasses(x, ctx.direct):
                continue
            out.append(make(ctx, "R6", high, MSG_R6, (x, base), graph.subject_location(x)))
    return out


def disjoint_declarations(graph: Graph) -> tuple[set, list]:
    """Pairs declared disjoint by owl:disjointWith, AllDisjointClasses or disjointUnionOf.

    Returns ``(pairs, groups)``: ``pairs`` are unordered pairs from
    owl:disjointWith, ``groups`` the member lists of the two list forms.
    Malformed lists are skipped (they are reported by G2).
    """
    pairs = {frozenset((a, b)) for a, b in graph.pairs(OWL.disjointWith) if a != b}
    groups: list[frozenset] = []
    for adc in graph.subjects(RDF_TYPE, OWL.AllDisjointClasses):
        for head in graph.objects(adc, OWL.members):
            try:
                groups.append(frozenset(graph.read_list(head)))
            except ListError:
                pass
    for _, head in graph.pairs(OWL.disjointUnionOf):
        try:
            groups.append(frozenset(graph.read_list(head)))
        except ListError:
            pass
    return pairs, groups


def _substitute(template: str, ctx: Context, **values: Term) -> str:
    out = template
    for name, term in values.items():
        out = out.replace("{" + name + "}", compact(term, ctx.prefixes))
    return out


@register("R7", "instances of a partitioning type are not declared disjoint")
def r7_partition_disjointness(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    pairs, groups = disjoint_declarations(graph)
    same = {frozenset((a, b)) for a, b in graph.pairs(OWL.equivalentClass)}
    same |= {frozenset((a, b)) for a, b in graph.pairs(OWL.sameAs)}
    out = []
    for high in _by_key({h for h, _ in c.effective(GUFO.partitions)}):
        members = _by_key(_instances(c, ctx, high))
        for i, t1 in enumerate(members):
            for t2 in members[i + 1:]:
                pair = frozenset((t1, t2))
                if pair in same or pair in pairs:
                    continue
                if any(t1 in g and t2 in g for g in groups):
                    continue
                msg = _substitute(MSG_R7, ctx, **{"?type1": t1, "?type2": t2, "$this": high})
                out.append(make(ctx, "R7", high, msg, (t1, t2), graph.subject_location(high)))
    return out


def class_like(graph: Graph, c: ClosureSet, types_of_types: frozenset) -> set:
    """Terms used as classes: in subclass edges, declared classes, or typed by a metatype."""
    out: set = set()
    for s, o in graph.pairs(SUBCLASS_OF):
        out.add(s)
        out.add(o)
    for cls in (OWL.Class, RDFS.Class):
        out.update(graph.subjects(RDF_TYPE, cls))
    for x, ts in c.types_of.items():
        if not ts.isdisjoint(types_of_types):
            out.add(x)
    return out


@register("R8", "individual instantiates several kinds")
def r8_multiple_kinds(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    kinds = c.instances_of(GUFO.Kind)
    if len(kinds) < 2:
        return []
    classes = class_like(graph, c, typology(v))
    memo: dict[int, frozenset] = {}
    out = []
    for x, ts in c.types_of.items():
        if x in classes:
            continue
        found = memo.get(id(ts))
        if found is None:
            found = memo[id(ts)] = ts & kinds
        if len(found) > 1:
            out.append(make(ctx, "R8", x, MSG_R8, _by_key(found), graph.subject_location(x)))
    return out


@register("R9", "categorizing type is a first-order type")
def r9_categorizer_not_first_order(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    first_order = frozenset({GUFO.AbstractIndividualType, GUFO.ConcreteIndividualType})
    out = []
    for high in {h for h, _ in c.effective(GUFO.categorizes)}:
        hit = c.types(high) & first_order
        if hit:
            out.append(make(ctx, "R9", high, MSG_R9, _by_key(hit), graph.subject_location(high)))
    return out


def disjoint_partners(graph: Graph, v: Vocabulary) -> dict:
    """Symmetric map class -> classes declared (or built-in) disjoint with it."""
    partners: dict = {}

    def add(a: Term, b: Term) -> None:
        if a != b:
            partners.setdefault(a, set()).add(b)
            partners.setdefault(b, set()).add(a)

    for pair in v.disjoint_pairs:
        a, b = tuple(pair)
        add(a, b)
    pairs, groups = disjoint_declarations(graph)
    for pair in pairs:
        a, b = tuple(pair)
        add(a, b)
    for group in groups:
        members = _by_key(group)
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                add(a, b)
    return partners


def conflicting_pairs(types: frozenset, partners: dict) -> list[tuple[Term, Term]]:
    found = set()
    for a in types:
        others = partners.get(a)
        if others:
            for b in others:
                if b in types:
                    found.add(tuple(sorted((a, b), key=term_key)))
    return sorted(found, key=lambda p: (term_key(p[0]), term_key(p[1])))


@register("R10", "instance of disjoint classes")
def r10_disjointness_violations(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    partners = disjoint_partners(graph, v)
    keys = frozenset(partners)
    memo: dict[int, list] = {}
    out = []
    for x, ts in c.types_of.items():
        found = memo.get(id(ts))
        if found is None:
            found = memo[id(ts)] = conflicting_pairs(ts, partners) if not ts.isdisjoint(keys) else []
        if found:
            a, b = found[0]
            out.append(make(ctx, "R10", x, MSG_R10, (a, b), graph.subject_location(x)))
    return out


# -- structural findings ----------------------------------------------------


@register("G1", "subclass or subproperty cycle", severity=INFO, kind="structural")
def g1_cycles(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    out = []
    for label, cycles in (("Subclass", c.subclass_cycles), ("Subproperty", c.subproperty_cycles)):
        for members in cycles:
            names = ", ".join(compact(t, ctx.prefixes) for t in members)
            msg = f"{label} cycle: {names} are mutually specialized; treated as equivalent."
            out.append(make(ctx, "G1", members[0], msg, members[1:], graph.subject_location(members[0])))
    return out


@register("G2", "malformed RDF list", severity=ERROR, kind="structural")
def g2_malformed_lists(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    out = []
    for prop in _LIST_PROPERTIES:
        for owner, head in graph.pairs(prop):
            try:
                graph.read_list(head)
            except ListError as exc:
                msg = f"Malformed RDF list in {compact(prop, ctx.prefixes)} of {compact(owner, ctx.prefixes)}: {exc.reason}."
                out.append(make(ctx, "G2", owner, msg, (exc.node,), graph.subject_location(owner)))
    return out


@register("G3", "owl:imports not resolved", severity=INFO, kind="structural")
def g3_unresolved_imports(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    out = []
    for onto, target in graph.pairs(OWL.imports):
        msg = f"owl:imports {compact(target, ctx.prefixes)} is not dereferenced; load it as an input file if needed."
        out.append(make(ctx, "G3", onto, msg, (target,), graph.subject_location(onto)))
    return out


@register("V1", "external gUFO axiom conflicts with the built-in table", severity=WARNING, kind="structural")
def v1_vocabulary_conflicts(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    return [make(ctx, "V1", term, msg) for term, msg in v.warnings]


def run_rules(graph: Graph, v: Vocabulary, c: ClosureSet, cfg: RuleConfig | None = None, prefixes=None) -> list[Violation]:
    """Run every enabled rule and lint; deterministic (rule id, focus) order."""
    return run_checks(graph, v, c, cfg or RuleConfig(), prefixes)
