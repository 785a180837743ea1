"""The gUFO term table.

Holds the class and property IRIs of gUFO, the subclass and subproperty
edges among them, the metatype groups used by the taxonomy rules, the
disjointness relation and the domain/range table. The built-in table works
offline; :func:`merge_external` folds in facts from the published ontology
file without ever dropping a built-in fact.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Mapping

from .graph import Graph
from .terms import (
    GUFO,
    OWL,
    RDF_TYPE,
    RDFS,
    SUBCLASS_OF,
    SUBPROPERTY_OF,
    TIME,
    Term,
    compact,
)

_CLASS_NAMES = (
    # taxonomy of individuals
    "Individual", "ConcreteIndividual", "AbstractIndividual", "Endurant", "Object",
    "FunctionalComplex", "Collection", "VariableCollection", "FixedCollection", "Quantity",
    "Aspect", "IntrinsicAspect", "Quality", "IntrinsicMode", "ExtrinsicAspect", "Relator",
    "ExtrinsicMode", "Event", "Participation", "Situation", "QualityValueAttributionSituation",
    "TemporaryConstitutionSituation", "TemporaryInstantiationSituation",
    "TemporaryParthoodSituation", "TemporaryRelationshipSituation", "QualityValue",
    # taxonomy of types
    "Type", "AbstractIndividualType", "ConcreteIndividualType", "EndurantType", "EventType",
    "RigidType", "NonRigidType", "AntiRigidType", "SemiRigidType", "Sortal", "NonSortal",
    "Kind", "SubKind", "Phase", "Role", "Category", "PhaseMixin", "RoleMixin", "Mixin",
)

_OBJECT_PROPERTY_NAMES = (
    "inheresIn", "mediates", "externallyDependsOn", "isAspectProperPartOf",
    "isObjectProperPartOf", "isComponentOf", "isCollectionMemberOf", "isSubCollectionOf",
    "isSubQuantityOf", "isEventProperPartOf", "participatedIn", "wasCreatedIn",
    "wasTerminatedIn", "manifestedIn", "historicallyDependsOn", "standsInQualifiedAttribution",
    "concernsQualityType", "categorizes", "partitions", "hasBeginPoint", "hasEndPoint",
    "hasReifiedQualityValue", "hasValueComponent",
)

_DATA_PROPERTY_NAMES = (
    "hasQualityValue", "concernsQualityValue", "hasBeginPointInXSDDate",
    "hasBeginPointInXSDDateTimeStamp", "hasEndPointInXSDDate", "hasEndPointInXSDDateTimeStamp",
)

# (sub, super); only edges that the gUFO documentation states in prose
_SUBCLASS_NAMES = (
    ("ConcreteIndividual", "Individual"),
    ("AbstractIndividual", "Individual"),
    ("QualityValue", "AbstractIndividual"),
    ("Endurant", "ConcreteIndividual"),
    ("Event", "ConcreteIndividual"),
    ("Situation", "ConcreteIndividual"),
    ("Object", "Endurant"),
    ("Aspect", "Endurant"),
    ("FunctionalComplex", "Object"),
    ("Collection", "Object"),
    ("Quantity", "Object"),
    ("VariableCollection", "Collection"),
    ("FixedCollection", "Collection"),
    ("IntrinsicAspect", "Aspect"),
    ("ExtrinsicAspect", "Aspect"),
    ("Quality", "IntrinsicAspect"),
    ("IntrinsicMode", "IntrinsicAspect"),
    ("Relator", "ExtrinsicAspect"),
    ("ExtrinsicMode", "ExtrinsicAspect"),
    ("Participation", "Event"),
    ("QualityValueAttributionSituation", "Situation"),
    ("TemporaryConstitutionSituation", "Situation"),
    ("TemporaryInstantiationSituation", "Situation"),
    ("TemporaryParthoodSituation", "Situation"),
    ("TemporaryRelationshipSituation", "Situation"),
    ("AbstractIndividualType", "Type"),
    ("ConcreteIndividualType", "Type"),
    ("EndurantType", "ConcreteIndividualType"),
    ("EventType", "ConcreteIndividualType"),
    ("RigidType", "EndurantType"),
    ("NonRigidType", "EndurantType"),
    ("AntiRigidType", "NonRigidType"),
    ("SemiRigidType", "NonRigidType"),
    ("Sortal", "EndurantType"),
    ("NonSortal", "EndurantType"),
    ("Kind", "RigidType"),
    ("Kind", "Sortal"),
    ("SubKind", "RigidType"),
    ("SubKind", "Sortal"),
    ("Category", "RigidType"),
    ("Category", "NonSortal"),
    ("Phase", "AntiRigidType"),
    ("Phase", "Sortal"),
    ("Role", "AntiRigidType"),
    ("Role", "Sortal"),
    ("PhaseMixin", "AntiRigidType"),
    ("PhaseMixin", "NonSortal"),
    ("RoleMixin", "AntiRigidType"),
    ("RoleMixin", "NonSortal"),
    ("Mixin", "SemiRigidType"),
    ("Mixin", "NonSortal"),
)

_SUBPROPERTY_NAMES = (
    ("isComponentOf", "isObjectProperPartOf"),
    ("isCollectionMemberOf", "isObjectProperPartOf"),
    ("isSubCollectionOf", "isObjectProperPartOf"),
    ("isSubQuantityOf", "isObjectProperPartOf"),
    ("partitions", "categorizes"),
)

_GROUP_NAMES = {
    "rigid_group": ("RigidType", "Category", "Kind", "SubKind"),
    "semirigid_group": ("SemiRigidType", "Mixin"),
    "antirigid_group": ("AntiRigidType", "Phase", "PhaseMixin", "Role", "RoleMixin"),
    "sortal_group": ("Sortal", "Kind", "SubKind", "Phase", "Role"),
    "nonsortal_group": ("NonSortal", "Category", "PhaseMixin", "RoleMixin", "Mixin"),
    "base_sortal_group": ("SubKind", "Phase", "Role"),
    "endurant_type_targets": (
        "EndurantType", "RigidType", "NonRigidType", "AntiRigidType", "SemiRigidType",
        "Phase", "PhaseMixin", "Role", "RoleMixin", "Mixin", "NonSortal", "Category",
        "Sortal", "Kind", "SubKind",
    ),
}

# order matters: reproduces the sh:in list of the endurant-type shape
ENDURANT_DISJOINT_LIST = (
    GUFO.AbstractIndividual,
    GUFO.QualityValue,
    TIME.Instant,
    GUFO.Event,
    GUFO.Participation,
    GUFO.Situation,
    GUFO.QualityValueAttributionSituation,
    GUFO.TemporaryConstitutionSituation,
    GUFO.TemporaryInstantiationSituation,
    GUFO.TemporaryParthoodSituation,
    GUFO.TemporaryRelationshipSituation,
)

_DISJOINT_NAMES = (
    ("Individual", "Type"),
    ("ConcreteIndividual", "AbstractIndividual"),
    ("Event", "Situation"),
    ("Object", "Aspect"),
    # intrinsic/extrinsic split; stated in prose, not as an axiom
    ("IntrinsicAspect", "ExtrinsicAspect"),
    # rigidity and sortality partitions of the typology of types
    ("RigidType", "NonRigidType"),
    ("AntiRigidType", "SemiRigidType"),
    ("Sortal", "NonSortal"),
)

_DOMAIN_RANGE_NAMES = {
    "inheresIn": ("Aspect", "ConcreteIndividual"),
    "mediates": ("Relator", "ConcreteIndividual"),
    "externallyDependsOn": ("ExtrinsicMode", "ConcreteIndividual"),
    "isAspectProperPartOf": ("Aspect", "Aspect"),
    "isObjectProperPartOf": ("Object", "Object"),
    "isComponentOf": ("Object", "FunctionalComplex"),
    "isCollectionMemberOf": ("Object", "Collection"),
    "isSubCollectionOf": ("Collection", "Collection"),
    "isSubQuantityOf": ("Quantity", "Quantity"),
    "isEventProperPartOf": ("Event", "Event"),
    "participatedIn": ("Object", "Event"),
    "wasCreatedIn": ("Endurant", "Event"),
    "wasTerminatedIn": ("Endurant", "Event"),
    "manifestedIn": ("Aspect", "Event"),
    "historicallyDependsOn": ("ConcreteIndividual", "ConcreteIndividual"),
    "standsInQualifiedAttribution": ("Endurant", "QualityValueAttributionSituation"),
    "concernsQualityType": ("QualityValueAttributionSituation", "Type"),
    "concernsQualityValue": ("QualityValueAttributionSituation", None),
    "categorizes": ("Type", "Type"),
    "partitions": ("Type", "Type"),
    "hasBeginPoint": ("ConcreteIndividual", None),
    "hasEndPoint": ("ConcreteIndividual", None),
    "hasReifiedQualityValue": ("Quality", "QualityValue"),
    "hasValueComponent": ("QualityValue", None),
    "hasQualityValue": ("Quality", None),
    "hasBeginPointInXSDDate": ("ConcreteIndividual", None),
    "hasBeginPointInXSDDateTimeStamp": ("ConcreteIndividual", None),
    "hasEndPointInXSDDate": ("ConcreteIndividual", None),
    "hasEndPointInXSDDateTimeStamp": ("ConcreteIndividual", None),
}

# IRIs outside the gUFO namespace that the rules treat as opaque constants
FOREIGN_IRIS = frozenset({TIME.Instant})


@dataclass(frozen=True)
class Vocabulary:
    class_iris: frozenset
    property_iris: frozenset
    data_property_iris: frozenset
    internal_subclass_edges: frozenset
    internal_subproperty_edges: frozenset
    metatype_groups: Mapping[str, frozenset]
    endurant_disjoint_list: tuple
    disjoint_pairs: frozenset
    domain_range: Mapping[Term, tuple]
    inferred_disjoint_pairs: frozenset = frozenset()
    warnings: tuple = ()
    object_property_iris: frozenset = field(default=frozenset())

    def group(self, name: str) -> frozenset:
        return self.metatype_groups[name]

    @property
    def rigid_group(self) -> frozenset:
        return self.metatype_groups["rigid_group"]

    @property
    def semirigid_group(self) -> frozenset:
        return self.metatype_groups["semirigid_group"]

    @property
    def antirigid_group(self) -> frozenset:
        return self.metatype_groups["antirigid_group"]

    @property
    def sortal_group(self) -> frozenset:
        return self.metatype_groups["sortal_group"]

    @property
    def nonsortal_group(self) -> frozenset:
        return self.metatype_groups["nonsortal_group"]

    @property
    def base_sortal_group(self) -> frozenset:
        return self.metatype_groups["base_sortal_group"]

    @property
    def endurant_type_targets(self) -> frozenset:
        return self.metatype_groups["endurant_type_targets"]

    def is_known(self, term: Term) -> bool:
        return term in self.class_iris or term in self.property_iris or term in FOREIGN_IRIS

    def are_disjoint(self, a: Term, b: Term) -> bool:
        return frozenset((a, b)) in self.disjoint_pairs

    def superclasses(self, cls: Term) -> set:
        """Strict gUFO-internal superclasses of ``cls`` (small table, plain DFS)."""
        out: set = set()
        stack = [cls]
        while stack:
            node = stack.pop()
            for sub, sup in self.internal_subclass_edges:
                if sub == node and sup not in out:
                    out.add(sup)
                    stack.append(sup)
        return out


def _pairs(names) -> frozenset:
    return frozenset((GUFO[a], GUFO[b]) for a, b in names)


def builtin_vocabulary() -> Vocabulary:
    """The offline gUFO table; pure and idempotent."""
    return _BUILTIN


def _build_builtin() -> Vocabulary:
    classes = frozenset(GUFO[n] for n in _CLASS_NAMES)
    obj_props = frozenset(GUFO[n] for n in _OBJECT_PROPERTY_NAMES)
    data_props = frozenset(GUFO[n] for n in _DATA_PROPERTY_NAMES)
    groups = {name: frozenset(GUFO[n] for n in members) for name, members in _GROUP_NAMES.items()}
    disjoint = {frozenset((GUFO[a], GUFO[b])) for a, b in _DISJOINT_NAMES}
    disjoint.update(frozenset((GUFO.Endurant, x)) for x in ENDURANT_DISJOINT_LIST)
    inferred = frozenset(
        frozenset((GUFO[a], GUFO[b]))
        for a, b in _DISJOINT_NAMES
        if (a, b) not in (("Individual", "Type"), ("ConcreteIndividual", "AbstractIndividual"),
                          ("Event", "Situation"), ("Object", "Aspect"))
    )
    domain_range = {
        GUFO[p]: (GUFO[d] if d else None, GUFO[r] if r else None)
        for p, (d, r) in _DOMAIN_RANGE_NAMES.items()
    }
    return Vocabulary(
        class_iris=classes,
        property_iris=obj_props | data_props,
        data_property_iris=data_props,
        object_property_iris=obj_props,
        internal_subclass_edges=_pairs(_SUBCLASS_NAMES),
        internal_subproperty_edges=_pairs(_SUBPROPERTY_NAMES),
        metatype_groups=MappingProxyType(groups),
        endurant_disjoint_list=ENDURANT_DISJOINT_LIST,
        disjoint_pairs=frozenset(disjoint),
        inferred_disjoint_pairs=inferred,
        domain_range=MappingProxyType(domain_range),
    )


_BUILTIN = _build_builtin()


def _disjoint_under(pairs: frozenset, above_a: set, above_b: set) -> bool:
    return any(frozenset((x, y)) in pairs for x in above_a for y in above_b)


def merge_external(v: Vocabulary, g: Graph) -> Vocabulary:
    """Extend ``v`` with gUFO-namespace axioms found in ``g``.

    Absorbs ``rdfs:subClassOf``, ``rdfs:subPropertyOf``, ``owl:disjointWith``,
    ``rdfs:domain`` and ``rdfs:range`` triples (plus ``owl:AllDisjointClasses``
    and ``owl:disjointUnionOf`` lists) whose subject is a gUFO IRI. Built-in
    facts always win; contradicting external facts become ``(term, message)``
    entries of ``warnings`` instead.
    """
    in_ns = GUFO.__contains__
    prefixes = dict(g.prefixes) or {"gufo": GUFO.base}
    warnings = list(v.warnings)
    classes = set(v.class_iris)
    obj_props = set(v.object_property_iris)
    data_props = set(v.data_property_iris)
    sub_edges = set(v.internal_subclass_edges)
    prop_edges = set(v.internal_subproperty_edges)
    disjoint = set(v.disjoint_pairs)
    domain_range = dict(v.domain_range)

    for s, o in g.pairs(RDF_TYPE):
        if not in_ns(s):
            continue
        if o == OWL.Class:
            classes.add(s)
        elif o == OWL.ObjectProperty:
            obj_props.add(s)
        elif o == OWL.DatatypeProperty:
            data_props.add(s)

    builtin_disjoint = frozenset(v.disjoint_pairs)

    def ancestors(cls: Term) -> set:
        return {cls} | v.superclasses(cls)

    for s, o in sorted(g.pairs(SUBCLASS_OF)):
        if not in_ns(s) or o.kind != "iri":
            continue
        classes.add(s)
        if in_ns(o):
            classes.add(o)
        if (s, o) in sub_edges:
            continue
        if _disjoint_under(builtin_disjoint, ancestors(s), ancestors(o)):
            warnings.append((s, f"External axiom {compact(s, prefixes)} rdfs:subClassOf "
                                f"{compact(o, prefixes)} contradicts built-in disjointness; ignored."))
            continue
        sub_edges.add((s, o))

    for s, o in sorted(g.pairs(SUBPROPERTY_OF)):
        if not in_ns(s) or o.kind != "iri":
            continue
        if s not in data_props:
            obj_props.add(s)
        prop_edges.add((s, o))

    declared: list[tuple[Term, Term]] = []
    for s, o in g.pairs(OWL.disjointWith):
        if in_ns(s) and o.kind == "iri":
            declared.append((s, o))
    for adc in g.subjects(RDF_TYPE, OWL.AllDisjointClasses):
        for head in g.objects(adc, OWL.members):
            try:
                members = [m for m in g.read_list(head) if m.kind == "iri"]
            except ValueError:
                continue
            if all(in_ns(m) for m in members):
                declared.extend((a, b) for i, a in enumerate(members) for b in members[i + 1:])
    for s, head in g.pairs(OWL.disjointUnionOf):
        if not in_ns(s):
            continue
        try:
            members = [m for m in g.read_list(head) if m.kind == "iri"]
        except ValueError:
            continue
        declared.extend((a, b) for i, a in enumerate(members) for b in members[i + 1:])

    for a, b in sorted(declared):
        pair = frozenset((a, b))
        if pair in disjoint or a == b:
            continue
        if a in ancestors(b) or b in ancestors(a):
            warnings.append((a, f"External axiom {compact(a, prefixes)} owl:disjointWith "
                                f"{compact(b, prefixes)} contradicts a built-in subclass edge; ignored."))
            continue
        disjoint.add(pair)

    for attr, index in ((RDFS.domain, 0), (RDFS.range, 1)):
        for s, o in sorted(g.pairs(attr)):
            if not in_ns(s) or o.kind != "iri":
                continue
            current = domain_range.get(s, (None, None))
            if current[index] is None:
                updated = list(current)
                updated[index] = o
                domain_range[s] = tuple(updated)
            elif current[index] != o:
                which = "domain" if index == 0 else "range"
                warnings.append((s, f"External {which} {compact(o, prefixes)} for {compact(s, prefixes)} "
                                    f"differs from built-in {compact(current[index], prefixes)}; built-in kept."))

    return replace(
        v,
        class_iris=frozenset(classes),
        object_property_iris=frozenset(obj_props),
        data_property_iris=frozenset(data_props),
        property_iris=frozenset(obj_props | data_props),
        internal_subclass_edges=frozenset(sub_edges),
        internal_subproperty_edges=frozenset(prop_edges),
        disjoint_pairs=frozenset(disjoint),
        domain_range=MappingProxyType(domain_range),
        warnings=tuple(warnings),
    )


def ontology_counts(g: Graph) -> dict[str, int]:
    """Declared gUFO classes, object properties and data properties in ``g``."""
    counts = {"classes": 0, "object_properties": 0, "data_properties": 0}
    kinds = {OWL.Class: "classes", OWL.ObjectProperty: "object_properties", OWL.DatatypeProperty: "data_properties"}
    for s, o in g.pairs(RDF_TYPE):
        key = kinds.get(o)
        if key and s in GUFO:
            counts[key] += 1
    return counts

