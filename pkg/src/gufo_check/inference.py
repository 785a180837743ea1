"""Subclass, subproperty and type closures.

Every rule and lint reads the graph through a :class:`ClosureSet`. The
closures are strict (a class is not its own superclass unless it sits on a
cycle) and punning-aware: a term may be both a class with superclasses and
an instance with types.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Optional

from . import kernels
from .graph import Graph
from .terms import GUFO, LITERAL_KIND, RDF_TYPE, SUBCLASS_OF, SUBPROPERTY_OF, Term, term_key
from .vocabulary import Vocabulary

_EMPTY: frozenset = frozenset()


def reachability(edges: Iterable[tuple[Term, Term]], nodes: Iterable[Term] = ()) -> tuple[dict, list]:
    """Strict reachability over term edges.

    Returns ``(above, cycles)``: ``above[t]`` is the frozenset of terms
    reachable from ``t`` along one or more edges, and ``cycles`` lists the
    strongly connected components that lie on a cycle (each sorted).
    """
    ids: dict[Term, int] = {}
    labels: list[Term] = []
    succ: list[list[int]] = []

    def intern(t: Term) -> int:
        i = ids.get(t)
        if i is None:
            i = ids[t] = len(labels)
            labels.append(t)
            succ.append([])
        return i

    for t in nodes:
        intern(t)
    for a, b in edges:
        ia = intern(a)
        ib = intern(b)
        succ[ia].append(ib)
    comp_of, comp_reach, cyclic = kernels.strict_closure(len(labels), succ, labels)
    above = {t: comp_reach[comp_of[i]] for i, t in enumerate(labels)}
    cycles = [sorted((labels[i] for i in members), key=term_key) for members in cyclic]
    cycles.sort(key=lambda c: term_key(c[0]))
    return above, cycles


@dataclass(frozen=True)
class ClosureSet:
    subclass_above: Mapping[Term, frozenset]
    subprop_above: Mapping[Term, frozenset]
    types_of: Mapping[Term, frozenset]
    asserted_types: Mapping[Term, frozenset]
    direct_superclasses: Mapping[Term, frozenset]
    effective_assertions: Mapping[Term, frozenset]
    subclass_cycles: tuple = ()
    subproperty_cycles: tuple = ()
    injected_types: Mapping[Term, frozenset] = field(default_factory=lambda: MappingProxyType({}))
    _graph: Optional[Graph] = field(default=None, repr=False, compare=False)
    _instances_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def superclasses(self, cls: Term, direct: bool = False) -> frozenset:
        if direct:
            return self.direct_superclasses.get(cls, _EMPTY)
        return self.subclass_above.get(cls, _EMPTY)

    def is_subclass(self, sub: Term, sup: Term) -> bool:
        return sup in self.subclass_above.get(sub, _EMPTY)

    def types(self, x: Term) -> frozenset:
        return self.types_of.get(x, _EMPTY)

    def effective(self, prop: Term) -> frozenset:
        """(subject, object) pairs asserted with ``prop`` or any subproperty."""
        pairs = self.effective_assertions.get(prop)
        if pairs is not None:
            return pairs
        if self._graph is None:
            return _EMPTY
        return frozenset(self._graph.pairs(prop))

    def instances_of(self, cls: Term, asserted_only: bool = False) -> frozenset:
        """Terms having ``cls`` among their (closed or asserted) types."""
        key = (cls, asserted_only)
        cached = self._instances_cache.get(key)
        if cached is not None:
            return cached
        table = self.asserted_types if asserted_only else self.types_of
        result = frozenset(x for x, ts in table.items() if cls in ts)
        self._instances_cache[key] = result
        return result


def compute_closures(
    graph: Graph,
    v: Vocabulary,
    infer_domains: bool = False,
) -> ClosureSet:
    """Saturate ``graph`` plus the vocabulary's internal edges.

    With ``infer_domains`` the vocabulary's domain/range table adds
    ``rdf:type`` facts for subjects and objects of gUFO properties (and
    their subproperties) before types are closed.
    """
    # subproperties
    prop_edges = [(s, o) for s, o in graph.pairs(SUBPROPERTY_OF) if o.kind != LITERAL_KIND]
    prop_edges.extend(v.internal_subproperty_edges)
    subprop_above, prop_cycles = reachability(prop_edges, v.property_iris)

    below: dict[Term, set] = {}
    for p, ups in subprop_above.items():
        for q in ups:
            below.setdefault(q, set()).add(p)
    effective: dict[Term, frozenset] = {}
    for prop in set(v.property_iris) | set(below):
        acc = set(graph.pairs(prop))
        for sub in below.get(prop, ()):
            if sub != prop:
                acc.update(graph.pairs(sub))
        effective[prop] = frozenset(acc)

    # asserted (and optionally injected) types
    asserted: dict[Term, set] = {}
    for x, cls in graph.pairs(RDF_TYPE):
        if cls.kind == LITERAL_KIND:
            continue
        ts = asserted.get(x)
        if ts is None:
            asserted[x] = {cls}
        else:
            ts.add(cls)

    injected: dict[Term, set] = {}
    if infer_domains:
        for prop, (dom, rng) in sorted(v.domain_range.items(), key=lambda kv: term_key(kv[0])):
            for s, o in effective.get(prop, _EMPTY):
                if dom is not None and dom not in asserted.get(s, ()):
                    asserted.setdefault(s, set()).add(dom)
                    injected.setdefault(s, set()).add(dom)
                if rng is not None and o.kind != LITERAL_KIND and rng not in asserted.get(o, ()):
                    asserted.setdefault(o, set()).add(rng)
                    injected.setdefault(o, set()).add(rng)

    # subclasses
    class_edges = [(s, o) for s, o in graph.pairs(SUBCLASS_OF) if o.kind != LITERAL_KIND]
    class_edges.extend(v.internal_subclass_edges)
    direct: dict[Term, set] = {}
    for s, o in class_edges:
        direct.setdefault(s, set()).add(o)
    subclass_above, class_cycles = reachability(class_edges, sorted(v.class_iris, key=term_key))

    upsets: dict[Term, frozenset] = {}

    def upset(cls: Term) -> frozenset:
        u = upsets.get(cls)
        if u is None:
            u = upsets[cls] = subclass_above.get(cls, _EMPTY) | {cls}
        return u

    types_of: dict[Term, frozenset] = {}
    asserted_frozen: dict[Term, frozenset] = {}
    for x, ts in asserted.items():
        asserted_frozen[x] = frozenset(ts)
        if len(ts) == 1:
            types_of[x] = upset(next(iter(ts)))
        else:
            acc: set = set()
            for cls in ts:
                acc |= upset(cls)
            types_of[x] = frozenset(acc)

    return ClosureSet(
        subclass_above=MappingProxyType(subclass_above),
        subprop_above=MappingProxyType(subprop_above),
        types_of=MappingProxyType(types_of),
        asserted_types=MappingProxyType(asserted_frozen),
        direct_superclasses=MappingProxyType({k: frozenset(s) for k, s in direct.items()}),
        effective_assertions=MappingProxyType(effective),
        subclass_cycles=tuple(tuple(c) for c in class_cycles),
        subproperty_cycles=tuple(tuple(c) for c in prop_cycles),
        injected_types=MappingProxyType({k: frozenset(s) for k, s in injected.items()}),
        _graph=graph,
    )


def instances_of(c: ClosureSet, class_iri: Term) -> frozenset:
    return c.instances_of(class_iri)


def historical_closure(graph: Graph, c: Optional[ClosureSet] = None) -> frozenset:
    """Transitive closure of ``gufo:historicallyDependsOn``.

    Uses asserted triples only, or the subproperty-closed assertions when a
    :class:`ClosureSet` is supplied. Reflexive pairs from cycles are kept.
    """
    prop = GUFO.historicallyDependsOn
    pairs = c.effective(prop) if c is not None else frozenset(graph.pairs(prop))
    above, _ = reachability(sorted(pairs, key=lambda p: (term_key(p[0]), term_key(p[1]))))
    return frozenset((x, y) for x, ys in above.items() for y in ys)
