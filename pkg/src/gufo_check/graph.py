"""Immutable, indexed triple store.

Three nested indexes (subject-predicate-object, predicate-object-subject,
object-subject-predicate) answer every bound/unbound slot combination
without a scan. Graphs are assembled with :class:`GraphBuilder` and never
mutated afterwards.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from types import MappingProxyType
from typing import Optional

from .terms import (
    BLANK_KIND,
    LITERAL_KIND,
    RDF_FIRST,
    RDF_NIL,
    RDF_REST,
    Term,
    Triple,
    to_ntriples,
    triple_key,
)


@dataclass(frozen=True)
class Location:
    file: str
    line: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}"


class ListError(ValueError):
    """Malformed RDF collection (missing rdf:first, branching rdf:rest, cycle)."""

    def __init__(self, node: Term, reason: str):
        super().__init__(f"malformed RDF list at {to_ntriples(node)}: {reason}")
        self.node = node
        self.reason = reason


class GraphBuilder:
    """Mutable accumulator; call :meth:`build` to obtain a :class:`Graph`."""

    def __init__(self) -> None:
        self._spo: dict[Term, dict[Term, set[Term]]] = {}
        self._pos: dict[Term, dict[Term, set[Term]]] = {}
        self._osp: dict[Term, dict[Term, set[Term]]] = {}
        self._locations: dict[Triple, Location] = {}
        self._prefixes: dict[str, str] = {}
        self._size = 0

    def __len__(self) -> int:
        return self._size

    def add(self, s: Term, p: Term, o: Term, location: Optional[Location] = None) -> bool:
        """Insert a triple; returns False when it was already present."""
        if s.kind == LITERAL_KIND:
            raise ValueError("a literal cannot be a triple subject")
        if p.kind != "iri":
            raise ValueError("a triple predicate must be an IRI")
        by_pred = self._spo.get(s)
        if by_pred is None:
            by_pred = self._spo[s] = {}
        objs = by_pred.get(p)
        if objs is None:
            objs = by_pred[p] = set()
        elif o in objs:
            return False
        objs.add(o)
        by_obj = self._pos.get(p)
        if by_obj is None:
            by_obj = self._pos[p] = {}
        subs = by_obj.get(o)
        if subs is None:
            by_obj[o] = {s}
        else:
            subs.add(s)
        by_subj = self._osp.get(o)
        if by_subj is None:
            by_subj = self._osp[o] = {}
        preds = by_subj.get(s)
        if preds is None:
            by_subj[s] = {p}
        else:
            preds.add(p)
        if location is not None:
            self._locations[Triple(s, p, o)] = location
        self._size += 1
        return True

    def add_triple(self, triple: Triple, location: Optional[Location] = None) -> bool:
        return self.add(triple[0], triple[1], triple[2], location)

    def bind(self, prefix: str, namespace: str) -> None:
        self._prefixes.setdefault(prefix, namespace)

    def merge(self, graph: "Graph") -> None:
        for prefix, ns in graph.prefixes.items():
            self.bind(prefix, ns)
        for triple in graph:
            self.add(triple[0], triple[1], triple[2], graph.location(triple))

    def build(self) -> "Graph":
        graph = Graph(self._spo, self._pos, self._osp, self._size, self._locations, self._prefixes)
        # the builder hands its storage over; start fresh if reused
        self.__init__()
        return graph


class Graph:
    """Read-only triple set with match, list walking and location lookup."""

    __slots__ = ("_spo", "_pos", "_osp", "_size", "_locations", "_prefixes")

    def __init__(self, spo=None, pos=None, osp=None, size=0, locations=None, prefixes=None):
        self._spo = spo if spo is not None else {}
        self._pos = pos if pos is not None else {}
        self._osp = osp if osp is not None else {}
        self._size = size
        self._locations = locations if locations is not None else {}
        self._prefixes = MappingProxyType(dict(prefixes or {}))

    @classmethod
    def from_triples(cls, triples: Iterable[Triple], prefixes: Optional[dict[str, str]] = None) -> "Graph":
        builder = GraphBuilder()
        for prefix, ns in (prefixes or {}).items():
            builder.bind(prefix, ns)
        for s, p, o in triples:
            builder.add(s, p, o)
        return builder.build()

    @staticmethod
    def union(*graphs: "Graph") -> "Graph":
        builder = GraphBuilder()
        for graph in graphs:
            builder.merge(graph)
        return builder.build()

    @property
    def prefixes(self) -> MappingProxyType:
        return self._prefixes

    def __len__(self) -> int:
        return self._size

    def __iter__(self) -> Iterator[Triple]:
        for s, by_pred in self._spo.items():
            for p, objs in by_pred.items():
                for o in objs:
                    yield Triple(s, p, o)

    def __contains__(self, triple: object) -> bool:
        s, p, o = triple  # type: ignore[misc]
        by_pred = self._spo.get(s)
        if by_pred is None:
            return False
        objs = by_pred.get(p)
        return objs is not None and o in objs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._size == other._size and all(t in other for t in self)

    __hash__ = None  # type: ignore[assignment]

    def triples(self) -> frozenset[Triple]:
        return frozenset(self)

    def location(self, triple: Triple) -> Optional[Location]:
        return self._locations.get(triple)

    def subject_location(self, s: Term) -> Optional[Location]:
        """Earliest recorded location of any triple about ``s``.

        Falls back to triples that mention ``s`` as object.
        """
        best = None
        for p, objs in self._spo.get(s, {}).items():
            for o in objs:
                loc = self._locations.get(Triple(s, p, o))
                if loc is not None and (best is None or (loc.file, loc.line) < (best.file, best.line)):
                    best = loc
        if best is None:
            for subj, preds in self._osp.get(s, {}).items():
                for p in preds:
                    loc = self._locations.get(Triple(subj, p, s))
                    if loc is not None and (best is None or (loc.file, loc.line) < (best.file, best.line)):
                        best = loc
        return best

    # -- unordered primitives used by the validators --------------------

    def objects(self, s: Term, p: Term) -> set[Term]:
        return self._spo.get(s, {}).get(p, _EMPTY)

    def subjects(self, p: Term, o: Term) -> set[Term]:
        return self._pos.get(p, {}).get(o, _EMPTY)

    def value(self, s: Term, p: Term) -> Optional[Term]:
        objs = self.objects(s, p)
        return min(objs, key=to_ntriples) if objs else None

    def pairs(self, p: Term) -> Iterator[tuple[Term, Term]]:
        """All (subject, object) pairs asserted with predicate ``p``."""
        for o, subs in self._pos.get(p, {}).items():
            for s in subs:
                yield (s, o)

    def predicate_count(self, p: Term) -> int:
        return sum(len(subs) for subs in self._pos.get(p, {}).values())

    def subject_terms(self) -> Iterable[Term]:
        return self._spo.keys()

    def predicate_terms(self) -> Iterable[Term]:
        return self._pos.keys()

    def object_terms(self) -> Iterable[Term]:
        return self._osp.keys()

    def predicate_objects(self, s: Term) -> Iterator[tuple[Term, Term]]:
        for p, objs in self._spo.get(s, {}).items():
            for o in objs:
                yield (p, o)

    # -- ordered public API ----------------------------------------------

    def _unsorted(self, s, p, o) -> Iterator[Triple]:
        if s is not None:
            by_pred = self._spo.get(s)
            if not by_pred:
                return
            if p is not None:
                objs = by_pred.get(p)
                if not objs:
                    return
                if o is not None:
                    if o in objs:
                        yield Triple(s, p, o)
                    return
                for obj in objs:
                    yield Triple(s, p, obj)
                return
            if o is not None:
                for pred in self._osp.get(o, {}).get(s, ()):
                    yield Triple(s, pred, o)
                return
            for pred, objs in by_pred.items():
                for obj in objs:
                    yield Triple(s, pred, obj)
            return
        if p is not None:
            by_obj = self._pos.get(p)
            if not by_obj:
                return
            if o is not None:
                for subj in by_obj.get(o, ()):
                    yield Triple(subj, p, o)
                return
            for obj, subs in by_obj.items():
                for subj in subs:
                    yield Triple(subj, p, obj)
            return
        if o is not None:
            for subj, preds in self._osp.get(o, {}).items():
                for pred in preds:
                    yield Triple(subj, pred, o)
            return
        yield from self

    def match(self, s: Optional[Term] = None, p: Optional[Term] = None, o: Optional[Term] = None) -> Iterator[Triple]:
        """Triples agreeing with every bound slot, in canonical order."""
        return iter(sorted(self._unsorted(s, p, o), key=triple_key))

    def read_list(self, head: Term) -> list[Term]:
        """Walk an ``rdf:first``/``rdf:rest`` chain from ``head`` to ``rdf:nil``."""
        items: list[Term] = []
        seen: set[Term] = set()
        node = head
        while node != RDF_NIL:
            if node in seen:
                raise ListError(node, "rdf:rest chain contains a cycle")
            seen.add(node)
            firsts = self.objects(node, RDF_FIRST)
            rests = self.objects(node, RDF_REST)
            if len(firsts) != 1:
                raise ListError(node, "missing rdf:first" if not firsts else "more than one rdf:first")
            if len(rests) != 1:
                raise ListError(node, "missing rdf:rest" if not rests else "branching rdf:rest")
            items.append(next(iter(firsts)))
            node = next(iter(rests))
        return items


_EMPTY: set = frozenset()  # type: ignore[assignment]


def match(graph: Graph, s: Optional[Term] = None, p: Optional[Term] = None, o: Optional[Term] = None) -> Iterator[Triple]:
    return graph.match(s, p, o)


def read_list(graph: Graph, head: Term) -> list[Term]:
    return graph.read_list(head)


def serialize_ntriples(graph: Graph) -> str:
    """One canonical N-Triples line per triple, sorted, LF-terminated."""
    lines = sorted(f"{to_ntriples(s)} {to_ntriples(p)} {to_ntriples(o)} .\n" for s, p, o in graph)
    return "".join(lines)


def rename_blank_nodes(graph: Graph, prefix: str) -> Graph:
    """Copy of ``graph`` with every blank label prefixed, keeping merges apart."""
    builder = GraphBuilder()
    for name, ns in graph.prefixes.items():
        builder.bind(name, ns)

    def ren(t: Term) -> Term:
        return Term(BLANK_KIND, prefix + t.value) if t.kind == BLANK_KIND else t

    for triple in graph:
        s, p, o = triple
        builder.add(ren(s), p, ren(o), graph.location(triple))
    return builder.build()
