"""RDF terms and triples.

Terms are plain named tuples so that equality and hashing are structural and
cheap. Use the :func:`IRI`, :func:`BNode` and :func:`Literal` constructors
rather than building :class:`Term` directly; they enforce the invariants.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Optional

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"
GUFO_NS = "http://purl.org/nemo/gufo#"
TIME_NS = "http://www.w3.org/2006/time#"

IRI_KIND = "iri"
BLANK_KIND = "blank"
LITERAL_KIND = "literal"


class TermError(ValueError):
    """Raised when a term would violate the RDF data model."""


class Term(NamedTuple):
    kind: str
    value: str
    datatype: Optional[str] = None
    lang: Optional[str] = None

    @property
    def is_iri(self) -> bool:
        return self.kind == IRI_KIND

    @property
    def is_blank(self) -> bool:
        return self.kind == BLANK_KIND

    @property
    def is_literal(self) -> bool:
        return self.kind == LITERAL_KIND

    def n3(self) -> str:
        return to_ntriples(self)

    def __repr__(self) -> str:
        return f"Term({to_ntriples(self)})"


class Triple(NamedTuple):
    subject: Term
    predicate: Term
    object: Term

    def __repr__(self) -> str:
        return f"Triple({to_ntriples(self.subject)} {to_ntriples(self.predicate)} {to_ntriples(self.object)})"


_iri_cache: dict[str, Term] = {}


def IRI(value: str) -> Term:
    term = _iri_cache.get(value)
    if term is not None:
        return term
    if not value or any(ch.isspace() for ch in value):
        raise TermError(f"invalid IRI {value!r}")
    term = Term(IRI_KIND, value)
    if len(_iri_cache) < 1_000_000:
        _iri_cache[value] = term
    return term


def BNode(label: str) -> Term:
    if not label:
        raise TermError("blank node label must be non-empty")
    return Term(BLANK_KIND, label)


def Literal(lexical: str, datatype: Optional[str] = None, lang: Optional[str] = None) -> Term:
    if lang:
        if datatype not in (None, RDF_NS + "langString"):
            raise TermError("a language-tagged literal must have datatype rdf:langString")
        return Term(LITERAL_KIND, lexical, RDF_NS + "langString", lang.lower())
    if datatype == RDF_NS + "langString":
        raise TermError("rdf:langString literal requires a language tag")
    return Term(LITERAL_KIND, lexical, datatype or XSD_NS + "string", None)


class Namespace:
    """Attribute-style IRI factory: ``GUFO.Kind`` -> IRI term."""

    def __init__(self, base: str):
        self._base = base

    @property
    def base(self) -> str:
        return self._base

    def __getattr__(self, name: str) -> Term:
        if name.startswith("__"):
            raise AttributeError(name)
        return IRI(self._base + name)

    def __getitem__(self, name: str) -> Term:
        return IRI(self._base + name)

    def __contains__(self, term: object) -> bool:
        return isinstance(term, Term) and term.kind == IRI_KIND and term.value.startswith(self._base)

    def local(self, term: Term) -> str:
        return term.value[len(self._base):]


RDF = Namespace(RDF_NS)
RDFS = Namespace(RDFS_NS)
OWL = Namespace(OWL_NS)
XSD = Namespace(XSD_NS)
GUFO = Namespace(GUFO_NS)
TIME = Namespace(TIME_NS)

RDF_TYPE = RDF.type
RDF_FIRST = RDF.first
RDF_REST = RDF.rest
RDF_NIL = RDF.nil
SUBCLASS_OF = RDFS.subClassOf
SUBPROPERTY_OF = RDFS.subPropertyOf

_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
    "\b": "\\b",
    "\f": "\\f",
}


def _escape_literal(text: str) -> str:
    if not any(ch in _ESCAPES for ch in text):
        return text
    return "".join(_ESCAPES.get(ch, ch) for ch in text)


def _escape_iri(text: str) -> str:
    out = []
    for ch in text:
        if ch in '<>"{}|^`\\' or ord(ch) <= 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


@lru_cache(maxsize=1 << 18)
def to_ntriples(term: Term) -> str:
    """Canonical N-Triples serialization of a single term."""
    kind = term.kind
    if kind == IRI_KIND:
        return f"<{_escape_iri(term.value)}>"
    if kind == BLANK_KIND:
        return f"_:{term.value}"
    lexical = f'"{_escape_literal(term.value)}"'
    if term.lang:
        return f"{lexical}@{term.lang}"
    if term.datatype == XSD_NS + "string":
        return lexical
    return f"{lexical}^^<{_escape_iri(term.datatype)}>"


def term_key(term: Term) -> str:
    """Sort key: lexicographic order of the N-Triples serialization."""
    return to_ntriples(term)


def triple_key(triple: Triple) -> tuple[str, str, str]:
    return (to_ntriples(triple[0]), to_ntriples(triple[1]), to_ntriples(triple[2]))


def compact(term: Term, prefixes: Optional[dict[str, str]] = None) -> str:
    """Human-oriented rendering: a prefixed name when a prefix matches."""
    if term.kind == IRI_KIND and prefixes:
        best = None
        for prefix, ns in prefixes.items():
            if ns and term.value.startswith(ns) and (best is None or len(ns) > len(best[1])):
                local = term.value[len(ns):]
                if _plain_local(local):
                    best = (prefix, ns)
        if best is not None:
            return f"{best[0]}:{term.value[len(best[1]):]}"
    return to_ntriples(term)


def _plain_local(local: str) -> bool:
    if local == "":
        return True
    if local.endswith("."):
        return False
    return all(ch.isalnum() or ch in "_-." for ch in local)
