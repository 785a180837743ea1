"""Turtle reader for the subset used by gUFO-based ontologies.

Supported: ``@prefix``/``@base`` and SPARQL-style ``PREFIX``/``BASE``,
IRIs, prefixed names, blank node labels, ``a``, predicate-object lists,
object lists, anonymous blank node property lists, collections, plain,
typed and language-tagged literals, numeric and boolean shorthand, and
comments. Quoted triples and graph blocks are rejected.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from typing import Optional
from urllib.parse import urljoin

from .graph import Graph, GraphBuilder, Location
from .terms import (
    BLANK_KIND,
    IRI,
    LITERAL_KIND,
    RDF_FIRST,
    RDF_NIL,
    RDF_REST,
    RDF_TYPE,
    XSD_NS,
    Literal,
    Term,
    TermError,
)


class TurtleSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int, token: str = "", source: str = "<string>"):
        where = f"{source}:{line}:{column}"
        detail = f" near {token!r}" if token else ""
        super().__init__(f"{where}: {message}{detail}")
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        self.source = source


_PN_CHARS_BASE = "A-Za-z\u00C0-\u00D6\u00D8-\u00F6\u00F8-\u02FF\u0370-\u037D\u037F-\u1FFF\u200C-\u200D\u2070-\u218F\u2C00-\u2FEF\u3001-\uD7FF\uF900-\uFDCF\uFDF0-\uFFFD"
_PN_CHARS_U = _PN_CHARS_BASE + "_"
_PN_CHARS = _PN_CHARS_U + r"\-0-9\u00B7\u0300-\u036F\u203F-\u2040"
_PLX = r"%[0-9A-Fa-f]{2}|\\[_~.\-!$&'()*+,;=/?#@%]"
_PN_PREFIX = rf"[{_PN_CHARS_BASE}](?:[{_PN_CHARS}.]*[{_PN_CHARS}])?"
_PN_LOCAL = rf"(?:[{_PN_CHARS_U}:0-9]|{_PLX})(?:(?:[{_PN_CHARS}.:]|{_PLX})*(?:[{_PN_CHARS}:]|{_PLX}))?"
_BNODE = rf"_:[{_PN_CHARS_U}0-9](?:[{_PN_CHARS}.]*[{_PN_CHARS}])?"

_TOKEN_RE = re.compile(
    rf"""
     (?P<ws>[ \t\r\n]+|\#[^\n]*)
    |(?P<unsupported><<|>>|\{{|\}}|\|)
    |(?P<iri><(?:[^<>"{{}}|^`\\\x00-\x20]|\\u[0-9A-Fa-f]{{4}}|\\U[0-9A-Fa-f]{{8}})*>)
    |(?P<lstr>\"\"\"(?:(?:"|"")?(?:[^"\\]|\\.))*\"\"\"|'''(?:(?:'|'')?(?:[^'\\]|\\.))*''')
    |(?P<str>"(?:[^"\\\n\r]|\\.)*"|'(?:[^'\\\n\r]|\\.)*')
    |(?P<directive>@prefix(?![A-Za-z0-9-])|@base(?![A-Za-z0-9-]))
    |(?P<lang>@[a-zA-Z]+(?:-[a-zA-Z0-9]+)*)
    |(?P<dt>\^\^)
    |(?P<bnode>{_BNODE})
    |(?P<pname>(?:{_PN_PREFIX})?:(?:{_PN_LOCAL})?)
    |(?P<num>[+-]?(?:[0-9]+\.[0-9]*[eE][+-]?[0-9]+|\.[0-9]+[eE][+-]?[0-9]+|[0-9]+[eE][+-]?[0-9]+|[0-9]*\.[0-9]+|[0-9]+))
    |(?P<word>[A-Za-z][A-Za-z0-9_]*)
    |(?P<punct>[.;,\[\]()])
    """,
    re.VERBOSE,
)

_STRING_ESCAPES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
_ESCAPE_RE = re.compile(r"\\(?:u([0-9A-Fa-f]{4})|U([0-9A-Fa-f]{8})|(.))", re.DOTALL)
_LOCAL_ESCAPE_RE = re.compile(r"\\([_~.\-!$&'()*+,;=/?#@%])")

XSD_INTEGER = XSD_NS + "integer"
XSD_DECIMAL = XSD_NS + "decimal"
XSD_DOUBLE = XSD_NS + "double"
XSD_BOOLEAN = XSD_NS + "boolean"


def _unescape_iri(text: str) -> str:
    def repl(m: re.Match) -> str:
        code = m.group(1) or m.group(2)
        if code is None:
            raise ValueError(f"invalid IRI escape \\{m.group(3)}")
        return chr(int(code, 16))

    return _ESCAPE_RE.sub(repl, text) if "\\" in text else text


def _unescape_string(text: str) -> str:
    def repl(m: re.Match) -> str:
        code = m.group(1) or m.group(2)
        if code is not None:
            return chr(int(code, 16))
        ch = m.group(3)
        if ch not in _STRING_ESCAPES:
            raise ValueError(f"invalid string escape \\{ch}")
        return _STRING_ESCAPES[ch]

    return _ESCAPE_RE.sub(repl, text) if "\\" in text else text


def tokenize(text: str, source: str = "<string>") -> tuple[list[str], list[str], list[int]]:
    """Split ``text`` into parallel (kind, text, offset) lists, skipping whitespace."""
    kinds: list[str] = []
    values: list[str] = []
    offsets: list[int] = []
    pos = 0
    end = len(text)
    match = _TOKEN_RE.match
    while pos < end:
        m = match(text, pos)
        if m is None:
            line, col = _line_col(text, pos)
            ch = text[pos]
            if ch in "\"'":
                raise TurtleSyntaxError("unterminated string literal", line, col, text[pos:pos + 20], source)
            if ch == "<":
                raise TurtleSyntaxError("unterminated or invalid IRI", line, col, text[pos:pos + 20], source)
            raise TurtleSyntaxError("unexpected character", line, col, ch, source)
        kind = m.lastgroup
        if kind != "ws":
            if kind == "unsupported":
                line, col = _line_col(text, pos)
                raise TurtleSyntaxError(
                    "unsupported Turtle feature (quoted triples, annotations and graph blocks are not accepted)",
                    line, col, m.group(), source,
                )
            kinds.append(kind)
            values.append(m.group())
            offsets.append(pos)
        pos = m.end()
    return kinds, values, offsets


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text: str, base: Optional[str], source: str, bnode_prefix: str):
        self.text = text
        self.source = source
        self.base = base
        self.bnode_prefix = bnode_prefix
        self.kinds, self.values, self.offsets = tokenize(text, source)
        self.kinds.append("eof")
        self.values.append("")
        self.offsets.append(len(text))
        self.i = 0
        self.prefixes: dict[str, str] = {}
        self.bnode_labels: dict[str, Term] = {}
        self.bnode_count = 0
        self.builder = GraphBuilder()
        self._newlines = [m.start() for m in re.finditer("\n", text)]
        self._locations: dict[int, Location] = {}

    # -- helpers ---------------------------------------------------------

    def error(self, message: str, index: Optional[int] = None) -> TurtleSyntaxError:
        idx = self.i if index is None else index
        line, col = _line_col(self.text, self.offsets[idx])
        token = self.values[idx] if self.kinds[idx] != "eof" else "end of input"
        return TurtleSyntaxError(message, line, col, token, self.source)

    def location(self, index: int) -> Location:
        line = bisect_right(self._newlines, self.offsets[index]) + 1
        loc = self._locations.get(line)
        if loc is None:
            loc = self._locations[line] = Location(self.source, line)
        return loc

    def fresh_bnode(self) -> Term:
        self.bnode_count += 1
        return Term(BLANK_KIND, f"{self.bnode_prefix}{self.bnode_count}")

    def expect_punct(self, ch: str) -> None:
        if self.kinds[self.i] == "punct" and self.values[self.i] == ch:
            self.i += 1
            return
        raise self.error(f"expected '{ch}'")

    def resolve(self, iri: str) -> str:
        if re.match(r"[A-Za-z][A-Za-z0-9+.\-]*:", iri):
            return iri
        if self.base is None:
            raise self.error("relative IRI with no base IRI in scope")
        return urljoin(self.base, iri)

    def iri_term(self, index: int) -> Term:
        kind = self.kinds[index]
        val = self.values[index]
        try:
            if kind == "iri":
                return IRI(self.resolve(_unescape_iri(val[1:-1])))
            prefix, _, local = val.partition(":")
            ns = self.prefixes.get(prefix)
            if ns is None:
                raise self.error(f"undefined prefix '{prefix}:'", index)
            if "\\" in local:
                local = _LOCAL_ESCAPE_RE.sub(r"\1", local)
            return IRI(ns + local)
        except (ValueError, TermError) as exc:
            if isinstance(exc, TurtleSyntaxError):
                raise
            raise self.error(str(exc), index) from None

    # -- grammar ---------------------------------------------------------

    def parse(self) -> Graph:
        kinds = self.kinds
        values = self.values
        while kinds[self.i] != "eof":
            kind = kinds[self.i]
            if kind == "directive":
                self.directive(values[self.i] == "@prefix", sparql=False)
            elif kind == "word" and values[self.i].upper() in ("PREFIX", "BASE"):
                self.directive(values[self.i].upper() == "PREFIX", sparql=True)
            else:
                self.triples()
                self.expect_punct(".")
        for prefix, ns in self.prefixes.items():
            self.builder.bind(prefix, ns)
        return self.builder.build()

    def directive(self, is_prefix: bool, sparql: bool) -> None:
        self.i += 1
        if is_prefix:
            if self.kinds[self.i] != "pname" or not self.values[self.i].endswith(":"):
                raise self.error("expected a prefix name ending in ':'")
            prefix = self.values[self.i][:-1]
            self.i += 1
            if self.kinds[self.i] != "iri":
                raise self.error("expected an IRI after prefix name")
            self.prefixes[prefix] = self.iri_term(self.i).value
        else:
            if self.kinds[self.i] != "iri":
                raise self.error("expected an IRI after base directive")
            self.base = self.iri_term(self.i).value
        self.i += 1
        if not sparql:
            self.expect_punct(".")

    def triples(self) -> None:
        kind = self.kinds[self.i]
        if kind == "punct" and self.values[self.i] == "[":
            subject = self.blank_property_list()
            if not (self.kinds[self.i] == "punct" and self.values[self.i] == "."):
                self.predicate_object_list(subject)
            return
        subject = self.subject()
        self.predicate_object_list(subject)

    def subject(self) -> Term:
        kind = self.kinds[self.i]
        if kind == "iri" or kind == "pname":
            term = self.iri_term(self.i)
            self.i += 1
            return term
        if kind == "bnode":
            term = self.labelled_bnode(self.values[self.i])
            self.i += 1
            return term
        if kind == "punct" and self.values[self.i] == "(":
            return self.collection()
        if kind in ("str", "lstr", "num") or (kind == "word" and self.values[self.i] in ("true", "false")):
            raise self.error("a literal cannot be used as a subject")
        raise self.error("expected a subject")

    def labelled_bnode(self, label: str) -> Term:
        term = self.bnode_labels.get(label)
        if term is None:
            term = self.bnode_labels[label] = self.fresh_bnode()
        return term

    def predicate_object_list(self, subject: Term) -> None:
        kinds = self.kinds
        values = self.values
        while True:
            pred_index = self.i
            kind = kinds[pred_index]
            if kind == "word" and values[pred_index] == "a":
                predicate = RDF_TYPE
            elif kind == "iri" or kind == "pname":
                predicate = self.iri_term(pred_index)
            else:
                raise self.error("expected a predicate")
            self.i += 1
            loc = self.location(pred_index)
            add = self.builder.add
            while True:
                obj = self.object()
                add(subject, predicate, obj, loc)
                if kinds[self.i] == "punct" and values[self.i] == ",":
                    self.i += 1
                    continue
                break
            # one or more ';' may separate (or trail) predicate-object pairs
            if not (kinds[self.i] == "punct" and values[self.i] == ";"):
                return
            while kinds[self.i] == "punct" and values[self.i] == ";":
                self.i += 1
            kind = kinds[self.i]
            if not (kind == "iri" or kind == "pname" or (kind == "word" and values[self.i] == "a")):
                return

    def object(self) -> Term:
        i = self.i
        kind = self.kinds[i]
        val = self.values[i]
        if kind == "pname" or kind == "iri":
            self.i += 1
            return self.iri_term(i)
        if kind == "bnode":
            self.i += 1
            return self.labelled_bnode(val)
        if kind == "str" or kind == "lstr":
            return self.literal()
        if kind == "num":
            self.i += 1
            if "e" in val or "E" in val:
                return Literal(val, XSD_DOUBLE)
            if "." in val:
                return Literal(val, XSD_DECIMAL)
            return Literal(val, XSD_INTEGER)
        if kind == "word":
            if val in ("true", "false"):
                self.i += 1
                return Literal(val, XSD_BOOLEAN)
            raise self.error("unexpected keyword in object position")
        if kind == "punct":
            if val == "[":
                return self.blank_property_list()
            if val == "(":
                return self.collection()
        raise self.error("expected an object")

    def literal(self) -> Term:
        i = self.i
        raw = self.values[i]
        body = raw[3:-3] if self.kinds[i] == "lstr" else raw[1:-1]
        try:
            lexical = _unescape_string(body)
        except ValueError as exc:
            raise self.error(str(exc), i) from None
        self.i += 1
        kind = self.kinds[self.i]
        if kind == "lang":
            lang = self.values[self.i][1:]
            self.i += 1
            return Literal(lexical, lang=lang)
        if kind == "dt":
            self.i += 1
            if self.kinds[self.i] not in ("iri", "pname"):
                raise self.error("expected a datatype IRI after '^^'")
            datatype = self.iri_term(self.i)
            self.i += 1
            try:
                return Literal(lexical, datatype.value)
            except TermError as exc:
                raise self.error(str(exc), self.i - 1) from None
        return Literal(lexical)

    def blank_property_list(self) -> Term:
        self.expect_punct("[")
        node = self.fresh_bnode()
        if self.kinds[self.i] == "punct" and self.values[self.i] == "]":
            self.i += 1
            return node
        self.predicate_object_list(node)
        self.expect_punct("]")
        return node

    def collection(self) -> Term:
        open_index = self.i
        self.expect_punct("(")
        items: list[Term] = []
        while not (self.kinds[self.i] == "punct" and self.values[self.i] == ")"):
            if self.kinds[self.i] == "eof":
                raise self.error("unterminated collection", open_index)
            items.append(self.object())
        self.i += 1
        if not items:
            return RDF_NIL
        loc = self.location(open_index)
        head = node = self.fresh_bnode()
        for pos, item in enumerate(items):
            self.builder.add(node, RDF_FIRST, item, loc)
            nxt = self.fresh_bnode() if pos + 1 < len(items) else RDF_NIL
            self.builder.add(node, RDF_REST, nxt, loc)
            node = nxt
        return head


def parse_turtle(
    text: str,
    base: Optional[str] = None,
    source: str = "<string>",
    bnode_prefix: str = "b",
) -> Graph:
    """Parse a Turtle document into an immutable :class:`Graph`.

    Blank node labels are replaced by ``bnode_prefix`` followed by a counter,
    so graphs parsed with distinct prefixes can be merged without accidental
    co-reference. Triple locations record ``source`` and the predicate's line.

    Raises :class:`TurtleSyntaxError` with line and column on any error.
    """
    if text.startswith("\ufeff"):
        text = text[1:]
    return _Parser(text, base, source, bnode_prefix).parse()


def parse_file(path, base: Optional[str] = None, bnode_prefix: str = "b") -> Graph:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_turtle(text, base=base, source=str(path), bnode_prefix=bnode_prefix)


__all__ = ["TurtleSyntaxError", "parse_turtle", "parse_file", "tokenize", "LITERAL_KIND"]
