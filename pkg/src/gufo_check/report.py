"""Validation reports: JSON and human-readable renderings.

Terms appear in JSON as N-Triples strings, so a report can be parsed back
into an equal :class:`Report` (see :meth:`Report.from_json`).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Optional

from .graph import Location
from .terms import BNode, IRI, Literal, Term, compact, to_ntriples
from .turtle import _unescape_iri, _unescape_string
from .violations import ERROR, INFO, SEVERITIES, WARNING, Violation

_NT_TERM = re.compile(
    r'<(?P<iri>[^>]*)>'
    r'|_:(?P<bnode>\S+)'
    r'|"(?P<lex>(?:[^"\\]|\\.)*)"(?:@(?P<lang>[A-Za-z0-9-]+)|\^\^<(?P<dt>[^>]*)>)?'
)


def term_from_ntriples(text: str) -> Term:
    """Inverse of :func:`to_ntriples` for a single term."""
    m = _NT_TERM.fullmatch(text)
    if not m:
        raise ValueError(f"not an N-Triples term: {text!r}")
    if m.group("iri") is not None:
        return IRI(_unescape_iri(m.group("iri")))
    if m.group("bnode") is not None:
        return BNode(m.group("bnode"))
    lex = _unescape_string(m.group("lex"))
    dt = m.group("dt")
    return Literal(lex, _unescape_iri(dt) if dt else None, m.group("lang"))


@dataclass(frozen=True)
class FileSummary:
    path: str
    triples: int


@dataclass(frozen=True)
class Report:
    version: str
    files: tuple = ()
    violations: tuple = ()
    stats: Optional[dict] = None
    counts: dict = field(default_factory=dict)
    # used for compact names in human output; not part of the JSON form
    prefixes: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.violations, key=Violation.sort_key))
        object.__setattr__(self, "violations", ordered)
        counts = {sev: 0 for sev in SEVERITIES}
        for v in ordered:
            counts[v.severity] += 1
        object.__setattr__(self, "counts", counts)

    def worst(self) -> Optional[str]:
        for sev in SEVERITIES:
            if self.counts[sev]:
                return sev
        return None

    def to_dict(self) -> dict:
        out = {
            "version": self.version,
            "files": [{"path": f.path, "triples": f.triples} for f in self.files],
            "violations": [_violation_dict(v) for v in self.violations],
            "counts": {sev: self.counts[sev] for sev in SEVERITIES},
        }
        if self.stats is not None:
            out["stats"] = self.stats
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        violations = []
        for item in data["violations"]:
            loc = Location(item["file"], item["line"]) if item.get("file") is not None else None
            violations.append(Violation(
                item["rule"],
                item["severity"],
                term_from_ntriples(item["focus"]),
                item["message"],
                tuple(term_from_ntriples(t) for t in item["secondary"]),
                loc,
            ))
        files = tuple(FileSummary(f["path"], f["triples"]) for f in data["files"])
        return cls(data["version"], files, tuple(violations), data.get("stats"))

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))


def _violation_dict(v: Violation) -> dict:
    return {
        "rule": v.rule_id,
        "severity": v.severity,
        "focus": to_ntriples(v.focus),
        "secondary": [to_ntriples(t) for t in v.secondary],
        "message": v.message,
        "file": v.location.file if v.location else None,
        "line": v.location.line if v.location else None,
    }


def emit_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n"


def emit_text(report: Report, prefixes: Optional[dict] = None) -> str:
    if prefixes is None:
        prefixes = report.prefixes
    lines = []
    for v in report.violations:
        where = f"{v.location}: " if v.location else ""
        line = f"{where}{v.severity} {v.rule_id} {compact(v.focus, prefixes)}: {v.message}"
        if v.secondary:
            line += " [" + ", ".join(compact(t, prefixes) for t in v.secondary) + "]"
        lines.append(line)
    c = report.counts
    total = sum(f.triples for f in report.files)
    lines.append(
        f"{len(report.files)} file(s), {total} triple(s): "
        f"{c[ERROR]} error(s), {c[WARNING]} warning(s), {c[INFO]} info note(s)"
    )
    if report.stats:
        for key in sorted(report.stats):
            value = report.stats[key]
            if isinstance(value, dict):
                value = ", ".join(f"{k}={value[k]}" for k in sorted(value))
            lines.append(f"  {key}: {value}")
    return "\n".join(lines) + "\n"
