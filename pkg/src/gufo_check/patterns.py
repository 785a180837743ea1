"""Advisory lints for the reification patterns (L1-L6).

These look at instance data rather than the typology of types: how many
bearers an aspect has, how many individuals a relator mediates, whether
temporal boundaries are ordered, whether quality-value situations are
complete, whether gUFO properties are used within their domains and ranges,
and whether historical dependence loops back on itself.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from datetime import date, datetime, timedelta, timezone
from typing import Optional, Union

from .graph import Graph
from .inference import ClosureSet, reachability
from .rules import disjoint_partners
from .terms import GUFO, TIME, Term, compact, term_key
from .violations import ERROR, INFO, WARNING, Context, make, register
from .vocabulary import Vocabulary

DATE = "date"
DATE_TIME_STAMP = "dateTimeStamp"

_DATE_RE = re.compile(r"(-?\d{4,})-(\d{2})-(\d{2})(Z|[+-]\d{2}:\d{2})?")
_STAMP_RE = re.compile(
    r"(-?\d{4,})-(\d{2})-(\d{2})T(\d{2}):(\d{2}):(\d{2})(?:\.(\d+))?(Z|[+-]\d{2}:\d{2})"
)


class TemporalParseError(ValueError):
    pass


@dataclass(frozen=True)
class TemporalValue:
    """A calendar date or a UTC instant. Only same-kind values are comparable."""

    kind: str
    value: Union[date, datetime]

    def __lt__(self, other: "TemporalValue") -> bool:
        if self.kind != other.kind:
            raise TypeError(f"cannot order {self.kind} against {other.kind}")
        return self.value < other.value


def _offset(tz: str) -> timezone:
    if tz == "Z":
        return timezone.utc
    sign = -1 if tz[0] == "-" else 1
    hours, minutes = int(tz[1:3]), int(tz[4:6])
    if hours > 14 or minutes > 59 or (hours == 14 and minutes):
        raise TemporalParseError(f"timezone offset out of range: {tz}")
    return timezone(sign * timedelta(hours=hours, minutes=minutes))


def parse_date(lexical: str) -> TemporalValue:
    """xsd:date; an optional timezone is accepted and ignored for ordering."""
    m = _DATE_RE.fullmatch(lexical.strip())
    if not m:
        raise TemporalParseError(f"not an xsd:date: {lexical!r}")
    if m.group(4):
        _offset(m.group(4))
    try:
        return TemporalValue(DATE, date(int(m.group(1)), int(m.group(2)), int(m.group(3))))
    except ValueError as exc:
        raise TemporalParseError(f"not an xsd:date: {lexical!r} ({exc})") from None


def parse_date_time_stamp(lexical: str) -> TemporalValue:
    """xsd:dateTimeStamp, normalized to UTC. The timezone is mandatory."""
    m = _STAMP_RE.fullmatch(lexical.strip())
    if not m:
        raise TemporalParseError(f"not an xsd:dateTimeStamp: {lexical!r}")
    year, month, day, hour, minute, second = (int(m.group(i)) for i in range(1, 7))
    micro = int((m.group(7) or "0")[:6].ljust(6, "0"))
    end_of_day = hour == 24
    if end_of_day:
        if minute or second or micro:
            raise TemporalParseError(f"not an xsd:dateTimeStamp: {lexical!r}")
        hour = 0
    try:
        value = datetime(year, month, day, hour, minute, second, micro, tzinfo=_offset(m.group(8)))
    except ValueError as exc:
        raise TemporalParseError(f"not an xsd:dateTimeStamp: {lexical!r} ({exc})") from None
    if end_of_day:
        value += timedelta(days=1)
    return TemporalValue(DATE_TIME_STAMP, value.astimezone(timezone.utc))


_PARSERS = {DATE: parse_date, DATE_TIME_STAMP: parse_date_time_stamp}

_LITERAL_FORMS = (
    (GUFO.hasBeginPointInXSDDate, "begin", DATE),
    (GUFO.hasBeginPointInXSDDateTimeStamp, "begin", DATE_TIME_STAMP),
    (GUFO.hasEndPointInXSDDate, "end", DATE),
    (GUFO.hasEndPointInXSDDateTimeStamp, "end", DATE_TIME_STAMP),
)
_INSTANT_FORMS = ((GUFO.hasBeginPoint, "begin"), (GUFO.hasEndPoint, "end"))
_INSTANT_VALUES = ((TIME.inXSDDate, DATE), (TIME.inXSDDateTimeStamp, DATE_TIME_STAMP))


def _q(term: Term, ctx: Context) -> str:
    return compact(term, ctx.prefixes)


def _sorted(terms) -> list[Term]:
    return sorted(terms, key=term_key)


def _group_objects(pairs) -> dict:
    out: dict = {}
    for s, o in pairs:
        out.setdefault(s, set()).add(o)
    return out


@register("L1", "aspect inheres in more than one bearer", kind="lint")
def l1_inherence_cardinality(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    out = []
    for aspect, bearers in _group_objects(c.effective(GUFO.inheresIn)).items():
        if len(bearers) > 1:
            names = ", ".join(_q(b, ctx) for b in _sorted(bearers))
            msg = f"Aspect inheres in {len(bearers)} distinct bearers ({names}); an aspect has exactly one."
            out.append(make(ctx, "L1", aspect, msg, _sorted(bearers), graph.subject_location(aspect)))
    return out


@register("L2", "relator mediates fewer than two individuals", severity=WARNING, kind="lint")
def l2_relator_arity(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    mediated = _group_objects(c.effective(GUFO.mediates))
    out = []
    for relator in c.instances_of(GUFO.Relator):
        targets = mediated.get(relator, set())
        if len(targets) < 2:
            msg = f"Relator mediates {len(targets)} individual(s); a relator connects at least two."
            out.append(make(ctx, "L2", relator, msg, _sorted(targets), graph.subject_location(relator)))
    return out


def temporal_boundaries(graph: Graph, c: ClosureSet) -> dict:
    """node -> list of (side, kind, literal) for literal and time:Instant forms."""
    found: dict = {}
    for prop, side, kind in _LITERAL_FORMS:
        for node, lit in c.effective(prop):
            if lit.is_literal:
                found.setdefault(node, []).append((side, kind, lit))
    for prop, side in _INSTANT_FORMS:
        for node, instant in c.effective(prop):
            for value_prop, kind in _INSTANT_VALUES:
                for lit in graph.objects(instant, value_prop):
                    if lit.is_literal:
                        found.setdefault(node, []).append((side, kind, lit))
    return found


@register("L3", "end point precedes begin point", kind="lint")
def l3_temporal_ordering(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    out = []
    for node, entries in temporal_boundaries(graph, c).items():
        where = graph.subject_location(node)
        values: dict = {"begin": {}, "end": {}}
        for side, kind, lit in sorted(entries, key=lambda e: (e[0], e[1], term_key(e[2]))):
            try:
                tv = _PARSERS[kind](lit.value)
            except TemporalParseError as exc:
                out.append(make(ctx, "L3", node, f"Unparseable temporal literal: {exc}.", (lit,), where))
                continue
            values[side].setdefault(kind, []).append((tv, lit))
        begins, ends = values["begin"], values["end"]
        for kind in sorted(set(begins) & set(ends)):
            latest_begin = max(begins[kind], key=lambda e: e[0].value)
            earliest_end = min(ends[kind], key=lambda e: e[0].value)
            if latest_begin[0].value > earliest_end[0].value:
                msg = (f"Begin point {latest_begin[1].value} is after end point "
                       f"{earliest_end[1].value} ({kind}).")
                out.append(make(ctx, "L3", node, msg, (latest_begin[1], earliest_end[1]), where))
        if begins and ends and set(begins) != set(ends):
            msg = (f"Begin ({', '.join(sorted(begins))}) and end ({', '.join(sorted(ends))}) "
                   "points use different granularities; not compared.")
            out.append(make(ctx, "L3", node, msg, (), where, severity=INFO))
    return out


@register("L4", "incomplete quality value attribution situation", severity=WARNING, kind="lint")
def l4_situation_completeness(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    quality_types = _group_objects(c.effective(GUFO.concernsQualityType))
    with_value = {s for s, _ in c.effective(GUFO.concernsQualityValue)}
    with_value |= {s for s, _ in c.effective(GUFO.hasReifiedQualityValue)}
    out = []
    for sit in c.instances_of(GUFO.QualityValueAttributionSituation):
        where = graph.subject_location(sit)
        if sit not in quality_types:
            out.append(make(ctx, "L4", sit, "Quality value attribution situation has no gufo:concernsQualityType.",
                            (), where))
        if sit not in with_value:
            out.append(make(ctx, "L4", sit, "Quality value attribution situation has no quality value.",
                            (), where))
    for sit, targets in quality_types.items():
        for qt in _sorted(targets):
            if qt != GUFO.Quality and not c.is_subclass(qt, GUFO.Quality):
                msg = f"gufo:concernsQualityType points at {_q(qt, ctx)}, which does not specialize gufo:Quality."
                out.append(make(ctx, "L4", sit, msg, (qt,), graph.subject_location(sit), severity=ERROR))
    return out


@register("L5", "gUFO property used outside its domain or range", kind="lint")
def l5_domain_range_conformance(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    partners = disjoint_partners(graph, v)
    upsets: dict = {}

    def upset(cls: Term) -> frozenset:
        u = upsets.get(cls)
        if u is None:
            u = upsets[cls] = c.superclasses(cls) | {cls}
        return u

    def clash(types: frozenset, expected: Term) -> Optional[Term]:
        allowed = upset(expected)
        for t in _sorted(types):
            others = partners.get(t)
            if others and not others.isdisjoint(allowed):
                return t
        return None

    errors: dict = {}
    untyped: dict = {}
    for prop in _sorted(v.domain_range):
        dom, rng = v.domain_range[prop]
        for s, o in sorted(c.effective(prop), key=lambda p: (term_key(p[0]), term_key(p[1]))):
            for node, expected, role in ((s, dom, "domain"), (o, rng, "range")):
                if expected is None or node.is_literal:
                    continue
                key = (node, expected)
                types = c.types(node)
                if not types:
                    untyped.setdefault(key, (prop, role))
                    continue
                if key in errors:
                    continue
                bad = clash(types, expected)
                if bad is not None:
                    errors[key] = (prop, role, bad)
    out = []
    for (node, expected), (prop, role, bad) in errors.items():
        msg = (f"{_q(node, ctx)} is in the {role} of {_q(prop, ctx)} ({_q(expected, ctx)}) "
               f"but is typed {_q(bad, ctx)}, which is disjoint with it.")
        out.append(make(ctx, "L5", node, msg, (prop, expected, bad), graph.subject_location(node)))
    for (node, expected), (prop, role) in untyped.items():
        msg = f"{_q(node, ctx)} is untyped; as {role} of {_q(prop, ctx)} it would be a {_q(expected, ctx)}."
        out.append(make(ctx, "L5", node, msg, (prop, expected), graph.subject_location(node), severity=INFO))
    return out


def _witness(start: Term, succ: dict, members: frozenset) -> list[Term]:
    """Shortest cycle from ``start`` back to itself inside one component."""
    parent: dict = {}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for nxt in _sorted(succ.get(node, ())):
            if nxt not in members:
                continue
            if nxt == start:
                chain = [node]
                while chain[-1] != start:
                    chain.append(parent[chain[-1]])
                return chain[::-1] + [start]
            if nxt not in parent:
                parent[nxt] = node
                queue.append(nxt)
    return [start]


@register("L6", "cyclic historical dependence", severity=WARNING, kind="lint")
def l6_dependence_cycles(graph: Graph, v: Vocabulary, c: ClosureSet, ctx: Context):
    pairs = sorted(c.effective(GUFO.historicallyDependsOn), key=lambda p: (term_key(p[0]), term_key(p[1])))
    if not pairs:
        return []
    _, cycles = reachability(pairs)
    succ = _group_objects(pairs)
    out = []
    for members in cycles:
        start = members[0]
        path = _witness(start, succ, frozenset(members))
        msg = "Historical dependence cycle: " + " -> ".join(_q(t, ctx) for t in path) + "."
        out.append(make(ctx, "L6", start, msg, members[1:], graph.subject_location(start)))
    return out
