"""Findings, the check registry and rule configuration."""

from __future__ import annotations

import re
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph, Location
from .terms import Term, term_key

ERROR = "error"
WARNING = "warning"
INFO = "info"
SEVERITIES = (ERROR, WARNING, INFO)
SEVERITY_RANK = {ERROR: 2, WARNING: 1, INFO: 0}


@dataclass(frozen=True)
class Violation:
    rule_id: str
    severity: str
    focus: Term
    message: str
    secondary: tuple = ()
    location: Optional[Location] = None

    def sort_key(self) -> tuple:
        return (
            -SEVERITY_RANK[self.severity],
            rule_sort_key(self.rule_id),
            term_key(self.focus),
            tuple(term_key(t) for t in self.secondary),
            self.message,
        )


def rule_sort_key(rule_id: str) -> tuple:
    m = re.fullmatch(r"([A-Za-z]+)(\d+)", rule_id)
    if m:
        return (m.group(1), int(m.group(2)))
    return (rule_id, 0)


@dataclass(frozen=True)
class Check:
    rule_id: str
    name: str
    severity: str
    func: Callable
    kind: str  # "rule" | "lint" | "structural"


REGISTRY: dict[str, Check] = {}


def register(rule_id: str, name: str, severity: str = ERROR, kind: str = "rule"):
    """Decorator adding a check ``func(graph, v, c, ctx) -> iterable of Violation``."""

    def wrap(func: Callable) -> Callable:
        REGISTRY[rule_id] = Check(rule_id, name, severity, func, kind)
        return func

    return wrap


class ConfigError(ValueError):
    """Unknown rule id or severity in a configuration."""


@dataclass(frozen=True)
class RuleConfig:
    enabled: Optional[frozenset] = None  # None means every registered check
    severity_overrides: dict = field(default_factory=dict)
    direct_subclass_only: bool = False

    def __post_init__(self) -> None:
        known = set(registered_ids())
        for rid in self.enabled or ():
            if rid not in known:
                raise ConfigError(f"unknown rule id {rid!r}")
        for rid, sev in self.severity_overrides.items():
            if rid not in known:
                raise ConfigError(f"unknown rule id {rid!r}")
            if sev not in SEVERITIES:
                raise ConfigError(f"unknown severity {sev!r} for {rid}")

    def is_enabled(self, rule_id: str) -> bool:
        return self.enabled is None or rule_id in self.enabled

    def severity(self, rule_id: str, default: str) -> str:
        return self.severity_overrides.get(rule_id, default)


def registered_ids() -> list[str]:
    _load_checks()
    return sorted(REGISTRY, key=rule_sort_key)


def _load_checks() -> None:
    # importing the modules populates REGISTRY
    from . import patterns, rules  # noqa: F401


@dataclass
class Context:
    """Per-run state handed to every check."""

    cfg: RuleConfig
    prefixes: dict

    @property
    def direct(self) -> bool:
        return self.cfg.direct_subclass_only


def make(
    ctx: Context,
    rule_id: str,
    focus: Term,
    message: str,
    secondary: Iterable[Term] = (),
    location: Optional[Location] = None,
    severity: Optional[str] = None,
) -> Violation:
    """Build a violation, honouring any severity override for ``rule_id``."""
    check = REGISTRY[rule_id]
    default = severity or check.severity
    if rule_id in ctx.cfg.severity_overrides:
        default = ctx.cfg.severity_overrides[rule_id]
    return Violation(rule_id, default, focus, message, tuple(secondary), location)


def edge_location(graph: Graph, s: Term, p: Term, o: Term) -> Optional[Location]:
    return graph.location((s, p, o)) or graph.subject_location(s)


def run_checks(graph: Graph, v, c, cfg: RuleConfig, prefixes: Optional[dict] = None) -> list[Violation]:
    """Run every enabled check; the result is sorted and duplicate-free."""
    _load_checks()
    ctx = Context(cfg, dict(prefixes if prefixes is not None else graph.prefixes))
    found: set[Violation] = set()
    for rule_id in sorted(REGISTRY, key=rule_sort_key):
        if cfg.is_enabled(rule_id):
            found.update(REGISTRY[rule_id].func(graph, v, c, ctx))
    return sorted(found, key=lambda x: (rule_sort_key(x.rule_id), term_key(x.focus), x.sort_key()))
