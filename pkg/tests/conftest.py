from __future__ import annotations

from pathlib import Path

import pytest

from gufo_check.inference import compute_closures
from gufo_check.rules import run_rules
from gufo_check.turtle import parse_turtle
from gufo_check.violations import RuleConfig
from gufo_check.vocabulary import builtin_vocabulary

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = FIXTURES / "corpus"
RULES = FIXTURES / "rules"

PREFIXES = """\
@prefix : <http://example.org/> .
@prefix gufo: <http://purl.org/nemo/gufo#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix time: <http://www.w3.org/2006/time#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
"""


def ttl(body: str, **kw):
    return parse_turtle(PREFIXES + body, **kw)


def check(graph, enable=None, direct=False, infer_domains=False, severity=None):
    v = builtin_vocabulary()
    c = compute_closures(graph, v, infer_domains=infer_domains)
    cfg = RuleConfig(
        frozenset(enable) if enable else None,
        dict(severity or {}),
        direct,
    )
    return run_rules(graph, v, c, cfg)


def findings(body: str, rule: str | None = None, **kw):
    found = check(ttl(body), **kw)
    return [x for x in found if rule is None or x.rule_id == rule]


def corpus_files() -> list[Path]:
    return sorted(CORPUS.glob("*.ttl"))


def corpus_listing(label: str) -> Path:
    (path,) = [p for p in corpus_files() if p.stem.split("-", 1)[1] == label]
    return path


@pytest.fixture(scope="session")
def corpus_paths() -> list[Path]:
    return corpus_files()


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance criterion lines recorded via ``record_property``."""
    lines = []
    for outcome in ("passed", "failed", "skipped"):
        for rep in terminalreporter.stats.get(outcome, ()):
            for name, value in getattr(rep, "user_properties", ()):
                if name == "criterion" and getattr(rep, "when", "call") in ("call", "setup"):
                    lines.append(value)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(set(lines), key=lambda s: (int(s.split()[1].rstrip(":")), s)):
            terminalreporter.write_line(line)
