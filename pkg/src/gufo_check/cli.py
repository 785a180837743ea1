"""Command-line front end.

Exit codes: 0 when nothing reaches the ``--fail-on`` threshold, 1 when
something does, 2 on usage errors, unreadable files or Turtle syntax errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, TextIO

from . import __version__
from .graph import Graph
from .inference import ClosureSet, compute_closures
from .report import FileSummary, Report, emit_json, emit_text
from .rules import class_like, run_rules, typology
from .terms import GUFO
from .turtle import TurtleSyntaxError, parse_file
from .violations import SEVERITIES, ConfigError, RuleConfig, registered_ids
from .vocabulary import Vocabulary, builtin_vocabulary, merge_external, ontology_counts

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2

_FAIL_LEVELS = {"error": ("error",), "warning": ("error", "warning"), "never": ()}
_STAT_METATYPES = ("Kind", "SubKind", "Phase", "Role", "Category", "PhaseMixin", "RoleMixin", "Mixin")


@dataclass
class RunConfig:
    paths: list
    gufo_path: Optional[str] = None
    format: str = "human"
    fail_on: str = "error"
    enable: list = field(default_factory=list)
    disable: list = field(default_factory=list)
    severity: dict = field(default_factory=dict)
    direct_subclass_only: bool = False
    infer_domains: bool = False
    stats: bool = False
    base: Optional[str] = None

    def rule_config(self) -> RuleConfig:
        known = registered_ids()
        for rid in list(self.enable) + list(self.disable):
            if rid not in known:
                raise ConfigError(f"unknown rule id {rid!r}")
        enabled = set(self.enable) if self.enable else set(known)
        enabled -= set(self.disable)
        return RuleConfig(frozenset(enabled), dict(self.severity), self.direct_subclass_only)


class RunError(Exception):
    """A failure that maps to exit code 2."""


def load_graphs(paths, base: Optional[str] = None) -> tuple[Graph, list[FileSummary]]:
    """Parse every file; blank nodes get a per-file prefix so they never merge."""
    graphs = []
    summaries = []
    for i, path in enumerate(paths, start=1):
        file_base = base if base is not None else Path(path).resolve().as_uri()
        try:
            g = parse_file(path, base=file_base, bnode_prefix=f"f{i}b")
        except OSError as exc:
            raise RunError(f"cannot read {path}: {exc.strerror or exc}") from None
        except UnicodeDecodeError as exc:
            raise RunError(f"cannot read {path}: {exc}") from None
        except TurtleSyntaxError as exc:
            raise RunError(str(exc)) from None
        graphs.append(g)
        summaries.append(FileSummary(str(path), len(g)))
    graph = graphs[0] if len(graphs) == 1 else Graph.union(*graphs)
    return graph, summaries


def load_vocabulary(gufo_path: Optional[str]) -> tuple[Vocabulary, Optional[dict]]:
    v = builtin_vocabulary()
    if gufo_path is None:
        return v, None
    try:
        official = parse_file(gufo_path, base=Path(gufo_path).resolve().as_uri(), bnode_prefix="g")
    except OSError as exc:
        raise RunError(f"cannot read {gufo_path}: {exc.strerror or exc}") from None
    except TurtleSyntaxError as exc:
        raise RunError(str(exc)) from None
    return merge_external(v, official), ontology_counts(official)


def graph_stats(graph: Graph, v: Vocabulary, c: ClosureSet) -> dict:
    classes = class_like(graph, c, typology(v))
    individuals = {x for x in c.types_of if x not in classes}
    return {
        "triples": len(graph),
        "classes": len(classes),
        "individuals": len(individuals),
        "metatypes": {name: len(c.instances_of(GUFO[name])) for name in _STAT_METATYPES},
    }


def exit_code(report: Report, fail_on: str) -> int:
    return EXIT_FINDINGS if any(report.counts[s] for s in _FAIL_LEVELS[fail_on]) else EXIT_OK


def run(config: RunConfig, stderr: Optional[TextIO] = None) -> tuple[Optional[Report], int]:
    """Validate ``config.paths``; returns the report (None on failure) and the exit code."""
    err = stderr or sys.stderr
    try:
        cfg = config.rule_config()
        graph, files = load_graphs(config.paths, config.base)
        v, official_counts = load_vocabulary(config.gufo_path)
    except (ConfigError, RunError) as exc:
        print(f"gufo-check: {exc}", file=err)
        return None, EXIT_USAGE
    c = compute_closures(graph, v, infer_domains=config.infer_domains)
    violations = run_rules(graph, v, c, cfg)
    stats = None
    if config.stats:
        stats = graph_stats(graph, v, c)
        if official_counts is not None:
            stats["gufo"] = official_counts
    report = Report(__version__, tuple(files), tuple(violations), stats, prefixes=dict(graph.prefixes))
    return report, exit_code(report, config.fail_on)


def _split_ids(values) -> list[str]:
    out = []
    for value in values or ():
        out.extend(part.strip() for part in value.split(",") if part.strip())
    return out


def _parse_severity(values) -> dict:
    out = {}
    for value in _split_ids(values):
        rid, sep, sev = value.partition("=")
        if not sep or sev not in SEVERITIES:
            raise ConfigError(f"bad --severity value {value!r}; expected RULE=error|warning|info")
        out[rid] = sev
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gufo-check",
        description="Validate gUFO-based RDF knowledge graphs written in Turtle.",
    )
    p.add_argument("paths", nargs="+", metavar="FILE", help="Turtle files; merged into one graph")
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.add_argument("--fail-on", choices=tuple(_FAIL_LEVELS), default="error",
                   help="lowest severity that makes the exit code 1 (default: error)")
    p.add_argument("--enable", action="append", metavar="IDS",
                   help="comma-separated rule/lint ids to run (default: all)")
    p.add_argument("--disable", action="append", metavar="IDS", help="comma-separated ids to skip")
    p.add_argument("--severity", action="append", metavar="ID=LEVEL",
                   help="override the severity of a rule, e.g. R3=warning")
    p.add_argument("--direct-subclass-only", action="store_true",
                   help="evaluate taxonomy rules over asserted subclass edges only")
    p.add_argument("--infer-domains", action="store_true",
                   help="type subjects and objects of gUFO properties by their domain and range")
    p.add_argument("--gufo", metavar="PATH", help="official gufo.ttl to merge into the built-in vocabulary")
    p.add_argument("--stats", action="store_true", help="include graph statistics in the report")
    p.add_argument("--base", help="base IRI for relative references (default: each file's URI)")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        severity = _parse_severity(args.severity)
    except ConfigError as exc:
        print(f"gufo-check: {exc}", file=sys.stderr)
        return EXIT_USAGE
    config = RunConfig(
        paths=args.paths,
        gufo_path=args.gufo,
        format=args.format,
        fail_on=args.fail_on,
        enable=_split_ids(args.enable),
        disable=_split_ids(args.disable),
        severity=severity,
        direct_subclass_only=args.direct_subclass_only,
        infer_domains=args.infer_domains,
        stats=args.stats,
        base=args.base,
    )
    report, code = run(config)
    if report is None:
        return code
    if args.format == "json":
        sys.stdout.write(emit_json(report))
    else:
        sys.stdout.write(emit_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
