"""gufo-check: a batch validator for gUFO-based RDF knowledge graphs."""

__version__ = "0.1.0"

from .graph import Graph, GraphBuilder, Location  # noqa: E402
from .inference import ClosureSet, compute_closures  # noqa: E402
from .terms import BNode, IRI, Literal, Term, Triple  # noqa: E402
from .turtle import TurtleSyntaxError, parse_file, parse_turtle  # noqa: E402
from .violations import RuleConfig, Violation  # noqa: E402
from .vocabulary import Vocabulary, builtin_vocabulary, merge_external  # noqa: E402


def validate(graph: Graph, cfg: RuleConfig | None = None, infer_domains: bool = False) -> list[Violation]:
    """Run all enabled rules and lints on ``graph`` against the built-in vocabulary."""
    from .rules import run_rules

    cfg = cfg or RuleConfig()
    v = builtin_vocabulary()
    return run_rules(graph, v, compute_closures(graph, v, infer_domains), cfg)


__all__ = [
    "BNode", "ClosureSet", "Graph", "GraphBuilder", "IRI", "Literal", "Location", "RuleConfig",
    "Term", "Triple", "TurtleSyntaxError", "Violation", "Vocabulary", "builtin_vocabulary",
    "compute_closures", "merge_external", "parse_file", "parse_turtle", "validate",
]
