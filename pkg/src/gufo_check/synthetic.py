"""Synthetic gUFO-style graphs for benchmarks and scale tests."""

from __future__ import annotations

import random

PREFIXES = """@prefix : <http://example.org/synthetic#> .
@prefix gufo: <http://purl.org/nemo/gufo#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
"""


def class_tree_turtle(n_classes: int = 10_000, n_typings: int = 80_000, seed: int = 0) -> str:
    """A random class tree under one kind plus instance typings.

    Class 0 is a ``gufo:Kind`` specializing ``gufo:Object``; every other
    class is a ``gufo:SubKind`` whose parent is drawn uniformly from the
    classes created before it. With the defaults this yields exactly
    100,000 triples.
    """
    rng = random.Random(seed)
    lines = [PREFIXES, ":c0 a gufo:Kind ; rdfs:subClassOf gufo:Object ."]
    for k in range(1, n_classes):
        parent = rng.randrange(k)
        lines.append(f":c{k} a gufo:SubKind ; rdfs:subClassOf :c{parent} .")
    for i in range(n_typings):
        lines.append(f":i{i} a :c{rng.randrange(n_classes)} .")
    return "\n".join(lines) + "\n"


def random_dag_edges(rng: random.Random, n_nodes: int, n_edges: int) -> list[tuple[int, int]]:
    """Distinct edges (child, parent) with parent index < child index."""
    if n_nodes < 2:
        return []
    possible = n_nodes * (n_nodes - 1) // 2
    n_edges = min(n_edges, possible)
    edges: set[tuple[int, int]] = set()
    while len(edges) < n_edges:
        a, b = rng.sample(range(n_nodes), 2)
        edges.add((max(a, b), min(a, b)))
    return sorted(edges)
