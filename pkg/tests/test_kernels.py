from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gufo_check import _closure_py, kernels
from gufo_check.synthetic import random_dag_edges

compiled = pytest.importorskip("gufo_check._closure", reason="compiled kernel not built")


def _succ(n, edges):
    succ = [[] for _ in range(n)]
    for a, b in edges:
        succ[a].append(b)
    return succ


def _canonical(result):
    comp_of, comp_reach, cyclic = result
    reach = [comp_reach[comp_of[u]] for u in range(len(comp_of))]
    return reach, sorted(sorted(c) for c in cyclic)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 40).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=120))
))
def test_compiled_matches_python(graph):
    n, edges = graph
    succ = _succ(n, edges)
    assert _canonical(compiled.strict_closure(n, succ)) == _canonical(_closure_py.strict_closure(n, succ))


def test_labels_are_applied():
    labels = ["a", "b", "c"]
    succ = [[1], [2], []]
    for impl in (compiled, _closure_py):
        comp_of, reach, _ = impl.strict_closure(3, succ, labels)
        assert reach[comp_of[0]] == {"b", "c"}
        assert reach[comp_of[2]] == frozenset()


def test_large_random_dag_parity():
    rng = random.Random(7)
    n = 3000
    edges = random_dag_edges(rng, n, 9000)
    succ = _succ(n, edges)
    assert _canonical(compiled.strict_closure(n, succ)) == _canonical(_closure_py.strict_closure(n, succ))


def test_empty_graph():
    for impl in (compiled, _closure_py):
        assert impl.strict_closure(0, []) == ([], [], [])


def test_backend_selection():
    assert kernels.BACKEND in kernels.IMPLEMENTATIONS
    assert "python" in kernels.IMPLEMENTATIONS
