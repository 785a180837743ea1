"""Compare the compiled and pure-Python closure kernels.

    python3 benchmarks/bench_closure.py [--sizes 1000,10000,50000] [--repeat 3]

Prints one row per graph size with the best-of-N time of each kernel, then
times the full pipeline (parse, closures, all checks) on the 100k-triple
synthetic graph with each kernel.
"""

from __future__ import annotations

import argparse
import random
import time

from gufo_check import _closure_py, inference
from gufo_check.inference import compute_closures
from gufo_check.rules import run_rules
from gufo_check.synthetic import class_tree_turtle, random_dag_edges
from gufo_check.turtle import parse_turtle
from gufo_check.vocabulary import builtin_vocabulary

try:
    from gufo_check import _closure
except ImportError:
    _closure = None


def best_of(repeat, fn, *args):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(sizes, repeat, seed):
    rng = random.Random(seed)
    print(f"{'nodes':>8} {'edges':>8} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for n in sizes:
        edges = random_dag_edges(rng, n, 3 * n)
        succ = [[] for _ in range(n)]
        for a, b in edges:
            succ[a].append(b)
        t_py = best_of(repeat, _closure_py.strict_closure, n, succ)
        if _closure is None:
            print(f"{n:>8} {len(edges):>8} {t_py:>10.4f} {'n/a':>11} {'':>8}")
            continue
        t_c = best_of(repeat, _closure.strict_closure, n, succ)
        print(f"{n:>8} {len(edges):>8} {t_py:>10.4f} {t_c:>11.4f} {t_py / t_c:>7.1f}x")


def bench_pipeline(repeat):
    text = class_tree_turtle()
    v = builtin_vocabulary()
    impls = {"python": _closure_py.strict_closure}
    if _closure is not None:
        impls["compiled"] = _closure.strict_closure
    saved = inference.kernels.strict_closure
    try:
        for name, impl in impls.items():
            inference.kernels.strict_closure = impl

            def pipeline():
                g = parse_turtle(text)
                run_rules(g, v, compute_closures(g, v))

            print(f"pipeline ({name}): {best_of(repeat, pipeline):.2f} s for 100,000 triples")
    finally:
        inference.kernels.strict_closure = saved


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", default="1000,10000,50000,100000")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--skip-pipeline", action="store_true")
    args = p.parse_args(argv)
    bench_kernels([int(s) for s in args.sizes.split(",")], args.repeat, args.seed)
    if not args.skip_pipeline:
        bench_pipeline(args.repeat)


if __name__ == "__main__":
    main()
