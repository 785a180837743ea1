"""Pure-Python closure kernel.

Reference implementation of :func:`strict_closure`; the compiled
``_closure`` extension must agree with it exactly.
"""

from __future__ import annotations


def strict_closure(n, succ, labels=None):
    """Strict reachability over a directed graph on nodes ``0..n-1``.

    ``succ[u]`` lists the direct successors of ``u``. Returns
    ``(comp_of, comp_reach, cyclic)`` where ``comp_of[u]`` is the strongly
    connected component of ``u``, ``comp_reach[c]`` is the frozenset of nodes
    reachable from component ``c`` by a path of length >= 1 (members of
    ``c`` included only when ``c`` lies on a cycle) and ``cyclic`` lists the
    member lists of components that lie on a cycle, in discovery order.
    When ``labels`` is given the reach sets hold ``labels[i]`` instead of ``i``.
    """
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp_of = [-1] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            node, pos = work[-1]
            edges = succ[node]
            if pos < len(edges):
                work[-1] = (node, pos + 1)
                nxt = edges[pos]
                if index[nxt] == -1:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack[nxt] = True
                    work.append((nxt, 0))
                elif on_stack[nxt] and index[nxt] < low[node]:
                    low[node] = index[nxt]
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[node] < low[parent]:
                    low[parent] = low[node]
            if low[node] == index[node]:
                members = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp_of[w] = len(comps)
                    members.append(w)
                    if w == node:
                        break
                comps.append(members)

    # Tarjan emits components sinks-first, so successors are always ready
    comp_reach: list[frozenset] = []
    cyclic: list[list[int]] = []
    empty: frozenset = frozenset()
    for c, members in enumerate(comps):
        acc = None
        is_cyclic = len(members) > 1
        seen_targets = set()
        for u in members:
            for v in succ[u]:
                cv = comp_of[v]
                if cv == c:
                    is_cyclic = True
                    continue
                if cv in seen_targets:
                    continue
                seen_targets.add(cv)
                target = comp_reach[cv]
                if acc is None:
                    acc = set(target)
                else:
                    acc |= target
                acc.update(comps[cv])
        if is_cyclic:
            if acc is None:
                acc = set()
            acc.update(members)
            cyclic.append(sorted(members))
        comp_reach.append(empty if acc is None else frozenset(acc))
    if labels is not None:
        comp_reach = [frozenset([labels[i] for i in r]) if r else empty for r in comp_reach]
    return comp_of, comp_reach, cyclic
