# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled closure kernel; same contract as ``_closure_py.strict_closure``."""

from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy


cdef struct IntBuf:
    int *data
    Py_ssize_t size
    Py_ssize_t cap


cdef inline int buf_push(IntBuf *b, int value) except -1:
    cdef Py_ssize_t new_cap
    cdef int *grown
    if b.size == b.cap:
        new_cap = b.cap * 2 if b.cap else 16
        grown = <int *>realloc(b.data, new_cap * sizeof(int))
        if grown == NULL:
            raise MemoryError()
        b.data = grown
        b.cap = new_cap
    b.data[b.size] = value
    b.size += 1
    return 0


def strict_closure(Py_ssize_t n, succ, labels=None):
    """Strict reachability on nodes ``0..n-1``; see the pure-Python twin."""
    cdef Py_ssize_t m = 0, u, k, i, j
    for u in range(n):
        m += len(succ[u])

    cdef int *start = <int *>malloc((n + 1) * sizeof(int))
    cdef int *adj = <int *>malloc((m + 1) * sizeof(int))
    cdef int *index = <int *>malloc((n + 1) * sizeof(int))
    cdef int *low = <int *>malloc((n + 1) * sizeof(int))
    cdef char *on_stack = <char *>malloc(n + 1)
    cdef int *comp = <int *>malloc((n + 1) * sizeof(int))
    cdef int *stack = <int *>malloc((n + 1) * sizeof(int))
    cdef int *work_node = <int *>malloc((n + 1) * sizeof(int))
    cdef int *work_pos = <int *>malloc((n + 1) * sizeof(int))
    cdef int *comp_start = <int *>malloc((n + 2) * sizeof(int))
    cdef int *comp_nodes = <int *>malloc((n + 1) * sizeof(int))
    cdef int *mark = <int *>malloc((n + 1) * sizeof(int))
    cdef int *comp_mark = <int *>malloc((n + 1) * sizeof(int))
    cdef IntBuf *reach = NULL
    cdef IntBuf acc
    if (start == NULL or adj == NULL or index == NULL or low == NULL or on_stack == NULL
            or comp == NULL or stack == NULL or work_node == NULL or work_pos == NULL
            or comp_start == NULL or comp_nodes == NULL or mark == NULL or comp_mark == NULL):
        raise MemoryError()

    cdef int sp = 0, wp = 0, counter = 0, ncomp = 0, filled = 0
    cdef int root, node, nxt, parent, w, c, cv, e
    cdef bint is_cyclic
    acc.data = NULL
    acc.size = 0
    acc.cap = 0
    try:
        k = 0
        for u in range(n):
            start[u] = k
            for v in succ[u]:
                adj[k] = v
                k += 1
        start[n] = k

        for u in range(n):
            index[u] = -1
            on_stack[u] = 0
            mark[u] = -1
            comp_mark[u] = -1

        comp_start[0] = 0
        for root in range(n):
            if index[root] != -1:
                continue
            index[root] = counter
            low[root] = counter
            counter += 1
            stack[sp] = root
            sp += 1
            on_stack[root] = 1
            work_node[0] = root
            work_pos[0] = start[root]
            wp = 1
            while wp > 0:
                node = work_node[wp - 1]
                if work_pos[wp - 1] < start[node + 1]:
                    nxt = adj[work_pos[wp - 1]]
                    work_pos[wp - 1] += 1
                    if index[nxt] == -1:
                        index[nxt] = counter
                        low[nxt] = counter
                        counter += 1
                        stack[sp] = nxt
                        sp += 1
                        on_stack[nxt] = 1
                        work_node[wp] = nxt
                        work_pos[wp] = start[nxt]
                        wp += 1
                    elif on_stack[nxt] and index[nxt] < low[node]:
                        low[node] = index[nxt]
                    continue
                wp -= 1
                if wp > 0:
                    parent = work_node[wp - 1]
                    if low[node] < low[parent]:
                        low[parent] = low[node]
                if low[node] == index[node]:
                    while True:
                        sp -= 1
                        w = stack[sp]
                        on_stack[w] = 0
                        comp[w] = ncomp
                        comp_nodes[filled] = w
                        filled += 1
                        if w == node:
                            break
                    ncomp += 1
                    comp_start[ncomp] = filled

        reach = <IntBuf *>malloc((ncomp + 1) * sizeof(IntBuf))
        if reach == NULL:
            raise MemoryError()
        for c in range(ncomp):
            reach[c].data = NULL
            reach[c].size = 0
            reach[c].cap = 0

        cyclic = []
        for c in range(ncomp):
            acc.size = 0
            is_cyclic = (comp_start[c + 1] - comp_start[c]) > 1
            for i in range(comp_start[c], comp_start[c + 1]):
                u = comp_nodes[i]
                for e in range(start[u], start[u + 1]):
                    cv = comp[adj[e]]
                    if cv == c:
                        is_cyclic = True
                        continue
                    if comp_mark[cv] == c:
                        continue
                    comp_mark[cv] = c
                    for j in range(reach[cv].size):
                        w = reach[cv].data[j]
                        if mark[w] != c:
                            mark[w] = c
                            buf_push(&acc, w)
                    for j in range(comp_start[cv], comp_start[cv + 1]):
                        w = comp_nodes[j]
                        if mark[w] != c:
                            mark[w] = c
                            buf_push(&acc, w)
            if is_cyclic:
                members = []
                for i in range(comp_start[c], comp_start[c + 1]):
                    w = comp_nodes[i]
                    members.append(w)
                    if mark[w] != c:
                        mark[w] = c
                        buf_push(&acc, w)
                members.sort()
                cyclic.append(members)
            if acc.size:
                reach[c].data = <int *>malloc(acc.size * sizeof(int))
                if reach[c].data == NULL:
                    raise MemoryError()
                memcpy(reach[c].data, acc.data, acc.size * sizeof(int))
                reach[c].size = acc.size
                reach[c].cap = acc.size

        empty = frozenset()
        comp_reach = []
        for c in range(ncomp):
            if reach[c].size == 0:
                comp_reach.append(empty)
            elif labels is None:
                comp_reach.append(frozenset([reach[c].data[j] for j in range(reach[c].size)]))
            else:
                comp_reach.append(frozenset([labels[reach[c].data[j]] for j in range(reach[c].size)]))
        comp_of = [comp[u] for u in range(n)]
        return comp_of, comp_reach, cyclic
    finally:
        if reach != NULL:
            for c in range(ncomp):
                free(reach[c].data)
            free(reach)
        free(acc.data)
        free(start); free(adj); free(index); free(low); free(on_stack); free(comp)
        free(stack); free(work_node); free(work_pos); free(comp_start); free(comp_nodes)
        free(mark); free(comp_mark)
