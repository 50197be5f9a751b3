"""Pure-Python simple-cycle search over a CSR digraph.

Reference twin of the compiled ``_cycles`` extension; both must return
identical results for identical inputs.  Cycles are reported starting at their
least vertex, in the order a depth-first search from vertices ``0, 1, ...``
meets them.
"""
from __future__ import annotations

MODE_ALL = 0
MODE_FIRST_EVEN = 1
MODE_FIRST_LONG = 2


def find_cycles(n, indptr, indices, weights, modulus, mode, max_visits):
    indptr = list(indptr)
    indices = list(indices)
    weights = list(weights)
    found = []
    visits = 0
    on_path = [False] * n
    for s in range(n):
        path = [s]
        cursor = [indptr[s]]
        wsum = [0]
        on_path[s] = True
        while path:
            u = path[-1]
            e = cursor[-1]
            if e >= indptr[u + 1]:
                on_path[u] = False
                path.pop()
                cursor.pop()
                wsum.pop()
                continue
            cursor[-1] = e + 1
            v = indices[e]
            if v == s:
                length = len(path)
                w = (wsum[-1] + weights[e]) & 1
                if mode == MODE_ALL:
                    found.append(tuple(path))
                elif mode == MODE_FIRST_EVEN and (length // modulus + w) % 2 == 0:
                    found.append(tuple(path))
                    return found, visits, False
                elif mode == MODE_FIRST_LONG and length > modulus:
                    found.append(tuple(path))
                    return found, visits, False
                continue
            if v < s or on_path[v]:
                continue
            visits += 1
            if visits > max_visits:
                return found, visits, True
            path.append(v)
            cursor.append(indptr[v])
            wsum.append(wsum[-1] + weights[e])
            on_path[v] = True
    return found, visits, False
