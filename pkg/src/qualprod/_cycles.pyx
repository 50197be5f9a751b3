# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled simple-cycle search over a CSR digraph (see ``_cycles_py`` for the reference twin)."""
from libc.stdlib cimport malloc, free

DEF MODE_ALL = 0
DEF MODE_FIRST_EVEN = 1
DEF MODE_FIRST_LONG = 2


def find_cycles(int n, const int[:] indptr, const int[:] indices, const unsigned char[:] weights,
                int modulus, int mode, long long max_visits):
    cdef int *path = <int *> malloc(n * sizeof(int))
    cdef int *cursor = <int *> malloc(n * sizeof(int))
    cdef int *wsum = <int *> malloc((n + 1) * sizeof(int))
    cdef char *on_path = <char *> malloc(n * sizeof(char))
    cdef long long visits = 0
    cdef int s, depth, u, v, e, length, w, t
    cdef bint stop = False, exceeded = False
    found = []
    if n > 0 and (path == NULL or cursor == NULL or wsum == NULL or on_path == NULL):
        free(path); free(cursor); free(wsum); free(on_path)
        raise MemoryError()
    try:
        for t in range(n):
            on_path[t] = 0
        for s in range(n):
            if stop:
                break
            depth = 0
            path[0] = s
            cursor[0] = indptr[s]
            wsum[0] = 0
            on_path[s] = 1
            while depth >= 0:
                u = path[depth]
                e = cursor[depth]
                if e >= indptr[u + 1]:
                    on_path[u] = 0
                    depth -= 1
                    continue
                cursor[depth] = e + 1
                v = indices[e]
                if v == s:
                    length = depth + 1
                    w = (wsum[depth] + weights[e]) & 1
                    if mode == MODE_ALL:
                        found.append(tuple([path[t] for t in range(length)]))
                    elif mode == MODE_FIRST_EVEN:
                        if ((length // modulus) + w) % 2 == 0:
                            found.append(tuple([path[t] for t in range(length)]))
                            stop = True
                    elif mode == MODE_FIRST_LONG:
                        if length > modulus:
                            found.append(tuple([path[t] for t in range(length)]))
                            stop = True
                    if stop:
                        break
                    continue
                if v < s or on_path[v]:
                    continue
                visits += 1
                if visits > max_visits:
                    exceeded = True
                    stop = True
                    break
                depth += 1
                path[depth] = v
                cursor[depth] = indptr[v]
                wsum[depth] = wsum[depth - 1] + weights[e]
                on_path[v] = 1
            for t in range(n):
                on_path[t] = 0
    finally:
        free(path); free(cursor); free(wsum); free(on_path)
    return found, visits, exceeded
