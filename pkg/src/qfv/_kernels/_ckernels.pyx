# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the exhaustive-scan kernels; same contract as _pykernels."""
from libc.stdlib cimport malloc, calloc, free


cdef inline bint _holds(long long *vals, int *idx, int lo, int mid, int hi, long long p) nogil:
    cdef long long x = 1, y = 1
    cdef int j
    for j in range(lo, mid):
        x = x * vals[idx[j]] % p
    for j in range(mid, hi):
        y = y * vals[idx[j]] % p
    return x == y


def scan_variety(int p, int nvars, list lhs, list rhs, prefix=()):
    cdef int nb = len(lhs)
    cdef int total = 0
    cdef int b, j, d, m, start
    for b in range(nb):
        total += len(lhs[b]) + len(rhs[b])
    # binomials ordered by the depth of their last variable
    order = []
    for b in range(nb):
        ix = list(lhs[b]) + list(rhs[b])
        order.append((max(ix) if ix else -1, b))
    order.sort()
    cdef int *idx = <int *> malloc((total + 1) * sizeof(int))
    cdef int *lo = <int *> malloc((nb + 1) * sizeof(int))
    cdef int *mid = <int *> malloc((nb + 1) * sizeof(int))
    cdef int *hi = <int *> malloc((nb + 1) * sizeof(int))
    cdef int *first = <int *> calloc(nvars + 2, sizeof(int))
    cdef long long *vals = <long long *> calloc(nvars + 1, sizeof(long long))
    cdef int pos = 0, n = 0
    cdef int nearly = 0
    out = []
    try:
        for depth, b in order:
            lo[n] = pos
            for j in lhs[b]:
                idx[pos] = j
                pos += 1
            mid[n] = pos
            for j in rhs[b]:
                idx[pos] = j
                pos += 1
            hi[n] = pos
            if depth < 0:
                nearly += 1
            n += 1
        # first[d] .. first[d+1]: binomials checked at depth d (after the constant ones)
        m = nearly
        for d in range(nvars + 1):
            first[d] = m
            while m < nb and order[m][0] == d:
                m += 1
        for b in range(nearly):
            if not _holds(vals, idx, lo[b], mid[b], hi[b], p):
                return []
        start = len(prefix)
        for d in range(start):
            vals[d] = prefix[d]
        for d in range(start):
            for b in range(first[d], first[d + 1]):
                if not _holds(vals, idx, lo[b], mid[b], hi[b], p):
                    return []
        if start == nvars:
            return [tuple(vals[j] for j in range(nvars))]
        d = start
        vals[d] = -1
        while d >= start:
            vals[d] += 1
            if vals[d] == p:
                d -= 1
                continue
            ok = True
            for b in range(first[d], first[d + 1]):
                if not _holds(vals, idx, lo[b], mid[b], hi[b], p):
                    ok = False
                    break
            if not ok:
                continue
            if d == nvars - 1:
                out.append(tuple([vals[j] for j in range(nvars)]))
            else:
                d += 1
                vals[d] = -1
        return out
    finally:
        free(idx); free(lo); free(mid); free(hi); free(first); free(vals)


def stability_scan(int p, int nvars, int nverts, tails, heads):
    cdef int *t = <int *> malloc((nvars + 1) * sizeof(int))
    cdef int *h = <int *> malloc((nvars + 1) * sizeof(int))
    cdef int *vals = <int *> calloc(nvars + 1, sizeof(int))
    cdef char *live = <char *> malloc(nverts + 1)
    cdef char *reached = <char *> malloc(nverts + 1)
    cdef long long count = 0, unstable = 0, bad = 0
    cdef int a, i, v
    cdef bint u, g
    try:
        for a in range(nvars):
            t[a] = tails[a]
            h[a] = heads[a]
        with nogil:
            while True:
                count += 1
                for v in range(nverts):
                    live[v] = 0
                    reached[v] = 0
                reached[0] = 1
                for a in range(nvars):
                    if vals[a]:
                        live[h[a]] = 1
                        if reached[t[a]]:
                            reached[h[a]] = 1
                u = False
                for v in range(1, nverts):
                    if not live[v]:
                        u = True
                        break
                g = True
                for v in range(nverts):
                    if not reached[v]:
                        g = False
                        break
                if u:
                    unstable += 1
                if u == g:
                    bad += 1
                i = nvars - 1
                while i >= 0:
                    vals[i] += 1
                    if vals[i] < p:
                        break
                    vals[i] = 0
                    i -= 1
                if i < 0:
                    break
        return count, unstable, bad
    finally:
        free(t); free(h); free(vals); free(live); free(reached)
