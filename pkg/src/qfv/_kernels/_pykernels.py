"""Reference (pure Python) implementations of the exhaustive-scan kernels.

Values are integers in ``range(p)``.  A binomial is a pair of variable-index
lists; repeated indices encode exponents.
"""
from __future__ import annotations


def _schedule(nvars, lhs, rhs):
    at = [[] for _ in range(max(nvars, 1))]
    early = []
    for b, (l, r) in enumerate(zip(lhs, rhs)):
        idx = list(l) + list(r)
        if not idx:
            early.append(b)
        else:
            at[max(idx)].append(b)
    return at, early


def _holds(vals, l, r, p):
    x = 1
    for i in l:
        x = x * vals[i] % p
    y = 1
    for i in r:
        y = y * vals[i] % p
    return x == y


def scan_variety(p, nvars, lhs, rhs, prefix=()):
    """All points of F_p^nvars (extending ``prefix``) where every binomial vanishes.

    Depth-first in lexicographic order; each binomial is tested as soon as its
    last variable is assigned.
    """
    at, early = _schedule(nvars, lhs, rhs)
    if any(not _holds((), lhs[b], rhs[b], p) for b in early):
        return []
    start = len(prefix)
    vals = list(prefix) + [0] * (nvars - start)
    for d in range(start):
        if not all(_holds(vals, lhs[b], rhs[b], p) for b in at[d]):
            return []
    if start == nvars:
        return [tuple(vals)]
    out = []
    d = start
    vals[d] = -1
    while d >= start:
        vals[d] += 1
        if vals[d] == p:
            d -= 1
            continue
        if not all(_holds(vals, lhs[b], rhs[b], p) for b in at[d]):
            continue
        if d == nvars - 1:
            out.append(tuple(vals))
        else:
            d += 1
            vals[d] = -1
    return out


def stability_scan(p, nvars, nverts, tails, heads):
    """Scan all of F_p^nvars; return ``(points, unstable, mismatches)``.

    Vertices are dense ranks with 0 the source and every arrow going from a
    lower to a higher rank; arrows are sorted by head.  A point is unstable
    when some vertex other than 0 has only zero incoming values, and
    0-generated when every vertex is reached from 0 along nonzero values.
    A mismatch is a point that is both or neither.
    """
    vals = [0] * nvars
    total = unstable = bad = 0
    while True:
        total += 1
        live = [False] * nverts
        reached = [False] * nverts
        reached[0] = True
        for a in range(nvars):
            if vals[a]:
                live[heads[a]] = True
                if reached[tails[a]]:
                    reached[heads[a]] = True
        u = not all(live[1:])
        g = all(reached)
        unstable += u
        bad += u == g
        i = nvars - 1
        while i >= 0:
            vals[i] += 1
            if vals[i] < p:
                break
            vals[i] = 0
            i -= 1
        if i < 0:
            break
    return total, unstable, bad
