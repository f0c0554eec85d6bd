"""Binomial ideals attached to the tilting quiver.

* ``I_R``: binomials from pairs of paths with common tail, head and
  labeling divisor (the divisor of a path is its multiset of rays);
* ``B``: the irrelevant ideal, one monomial-ideal component per vertex;
* ``I_Q``: lattice binomials from the integer kernel of ``pi``.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from math import prod
from typing import Sequence

from .errors import PathExplosion
from .intlinalg import integer_kernel, mat_vec
from .tilting import TiltingQuiver, Vertex, format_vertex

DEFAULT_PATH_CAP = 10**7

Path = tuple[int, ...]  # arrow indices in path order
Monomial = tuple[int, ...]  # sorted arrow indices, repeated by exponent


@dataclass(frozen=True)
class PathGroup:
    tail: Vertex
    head: Vertex
    divisor: tuple[int, ...]
    paths: tuple[Path, ...]


@dataclass(frozen=True, order=True)
class Binomial:
    """``y^lhs - y^rhs`` with ``lhs < rhs`` as sorted index tuples."""

    lhs: Monomial
    rhs: Monomial
    lhs_ids: tuple[str, ...] = field(compare=False, default=())
    rhs_ids: tuple[str, ...] = field(compare=False, default=())

    @classmethod
    def make(cls, tq: TiltingQuiver, a: Sequence[int], b: Sequence[int]) -> "Binomial":
        a, b = tuple(sorted(a)), tuple(sorted(b))
        if a == b:
            raise ValueError("binomial with equal monomials")
        if b < a:
            a, b = b, a
        return cls(a, b, tuple(tq.arrows[i].id for i in a), tuple(tq.arrows[i].id for i in b))

    def evaluate(self, values: Sequence, one=1):
        return prod((values[i] for i in self.lhs), start=one) - prod(
            (values[i] for i in self.rhs), start=one
        )

    def key(self) -> frozenset:
        """Orientation-free identity: the unordered pair of monomials."""
        return frozenset((self.lhs, self.rhs))

    def to_json(self) -> dict:
        return {"lhs": list(self.lhs_ids), "rhs": list(self.rhs_ids)}

    def __str__(self):
        return " * ".join(self.lhs_ids) + " - " + " * ".join(self.rhs_ids)


def monomial_rays(tq: TiltingQuiver, mono: Sequence[int]) -> Counter:
    return Counter(tq.arrows[i].ray for i in mono)


def monomial_boundary(tq: TiltingQuiver, mono: Sequence[int]) -> Counter:
    """Sum of chi_head - chi_tail over the arrows of ``mono``."""
    c: Counter = Counter()
    for i in mono:
        a = tq.arrows[i]
        c[a.head] += 1
        c[a.tail] -= 1
    return Counter({k: v for k, v in c.items() if v})


def enumerate_paths(tq: TiltingQuiver, max_len: int | None = None, cap: int = DEFAULT_PATH_CAP):
    """All paths of length >= 1 (at most ``max_len``), in deterministic order."""
    out: list[Path] = []
    for v in tq.vertices:
        stack: list[Path] = [(i,) for i in reversed(tq.outgoing[v])]
        while stack:
            p = stack.pop()
            out.append(p)
            if len(out) > cap:
                raise PathExplosion(cap)
            if max_len is not None and len(p) >= max_len:
                continue
            end = tq.arrows[p[-1]].head
            for i in reversed(tq.outgoing[end]):
                stack.append(p + (i,))
    return out


def path_groups(tq: TiltingQuiver, max_len: int | None = None, cap: int = DEFAULT_PATH_CAP) -> list[PathGroup]:
    groups: dict[tuple, list[Path]] = defaultdict(list)
    for p in enumerate_paths(tq, max_len, cap):
        tail = tq.arrows[p[0]].tail
        head = tq.arrows[p[-1]].head
        divisor = tuple(sorted(tq.arrows[i].ray for i in p))
        groups[(tail, head, divisor)].append(p)
    ordered = sorted(groups.items(), key=lambda kv: (tq.rank[kv[0][0]], tq.rank[kv[0][1]], len(kv[0][2]), kv[0][2]))
    return [
        PathGroup(tail, head, divisor, tuple(sorted(paths, key=lambda p: tuple(sorted(p)))))
        for (tail, head, divisor), paths in ordered
    ]


def pairwise_binomials(tq: TiltingQuiver, max_len: int | None = None, cap: int = DEFAULT_PATH_CAP) -> list[Binomial]:
    """The unreduced family: first path minus every other path, in every group."""
    gens = set()
    for g in path_groups(tq, max_len, cap):
        first = g.paths[0]
        for other in g.paths[1:]:
            gens.add(Binomial.make(tq, first, other))
    return sorted(gens)


def _find(parent: dict, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def ideal_R_generators(tq: TiltingQuiver, max_len: int | None = None, cap: int = DEFAULT_PATH_CAP) -> list[Binomial]:
    """Generators of ``I_R``.

    Within a path group, two paths that differ by swapping a proper subpath
    for another path with the same endpoints and divisor already differ by a
    monomial multiple of a shorter generator.  Only one binomial per extra
    connected component of that relation is emitted, so the result generates
    the same ideal as the full pairwise family.
    """
    groups = path_groups(tq, max_len, cap)
    rep: dict[tuple, Path] = {}
    for g in groups:
        rep[(g.tail, g.head, g.divisor)] = g.paths[0]

    arrows = tq.arrows
    gens = set()
    for g in groups:
        if len(g.paths) < 2:
            continue
        parent = {p: p for p in g.paths}
        for p in g.paths:
            n = len(p)
            for i in range(n - 1):
                for j in range(i + 2, n + 1):
                    if j - i == n:
                        continue
                    sub = p[i:j]
                    key = (arrows[sub[0]].tail, arrows[sub[-1]].head, tuple(sorted(arrows[x].ray for x in sub)))
                    r = rep[key]
                    if r != sub:
                        q = p[:i] + r + p[j:]
                        a, b = _find(parent, p), _find(parent, q)
                        if a != b:
                            parent[max(a, b)] = min(a, b)
        roots = sorted({_find(parent, p) for p in g.paths}, key=lambda p: tuple(sorted(p)))
        for other in roots[1:]:
            gens.add(Binomial.make(tq, roots[0], other))
    return sorted(gens)


def irrelevant_ideal(tq: TiltingQuiver) -> list[tuple[Vertex, list[int]]]:
    """One component per vertex ``j != e_0``: the arrows with head ``j``.

    ``B`` is the intersection of the monomial ideals these generate; it is
    kept in this structural form and never expanded.
    """
    return [(v, list(tq.incoming[v])) for v in tq.vertices[1:]]


@dataclass(frozen=True)
class PiMatrix:
    rows: tuple[str, ...]
    columns: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "columns": list(self.columns), "entries": [list(r) for r in self.entries]}


def pi_matrix(tq: TiltingQuiver) -> PiMatrix:
    """Columns ``(chi_head - chi_tail, chi_ray)``; rows are vertices then rays."""
    nv = len(tq.vertices)
    nrays = len(tq.base.arrows)
    cols = []
    for a in tq.arrows:
        col = [0] * (nv + nrays)
        col[tq.rank[a.head]] += 1
        col[tq.rank[a.tail]] -= 1
        col[nv + a.ray - 1] = 1
        cols.append(col)
    entries = tuple(tuple(c[r] for c in cols) for r in range(nv + nrays))
    rows = tuple(format_vertex(v) for v in tq.vertices) + tuple(f"r{r}" for r in tq.base.rays)
    return PiMatrix(rows, tuple(a.id for a in tq.arrows), entries)


def kernel_basis(m: PiMatrix) -> list[tuple[int, ...]]:
    """Hermite-normal-form basis of the integer kernel lattice of ``m``."""
    basis = integer_kernel([list(r) for r in m.entries], len(m.columns))
    return [tuple(u) for u in basis]


def check_kernel(m: PiMatrix, basis) -> bool:
    return all(not any(mat_vec(m.entries, u)) for u in basis)


def lattice_binomials(tq: TiltingQuiver, basis) -> list[Binomial]:
    """``y^{u+} - y^{u-}`` for each basis vector ``u``."""
    out = []
    for u in basis:
        pos = [i for i, x in enumerate(u) if x > 0 for _ in range(x)]
        neg = [i for i, x in enumerate(u) if x < 0 for _ in range(-x)]
        out.append(Binomial.make(tq, pos, neg))
    return out
