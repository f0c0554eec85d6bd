"""Carry a stable point of V(I_R) to its base-constant torus representative.

Vertices are processed in increasing total order.  At each vertex ``k`` one
incoming arrow with nonzero value (by default the one with smallest ray) is
scaled to its base value; every other incoming arrow must then agree with
its own base value.  The torus is fixed to 1 on the base vertices, so the
output is exactly ``v_point(w)``.

With ``certify=True`` each such agreement is backed by a relation witness: a
pair of paths in the truncated quiver ``Q'(k)`` ending at ``k`` with equal
ray multisets, chosen by the case analysis on the indices
``delta, beta, alpha, gamma, xi, eta`` described on :class:`CaseTag`.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .errors import (
    InconsistentAtVertex,
    UnstableInput,
    WitnessConstructionFailed,
    ZeroReference,
)
from .ideals import Binomial
from .points import Point, TorusElement, unstable_vertex
from .tilting import TiltingQuiver, Vertex, displacement, format_vertex, in_cuboid, unit

BASE_CHAIN = "BaseChain"
NOTHING_TO_PROVE = "NothingToProve"
CASE1 = "Case1"
CASE2_SAME = "Case2SameAsCase1"
CASE2A = "Case2A"
CASE2B_BIG = "Case2B_sBig"
CASE2B_S2 = "Case2B_s2"

Chooser = Callable[[Vertex, Sequence[int]], int]


@dataclass(frozen=True)
class CaseTag:
    """Position of ``k`` in the case analysis.

    ``delta`` is the first nonzero coordinate of ``k``; ``alpha -> beta`` is the
    base arrow of the selected ray ``rho_k``; ``gamma`` is the tail of the ray
    selected at ``e_delta``.  When ``delta == beta`` and ``k_delta == 1``,
    ``xi`` is the next nonzero coordinate and ``eta`` the tail of the ray
    selected at ``e_xi``.  ``epsilon`` is the tail of the third ray of a
    length-three or length-four pivot relation, when one is needed.
    """

    variant: str
    rho_k: int
    delta: int
    beta: int
    alpha: int
    gamma: int
    xi: int | None = None
    eta: int | None = None
    epsilon: int | None = None

    def to_json(self) -> dict:
        out = {"variant": self.variant, "delta": self.delta, "beta": self.beta,
               "alpha": self.alpha, "gamma": self.gamma}
        for name in ("xi", "eta", "epsilon"):
            if getattr(self, name) is not None:
                out[name] = getattr(self, name)
        return out

    @property
    def pivot(self) -> tuple[int, int] | None:
        """(D, G): head and tail index of the pivot base arrow for Case 1 style variants."""
        if self.variant in (CASE1, CASE2_SAME):
            return self.delta, self.gamma
        if self.variant == CASE2A:
            return self.xi, self.eta
        if self.variant == CASE2B_BIG:
            return self.xi, self.delta
        return None


SHAPES = {2: "rectangle", 3: "hexagon", 4: "octagon"}


@dataclass(frozen=True)
class RelationWitness:
    shape: str
    rays: tuple[int, ...]
    target: int
    path_a: tuple[int, ...]
    path_b: tuple[int, ...]
    cycle: tuple[Vertex, ...]
    binomial: Binomial
    source: str = "case"

    @property
    def partner(self) -> int:
        """The other ray entering ``k`` along the witness."""
        r1, r2 = self.rays[:2]
        return r1 if r2 == self.target else r2

    @property
    def middle(self) -> tuple[int, ...]:
        return tuple(self.rays[2:])

    def to_json(self) -> dict:
        return {
            "shape": self.shape,
            "source": self.source,
            "rays": list(self.rays),
            "ray": self.target,
            "cycle": [format_vertex(v) for v in self.cycle],
            "binomial": self.binomial.to_json(),
        }


@dataclass
class VertexTrace:
    vertex: Vertex
    rho_k: int
    t_k: object
    case: CaseTag | None = None
    witnesses: list[RelationWitness] = field(default_factory=list)


@dataclass
class NormalizationResult:
    torus: TorusElement
    normalized: Point
    trace: list[VertexTrace]

    def to_json(self) -> dict:
        F = self.normalized.field
        return {
            "field": F.name,
            "torus": self.torus.to_json()["values"],
            "normalized": self.normalized.to_json()["values"],
            "trace": [
                {
                    "vertex": format_vertex(r.vertex),
                    "rho_k": r.rho_k,
                    "t_k": F.fmt(r.t_k),
                    "case": r.case.to_json() if r.case else None,
                    "witnesses": [w.to_json() for w in r.witnesses],
                }
                for r in self.trace
            ],
        }


def _chosen(chosen: Mapping, tq: TiltingQuiver, j: int) -> int:
    return chosen[unit(tq.ell, j)]


def classify_case(k: Vertex, rho_k: int, chosen: Mapping[Vertex, int], tq: TiltingQuiver) -> CaseTag:
    """Locate ``k`` in the case analysis; ``chosen`` maps base vertices to selected rays."""
    k = tuple(k)
    if not any(k):
        raise ValueError("the origin needs no case analysis")
    q = tq.base
    s = tq.s
    delta = next(i for i, x in enumerate(k, 1) if x)
    beta, alpha = q.head(rho_k), q.tail(rho_k)
    if tq.is_base_vertex(k):
        gamma = q.tail(rho_k)
        return CaseTag(NOTHING_TO_PROVE, rho_k, delta, beta, alpha, gamma)
    gamma = q.tail(_chosen(chosen, tq, delta))
    if delta == 1 and not any(k[1:]):
        return CaseTag(BASE_CHAIN, rho_k, delta, beta, alpha, gamma)

    def eps(G):
        if G == alpha and G != 0 and s[G - 1] == 2:
            return q.tail(_chosen(chosen, tq, G))
        return None

    if delta < beta:
        return CaseTag(CASE1, rho_k, delta, beta, alpha, gamma, epsilon=eps(gamma))
    if k[delta - 1] > 1:
        return CaseTag(CASE2_SAME, rho_k, delta, beta, alpha, gamma, epsilon=eps(gamma))
    xi = next(i for i in range(delta + 1, len(k) + 1) if k[i - 1])
    eta = q.tail(_chosen(chosen, tq, xi))
    if eta != delta:
        return CaseTag(CASE2A, rho_k, delta, beta, alpha, gamma, xi, eta, eps(eta))
    if s[delta - 1] > 2:
        return CaseTag(CASE2B_BIG, rho_k, delta, beta, alpha, gamma, xi, eta)
    epsilon = None
    if gamma == alpha != 0 and rho_k != _chosen(chosen, tq, delta):
        epsilon = q.tail(_chosen(chosen, tq, gamma))
    return CaseTag(CASE2B_S2, rho_k, delta, beta, alpha, gamma, xi, eta, epsilon)


def _relation_rays(rho: int, tag: CaseTag, chosen: Mapping, tq: TiltingQuiver) -> tuple[int, ...] | None:
    """Ordered rays (rho_1, rho_2, ...) of the witness for ``rho`` at the tagged vertex."""
    q = tq.base
    s = tq.s
    rk = tag.rho_k
    alpha, beta = tag.alpha, tag.beta
    lam, mu = q.tail(rho), q.head(rho)

    def c(j):
        return _chosen(chosen, tq, j)

    def s2(j):
        return j != 0 and s[j - 1] == 2

    if tag.variant == NOTHING_TO_PROVE or rho == rk:
        return None
    if tag.variant == BASE_CHAIN:
        return (rk, rho)
    if tag.variant == CASE2B_S2:
        d, x, g = tag.delta, tag.xi, tag.gamma
        if rho == c(d):
            if g == alpha != 0:
                return (rk, rho, c(x), c(g))
            return (rk, rho, c(x))
        if mu > d:
            return (rk, rho, c(alpha)) if lam == alpha and s2(alpha) else (rk, rho)
        return (rk, rho, c(x), c(alpha)) if lam == alpha and s2(alpha) else (rk, rho, c(x))

    D, G = tag.pivot
    P = c(D)
    if rho == P:
        return (rk, P, c(G)) if G == alpha and s2(G) else (rk, P)
    if mu != beta:
        return (rho, rk, c(alpha)) if lam == alpha and s2(alpha) else (rho, rk)
    return (P, rho, c(G)) if lam == G and s2(G) else (P, rho)


def build_witness(k: Vertex, rays: Sequence[int], tq: TiltingQuiver, target: int | None = None) -> RelationWitness:
    """Paths ``rho_1, mid, rho_2`` and ``rho_2, mid, rho_1`` into ``k``.

    ``mid`` is empty, ``(rho_3,)`` or ``(rho_4, rho_3)`` for a rectangle,
    hexagon or octagon.
    """
    k = tuple(k)
    r1, r2, *rest = rays
    mid = list(reversed(rest))
    top = tq.rank[k]
    target = r2 if target is None else target
    paths = []
    walks = []
    for seq in ([r1, *mid, r2], [r2, *mid, r1]):
        v = k
        arrows = []
        verts = [k]
        for ray in reversed(seq):
            idx = tq.arrow_index(ray, v)
            tail = tuple(a - b for a, b in zip(v, displacement(tq.base, ray)))
            if idx is None or not in_cuboid(tail, tq.s) or tq.rank.get(tail, top + 1) > top:
                raise WitnessConstructionFailed(k, target, tail)
            arrows.append(idx)
            v = tail
            verts.append(v)
        paths.append(tuple(reversed(arrows)))
        walks.append(verts[::-1])
    cycle = tuple(walks[0]) + tuple(reversed(walks[1][1:-1]))
    return RelationWitness(
        SHAPES[len(rays)], tuple(rays), target, paths[0], paths[1], cycle,
        Binomial.make(tq, paths[0], paths[1]),
    )


def relation_witness(k: Vertex, rho: int, tag: CaseTag, chosen: Mapping[Vertex, int], tq: TiltingQuiver) -> RelationWitness | None:
    """Witness for the value of the arrow ``a^k_rho``; ``None`` when none is required."""
    rays = _relation_rays(rho, tag, chosen, tq)
    if rays is None:
        return None
    return build_witness(k, rays, tq, target=rho)


def derives(wit: RelationWitness, established, base_values: Mapping[int, object]) -> bool:
    """Whether the relation pins down ``a^k_target`` from an established arrow.

    With every arrow below ``k`` at its base value the relation reads
    ``w_X * M * w^k_target = w_target * M * w^k_X`` for the partner ray ``X``
    and ``M`` the product over the middle rays; it determines the target
    when ``X`` is established and ``w_X * M`` is nonzero.
    """
    if wit.partner not in established or not base_values[wit.partner]:
        return False
    return all(base_values[r] for r in wit.middle)


def search_witness(k: Vertex, target: int, established: Sequence[int], helpers: Sequence[int],
                   base_values: Mapping[int, object], tq: TiltingQuiver) -> RelationWitness | None:
    """Smallest relation (rectangle, then hexagon, then octagon) deriving ``target``."""
    middles = [()] + [(y,) for y in helpers] + [(y, z) for y in helpers for z in helpers]
    for mid in middles:
        for x in established:
            if x == target:
                continue
            try:
                wit = build_witness(k, (x, target, *mid), tq, target=target)
            except WitnessConstructionFailed:
                continue
            wit = RelationWitness(wit.shape, wit.rays, wit.target, wit.path_a, wit.path_b,
                                  wit.cycle, wit.binomial, source="search")
            if derives(wit, established, base_values):
                return wit
    return None


def certify_vertex(k: Vertex, tag: CaseTag, chosen: Mapping[Vertex, int], tq: TiltingQuiver,
                   base_values: Mapping[int, object]) -> list[RelationWitness]:
    """One witness per incoming ray other than ``rho_k``.

    The case analysis supplies the witness where its paths fit inside
    ``Q'(k)``; otherwise a search over small relations is used.
    """
    k = tuple(k)
    rays = [tq.arrows[i].ray for i in tq.incoming[k]]
    pending = [r for r in rays if r != tag.rho_k]
    if not pending:
        return []
    if tag.variant == NOTHING_TO_PROVE:
        return []
    pivot = tag.pivot
    if pivot is not None:
        first = _chosen(chosen, tq, pivot[0])
    elif tag.variant == CASE2B_S2:
        first = _chosen(chosen, tq, tag.delta)
    else:
        first = None
    if first in pending:
        pending.remove(first)
        pending.insert(0, first)

    established = [tag.rho_k]
    out = []
    planned = {}
    for r in pending:
        try:
            planned[r] = relation_witness(k, r, tag, chosen, tq)
        except WitnessConstructionFailed:
            planned[r] = None
    helpers = sorted({r for r in tq.base.rays if base_values[r]},
                     key=lambda r: (r not in set(chosen.values()), r))
    while pending:
        ready = [r for r in pending if planned[r] is not None and derives(planned[r], established, base_values)]
        if ready:
            for r in ready:
                out.append(planned[r])
                established.append(r)
                pending.remove(r)
            continue
        # the case analysis is stuck for every remaining ray
        r = pending[0]
        wit = search_witness(k, r, established, helpers, base_values, tq)
        if wit is None:
            raise WitnessConstructionFailed(k, r, k)
        out.append(wit)
        established.append(r)
        pending.remove(r)
    return out


def witness_is_sound(wit: RelationWitness, k: Vertex, tq: TiltingQuiver) -> bool:
    """Both paths composable inside ``Q'(k)``, with the same endpoints and rays."""
    top = tq.rank[tuple(k)]
    for p in (wit.path_a, wit.path_b):
        arrows = [tq.arrows[i] for i in p]
        if any(a.head != b.tail for a, b in zip(arrows, arrows[1:])):
            return False
        if any(tq.rank[a.head] > top for a in arrows):
            return False
    a = [tq.arrows[i] for i in wit.path_a]
    b = [tq.arrows[i] for i in wit.path_b]
    return (
        a[0].tail == b[0].tail
        and a[-1].head == b[-1].head == tuple(k)
        and Counter(x.ray for x in a) == Counter(x.ray for x in b)
        and wit.path_a != wit.path_b
    )


def _violated_relation_at(tq: TiltingQuiver, k: Vertex, values, one):
    """Search pairs of paths ending at ``k`` for a binomial not vanishing at ``values``."""
    groups = defaultdict(list)
    stack = [(i,) for i in tq.incoming[k]]
    while stack:
        p = stack.pop()
        first = tq.arrows[p[0]]
        groups[(first.tail, tuple(sorted(tq.arrows[i].ray for i in p)))].append(p)
        for i in tq.incoming[first.tail]:
            stack.append((i,) + p)
    best = None
    for key in sorted(groups, key=lambda kv: (len(kv[1]), kv[1], tq.rank[kv[0]])):
        paths = sorted(groups[key], key=lambda p: tuple(sorted(p)))
        for other in paths[1:]:
            b = Binomial.make(tq, paths[0], other)
            val = b.evaluate(values, one)
            if val:
                return b, val
    return best


def smallest_ray(vertex: Vertex, rays: Sequence[int]) -> int:
    return min(rays)


def normalize(w: Point, certify: bool = False, chooser: Chooser | None = None) -> NormalizationResult:
    """Compute the torus element taking ``w`` to ``v_point(w)``.

    ``chooser`` picks ``rho(k)`` among the rays of incoming arrows that are
    nonzero and have nonzero base value; the default takes the smallest.
    """
    tq = w.tq
    F = w.field
    one = F.one
    bad = unstable_vertex(w)
    if bad is not None:
        raise UnstableInput(bad)
    chooser = chooser or smallest_ray
    rank = tq.rank
    base = tq.base_arrow_of
    tau = [one] * len(tq.vertices)
    current = list(w.values)
    chosen: dict[Vertex, int] = {}
    trace = []
    base_values = {r: w.values[tq.base_arrow(r)] for r in tq.base.rays}

    def _consistent(k):
        return all(current[i] == w.values[base[i]] for i in tq.incoming[k])

    for k in tq.vertices[1:]:
        inc = tq.incoming[k]
        pre = {i: w.values[i] / tau[rank[tq.arrows[i].tail]] for i in inc}
        nonzero = [i for i in inc if pre[i]]
        usable = [i for i in nonzero if w.values[base[i]]]
        if not usable:
            raise ZeroReference(k, tq.arrows[nonzero[0]].ray)
        by_ray = {tq.arrows[i].ray: i for i in usable}
        rho_k = chooser(k, sorted(by_ray))
        sel = by_ray[rho_k]
        t_k = w.values[base[sel]] / pre[sel]
        tau[rank[k]] = t_k
        for i in inc:
            current[i] = t_k * pre[i]
        chosen[k] = rho_k

        tag = classify_case(k, rho_k, chosen, tq)
        witnesses = []
        if certify:
            try:
                witnesses = certify_vertex(k, tag, chosen, tq, base_values)
            except WitnessConstructionFailed:
                if _consistent(k):
                    raise

        for i in inc:
            expected = w.values[base[i]]
            if current[i] != expected:
                ray = tq.arrows[i].ray
                binom = val = None
                for wit in sorted(witnesses, key=lambda x: x.target != ray):
                    v = wit.binomial.evaluate(w.values, one)
                    if v:
                        binom, val = wit.binomial, v
                        break
                else:
                    found = _violated_relation_at(tq, k, w.values, one)
                    if found:
                        binom, val = found
                raise InconsistentAtVertex(k, ray, expected, current[i], binom, val, fmt=F.fmt)

        if certify:
            for wit in witnesses:
                if not witness_is_sound(wit, k, tq) or wit.binomial.evaluate(w.values, one):
                    raise WitnessConstructionFailed(k, wit.target, k)
        trace.append(VertexTrace(k, rho_k, t_k, tag, witnesses))

    torus = TorusElement(tq, F, tau)
    return NormalizationResult(torus, Point(tq, F, current), trace)
