"""Input quivers: validation, rank sums and the dimension of the moduli space.

Vertices are ``0..l`` with ``0`` the unique source.  The arrow at position
``i`` of the input list is the ray ``i + 1``; this numbering is fixed and
used for tie-breaking everywhere downstream.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    ArrowOutOfRange,
    CycleDetected,
    DegenerateRank,
    Disconnected,
    NotUniqueSource,
    QuiverError,
)


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple[tuple[int, int], ...]

    @property
    def ell(self) -> int:
        """Number of non-source vertices."""
        return self.vertex_count - 1

    @property
    def rays(self) -> range:
        return range(1, len(self.arrows) + 1)

    def tail(self, ray: int) -> int:
        return self.arrows[ray - 1][0]

    def head(self, ray: int) -> int:
        return self.arrows[ray - 1][1]

    def rays_into(self, vertex: int) -> list[int]:
        return [r for r in self.rays if self.head(r) == vertex]

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "arrows": [list(a) for a in self.arrows]}


def _find_cycle(n: int, adj: list[list[int]]) -> list[int] | None:
    color = [0] * n
    parent = [-1] * n
    for root in range(n):
        if color[root]:
            continue
        stack = [(root, iter(adj[root]))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[v] = 2
                stack.pop()
            elif color[nxt] == 0:
                color[nxt] = 1
                parent[nxt] = v
                stack.append((nxt, iter(adj[nxt])))
            elif color[nxt] == 1:
                cycle = [v]
                while cycle[-1] != nxt:
                    cycle.append(parent[cycle[-1]])
                return cycle[::-1]
    return None


def validate_quiver(vertex_count: int, arrows: Iterable[Sequence[int]]) -> Quiver:
    """Check the standing assumptions and return a :class:`Quiver`.

    Conditions are tested in the order: endpoints in range, acyclicity,
    connectedness, unique source at 0, and ``s_i >= 2`` for every ``i >= 1``.
    The first failure is raised.
    """
    if not isinstance(vertex_count, int) or vertex_count < 1:
        raise QuiverError(f"vertex count must be a positive integer, got {vertex_count!r}")
    arrows = tuple((int(a[0]), int(a[1])) for a in arrows)
    for i, (t, h) in enumerate(arrows):
        if not (0 <= t < vertex_count and 0 <= h < vertex_count):
            raise ArrowOutOfRange(i, (t, h))

    adj: list[list[int]] = [[] for _ in range(vertex_count)]
    for t, h in arrows:
        adj[t].append(h)
    cycle = _find_cycle(vertex_count, adj)
    if cycle is not None:
        raise CycleDetected(cycle)

    neighbours: list[set[int]] = [set() for _ in range(vertex_count)]
    for t, h in arrows:
        neighbours[t].add(h)
        neighbours[h].add(t)
    seen = {0}
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for u in neighbours[v] - seen:
            seen.add(u)
            frontier.append(u)
    if len(seen) != vertex_count:
        raise Disconnected(set(range(vertex_count)) - seen)

    indegree = Counter(h for _, h in arrows)
    if indegree[0]:
        raise NotUniqueSource(0)
    for j in range(1, vertex_count):
        if indegree[j] == 0:
            raise NotUniqueSource(j)
    for j in range(1, vertex_count):
        if indegree[j] < 2:
            raise DegenerateRank(j, indegree[j])
    return Quiver(vertex_count, arrows)


def quiver_from_json(data: dict) -> Quiver:
    try:
        return validate_quiver(data["vertices"], data["arrows"])
    except (KeyError, TypeError, IndexError) as exc:
        raise QuiverError(f"malformed quiver description: {exc!r}") from exc


def rank_sums(q: Quiver) -> tuple[int, ...]:
    """``s_i`` = number of arrows with head ``i``, for ``i = 1..l``."""
    counts = Counter(h for _, h in q.arrows)
    return tuple(counts[i] for i in range(1, q.vertex_count))


def dimension(q: Quiver) -> int:
    return sum(s - 1 for s in rank_sums(q))


def topological_order(q: Quiver) -> list[int]:
    """Kahn's algorithm; every arrow goes forward in the returned order."""
    indeg = Counter(h for _, h in q.arrows)
    out: dict[int, list[int]] = {v: [] for v in range(q.vertex_count)}
    for t, h in q.arrows:
        out[t].append(h)
    ready = [v for v in range(q.vertex_count) if indeg[v] == 0]
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for u in out[v]:
            indeg[u] -= 1
            if indeg[u] == 0:
                ready.append(u)
    return order


def beilinson(n: int) -> Quiver:
    """Two vertices joined by ``n + 1`` arrows; the variety is P^n."""
    return validate_quiver(2, [(0, 1)] * (n + 1))


def is_topologically_labelled(q: Quiver) -> bool:
    return all(t < h for t, h in q.arrows)


def relabel_topologically(q: Quiver) -> tuple[Quiver, list[int]]:
    """Rename vertices so every arrow points to a larger label.

    Returns the relabelled quiver and ``new_label[old]``.  Arrow positions,
    and hence ray numbers, are kept.
    """
    order = topological_order(q)
    new = [0] * q.vertex_count
    for label, v in enumerate(order):
        new[v] = label
    arrows = [(new[t], new[h]) for t, h in q.arrows]
    return validate_quiver(q.vertex_count, arrows), new
