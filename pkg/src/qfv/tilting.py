"""The tilting quiver: cuboid vertices, translated arrows and truncations."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .errors import QFVError, QuiverError
from .quiver import Quiver, is_topologically_labelled, quiver_from_json, rank_sums

Vertex = tuple[int, ...]


def order_key(m: Sequence[int]) -> tuple[int, ...]:
    # k < m iff k_i < m_i at the largest index where they differ
    return tuple(reversed(m))


def compare_vertices(k: Sequence[int], m: Sequence[int]) -> int:
    """Return -1, 0 or 1 as ``k`` is less than, equal to or greater than ``m``."""
    if len(k) != len(m):
        raise ValueError("vertices from different cuboids")
    for a, b in zip(reversed(k), reversed(m)):
        if a != b:
            return -1 if a < b else 1
    return 0


def format_vertex(m: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in m) + ")"


def parse_vertex(text: str) -> Vertex:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise QFVError(f"malformed vertex {text!r}")
    body = text[1:-1].strip()
    if not body:
        return ()
    return tuple(int(x) for x in body.split(","))


def unit(ell: int, i: int) -> Vertex:
    """The vertex e_i; e_0 is the origin."""
    v = [0] * ell
    if i:
        v[i - 1] = 1
    return tuple(v)


def displacement(q: Quiver, ray: int) -> Vertex:
    """e_head - e_tail for the base arrow of ``ray``."""
    d = [0] * q.ell
    t, h = q.arrows[ray - 1]
    d[h - 1] += 1
    if t:
        d[t - 1] -= 1
    return tuple(d)


def in_cuboid(m: Sequence[int], s: Sequence[int]) -> bool:
    return all(0 <= x < b for x, b in zip(m, s))


def cuboid_vertices(s: Sequence[int]) -> list[Vertex]:
    verts = [tuple(reversed(c)) for c in product(*(range(b) for b in reversed(s)))]
    return verts


@dataclass(frozen=True)
class TiltingArrow:
    ray: int
    head: Vertex
    tail: Vertex

    @property
    def id(self) -> str:
        return f"r{self.ray}@{format_vertex(self.head)}"


def parse_arrow_id(text: str) -> tuple[int, Vertex]:
    try:
        ray, vertex = text.split("@", 1)
        if not ray.startswith("r"):
            raise ValueError
        return int(ray[1:]), parse_vertex(vertex)
    except ValueError as exc:
        raise QFVError(f"malformed arrow id {text!r}") from exc


class TiltingQuiver:
    """Vertices sorted by the total order; arrows sorted by (head, ray)."""

    def __init__(self, base: Quiver, vertices: Iterable[Vertex], arrows: Iterable[TiltingArrow]):
        self.base = base
        self.s = rank_sums(base)
        self.vertices: tuple[Vertex, ...] = tuple(sorted(vertices, key=order_key))
        self.rank = {v: i for i, v in enumerate(self.vertices)}
        self.arrows: tuple[TiltingArrow, ...] = tuple(
            sorted(arrows, key=lambda a: (self.rank[a.head], a.ray))
        )
        self.index = {a.id: i for i, a in enumerate(self.arrows)}
        self._by_key = {(a.ray, a.head): i for i, a in enumerate(self.arrows)}
        self.incoming: dict[Vertex, list[int]] = {v: [] for v in self.vertices}
        self.outgoing: dict[Vertex, list[int]] = {v: [] for v in self.vertices}
        for i, a in enumerate(self.arrows):
            self.incoming[a.head].append(i)
            self.outgoing[a.tail].append(i)

    @property
    def ell(self) -> int:
        return self.base.ell

    @property
    def origin(self) -> Vertex:
        return self.vertices[0]

    def arrow_index(self, ray: int, head: Vertex) -> int | None:
        return self._by_key.get((ray, tuple(head)))

    def base_vertices(self) -> list[Vertex]:
        return [unit(self.ell, i) for i in range(self.base.vertex_count)]

    def is_base_vertex(self, m: Vertex) -> bool:
        return sum(m) <= 1

    def base_arrow(self, ray: int) -> int:
        """Index of the copy of the base arrow ``a_ray`` (head at e_h)."""
        return self._by_key[(ray, unit(self.ell, self.base.head(ray)))]

    @cached_property
    def base_arrow_of(self) -> tuple[int, ...]:
        return tuple(self.base_arrow(a.ray) for a in self.arrows)

    def __len__(self):
        return len(self.arrows)

    def __eq__(self, other):
        if not isinstance(other, TiltingQuiver):
            return NotImplemented
        return (self.base, self.vertices, self.arrows) == (other.base, other.vertices, other.arrows)

    def __repr__(self):
        return f"TiltingQuiver(s={self.s}, |Q'_0|={len(self.vertices)}, |Q'_1|={len(self.arrows)})"

    def to_json(self) -> dict:
        return {
            "quiver": self.base.to_json(),
            "s": list(self.s),
            "vertices": [list(v) for v in self.vertices],
            "arrows": [
                {"id": a.id, "ray": a.ray, "head": list(a.head), "tail": list(a.tail)}
                for a in self.arrows
            ],
        }


def tilting_arrows(q: Quiver) -> TiltingQuiver:
    """Build the full tilting quiver: every cuboid-fitting translate of every base arrow.

    The vertex order only makes arrows increasing when every base arrow goes
    from a smaller to a larger label; other labellings are refused (see
    ``relabel_topologically``).
    """
    if not is_topologically_labelled(q):
        t, h = next(a for a in q.arrows if a[0] >= a[1])
        raise QuiverError(
            f"arrow {t}->{h} decreases the vertex label; relabel the quiver topologically first"
        )
    s = rank_sums(q)
    verts = cuboid_vertices(s)
    arrows = []
    for ray in q.rays:
        d = displacement(q, ray)
        for m in verts:
            tail = tuple(x - y for x, y in zip(m, d))
            if in_cuboid(tail, s):
                arrows.append(TiltingArrow(ray, m, tail))
    return TiltingQuiver(q, verts, arrows)


def truncate(tq: TiltingQuiver, k: Sequence[int]) -> TiltingQuiver:
    """The complete subquiver on the vertices ``m <= k``."""
    k = tuple(k)
    if k not in tq.rank:
        raise QFVError(f"vertex {format_vertex(k)} is not in the cuboid")
    top = tq.rank[k]
    verts = [v for v in tq.vertices if tq.rank[v] <= top]
    kept = set(verts)
    arrows = [a for a in tq.arrows if a.head in kept and a.tail in kept]
    return TiltingQuiver(tq.base, verts, arrows)


def tilting_from_json(data: dict) -> TiltingQuiver:
    """Re-import an exported tilting quiver, checking it against its base quiver."""
    q = quiver_from_json(data["quiver"])
    full = tilting_arrows(q)
    verts = [tuple(v) for v in data["vertices"]]
    arrows = []
    for entry in data["arrows"]:
        idx = full.arrow_index(entry["ray"], tuple(entry["head"]))
        if idx is None:
            raise QFVError(f"arrow r{entry['ray']}@{format_vertex(entry['head'])} is not a translate")
        arrows.append(full.arrows[idx])
    unknown = [v for v in verts if v not in full.rank]
    if unknown:
        raise QFVError(f"vertex {format_vertex(unknown[0])} is outside the cuboid")
    tq = TiltingQuiver(q, verts, arrows)
    kept = set(verts)
    for a in tq.arrows:
        if a.head not in kept or a.tail not in kept:
            raise QFVError(f"arrow {a.id} leaves the vertex set")
    return tq
