"""Points of the representation space, the torus action and stability tests."""
from __future__ import annotations

import random
from typing import Iterable, Sequence

from .errors import FieldError, GaugeError, QFVError, ZeroScaling
from .fields import QQ, parse_field
from .ideals import Binomial
from .tilting import TiltingQuiver, Vertex, format_vertex, parse_arrow_id, parse_vertex


class Point:
    """An assignment of a field value to every arrow, in canonical arrow order."""

    __slots__ = ("tq", "field", "values")

    def __init__(self, tq: TiltingQuiver, field, values: Iterable):
        self.tq = tq
        self.field = field
        self.values = tuple(field(v) for v in values)
        if len(self.values) != len(tq.arrows):
            raise QFVError(f"point has {len(self.values)} values for {len(tq.arrows)} arrows")

    def __getitem__(self, key):
        if isinstance(key, str):
            key = self.tq.index[key]
        return self.values[key]

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return self.field == other.field and self.tq == other.tq and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        body = ", ".join(f"{a.id}={self.field.fmt(v)}" for a, v in zip(self.tq.arrows, self.values))
        return f"Point({self.field.name}: {body})"

    def restrict(self, sub: TiltingQuiver) -> "Point":
        """Coordinate projection onto the arrows of a truncation ``sub``."""
        return Point(sub, self.field, [self[a.id] for a in sub.arrows])

    def to_json(self) -> dict:
        return {
            "field": self.field.name,
            "values": {a.id: self.field.fmt(v) for a, v in zip(self.tq.arrows, self.values)},
        }


def point_from_json(tq: TiltingQuiver, data: dict) -> Point:
    field = parse_field(data.get("field", "Q"))
    given = data["values"]
    if isinstance(given, list):
        return Point(tq, field, given)
    vals = [None] * len(tq.arrows)
    for key, v in given.items():
        ray, head = parse_arrow_id(key)
        idx = tq.arrow_index(ray, head)
        if idx is None:
            raise QFVError(f"{key} is not an arrow of the tilting quiver")
        vals[idx] = v
    missing = [a.id for a, v in zip(tq.arrows, vals) if v is None]
    if missing:
        raise QFVError(f"point is missing values for {missing[:3]}")
    return Point(tq, field, vals)


def point_from_rows(tq: TiltingQuiver, field, rows: Sequence[Sequence]) -> Point:
    """Build a point from ``rows[m-1][r-1]`` = value at ``a^m_r`` (one-vertex-chain quivers)."""
    vals = [field(rows[a.head[0] - 1][a.ray - 1]) for a in tq.arrows]
    return Point(tq, field, vals)


class TorusElement:
    """A nonzero scalar per vertex, normalised by ``t(e_0) = 1``."""

    __slots__ = ("tq", "field", "values")

    def __init__(self, tq: TiltingQuiver, field, values: Iterable):
        self.tq = tq
        self.field = field
        self.values = tuple(field(v) for v in values)
        if len(self.values) != len(tq.vertices):
            raise QFVError("torus element has the wrong number of entries")
        for v, x in zip(tq.vertices, self.values):
            if not x:
                raise ZeroScaling(v)
        if self.values[0] != field.one:
            raise GaugeError("torus elements are gauge-fixed by t(e_0) = 1")

    @classmethod
    def identity(cls, tq: TiltingQuiver, field) -> "TorusElement":
        return cls(tq, field, [field.one] * len(tq.vertices))

    def __getitem__(self, vertex):
        return self.values[self.tq.rank[tuple(vertex)]]

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        if self.field != other.field:
            raise FieldError("torus elements over different fields")
        return TorusElement(self.tq, self.field, [a * b for a, b in zip(self.values, other.values)])

    def inverse(self) -> "TorusElement":
        return TorusElement(self.tq, self.field, [self.field.one / x for x in self.values])

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.field == other.field and self.values == other.values

    def __repr__(self):
        return "TorusElement(" + ", ".join(
            f"{format_vertex(v)}={self.field.fmt(x)}" for v, x in zip(self.tq.vertices, self.values)
        ) + ")"

    def to_json(self) -> dict:
        return {
            "field": self.field.name,
            "values": {format_vertex(v): self.field.fmt(x) for v, x in zip(self.tq.vertices, self.values)},
        }


def torus_from_json(tq: TiltingQuiver, data: dict) -> TorusElement:
    field = parse_field(data.get("field", "Q"))
    vals = {parse_vertex(k): v for k, v in data["values"].items()}
    return TorusElement(tq, field, [vals.get(v, 1) for v in tq.vertices])


def torus_act(t: TorusElement, w: Point) -> Point:
    """Conjugation: ``w_a -> t_head * w_a / t_tail``."""
    if t.field != w.field:
        raise FieldError("torus element and point over different fields")
    if t.tq.vertices != w.tq.vertices:
        raise QFVError("torus element and point live on different quivers")
    rank = w.tq.rank
    tv = t.values
    return Point(
        w.tq,
        w.field,
        [tv[rank[a.head]] * x / tv[rank[a.tail]] for a, x in zip(w.tq.arrows, w.values)],
    )


def v_point(w: Point) -> Point:
    """Copy each base-arrow value onto every translate of the same ray."""
    base = w.tq.base_arrow_of
    return Point(w.tq, w.field, [w.values[b] for b in base])


def is_base_constant(w: Point) -> bool:
    base = w.tq.base_arrow_of
    return all(x == w.values[b] for x, b in zip(w.values, base))


def evaluate_generators(w: Point, gens: Sequence[Binomial]) -> Binomial | None:
    """First binomial not vanishing at ``w``, or ``None`` if ``w`` lies on all of them."""
    one = w.field.one
    for g in gens:
        if g.evaluate(w.values, one):
            return g
    return None


def unstable_vertex(w: Point) -> Vertex | None:
    """First vertex ``j != e_0`` all of whose incoming arrows vanish."""
    for v in w.tq.vertices[1:]:
        if not any(w.values[i] for i in w.tq.incoming[v]):
            return v
    return None


def is_unstable(w: Point) -> bool:
    return unstable_vertex(w) is not None


def is_zero_generated(w: Point) -> bool:
    """Every vertex is reachable from e_0 through arrows with nonzero value."""
    tq = w.tq
    reached = {tq.origin}
    # tails precede heads in the total order, so one ordered sweep suffices
    for i, a in enumerate(tq.arrows):
        if w.values[i] and a.tail in reached:
            reached.add(a.head)
    return len(reached) == len(tq.vertices)


def random_torus(tq: TiltingQuiver, field, rng: random.Random, base_trivial: bool = False) -> TorusElement:
    vals = []
    for v in tq.vertices:
        if v == tq.origin or (base_trivial and tq.is_base_vertex(v)):
            vals.append(field.one)
        else:
            vals.append(field.random(rng, nonzero=True))
    return TorusElement(tq, field, vals)


def random_base_values(tq: TiltingQuiver, field, rng: random.Random, zeros: float = 0.0) -> list:
    """Random values on the base arrows (indexed by ray), stable after repair.

    Each value is zeroed with probability ``zeros``; a base vertex left with
    no nonzero incoming arrow gets one of them restored.
    """
    q = tq.base
    vals = {r: field.random(rng, nonzero=True) for r in q.rays}
    for r in q.rays:
        if rng.random() < zeros:
            vals[r] = field.zero
    for j in range(1, q.vertex_count):
        into = q.rays_into(j)
        if not any(vals[r] for r in into):
            vals[rng.choice(into)] = field.random(rng, nonzero=True)
    return [vals[r] for r in q.rays]


def base_constant_point(tq: TiltingQuiver, field, ray_values: Sequence) -> Point:
    return Point(tq, field, [ray_values[a.ray - 1] for a in tq.arrows])


def sample_point(tq: TiltingQuiver, rng: random.Random, field=QQ, zeros: float = 0.0) -> Point:
    """A random torus translate of a random stable v-point."""
    v = base_constant_point(tq, field, random_base_values(tq, field, rng, zeros))
    return torus_act(random_torus(tq, field, rng), v)
