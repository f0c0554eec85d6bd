import itertools
import json
import random

import pytest

from qfv.errors import QFVError, QuiverError
from qfv.quiver import beilinson, rank_sums, relabel_topologically, validate_quiver
from qfv.tilting import (
    cuboid_vertices,
    compare_vertices,
    format_vertex,
    parse_arrow_id,
    parse_vertex,
    tilting_arrows,
    tilting_from_json,
    truncate,
)

from conftest import BLUE, CYAN, GREEN, MAGENTA, RED


def _translate_oracle(q):
    """Independent double loop over (ray, m): count m with m_h >= 1 and, for t >= 1, m_t <= s_t - 2."""
    s = rank_sums(q)
    total = 0
    per_ray = {}
    for ray, (t, h) in enumerate(q.arrows, start=1):
        n = 0
        for m in itertools.product(*(range(x) for x in s)):
            if m[h - 1] < 1:
                continue
            if t >= 1 and m[t - 1] > s[t - 1] - 2:
                continue
            n += 1
        per_ray[ray] = n
        total += n
    return total, per_ray


def _random_quiver(rng, max_vertices=4):
    n = rng.randint(2, max_vertices)
    arrows = []
    for h in range(1, n):
        for _ in range(rng.randint(2, 3)):
            arrows.append((rng.randrange(h), h))
    return validate_quiver(n, arrows)


def test_cuboid_vertices_examples():
    v = cuboid_vertices((3, 2, 2))
    assert len(v) == 12
    assert v[:3] == [(0, 0, 0), (1, 0, 0), (2, 0, 0)]
    assert cuboid_vertices((4,)) == [(0,), (1,), (2,), (3,)]
    assert len(cuboid_vertices((2, 2))) == 4


def test_cuboid_sorted_by_total_order():
    v = cuboid_vertices((3, 2, 2))
    assert all(compare_vertices(a, b) == -1 for a, b in zip(v, v[1:]))


def test_compare_vertices():
    assert compare_vertices((1, 0, 1), (0, 1, 1)) == -1
    assert compare_vertices((2, 1, 0), (0, 0, 1)) == -1
    assert compare_vertices((1, 1, 0), (1, 1, 0)) == 0
    assert compare_vertices((0, 1, 1), (1, 0, 1)) == 1


def test_vertex_and_arrow_ids_round_trip():
    assert format_vertex((1, 0, 2)) == "(1,0,2)"
    assert parse_vertex("(1,0,2)") == (1, 0, 2)
    assert parse_vertex(" ( 2 ) ") == (2,)
    assert parse_arrow_id("r6@(0,1,1)") == (6, (0, 1, 1))


def test_arrow_counts(seven_tq, toy_tq):
    assert len(tilting_arrows(beilinson(2)).arrows) == 6
    assert len(seven_tq.arrows) == 41
    assert len(toy_tq.arrows) == 7


def test_seven_arrow_counts_by_colour(seven, seven_tq):
    total, per_ray = _translate_oracle(seven)
    assert total == 41
    by_ray = {r: sum(1 for a in seven_tq.arrows if a.ray == r) for r in seven.rays}
    assert by_ray == per_ray
    assert sum(by_ray[r] for r in (1, 2, 3)) == 24
    assert (by_ray[RED], by_ray[BLUE], by_ray[CYAN], by_ray[MAGENTA]) == (6, 4, 4, 3)


def test_incoming_at_011(seven_tq):
    inc = [seven_tq.arrows[i] for i in seven_tq.incoming[(0, 1, 1)]]
    assert sorted(a.tail for a in inc) == sorted([(1, 1, 0), (0, 0, 1), (1, 0, 1)])
    assert sorted(a.ray for a in inc) == [RED, BLUE, CYAN]
    assert sorted(seven_tq.arrows[i].ray for i in seven_tq.incoming[(1, 0, 0)]) == [GREEN, 2, 3]


def test_arrow_counts_match_oracle_on_random_quivers():
    rng = random.Random(11)
    for _ in range(40):
        q = _random_quiver(rng)
        assert len(tilting_arrows(q).arrows) == _translate_oracle(q)[0]


def test_monotone_and_inside_cuboid(seven_tq):
    s = seven_tq.s
    for a in seven_tq.arrows:
        assert compare_vertices(a.tail, a.head) == -1
        assert all(0 <= x < b for x, b in zip(a.tail, s))


def test_canonical_arrow_order(seven_tq):
    keys = [(seven_tq.rank[a.head], a.ray) for a in seven_tq.arrows]
    assert keys == sorted(keys)


def test_base_vertices_receive_base_arrows(seven, seven_tq):
    for j in range(1, seven.vertex_count):
        e = tuple(int(i == j - 1) for i in range(seven.ell))
        rays = sorted(seven_tq.arrows[i].ray for i in seven_tq.incoming[e])
        assert rays == seven.rays_into(j)


def test_truncate_examples(seven_tq):
    t = truncate(seven_tq, (0, 1, 1))
    assert len(t.vertices) == 10
    origin = truncate(seven_tq, (0, 0, 0))
    assert len(origin.vertices) == 1 and not origin.arrows
    assert truncate(seven_tq, (2, 1, 1)) == seven_tq


def test_truncate_outside_cuboid(seven_tq):
    with pytest.raises(QFVError):
        truncate(seven_tq, (3, 0, 0))


def test_truncation_nests(seven_tq):
    verts = seven_tq.vertices
    prev = None
    for k in verts:
        t = truncate(seven_tq, k)
        ids = {a.id for a in t.arrows}
        if prev is not None:
            assert set(prev.vertices) < set(t.vertices)
            assert {a.id for a in prev.arrows} <= ids
        prev = t


def test_json_round_trip(seven_tq):
    data = json.loads(json.dumps(seven_tq.to_json()))
    assert tilting_from_json(data) == seven_tq
    sub = truncate(seven_tq, (1, 1, 0))
    assert tilting_from_json(json.loads(json.dumps(sub.to_json()))) == sub


def test_reimport_rejects_foreign_arrow(seven_tq):
    data = seven_tq.to_json()
    data["arrows"].append({"ray": RED, "head": [0, 0, 1]})
    with pytest.raises(QFVError):
        tilting_from_json(data)


def test_non_topological_labels_are_refused():
    q = validate_quiver(3, [(0, 2), (0, 2), (2, 1), (0, 1)])
    with pytest.raises(QuiverError):
        tilting_arrows(q)
    r, _ = relabel_topologically(q)
    tq = tilting_arrows(r)
    assert all(compare_vertices(a.tail, a.head) == -1 for a in tq.arrows)
