"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with its measured runtime
and limit; the lines are repeated in the pytest terminal summary.  Run
``python3 tests/test_acceptance.py`` for the lines alone.  All comparisons
are exact (tolerance zero).
"""
from __future__ import annotations

import itertools
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import SEVEN_ARROWS, TOY  # noqa: E402
from qfv.bruteforce import theorem_oracle  # noqa: E402
from qfv.errors import InconsistentAtVertex  # noqa: E402
from qfv.fields import QQ, PrimeField  # noqa: E402
from qfv.ideals import ideal_R_generators, kernel_basis, lattice_binomials, pi_matrix  # noqa: E402
from qfv.intlinalg import hermite_normal_form, mat_vec, rational_rank  # noqa: E402
from qfv.normalize import normalize, witness_is_sound  # noqa: E402
from qfv.points import (  # noqa: E402
    Point,
    TorusElement,
    evaluate_generators,
    is_unstable,
    is_zero_generated,
    point_from_rows,
    random_torus,
    sample_point,
    torus_act,
    v_point,
)
from qfv.quiver import beilinson, validate_quiver  # noqa: E402
from qfv.tilting import compare_vertices, tilting_arrows, truncate  # noqa: E402

pytestmark = pytest.mark.acceptance

RESULTS: list[str] = []


def report(number: int, title: str, limit: float):
    """Run the wrapped check, time it, print one line, then assert."""
    def wrap(check):
        def test():
            t0 = time.perf_counter()
            try:
                detail = check()
                ok, err = True, None
            except AssertionError as exc:
                ok, detail, err = False, str(exc) or "assertion failed", exc
            elapsed = time.perf_counter() - t0
            in_time = elapsed < limit
            status = "PASS" if ok and in_time else "FAIL"
            line = f"[{status}] criterion {number}: {title} ({elapsed:.2f}s, limit {limit:g}s) {detail}"
            RESULTS.append(line)
            print(line)
            if err is not None:
                raise err
            assert in_time, f"took {elapsed:.2f}s, limit {limit}s"
        test.__name__ = check.__name__
        return test
    return wrap


def _rank_one_relations(tq, n):
    out = set()
    for m in range(1, n):
        for r, s in itertools.combinations(range(1, n + 2), 2):
            a = (tq.arrow_index(s, (m + 1,)), tq.arrow_index(r, (m,)))
            b = (tq.arrow_index(r, (m + 1,)), tq.arrow_index(s, (m,)))
            out.add(frozenset((tuple(sorted(a)), tuple(sorted(b)))))
    return out


@report(1, "Beilinson generators equal the rank-one relation set", 1.0)
def test_criterion_1_beilinson_exactness():
    counts = []
    for n, expected in ((2, 3), (3, 12)):
        tq = tilting_arrows(beilinson(n))
        gens = ideal_R_generators(tq)
        assert len(gens) == expected, f"n={n}: {len(gens)} generators, expected {expected}"
        assert {g.key() for g in gens} == _rank_one_relations(tq, n), f"n={n}: generator set differs"
        counts.append(len(gens))
    return f"counts {counts}"


@report(2, "seven-arrow example structure", 1.0)
def test_criterion_2_example_structure():
    tq = tilting_arrows(validate_quiver(4, SEVEN_ARROWS))
    assert len(tq.vertices) == 12, f"{len(tq.vertices)} vertices"
    assert len(tq.arrows) == 41, f"{len(tq.arrows)} arrows"
    tails = sorted(tq.arrows[i].tail for i in tq.incoming[(0, 1, 1)])
    assert tails == sorted([(1, 1, 0), (0, 0, 1), (1, 0, 1)]), f"tails into (0,1,1): {tails}"
    return "12 vertices, 41 arrows, 3 arrows into (0,1,1)"


@report(3, "exhaustive finite-field normalization oracle", 30.0)
def test_criterion_3_theorem_oracle():
    cases = [
        ("P1", beilinson(1), 3), ("P2", beilinson(2), 3), ("toy", validate_quiver(3, TOY), 3),
        ("P1", beilinson(1), 5), ("P2", beilinson(2), 5),
    ]
    summary = []
    for name, q, p in cases:
        rep = theorem_oracle(q, p, label=name)
        assert rep.failures == 0, f"{name}/F{p}: {rep.failures} failures {rep.failure_exemplars[:1]}"
        assert rep.successes == rep.variety_stable, f"{name}/F{p}: counts inconsistent"
        assert rep.lattice_violations == 0, f"{name}/F{p}: {rep.lattice_violations} lattice violations"
        summary.append(f"{name}/F{p}={rep.variety_stable}")
    p1 = theorem_oracle(beilinson(1), 3)
    assert p1.variety_stable == 8, f"P1/F3 has {p1.variety_stable} stable points"
    p2 = theorem_oracle(beilinson(2), 2)
    assert p2.variety_stable == 7, f"P2/F2 has {p2.variety_stable} stable points"
    assert p2.failures == 0
    return "0 failures; " + ", ".join(summary) + "; P2/F2=7"


@report(4, "certification soundness on 1000 rational points", 60.0)
def test_criterion_4_certification():
    tq = tilting_arrows(validate_quiver(4, SEVEN_ARROWS))
    one = QQ.one
    top = {k: tq.rank[k] for k in tq.vertices}
    n_wit = 0
    for seed in range(1000):
        rng = random.Random(seed)
        w = sample_point(tq, rng, zeros=rng.choice([0.0, 0.2, 0.4, 0.6]))
        res = normalize(w, certify=True)
        assert torus_act(res.torus, w) == res.normalized, f"seed {seed}: transport fails"
        for rec in res.trace:
            for wit in rec.witnesses:
                n_wit += 1
                assert witness_is_sound(wit, rec.vertex, tq), f"seed {seed}: unsound witness at {rec.vertex}"
                assert all(top[v] <= top[rec.vertex] for v in wit.cycle), f"seed {seed}: witness leaves Q'(k)"
                assert wit.binomial.evaluate(w.values, one) == 0, f"seed {seed}: witness binomial nonzero"
    return f"1000 points, {n_wit} witnesses checked"


@report(5, "unstable iff not 0-generated on all F3 points", 10.0)
def test_criterion_5_stability_equivalence():
    F = PrimeField(3)
    total = 0
    for q in (beilinson(2), validate_quiver(3, TOY)):
        tq = tilting_arrows(q)
        for vals in itertools.product(range(3), repeat=len(tq.arrows)):
            w = Point(tq, F, vals)
            assert is_unstable(w) == (not is_zero_generated(w)), f"exception at {vals}"
            total += 1
    return f"{total} points, 0 exceptions"


@report(6, "negative certificate on ((1,2,3),(2,4,7))", 1.0)
def test_criterion_6_negative_certificate():
    tq = tilting_arrows(beilinson(2))
    w = point_from_rows(tq, QQ, [(1, 2, 3), (2, 4, 7)])
    try:
        normalize(w, certify=True)
    except InconsistentAtVertex as exc:
        assert exc.binomial is not None, "no binomial attached"
        assert exc.binomial.key() in _rank_one_relations(tq, 2), "binomial is not a rank-one relation"
        assert exc.value == 1, f"binomial evaluates to {exc.value}"
        return f"{exc.binomial} evaluates to 1"
    raise AssertionError("no InconsistentAtVertex raised")


@report(7, "integer kernel of pi", 1.0)
def test_criterion_7_integer_kernel():
    tq = tilting_arrows(beilinson(2))
    m = pi_matrix(tq)
    basis = kernel_basis(m)
    assert len(basis) == 2, f"kernel rank {len(basis)}"
    assert all(not any(mat_vec(m.entries, u)) for u in basis), "pi * u != 0"
    # independent checks: sympy's rational nullspace and Smith form (saturation)
    import sympy
    from sympy.matrices.normalforms import smith_normal_form
    assert len(sympy.Matrix(m.entries).nullspace()) == 2
    snf = smith_normal_form(sympy.Matrix(basis), domain=sympy.ZZ)
    assert all(abs(snf[i, i]) == 1 for i in range(2)), "kernel basis is not saturated"
    assert len(tq.arrows) - rational_rank(m.entries) == 2
    assert hermite_normal_form([list(u) for u in basis]) == [list(u) for u in basis]
    assert kernel_basis(pi_matrix(tilting_arrows(beilinson(1)))) == [], "P1 kernel not trivial"
    return "rank 2 with pi*u = 0; P1 trivial"


@report(8, "invariant suite over 100 seeds each", 30.0)
def test_criterion_8_invariants():
    seven = tilting_arrows(validate_quiver(4, SEVEN_ARROWS))
    small = truncate(seven, (1, 1, 1))
    gens = ideal_R_generators(small) + lattice_binomials(small, kernel_basis(pi_matrix(small)))
    for seed in range(100):
        rng = random.Random(seed)
        n = rng.randint(2, 4)
        arrows = [(rng.randrange(h), h) for h in range(1, n) for _ in range(rng.randint(2, 3))]
        tq = tilting_arrows(validate_quiver(n, arrows))
        assert all(compare_vertices(a.tail, a.head) == -1 for a in tq.arrows), f"seed {seed}: order"

        w = sample_point(seven, rng, zeros=0.3)
        t, u = random_torus(seven, QQ, rng), random_torus(seven, QQ, rng)
        assert torus_act(u, torus_act(t, w)) == torus_act(u * t, w), f"seed {seed}: composition"
        assert torus_act(TorusElement.identity(seven, QQ), w) == w, f"seed {seed}: identity"
        v = v_point(w)
        assert v_point(v) == v, f"seed {seed}: v_point not idempotent"

        x = sample_point(small, rng, zeros=0.3)
        assert evaluate_generators(v_point(x), gens) is None, f"seed {seed}: v-point off the variety"
        assert evaluate_generators(x, gens) is None, f"seed {seed}: torus translate off the variety"
    return "monotonicity, group laws, idempotence, vanishing: 100 seeds each"


if __name__ == "__main__":
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
