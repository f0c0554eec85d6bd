"""Exhaustive finite-field oracle for the normalization theorem."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterator, Sequence

from . import _kernels
from .errors import QFVError, SearchTooLarge
from .fields import PrimeField
from .ideals import Binomial, ideal_R_generators, kernel_basis, lattice_binomials, pi_matrix
from .normalize import normalize
from .points import Point, is_base_constant, is_unstable, is_zero_generated, torus_act, v_point
from .quiver import Quiver
from .tilting import TiltingQuiver, tilting_arrows

DEFAULT_SEARCH_CAP = 10**8
MAX_EXEMPLARS = 5


def search_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("QFV_CAP")
    return int(env) if env else DEFAULT_SEARCH_CAP


def _check_size(p: int, nvars: int, cap: int):
    size = p**nvars
    if size > cap:
        raise SearchTooLarge(size, cap)
    return size


def enumerate_points(tq: TiltingQuiver, p: int, gens: Sequence[Binomial], cap: int | None = None,
                     jobs: int = 1) -> Iterator[Point]:
    """Every point of ``A^{Q'_1}(F_p)`` on which all ``gens`` vanish, in lexicographic order.

    With ``jobs > 1`` the scan is split by the value of the first coordinate
    and the ranges are merged back in order.
    """
    F = PrimeField(p)
    n = len(tq.arrows)
    _check_size(p, n, search_cap(cap))
    lhs = [list(g.lhs) for g in gens]
    rhs = [list(g.rhs) for g in gens]
    if jobs > 1 and n > 0:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_kernels.scan_variety, [p] * p, [n] * p, [lhs] * p, [rhs] * p,
                             [(v,) for v in range(p)])
            chunks = list(parts)
    else:
        chunks = [_kernels.scan_variety(p, n, lhs, rhs, ())]
    for chunk in chunks:
        for vals in chunk:
            yield Point(tq, F, vals)


def ambient_stability_scan(tq: TiltingQuiver, p: int, cap: int | None = None) -> tuple[int, int, int]:
    """``(points, unstable, mismatches)`` over all of ``A^{Q'_1}(F_p)``."""
    n = len(tq.arrows)
    _check_size(p, n, search_cap(cap))
    tails = [tq.rank[a.tail] for a in tq.arrows]
    heads = [tq.rank[a.head] for a in tq.arrows]
    return _kernels.stability_scan(p, n, len(tq.vertices), tails, heads)


@dataclass
class OracleReport:
    quiver: str
    field: str
    ambient: int
    variety: int = 0
    variety_unstable: int = 0
    variety_stable: int = 0
    successes: int = 0
    failures: int = 0
    lattice_violations: int = 0
    stability_violations: int = 0
    ambient_unstable: int = 0
    failure_exemplars: list = field(default_factory=list)
    lattice_exemplars: list = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return self.successes + self.failures == self.variety_stable

    def to_json(self) -> dict:
        return asdict(self)


def quiver_label(q: Quiver) -> str:
    return f"{q.vertex_count}:" + ",".join(f"{t}{h}" for t, h in q.arrows)


def theorem_oracle(q: Quiver, p: int, cap: int | None = None, jobs: int = 1, label: str | None = None,
                   certify: bool = True) -> OracleReport:
    """Normalize every point of ``V(I_R) \\ V(B)`` over F_p and audit the outcome.

    For each stable point the returned torus element must carry the input to
    the base-constant output, and every lattice binomial of ``I_Q`` must
    vanish at the input.  Stability is also cross-checked on the whole
    ambient space.
    """
    tq = tilting_arrows(q)
    F = PrimeField(p)
    n = len(tq.arrows)
    cap = search_cap(cap)
    ambient = _check_size(p, n, cap)
    gens = ideal_R_generators(tq)
    lattice = lattice_binomials(tq, kernel_basis(pi_matrix(tq)))
    report = OracleReport(label or quiver_label(q), F.name, ambient)
    one = F.one

    for w in enumerate_points(tq, p, gens, cap, jobs):
        report.variety += 1
        unstable = is_unstable(w)
        if unstable == is_zero_generated(w):
            report.stability_violations += 1
        if unstable:
            report.variety_unstable += 1
            continue
        report.variety_stable += 1
        if any(b.evaluate(w.values, one) for b in lattice):
            report.lattice_violations += 1
            if len(report.lattice_exemplars) < MAX_EXEMPLARS:
                report.lattice_exemplars.append(w.to_json()["values"])
        try:
            res = normalize(w, certify=certify)
            ok = (
                torus_act(res.torus, w) == res.normalized
                and is_base_constant(res.normalized)
                and res.normalized == v_point(w)
            )
            err = None if ok else "torus element does not transport the point"
        except QFVError as exc:
            ok, err = False, exc.to_json()
        if ok:
            report.successes += 1
        else:
            report.failures += 1
            if len(report.failure_exemplars) < MAX_EXEMPLARS:
                report.failure_exemplars.append({"point": w.to_json()["values"], "error": err})

    total, unstable, bad = ambient_stability_scan(tq, p, cap)
    report.ambient_unstable = unstable
    report.stability_violations += bad
    return report
