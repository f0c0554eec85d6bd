"""Time the compiled and pure-Python scan kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends must return identical results; the script exits non-zero
otherwise.
"""
from __future__ import annotations

import argparse
import sys
import time

from qfv._kernels import compiled_kernels, python_kernels
from qfv.ideals import ideal_R_generators
from qfv.quiver import beilinson, validate_quiver
from qfv.tilting import tilting_arrows

CASES = [
    ("P^2 / F3", beilinson(2), 3),
    ("P^2 / F5", beilinson(2), 5),
    ("toy s=(2,2) / F5", validate_quiver(3, [(0, 1), (0, 1), (0, 2), (1, 2)]), 5),
]


def _inputs(q, p):
    tq = tilting_arrows(q)
    gens = ideal_R_generators(tq)
    rank = tq.rank
    variety = (p, len(tq.arrows), [list(g.lhs) for g in gens], [list(g.rhs) for g in gens])
    stability = (p, len(tq.arrows), len(tq.vertices),
                 [rank[a.tail] for a in tq.arrows], [rank[a.head] for a in tq.arrows])
    return variety, stability


def _best(fn, args, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if compiled_kernels is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
        return 1

    print(f"{'case':<22}{'kernel':<16}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    ok = True
    for label, q, p in CASES:
        variety, stability = _inputs(q, p)
        for name, args_ in (("scan_variety", variety), ("stability_scan", stability)):
            tp, rp = _best(getattr(python_kernels, name), args_, args.repeat)
            tc, rc = _best(getattr(compiled_kernels, name), args_, args.repeat)
            same = list(map(tuple, rp)) == list(map(tuple, rc)) if name == "scan_variety" else tuple(rp) == tuple(rc)
            ok &= same
            flag = "" if same else "  MISMATCH"
            print(f"{label:<22}{name:<16}{tp:>10.4f}{tc:>10.4f}{tp / max(tc, 1e-9):>8.1f}x{flag}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
