"""Command-line front end: ``qfv <subcommand> [options] QUIVER``.

Exit status is 0 on success, 1 on a domain error (a JSON diagnostic is
written to stdout) and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .bruteforce import search_cap, theorem_oracle
from .diagram import emit_diagram
from .errors import QFVError
from .fields import parse_field
from .ideals import (
    DEFAULT_PATH_CAP,
    ideal_R_generators,
    irrelevant_ideal,
    kernel_basis,
    lattice_binomials,
    pairwise_binomials,
    pi_matrix,
)
from .normalize import normalize
from .points import point_from_json, sample_point
from .quiver import dimension, quiver_from_json, rank_sums
from .tilting import format_vertex, parse_vertex, tilting_arrows, truncate


class UsageError(Exception):
    pass


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _quiver_path(args):
    path = args.quiver_opt or args.quiver
    if not path:
        raise UsageError("a quiver file is required")
    return path


def _quiver(args):
    return quiver_from_json(_load_json(_quiver_path(args)))


def _tilting(args):
    tq = tilting_arrows(_quiver(args))
    if getattr(args, "truncate", None):
        tq = truncate(tq, parse_vertex(args.truncate))
    return tq


def _path_cap(args):
    if getattr(args, "cap", None):
        return args.cap
    env = os.environ.get("QFV_CAP")
    return int(env) if env else DEFAULT_PATH_CAP


def cmd_validate(args):
    q = _quiver(args)
    return {"valid": True, "vertices": q.vertex_count, "arrows": len(q.arrows),
            "s": list(rank_sums(q)), "dimension": dimension(q)}


def cmd_tilting(args):
    return _tilting(args).to_json()


def cmd_ideals(args):
    tq = _tilting(args)
    if args.which == "R":
        build = pairwise_binomials if args.pairwise else ideal_R_generators
        gens = build(tq, args.max_path_len, _path_cap(args))
        return {"ideal": "R", "count": len(gens), "binomials": [g.to_json() for g in gens]}
    if args.which == "B":
        comps = irrelevant_ideal(tq)
        return {"ideal": "B", "components": [
            {"vertex": format_vertex(v), "arrows": [tq.arrows[i].id for i in arrows]} for v, arrows in comps
        ]}
    m = pi_matrix(tq)
    basis = kernel_basis(m)
    return {"ideal": "Q", "pi": m.to_json(), "kernel": [list(u) for u in basis],
            "rank": len(basis), "binomials": [b.to_json() for b in lattice_binomials(tq, basis)]}


def cmd_normalize(args):
    tq = _tilting(args)
    w = point_from_json(tq, _load_json(args.point))
    return normalize(w, certify=args.certify).to_json()


def cmd_sample(args):
    tq = _tilting(args)
    field = parse_field(args.field)
    if not 0.0 <= args.zeros <= 1.0:
        raise UsageError("--zeros must lie in [0, 1]")
    rng = random.Random(args.seed)
    pts = [sample_point(tq, rng, field, args.zeros).to_json() for _ in range(args.count)]
    return {"seed": args.seed, "count": args.count, "points": pts}


def cmd_oracle(args):
    field = parse_field(args.field)
    if field.characteristic == 0:
        raise UsageError("the oracle needs a prime field")
    q = _quiver(args)
    label = os.path.basename(_quiver_path(args))
    return theorem_oracle(q, field.p, search_cap(args.cap), args.jobs, label=label).to_json()


def cmd_diagram(args):
    return emit_diagram(_tilting(args), args.format)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("quiver", nargs="?", help="quiver JSON file")
    common.add_argument("--quiver", dest="quiver_opt", metavar="FILE", help="quiver JSON file")
    common.add_argument("-o", "--output", help="write the result here instead of stdout")

    parser = argparse.ArgumentParser(prog="qfv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="check a quiver")

    p = sub.add_parser("tilting", parents=[common], help="export the tilting quiver")
    p.add_argument("--truncate", metavar="VERTEX", help='keep vertices <= VERTEX, e.g. "(0,1,1)"')

    p = sub.add_parser("ideals", parents=[common], help="generators of I_R, B or I_Q")
    p.add_argument("--which", choices=["R", "B", "Q"], required=True)
    p.add_argument("--truncate", metavar="VERTEX")
    p.add_argument("--max-path-len", type=int)
    p.add_argument("--pairwise", action="store_true", help="emit every pairwise path difference for I_R")
    p.add_argument("--cap", type=int, help="maximum number of enumerated paths")

    p = sub.add_parser("normalize", parents=[common], help="normalize a point to base-constant form")
    p.add_argument("--point", required=True, metavar="FILE")
    p.add_argument("--certify", action="store_true", help="attach relation witnesses")

    p = sub.add_parser("sample", parents=[common], help="random torus translates of random v-points")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--zeros", type=float, default=0.0, help="probability of zeroing a base value")
    p.add_argument("--field", default="Q")

    p = sub.add_parser("oracle", parents=[common], help="exhaustive finite-field check")
    p.add_argument("--field", required=True, help="prime p or Fp")
    p.add_argument("--cap", type=int, help="maximum size of the ambient space")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("diagram", parents=[common], help="DOT or TikZ drawing of the tilting quiver")
    p.add_argument("--format", choices=["dot", "tikz"], default="dot")
    p.add_argument("--truncate", metavar="VERTEX")
    return parser


COMMANDS = {
    "validate": cmd_validate,
    "tilting": cmd_tilting,
    "ideals": cmd_ideals,
    "normalize": cmd_normalize,
    "sample": cmd_sample,
    "oracle": cmd_oracle,
    "diagram": cmd_diagram,
}


def _emit(text, output):
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qfv: error: {exc}", file=sys.stderr)
        return 2
    except QFVError as exc:
        sys.stdout.write(json.dumps(exc.to_json(), indent=2) + "\n")
        return 1
    text = result if isinstance(result, str) else json.dumps(result, indent=2) + "\n"
    _emit(text, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
