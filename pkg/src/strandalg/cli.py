"""Command line front end: ``strandalg <command> <spec-file> ...``.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import fixtures
from .algebra import DimensionMismatch, reduce
from .dsl import SpecError, parse_element, parse_spec
from .instance import CAPS_ENV, Instance, build, parse_caps
from .primitives import NonSpecialError, check_primitive_invariants
from .quiver import QuiverError
from .report import peirce_report
from .verifier import truncation_dimension_check, verify_string_algebra

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read_spec(path: str) -> str:
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    stem = os.path.splitext(os.path.basename(path))[0]
    if stem in fixtures.EXAMPLE_FIXTURES + fixtures.BROKEN_FIXTURES:
        return fixtures.fixture_text(stem)
    raise InputError(f"no such file: {path}")


def _emit(args, data, text: str):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _names(inst: Instance, paths) -> list[str]:
    return sorted((inst.quiver.format_path(p) for p in paths), key=lambda s: (s.count("*"), s))


def _require_special(inst: Instance):
    if inst.pcs is None:
        raise NonSpecialError("(Q, Z) is not special: " + (inst.special.describe_witness() or ""))


def cmd_check(args, inst: Instance) -> int:
    from .relations import check_biserial

    ok_b, v = check_biserial(inst.quiver)
    q = inst.quiver
    short = [q.format_path(z) for z in inst.z if len(z) < 2]
    data = {
        "biserial": {"verdict": ok_b, "vertex": None if ok_b else q.vertex_names[v]},
        "special": {"verdict": inst.special.special, "witness": inst.special.describe_witness()},
        "relations_length_at_least_2": {"verdict": not short, "witness": short},
        "caps": {"L": inst.L, "D": inst.D},
    }
    text = [f"biserial: {'yes' if ok_b else 'no (vertex ' + q.vertex_names[v] + ')'}",
            f"special: {'yes' if inst.special.special else 'no: ' + inst.special.describe_witness()}",
            f"relations of length >= 2: {'yes' if not short else 'no: ' + ', '.join(short)}"]
    _emit(args, data, "\n".join(text))
    return EXIT_OK if ok_b and inst.special.special and not short else EXIT_FAIL


def cmd_primitives(args, inst: Instance) -> int:
    _require_special(inst)
    q, pcs = inst.quiver, inst.pcs
    by_vertex = {q.vertex_names[v]: _names(inst, pcs.at(v)) for v in range(q.num_vertices) if pcs.at(v)}
    data = {"cycles": _names(inst, pcs.cycles), "by_vertex": by_vertex,
            "problems": check_primitive_invariants(pcs)}
    text = [f"{v}: {' '.join(cs)}" for v, cs in by_vertex.items()] or ["no primitive cycles"]
    _emit(args, data, "\n".join(text))
    return EXIT_OK


def _block_strings(inst: Instance) -> list[list[str]]:
    q = inst.quiver
    return [[q.vertex_names[v] for v in sorted(b)] for b in inst.partition.blocks]


def cmd_nerve(args, inst: Instance) -> int:
    _require_special(inst)
    blocks = _block_strings(inst)
    text = " ".join(f"V[{i + 1}]={{{','.join(b)}}}" for i, b in enumerate(blocks)) or "V is empty"
    _emit(args, {"blocks": blocks}, text)
    return EXIT_OK


def cmd_ideal(args, inst: Instance) -> int:
    _require_special(inst)
    ideal = inst.ideal()
    _emit(args, ideal.to_json(), "\n".join(ideal.format_lines()))
    return EXIT_OK


def cmd_reduce(args, inst: Instance) -> int:
    _require_special(inst)
    ideal = inst.ideal()
    try:
        x = parse_element(args.expr, inst.quiver, ideal.model, inst.L)
    except SpecError as exc:
        raise InputError(f"expression, col {exc.col}: {exc.message}") from None
    nf = reduce(x, ideal)
    data = {"normal_form": nf.to_json(), "is_zero": nf.is_zero(), "caps": {"L": inst.L, "D": inst.D}}
    _emit(args, data, f"{nf.format()}    [modulo A^{inst.L} and degree > {inst.D}]")
    return EXIT_OK


def cmd_verify(args, inst: Instance) -> int:
    rep = verify_string_algebra(inst.quiver, inst.z, inst.model, (inst.L, inst.D))
    _emit(args, rep.to_json(), rep.format())
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_truncdim(args, inst: Instance) -> int:
    _require_special(inst)
    if args.d < 0:
        raise InputError("d must be non-negative")
    res = truncation_dimension_check(inst.quiver, inst.z, inst.ideal(), args.d)
    if not res.applicable:
        _emit(args, res.to_json(), "not applicable: the coefficient model is mixed characteristic")
        return EXIT_OK
    text = f"d={res.d} lhs={res.lhs_dim} rhs={res.rhs_dim} {'equal' if res.equal else 'DIFFERENT'}"
    _emit(args, res.to_json(), text)
    return EXIT_OK if res.equal else EXIT_FAIL


def cmd_report(args, inst: Instance) -> int:
    _require_special(inst)
    rep = peirce_report(inst.ideal(), inst.L)
    _emit(args, rep.to_json(), rep.format())
    return EXIT_OK


COMMANDS = {
    "check": (cmd_check, "biserial / special / relation-length checks"),
    "primitives": (cmd_primitives, "list the Z-primitive cycles by vertex"),
    "nerve": (cmd_nerve, "print the primitive-nerve partition"),
    "ideal": (cmd_ideal, "print the generators of the ideal I"),
    "reduce": (cmd_reduce, "normal form of an element expression modulo I"),
    "verify": (cmd_verify, "check every string-algebra condition"),
    "truncdim": (cmd_truncdim, "compare truncated dimensions over k and over R"),
    "report": (cmd_report, "Peirce components with the s-action"),
}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strandalg",
        description="String algebras over regular local rings from a quiver with zero-relations.",
        epilog=f"Caps default to L = 2(|Q1| + longest relation), D = L; {CAPS_ENV}=L,D overrides them.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("spec", help="spec file (.qz); bundled example names also work")
        if name == "reduce":
            p.add_argument("expr", help="element, e.g. \"p*e(1) - path(a*y*x)\"")
        if name == "truncdim":
            p.add_argument("d", type=int, help="path-length truncation d")
        p.add_argument("--json", action="store_true", help="machine-readable output with sorted keys")
        p.add_argument("--caps", metavar="L,D", help="length cap L and coefficient degree cap D")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        caps = parse_caps(args.caps) if args.caps else None
        text = _read_spec(args.spec)
        inst = build(parse_spec(text), caps)
        return COMMANDS[args.command][0](args, inst)
    except SpecError as exc:
        print(f"{args.spec}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, QuiverError, NonSpecialError, DimensionMismatch, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
