"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 parse/input/I-O error,
3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formats
from .errors import CapacityError, InputError, ParseError, ValidationError
from .fca import FormalContext, enumerate_concepts
from .flow import direct_image, inverse_image
from .interior import containment_conditions, interior, solution_set
from .participation import participation_context, principal_ideal
from .poset import Poset
from .relational import (
    DEFAULT_CAP, Tuple, as_single_sorted, satisfaction_context, validate_network,
)

EXIT_OK, EXIT_INVALID, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {out}: {exc.strerror}") from None


def _network(args, validate: bool = True):
    return formats.parse_network(_read(args.network), validate=validate,
                                 close_down=args.complete_down)


def _context_from(args) -> FormalContext:
    """Either a Burmeister context or the full-tuple satisfaction context of a network."""
    text = _read(args.input)
    if text.lstrip().startswith("{"):
        R = formats.parse_network(text, close_down=args.complete_down)
        return satisfaction_context(R, "full", cap=args.cap)
    return formats.parse_context(text)


def cmd_validate(args) -> int:
    R = _network(args, validate=False)
    report = validate_network(R)
    for v in report:
        print(v)
    if report:
        return EXIT_INVALID
    print("ok")
    return EXIT_OK


def cmd_solve(args) -> int:
    R = _network(args)
    P = solution_set(R, cap=args.cap)
    for t in P.sorted(R.domain):
        print(Tuple(P.arity, t))
    return EXIT_OK


def cmd_interior(args) -> int:
    R = _network(args)
    _write(formats.emit_network(interior(R, cap=args.cap)), args.output)
    return EXIT_OK


def cmd_context(args) -> int:
    R = _network(args)
    mode = "all" if args.all_tuples else "full"
    ctx = satisfaction_context(R, mode, cap=args.cap)
    label = Tuple.tagged if args.all_tuples else str
    fmt = args.format or ("json" if args.output and args.output.endswith(".json") else "cxt")
    if fmt == "json":
        objs = Poset([label(g) for g in ctx.objects],
                     [(label(a), label(b)) for a, b in ctx.objects.pairs()])
        named = FormalContext.from_rows(objs, ctx.attributes, ctx.rows)
        _write(formats.emit_network(as_single_sorted(named, "tuple")), args.output)
    else:
        if not ctx.objects.is_discrete or not ctx.attributes.is_discrete:
            print("warning: Burmeister format drops the object/attribute order", file=sys.stderr)
        _write(formats.emit_context(ctx, label=label, allow_order=True), args.output)
    return EXIT_OK


def cmd_lattice(args) -> int:
    ctx = _context_from(args)
    lat = enumerate_concepts(ctx)
    L = lat.label
    for i, c in enumerate(lat):
        intent = ",".join(str(m) for m in ctx.attributes if m in c.intent)
        print(f"{L(i)}\t|extent|={len(c.extent)}\tintent={{{intent}}}\t"
              f"successors={{{','.join(L(k) for k in sorted(lat.covers[i]))}}}")
    if args.dot:
        _write(formats.emit_dot(lat), args.dot)
    if args.tables:
        d = Path(args.tables)
        try:
            d.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise InputError(f"cannot create {d}: {exc.strerror}") from None
        for name, text in formats.emit_lattice_tables(lat).items():
            _write(text, str(d / f"{name}.csv"))
    return EXIT_OK


def cmd_check(args) -> int:
    R = _network(args)
    for d, e, holds in containment_conditions(R):
        print(f"{d} <= {e}\t{'true' if holds else 'false'}")
    return EXIT_OK


def cmd_image(args) -> int:
    R = _network(args)
    m = formats.parse_morphism(_read(args.morphism))
    if args.direction == "direct":
        out = direct_image(m, R)
    else:
        out = inverse_image(m, R, cap=args.cap)
    _write(formats.emit_network(out), args.output)
    return EXIT_OK


def cmd_participation(args) -> int:
    ctx = _context_from(args)
    lat = enumerate_concepts(ctx)
    k = args.ideal - 1
    if not 0 <= k < len(lat):
        raise InputError(f"concept index must lie in 1..{len(lat)}")
    out = participation_context(ctx, lat, principal_ideal(lat, k))
    _write(formats.emit_context(out, allow_order=True), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="distrel", description=__doc__.splitlines()[0])
    p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help="maximum number of tuples any enumeration may produce")
    p.add_argument("--complete-down", action="store_true",
                   help="close constraint relations downward when loading")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a network document")
    s.add_argument("network")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("solve", help="print the solution set")
    s.add_argument("network")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("interior", help="write the interior network")
    s.add_argument("network")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_interior)

    s = sub.add_parser("context", help="write the satisfaction context")
    s.add_argument("network")
    s.add_argument("--all-tuples", action="store_true", help="use tuples of every arity")
    s.add_argument("--format", choices=["cxt", "json"])
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_context)

    s = sub.add_parser("lattice", help="enumerate the concept lattice")
    s.add_argument("input", help="network document or Burmeister context")
    s.add_argument("--dot", help="write the Hasse diagram here")
    s.add_argument("--tables", help="write generators/successors/order CSVs into this directory")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("check", help="list candidate projective containment conditions")
    s.add_argument("network")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("image", help="direct or inverse image along a domain morphism")
    s.add_argument("network")
    s.add_argument("--morphism", required=True)
    s.add_argument("--direction", choices=["direct", "inverse"], required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_image)

    s = sub.add_parser("participation", help="participation context of a principal ideal")
    s.add_argument("input", help="network document or Burmeister context")
    s.add_argument("--ideal", type=int, required=True, help="1-based concept index")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_participation)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ParseError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
