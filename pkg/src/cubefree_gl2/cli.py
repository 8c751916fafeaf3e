"""Command-line front end: ``count``, ``reps`` and ``verify``.

Exit codes: 0 on success, 1 when verification finds a disagreement, 2 on a
usage or precondition error.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .counting import count_imprimitive, count_primitive, count_reducible
from .finite_field import FieldDesc, make_field, prime_power
from .shapes import GroupShape, NotCubeFree, NotPPrime, check_order, reducible_shapes

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("cubefree_gl2")


class PreconditionError(Exception):
    pass


def _field(q: int) -> FieldDesc:
    pk = prime_power(q)
    if pk is None:
        raise PreconditionError(f"q = {q} is not a prime power")
    return make_field(*pk)


def _order(m: int, F: FieldDesc) -> None:
    try:
        check_order(m, F)
    except NotCubeFree as exc:
        raise PreconditionError(f"m is not cube-free: {exc}") from exc
    except NotPPrime as exc:
        raise PreconditionError(f"p | m: {exc}") from exc
    except ValueError as exc:
        raise PreconditionError(str(exc)) from exc


def to_text(data, indent: int = 0) -> str:
    """Indented JSON with scalar-only structures such as matrices kept on one line."""
    pad = "  " * (indent + 1)
    if isinstance(data, dict) and data:
        items = [f"{pad}{json.dumps(k)}: {to_text(v, indent + 1)}" for k, v in data.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(data, list) and any(isinstance(v, dict) for v in data):
        items = [pad + to_text(v, indent + 1) for v in data]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(data)


def _dump(data, out: Path | None = None) -> None:
    text = to_text(data)
    if out is None:
        print(text)
    else:
        out.write_text(text + "\n")
        log.info("wrote %s", out)


def cmd_count(args: argparse.Namespace) -> int:
    F = _field(args.q)
    _order(args.m, F)
    if args.shape is not None:
        try:
            shape = GroupShape.from_json(json.loads(args.shape), F)
        except (ValueError, KeyError, TypeError) as exc:
            raise PreconditionError(f"bad --shape: {exc}") from exc
        if shape.m != args.m:
            raise PreconditionError(f"--shape has order {shape.m}, not m = {args.m}")
        if shape.geo.kind == "reducible":
            result = count_reducible(shape, F)
        elif shape.iso_witness is None:
            raise PreconditionError("non-reducible shapes need a witness group to count")
        elif shape.geo.coarse == "imprimitive":
            result = count_imprimitive(shape.iso_witness)
        else:
            result = count_primitive(shape.iso_witness)
        _dump({"q": F.q, "m": args.m, "shape": shape.to_json(), **result.to_json()})
        return EXIT_OK
    rows = []
    for shape in reducible_shapes(args.m):
        rows.append({"shape": shape.to_json(), "label": shape.label(), **count_reducible(shape, F).to_json()})
    _dump({
        "q": F.q,
        "m": args.m,
        "reducible": rows,
        "note": "each imprimitive or primitive isomorphism type forms exactly one class; "
                "use `reps` or `verify` to see which types occur",
    })
    return EXIT_OK


def cmd_reps(args: argparse.Namespace) -> int:
    from .representatives import representatives_for

    F = _field(args.q)
    _order(args.m, F)
    reps, warnings = representatives_for(args.m, F, args.geo)
    for w in warnings:
        log.info("skipped %s: %s", w.get("construction"), w.get("reason"))
    _dump({
        "q": F.q,
        "m": args.m,
        "field": F.to_json(),
        "representatives": [r.to_json() for r in reps],
        "warnings": warnings,
    }, args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    from .oracle import check_cap, format_table, verify_formulas

    F = _field(args.q)
    try:
        check_cap(F.q, args.extended)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from exc
    if args.max_m < 1:
        raise PreconditionError("--max-m must be positive")
    reports = verify_formulas(F, args.max_m, extended=args.extended, include_modular=args.include_modular)
    print(format_table(reports))
    if args.json is not None:
        _dump({"q": F.q, "max_m": args.max_m, "reports": [r.to_json() for r in reports]}, args.json)
    if args.figure is not None:
        from .plotting import plot_verification

        plot_verification(reports, args.figure)
        log.info("wrote %s", args.figure)
    failed = [r.m for r in reports if not r.agreement]
    if failed:
        log.error("disagreement at m = %s", ", ".join(map(str, failed)))
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubefree-gl2",
        description="Conjugacy classes of cube-free p'-subgroups of GL(2,q).",
    )
    parser.add_argument("--log-level", default="WARNING", help="stderr logging level (default WARNING)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="closed-form class counts for every reducible shape of order m")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--shape", help="a single shape as JSON, e.g. '{\"sylows\": [{\"p\": 2, \"beta\": 2}]}'")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("reps", help="explicit generators for one subgroup per class")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--geo", choices=["reducible", "imprimitive", "primitive"])
    p.add_argument("--out", type=Path, help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_reps)

    p = sub.add_parser("verify", help="compare the formulas with brute-force enumeration")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--max-m", type=int, default=60)
    p.add_argument("--extended", action="store_true", help="allow q = 13")
    p.add_argument("--include-modular", action="store_true",
                   help="also enumerate orders divisible by p (reported as EXCLUDED)")
    p.add_argument("--json", type=Path, help="write the full report as JSON")
    p.add_argument("--figure", type=Path, help="write a bar chart of formula vs oracle counts")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
