"""Decategorified invariants of Deligne and 2-Deligne tensor products, from the command line.

Exit codes: 0 success, 1 semantic failure (invalid ring, golden mismatch),
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .fixtures import FIXTURE_IDS, FORMATS, golden_path, run_example
from .fusion import (SchemaError, deligne_product, fp_data, render_csv, render_grid,
                     render_markdown, ring_from_json, ring_to_json, table_rows, validate)
from .groups import CapExceeded, check_char, enumerate_subgroups, full_subgroup, group_new, h2_classes
from .pointed import classify_module_simples

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt_float(x: float) -> str:
    """Eight decimal places, trailing zeros dropped: 1.41421356, 4."""
    text = f"{x:.8f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def _read_ring(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None
    try:
        return ring_from_json(data)
    except SchemaError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _write(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_example(args) -> int:
    text = run_example(args.id, args.format)
    if args.check:
        expected = golden_path(args.id, args.format).read_text("utf-8")
        if text != expected:
            sys.stderr.write(f"{args.id}: output differs from golden file\n")
            return EXIT_FAIL
        sys.stdout.write(f"{args.id}: ok\n")
        return EXIT_OK
    sys.stdout.write(text)
    return EXIT_OK


def cmd_fusion(args) -> int:
    if args.action == "verify":
        R = _read_ring(args.paths[0])
        report = validate(R, rigid=not args.module_table)
        print(report)
        return EXIT_OK if report.ok else EXIT_FAIL
    if args.action == "product":
        if len(args.paths) != 2:
            raise UsageError("product needs exactly two ring files")
        R, S = (_read_ring(p) for p in args.paths)
        P = deligne_product(R, S)
        _write(json.dumps(ring_to_json(P), ensure_ascii=False) + "\n", args.output)
        return EXIT_OK
    if args.action == "fpdim":
        R = _read_ring(args.paths[0])
        fp = fp_data(R)
        print(", ".join(fmt_float(d) for d in fp.per_basis) + f"; total {fmt_float(fp.total)}")
        return EXIT_OK
    if args.action == "table":
        R = _read_ring(args.paths[0])
        render = {"text": lambda r: render_grid(table_rows(r)), "csv": render_csv,
                  "markdown": render_markdown, "json": lambda r: json.dumps(ring_to_json(r)) + "\n"}
        _write(render[args.format](R), args.output)
        return EXIT_OK
    raise UsageError(f"unknown fusion action {args.action}")


def _parse_orders(raw: str) -> list[int]:
    raw = raw.strip()
    if not raw:
        return []
    try:
        orders = [int(x) for x in raw.split(",")]
    except ValueError:
        raise UsageError(f"--orders must be comma-separated integers, got {raw!r}") from None
    if any(n < 2 for n in orders):
        raise UsageError("every cyclic order must be >= 2")
    return orders


def cmd_group(args) -> int:
    orders = _parse_orders(args.orders)
    try:
        char = check_char(args.char)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    G = group_new(orders)
    if args.action == "subgroups":
        for H in enumerate_subgroups(G):
            print(f"{H.label()}  order {H.order}")
    elif args.action == "h2":
        classes = h2_classes(full_subgroup(G), char)
        if len(classes) == 1:
            print("1 class (trivial)")
        else:
            print(f"{len(classes)} classes: " + ", ".join(c.label for c in classes))
    elif args.action == "simples":
        for s in classify_module_simples(G, char):
            print(s.label)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deligne-calc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("example", help="run a named worked example")
    ex.add_argument("id", choices=FIXTURE_IDS)
    ex.add_argument("--format", choices=FORMATS, default="text")
    ex.add_argument("--check", action="store_true", help="compare against the committed golden file")
    ex.set_defaults(func=cmd_example)

    fu = sub.add_parser("fusion", help="fusion ring files")
    fu.add_argument("action", choices=("verify", "product", "fpdim", "table"))
    fu.add_argument("paths", nargs="+")
    fu.add_argument("-o", "--output")
    fu.add_argument("--format", choices=("text", "csv", "markdown", "json"), default="text")
    fu.add_argument("--module-table", action="store_true",
                    help="verify as a module table (anti-involution instead of rigidity)")
    fu.set_defaults(func=cmd_fusion)

    gr = sub.add_parser("group", help="finite abelian groups")
    gr.add_argument("action", choices=("subgroups", "h2", "simples"))
    gr.add_argument("--orders", required=True, help="cyclic factor orders, e.g. 2,2")
    gr.add_argument("--char", type=int, default=0)
    gr.set_defaults(func=cmd_group)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except CapExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
