"""Command-line front end (``qflag``).

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource cap exceeded.  JSON is the authoritative output; ``text`` and
``latex`` are rendered from the same report.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Sequence

from .checks import run_checks
from .equivariant import induction_check, product_ring, specialize_params, torus_restriction
from .groebner import GBCache, ResourceLimitError, StructuralError
from .poly import ParseError, Polynomial, RegistryMismatch
from .presentation import make_flag
from .ring import QuantumRing, ResidueDegenerate

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
DEFAULT_CAP_N = 5


class UsageError(ValueError):
    pass


# -- parsing helpers --------------------------------------------------------

def parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise UsageError(f"cannot parse dimensions {text!r}") from None
    make_flag(dims)
    return dims


def parse_degree(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise UsageError(f"cannot parse degree {text!r}") from None


_SHORT_NAME = re.compile(r"^([cqtp])(\d+)$")


def canonical_param(name: str) -> str:
    """``c1 -> C[1]``, ``q2 -> q[2]``; bracketed names pass through."""
    m = _SHORT_NAME.match(name.strip())
    if not m:
        return name.strip()
    kind, idx = m.groups()
    return {"c": "C", "q": "q", "t": "t", "p": "p"}[kind] + f"[{idx}]"


def expand_classes(tokens: Sequence[str]) -> list[str]:
    """``["p[1]", "x5", "p[2]"]`` -> five copies of p[1] then p[2]."""
    out: list[str] = []
    for tok in tokens:
        m = re.fullmatch(r"x(\d+)", tok.strip())
        if m:
            if not out:
                raise UsageError("repeat marker before any class")
            out.extend([out[-1]] * (int(m.group(1)) - 1))
        else:
            out.append(tok)
    return out


def parse_expr(text: str, ctx: QuantumRing) -> Polynomial:
    return ctx.parse(text)


# -- rendering ------------------------------------------------------------

def to_latex(text: str) -> str:
    s = re.sub(r"c\[(\d+)\]\[(\d+)\]", r"c_{\2}^{(\1)}", text)
    s = re.sub(r"C\[(\d+)\]", r"c_{\1}", s)
    s = re.sub(r"([qtp])\[(\d+)\]", r"\1_{\2}", s)
    s = re.sub(r"\^(\d+)", r"^{\1}", s)
    return s.replace("*", " ")


def _render_text(obj, indent: int = 0, latex: bool = False) -> list[str]:
    pad = "  " * indent
    conv = to_latex if latex else (lambda x: x)
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1, latex))
            else:
                lines.append(f"{pad}{k}: {_scalar(v, conv)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                lines.append(f"{pad}-")
                lines.extend(_render_text(v, indent + 1, latex))
            else:
                lines.append(f"{pad}- {_scalar(v, conv)}")
    else:
        lines.append(pad + _scalar(obj, conv))
    return lines


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v, conv) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x, conv) for x in v) + "]"
    if isinstance(v, str):
        return conv(v)
    return json.dumps(v)


def emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write("\n".join(_render_text(report, latex=fmt == "latex")) + "\n")


# -- context ----------------------------------------------------------------

def build_context(args, dims=None, equivariant=None) -> QuantumRing:
    dims = dims if dims is not None else args.dims
    if dims is None:
        raise UsageError("--dims is required")
    flag = make_flag(dims)
    if flag.n > args.cap_n:
        raise ResourceLimitError(f"n = {flag.n} exceeds --cap-n {args.cap_n}")
    cache = GBCache(args.cache_dir) if (args.cache_dir or os.environ.get("QFLAG_CACHE_DIR")) else None
    return QuantumRing.from_flag(flag, args.equivariant if equivariant is None else equivariant,
                                 cache=cache, max_generators=args.max_generators,
                                 max_terms=args.max_terms)


def _context_json(ctx: QuantumRing) -> dict:
    return {"label": ctx.label, "rank": ctx.rank, "dim": ctx.dim}


# -- subcommands ------------------------------------------------------------

def cmd_present(args) -> tuple[dict, int]:
    ctx = build_context(args)
    report = {"context": _context_json(ctx), "presentation": ctx.presentation.to_json()}
    if args.groebner:
        report["groebner"] = {"generators": [str(g) for g in ctx.gb.generators],
                              "standard_basis": ctx.basis.to_text(),
                              "degree_profile": ctx.basis.degree_profile()}
    return report, EXIT_OK


def cmd_multiply(args) -> tuple[dict, int]:
    ctx = build_context(args)
    factors = [ctx.element(parse_expr(e, ctx)) for e in args.expr]
    prod = ctx.one()
    for f in factors:
        prod = prod * f
    return {"context": _context_json(ctx), "factors": list(args.expr), "product": str(prod),
            "coordinates": {m: str(c) for m, c in zip(ctx.basis.to_text(), prod.coords()) if c}}, EXIT_OK


def cmd_pair(args) -> tuple[dict, int]:
    ctx = build_context(args)
    report = {"context": _context_json(ctx)}
    if args.table:
        report["pairing"] = ctx.pairing_table(args.strategy).to_json()
    else:
        if args.a is None or args.b is None:
            raise UsageError("pair needs --a and --b, or --table")
        report["a"], report["b"] = args.a, args.b
        report["value"] = str(ctx.pairing(parse_expr(args.a, ctx), parse_expr(args.b, ctx)))
    return report, EXIT_OK


def cmd_gw(args) -> tuple[dict, int]:
    ctx = build_context(args)
    a, b, c = (parse_expr(x, ctx) for x in (args.a, args.b, args.c))
    gw = ctx.gw_3point(a, b, c, parse_degree(args.degree))
    return {"context": _context_json(ctx), "insertions": [args.a, args.b, args.c], **gw.to_json()}, EXIT_OK


def cmd_count(args) -> tuple[dict, int]:
    ctx = build_context(args)
    classes = expand_classes(args.classes)
    gw = ctx.divisor_count(classes, parse_degree(args.degree))
    return {"context": _context_json(ctx), "classes": classes, **gw.to_json()}, EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    if args.max_n > args.cap_n:
        raise ResourceLimitError(f"--max-n {args.max_n} exceeds --cap-n {args.cap_n}")
    results = run_checks(args.max_n, args.trials, args.seed)
    ok = all(r.ok for r in results)
    report = {"max_n": args.max_n, "trials": args.trials, "seed": args.seed, "ok": ok,
              "checks": [r.to_json() for r in results]}
    return report, EXIT_OK if ok else EXIT_VERIFY


def _parse_assignments(items: Sequence[str]) -> dict:
    out = {}
    for item in items:
        if "=" not in item:
            raise UsageError(f"expected NAME=VALUE, got {item!r}")
        name, value = item.split("=", 1)
        out[canonical_param(name)] = value.strip()
    return out


def cmd_specialize(args) -> tuple[dict, int]:
    ctx = build_context(args, equivariant=True)
    if args.torus:
        new = torus_restriction(ctx)
    else:
        if not args.set:
            raise UsageError("specialize needs --set NAME=VALUE or --torus")
        new = specialize_params(ctx, _parse_assignments(args.set))
    report = {"context": _context_json(new), "variables": list(new.registry.names),
              "relations": [str(r) for r in new.relations],
              "groebner": [str(g) for g in new.gb.generators]}
    if args.pairing:
        report["pairing"] = new.pairing_table().to_json()
    return report, EXIT_OK


def cmd_product(args) -> tuple[dict, int]:
    c1 = build_context(args)
    c2 = build_context(args, dims=args.dims2)
    prod = product_ring(c1, c2)
    return {"context": _context_json(prod), "variables": list(prod.registry.names),
            "relations": [str(r) for r in prod.relations],
            "pairing": prod.pairing_table().to_json()}, EXIT_OK


def cmd_induction(args) -> tuple[dict, int]:
    if args.dims is None:
        raise UsageError("--dims is required")
    flag = make_flag(args.dims)
    if flag.n > args.cap_n:
        raise ResourceLimitError(f"n = {flag.n} exceeds --cap-n {args.cap_n}")
    name = canonical_param(args.zero)
    m = re.fullmatch(r"q\[(\d+)\]", name)
    if not m:
        raise UsageError(f"--zero expects a quantum parameter such as q1, got {args.zero!r}")
    rep = induction_check(flag, int(m.group(1)))
    return rep.to_json(), EXIT_OK if rep.ok else EXIT_VERIFY


COMMANDS = {
    "present": cmd_present,
    "multiply": cmd_multiply,
    "pair": cmd_pair,
    "gw": cmd_gw,
    "count-divisors": cmd_count,
    "verify": cmd_verify,
    "specialize": cmd_specialize,
    "product": cmd_product,
    "induction-check": cmd_induction,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dims", type=parse_dims, help="flag dimensions, e.g. 1,2,3")
    common.add_argument("--equivariant", action="store_true")
    common.add_argument("--format", choices=("json", "text", "latex"), default="json")
    common.add_argument("--cache-dir", default=None, help="GB cache directory (default $QFLAG_CACHE_DIR)")
    common.add_argument("--max-generators", type=int, default=None)
    common.add_argument("--max-terms", type=int, default=None)
    common.add_argument("--cap-n", type=int, default=DEFAULT_CAP_N, help="largest ambient n accepted")

    parser = argparse.ArgumentParser(prog="qflag", description="Quantum cohomology of partial flag manifolds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("present", parents=[common], help="show the presentation")
    p.add_argument("--groebner", action="store_true", help="include the reduced Gröbner basis")

    p = sub.add_parser("multiply", parents=[common], help="quantum product of expressions")
    p.add_argument("expr", nargs="+")

    p = sub.add_parser("pair", parents=[common], help="residue pairing")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--table", action="store_true")
    p.add_argument("--strategy", choices=("auto", "graded", "symbolic", "specialize"), default="auto")

    p = sub.add_parser("gw", parents=[common], help="3-point Gromov-Witten invariant")
    for k in ("a", "b", "c"):
        p.add_argument(f"--{k}", required=True)
    p.add_argument("--degree", required=True, help="degree multi-index, e.g. 1 or 1,0")

    p = sub.add_parser("count-divisors", parents=[common], help="curve count through divisor insertions")
    p.add_argument("--classes", nargs="+", required=True, help='classes; "x5" repeats the previous one')
    p.add_argument("--degree", required=True)

    p = sub.add_parser("verify", parents=[common], help="run the oracle verification suite")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("specialize", parents=[common], help="substitute equivariant or quantum parameters")
    p.add_argument("--set", action="append", default=[], metavar="NAME=VALUE")
    p.add_argument("--torus", action="store_true", help="restrict to the maximal torus")
    p.add_argument("--pairing", action="store_true", help="include the pairing table")

    p = sub.add_parser("product", parents=[common], help="product of two flag manifolds")
    p.add_argument("--dims2", type=parse_dims, required=True)

    p = sub.add_parser("induction-check", parents=[common], help="q_j = 0 splitting check")
    p.add_argument("--zero", required=True, help="quantum parameter to set to zero, e.g. q1")
    return parser


def _error(code: str, message: str, position=None) -> dict:
    return {"error": {"code": code, "message": message, "position": position}}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = args.format
    try:
        report, code = COMMANDS[args.command](args)
    except ParseError as exc:
        report, code = _error("parse", str(exc), exc.position), EXIT_USAGE
    except ResourceLimitError as exc:
        report, code = _error("resource-cap", str(exc)), EXIT_CAP
    except ResidueDegenerate as exc:
        report, code = _error("residue-degenerate", str(exc)), EXIT_VERIFY
    except StructuralError as exc:
        report, code = _error("structural", str(exc)), EXIT_VERIFY
    except (UsageError, RegistryMismatch, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        report, code = _error("usage", str(msg)), EXIT_USAGE
    emit(report, fmt, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
