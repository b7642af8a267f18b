"""Command-line front end: ``verify``, ``map``, ``eval`` and ``list``.

Exit status is 0 when every selected check passes, 1 when any check fails
and 2 for configuration errors (bad flags, unreadable or malformed files,
checks that do not apply to the chosen algebra).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import __version__
from .algfile import AlgfileError, format_element, parse_expression
from .hopfdef import CheckResult
from .kernel import IMPLEMENTATION, RewriteFuelError
from .suites import (
    BUILTIN,
    DEFAULT_ORDER,
    SUITE_ORDER,
    SUITES,
    ConfigError,
    execute,
    load_presentation,
    plan,
    registry,
)

REPORT_SCHEMA = "hopfverify.report/1"
ORDER_ENV = "HOPFVERIFY_ORDER"

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _env_order() -> int | None:
    raw = os.environ.get(ORDER_ENV)
    if raw is None or raw.strip() == "":
        return None
    try:
        k = int(raw)
    except ValueError:
        raise ConfigError(f"{ORDER_ENV} must be an integer, got {raw!r}") from None
    if k < 0:
        raise ConfigError(f"{ORDER_ENV} must be non-negative")
    return k


def _order(args, default: int | None) -> int | None:
    if args.order is not None:
        return args.order
    env = _env_order()
    return env if env is not None else default


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _print_text(results: list[CheckResult], out, max_witnesses: int):
    for r in results:
        print(r.summary(), file=out)
        for f in r.failures[:max_witnesses]:
            residual = "" if f.residual is None else f": {_witness(f.residual)}"
            print(f"    {f.label}{residual}", file=out)
        if len(r.failures) > max_witnesses:
            print(f"    ... {len(r.failures) - max_witnesses} more", file=out)
        for note in r.notes:
            print(f"    note: {note}", file=out)
    failed = sum(not r.passed for r in results)
    verdict = "all passed" if not failed else f"{failed} failed"
    print(f"{len(results)} checks, {verdict}", file=out)


def _witness(v) -> str:
    from .algfile import format_value

    return format_value(v)


def cmd_verify(args) -> int:
    order = _order(args, None)
    suites = args.suite or ["all"]
    tasks = plan(suites, args.algebra, order, args.seed, args.fuel, args.w2_order)
    # parse file algebras up front so format errors are config errors
    if args.algebra and args.algebra.startswith("file:"):
        for k in sorted({t.order for t in tasks}):
            load_presentation(args.algebra, k, args.fuel)

    def progress(i, total, r):
        if not args.quiet:
            status = "PASS" if r.passed else "FAIL"
            print(f"[{i}/{total}] {status} {r.check} {r.algebra} K={r.order} {r.seconds:.2f}s", file=sys.stderr)

    results = execute(tasks, args.jobs, progress)
    passed = all(r.passed for r in results)
    if args.format == "json":
        doc = {
            "schema": REPORT_SCHEMA,
            "config": {
                "suites": suites,
                "algebra": args.algebra,
                "order": order,
                "w2_order": args.w2_order,
                "seed": args.seed,
                "fuel": args.fuel,
            },
            "passed": passed,
            "checks": [r.to_dict() for r in results],
        }
        if args.timings:
            doc["timings"] = {
                "kernel": IMPLEMENTATION,
                "seconds": [round(r.seconds, 4) for r in results],
            }
        json.dump(doc, sys.stdout, indent=2, sort_keys=False)
        sys.stdout.write("\n")
    else:
        _print_text(results, sys.stdout, args.max_witnesses)
    return EXIT_OK if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# map / eval
# ---------------------------------------------------------------------------

_MAPS = {
    ("tilde", "bicross"): "inverse",
    ("bicross", "tilde"): "basis_change",
    ("classical", "kinematical"): "kinematical_map",
    ("kinematical", "classical"): "kinematical_inverse",
}


def _names_for(algebra: str, order: int, fuel):
    if algebra == "bicross":
        return registry(order, fuel).named_elements()
    if algebra == "tilde":
        return {"Wtp": registry(order, fuel).tilde_pl_plus}
    if algebra.startswith("file:"):
        return load_presentation(algebra, order, fuel).elements
    return {}


def _parse_in(algebra: str, expr: str, order: int, fuel):
    p = load_presentation(algebra, order, fuel)
    return parse_expression(expr, p.algebra, _names_for(algebra, order, fuel))


def _apply(morphism, value):
    from .models import _pull_tensor
    from .tensorspace import TensorElement

    if isinstance(value, TensorElement):
        return _pull_tensor(morphism, value)
    return morphism(value)


def cmd_map(args) -> int:
    order = _order(args, DEFAULT_ORDER)
    reg = registry(order, args.fuel)
    if args.roundtrip:
        src = args.source or "bicross"
        pairs = {"bicross": ("basis_change", "inverse"), "tilde": ("inverse", "basis_change"),
                 "classical": ("kinematical_map", "kinematical_inverse"),
                 "kinematical": ("kinematical_inverse", "kinematical_map")}
        if src not in pairs:
            raise ConfigError(f"no round trip defined for {src!r}")
        value = _parse_in(src, args.expr, order, args.fuel)
        there, back = pairs[src]
        result = _apply(getattr(reg, back), _apply(getattr(reg, there), value))
    else:
        if not args.source or not args.target:
            raise ConfigError("map needs --from and --to (or --roundtrip)")
        key = (args.source, args.target)
        if key not in _MAPS:
            known = ", ".join(f"{a}->{b}" for a, b in _MAPS)
            raise ConfigError(f"no map {args.source}->{args.target}; available: {known}")
        value = _parse_in(args.source, args.expr, order, args.fuel)
        result = _apply(getattr(reg, _MAPS[key]), value)
    print(format_element(result))
    return EXIT_OK


def cmd_eval(args) -> int:
    order = _order(args, DEFAULT_ORDER)
    value = _parse_in(args.algebra or "bicross", args.expr, order, args.fuel)
    print(format_element(value))
    return EXIT_OK


# ---------------------------------------------------------------------------
# list
# ---------------------------------------------------------------------------


def cmd_list(args) -> int:
    print("presentations:")
    for name in BUILTIN:
        print(f"  {name}")
    print("  file:PATH  (an .alg document)")
    print("suites:")
    for s in SUITE_ORDER:
        checks, valid, default = SUITES[s]
        scope = "any presentation" if valid is None else ", ".join(valid)
        print(f"  {s:<12} K={default}  [{scope}]")
        for c in checks:
            print(f"      {c}")
    print("maps:")
    for a, b in _MAPS:
        print(f"  {a} -> {b}")
    print("named elements (bicross): M2 W2 W13 W23 Wp Wm; (tilde): Wtp")
    print(f"kernel: {IMPLEMENTATION}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser):
    p.add_argument("--order", "-K", type=int, default=None,
                   help=f"truncation order in the deformation parameter (env {ORDER_ENV})")
    p.add_argument("--fuel", type=int, default=None, help="rewrite-step budget per multiplication")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hopfverify", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run check suites")
    _common(v)
    v.add_argument("--suite", action="append", choices=list(SUITE_ORDER) + ["all"],
                   help="suite to run (repeatable; default all)")
    v.add_argument("--algebra", default=None, help="classical | kinematical | tilde | bicross | file:PATH")
    v.add_argument("--jobs", "-j", type=int, default=1, help="worker processes")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--seed", type=int, default=0, help="seed for sampled product checks")
    v.add_argument("--w2-order", type=int, default=None,
                   help="order for the Pauli-Lubanski square centrality check (default 3)")
    v.add_argument("--timings", action="store_true", help="include timings in JSON output")
    v.add_argument("--max-witnesses", type=int, default=5)
    v.add_argument("--quiet", "-q", action="store_true", help="no progress lines on stderr")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("map", help="apply a change of basis to an expression")
    _common(m)
    m.add_argument("--from", dest="source", choices=BUILTIN)
    m.add_argument("--to", dest="target", choices=BUILTIN)
    m.add_argument("--roundtrip", action="store_true", help="map there and back")
    m.add_argument("--expr", required=True)
    m.set_defaults(func=cmd_map)

    e = sub.add_parser("eval", help="normal-order an expression")
    _common(e)
    e.add_argument("--algebra", default=None, help="default bicross")
    e.add_argument("--expr", required=True)
    e.set_defaults(func=cmd_eval)

    ls = sub.add_parser("list", help="list presentations, suites and checks")
    ls.set_defaults(func=cmd_list)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        ap.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"hopfverify: error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except AlgfileError as e:
        print(f"hopfverify: error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except RewriteFuelError as e:
        print(f"hopfverify: error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
