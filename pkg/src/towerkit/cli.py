"""Batch command-line surface.

Subcommands: build, homology, cofinality, tower, suite.  Objects are named
in a flat mini-language (no nesting beyond one 'sk k=.. of ..'); files are
referenced as @path.  Output is a pure function of the command line and
input files.  Exit codes: 0 all pass, 1 failure, 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .build import cech_power
from .cat import c_functor, cofinality_report
from .cosimplicial import FSpec
from .errors import CapExceeded, SpecParseError, TowerkitError
from .holim import tower_report
from .homology import homology
from .maps import Budget
from .report import (
    RunConfig,
    cofinality_figure,
    homology_csv_rows,
    homology_figure,
    json_bytes,
    render_table,
    suite_figure,
    tower_csv_rows,
    tower_figure,
    write_report,
)
from .sset import (
    SimplicialComplex,
    complex_from_json,
    complex_to_sset,
    discrete_complex,
    join_complexes,
    join_many,
    simplex_complex,
)
from .suites import SUITE_NAMES, corpus_by_name, run_suite


def _kv(tokens: list[str], pos: int) -> tuple[str, str]:
    tok = tokens[pos]
    if "=" not in tok:
        raise SpecParseError(f"expected key=value, got {tok!r}", pos)
    k, v = tok.split("=", 1)
    return k, v


def _resolve_atom(name: str, pos: int) -> SimplicialComplex:
    if name.startswith("@"):
        path = Path(name[1:])
        if not path.exists():
            raise SpecParseError(f"no such file {path}", pos)
        return complex_from_json(json.loads(path.read_text()))
    items = corpus_by_name()
    if name in items:
        return items[name].complex
    raise SpecParseError(f"unknown object {name!r}", pos)


def parse_object(spec: str, config: RunConfig):
    """Parse the object mini-language; returns a SimplicialComplex or a
    SimplicialSet (for objects that are not complexes, like cech)."""
    tokens = spec.split()
    if not tokens:
        raise SpecParseError("empty object spec", 0)
    head = tokens[0]
    args = {}
    rest_names = []
    for i, tok in enumerate(tokens[1:], start=1):
        if tok == "of":
            inner = " ".join(tokens[i + 1 :])
            if head != "sk":
                raise SpecParseError("'of' is only valid after sk", i)
            k = int(args.get("k", "0"))
            base = parse_object(inner, config)
            if not isinstance(base, SimplicialComplex):
                raise SpecParseError("sk .. of expects a complex-valued object", i)
            return base.skeleton(k)
        if "=" in tok:
            k, v = _kv(tokens, i)
            args[k] = v
        else:
            rest_names.append((tok, i))
    if head == "simplex":
        return simplex_complex(int(args["n"]))
    if head == "point":
        return _resolve_atom("point", 0)
    if head == "Xk":
        return simplex_complex(int(args["p"])).skeleton(int(args["k"]))
    if head == "Yk":
        k, p = int(args["k"]), int(args["p"])
        return join_many([discrete_complex(range(p + 1))] * (k + 1))
    if head == "sk0-join-power":
        k, p = int(args["k"]), int(args["p"])
        x = _resolve_atom(args["X"], 0)
        return join_many([discrete_complex(range(p + 1))] * (k + 1) + [x])
    if head == "join":
        if len(rest_names) != 2:
            raise SpecParseError("join needs exactly two operands", 0)
        a = _resolve_atom(rest_names[0][0], rest_names[0][1])
        b = _resolve_atom(rest_names[1][0], rest_names[1][1])
        return join_complexes(a, b)
    if head == "cech":
        z = int(args["z"])
        return cech_power([f"z{i}" for i in range(z)], config.bound + 1).sset
    if head == "sk":
        raise SpecParseError("sk needs 'of <object>'", 0)
    return _resolve_atom(head, 0)


def parse_fspec(text: str) -> FSpec:
    out = None
    for part in text.split("+"):
        if part == "identity":
            step = FSpec.identity()
        elif part.startswith("constant:"):
            step = FSpec.constant(_resolve_atom(part.split(":", 1)[1], 0))
        elif part.startswith("joinWith:"):
            step = FSpec.join_with(_resolve_atom(part.split(":", 1)[1], 0))
        else:
            raise SpecParseError(f"unknown functor step {part!r}", 0)
        out = step if out is None else out.then(step)
    return out


def _to_sset(obj, bound: int):
    if isinstance(obj, SimplicialComplex):
        return complex_to_sset(obj, bound)
    return obj


def _emit(args, config: RunConfig, data: dict, csv_rows, figure) -> None:
    if config.out:
        paths = write_report(Path(config.out), data, csv_rows, figure, config)
        print("\n".join(str(p) for p in paths))
    elif config.fmt == "json":
        sys.stdout.write(json_bytes(data).decode())
    elif config.fmt == "csv" and csv_rows is not None:
        from .report import csv_bytes

        sys.stdout.write(csv_bytes(csv_rows).decode())
    else:
        if csv_rows is not None:
            sys.stdout.write(render_table(csv_rows))
        else:
            sys.stdout.write(json_bytes(data).decode())


def cmd_build(args, config: RunConfig) -> int:
    obj = parse_object(args.object, config)
    if isinstance(obj, SimplicialComplex):
        data = {"kind": "complex", **obj.to_json()}
    else:
        data = {"kind": "sset", **obj.to_json()}
    _emit(args, config, data, None, None)
    return 0


def cmd_homology(args, config: RunConfig) -> int:
    obj = parse_object(args.object, config)
    r = args.range
    x = _to_sset(obj, max(r + 1, getattr(obj, "dim", lambda: 0)() if isinstance(obj, SimplicialComplex) else r + 1))
    if x.bound < r + 1:
        raise TowerkitError(f"object computed through degree {x.bound}; homology through {r} needs {r + 1}")
    h = homology(x, r, reduced=not args.unreduced)
    table = h.table()
    data = {"object": args.object, "reduced": not args.unreduced, "homology": table}
    rows = homology_csv_rows(table)
    _emit(args, config, data, rows,
          lambda p: homology_figure(table, p, args.object))
    return 0


def cmd_cofinality(args, config: RunConfig) -> int:
    if args.functor != "cn":
        raise SpecParseError(f"unknown functor {args.functor!r} (supported: cn)", 0)
    rep = cofinality_report(c_functor(args.n), args.mode, config.bound)
    data = rep.to_json()
    rows = [["alpha", "verdict", "detail"]] + [
        [v["alpha"], v["verdict"], v["detail"]] for v in data["per_alpha"]
    ]
    _emit(args, config, data, rows, lambda p: cofinality_figure(data, p))
    return 0 if rep.all_clear() else 1


def cmd_tower(args, config: RunConfig) -> int:
    f = parse_fspec(args.F)
    x = _resolve_atom(args.X, 0)
    lo, hi = (int(v) for v in args.n.split(".."))
    budget = Budget(config.cap)
    rep = tower_report(f, x, args.k, range(lo, hi + 1), config.bound,
                       config.ex_depth, budget)
    data = rep.to_json()
    rows = tower_csv_rows(data)
    _emit(args, config, data, rows, lambda p: tower_figure(data, p))
    return 0


def cmd_suite(args, config: RunConfig) -> int:
    result = run_suite(args.name, cap=config.cap)
    data = result.to_json()
    rows = result.csv_rows()
    if config.out:
        paths = write_report(Path(config.out), data, rows,
                             lambda p: suite_figure(data, p), config)
        print("\n".join(str(p) for p in paths))
    elif config.fmt == "json":
        sys.stdout.write(json_bytes(data).decode())
    elif config.fmt == "csv":
        from .report import csv_bytes

        sys.stdout.write(csv_bytes(rows).decode())
    else:
        print(result.table(timings=args.timings))
    return 0 if result.passed() else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=1)
    common.add_argument("--ex-depth", type=int, default=0)
    common.add_argument("--cap", type=int, default=300_000)
    common.add_argument("--format", choices=["json", "csv", "table"], default="table")
    common.add_argument("--out", default=None,
                        help="output file prefix (writes json/csv/png)")
    common.add_argument("--no-figures", action="store_true")

    ap = argparse.ArgumentParser(
        prog="towerkit",
        description="finite simplicial constructions, homotopy limits, exact homology",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common],
                       help="construct an object and emit its JSON")
    b.add_argument("object")
    b.set_defaults(fn=cmd_build)

    h = sub.add_parser("homology", parents=[common],
                       help="reduced homology table of an object")
    h.add_argument("object")
    h.add_argument("--range", type=int, default=1)
    h.add_argument("--unreduced", action="store_true")
    h.set_defaults(fn=cmd_homology)

    c = sub.add_parser("cofinality", parents=[common],
                       help="cofinality report for a named functor")
    c.add_argument("functor", help="cn")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--mode", choices=["comma_nerve", "delta_shaped"],
                   default="comma_nerve")
    c.set_defaults(fn=cmd_cofinality)

    t = sub.add_parser("tower", parents=[common],
                       help="tower report along the restriction maps")
    t.add_argument("--F", default="identity")
    t.add_argument("--X", default="S0")
    t.add_argument("--k", type=int, default=0)
    t.add_argument("--n", default="1..2", help="stage range lo..hi")
    t.set_defaults(fn=cmd_tower)

    s = sub.add_parser("suite", parents=[common],
                       help="run a named verification suite")
    s.add_argument("name", choices=list(SUITE_NAMES))
    s.add_argument("--timings", action="store_true")
    s.set_defaults(fn=cmd_suite)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        config = RunConfig(bound=args.bound, ex_depth=args.ex_depth, cap=args.cap,
                           fmt=args.format, out=args.out,
                           figures=not args.no_figures)
    except ValueError as e:
        ap.error(str(e))
    try:
        return args.fn(args, config)
    except SpecParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return 1
    except TowerkitError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
