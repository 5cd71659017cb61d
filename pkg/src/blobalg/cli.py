"""Command-line driver: dimensions, bases, products, regions, modules,
verification suites, and the tensor-space tables.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import calib as cb
from . import diagrams as dg
from . import regions as rg
from . import schurweyl as sw
from . import words as wd
from .scalars import render

USAGE_ERROR = 2
CHECK_FAILED = 1


def _fail(msg: str) -> int:
    print("error: %s" % msg, file=sys.stderr)
    return USAGE_ERROR


def cmd_dims(args) -> int:
    if args.k < 1 or args.k > args.max_k:
        return _fail("dims needs 1 <= k <= %d" % args.max_k)
    rows = []
    for k in range(1, args.k + 1):
        basis = dg.enumerate_basis(k, {0, 1}, max_wall_grade_bound=args.bound)
        per_grade = {}
        for w in range(0, args.bound + 1):
            per_grade[w] = len(dg.enumerate_basis(k, {w}, max_wall_grade_bound=args.bound))
        rows.append({"k": k, "blob_dim": len(basis), "per_grade": per_grade})
    if args.json:
        print(json.dumps(rows))
    else:
        for row in rows:
            grades = "  ".join("w=%d:%d" % (w, n) for w, n in row["per_grade"].items())
            print("k=%d: %d   (%s)" % (row["k"], row["blob_dim"], grades))
    return 0


def cmd_basis(args) -> int:
    grades = set(int(w) for w in args.grades.split(","))
    basis = dg.enumerate_basis(args.k, grades, max_wall_grade_bound=args.bound)
    if args.json:
        print(json.dumps([dg.diagram_to_json(d) for d in basis]))
    else:
        for d in basis:
            print(repr(d))
        print("total: %d" % len(basis))
    return 0


def cmd_mul(args) -> int:
    x = dg.element_from_json(json.loads(args.x)) if args.x.strip().startswith("{") \
        else wd.expand_to_tl(_parse_genexpr(args.x, args.k))
    y = dg.element_from_json(json.loads(args.y)) if args.y.strip().startswith("{") \
        else wd.expand_to_tl(_parse_genexpr(args.y, args.k))
    print(json.dumps(dg.element_to_json(x * y)))
    return 0


def _parse_genexpr(text: str, k: int) -> wd.GenExpr:
    return wd.parse_genexpr(text, k)


def cmd_region(args) -> int:
    params = rg.RegionParams(Fraction(args.r1), Fraction(args.r2))
    c = tuple(Fraction(v) for v in args.c.split(","))
    J = frozenset(rg.parse_root(s) for s in args.J.split(",")) if args.J else frozenset()
    region = rg.LocalRegion(c, J, params)
    config = rg.build_config(region)
    zset, pset = region.root_sets()
    out = {
        "region": rg.region_to_json(region),
        "Z": sorted(map(rg.render_root, zset)),
        "P": sorted(map(rg.render_root, pset)),
        "fillings": [list(f) for f in rg.enumerate_fillings(config)],
        "skew": rg.is_skew(region, config),
        "tl_shape": rg.is_tl_shape(region, config),
        "vanishing": {k2: v for k2, v in rg.vanishing_predicates(region, config).items()
                      if k2 != "witnesses"},
    }
    if args.json:
        print(json.dumps(out))
    else:
        print(rg.render_config(config))
        for key in ("Z", "P", "fillings", "skew", "tl_shape"):
            print("%s: %s" % (key, out[key]))
        print("vanishing: %s" % out["vanishing"])
    return 0


def cmd_module(args) -> int:
    params = rg.RegionParams(Fraction(args.r1), Fraction(args.r2))
    c = tuple(Fraction(v) for v in args.c.split(","))
    J = frozenset(rg.parse_root(s) for s in args.J.split(",")) if args.J else frozenset()
    region = rg.LocalRegion(c, J, params)
    module = cb.build_module(cb.ModuleSpec(region, branch=args.branch))
    pres = cb.check_presentation(module, trials=args.trials, seed=args.seed)
    nul = cb.idempotent_nullity(module)
    out = {"dim": module.n,
           "presentation": {"mode": pres["mode"], "passed": pres["passed"]},
           "nullity": nul}
    try:
        cc = cb.central_character(module)
        out["central_character"] = {"z": render(cc["z"]),
                                    "matches_convention": cc.get("matches_convention")}
    except cb.CalibError as exc:
        out["central_character"] = {"error": str(exc)}
    if nul["is_tl_module"]:
        bc = cb.b_constant(module)
        out["b"] = render(bc["b"]) if bc["b"] is not None else None
    if args.matrices:
        out["matrices"] = {
            "T0": [[render(x) for x in row] for row in module.T[0]],
            **{"T%d" % i: [[render(x) for x in row] for row in module.T[i]]
               for i in range(1, module.k)},
            "W": [[render(module.W[i][j][j]) for j in range(module.n)]
                  for i in range(module.k)],
        }
    print(json.dumps(out))
    return 0 if pres["passed"] else CHECK_FAILED


def cmd_verify(args) -> int:
    from . import verify as vf
    suite_fns = {"relations": vf.suite_relations, "theorem3": vf.suite_theorem3,
                 "presentation": vf.suite_presentation,
                 "classification": vf.suite_classification}
    if args.suite not in suite_fns:
        return _fail("unknown suite %r" % args.suite)
    if args.suite == "relations" and args.k > args.max_k:
        return _fail("relations suite limited to k <= %d" % args.max_k)
    kwargs = {"k": args.k}
    if args.suite == "classification":
        kwargs.update(r1=Fraction(args.r1), r2=Fraction(args.r2),
                      bound=Fraction(args.bound_diag))
    if args.suite == "presentation":
        kwargs.update(trials=args.trials, seed=args.seed)
    report = suite_fns[args.suite](**kwargs)
    print(json.dumps(report) if args.json else _render_report(report))
    return 0 if report["passed"] else CHECK_FAILED


def _render_report(report: dict) -> str:
    lines = ["suite: %s" % report["suite"]]
    for name, ok in report["checks"].items():
        lines.append("  %-50s %s" % (name, "pass" if ok else "FAIL"))
    lines.append("result: %s" % ("pass" if report["passed"] else "FAIL"))
    return "\n".join(lines)


def cmd_schurweyl(args) -> int:
    try:
        params = sw.SWParams(args.a, args.b)
    except sw.SchurWeylError as exc:
        return _fail(str(exc))
    out = {}
    if args.dims or not (args.dot or args.bvalues):
        out["dims"] = sw.sw_table(params, args.k)
        out["dim_sum_ok"] = sw.dim_check_sum(params, args.k)
    if args.dot:
        br = sw.bratteli(params, args.k)
        dot = sw.bratteli_dot(br)
        if args.out:
            with open(args.out, "w") as f:
                f.write(dot)
        else:
            print(dot)
            return 0
    if args.bvalues:
        rows = []
        for (l1, l) in sw.level_nodes(params, args.k):
            if sw.zero_multiplicity(params, args.k, l):
                continue
            rep = sw.gn_b_values(params, args.k, l)
            rows.append({"l": l, "agrees": rep["agrees"],
                         "b_gn": render(rep["b_gn"])})
        out["b_values"] = rows
    if out:
        print(json.dumps(out))
    return 0


def cmd_figure1(args) -> int:
    from . import verify as vf
    report = vf.suite_classification(k=2, r1=Fraction(args.r1), r2=Fraction(args.r2),
                                     bound=Fraction(args.bound_diag))
    print(json.dumps(report) if args.json else _render_report(report))
    return 0 if report["passed"] else CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="blobalg",
                                 description="two-boundary Temperley-Lieb workbench")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    # the same flags are accepted after the subcommand without clobbering
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    shared.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", parser_class=argparse.ArgumentParser)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[shared], **kw)

    p = add_parser("dims", help="blob-basis dimension table")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--bound", type=int, default=4)
    p.add_argument("--max-k", type=int, default=6)
    p.set_defaults(fn=cmd_dims)

    p = add_parser("basis", help="enumerate basis diagrams")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--grades", default="0,1")
    p.add_argument("--bound", type=int, default=4)
    p.set_defaults(fn=cmd_basis)

    p = add_parser("mul", help="multiply generator expressions or elements")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(fn=cmd_mul)

    p = add_parser("region", help="inspect a local region")
    p.add_argument("--c", required=True, help="comma list, e.g. 1/2,3/2")
    p.add_argument("--J", default="", help="comma list of roots, e.g. e2,e3-e2")
    p.add_argument("--r1", required=True)
    p.add_argument("--r2", required=True)
    p.set_defaults(fn=cmd_region)

    p = add_parser("module", help="build a calibrated module and check it")
    p.add_argument("--c", required=True)
    p.add_argument("--J", default="")
    p.add_argument("--r1", required=True)
    p.add_argument("--r2", required=True)
    p.add_argument("--branch", type=int, default=1, choices=(1, -1))
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--matrices", action="store_true")
    p.set_defaults(fn=cmd_module)

    p = add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=("relations", "theorem3", "presentation",
                                     "classification"))
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--max-k", type=int, default=6)
    p.add_argument("--r1", default="3/2")
    p.add_argument("--r2", default="11/2")
    p.add_argument("--bound-diag", default="7")
    p.add_argument("--trials", type=int, default=10)
    p.set_defaults(fn=cmd_verify)

    p = add_parser("schurweyl", help="tensor-space tables and graphs")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--dims", action="store_true")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--bvalues", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_schurweyl)

    p = add_parser("figure1", help="rank-2 classification chart data")
    p.add_argument("--r1", default="3/2")
    p.add_argument("--r2", default="11/2")
    p.add_argument("--bound-diag", default="7")
    p.set_defaults(fn=cmd_figure1)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if not getattr(args, "command", None):
        ap.print_help()
        return USAGE_ERROR
    # propagate globals set before the subcommand
    try:
        return args.fn(args)
    except (rg.RegionError, cb.CalibError, dg.DiagramError, wd.WordError,
            sw.SchurWeylError, ValueError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
