"""Command line interface: validate, matrix, eval, experiment."""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import oracle
from .assembler import build_matrix
from .errors import MDSplineError, SpaceValidationError
from .eval_api import eval_basis, eval_spline, greville
from .legacy import build_matrix_derivative
from .presets import HIGHLIGHT_FUNCTION, TABLE7_RANGE, preset_space, table7
from .spaces import MDSpace

FMT = "%.16e"


def _fmt(v) -> str:
    return FMT % float(v)


def _load_space(args) -> MDSpace:
    if getattr(args, "preset", None):
        return preset_space(args.preset)
    if not getattr(args, "space", None):
        raise SpaceValidationError("provide --space FILE or --preset NAME")
    with open(args.space) as fh:
        return MDSpace.from_json(fh.read())


def _open_out(args):
    if getattr(args, "out", None):
        return open(args.out, "w", newline="")
    return sys.stdout


def _build(space: MDSpace, method: str):
    if method == "derivative":
        return build_matrix_derivative(space)
    return build_matrix(space, method)


def _exact_for(space: MDSpace, method: str):
    """Exact matrix on the reference space that method maps onto.

    The derivative route shares the stable route's reference and its exact
    replay equals the stable one, so both compare against the same oracle."""
    from .assembler import build_matrix_mixed, build_matrix_rde
    if method == "rde":
        return oracle.exact_bundle(space, build_matrix_rde)
    if method == "mixed":
        return oracle.exact_bundle(space, build_matrix_mixed)
    return oracle.exact_bundle(space)


def cmd_validate(args) -> int:
    space = _load_space(args)
    s, t = space.extended_partitions()
    report = {
        "space": space.to_dict(),
        "dimension": space.dimension,
        "c0_dimension": space.associated_c0().dimension,
        "sections": len(space.section_decomposition().sections),
        "extended_partition_left": list(s),
        "extended_partition_right": list(t),
    }
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(f"space: {space}")
        print(f"K={space.dimension}, K0={report['c0_dimension']}, "
              f"sections={report['sections']}")
        print(f"left partition:  {' '.join(_fmt(v) for v in s)}")
        print(f"right partition: {' '.join(_fmt(v) for v in t)}")
    return 0


def _matrix_rows(bundle):
    meta = {
        "strategy": bundle.strategy,
        "rows": int(bundle.matrix.shape[0]),
        "cols": int(bundle.matrix.shape[1]),
        "space": str(bundle.space),
        "reference": str(bundle.orders[0].ref),
    }
    return meta, [[_fmt(v) for v in row] for row in bundle.matrix]


def cmd_matrix(args) -> int:
    space = _load_space(args)
    bundle = _build(space, args.method)
    meta, rows = _matrix_rows(bundle)
    out = _open_out(args)
    try:
        if args.format == "json":
            doc = dict(meta)
            doc["matrix"] = [[float(v) for v in row] for row in rows]
            if args.oracle:
                exact = _exact_for(space, args.method)
                doc["matrix_exact"] = oracle.fraction_matrix_strings(exact.matrix)
                doc["oracle_error"] = oracle.matrix_error(bundle.matrix, exact.matrix)
            json.dump(doc, out, indent=2)
            out.write("\n")
        else:
            w = csv.writer(out)
            for key, val in meta.items():
                w.writerow([f"# {key}", val])
            for row in rows:
                w.writerow(row)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _parse_points(args, space: MDSpace) -> list[float]:
    if args.points:
        return [float(tok) for tok in args.points.split(",")]
    n = args.grid or 11
    a, b = space.a, space.b
    return [a + (b - a) * i / (n - 1) for i in range(n)]


def cmd_eval(args) -> int:
    space = _load_space(args)
    bundle = _build(space, args.method)
    points = _parse_points(args, space)
    coeffs = None
    if args.coeffs:
        with open(args.coeffs) as fh:
            coeffs = [float(tok) for tok in fh.read().replace(",", " ").split()]
    out = _open_out(args)
    try:
        w = csv.writer(out)
        if args.greville:
            w.writerow(["greville"] + [_fmt(v) for v in greville(bundle)])
        header = ["x"] + [f"N_{i}" for i in range(1, space.dimension + 1)]
        if coeffs is not None:
            header.append("spline")
        w.writerow(header)
        for x in points:
            vals = eval_basis(bundle, x).scatter()
            row = [_fmt(x)] + [_fmt(v) for v in vals]
            if coeffs is not None:
                row.append(_fmt(eval_spline(bundle, coeffs, x)))
            w.writerow(row)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _experiment_values(name, methods, use_oracle, w):
    """Tables of one highlighted function at the breakpoints."""
    space = preset_space(name)
    fn = HIGHLIGHT_FUNCTION[name]
    bundles = {m: _build(space, "rki" if m == "greville" else m) for m in methods}
    exact = oracle.exact_bundle(space) if use_oracle else None
    header = ["x"] + [f"value_{m}" for m in methods]
    if exact is not None:
        header += [f"abs_err_{m}" for m in methods] + [f"rel_err_{m}" for m in methods]
    w.writerow(header)
    for x in space.breakpoints:
        vals = {m: eval_basis(bundles[m], x).scatter()[fn - 1] for m in methods}
        row = [_fmt(x)] + [_fmt(vals[m]) for m in methods]
        if exact is not None:
            ev = oracle.eval_exact(exact, x)[fn - 1]
            errs = {m: oracle.value_error(vals[m], ev) for m in methods}
            row += [_fmt(errs[m][0]) for m in methods]
            row += [_fmt(errs[m][1]) for m in methods]
        w.writerow(row)


def _method_error(space, m) -> str:
    bundle = _build(space, "rki" if m == "greville" else m)
    exact = _exact_for(space, m)
    return _fmt(oracle.matrix_error(bundle.matrix, exact.matrix))


def _experiment_matrix(name, methods, w):
    space = preset_space(name)
    w.writerow(["method", "matrix_error"])
    for m in methods:
        w.writerow([m, _method_error(space, m)])


def _experiment_table7(methods, w):
    w.writerow(["k1", "dimension"] + [f"matrix_error_{m}" for m in methods])
    for k1 in TABLE7_RANGE[::2]:
        space = table7(k1)
        w.writerow([k1, space.dimension] +
                   [_method_error(space, m) for m in methods])


def cmd_experiment(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in ("greville", "derivative", "rde", "mixed"):
            raise SpaceValidationError(f"unknown method {m!r}")
    out = _open_out(args)
    try:
        w = csv.writer(out)
        if args.preset == "table7":
            _experiment_table7(methods, w)
        elif args.preset in HIGHLIGHT_FUNCTION:
            _experiment_values(args.preset, methods, args.oracle, w)
            if args.preset != "cox":
                _experiment_matrix(args.preset, methods, w)
        else:
            _experiment_matrix(args.preset, methods, w)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mdspline",
                                description="Matrix representations of "
                                            "multi-degree spline bases")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, method=True):
        sp.add_argument("--space", help="JSON space description file")
        sp.add_argument("--preset", help="named benchmark space")
        sp.add_argument("--out", help="output file (default stdout)")
        if method:
            sp.add_argument("--method", default="rki",
                            choices=["rki", "rde", "mixed", "derivative"])

    sp = sub.add_parser("validate", help="check a space and report dimensions")
    common(sp, method=False)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("matrix", help="write the representation matrix")
    common(sp)
    sp.add_argument("--format", default="csv", choices=["csv", "json"])
    sp.add_argument("--oracle", action="store_true",
                    help="add the exact matrix and its error (json format)")
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("eval", help="evaluate the basis on points")
    common(sp)
    sp.add_argument("--points", help="comma-separated evaluation points")
    sp.add_argument("--grid", type=int, help="number of uniform grid points")
    sp.add_argument("--coeffs", help="file of spline coefficients")
    sp.add_argument("--greville", action="store_true",
                    help="prepend the abscissae vector")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("experiment", help="benchmark table reproduction")
    sp.add_argument("--preset", required=True)
    sp.add_argument("--methods", default="greville")
    sp.add_argument("--oracle", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SpaceValidationError, FileNotFoundError, KeyError, ValueError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MDSplineError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
