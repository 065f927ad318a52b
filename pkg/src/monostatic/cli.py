"""Command-line front end.

Exit codes: 0 ok, 1 verification mismatch, 2 invalid parameters,
3 construction failure, 4 non-convex or otherwise invalid input mesh,
5 marginal equilibria present (report still written), 6 optimizer error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings

from monostatic import meshio
from monostatic.equilibria import classify, classify_2d, complexity, sampling_oracle
from monostatic.errors import (
    ConstructionError,
    DegenerateError,
    InvalidParameterError,
    MonostaticError,
    OptimizationError,
    OutsideBodyError,
)
from monostatic.fixtures import TABLE2, TABLE2_MERGE_TOLERANCE, fixture_dict, load_fixture_dict, table1_row, table2_body
from monostatic.geometry import Polygon2D, default_tolerance
from monostatic.mass import MassModel, centroid, zc_closed_form
from monostatic.optimize import optimize, scan
from monostatic.spiral import SpiralParams, build
from monostatic.verification import verify_fixtures

EXIT_MISMATCH = 1
EXIT_INVALID = 2
EXIT_CONSTRUCTION = 3
EXIT_NONCONVEX = 4
EXIT_MARGINAL = 5
EXIT_OPTIMIZER = 6


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _fail(code, message):
    print(f"error: {message}", file=sys.stderr)
    return code


def _angle_list(text):
    try:
        return [float(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise InvalidParameterError(f"bad angle list {text!r}") from exc


def _csv_table(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "k", "v", "z_C", "status", "alphas_deg"])
    for r in rows:
        angles = " ".join(f"{a:.5g}" for a in r["alphas_deg_table_order"])
        zc = "" if r["z_C"] is None else f"{r['z_C']:.5e}"
        writer.writerow([r["n"], "" if r["k"] is None else r["k"], "" if r["v"] is None else r["v"], zc, r["status"], angles])
    return buf.getvalue()


def cmd_generate(args) -> int:
    try:
        if args.table1_row is not None:
            row = table1_row(args.table1_row)
            params = row.params
        else:
            if args.n is None or args.k is None or args.alphas is None:
                raise InvalidParameterError("give --table1-row or all of --n, --k, --alphas")
            params = SpiralParams.from_table_order(args.n, args.k, _angle_list(args.alphas))
        params.validate()
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            body = build(params)
    except (InvalidParameterError, KeyError) as exc:
        return _fail(EXIT_INVALID, exc)
    except ConstructionError as exc:
        return _fail(EXIT_CONSTRUCTION, exc)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if args.json:
        meshio.write_json(body, args.json)
    if args.obj:
        meshio.write_obj(body, args.obj)
    center = centroid(body, "vertex")
    faces = 1 if isinstance(body, Polygon2D) else body.n_faces
    print(f"n={params.n} k={params.k} v={body.n_vertices} faces={faces}")
    print(f"z_C closed form {zc_closed_form(params):.8g}; vertex centroid {center.z:.8g}")
    print("validation: ok")
    return 0


def _load_body(args):
    if args.table2:
        label = tuple(int(t) for t in args.table2.split(","))
        if label not in TABLE2:
            raise InvalidParameterError(f"no Table 2 block {label}")
        return table2_body(label), TABLE2_MERGE_TOLERANCE
    if not args.input:
        raise InvalidParameterError("give --input or --table2")
    return meshio.read_mesh(args.input, merge_tol=args.merge_tolerance), None


def cmd_classify(args) -> int:
    tol = default_tolerance() if args.tolerance is None else args.tolerance
    try:
        model = MassModel.parse(args.mass)
        body, fixture_tol = _load_body(args)
    except (InvalidParameterError, ValueError) as exc:
        return _fail(EXIT_INVALID, exc)
    except (OSError, KeyError) as exc:
        return _fail(EXIT_NONCONVEX, f"cannot read mesh: {exc}")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            if isinstance(body, Polygon2D):
                report = classify_2d(body, centroid(body, model), tol=tol)
                cplx = None
            else:
                check_tol = fixture_tol or tol
                body.validate(tol=check_tol, planarity=max(check_tol, 1e-8))
                report = classify(body, centroid(body, model), tol=tol, validate=False)
                cplx = complexity(report, body)
    except (ConstructionError, OutsideBodyError, DegenerateError) as exc:
        return _fail(EXIT_NONCONVEX, exc)
    out = report.to_dict(cplx)
    if args.oracle and not isinstance(body, Polygon2D):
        est = sampling_oracle(body, report.centroid, args.oracle)
        out["oracle"] = {"samples": est.samples, "S": est.S, "U": est.U, "agrees": est.agrees_with(report)}
        print(f"oracle ({est.samples} samples): S={est.S} U={est.U} agrees={est.agrees_with(report)}", file=sys.stderr)
    _write(args.output, _dump(out))
    print(f"S={report.S} H={report.H} U={report.U} complexity={cplx} marginal={len(report.marginal)}", file=sys.stderr)
    if report.marginal:
        return EXIT_MARGINAL
    return 0


def cmd_verify(args) -> int:
    if args.dump_fixtures:
        _write(args.dump_fixtures, _dump(fixture_dict()))
        return 0
    rows = blocks = None
    if args.fixtures:
        try:
            with open(args.fixtures, encoding="utf-8") as fh:
                rows, blocks = load_fixture_dict(json.load(fh))
        except (OSError, ValueError, KeyError) as exc:
            return _fail(EXIT_INVALID, f"cannot read fixtures: {exc}")
    kwargs = {"oracle_samples": args.oracle}
    if rows is not None:
        kwargs.update(rows=rows, blocks=blocks)
    checks = verify_fixtures(**kwargs)
    width = max(len(c.name) for c in checks)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name:<{width}}  {c.detail}")
    passed = sum(c.passed for c in checks)
    print(f"{passed}/{len(checks)} checks passed")
    if args.output:
        _write(args.output, _dump([{"name": c.name, "passed": c.passed, "detail": c.detail, **c.data} for c in checks]))
    return 0 if passed == len(checks) else EXIT_MISMATCH


def cmd_optimize(args) -> int:
    try:
        result = optimize(args.n, args.k, starts=args.starts, seed=args.seed)
    except InvalidParameterError as exc:
        return _fail(EXIT_INVALID, exc)
    except (OptimizationError, MonostaticError) as exc:
        return _fail(EXIT_OPTIMIZER, exc)
    out = result.to_dict()
    _write(args.output, _dump(out))
    if args.csv:
        _write(args.csv, _csv_table([out]))
    print(f"n={result.n} k={result.k} v={result.v} z_C={result.objective:.8g} status={result.status}", file=sys.stderr)
    return 0


def cmd_scan(args) -> int:
    try:
        rows = scan(args.n_max, args.k_max, starts=args.starts, seed=args.seed)
    except InvalidParameterError as exc:
        return _fail(EXIT_INVALID, exc)
    except MonostaticError as exc:
        return _fail(EXIT_OPTIMIZER, exc)
    out = [r.to_dict() for r in rows]
    _write(args.output, _dump(out))
    if args.csv:
        _write(args.csv, _csv_table(out))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monostatic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build a Conway k-spiral body")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--alphas", help="degrees, bottom-up: a_{n+1},a_n,...,a_1")
    p.add_argument("--table1-row", type=int)
    p.add_argument("--json", help="write mesh JSON")
    p.add_argument("--obj", help="write Wavefront OBJ")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("classify", help="census of static equilibria of a mesh")
    p.add_argument("--input", help="mesh JSON/OBJ (JSON without faces = point cloud)")
    p.add_argument("--table2", help="embedded coordinate block, e.g. 3,1")
    p.add_argument("--mass", default="vertex", choices=[m.value for m in MassModel])
    p.add_argument("--oracle", type=int, default=0, metavar="N", help="cross-check with N sphere samples")
    p.add_argument("--tolerance", type=float, help="relative strictness band (default $MONOSTATIC_TOLERANCE or 1e-9)")
    p.add_argument("--merge-tolerance", type=float, help="coplanarity band when hulling point clouds")
    p.add_argument("--output", help="report JSON path (default stdout)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="recompute the embedded reference tables")
    p.add_argument("--fixtures", help="fixture JSON replacing the embedded tables")
    p.add_argument("--dump-fixtures", metavar="PATH", help="write the embedded fixtures and exit")
    p.add_argument("--oracle", type=int, default=0, metavar="N")
    p.add_argument("--output", help="summary JSON path")
    p.set_defaults(func=cmd_verify)

    for name, func in (("optimize", cmd_optimize), ("scan", cmd_scan)):
        p = sub.add_parser(name, help=f"{name} spiral angles")
        if name == "optimize":
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--k", type=int, required=True)
        else:
            p.add_argument("--n-max", type=int, required=True)
            p.add_argument("--k-max", type=int, required=True)
        p.add_argument("--starts", type=int, default=16 if name == "optimize" else 4)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", help="result JSON path (default stdout)")
        p.add_argument("--csv", help="CSV table path")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
