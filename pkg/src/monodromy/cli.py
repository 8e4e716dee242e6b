"""Command-line front end: JSON I/O for tuples and coordinates, subcommands
wiring the library, and human-readable residual reports.

Exit codes: 0 success, 2 parse/flag error, 3 residual or invariant failure,
4 no usable chart, 5 signature boundary.

File formats are UTF-8 JSON with every complex number written as an
``[re, im]`` pair.  A tuple file carries ``n``, the n+1 local traces ``a``
and the n matrices as 2x2 row-major grids; a coordinate file carries ``n``,
``a`` and the maps ``pairs``/``triples`` keyed by concatenated indices
("21", "321", ...), which restricts files to n <= 9.  Rewriting a file read
back in reproduces it byte for byte.

The environment variable MONODROMY_TOL overrides the default tolerance of
1e-9; --tol overrides both.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .charts import ChartId, classify_charts
from .coords import (
    LocalData,
    Representation,
    TraceCoordinates,
    close_tuple,
    closure_residual,
    phi,
)
from .errors import (
    BadChart,
    ChartNotAdmissible,
    DegenerateEigenvalues,
    MonodromyError,
    PsiDegenerate,
    TraceOutOfRange,
)
from .reconstruct import MINUS, PLUS, reconstruct
from .relations import membership, type1_pairs, type2_terms
from .samplers import SamplerConfig, sample_generic, sample_su2, sample_su11
from .sl2 import Mat2, Tolerance
from .unitary import Signature, classify, hermitian_form, reality_gate, verify_invariance

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_RESIDUAL = 3
EXIT_NO_CHART = 4
EXIT_BOUNDARY = 5


class ParseError(Exception):
    """Malformed file content or flag value (exit code 2)."""


class DataError(Exception):
    """Structurally valid input violating a library invariant (exit code 3)."""


# ---------------------------------------------------------------------------
# JSON (de)serialization


def _c_out(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _c_in(obj, what: str) -> complex:
    ok = (
        isinstance(obj, list)
        and len(obj) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj)
    )
    if not ok:
        raise ParseError(f"{what}: expected [re, im], got {obj!r}")
    return complex(obj[0], obj[1])


def rep_to_obj(rep: Representation, provenance: dict | None = None) -> dict:
    local = rep.local()
    obj = {
        "n": rep.n,
        "a": [_c_out(v) for v in local.a],
        "matrices": [
            [[_c_out(m.m11), _c_out(m.m12)], [_c_out(m.m21), _c_out(m.m22)]]
            for m in rep.mats
        ],
    }
    if provenance is not None:
        obj["seed"] = provenance
    return obj


def rep_from_obj(obj, tol: Tolerance) -> Representation:
    if not isinstance(obj, dict):
        raise ParseError("tuple file: top level must be a JSON object")
    try:
        n = obj["n"]
        raw_a = obj["a"]
        raw_mats = obj["matrices"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"tuple file: missing field {exc}") from exc
    if not isinstance(n, int) or n < 3:
        raise ParseError(f"tuple file: n must be an integer >= 3, got {n!r}")
    if not isinstance(raw_a, list) or len(raw_a) != n + 1:
        raise ParseError(f"tuple file: 'a' must list {n + 1} traces")
    if not isinstance(raw_mats, list) or len(raw_mats) != n:
        raise ParseError(f"tuple file: 'matrices' must list {n} matrices")
    declared = [_c_in(v, f"a[{idx}]") for idx, v in enumerate(raw_a)]
    mats = []
    for s, grid in enumerate(raw_mats, start=1):
        shape_ok = (
            isinstance(grid, list) and len(grid) == 2
            and all(isinstance(row, list) and len(row) == 2 for row in grid)
        )
        if not shape_ok:
            raise ParseError(f"matrix {s}: expected a 2x2 grid of [re, im] pairs")
        mats.append(Mat2(
            _c_in(grid[0][0], f"matrix {s} entry (1,1)"),
            _c_in(grid[0][1], f"matrix {s} entry (1,2)"),
            _c_in(grid[1][0], f"matrix {s} entry (2,1)"),
            _c_in(grid[1][1], f"matrix {s} entry (2,2)"),
        ))
    rep = close_tuple(mats, tol)
    actual = rep.local()
    for idx in range(1, n + 2):
        err = abs(actual.trace(idx) - declared[idx - 1])
        if err > tol.bound(1.0 + abs(declared[idx - 1])):
            raise DataError(
                f"declared trace a_{idx} disagrees with the matrices by {err:.3e}"
            )
    return rep


def coords_to_obj(x: TraceCoordinates) -> dict:
    if x.n > 9:
        raise ValueError("the concatenated-digit key format supports n <= 9")
    pairs: dict[str, list[float]] = {}
    triples: dict[str, list[float]] = {}
    for key, v in x.items():
        target = pairs if len(key) == 2 else triples
        target["".join(str(c) for c in key)] = _c_out(v)
    return {
        "n": x.n,
        "a": [_c_out(v) for v in x.local.a],
        "pairs": pairs,
        "triples": triples,
    }


def coords_from_obj(obj) -> TraceCoordinates:
    if not isinstance(obj, dict):
        raise ParseError("coordinate file: top level must be a JSON object")
    try:
        n = obj["n"]
        raw_a = obj["a"]
        raw_pairs = obj["pairs"]
        raw_triples = obj["triples"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"coordinate file: missing field {exc}") from exc
    if not isinstance(n, int) or not 3 <= n <= 9:
        raise ParseError(f"coordinate file: n must be an integer in 3..9, got {n!r}")
    if not isinstance(raw_a, list) or len(raw_a) != n + 1:
        raise ParseError(f"coordinate file: 'a' must list {n + 1} traces")
    local = LocalData(tuple(_c_in(v, f"a[{idx}]") for idx, v in enumerate(raw_a)))
    if not isinstance(raw_pairs, dict) or not isinstance(raw_triples, dict):
        raise ParseError("coordinate file: 'pairs' and 'triples' must be objects")
    pairs = {}
    for key, val in raw_pairs.items():
        if len(key) != 2 or not key.isdigit():
            raise ParseError(f"pair key {key!r}: expected two digits 'ji' with j > i")
        j, i = int(key[0]), int(key[1])
        if not 1 <= i < j <= n:
            raise ParseError(f"pair key {key!r}: need 1 <= i < j <= {n}")
        pairs[(i, j)] = _c_in(val, f"pair {key}")
    triples = {}
    for key, val in raw_triples.items():
        if len(key) != 3 or not key.isdigit():
            raise ParseError(f"triple key {key!r}: expected three digits 'kji' with k > j > i")
        k, j, i = int(key[0]), int(key[1]), int(key[2])
        if not 1 <= i < j < k <= n:
            raise ParseError(f"triple key {key!r}: need 1 <= i < j < k <= {n}")
        triples[(i, j, k)] = _c_in(val, f"triple {key}")
    try:
        return TraceCoordinates(local, pairs, triples)
    except ValueError as exc:
        raise ParseError(f"coordinate file: {exc}") from exc


def read_json(path: str):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def write_json(path: str, obj) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _fmt_c(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}j"


# ---------------------------------------------------------------------------
# Subcommands


def cmd_coords(args, tol: Tolerance) -> int:
    rep = rep_from_obj(read_json(args.input), tol)
    x = phi(rep)
    print(f"n                : {rep.n}")
    print(f"closure residual : {closure_residual(rep):.3e}")
    print(f"closing trace    : {_fmt_c(rep.last.trace)}")
    write_json(args.output, coords_to_obj(x))
    if args.output != "-":
        print(f"wrote {args.output}")
    return EXIT_OK


def cmd_relations(args, tol: Tolerance) -> int:
    x = coords_from_obj(read_json(args.input))
    res = membership(x)
    worst_label = ""
    worst = -1.0

    def show(label: str, value: float) -> None:
        nonlocal worst, worst_label
        print(f"{label:<28s}: {value:.3e}")
        if value > worst:
            worst, worst_label = value, label

    for (ta, tb), value in zip(type1_pairs(x.n), res.type1):
        show(f"type1 {ta}x{tb}", value)
    for (i, quad), value in zip(type2_terms(x.n), res.type2):
        show(f"type2 i={i} {quad}", value)
    if res.type3 is not None:
        show("type3", res.type3)
    print(f"relations                   : {res.count}")
    print(f"max residual (raw)          : {res.max:.3e}")
    print(f"max residual (normalized)   : {res.normalized:.3e}  [scale {res.scale:.3e}]")
    if res.normalized <= tol.abs:
        print("PASS")
        return EXIT_OK
    print(f"FAIL  worst: {worst_label}")
    return EXIT_RESIDUAL


def _parse_chart(text: str) -> ChartId:
    parts = text.split(",")
    if len(parts) != 3:
        raise ParseError(f"chart {text!r}: expected 'j,k,i0' or 'j,k,base'")
    try:
        j, k = int(parts[0]), int(parts[1])
        i0 = 0 if parts[2].strip() == "base" else int(parts[2])
        return ChartId(j, k, i0)
    except (ValueError, BadChart) as exc:
        raise ParseError(f"chart {text!r}: {exc}") from exc


def cmd_reconstruct(args, tol: Tolerance) -> int:
    x = coords_from_obj(read_json(args.input))
    if args.chart == "auto":
        report = classify_charts(x, tol)
        if report.best is None:
            print("no admissible chart at this point", file=sys.stderr)
            return EXIT_NO_CHART
        chart = report.best
    else:
        chart = _parse_chart(args.chart)
    branch = PLUS if args.branch == "+" else MINUS
    try:
        result = reconstruct(x, chart, branch, tol)
    except (ChartNotAdmissible, DegenerateEigenvalues) as exc:
        print(f"chart {chart.label()} unusable: {exc}", file=sys.stderr)
        return EXIT_NO_CHART
    except BadChart as exc:
        raise ParseError(str(exc)) from exc
    diag = result.diagnostics
    print(f"chart            : {chart.label()}   branch: {'+' if branch.sign > 0 else '-'}")
    for s in range(1, x.n + 2):
        print(
            f"M_{s:<2d}  |tr-a| = {diag.trace[s - 1]:.3e}   "
            f"|det-1| = {diag.det[s - 1]:.3e}"
        )
    print(f"closure residual    : {diag.closure:.3e}")
    print(f"round-trip residual : {diag.round_trip:.3e}")
    print(f"input membership    : {diag.membership_max:.3e} (normalized)")
    write_json(args.output, rep_to_obj(result.rep))
    if args.output != "-":
        print(f"wrote {args.output}")
    if diag.worst() > tol.abs:
        print(f"FAIL  worst residual {diag.worst():.3e} exceeds {tol.abs:.1e}")
        return EXIT_RESIDUAL
    print("PASS")
    return EXIT_OK


def cmd_classify(args, tol: Tolerance) -> int:
    x = coords_from_obj(read_json(args.input))
    print(f"reality gate  : {'pass' if reality_gate(x, tol) else 'fail'}")
    try:
        sig = classify(x, tol)
    except (PsiDegenerate, DegenerateEigenvalues) as exc:
        print("verdict       : boundary")
        print(f"reason        : {exc}")
        return EXIT_BOUNDARY
    if sig.kind is Signature.NOT_UNITARY:
        print("verdict       : not-unitary")
        print(f"reason        : {sig.detail}")
        return EXIT_OK
    print(f"best chart    : {sig.chart.label()}")
    print(f"x_kj^2 - 4    : {sig.disc:.12g}  ({'>' if sig.disc > 0 else '<'} 0)")
    print(f"psi           : {sig.psi:.12g}  ({'>' if sig.psi > 0 else '<'} 0)")
    form = hermitian_form(x, sig.chart, tol)
    h = form.matrix()
    print(f"H             : [[{_fmt_c(h.m11)}, {_fmt_c(h.m12)}], "
          f"[{_fmt_c(h.m21)}, {_fmt_c(h.m22)}]]")
    rec = reconstruct(x, sig.chart, tol=tol)
    print(f"invariance    : {verify_invariance(rec.rep, form):.3e}")
    print(f"verdict       : {sig.kind.value}")
    return EXIT_OK


def cmd_sample(args, tol: Tolerance) -> int:
    if args.traces and args.thetas:
        raise ParseError("--traces and --thetas are mutually exclusive")
    traces = None
    if args.traces:
        try:
            traces = tuple(complex(tok) for tok in args.traces.split(","))
        except ValueError as exc:
            raise ParseError(f"--traces: {exc}") from exc
    elif args.thetas:
        try:
            angles = [float(tok) for tok in args.thetas.split(",")]
        except ValueError as exc:
            raise ParseError(f"--thetas: {exc}") from exc
        traces = tuple(2.0 * math.cos(math.pi * th) for th in angles)
    try:
        cfg = SamplerConfig(args.seed, args.n, traces, args.entry_bound)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    sampler = {"generic": sample_generic, "su2": sample_su2, "su11": sample_su11}[args.kind]
    rep = sampler(cfg)
    provenance = {
        "kind": args.kind,
        "seed": args.seed,
        "n": args.n,
        "entry_bound": args.entry_bound,
    }
    write_json(args.output, rep_to_obj(rep, provenance))
    local = rep.local()
    print(f"kind           : {args.kind}")
    print(f"traces         : {', '.join(_fmt_c(v) for v in local.a[:-1])}")
    print(f"closing trace  : {_fmt_c(local.a[-1])}")
    if args.output != "-":
        print(f"wrote {args.output}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monodromy",
        description="Trace coordinates, relation residuals, matrix reconstruction, "
                    "and unitarity classification for rank-2 monodromy tuples.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_tol(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--tol", type=float, default=None,
            help="tolerance (default: MONODROMY_TOL env var, else 1e-9)",
        )

    p = sub.add_parser("coords", help="compute trace coordinates of a tuple file")
    p.add_argument("input", help="tuple JSON file")
    p.add_argument("-o", "--output", required=True, help="coordinate JSON file ('-' for stdout)")
    add_tol(p)
    p.set_defaults(func=cmd_coords)

    p = sub.add_parser("relations", help="evaluate the defining relations at a coordinate file")
    p.add_argument("input", help="coordinate JSON file")
    add_tol(p)
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("reconstruct", help="build a matrix tuple from coordinates on a chart")
    p.add_argument("input", help="coordinate JSON file")
    p.add_argument("-o", "--output", required=True, help="tuple JSON file ('-' for stdout)")
    p.add_argument("--chart", default="auto", help="'j,k,i0', 'j,k,base' or 'auto' (default)")
    p.add_argument("--branch", choices=["+", "-"], default="+", help="square-root branch")
    add_tol(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("classify", help="decide unitarity and signature of a coordinate file")
    p.add_argument("input", help="coordinate JSON file")
    add_tol(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sample", help="write a deterministic fixture tuple")
    p.add_argument("--kind", choices=["generic", "su2", "su11"], default="generic")
    p.add_argument("--n", type=int, required=True, help="tuple size (>= 3)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--traces", default=None,
                   help="comma-separated target traces (complex literals accepted)")
    p.add_argument("--thetas", default=None,
                   help="comma-separated local exponents; converted via a = 2 cos(pi theta)")
    p.add_argument("--entry-bound", type=float, default=4.0, dest="entry_bound")
    p.add_argument("-o", "--output", required=True, help="tuple JSON file ('-' for stdout)")
    add_tol(p)
    p.set_defaults(func=cmd_sample)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    tol_value = args.tol
    if tol_value is None:
        env = os.environ.get("MONODROMY_TOL")
        if env is not None:
            try:
                tol_value = float(env)
            except ValueError:
                print(f"error: MONODROMY_TOL={env!r} is not a number", file=sys.stderr)
                return EXIT_PARSE
    if tol_value is None:
        tol_value = 1e-9
    try:
        tol = Tolerance(tol_value, tol_value)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args, tol)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESIDUAL
    except TraceOutOfRange as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESIDUAL
    except MonodromyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESIDUAL


if __name__ == "__main__":
    raise SystemExit(main())
