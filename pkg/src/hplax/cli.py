"""Command-line orchestration.

Subcommands: gen | table | coeffs | solve-bvp | verify | qd.  All inputs and
outputs are the JSON documents of jsondoc; values are exact rational strings.

Exit codes: 0 ok, 2 parse error, 3 not-normal index, 4 non-perfect boundary,
5 insufficient truncation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import classical, jsondoc
from .bvp import cross_validate, field_from_moments, sweep_solve
from .errors import (DegeneracyError, HplaxError, NonPerfectBoundaryError,
                     NotNormalError, TruncationError)
from .hptable import HPTable
from .measures import (MomentSystem, jfraction_to_moments, make_angelesco,
                       make_nikishin)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NOT_NORMAL = 3
EXIT_NON_PERFECT = 4
EXIT_TRUNCATION = 5


def _read_doc(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise jsondoc.ParseError(f"cannot read {path}: {exc}") from exc


def _write_doc(doc: Any, path: str | None) -> None:
    text = json.dumps(doc, indent=2)
    if path is None or path == "-":
        print(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _default_order(n: int, m: int) -> int:
    # covers the deepest remainder and continued-fraction checks with margin
    return 2 * (n + m) + 4


# -- subcommands ---------------------------------------------------------------


def _cmd_gen(args) -> int:
    doc = _read_doc(args.infile)
    if args.order is not None:
        count = args.order
    elif args.window is not None:
        count = _default_order(*args.window)
    else:
        raise jsondoc.ParseError("gen needs --order K or --window N M")
    if args.system == "angelesco":
        system = make_angelesco(jsondoc.measure_from_doc(jsondoc.need(doc, "mu1")),
                                jsondoc.measure_from_doc(jsondoc.need(doc, "mu2")),
                                count)
    elif args.system == "nikishin":
        system = make_nikishin(jsondoc.measure_from_doc(jsondoc.need(doc, "sigma1")),
                               jsondoc.measure_from_doc(jsondoc.need(doc, "sigma2")),
                               count)
    elif args.system == "moments":
        system = MomentSystem(tuple(jsondoc.rat_list(jsondoc.need(doc, "s1"))),
                              tuple(jsondoc.rat_list(jsondoc.need(doc, "s2"))),
                              label=str(doc.get("label", "moments")))
    elif args.system == "jfraction":
        j1 = jsondoc.jfraction_from_doc(jsondoc.need(doc, "f1"))
        j2 = jsondoc.jfraction_from_doc(jsondoc.need(doc, "f2"))
        system = MomentSystem(tuple(jfraction_to_moments(j1, count)),
                              tuple(jfraction_to_moments(j2, count)),
                              label="jfraction")
    else:  # unreachable through argparse choices
        raise jsondoc.ParseError(f"unknown system {args.system!r}")
    _write_doc(jsondoc.moment_system_to_doc(system), args.outfile)
    return EXIT_OK


def _cmd_table(args) -> int:
    system = jsondoc.moment_system_from_doc(_read_doc(args.infile))
    n_max, m_max = args.window
    table = HPTable(system, n_max, m_max)
    s_grid = [[table.s_det(n, m) for m in range(m_max + 1)] for n in range(n_max + 1)]
    p_grid = [[table.hp_poly_det(n, m) for m in range(m_max + 1)]
              for n in range(n_max + 1)]
    _write_doc(jsondoc.table_to_doc(s_grid, p_grid, (n_max, m_max)), args.outfile)
    return EXIT_OK


def _cmd_coeffs(args) -> int:
    system = jsondoc.moment_system_from_doc(_read_doc(args.infile))
    n_max, m_max = args.window
    field = field_from_moments(system, n_max, m_max)
    _write_doc(jsondoc.field_to_doc(field), args.outfile)
    return EXIT_OK


def _cmd_solve_bvp(args) -> int:
    boundary = jsondoc.boundary_from_doc(_read_doc(args.infile))
    n_max, m_max = args.window
    report = sweep_solve(boundary, n_max, m_max)
    _write_doc(jsondoc.sweep_report_to_doc(report, (n_max, m_max)), args.outfile)
    if not report.ok:
        index, reason = report.failure
        print(f"non-perfect boundary: {reason}", file=sys.stderr)
        return EXIT_NON_PERFECT
    return EXIT_OK


def _cmd_verify(args) -> int:
    system = jsondoc.moment_system_from_doc(_read_doc(args.infile))
    n_max, m_max = args.window
    result = cross_validate(system, n_max, m_max)
    doc = {
        "kind": "verify_report",
        "convention": jsondoc.CONVENTION,
        "window": [n_max, m_max],
        "grids_equal": result.grids_equal,
        "zcc_max_residual_degree": "zero" if result.zcc_all_zero else "nonzero",
        "consistency_residuals": jsondoc.rat_str(result.consistency_max),
        "orthogonality_residuals": jsondoc.rat_str(result.orthogonality_max),
        "divisions_checked": result.divisions_checked,
    }
    _write_doc(doc, args.outfile)
    ok = (result.grids_equal and result.zcc_all_zero
          and result.consistency_max == 0 and result.orthogonality_max == 0)
    return EXIT_OK if ok else 1


def _cmd_qd(args) -> int:
    doc = _read_doc(args.infile)
    moments = [jsondoc.rat_parse(x) for x in jsondoc.need(doc, "moments")]
    n_max, k_max = args.window
    qd = classical.QdField(moments)
    v_grid = [[jsondoc.rat_str(qd.v(n, k)) for k in range(k_max + 1)]
              for n in range(n_max + 1)]
    w_grid = [[jsondoc.rat_str(qd.w(n, k)) for k in range(k_max + 1)]
              for n in range(n_max + 1)]
    residual_zero = True
    for n in range(n_max + 1):
        for k in range(k_max + 1):
            if not classical.zcc2_residual(moments, n, k).is_zero:
                residual_zero = False
    out = {
        "kind": "qd_field",
        "convention": jsondoc.CONVENTION,
        "window": [n_max, k_max],
        "v": v_grid,
        "w": w_grid,
        "zcc2_residual": "zero" if residual_zero else "nonzero",
    }
    _write_doc(out, args.outfile)
    return EXIT_OK if residual_zero else 1


# -- wiring ---------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hplax",
        description="Exact tables, recurrence fields, transition matrices, and "
                    "the lattice boundary-value problem for pairs of moment "
                    "sequences.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, window=True, order=False):
        p.add_argument("--in", dest="infile", required=True,
                       help="input JSON document ('-' for stdin)")
        p.add_argument("--out", dest="outfile", default=None,
                       help="output path (default: stdout)")
        if window:
            p.add_argument("--window", nargs=2, type=int, required=True,
                           metavar=("N", "M"))
        if order:
            p.add_argument("--order", type=int, default=None,
                           help="series/moment order (default: 2(N+M)+4)")

    p_gen = sub.add_parser("gen", help="generate a moment system document")
    p_gen.add_argument("--system", required=True,
                       choices=["angelesco", "nikishin", "moments", "jfraction"])
    add_common(p_gen, window=False)
    p_gen.add_argument("--order", type=int, default=None,
                       help="number of moments to generate")
    p_gen.add_argument("--window", nargs=2, type=int, default=None,
                       metavar=("N", "M"),
                       help="alternatively: generate 2(N+M)+4 moments, enough "
                            "for this window")
    p_gen.set_defaults(func=_cmd_gen)

    p_table = sub.add_parser("table", help="determinant and polynomial grids")
    add_common(p_table)
    p_table.set_defaults(func=_cmd_table)

    p_coeffs = sub.add_parser("coeffs", help="recurrence coefficient grids")
    add_common(p_coeffs)
    p_coeffs.set_defaults(func=_cmd_coeffs)

    p_bvp = sub.add_parser("solve-bvp", help="sweep the boundary-value problem")
    add_common(p_bvp)
    p_bvp.set_defaults(func=_cmd_solve_bvp)

    p_verify = sub.add_parser("verify", help="cross-validate all routes")
    add_common(p_verify)
    p_verify.set_defaults(func=_cmd_verify)

    p_qd = sub.add_parser("qd", help="qd coefficient grids and 2x2 residuals")
    add_common(p_qd)
    p_qd.set_defaults(func=_cmd_qd)
    return parser


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, which matches the parse exit code
        return EXIT_PARSE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except jsondoc.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotNormalError as exc:
        print(f"not normal: {exc}", file=sys.stderr)
        return EXIT_NOT_NORMAL
    except NonPerfectBoundaryError as exc:
        print(f"non-perfect boundary: {exc}", file=sys.stderr)
        return EXIT_NON_PERFECT
    except TruncationError as exc:
        print(f"truncation: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION
    except DegeneracyError as exc:
        print(f"degenerate data: {exc}", file=sys.stderr)
        return EXIT_NOT_NORMAL
    except HplaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
