"""Lossless JSON documents for systems, grids, boundaries, and reports.

Rationals are serialized as canonical lowest-term strings ("p/q", bare
integers as "p"); grids are row-major arrays indexed [n][m]; every document
header records the Cauchy sign convention and the window so files are
self-describing and diffable.  Nothing here is ever approximate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .bvp import BoundaryData, SweepReport
from .errors import HplaxError
from .kernel import Poly
from .measures import JFraction, MeasureModel, MomentSystem
from .nnrr import KINDS, RecurrenceField

CONVENTION = "cauchy"


class ParseError(HplaxError):
    """A document does not match its schema."""


def rat_str(x: Fraction) -> str:
    return str(x)


def rat_parse(x: Any) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"expected an exact rational, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {x!r}") from exc


def rat_list(xs: Any) -> list[Fraction]:
    if not isinstance(xs, list):
        raise ParseError(f"expected a list of rationals, got {type(xs).__name__}")
    return [rat_parse(x) for x in xs]


def need(doc: dict, key: str) -> Any:
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"missing field {key!r}")
    return doc[key]


def _window(doc: dict) -> tuple[int, int]:
    win = need(doc, "window")
    if (not isinstance(win, list) or len(win) != 2
            or not all(isinstance(v, int) and v >= 0 for v in win)):
        raise ParseError(f"bad window {win!r}")
    return win[0], win[1]


# -- moment systems ----------------------------------------------------------


def moment_system_to_doc(system: MomentSystem) -> dict:
    return {
        "kind": "moment_system",
        "convention": CONVENTION,
        "label": system.label,
        "count": system.count,
        "s1": [rat_str(x) for x in system.s1],
        "s2": [rat_str(x) for x in system.s2],
    }


def moment_system_from_doc(doc: dict) -> MomentSystem:
    if need(doc, "kind") != "moment_system":
        raise ParseError(f"expected a moment_system document, got {doc.get('kind')!r}")
    return MomentSystem(tuple(rat_list(need(doc, "s1"))),
                        tuple(rat_list(need(doc, "s2"))),
                        label=str(doc.get("label", "")))


# -- measures (generation input) ---------------------------------------------


def measure_from_doc(doc: dict) -> MeasureModel:
    kind = need(doc, "type")
    if kind == "interval":
        return MeasureModel.interval(rat_parse(need(doc, "lo")),
                                     rat_parse(need(doc, "hi")))
    if kind == "discrete":
        atoms = need(doc, "atoms")
        if not isinstance(atoms, list):
            raise ParseError("discrete measure needs an atom list")
        pairs = []
        for entry in atoms:
            if not isinstance(entry, list) or len(entry) != 2:
                raise ParseError(f"bad atom {entry!r}; expected [node, weight]")
            pairs.append((rat_parse(entry[0]), rat_parse(entry[1])))
        return MeasureModel.discrete(pairs)
    raise ParseError(f"unknown measure type {kind!r}")


def jfraction_from_doc(doc: dict) -> JFraction:
    return JFraction(tuple(rat_list(need(doc, "c"))),
                     tuple(rat_list(need(doc, "a"))),
                     rat_parse(need(doc, "s0")))


def jfraction_to_doc(j: JFraction) -> dict:
    return {"c": [rat_str(x) for x in j.c],
            "a": [rat_str(x) for x in j.a],
            "s0": rat_str(j.s0)}


# -- tables and fields --------------------------------------------------------


def table_to_doc(s_grid: list[list[Fraction]], p_grid: list[list[Poly]],
                 window: tuple[int, int]) -> dict:
    return {
        "kind": "hp_table",
        "convention": CONVENTION,
        "window": list(window),
        "s": [[rat_str(v) for v in row] for row in s_grid],
        "p": [[[rat_str(c) for c in poly.coeffs] for poly in row] for row in p_grid],
    }


def table_from_doc(doc: dict) -> tuple[list[list[Fraction]], list[list[Poly]],
                                       tuple[int, int]]:
    if need(doc, "kind") != "hp_table":
        raise ParseError(f"expected an hp_table document, got {doc.get('kind')!r}")
    nw, mw = _window(doc)
    s_rows = need(doc, "s")
    p_rows = need(doc, "p")
    if len(s_rows) != nw + 1 or len(p_rows) != nw + 1:
        raise ParseError(f"grids do not match window [{nw}, {mw}]")
    s_grid = [[rat_parse(v) for v in row] for row in s_rows]
    p_grid = [[Poly(tuple(rat_parse(c) for c in entry)) for entry in row]
              for row in p_rows]
    return s_grid, p_grid, (nw, mw)


def field_to_doc(field: RecurrenceField) -> dict:
    nw, mw = field.window
    doc: dict[str, Any] = {
        "kind": "recurrence_field",
        "convention": CONVENTION,
        "window": [nw, mw],
    }
    for kind in KINDS:
        doc[kind] = [[rat_str(field.value(kind, n, m)) for m in range(mw + 1)]
                     for n in range(nw + 1)]
    return doc


def field_from_doc(doc: dict) -> RecurrenceField:
    if need(doc, "kind") != "recurrence_field":
        raise ParseError(f"expected a recurrence_field document, got {doc.get('kind')!r}")
    nw, mw = _window(doc)
    grids: dict[str, dict[tuple[int, int], Fraction]] = {}
    for kind in KINDS:
        rows = need(doc, kind)
        if len(rows) != nw + 1 or any(len(r) != mw + 1 for r in rows):
            raise ParseError(f"grid {kind!r} does not match window [{nw}, {mw}]")
        grids[kind] = {(n, m): rat_parse(rows[n][m])
                       for n in range(nw + 1) for m in range(mw + 1)}
    return RecurrenceField(grids, (nw, mw))


# -- boundary data and sweep reports -------------------------------------------


def boundary_to_doc(boundary: BoundaryData) -> dict:
    return {
        "kind": "boundary_data",
        "convention": CONVENTION,
        "c_row": [rat_str(x) for x in boundary.c_row],
        "a_row": [rat_str(x) for x in boundary.a_row],
        "d_col": [rat_str(x) for x in boundary.d_col],
        "b_col": [rat_str(x) for x in boundary.b_col],
    }


def boundary_from_doc(doc: dict) -> BoundaryData:
    if need(doc, "kind") != "boundary_data":
        raise ParseError(f"expected a boundary_data document, got {doc.get('kind')!r}")
    return BoundaryData(
        c_row=tuple(rat_list(need(doc, "c_row"))),
        a_row=tuple(rat_list(need(doc, "a_row"))),
        d_col=tuple(rat_list(need(doc, "d_col"))),
        b_col=tuple(rat_list(need(doc, "b_col"))),
    )


def sweep_report_to_doc(report: SweepReport, window: tuple[int, int]) -> dict:
    doc: dict[str, Any] = {
        "kind": "sweep_report",
        "convention": CONVENTION,
        "window": list(window),
        "status": "ok" if report.ok else "non_perfect_boundary",
        "divisions_checked": report.divisions_checked,
    }
    if report.ok:
        doc["field"] = field_to_doc(report.field)
    else:
        index, reason = report.failure
        doc["failure_index"] = list(index)
        doc["failure_reason"] = reason
    return doc
