"""Render reports, chains and quandles as pretty text, JSON, CSV or DOT.

JSON is always written with sorted keys so repeated runs are byte-identical.
"""

import csv
import io
import json
from collections.abc import Sequence
from typing import Any

from pydantic import BaseModel

from src.core.exceptions import InvalidSpecError
from src.models.chain import Chain, ExtremeChainReport
from src.models.quandle import Quandle, XSet
from src.models.schema import (
    ExploreTable,
    HomologyReport,
    QuandleFile,
    VerificationReport,
    XSetFile,
)
from src.services.analysis import cayley_digraph
from src.services.chain_complex import chain_to_file

FORMATS = ("pretty", "json", "csv")


def to_json(data: Any) -> str:
    if isinstance(data, BaseModel):
        data = data.model_dump(mode="json")
    elif isinstance(data, list):
        data = [d.model_dump(mode="json") if isinstance(d, BaseModel) else d for d in data]
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)


def to_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: _cell(row.get(c)) for c in columns})
    return buffer.getvalue()


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    return str(value)


def _check_format(fmt: str) -> None:
    if fmt not in FORMATS:
        raise InvalidSpecError(f"unknown format '{fmt}', expected one of {FORMATS}")


# Homology


_HOMOLOGY_COLUMNS = [
    "quandle",
    "xset",
    "theory",
    "degree",
    "status",
    "free_rank",
    "torsion",
    "group",
]


def format_homology(reports: Sequence[HomologyReport], fmt: str = "pretty") -> str:
    _check_format(fmt)
    if fmt == "json":
        return to_json(list(reports))
    if fmt == "csv":
        return to_csv([r.model_dump() for r in reports], _HOMOLOGY_COLUMNS)
    lines = []
    for r in reports:
        pair = r.quandle if r.xset in ("full", r.quandle) else f"{r.quandle}; {r.xset}"
        value = r.group if r.status == "ok" else f"skipped ({r.reason})"
        lines.append(f"H_{r.degree}^{r.theory}({pair}) = {value}")
    return "\n".join(lines)


# Verification


_CHECK_COLUMNS = ["id", "status", "expected", "computed", "provenance", "runtime", "description"]


def format_verification(report: VerificationReport, fmt: str = "pretty") -> str:
    _check_format(fmt)
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv([c.model_dump() for c in report.checks], _CHECK_COLUMNS)
    width = max((len(c.id) for c in report.checks), default=0)
    lines = []
    for c in report.checks:
        lines.append(
            f"[{c.status.upper():>7}] {c.id:<{width}}  expected {c.expected}; "
            f"computed {c.computed} ({c.provenance}, {c.runtime:.2f}s)"
        )
    lines.append(f"{report.passed} passed, {report.failed} failed, {report.skipped} skipped")
    return "\n".join(lines)


# Explore


def format_explore(table: ExploreTable, fmt: str = "pretty") -> str:
    _check_format(fmt)
    if fmt == "json":
        return to_json(table)
    if fmt == "csv":
        return to_csv(table.rows, table.columns)
    cells = [[_cell(row.get(c)) for c in table.columns] for row in table.rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(table.columns)]
    lines = [table.description, ""]
    lines.append("  ".join(c.ljust(w) for c, w in zip(table.columns, widths)))
    for r in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)))
    return "\n".join(line.rstrip() for line in lines)


# Chains


def format_chain(c: Chain, fmt: str = "pretty") -> str:
    if fmt == "json":
        return to_json(chain_to_file(c))
    return str(c)


def format_extreme(report: ExtremeChainReport, fmt: str = "pretty") -> str:
    if fmt == "json":
        return to_json(
            {
                "mode": report.mode,
                "extreme": report.extreme,
                "d0": chain_to_file(report.d0_residual).model_dump(mode="json"),
                "failing": report.failing,
            }
        )
    lines = [f"extreme: {str(report.extreme).lower()} ({report.mode} mode)"]
    if not report.d0_residual.is_zero():
        lines.append(f"∂⁰w = {report.d0_residual}")
    for q in report.failing:
        lines.append(f"∂¹w/∂{q} = {report.per_q_residuals[q]}")
    return "\n".join(lines)


# Quandles


def quandle_to_file(q: Quandle) -> QuandleFile:
    labels = list(q.labels) if q.labels else None
    return QuandleFile(
        size=q.size, table=[list(row) for row in q.table], labels=labels, name=q.name
    )


def xset_to_file(y: XSet, quandle_spec: str) -> XSetFile:
    return XSetFile(
        carrier_size=y.carrier_size,
        action=[list(row) for row in y.action],
        quandle=quandle_spec,
        embedding=list(y.embedding) if y.embedding is not None else None,
        name=y.name,
    )


def cayley_to_dot(q: Quandle) -> str:
    """Graphviz source of the Cayley digraph; edge x -> x∗y labelled y."""
    graph = cayley_digraph(q)
    lines = [f'digraph "{q.name}" {{']
    for node in sorted(graph.nodes):
        lines.append(f'  {node} [label="{q.label(node)}"];')
    edges = sorted((u, v, data["label"]) for u, v, data in graph.edges(data=True))
    for u, v, label in edges:
        lines.append(f'  {u} -> {v} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines)
