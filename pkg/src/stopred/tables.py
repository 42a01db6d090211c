"""Comparison tables as plain rows of integers, plus CSV/markdown rendering."""

from __future__ import annotations

import csv
import io

from . import bounds
from .codes import golay24, extended_qr48

TABLE2_METHODS = ("baseline", "tau0", "cor1", "cor2")


def table2(workers: int = 1) -> tuple[list[str], list[list]]:
    codes = [golay24(), extended_qr48()]
    rows = []
    for method in TABLE2_METHODS:
        row = [method]
        for code in codes:
            if method == "baseline":
                row.append(bounds.baseline_stopping_redundancy(code.r, code.min_distance()).total)
            else:
                row.append(bounds.bound_stopping_redundancy(code, method).total)
        rows.append(row)
    return ["method", "golay24", "qr48"], rows


def hierarchy_table(code, with_baseline: bool = False) -> tuple[list[str], list[list]]:
    header = ["l", "value"] + (["baseline"] if with_baseline else [])
    rows = []
    for l in range(4, code.min_distance() + 1):
        row = [l, bounds.bound_hierarchy(code, l).total]
        if with_baseline:
            row.append(bounds.partial_binom_sum(code.r, l - 2))
        rows.append(row)
    return header, rows


def table3(with_baseline: bool = False):
    return hierarchy_table(golay24(), with_baseline)


def table4(with_baseline: bool = False):
    return hierarchy_table(extended_qr48(), with_baseline)


def table5(workers: int = 1) -> tuple[list[str], list[list]]:
    code = golay24()
    levels = range(4, 9)
    grid = bounds.hybrid_grid(code, range(1, 13), levels, workers=workers)
    rows = [[tau] + [grid[tau, l].total for l in levels] for tau in range(1, 13)]
    return ["tau"] + [f"l{l}" for l in levels], rows


def build(which: int, *, workers: int = 1, with_baseline: bool = False):
    if which == 2:
        return table2(workers)
    if which == 3:
        return table3(with_baseline)
    if which == 4:
        return table4(with_baseline)
    if which == 5:
        return table5(workers)
    raise ValueError(f"no table {which}")


def render(header: list[str], rows: list[list], fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
        lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
