"""Serialisation of results: JSON-ready dicts, delimited table text, CSV and a summary figure."""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Sequence

from .automorphism import format_permutation
from .graph_core import Labelling, OrientedGraph
from .verify import COLUMNS, TableRow


def labelling_str(lab: Labelling | None) -> str | None:
    return None if lab is None else ",".join(str(x) for x in lab.labels)


def arcs_str(og: OrientedGraph) -> str:
    return " ".join(f"{t}->{h}" for t, h in og.arcs)


def permutation_str(p: Sequence[int] | None) -> str | None:
    return None if p is None else format_permutation(p)


def _cell(row: TableRow, col: str) -> str:
    got = row.computed.get(col)
    want = row.expected.get(col)
    if want is None:
        return f"{got}" if got is not None else "-"
    return f"{got}" if got == want else f"{got}!={want}"


def table_text(rows: Sequence[TableRow], table: int) -> str:
    """Tab-delimited: one line per instance; mismatched cells read ``computed!=expected``."""
    header = ["row", "instance", *COLUMNS[table], "match"]
    lines = ["\t".join(header)]
    for r in rows:
        cells = [str(r.row), r.instance, *(_cell(r, c) for c in COLUMNS[table]), "yes" if r.match else "NO"]
        lines.append("\t".join(cells))
    return "\n".join(lines)


def write_csv(rows: Sequence[TableRow], table: int, path: str | Path) -> None:
    cols = COLUMNS[table]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["table", "row", "label", "instance"] + [f"{c}_expected" for c in cols] + list(cols) + ["match"])
        for r in rows:
            w.writerow(
                [r.table, r.row, r.label, r.instance]
                + ["" if r.expected.get(c) is None else r.expected[c] for c in cols]
                + [r.computed.get(c, "") for c in cols]
                + [int(r.match)]
            )


def csv_text(rows: Sequence[TableRow], table: int) -> str:
    buf = io.StringIO()
    cols = COLUMNS[table]
    w = csv.writer(buf)
    w.writerow(["row", "instance", *cols, "match"])
    for r in rows:
        w.writerow([r.row, r.instance, *(r.computed.get(c, "") for c in cols), int(r.match)])
    return buf.getvalue()


def write_figure(rows: Sequence[TableRow], table: int, path: str | Path) -> None:
    """Render the recomputed table as an image; mismatching cells are shaded red."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    cols = COLUMNS[table]
    body = [[str(r.row), r.instance, *(_cell(r, c) for c in cols)] for r in rows]
    colours = [
        ["white", "white"]
        + [
            "#f4cccc" if r.expected.get(c) is not None and r.computed.get(c) != r.expected[c] else "white"
            for c in cols
        ]
        for r in rows
    ]
    fig, ax = plt.subplots(figsize=(1.1 * (len(cols) + 2), 0.25 * (len(rows) + 2)))
    ax.axis("off")
    tab = ax.table(cellText=body or [[""] * (len(cols) + 2)], cellColours=colours or None,
                   colLabels=["row", "instance", *cols], loc="center")
    tab.auto_set_font_size(False)
    tab.set_fontsize(8)
    ok = sum(r.match for r in rows)
    ax.set_title(f"table {table}: {ok}/{len(rows)} instances match", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
