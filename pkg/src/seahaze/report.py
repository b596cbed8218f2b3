"""Batch metric reports: delimited output plus rendered figures.

A batch is a list of rows, each {"name": ..., metric values..., and
optionally "error"}. Rows serialize to CSV with a stable column order
(name, mse, psnr, ssim, pcqi, blur, uicm, uism, uiconm, uiqm, error) or
to JSON; render_figures draws one bar chart per metric across the
batch.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .metrics import METRIC_NAMES

CSV_COLUMNS = ("name", *METRIC_NAMES, "error")


def _format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return f"{value:.10g}"
    return str(value)


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([_format_value(row.get(col)) for col in CSV_COLUMNS])
    return buf.getvalue()


def rows_to_json(rows: list[dict]) -> str:
    payload = []
    for row in rows:
        entry = {}
        for col in CSV_COLUMNS:
            if col not in row or row[col] is None:
                continue
            value = row[col]
            if isinstance(value, float) and math.isinf(value):
                value = "inf"
            entry[col] = value
        payload.append(entry)
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_figures(rows: list[dict], out_dir) -> list[Path]:
    """One bar chart per metric present in the batch; returns the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for metric in METRIC_NAMES:
        pairs = [
            (row["name"], row[metric])
            for row in rows
            if isinstance(row.get(metric), float) and math.isfinite(row[metric])
        ]
        if not pairs:
            continue
        names = [p[0] for p in pairs]
        values = [p[1] for p in pairs]
        fig, ax = plt.subplots(figsize=(max(4.0, 0.6 * len(names) + 2.0), 3.2))
        ax.bar(range(len(values)), values, color="#33658a")
        ax.set_xticks(range(len(names)))
        ax.set_xticklabels(names, rotation=45, ha="right", fontsize=8)
        ax.set_ylabel(metric)
        ax.set_title(f"{metric} per image")
        ax.spines["top"].set_visible(False)
        ax.spines["right"].set_visible(False)
        fig.tight_layout()
        path = out / f"{metric}.png"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)
    return written


def render_iop_chart(path) -> Path:
    """Grouped bar chart of the embedded absorption/scattering table."""
    from .jerlov import iop_table_rows

    rows = iop_table_rows()
    tags = [r[0] for r in rows]
    fig, axes = plt.subplots(1, 2, figsize=(10, 3.6), sharex=True)
    x = range(len(tags))
    width = 0.27
    colors = ("#c44536", "#3a7d44", "#33658a")
    for ax, offset, title in ((axes[0], 1, "absorption (1/m)"), (axes[1], 4, "scattering (1/m)")):
        for ch in range(3):
            ax.bar(
                [xi + (ch - 1) * width for xi in x],
                [r[offset + ch] for r in rows],
                width=width,
                color=colors[ch],
                label=("650 nm", "525 nm", "450 nm")[ch],
            )
        ax.set_xticks(list(x))
        ax.set_xticklabels(tags)
        ax.set_title(title)
        ax.spines["top"].set_visible(False)
        ax.spines["right"].set_visible(False)
    axes[0].legend(fontsize=8)
    fig.tight_layout()
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out
