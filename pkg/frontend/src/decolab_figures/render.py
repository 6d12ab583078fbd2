"""Read decolab CSV sweeps and render them as static images.

Two figure kinds mirror the two sweep datasets:

* ``r-sweep``  one panel, coherence and concurrence against the Werner
  parameter r (columns ``r,reqc,concurrence``);
* ``p-sweep``  two side-by-side panels, coherence (left) and concurrence
  (right) against the noise parameter p, one curve per r value (columns
  ``channel,r,p,reqc,concurrence``).

Input files are opened read-only and never modified.  Curves get both a
distinct colour and a distinct line style so the figures survive
grayscale printing.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

SCHEMAS = {
    "r-sweep": ("r", "reqc", "concurrence"),
    "p-sweep": ("channel", "r", "p", "reqc", "concurrence"),
}

LINE_STYLES = ("-", "--", "-.", ":")
DPI_DEFAULT = 150

plt.rcParams.update({
    "figure.autolayout": True,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "legend.framealpha": 0.9,
    "font.size": 10,
})


class RenderError(Exception):
    """Input data cannot be rendered (empty, malformed, unreadable)."""


class SchemaError(RenderError):
    """The CSV columns do not match the expected sweep schema."""


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str
    kind: str  # "r-sweep" or "p-sweep"
    output_image: str
    title: str = ""
    dpi: int = DPI_DEFAULT


def load_csv(path: str, kind: str) -> tuple[dict, list[dict]]:
    """Parse a decolab CSV: ``# key=value`` metadata, header row, data rows.

    Returns (metadata, rows) with every numeric column converted to float.
    Raises SchemaError when a required column is missing and RenderError
    for empty or malformed data.
    """
    expected = SCHEMAS[kind]
    metadata: dict[str, str] = {}
    data_lines: list[str] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line.lstrip("# ").partition("=")
                metadata[key] = value
            else:
                data_lines.append(line)
    if not data_lines:
        raise RenderError(f"{path}: no header row found")
    reader = csv.DictReader(data_lines)
    columns = tuple(reader.fieldnames or ())
    for name in expected:
        if name not in columns:
            raise SchemaError(f"{path}: missing required column {name!r}")
    rows = []
    for raw in reader:
        row: dict = {}
        for name in expected:
            if name == "channel":
                row[name] = raw[name]
            else:
                try:
                    row[name] = float(raw[name])
                except (TypeError, ValueError):
                    raise RenderError(
                        f"{path}: non-numeric value {raw[name]!r} in column {name!r}"
                    ) from None
        rows.append(row)
    if len(rows) < 2:
        raise RenderError(f"{path}: need at least 2 data rows, got {len(rows)}")
    return metadata, rows


def _style(index: int) -> dict:
    return {
        "color": f"C{index}",
        "linestyle": LINE_STYLES[index % len(LINE_STYLES)],
        "linewidth": 1.6,
    }


def _finish_axis(ax, xlabel: str, ylabel: str) -> None:
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(bottom=0.0)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.legend()


def _render_r_sweep(rows: list[dict], spec: FigureSpec) -> plt.Figure:
    rs = [row["r"] for row in rows]
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    ax.plot(rs, [row["reqc"] for row in rows], label="coherence", **_style(0))
    ax.plot(rs, [row["concurrence"] for row in rows], label="concurrence", **_style(1))
    _finish_axis(ax, "r", "coherence / concurrence")
    ax.set_title(spec.title or "Coherence and concurrence across the Werner family")
    return fig


def _render_p_sweep(rows: list[dict], metadata: dict, spec: FigureSpec) -> plt.Figure:
    groups: dict[float, list[dict]] = {}
    for row in rows:
        groups.setdefault(row["r"], []).append(row)
    fig, (ax_c, ax_e) = plt.subplots(1, 2, figsize=(9.0, 3.6), sharex=True)
    for index, (r, block) in enumerate(groups.items()):
        ps = [row["p"] for row in block]
        style = _style(index)
        ax_c.plot(ps, [row["reqc"] for row in block], label=f"r = {r:g}", **style)
        ax_e.plot(ps, [row["concurrence"] for row in block], label=f"r = {r:g}", **style)
    _finish_axis(ax_c, "p", "coherence (bits)")
    _finish_axis(ax_e, "p", "concurrence")
    channel = rows[0]["channel"] or metadata.get("channel", "")
    fig.suptitle(spec.title or f"Dynamics under the {channel} channel")
    return fig


def render(spec: FigureSpec) -> None:
    """Render one figure to ``spec.output_image``; raises on bad input."""
    if spec.kind not in SCHEMAS:
        raise RenderError(f"unknown figure kind {spec.kind!r}")
    metadata, rows = load_csv(spec.input_csv, spec.kind)
    if spec.kind == "r-sweep":
        fig = _render_r_sweep(rows, spec)
    else:
        fig = _render_p_sweep(rows, metadata, spec)
    try:
        fig.savefig(spec.output_image, dpi=spec.dpi)
    finally:
        plt.close(fig)
