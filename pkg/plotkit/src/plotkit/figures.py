"""Render the confined-oscillator CSV sweeps as publication-style figures.

This package only draws what the computation CLI already wrote: each figure
spec names a source CSV plus the x, y and series columns, and rendering
produces one curve per distinct series value.  Nothing here recomputes
physics, and input files are never touched.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["FigureSpec", "RenderResult", "BUILTIN_FIGURES", "render_figure"]

STYLE_FILE = resources.files("plotkit") / "style" / "pub.mplstyle"


@dataclass(frozen=True)
class FigureSpec:
    """Where a figure's data lives and how to slice it into curves."""

    source_csv: str
    x_column: str
    y_column: str
    series_column: str
    x_label: str
    y_label: str
    series_label: str  # format template, e.g. "|b|^2 = {}"
    caption: str
    log_x: bool = False
    out_stem: str | None = None

    @property
    def stem(self) -> str:
        return self.out_stem or Path(self.source_csv).stem


BUILTIN_FIGURES = {
    1: FigureSpec(
        source_csv="fig1.csv",
        x_column="a_over_l0", y_column="mandel", series_column="beta_sq",
        x_label=r"$a / l_0$", y_label=r"Mandel parameter $M$",
        series_label=r"$|\beta|^2 = {}$",
        caption="Number statistics vs well half-width",
        log_x=True,
    ),
    2: FigureSpec(
        source_csv="fig2.csv",
        x_column="phi", y_column="s_X", series_column="a_over_l0",
        x_label=r"$\phi$ (degrees)", y_label=r"squeezing parameter $s_X$",
        series_label=r"$a / l_0 = {}$",
        caption="Quadrature squeezing vs phase",
    ),
    3: FigureSpec(
        source_csv="fig3.csv",
        x_column="a_over_l0", y_column="s_X", series_column="phi_deg",
        x_label=r"$a / l_0$", y_label=r"squeezing parameter $s_X$",
        series_label=r"$\phi = {}^\circ$",
        caption="Quadrature squeezing vs well half-width",
        log_x=True,
    ),
    4: FigureSpec(
        source_csv="fig4.csv",
        x_column="a_over_l0", y_column="S_XA", series_column="beta_sq",
        x_label=r"$a / l_0$", y_label=r"deformed squeezing parameter $S_{X_A}$",
        series_label=r"$|\beta|^2 = {}$",
        caption="Deformed-quadrature squeezing vs well half-width",
        log_x=True,
    ),
}


@dataclass(frozen=True)
class RenderResult:
    png_path: Path
    svg_path: Path
    n_curves: int
    x_range: tuple[float, float]
    series_values: tuple[float, ...] = field(default_factory=tuple)


def _read_columns(path: Path, columns: tuple[str, ...]) -> dict[str, list[float]]:
    with open(path, newline="") as fh:
        rows = [line for line in fh if not line.startswith("#")]
    reader = csv.DictReader(rows)
    header = reader.fieldnames or []
    missing = [c for c in columns if c not in header]
    if missing:
        raise ValueError(f"{path}: missing columns {missing}; header is {header}")
    data: dict[str, list[float]] = {c: [] for c in columns}
    for row in reader:
        for c in columns:
            data[c].append(float(row[c]))
    if not data[columns[0]]:
        raise ValueError(f"{path}: no data rows")
    return data


def render_figure(spec: FigureSpec, csv_dir: str | Path, out_dir: str | Path) -> RenderResult:
    """Draw one figure from its CSV and write PNG plus SVG next to each other.

    Output is deterministic: fixed style sheet, vectorized fonts, and no
    timestamps in the SVG.
    """
    csv_path = Path(csv_dir) / spec.source_csv
    if not csv_path.exists():
        raise FileNotFoundError(f"missing input CSV: {csv_path}")
    data = _read_columns(csv_path, (spec.series_column, spec.x_column, spec.y_column))

    series_order: list[float] = []
    for v in data[spec.series_column]:
        if v not in series_order:
            series_order.append(v)

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with plt.style.context(str(STYLE_FILE)):
        fig, ax = plt.subplots()
        for v in series_order:
            xs = [x for x, s in zip(data[spec.x_column], data[spec.series_column]) if s == v]
            ys = [y for y, s in zip(data[spec.y_column], data[spec.series_column]) if s == v]
            label = spec.series_label.format(format(v, "g"))
            ax.plot(xs, ys, label=label)
        if spec.log_x:
            ax.set_xscale("log")
        ax.axhline(0.0, color="0.4", linewidth=0.8, zorder=0)
        ax.set_xlabel(spec.x_label)
        ax.set_ylabel(spec.y_label)
        ax.set_title(spec.caption)
        ax.legend()
        png_path = out_dir / f"{spec.stem}.png"
        svg_path = out_dir / f"{spec.stem}.svg"
        fig.savefig(png_path)
        fig.savefig(svg_path, metadata={"Date": None})
        x_range = (min(data[spec.x_column]), max(data[spec.x_column]))
        plt.close(fig)
    return RenderResult(
        png_path=png_path,
        svg_path=svg_path,
        n_curves=len(series_order),
        x_range=x_range,
        series_values=tuple(series_order),
    )
