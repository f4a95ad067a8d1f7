"""CSV tables with round-trip-exact numbers and a dependency-free SVG line plot."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

from .errors import MissingColumn

Cell = Union[float, int, str]

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")


def format_number(x: Cell) -> str:
    if isinstance(x, str):
        return x
    # 17 significant digits reproduce any binary64 value exactly
    return format(float(x), ".17g")


@dataclass
class CsvTable:
    header: tuple[str, ...]
    rows: list[tuple[Cell, ...]] = field(default_factory=list)

    def __post_init__(self):
        self.header = tuple(self.header)
        for row in self.rows:
            if len(row) != len(self.header):
                raise ValueError(f"row {row!r} has {len(row)} cells, header has {len(self.header)}")

    def append(self, row: Sequence[Cell]) -> None:
        if len(row) != len(self.header):
            raise ValueError(f"row has {len(row)} cells, header has {len(self.header)}")
        self.rows.append(tuple(row))

    def column(self, name: str) -> list[Cell]:
        try:
            i = self.header.index(name)
        except ValueError:
            raise MissingColumn(name) from None
        return [row[i] for row in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([format_number(x) for x in row])
        return buf.getvalue()

    def write(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_csv(), encoding="utf-8", newline="")

    @classmethod
    def from_csv(cls, text: str) -> "CsvTable":
        reader = csv.reader(io.StringIO(text))
        header = tuple(next(reader))
        rows = []
        for line in reader:
            if not line:
                continue
            cells = []
            for tok in line:
                try:
                    cells.append(float(tok))
                except ValueError:
                    cells.append(tok)
            rows.append(tuple(cells))
        return cls(header, rows)

    @classmethod
    def read(cls, path: Union[str, Path]) -> "CsvTable":
        return cls.from_csv(Path(path).read_text(encoding="utf-8"))


def _extent(values: list[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    span = hi - lo
    if span == 0:
        span = abs(lo) if lo else 1.0
        lo, hi = lo - span / 2, hi + span / 2
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def render_svg(
    table: CsvTable, x_col: str, y_cols: Sequence[str], width: int = 640, height: int = 400, title: str = ""
) -> str:
    """One polyline per y column on linear axes scaled to the data (5% margins)."""
    if len(table.rows) < 2:
        raise ValueError("need at least two rows to plot")
    xs = [float(v) for v in table.column(x_col)]
    series = [[float(v) for v in table.column(c)] for c in y_cols]

    finite_x = [x for x in xs if math.isfinite(x)]
    finite_y = [y for ys in series for y in ys if math.isfinite(y)]
    if not finite_x or not finite_y:
        raise ValueError("no finite data to plot")
    x0, x1 = _extent(finite_x)
    y0, y1 = _extent(finite_y)

    left, right, top, bottom = 80, 20, 30, 50
    pw, ph = width - left - right, height - top - bottom

    def px(x):
        return left + (x - x0) / (x1 - x0) * pw

    def py(y):
        return top + (y1 - y) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2:.2f}" y="18" text-anchor="middle" font-size="14">{title}</text>')
    for i, (name, ys) in enumerate(zip(y_cols, series)):
        pts = " ".join(
            f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys) if math.isfinite(x) and math.isfinite(y)
        )
        color = PALETTE[i % len(PALETTE)]
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        out.append(
            f'<text x="{left + pw - 5}" y="{top + 15 + 15 * i}" text-anchor="end" '
            f'font-size="12" fill="{color}">{name}</text>'
        )
    # tick labels at the axis ends
    out += [
        f'<text x="{left}" y="{top + ph + 18}" text-anchor="middle" font-size="11">{x0:.4g}</text>',
        f'<text x="{left + pw}" y="{top + ph + 18}" text-anchor="middle" font-size="11">{x1:.4g}</text>',
        f'<text x="{left - 5}" y="{top + ph}" text-anchor="end" font-size="11">{y0:.4g}</text>',
        f'<text x="{left - 5}" y="{top + 10}" text-anchor="end" font-size="11">{y1:.4g}</text>',
        f'<text x="{left + pw / 2:.2f}" y="{height - 10}" text-anchor="middle" font-size="13">{x_col}</text>',
        f'<text x="15" y="{top + ph / 2:.2f}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 15 {top + ph / 2:.2f})">{", ".join(y_cols)}</text>',
        "</svg>",
    ]
    return "\n".join(out) + "\n"


def emit_svg(table: CsvTable, x_col: str, y_cols: Sequence[str], path: Union[str, Path], title: str = "") -> None:
    Path(path).write_text(render_svg(table, x_col, y_cols, title=title), encoding="utf-8", newline="")
