"""Parameter sweeps behind the susceptibility and group-velocity figures, plus
feature extraction on the resulting curves."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .params import CANONICAL, DetuningPoint, ModelParams
from .susceptibility import chi_parts, group_velocity_resonant, refractive_index
from .tables import CsvTable

# Panels of the susceptibility figure: name -> (rabi, delta_c)
FIG2_PANELS = {"a1": (2.0, 0.0), "a2": (0.5, 0.0), "b1": (0.5, 1.5), "b2": (0.5, -1.5)}
FIG3A_DELTA_C = 5.0
FIG3A_COUPLINGS = (100.0, 80.0)
# (rabi, g_root_n) for the detuning figure
FIG3B_CASES = ((200.0, 100.0), (50.0, 100.0), (0.04, 100.0), (0.04, 80.0))

# absorption threshold, relative to the bare resonant peak, that bounds the transparency window
TRANSPARENCY_LEVEL = 0.01


@dataclass(frozen=True)
class GridSpec:
    start: float
    stop: float
    points: int

    def __post_init__(self):
        if not self.start < self.stop:
            raise ValueError(f"grid start {self.start} must be below stop {self.stop}")
        if not 2 <= self.points <= 1_000_000:
            raise ValueError(f"grid points must be in [2, 1e6], got {self.points}")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)

    def refined(self) -> "GridSpec":
        """Same span with half the spacing."""
        return GridSpec(self.start, self.stop, 2 * self.points - 1)


FIG2_GRID = GridSpec(-4.0, 4.0, 801)
# starts at the smallest Rabi frequency used in the figures; below ~0.035 at delta_c = 5
# the G_C-limited window closes and v_g turns non-monotone, then negative
FIG3A_GRID = GridSpec(0.04, 300.0, 200)
FIG3B_GRID = GridSpec(-5.0, 5.0, 401)


@dataclass(frozen=True)
class SweepRow:
    abscissa: float
    chi1: float
    chi2: float
    n1: float
    n2: float
    vg_over_c: Optional[float]
    rabi: float
    delta_c: float
    g_root_n: float


def canonical_params(**overrides) -> ModelParams:
    return ModelParams(**{**CANONICAL, **overrides})


def _row(x: float, pt: DetuningPoint, params: ModelParams, with_vg: bool) -> SweepRow:
    s = chi_parts(pt, params)
    n = refractive_index(s.value)
    vg = group_velocity_resonant(pt.delta_c, params).vg_over_c if with_vg else None
    return SweepRow(float(x), s.chi1, s.chi2, n.n1, n.n2, vg, params.rabi, pt.delta_c, params.g_root_n)


def sweep_chi(delta_grid: GridSpec, delta_c: float, params: ModelParams) -> list[SweepRow]:
    """chi and n versus two-photon detuning at fixed control detuning."""
    return [_row(d, DetuningPoint.from_two_photon(float(d), delta_c), params, False) for d in delta_grid.values()]


def sweep_vg_vs_rabi(rabi_grid: GridSpec, delta_c: float, params: ModelParams) -> list[SweepRow]:
    if rabi_grid.start <= 0:
        raise ValueError("Rabi-frequency grid must be strictly positive")
    pt = DetuningPoint.resonant(delta_c)
    return [_row(om, pt, params.with_(rabi=float(om)), True) for om in rabi_grid.values()]


def sweep_vg_vs_detuning(
    delta_c_grid: GridSpec,
    cases: Sequence[tuple[float, float]] = FIG3B_CASES,
    params: Optional[ModelParams] = None,
) -> list[SweepRow]:
    """Resonant group velocity versus the common detuning, one block of rows per (rabi, g_root_n) case."""
    params = params or canonical_params()
    rows = []
    for rabi, g in cases:
        p = params.with_(rabi=rabi, g_root_n=g)
        rows += [_row(dc, DetuningPoint.resonant(float(dc)), p, True) for dc in delta_c_grid.values()]
    return rows


def bare_absorption_peak(params: ModelParams) -> float:
    """chi2 of the undressed medium (Omega = 0) at one-photon resonance."""
    return 2.0 * params.coupling_sq / (params.omega_ab * params.gamma_a)


def _crossing(x: np.ndarray, y: np.ndarray, i: int, j: int, level: float) -> float:
    return float(x[i] + (level - y[i]) * (x[j] - x[i]) / (y[j] - y[i]))


def _walk(x, y, start, step, level):
    i = start
    while 0 <= i + step < len(x) and y[i + step] < level:
        i += step
    if not 0 <= i + step < len(x):
        raise ValueError("window edge lies outside the grid")
    return _crossing(x, y, i, i + step, level)


def _nearest_max(y: np.ndarray, start: int, step: int) -> float:
    i = start
    while 0 <= i + step < len(y) and y[i + step] >= y[i]:
        i += step
    return float(y[i])


def window_edges(
    x: Sequence[float],
    chi2: Sequence[float],
    level: Optional[float] = None,
    center: float = 0.0,
    fraction: float = 0.5,
) -> tuple[float, float]:
    """Edges of the low-absorption window around ``center``.

    With ``level`` given the window is where chi2 stays below it.  Otherwise
    each side uses ``fraction`` of the nearest local chi2 maximum on that side
    (``fraction=0.5``: full width at half of the flanking peaks).  Edges are
    linearly interpolated between grid points.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(chi2, dtype=float)
    i0 = int(np.argmin(np.abs(x - center)))
    # slide to the local minimum containing the center point
    while i0 > 0 and y[i0 - 1] < y[i0]:
        i0 -= 1
    while i0 < len(y) - 1 and y[i0 + 1] < y[i0]:
        i0 += 1
    left_level = level if level is not None else fraction * _nearest_max(y, i0, -1)
    right_level = level if level is not None else fraction * _nearest_max(y, i0, +1)
    return _walk(x, y, i0, -1, left_level), _walk(x, y, i0, +1, right_level)


def window_width(x, chi2, level=None, center=0.0, fraction=0.5) -> float:
    lo, hi = window_edges(x, chi2, level, center, fraction)
    return hi - lo


def transparency_width(rows: Sequence[SweepRow], params: ModelParams, level: float = TRANSPARENCY_LEVEL) -> float:
    """Width of the region around zero two-photon detuning where chi2 is below
    ``level`` times the bare resonant absorption."""
    x = [r.abscissa for r in rows]
    y = [r.chi2 for r in rows]
    return window_width(x, y, level=level * bare_absorption_peak(params))


def grid_argmin(x: Sequence[float], y: Sequence[float]) -> float:
    return float(np.asarray(x)[int(np.argmin(np.asarray(y)))])


def rows_for_case(rows: Sequence[SweepRow], rabi: float, g_root_n: float) -> list[SweepRow]:
    return [r for r in rows if r.rabi == rabi and r.g_root_n == g_root_n]


# -- table builders ---------------------------------------------------------

CHI_COLUMNS = ("delta", "chi1", "chi2", "n1", "n2", "rabi", "delta_c", "g_root_n")
VG_COLUMNS = ("chi1", "chi2", "n1", "n2", "vg_over_c", "rabi", "delta_c", "g_root_n")


def rows_to_table(rows: Sequence[SweepRow], abscissa: str) -> CsvTable:
    with_vg = bool(rows) and rows[0].vg_over_c is not None
    if with_vg:
        header = (abscissa,) + VG_COLUMNS
        data = [(r.abscissa, r.chi1, r.chi2, r.n1, r.n2, r.vg_over_c, r.rabi, r.delta_c, r.g_root_n) for r in rows]
    else:
        header = (abscissa,) + CHI_COLUMNS[1:]
        data = [(r.abscissa, r.chi1, r.chi2, r.n1, r.n2, r.rabi, r.delta_c, r.g_root_n) for r in rows]
    return CsvTable(header, data)


def _tag(x: float) -> str:
    return format(x, "g")


def figure_tables(params: Optional[ModelParams] = None) -> dict[str, tuple[CsvTable, str, tuple[str, ...]]]:
    """All figure tables: name -> (table, x column, y columns to plot)."""
    base = params or canonical_params()
    out = {}
    for panel, (rabi, dc) in FIG2_PANELS.items():
        rows = sweep_chi(FIG2_GRID, dc, base.with_(rabi=rabi))
        out[f"fig2_{panel}"] = (rows_to_table(rows, "delta"), "delta", ("chi1", "chi2"))

    cols = {}
    for g in FIG3A_COUPLINGS:
        rows = sweep_vg_vs_rabi(FIG3A_GRID, FIG3A_DELTA_C, base.with_(g_root_n=g, rabi=1.0))
        cols[f"vg_g{_tag(g)}"] = [r.vg_over_c for r in rows]
    xs = list(FIG3A_GRID.values())
    table = CsvTable(("rabi",) + tuple(cols), [tuple([x] + [c[i] for c in cols.values()]) for i, x in enumerate(xs)])
    out["fig3_a"] = (table, "rabi", tuple(cols))

    cols = {}
    for rabi, g in FIG3B_CASES:
        rows = sweep_vg_vs_detuning(FIG3B_GRID, [(rabi, g)], base)
        cols[f"vg_rabi{_tag(rabi)}_g{_tag(g)}"] = [r.vg_over_c for r in rows]
    xs = list(FIG3B_GRID.values())
    table = CsvTable(("delta_c",) + tuple(cols), [tuple([x] + [c[i] for c in cols.values()]) for i, x in enumerate(xs)])
    out["fig3_b"] = (table, "delta_c", tuple(cols))
    return out
