import numpy as np
import pytest

from lambda_eit.sweeps import (
    FIG2_GRID,
    FIG2_PANELS,
    FIG3A_COUPLINGS,
    FIG3A_DELTA_C,
    FIG3A_GRID,
    FIG3B_CASES,
    FIG3B_GRID,
    GridSpec,
    bare_absorption_peak,
    canonical_params,
    figure_tables,
    grid_argmin,
    rows_for_case,
    rows_to_table,
    sweep_chi,
    sweep_vg_vs_detuning,
    sweep_vg_vs_rabi,
    transparency_width,
    window_edges,
    window_width,
)

CANON = canonical_params()


@pytest.fixture(scope="module")
def tables():
    return figure_tables()


def chi_rows(panel, grid=FIG2_GRID):
    rabi, dc = FIG2_PANELS[panel]
    return sweep_chi(grid, dc, CANON.with_(rabi=rabi))


def test_grid_spec():
    g = GridSpec(-1, 1, 3)
    assert list(g.values()) == [-1, 0, 1]
    assert g.refined().points == 5
    with pytest.raises(ValueError):
        GridSpec(1, 1, 3)
    with pytest.raises(ValueError):
        GridSpec(0, 1, 1)


def test_fig2_grid_contains_resonance():
    rows = chi_rows("a2")
    mid = rows[len(rows) // 2]
    assert mid.abscissa == 0.0
    assert mid.chi1 == 0.0
    assert mid.chi2 == pytest.approx(0.02 * 1e-4 / 0.2501, rel=1e-12)


def test_window_edges_on_lorentzian_dip():
    x = np.linspace(-10, 10, 2001)
    y = 1 - 1 / (1 + x**2)  # dip of half width 1 at half depth
    lo, hi = window_edges(x, y, level=0.5)
    assert lo == pytest.approx(-1, abs=1e-4)
    assert hi == pytest.approx(1, abs=1e-4)
    assert window_width(x, y, fraction=0.5) == pytest.approx(2 * np.sqrt(1 / (1 - 0.5 * max(y)) - 1), abs=1e-3)


def test_window_edge_off_grid_raises():
    x = np.linspace(-1, 1, 11)
    with pytest.raises(ValueError):
        window_edges(x, x**2, level=5.0)


def test_transparency_window_scales_with_rabi_squared():
    wide = transparency_width(chi_rows("a1"), CANON)
    narrow = transparency_width(chi_rows("a2"), CANON)
    assert 10 <= wide / narrow <= 20


def test_half_max_window_ratio_is_reported():
    # the half-of-flanking-peak width grows more slowly: the Autler-Townes
    # peaks it is measured against move out with Omega as well
    def half(panel):
        rows = chi_rows(panel)
        return window_width([r.abscissa for r in rows], [r.chi2 for r in rows])

    ratio = half("a1") / half("a2")
    assert 4 < ratio < 10


def test_transparency_width_refinement_stable():
    for panel in ("a1", "a2"):
        coarse = transparency_width(chi_rows(panel), CANON)
        fine = transparency_width(chi_rows(panel, FIG2_GRID.refined()), CANON)
        assert abs(fine - coarse) < 0.01  # one coarse cell


def test_detuned_panels_mirror():
    b1, b2 = chi_rows("b1"), chi_rows("b2")
    scale = max(abs(r.chi2) for r in b1)
    for r1, r2 in zip(b1, reversed(b2)):
        assert r1.abscissa == pytest.approx(-r2.abscissa, abs=1e-12)
        # chi(D, Dc) = -conj(chi(-D, -Dc)) up to the omega = omega_ab + Dp factor
        assert abs(r1.chi1 + r2.chi1) <= 1e-5 * scale
        assert abs(r1.chi2 - r2.chi2) <= 1e-5 * scale


def test_bare_absorption_peak():
    assert bare_absorption_peak(CANON) == pytest.approx(0.02)


@pytest.fixture(scope="module")
def fig3a():
    return {g: sweep_vg_vs_rabi(FIG3A_GRID, FIG3A_DELTA_C, CANON.with_(g_root_n=g)) for g in FIG3A_COUPLINGS}


def test_fig3a_monotone_and_bounded(fig3a):
    for rows in fig3a.values():
        vg = [r.vg_over_c for r in rows]
        assert all(0 < v < 1 for v in vg)
        assert all(b > a for a, b in zip(vg, vg[1:]))


def test_fig3a_end_value(fig3a):
    # simplified estimate 1/(1 + g^2N/Omega^2) = 0.9 at Omega = 300
    assert fig3a[100.0][-1].vg_over_c == pytest.approx(0.9, rel=0.15)


def test_fig3a_density_ordering(fig3a):
    for r100, r80 in zip(fig3a[100.0], fig3a[80.0]):
        assert r100.vg_over_c < r80.vg_over_c


def test_fig3a_rejects_nonpositive_rabi():
    with pytest.raises(ValueError):
        sweep_vg_vs_rabi(GridSpec(0, 1, 3), 0.0, CANON)


@pytest.fixture(scope="module")
def fig3b():
    return sweep_vg_vs_detuning(FIG3B_GRID)


def test_fig3b_layout(fig3b):
    assert len(fig3b) == len(FIG3B_CASES) * FIG3B_GRID.points
    for rabi, g in FIG3B_CASES:
        rows = rows_for_case(fig3b, rabi, g)
        assert [r.abscissa for r in rows] == list(FIG3B_GRID.values())


@pytest.mark.parametrize("g", [100.0, 80.0])
def test_fig3b_minimum_near_resonance(fig3b, g):
    rows = rows_for_case(fig3b, 0.04, g)
    x = [r.abscissa for r in rows]
    vg = [r.vg_over_c for r in rows]
    assert abs(grid_argmin(x, vg)) <= 0.5
    i = int(np.argmin(vg))
    assert all(b >= a for a, b in zip(vg[i:], vg[i + 1:]))
    assert all(b >= a for a, b in zip(vg[i::-1], vg[i - 1::-1]))


def test_fig3b_flat_at_strong_control(fig3b):
    vg = [r.vg_over_c for r in rows_for_case(fig3b, 50.0, 100.0)]
    assert (max(vg) - min(vg)) / min(vg) < 0.01


def test_fig3b_density_ordering_and_bounds(fig3b):
    for r100, r80 in zip(rows_for_case(fig3b, 0.04, 100.0), rows_for_case(fig3b, 0.04, 80.0)):
        assert r100.vg_over_c < r80.vg_over_c
    assert all(0 < r.vg_over_c < 1 for r in fig3b)


def test_rows_to_table_columns():
    rows = chi_rows("a2", GridSpec(-1, 1, 3))
    t = rows_to_table(rows, "delta")
    assert t.header[:3] == ("delta", "chi1", "chi2")
    assert "vg_over_c" not in t.header
    t = rows_to_table(sweep_vg_vs_rabi(GridSpec(1, 2, 2), 0.0, CANON), "rabi")
    assert "vg_over_c" in t.header


def test_figure_tables(tables):
    assert sorted(tables) == ["fig2_a1", "fig2_a2", "fig2_b1", "fig2_b2", "fig3_a", "fig3_b"]
    table, x_col, y_cols = tables["fig3_a"]
    assert table.header == ("rabi", "vg_g100", "vg_g80")
    assert len(table.rows) == FIG3A_GRID.points
    table, x_col, y_cols = tables["fig3_b"]
    assert len(y_cols) == len(FIG3B_CASES)


def test_figure_tables_deterministic(tables):
    again = figure_tables()
    for name, (table, _, _) in tables.items():
        assert again[name][0].to_csv() == table.to_csv()
