"""Print the headline numbers behind the figure-level claims."""
import numpy as np

from lambda_eit.dynamics import DriveSpec, storage_ramp
from lambda_eit.sweeps import (
    FIG2_GRID,
    FIG2_PANELS,
    FIG3A_DELTA_C,
    FIG3A_GRID,
    FIG3B_CASES,
    FIG3B_GRID,
    canonical_params,
    grid_argmin,
    rows_for_case,
    sweep_chi,
    sweep_vg_vs_detuning,
    sweep_vg_vs_rabi,
    transparency_width,
    window_width,
)


def main():
    p = canonical_params()

    print("transparency window (chi2 below 1% of the bare peak)")
    widths = {}
    for panel in ("a1", "a2"):
        rabi, dc = FIG2_PANELS[panel]
        rows = sweep_chi(FIG2_GRID, dc, p.with_(rabi=rabi))
        widths[panel] = transparency_width(rows, p)
        half = window_width([r.abscissa for r in rows], [r.chi2 for r in rows])
        print(f"  Omega={rabi:<4g} width {widths[panel]:.5f}   half-of-flanking-peak width {half:.4f}")
    print(f"  ratio {widths['a1'] / widths['a2']:.2f}   (Omega ratio squared = 16)")

    print("\nv_g/c versus Omega at delta_c = 5")
    for g in (100.0, 80.0):
        rows = sweep_vg_vs_rabi(FIG3A_GRID, FIG3A_DELTA_C, p.with_(g_root_n=g))
        ends = rows[0].vg_over_c, rows[-1].vg_over_c
        print(f"  g_root_n={g:g}: {ends[0]:.3e} at Omega={rows[0].abscissa:g}, {ends[1]:.4f} at Omega={rows[-1].abscissa:g}")

    print("\nv_g/c versus common detuning")
    rows = sweep_vg_vs_detuning(FIG3B_GRID)
    for rabi, g in FIG3B_CASES:
        case = rows_for_case(rows, rabi, g)
        x = [r.abscissa for r in case]
        vg = np.array([r.vg_over_c for r in case])
        spread = (vg.max() - vg.min()) / vg.min()
        print(f"  Omega={rabi:<5g} g_root_n={g:<4g} min {vg.min():.4e} at delta_c={grid_argmin(x, vg):+.3f}  rel spread {spread:.2e}")

    print("\nstorage ramp 50 -> 0.04 over T = 500")
    samples = storage_ramp(p, 0.0, DriveSpec.linear_ramp(1e-3, 50.0, 0.04, 500.0), 11)
    for s in samples:
        print(f"  t={s.t:6.1f}  Omega={s.rabi:8.4f}  vg/c={s.vg_over_c:.4e}  |A|={s.abs_a:.3e}  |C~|={s.abs_c_tilde:.3e}")


if __name__ == "__main__":
    main()
