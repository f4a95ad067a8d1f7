"""Dark-state following during a control-field ramp.

Compares |C~| with the adiabatic value g_root_n |a| / Omega along the ramp and
reports where following breaks down.

    python scripts/storage_demo.py --stop 0.04 --duration 500
"""
import argparse

from lambda_eit.dynamics import DriveSpec, is_stored, storage_ramp
from lambda_eit.sweeps import canonical_params


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--start", type=float, default=50.0)
    ap.add_argument("--stop", type=float, default=0.04)
    ap.add_argument("--duration", type=float, default=500.0)
    ap.add_argument("--probe", type=float, default=1e-3)
    ap.add_argument("--samples", type=int, default=21)
    args = ap.parse_args()

    p = canonical_params()
    ramp = DriveSpec.linear_ramp(args.probe, args.start, args.stop, args.duration)
    samples = storage_ramp(p, 0.0, ramp, args.samples)
    print(f"{'t':>8} {'Omega':>9} {'vg/c':>11} {'|C~|':>11} {'adiabatic':>11} {'ratio':>7}")
    for s in samples:
        target = p.g_root_n * args.probe / s.rabi if s.rabi > 0 else float("inf")
        print(f"{s.t:8.2f} {s.rabi:9.4f} {s.vg_over_c:11.4e} {s.abs_c_tilde:11.4e} {target:11.4e} {s.abs_c_tilde / target:7.4f}")
    print(f"terminal |A| <= 1e-3 |C~|: {is_stored(samples)}")


if __name__ == "__main__":
    main()
