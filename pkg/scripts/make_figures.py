"""Write every figure table (CSV + SVG) to a directory.

    python scripts/make_figures.py [--out figures] [--config run.cfg]
"""
import argparse
from pathlib import Path

from lambda_eit.config import build_config, parse_config
from lambda_eit.sweeps import figure_tables
from lambda_eit.tables import emit_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("figures"))
    ap.add_argument("--config", type=Path)
    args = ap.parse_args()

    params = parse_config(args.config)[0] if args.config else build_config({}).params
    args.out.mkdir(parents=True, exist_ok=True)
    for name, (table, x_col, y_cols) in figure_tables(params).items():
        table.write(args.out / f"{name}.csv")
        emit_svg(table, x_col, y_cols, args.out / f"{name}.svg", title=name)
        print(f"{name}: {len(table.rows)} rows -> {args.out / name}.{{csv,svg}}")


if __name__ == "__main__":
    main()
