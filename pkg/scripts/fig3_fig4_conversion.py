#!/usr/bin/env python3
"""Conversion fidelities and Wigner grids of the heralded outputs at alpha = 0.5."""

import argparse
import math
from pathlib import Path

import numpy as np

from photon_replacement._io import matrix_csv, table_csv
from photon_replacement.orthogonalize import dv_conversion_report, heralded_pair, solve_T, transformed_cat
from photon_replacement.wigner import wigner_grid


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--alpha", type=float, default=0.5)
    parser.add_argument("--out", type=Path, default=Path("results"))
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    T = solve_T(args.alpha)
    report = dv_conversion_report(args.alpha, T)
    meta = {"script": "fig3_fig4_conversion", "alpha": args.alpha, "T": T}
    rows = [vars(r) for r in report.rows]
    (args.out / "conversion_fidelities.csv").write_text(table_csv(["output", "target", "fidelity", "root_fidelity"], rows, meta))
    for r in report.rows:
        print(f"{r.output:>13} vs {r.target:<18} |<u|v>|^2 = {r.fidelity:.5f}   |<u|v>| = {r.root_fidelity:.5f}")

    axis = np.linspace(-4, 4, 161)
    states = {
        "psi_plus": heralded_pair(args.alpha, T)[0].state,
        "even_cat_out": transformed_cat(args.alpha, T, 0.0).state,
        "odd_cat_out": transformed_cat(args.alpha, T, math.pi).state,
    }
    for name, state in states.items():
        grid = wigner_grid(state, axis, axis)
        (args.out / f"wigner_{name}.csv").write_text(matrix_csv(grid.x, grid.p, grid.values, {**meta, "state": name}))


if __name__ == "__main__":
    main()
