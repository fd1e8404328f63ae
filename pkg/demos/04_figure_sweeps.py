"""
Figure data
===========

The sweep harness writes one CSV per figure plus a JSON sidecar with the
grid description.  This script writes all six into ./figure_data and prints
the headline numbers read back from the files.
"""

import csv
from pathlib import Path

import numpy as np

from threeboson.sweep import FIGURES, write_figure

out = Path("figure_data")
out.mkdir(exist_ok=True)

for fig in FIGURES:
    meta = write_figure(fig, out / f"{fig}.csv", resolution=None if fig in ("fig1", "fig4") else 101)
    print(f"{fig}: {meta['rows']} rows, columns {meta['columns']}")

with open(out / "fig1.csv") as fh:
    rows = [list(map(float, r)) for r in list(csv.reader(fh))[1:]]
s, c_r0, c_t0 = np.array(rows).T
print(f"fig1 at s=1/sqrt(3): {c_r0[-1]:.6f} {c_t0[-1]:.6f}")

with open(out / "fig5.csv") as fh:
    rows = np.array([list(map(float, r)) for r in list(csv.reader(fh))[1:]])
i = rows[:, 2].argmin()
print(f"fig5 smallest xi {rows[i, 2]:.4f} at r={rows[i, 0]:.2f}, t={rows[i, 1]:.2f}")
