"""Audit the concentration bounds that make gap recovery possible.

The squared norm of "gate to [T], then keep the band [W]" is the top
eigenvalue lambda0 of the prolate matrix.  Three facts are checked
numerically across a sweep of W*T products:

  * lambda0 <= W*T + eps_grid  (so W*T < 1 forces a contraction),
  * the matrix trace is W*T    (eigenvalues must share a small budget),
  * gating a bandlimited signal spills >= 1 - W*T - eps_grid of the
    removed energy out of band (you cannot hide a gap inside the band).

At W*T >= 1 all guarantees lapse and the solvers refuse; the last block
shows that refusal.

Usage:  python3 demos/uncertainty_audit.py [outdir]
"""

import sys
from pathlib import Path

import numpy as np

from subgap import (
    ErasureModel,
    Interval,
    band_project,
    band_spill_ratio,
    default_grid,
    eps_grid,
    erase,
    make_demo_signal,
    operator_norm_sq,
    prolate_matrix,
    recover_neumann,
)
from subgap.io import write_csv

SWEEP = [(1.6, 0.0625), (1.0, 0.25), (2.0, 0.25), (3.6, 0.25)]

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("out") / "uncertainty_audit"
out.mkdir(parents=True, exist_ok=True)

grid = default_grid()
rows = []
print(f"{'W':>5} {'T':>7} {'WT':>5} {'lambda0':>9} {'trace':>7} "
      f"{'spill':>7} {'floor':>7}")
for w, t in SWEEP:
    band, window = Interval(0.0, w), Interval(0.0, t)
    lam = operator_norm_sq(grid, band, window)
    eps = eps_grid(grid, band, window)
    trace = float(np.real(np.trace(prolate_matrix(grid, band, window))))
    s_w = band_project(make_demo_signal(grid), band)
    spill = band_spill_ratio(s_w, band, window)
    floor = 1.0 - w * t - eps
    ok = lam <= w * t + eps and spill >= floor
    rows.append([w, t, w * t, lam, trace, spill, ok])
    print(f"{w:5.2f} {t:7.4f} {w * t:5.2f} {lam:9.5f} {trace:7.4f} "
          f"{spill:7.4f} {max(floor, 0.0):7.4f}  {'ok' if ok else 'FAIL'}")

write_csv(
    out / "audit.csv",
    ["W", "T", "WT", "lambda0", "trace", "spill", "pass"],
    rows,
)

# past the limit: WT = 2 and the solver must say no
w, t = 2.0, 1.0
band, window = Interval(0.0, w), Interval(0.0, t)
s_w = band_project(make_demo_signal(grid), band)
r = erase(s_w, ErasureModel(window=window, source_band=band))
report = recover_neumann(r, band, window)
print(f"\nWT = {w * t}: refused = {report.refused} ({report.reason})")
print(f"artifacts in {out}/")
