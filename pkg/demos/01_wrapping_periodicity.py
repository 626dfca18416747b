"""
Finding a period by x-wrapping
==============================

A quasi-periodic annual series is folded onto itself one keystroke at a
time.  Each wrap crops the latest points and overlays them on the start
of the series; when the fold length matches the period, the peaks line
up.  Snapshots are written for several wrap depths, then the same final
layout is reached in one jump once the period is known.
"""

from pathlib import Path

import numpy as np

from foldplot import Session
from foldplot.datasets import trapping_series

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

session = Session.from_records(trapping_series())
print(f"loaded {len(session.table)} annual counts, aspect {session.aspect:.4f}")

for depth in (0, 25, 50, 75):
    fresh = Session.from_records(trapping_series())
    if depth:
        fresh.run_script(f"wrapX {depth}")
    lo, hi = fresh.state.xlim
    (out / f"01_wrap_{depth:03d}.svg").write_text(
        fresh.export_svg(title=f"{depth} wrap steps, x in [{lo:.0f}, {hi:.0f}]")
    )
    print(f"depth {depth:3d}: x-limits ({lo:.0f}, {hi:.0f})")

# After 75 steps the 114-point series is folded onto 39 years: roughly
# four cycles of the ~9.6-year period stacked in x. Faceting by the
# wrap-derived period separates the overlaid cycles vertically.
session.run_script("wrapX 75; facetVar")
rows = int(session.state.line_groups["wrap"].max())
print(f"after 75 steps + facet: {rows} stacked cycles")
(out / "01_wrap_faceted.svg").write_text(session.export_svg(title="wrapped, faceted by period"))

# One jump straight to a known period length gives the same fold as
# iterating single steps.
jump = Session.from_records(trapping_series())
jump.run_script("wrapPeriod 39")
assert np.array_equal(jump.state.x, Session.from_records(trapping_series()).run_script("wrapX 75")[0].x)
print("wrapPeriod 39 == 75 single steps")

# Multiplicative wrapping accelerates: each keystroke sends more points left.
fast = Session.from_records(trapping_series())
fast.run_script("wrapXMult 5 10 20 40")
print(f"multiplicative wrap reached x-limits {fast.state.xlim}")
