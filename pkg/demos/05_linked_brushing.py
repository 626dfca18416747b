"""
Linked brushing across data shapes
==================================

A wide quarterly panel is melted into the long form that time plots
need, while the wide companion stays registered for other views.  The
tables are linked on Time with a guarded two-way link: brushing flows
across, but the backward hop of the one-to-many direction is cut so a
single-point selection stays a single point.
"""

from pathlib import Path

import numpy as np

from foldplot import Session
from foldplot.datasets import quarterly_panel

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

session = Session.from_wide_csv(quarterly_panel())
table, wide = session.table, session.wide
print(f"long rows: {len(table)}, wide rows: {len(wide)}")
# overlay the five raw scales on comparable footing before snapshots
session.run_script("standardize")

# one point in the time plot: the wide row lights up, nothing echoes back
target = int(np.flatnonzero((table.var_idx == 2) & (table.time_index == 7))[0])
session.brush([target], mode="singlePoint")
print("single point:", np.flatnonzero(table.brushed).tolist(),
      "-> wide rows", np.flatnonzero(wide.brushed).tolist())

# whole-series mode: the profit series end to end
session.brush([target], mode="wholeSeries")
print("whole series brushed rows:", int(table.brushed.sum()))
(out / "05_series_brush.svg").write_text(session.export_svg(title="whole-series brush"))

# same-time mode: one quarter across all five variables
session.brush([target], mode="sameTime")
times = set(table.time_index[table.brushed].tolist())
print("same-time brushed rows:", int(table.brushed.sum()), "at times", times)

# brushing in the wide view fans out to every matching long row
session.brush([4, 5, 6], table="wide")
print("wide brush -> long rows:", int(table.brushed.sum()))
(out / "05_wide_brush.svg").write_text(session.export_svg(title="brushed from the wide view"))

print("listener firings:", dict(session.linker.fire_counts))
print("suppressed backward hops:", sum(session.linker.suppressed.values()))
