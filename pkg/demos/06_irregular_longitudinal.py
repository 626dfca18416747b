"""
Longitudinal profiles with irregular visit times
================================================

Visit-style data rarely sits on a regular grid, so the time axis keeps
raw offsets from each subject's first visit and wrapping takes a speed
parameter: every keystroke shortens the x-range by at least that much,
moving however many points fall beyond the shrinking limit.
"""

from pathlib import Path

from foldplot import Session
from foldplot.datasets import longitudinal_profiles

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

session = Session.from_records(longitudinal_profiles(individuals=6, visits=12))
print(f"{len(session.table)} visits across "
      f"{len(session.table.individuals)} subjects, irregular: "
      f"{bool(session.table.irregular.any())}")

(out / "06_profiles.svg").write_text(session.export_svg(title="overlaid profiles"))

# pull the subjects apart gradually, five keystrokes at a time
session.run_script("facetInd 5")
(out / "06_facet_partial.svg").write_text(session.export_svg(title="partially faceted"))
session.run_script("facetInd 15")
(out / "06_facet_full.svg").write_text(session.export_svg(title="fully faceted"))

# irregular wrap: shrink the x-range by at least 60 days per keystroke
wrapped = Session.from_records(longitudinal_profiles(individuals=6, visits=12))
for _ in range(3):
    wrapped.run_script("wrapIrregular 60")
    lo, hi = wrapped.state.xlim
    moved = int((wrapped.state.x != wrapped.state.x0).sum())
    print(f"x-limits ({lo:.0f}, {hi:.0f}), {moved} points folded")
(out / "06_wrapped.svg").write_text(wrapped.export_svg(title="irregular wrap"))

# hovering reports the original visit label, not the display position
hit = wrapped.query_at(float(wrapped.state.x[5]), float(wrapped.state.y[5]), radius=0.05)
print("query:", hit["individual"], hit["time"], hit["value"])
