"""
Mirroring, and a horizon display by composition
===============================================

Mirroring reflects everything below a divider upward; peaks and troughs
then compete on the same side and their magnitudes compare directly.
Folding the mirrored values into a narrow band (y-wrapping) yields a
horizon-style display: density encodes magnitude.
"""

from pathlib import Path

from foldplot import Session
from foldplot.datasets import trapping_series

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

plain = Session.from_records(trapping_series())
(out / "03_plain.svg").write_text(plain.export_svg(title="original series"))

mirrored = Session.from_records(trapping_series())
mirrored.run_script("mirror mean; switch")
(out / "03_mirrored_area.svg").write_text(
    mirrored.export_svg(title="mirrored on the mean, area display")
)
print("after one toggle every value sits on or above the divider")

# toggling again restores the original exactly
mirrored.run_script("mirror mean")
print("second toggle restores the original: ",
      bool((mirrored.state.y == mirrored.state.y0).all()))

horizon = Session.from_records(trapping_series())
horizon.run_script("mirror mean; standardize; wrapY 0.25; switch")
bands = int(horizon.state.line_groups["band"].max())
pieces = len(horizon.state.cut_pieces)
print(f"horizon: {bands} bands, {pieces} cropped segment pieces")
(out / "03_horizon.svg").write_text(
    horizon.export_svg(title="mirror + y-wrap: horizon by composition")
)

# y-wrapping composes with faceting too: each faceted panel folds within
# its own block, so long runs of high values read as dense bands per panel.
from foldplot.datasets import quarterly_panel  # noqa: E402

panel = Session.from_wide_csv(quarterly_panel())
panel.run_script("standardize; facetVar; wrapY 0.34; switch")
print(f"faceted panel folded into bands of 0.34 within {int(panel.state.line_groups['variable'].max())} blocks")
(out / "03_faceted_ywrap.svg").write_text(
    panel.export_svg(title="faceted, then y-wrapped within blocks")
)
