"""
Headless scripts, exports, and the wire protocol
================================================

The same operations drive every surface: a script, the coordinate/SVG
exports, and the message protocol the browser UI speaks.  A script run
and the equivalent message replay land in bit-identical states.
"""

from pathlib import Path

from foldplot import Session
from foldplot.datasets import trapping_series
from foldplot.protocol import handle_message

out = Path(__file__).parent / "output"
out.mkdir(exist_ok=True)

SCRIPT = "wrapX 75; facetVar; switch; brush series 20"

scripted = Session.from_records(trapping_series())
state, layers, log = scripted.run_script(SCRIPT)
print("script interactions:", log["interactions"][:3], f"... ({len(log['interactions'])} total)")
coords_csv = scripted.export_coords()
(out / "07_coords.csv").write_text(coords_csv)
(out / "07_scripted.svg").write_text(scripted.export_svg(title="scripted session"))

# replay the same actions as wire messages
wired = Session.from_records(trapping_series())
for _ in range(75):
    handle_message(wired, {"kind": "interact", "op": "wrapX"})
handle_message(wired, {"kind": "interact", "op": "facetVar"})
handle_message(wired, {"kind": "interact", "op": "switch"})
handle_message(wired, {"kind": "brush", "ids": [20], "mode": "wholeSeries"})
print("script == wire replay:", wired.export_coords() == coords_csv)

# querying goes over the wire too
replies, _ = handle_message(wired, {"kind": "queryAt", "x": 10.0,
                                    "y": float(wired.state.y[9]), "radius": 0.05})
print("hover result:", replies[0]["result"]["time"], replies[0]["result"]["value"])

# reloading the export as a fresh baseline reproduces the coordinates
reloaded = Session.from_coords(coords_csv)
print("reload keeps (x, y):",
      reloaded.export_coords().splitlines()[1].split(",")[3:5]
      == coords_csv.splitlines()[1].split(",")[3:5])

print()
print("to drive it live:  foldplot load <csv> serve --port 8750")
print("then open http://127.0.0.1:8750/ (UI bundle) or speak JSON frames on :8751")
