"""Stateful composition of movements against the baseline.

The engine keeps one effective movement per interaction kind (drags
accumulate within theirs) and maintains the current coordinates as the
baseline plus the movement sum, updated live after every interaction.
The recorded stream allows ``recompute()`` to rebuild the same
coordinates independently, from the stored snapshots and parameters
alone, which is the cross-check used throughout the tests.

Rescaling operations (standardizing, y-wrapping) are not additive: they
snapshot the current y into the baseline, clear the y-movements and start
a fresh stream epoch.  The x-baseline is never re-keyed, so wrap and
shift movements stay measurable across those resets.
"""

from __future__ import annotations

import math

import numpy as np

from . import movements
from .state import CoordinateState, FacetEntry, InteractionRecord, WrapState

__all__ = ["InteractionEngine"]

X_KINDS = ("wrapX", "shiftX")
FACET_KINDS = ("facetIndividual", "facetVariable", "facetPeriod")


class InteractionEngine:
    """Applies interactions to a ``CoordinateState`` and records them."""

    def __init__(self, state: CoordinateState, wrap_stop: int = 3,
                 facet_step: float = movements.DEFAULT_FACET_STEP):
        self.state = state
        self.wrap = WrapState(stop=wrap_stop)
        self.facet_step = facet_step
        self.stream: list[InteractionRecord] = []
        self.counters: dict[str, int] = {}
        self.slots: dict[str, tuple[np.ndarray, np.ndarray]] = {}
        self.facet_layout: list[FacetEntry] = []
        self.ind_steps = 0
        self.standardized = False
        self.warnings: list[str] = []
        self.resets = 0

    # -- bookkeeping -------------------------------------------------

    def _next_j(self, kind: str) -> int:
        j = self.counters.get(kind, 0) + 1
        self.counters[kind] = j
        return j

    def _warn(self, message: str) -> None:
        self.warnings.append(message)

    def _reassemble(self) -> None:
        """Current coordinates = baseline + the sum of per-kind movements.

        Summing in a fixed kind order keeps the state deterministic and
        makes zero movements exact no-ops, so an even mirror toggle
        restores y bit-for-bit.
        """
        x = self.state.x0.copy()
        for kind in ("wrapX", "shiftX"):
            if kind in self.slots:
                x += self.slots[kind][0]
        y = self.state.y0.copy()
        for kind in ("facet", "mirror"):
            if kind in self.slots:
                y += self.slots[kind][1]
        self.state.x = x
        self.state.y = y

    def _apply_slot(self, kind: str, dx: np.ndarray, dy: np.ndarray) -> None:
        """Replace this kind's effective movement and refresh the state."""
        self.slots[kind] = (np.asarray(dx, dtype=float), np.asarray(dy, dtype=float))
        self._reassemble()

    def _accumulate_slot(self, kind: str, dx: np.ndarray, dy: np.ndarray) -> None:
        old_dx, old_dy = self.slots.get(kind, (np.zeros(self.state.n), np.zeros(self.state.n)))
        self.slots[kind] = (old_dx + dx, old_dy + dy)
        self._reassemble()

    def _rekey_y(self, marker: str) -> None:
        """Bake current y into the baseline and start a fresh y-epoch."""
        self.state.y0 = self.state.y.copy()
        for kind in ("facet", "mirror"):
            self.slots.pop(kind, None)
        self.stream = [r for r in self.stream if r.kind in X_KINDS]
        self.facet_layout = []
        self.ind_steps = 0
        self.resets += 1
        self._warn(f"baseline reset: {marker}")

    def _ensure_standardized(self) -> None:
        if not self.standardized:
            self.standardize()

    # -- wrapping ----------------------------------------------------

    def _check_regular(self) -> None:
        if bool(self.state.irregular.any()):
            raise ValueError(
                "regular wrapping needs regularly spaced series; use the irregular wrap"
            )

    def _record_wrap(self, movement, groups, xlim) -> None:
        rec = InteractionRecord(
            kind="wrapX",
            j=self._next_j("wrapX"),
            params={
                "mode": self.wrap.mode,
                "depth": self.wrap.depth,
                "stop": self.wrap.stop,
                "period": self.wrap.period,
                "speed": self.wrap.speed,
                "steps": self.wrap.irregular_steps,
            },
            groups={"wrap": groups.copy()},
        )
        self.stream.append(rec)
        self.state.line_groups["wrap"] = groups
        self.state.xlim = xlim
        self._apply_slot("wrapX", movement.dx, movement.dy)

    def wrap_x(self, steps: int = 1) -> None:
        """Apply ``steps`` wrap keystrokes (negative values unwrap)."""
        self._check_regular()
        movement, groups, xlim = movements.wrap_x_step(self.state, self.wrap, steps)
        self._record_wrap(movement, groups, xlim)

    def wrap_x_multiplicative(self, sizes: list[int]) -> None:
        """Accelerating wrap: each entry is one keystroke's point count."""
        self._check_regular()
        for size in sizes:
            movement, groups, xlim = movements.wrap_x_multiplicative(self.state, self.wrap, size)
            self._record_wrap(movement, groups, xlim)

    def wrap_x_to_period(self, period: int) -> None:
        """Jump straight to the wrapped layout of the given period length."""
        self._check_regular()
        movement, groups, xlim = movements.wrap_x_to_period(self.state, self.wrap, period)
        if movement is None:
            self._warn(xlim)
            return
        self._record_wrap(movement, groups, xlim)

    def wrap_x_irregular(self, speed: float) -> None:
        """One irregular-spacing wrap step with the given speed."""
        if not bool(self.state.irregular.any()):
            raise ValueError("irregular wrapping needs an irregularly spaced series")
        movement, groups, xlim = movements.wrap_x_irregular(self.state, self.wrap, speed)
        self._record_wrap(movement, groups, xlim)

    def wrap_y(self, band: float) -> None:
        """Fold y modulo ``band``; bakes into the baseline when done.

        Bands bind to the per-line baseline values, so facet offsets
        survive the fold (a faceted display folds within its blocks).  A
        still-active mirror is baked into the baseline first: folding
        must see the reflected shape, which is how mirror-then-wrap
        composes into a horizon display.
        """
        self._ensure_standardized()
        if "mirror" in self.slots:
            self.state.y0 = self.state.y0 + self.slots.pop("mirror")[1]
            self.stream = [r for r in self.stream if r.kind != "mirror"]
            self._reassemble()
        movement, bands, pieces, warning = movements.wrap_y(self.state, band)
        if warning:
            self._warn(warning)
            return
        self.state.y += movement.dy
        self.state.line_groups["band"] = bands
        self.state.cut_pieces = pieces
        self.state.band_height = band
        self._next_j("wrapY")
        self._rekey_y("wrapY")

    # -- rescaling ---------------------------------------------------

    def standardize(self) -> None:
        """Rescale every series' y onto [0, 1] and re-key the baseline."""
        self.state.y = movements.rescaled_lines(self.state)
        self._next_j("standardize")
        self._rekey_y("standardize")
        self.standardized = True

    # -- faceting ----------------------------------------------------

    def _facet_progress(self) -> float:
        if self.facet_layout and self.facet_layout[-1].key == "individual":
            return min(self.facet_step * self.ind_steps, 1.0)
        return 1.0

    def _snap_partial_facet(self) -> None:
        if self.facet_layout and self.facet_layout[-1].key == "individual":
            if self._facet_progress() < 1.0:
                self.ind_steps = math.ceil(1.0 / self.facet_step)

    def _apply_facet(self, kind: str) -> None:
        dy = movements.facet_offsets(self.facet_layout, self._facet_progress(), self.state.n)
        rec = InteractionRecord(
            kind=kind,
            j=self._next_j(kind),
            params={
                "layout": [(e.key, e.count) for e in self.facet_layout],
                "progress": self._facet_progress(),
            },
            groups={f"facet:{i}": e.groups.copy() for i, e in enumerate(self.facet_layout)},
        )
        self.stream.append(rec)
        self._apply_slot("facet", np.zeros(self.state.n), dy)
        self.state.facet_blocks = (
            movements.facet_offsets(self.facet_layout, 1.0, self.state.n).astype(np.int64) + 1
        )

    def _append_facet_entry(self, key: str, groups: np.ndarray) -> None:
        if any(e.key == key for e in self.facet_layout):
            return
        self._snap_partial_facet()
        self.facet_layout.append(
            FacetEntry(key=key, groups=groups.copy(), count=int(groups.max()))
        )

    def facet_individual(self, steps: int = 1, step_size: float | None = None) -> None:
        """Advance the gradual individual faceting by ``steps`` keystrokes."""
        if step_size is not None:
            if not 0.0 < step_size < 1.0:
                raise ValueError("facet step size must be in (0, 1)")
            self.facet_step = step_size
        self._ensure_standardized()
        self._append_facet_entry("individual", self.state.line_groups["individual"])
        if self.facet_layout[-1].key == "individual":
            self.ind_steps = max(self.ind_steps + steps, 0)
        self._apply_facet("facetIndividual")

    def facet_variable(self) -> None:
        """Fully split by variable, or by wrap-derived period when wrapped."""
        self._ensure_standardized()
        if int(self.state.line_groups["wrap"].max()) > 1:
            self._append_facet_entry("period", self.state.line_groups["wrap"])
            self._apply_facet("facetPeriod")
        else:
            self._append_facet_entry("variable", self.state.line_groups["variable"])
            self._apply_facet("facetVariable")

    def facet_period(self) -> None:
        """Fully split by the wrap-derived period grouping."""
        self._ensure_standardized()
        if int(self.state.line_groups["wrap"].max()) <= 1:
            raise ValueError("no wrap-derived periods to facet; wrap first")
        self._append_facet_entry("period", self.state.line_groups["wrap"])
        self._apply_facet("facetPeriod")

    # -- mirroring and shifting ---------------------------------------

    def mirror(self, divider: str = "mean") -> None:
        """Toggle the mirror: odd counts reflect below the divider, even restore."""
        j = self._next_j("mirror")
        constant = all(
            float(self.state.y0[sl].max()) == float(self.state.y0[sl].min())
            for sl in self.state.series_slices
        )
        if constant:
            self._warn("mirror on constant series has no effect")
        movement = movements.mirror_toggle(self.state, divider, j)
        rec = InteractionRecord(kind="mirror", j=j, params={"divider": divider})
        self.stream.append(rec)
        self._apply_slot("mirror", movement.dx, movement.dy)

    def shift_x(self, group: int, drag_start: float, drag_end: float) -> None:
        """Drag one drawable line group horizontally; drags accumulate."""
        snapshot = self.state.draw_groups()
        if group not in snapshot:
            self._warn(f"shift ignored: unknown line group {group}")
            return
        movement = movements.shift_x(snapshot, drag_start, drag_end, group)
        rec = InteractionRecord(
            kind="shiftX",
            j=self._next_j("shiftX"),
            inputs={"drag_start": float(drag_start), "drag_end": float(drag_end), "group": int(group)},
            groups={"shift": snapshot},
        )
        self.stream.append(rec)
        self._accumulate_slot("shiftX", movement.dx, movement.dy)

    # -- baseline procedure -------------------------------------------

    def recompute(self) -> tuple[np.ndarray, np.ndarray]:
        """Rebuild (x, y) from the baseline plus the recorded stream."""
        return movements.recompute_baseline(self.state, self.stream)
