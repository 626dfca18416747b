"""Linked brushing: self-linking modes, cross-table links, polygon links.

Cross-table propagation follows the listener-and-guard scheme: each
direction of a link owns a guard flag that is raised while its listener
runs, and the opposite direction is suppressed whenever it sees the
raised guard.  That cuts the backward hop of one-to-many links, so a
brush in the long table marks the matching wide rows without bouncing
back and flooding the whole time slice.

On top of the guards, the linker tracks which directions already fired
for the current user action, bounding propagation in arbitrary link
graphs: one brush fires each registered direction at most once.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .layers import AreaPolygon
from .table import AttributeChange, AttributeTable, ReactiveTable

__all__ = [
    "HIGHLIGHT_MODES",
    "LinkError",
    "LinkSpec",
    "Linker",
    "PolygonLink",
    "self_link",
]

HIGHLIGHT_MODES = ("singlePoint", "wholeSeries", "sameTime")


class LinkError(ValueError):
    """A link spec cannot be registered against its tables."""


@dataclass
class LinkSpec:
    """Declared linkage between two tables over a shared column."""

    source: AttributeTable
    target: AttributeTable
    source_column: str
    target_column: str
    direction: str = "two-way"  # one-way | two-way


def self_link(table: ReactiveTable, selected: list[int], mode: str) -> list[int]:
    """Expand a selection per the highlight mode of a time plot.

    singlePoint keeps the selection; wholeSeries adds every row of the
    selected rows' series; sameTime adds every row sharing their time.
    """
    if mode not in HIGHLIGHT_MODES:
        raise ValueError(f"unknown highlight mode {mode!r}")
    ids = sorted({int(i) for i in selected if 0 <= int(i) < len(table)})
    if not ids or mode == "singlePoint":
        return ids
    if mode == "wholeSeries":
        chosen = set(table.series_idx[ids].tolist())
        rows = np.flatnonzero(np.isin(table.series_idx, sorted(chosen)))
    else:
        times = np.unique(table.time_index[ids])
        rows = np.flatnonzero(np.isin(table.time_index, times))
    return [int(r) for r in rows]


class _Direction:
    """One direction of a registered link, with its guard flag."""

    def __init__(self, spec: LinkSpec, source: AttributeTable, target: AttributeTable,
                 source_column: str, target_column: str, name: str):
        self.spec = spec
        self.source = source
        self.target = target
        self.name = name
        self.guard = False
        self.opposite: _Direction | None = None
        try:
            src_values = source.column(source_column)
        except KeyError:
            raise LinkError(f"source table has no column {source_column!r}") from None
        try:
            tgt_values = target.column(target_column)
        except KeyError:
            raise LinkError(f"target table has no column {target_column!r}") from None
        self.source_values = list(src_values)
        self.target_rows: dict = {}
        for row, value in enumerate(tgt_values):
            self.target_rows.setdefault(value, []).append(row)
        self.source_rows: dict = {}
        for row, value in enumerate(self.source_values):
            self.source_rows.setdefault(value, []).append(row)

    def fire(self, event: AttributeChange) -> None:
        """Propagate brushed state for the link values touched by ``event``."""
        self.guard = True
        try:
            touched = sorted({self.source_values[r] for r in event.rows}, key=repr)
            rows: list[int] = []
            values: list[bool] = []
            for value in touched:
                targets = self.target_rows.get(value)
                if not targets:
                    continue
                on = bool(self.source.brushed[self.source_rows[value]].any())
                for t in targets:
                    if bool(self.target.brushed[t]) != on:
                        rows.append(t)
                        values.append(on)
            if rows:
                self.target.set_attributes(rows, brushed=values)
        finally:
            self.guard = False


class PolygonLink:
    """One-to-n link between data points and their (cropped) polygons.

    Brushing a point highlights every polygon sourced from it; brushing a
    polygon brushes its single source point.  Construction vertices have
    no attributes of their own and are never independently brushable.
    """

    def __init__(self, table: AttributeTable, polygons: tuple[AreaPolygon, ...]):
        for i, poly in enumerate(polygons):
            if poly.source_point is None or not 0 <= poly.source_point < len(table):
                raise LinkError(f"polygon {i} has no valid source point id")
        self.table = table
        self.polygons = polygons
        self.highlighted: set[int] = set()
        table.add_listener(self._on_change)
        self._on_change(None)

    def _on_change(self, _event) -> None:
        brushed = self.table.brushed
        self.highlighted = {
            i for i, poly in enumerate(self.polygons) if brushed[poly.source_point]
        }

    def polygons_for_point(self, point_id: int) -> list[int]:
        return [i for i, poly in enumerate(self.polygons) if poly.source_point == point_id]

    def brush_polygon(self, index: int, brushed: bool = True) -> None:
        poly = self.polygons[index]
        self.table.set_attributes([poly.source_point], brushed=brushed)

    def detach(self) -> None:
        self.table.remove_listener(self._on_change)


class Linker:
    """Registry of links plus the propagation discipline between them.

    Run user-level brush mutations through ``run`` so that actions issued
    while a propagation is still settling are queued behind it.
    """

    def __init__(self):
        self.directions: list[_Direction] = []
        self.fire_counts: Counter = Counter()
        self.suppressed: Counter = Counter()
        self._tables: list[AttributeTable] = []
        self._fired: set[int] = set()
        self._action_log: list[tuple[_Direction, AttributeChange]] = []
        self._depth = 0
        self._pending: list = []

    def link_tables(self, spec: LinkSpec) -> list[_Direction]:
        """Register the listeners of a link spec; invalid specs are rejected."""
        if spec.direction not in ("one-way", "two-way"):
            raise LinkError(f"unknown link direction {spec.direction!r}")
        forward = _Direction(
            spec, spec.source, spec.target, spec.source_column, spec.target_column,
            name="forward",
        )
        created = [forward]
        if spec.direction == "two-way":
            backward = _Direction(
                spec, spec.target, spec.source, spec.target_column, spec.source_column,
                name="backward",
            )
            forward.opposite = backward
            backward.opposite = forward
            created.append(backward)
        for direction in created:
            self._watch(direction.source)
        self.directions.extend(created)
        return created

    def link_polygons(self, table: AttributeTable, polygons: tuple[AreaPolygon, ...]) -> PolygonLink:
        return PolygonLink(table, polygons)

    def _watch(self, table: AttributeTable) -> None:
        if any(t is table for t in self._tables):
            return
        self._tables.append(table)
        table.add_listener(lambda event, t=table: self._dispatch(t, event))

    def _dispatch(self, table: AttributeTable, event: AttributeChange) -> None:
        top_level = self._depth == 0
        if top_level:
            self._fired.clear()
            self._action_log.clear()
        self._depth += 1
        try:
            for i, direction in enumerate(self.directions):
                if direction.source is not table:
                    continue
                if direction.opposite is not None and direction.opposite.guard:
                    self.suppressed[direction_key(direction)] += 1
                    continue
                if i in self._fired:
                    continue
                self._fired.add(i)
                self._action_log.append((direction, event))
                self.fire_counts[direction_key(direction)] += 1
                direction.fire(event)
        finally:
            self._depth -= 1
            if top_level:
                self._drain()

    def run(self, fn) -> None:
        """Execute a user action, queueing it if a propagation is settling."""
        if self._depth > 0:
            self._pending.append(fn)
            return
        self._fired.clear()
        self._action_log.clear()
        self._depth += 1
        try:
            fn()
        finally:
            self._depth -= 1
        self._drain()

    def _drain(self) -> None:
        while self._pending and self._depth == 0:
            fn = self._pending.pop(0)
            self._fired.clear()
            self._depth += 1
            try:
                fn()
            finally:
                self._depth -= 1

    def resettle(self) -> int:
        """Re-run the listeners that fired in the last action, same events.

        A settled state re-processes its own propagation without further
        changes, so the returned change count should be zero.  Deliveries
        that were cut by a guard stay cut: the cut is part of the settled
        semantics, not pending work.
        """
        changes = 0
        for direction, event in list(self._action_log):
            before = [t.brushed.copy() for t in self._tables]
            direction.fire(event)
            after = [t.brushed for t in self._tables]
            changes += sum(int((a != b).sum()) for a, b in zip(before, after))
        return changes


def direction_key(direction: _Direction) -> str:
    return f"{id(direction.spec)}:{direction.name}"
