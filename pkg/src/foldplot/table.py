"""Reactive long-format data table and its attribute/event machinery.

Every other part of the engine reads from, or mutates, the tables defined
here.  Mutations are batched: one ``set_attributes`` call produces exactly
one change event, no matter how many rows it touches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "AttributeChange",
    "AttributeTable",
    "IngestError",
    "PALETTE",
    "ReactiveTable",
    "TemporalRecord",
    "WideTable",
    "ingest",
]

# Qualitative palette, assigned per variable in order of first appearance.
PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)

DEFAULT_INDIVIDUAL = "all"

# Relative tolerance used when deciding whether a series is regularly spaced.
_SPACING_RTOL = 1e-9


class IngestError(ValueError):
    """Raised when input records violate the table contract."""


@dataclass(frozen=True)
class TemporalRecord:
    """One measurement: a value observed for a variable at a point in time.

    ``time`` is the raw numeric time (a day index for dates); ``label`` is
    the original display form ("1821", an ISO date) kept for querying.
    """

    time: float
    variable: str
    individual: str = DEFAULT_INDIVIDUAL
    value: float = 0.0
    label: str | None = None


@dataclass(frozen=True)
class AttributeChange:
    """Batched attribute mutation, emitted once per ``set_attributes`` call.

    ``rows`` are the row ids actually updated; ``patch`` maps field name to
    either a scalar or a per-row sequence aligned with ``rows``.  Unknown
    ids are reported in ``unknown`` and were skipped.  Replaying the event
    log against a fresh table reconstructs the attribute state.
    """

    rows: tuple[int, ...]
    patch: dict
    unknown: tuple[int, ...] = ()


class AttributeTable:
    """Rows with brushable display attributes and change listeners."""

    def __init__(self, n_rows: int, colors: Sequence[str] | None = None):
        self.brushed = np.zeros(n_rows, dtype=bool)
        self.visible = np.ones(n_rows, dtype=bool)
        self.size = np.ones(n_rows, dtype=float)
        if colors is None:
            colors = [PALETTE[0]] * n_rows
        self.color = list(colors)
        self._listeners: list[Callable[[AttributeChange], None]] = []
        self.event_log: list[AttributeChange] = []

    def __len__(self) -> int:
        return len(self.brushed)

    def add_listener(self, fn: Callable[[AttributeChange], None]) -> None:
        self._listeners.append(fn)

    def remove_listener(self, fn: Callable[[AttributeChange], None]) -> None:
        self._listeners.remove(fn)

    def set_attributes(self, ids: Iterable[int], **patch) -> AttributeChange | None:
        """Apply ``patch`` to the given rows and emit one batched event.

        Unknown ids are skipped but reported in the event.  An empty id list
        is a no-op and emits nothing.  Patch values may be scalars or
        sequences aligned with ``ids``.
        """
        ids = list(ids)
        if not ids:
            return None
        unknown_fields = set(patch) - {"brushed", "visible", "size", "color"}
        if unknown_fields:
            raise KeyError(f"unknown attribute fields: {sorted(unknown_fields)}")
        n = len(self)
        valid_mask = [0 <= i < n for i in ids]
        rows = tuple(i for i, ok in zip(ids, valid_mask) if ok)
        unknown = tuple(i for i, ok in zip(ids, valid_mask) if not ok)
        applied_patch = {}
        for name, value in patch.items():
            if np.ndim(value) == 0:
                applied_patch[name] = value
                values = [value] * len(ids)
            else:
                values = list(value)
                if len(values) != len(ids):
                    raise ValueError("per-row patch length must match ids")
                applied_patch[name] = [v for v, ok in zip(values, valid_mask) if ok]
            if name == "size" and any(v < 0 for v in values):
                raise ValueError("point size must be nonnegative")
            kept = [v for v, ok in zip(values, valid_mask) if ok]
            self._assign(name, rows, kept)
        event = AttributeChange(rows=rows, patch=applied_patch, unknown=unknown)
        self.event_log.append(event)
        for fn in list(self._listeners):
            fn(event)
        return event

    def _assign(self, name: str, rows: tuple[int, ...], values: list) -> None:
        if name == "color":
            for i, v in zip(rows, values):
                self.color[i] = v
        else:
            getattr(self, name)[list(rows)] = values

    def replay(self, events: Iterable[AttributeChange]) -> None:
        """Re-apply a recorded event log (rows are already validated)."""
        for ev in events:
            for name, value in ev.patch.items():
                vals = [value] * len(ev.rows) if np.ndim(value) == 0 else list(value)
                self._assign(name, ev.rows, vals)

    def column(self, name: str):
        raise KeyError(name)


class ReactiveTable(AttributeTable):
    """Long-format table: one row per (time, variable, individual) record.

    Rows are sorted by (variable, individual, time) at ingest and row ids
    are positions in that order.  ``time_index`` holds the normalized time
    (consecutive integers from 1 for regularly spaced series, raw offsets
    from the first observation otherwise).
    """

    def __init__(
        self,
        records: Sequence[TemporalRecord],
        time_index: np.ndarray,
        variables: list[str],
        individuals: list[str],
        var_idx: np.ndarray,
        ind_idx: np.ndarray,
        irregular: np.ndarray,
    ):
        colors = [PALETTE[v % len(PALETTE)] for v in var_idx]
        super().__init__(len(records), colors)
        self.records = list(records)
        self.time_index = time_index
        self.value = np.array([r.value for r in records], dtype=float)
        self.variables = variables
        self.individuals = individuals
        self.var_idx = var_idx
        self.ind_idx = ind_idx
        self.irregular = irregular
        self.labels = [
            r.label if r.label is not None else _format_time(r.time) for r in records
        ]
        # Series are (variable, individual) pairs, numbered in row order.
        pair = var_idx.astype(np.int64) * (max(len(individuals), 1)) + ind_idx
        _, self.series_idx = np.unique(pair, return_inverse=True)
        self.n_series = int(self.series_idx.max()) + 1 if len(records) else 0

    def series_slices(self) -> list[slice]:
        """Contiguous row ranges of each series, in series order."""
        bounds = np.flatnonzero(np.diff(self.series_idx)) + 1
        starts = [0, *bounds.tolist()]
        ends = [*bounds.tolist(), len(self)]
        return [slice(a, b) for a, b in zip(starts, ends)]

    def column(self, name: str):
        """Columns usable as linking variables."""
        if name == "Time":
            return self.time_index
        if name == "Variable":
            return [self.variables[v] for v in self.var_idx]
        if name == "Individual":
            return [self.individuals[v] for v in self.ind_idx]
        if name == "Value":
            return self.value
        raise KeyError(name)


class WideTable(AttributeTable):
    """Wide-format companion: one row per time, one column per variable."""

    def __init__(self, times: np.ndarray, columns: dict[str, np.ndarray],
                 labels: list[str] | None = None):
        super().__init__(len(times))
        self.times = times
        self.columns = columns
        self.labels = labels if labels is not None else [_format_time(t) for t in times]

    def column(self, name: str):
        if name == "Time":
            return self.times
        if name in self.columns:
            return self.columns[name]
        raise KeyError(name)


def _format_time(t: float) -> str:
    if float(t).is_integer():
        return str(int(t))
    return repr(float(t))


def ingest(records: Sequence[TemporalRecord]) -> ReactiveTable:
    """Build a ``ReactiveTable``, normalizing time per series.

    Regularly spaced series get consecutive integer times starting at 1;
    irregular series keep offsets from their first observation (also
    starting at 1) and are flagged so the irregular wrap can consume them.

    Raises ``IngestError`` for empty input, duplicate
    (time, variable, individual) triples, non-finite values, or series with
    fewer than 3 points.
    """
    if not records:
        raise IngestError("no records to ingest")
    for r in records:
        if not math.isfinite(r.value):
            raise IngestError(
                f"non-finite value for ({r.time!r}, {r.variable!r}, {r.individual!r})"
            )
        if not math.isfinite(r.time):
            raise IngestError(f"non-finite time {r.time!r}")

    variables: list[str] = []
    individuals: list[str] = []
    for r in records:
        if r.variable not in variables:
            variables.append(r.variable)
        if r.individual not in individuals:
            individuals.append(r.individual)

    seen: set[tuple[float, str, str]] = set()
    for r in records:
        key = (float(r.time), r.variable, r.individual)
        if key in seen:
            raise IngestError(f"duplicate (time, variable, individual) triple {key}")
        seen.add(key)

    order = sorted(
        range(len(records)),
        key=lambda i: (
            variables.index(records[i].variable),
            individuals.index(records[i].individual),
            float(records[i].time),
        ),
    )
    rows = [records[i] for i in order]
    var_idx = np.array([variables.index(r.variable) for r in rows], dtype=np.int64)
    ind_idx = np.array([individuals.index(r.individual) for r in rows], dtype=np.int64)

    time_index = np.empty(len(rows), dtype=float)
    irregular = np.zeros(len(rows), dtype=bool)
    start = 0
    while start < len(rows):
        end = start
        while (
            end < len(rows)
            and var_idx[end] == var_idx[start]
            and ind_idx[end] == ind_idx[start]
        ):
            end += 1
        times = np.array([float(r.time) for r in rows[start:end]])
        if len(times) < 3:
            r = rows[start]
            raise IngestError(
                f"series ({r.variable!r}, {r.individual!r}) has {len(times)} points; "
                "3 or more are required"
            )
        diffs = np.diff(times)
        spacing = diffs[0]
        regular = spacing > 0 and bool(
            np.all(np.abs(diffs - spacing) <= _SPACING_RTOL * abs(spacing))
        )
        if regular:
            time_index[start:end] = np.arange(1, len(times) + 1, dtype=float)
        else:
            time_index[start:end] = times - times[0] + 1.0
            irregular[start:end] = True
        start = end

    return ReactiveTable(rows, time_index, variables, individuals, var_idx, ind_idx, irregular)
