"""Sessions: data loading, the scripted interaction driver, querying, exports.

A session owns one long-format table (plus a wide companion when the
data arrived wide), the coordinate state, the interaction engine and the
link registry.  Every interaction, whether it came from a script, the
CLI or a wire message, funnels through the same ``apply`` method, so a
script and the equivalent message sequence produce identical states.
"""

from __future__ import annotations

import csv
import datetime as _dt
import io
from dataclasses import dataclass

import numpy as np

from .engine import InteractionEngine
from .layers import LayerSet, build_layers, initial_aspect
from .linking import HIGHLIGHT_MODES, Linker, LinkSpec, PolygonLink, self_link
from .state import from_table
from .svg import render_svg
from .table import IngestError, ReactiveTable, TemporalRecord, WideTable, ingest

__all__ = [
    "Command",
    "ScriptError",
    "Session",
    "melt_wide",
    "parse_script",
    "read_long_csv",
]

_BRUSH_MODE_ALIASES = {
    "single": "singlePoint",
    "point": "singlePoint",
    "series": "wholeSeries",
    "time": "sameTime",
}


class ScriptError(ValueError):
    """A script command failed; the index of the offender is reported."""


@dataclass(frozen=True)
class Command:
    op: str
    args: tuple


def _parse_time(text: str) -> tuple[float, str]:
    """Parse a time cell into (numeric time, display label).

    Accepts plain numbers and ISO dates; dates become day indices so the
    algebra stays numeric while the label keeps the original form.
    """
    text = text.strip()
    try:
        return float(text), text
    except ValueError:
        pass
    try:
        day = _dt.date.fromisoformat(text)
    except ValueError:
        raise IngestError(f"cannot parse time value {text!r}") from None
    return float(day.toordinal()), text


def melt_wide(csv_text: str) -> tuple[list[TemporalRecord], WideTable]:
    """Melt a wide CSV (time column first, one column per variable).

    Returns the long records plus the retained wide companion table used
    for cross-format linking.  Ragged rows are rejected with their row
    number.
    """
    reader = csv.reader(io.StringIO(csv_text))
    try:
        header = next(reader)
    except StopIteration:
        raise IngestError("empty CSV") from None
    if len(header) < 2:
        raise IngestError("wide CSV needs a time column and at least one variable")
    variables = [h.strip() for h in header[1:]]
    records: list[TemporalRecord] = []
    times: list[float] = []
    labels: list[str] = []
    columns: dict[str, list[float]] = {v: [] for v in variables}
    for row_no, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise IngestError(f"row {row_no}: expected {len(header)} cells, got {len(row)}")
        t, label = _parse_time(row[0])
        times.append(t)
        labels.append(label)
        for var, cell in zip(variables, row[1:]):
            try:
                value = float(cell)
            except ValueError:
                raise IngestError(f"row {row_no}: bad value {cell!r} for {var}") from None
            columns[var].append(value)
            records.append(TemporalRecord(time=t, variable=var, value=value, label=label))
    wide = WideTable(
        times=np.asarray(times, dtype=float),
        columns={v: np.asarray(c, dtype=float) for v, c in columns.items()},
        labels=labels,
    )
    return records, wide


def read_long_csv(csv_text: str) -> list[TemporalRecord]:
    """Read an already-long CSV with columns time, variable[, individual], value."""
    reader = csv.DictReader(io.StringIO(csv_text))
    if reader.fieldnames is None:
        raise IngestError("empty CSV")
    fields = {f.strip().lower(): f for f in reader.fieldnames}
    missing = {"time", "variable", "value"} - set(fields)
    if missing:
        raise IngestError(f"long CSV is missing columns: {sorted(missing)}")
    records = []
    for row_no, row in enumerate(reader, start=2):
        t, label = _parse_time(row[fields["time"]])
        kwargs = {}
        if "individual" in fields and row[fields["individual"]]:
            kwargs["individual"] = row[fields["individual"]].strip()
        try:
            value = float(row[fields["value"]])
        except ValueError:
            raise IngestError(f"row {row_no}: bad value {row[fields['value']]!r}") from None
        records.append(
            TemporalRecord(
                time=t,
                variable=row[fields["variable"]].strip(),
                value=value,
                label=label,
                **kwargs,
            )
        )
    return records


def _script_chunks(text: str) -> list[str]:
    chunks: list[str] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        chunks.extend(part.strip() for part in line.split(";"))
    return [c for c in chunks if c]


def parse_script(text: str) -> list[Command]:
    """Parse the headless interaction script grammar.

    Commands are separated by semicolons or newlines; ``#`` starts a
    comment.  See the README for the full grammar.
    """
    commands = []
    for index, chunk in enumerate(_script_chunks(text)):
        words = chunk.split()
        op, args = words[0], words[1:]
        try:
            commands.append(_parse_command(op, args))
        except (ValueError, IndexError) as exc:
            raise ScriptError(f"command {index} ({chunk!r}): {exc}") from None
    return commands


def _parse_command(op: str, args: list[str]) -> Command:
    if op == "wrapX":
        return Command("wrapX", (int(args[0]) if args else 1,))
    if op == "wrapXMult":
        if not args:
            raise ValueError("wrapXMult needs at least one step size")
        return Command("wrapXMult", (tuple(int(a) for a in args),))
    if op == "wrapPeriod":
        return Command("wrapPeriod", (int(args[0]),))
    if op == "wrapIrregular":
        return Command("wrapIrregular", (float(args[0]),))
    if op == "wrapY":
        return Command("wrapY", (float(args[0]),))
    if op == "facetInd":
        return Command("facetInd", (int(args[0]) if args else 1,))
    if op == "facetVar":
        return Command("facetVar", ())
    if op == "facetPeriod":
        return Command("facetPeriod", ())
    if op == "mirror":
        divider = args[0] if args else "mean"
        if divider not in ("mean", "median", "midrange", "initial"):
            raise ValueError(f"unknown divider {divider!r}")
        return Command("mirror", (divider,))
    if op == "shiftX":
        return Command("shiftX", (int(args[0]), float(args[1]), float(args[2])))
    if op == "switch":
        return Command("switch", ())
    if op == "standardize":
        return Command("standardize", ())
    if op == "brush":
        mode = _BRUSH_MODE_ALIASES.get(args[0], args[0])
        if mode not in HIGHLIGHT_MODES:
            raise ValueError(f"unknown brush mode {args[0]!r}")
        return Command("brush", (mode, tuple(int(a) for a in args[1:])))
    raise ValueError(f"unknown command {op!r}")


class Session:
    """One loaded dataset plus its interaction and linking state."""

    def __init__(self, table: ReactiveTable, wide: WideTable | None = None,
                 name: str = "session", wrap_stop: int = 3, facet_step: float = 0.05):
        self.name = name
        self.table = table
        self.wide = wide
        self.state = from_table(table)
        self.engine = InteractionEngine(self.state, wrap_stop=wrap_stop, facet_step=facet_step)
        self.mode = "line"
        self.aspect = initial_aspect(self.state)
        self.linker = Linker()
        self.version = 0
        self.polygon_link: PolygonLink | None = None
        if wide is not None:
            self.linker.link_tables(
                LinkSpec(source=table, target=wide, source_column="Time",
                         target_column="Time", direction="two-way")
            )

    # -- constructors --------------------------------------------------

    @classmethod
    def from_long_csv(cls, csv_text: str, **kwargs) -> "Session":
        return cls(ingest(read_long_csv(csv_text)), **kwargs)

    @classmethod
    def from_wide_csv(cls, csv_text: str, **kwargs) -> "Session":
        records, wide = melt_wide(csv_text)
        return cls(ingest(records), wide=wide, **kwargs)

    @classmethod
    def from_records(cls, records: list[TemporalRecord], **kwargs) -> "Session":
        return cls(ingest(records), **kwargs)

    def replace_from(self, other: "Session") -> None:
        """Swap in freshly loaded data, keeping this session object alive."""
        self.table = other.table
        self.wide = other.wide
        self.state = other.state
        self.engine = other.engine
        self.mode = other.mode
        self.aspect = other.aspect
        self.linker = other.linker
        self.polygon_link = other.polygon_link
        self.version += 1

    # -- interactions ----------------------------------------------------

    def apply(self, command: Command) -> None:
        """Apply one interaction command; this is the single write path."""
        op, args = command.op, command.args
        engine = self.engine
        if op == "wrapX":
            engine.wrap_x(args[0])
        elif op == "wrapXMult":
            engine.wrap_x_multiplicative(list(args[0]))
        elif op == "wrapPeriod":
            engine.wrap_x_to_period(args[0])
        elif op == "wrapIrregular":
            engine.wrap_x_irregular(args[0])
        elif op == "wrapY":
            engine.wrap_y(args[0])
        elif op == "facetInd":
            engine.facet_individual(args[0])
        elif op == "facetVar":
            engine.facet_variable()
        elif op == "facetPeriod":
            engine.facet_period()
        elif op == "mirror":
            engine.mirror(args[0])
        elif op == "shiftX":
            engine.shift_x(args[0], args[1], args[2])
        elif op == "switch":
            self.switch_line_area()
        elif op == "standardize":
            engine.standardize()
        elif op == "brush":
            self.brush(list(args[1]), mode=args[0])
        else:
            raise ValueError(f"unknown command {op!r}")
        self.version += 1

    def run_script(self, text: str):
        """Run a script through the normal interaction path.

        Commands are parsed and applied one at a time, so an invalid
        command aborts with its index and the state keeps the effect of
        every command before it.  Returns the coordinate state, the
        derived layers and the run log.
        """
        for index, chunk in enumerate(_script_chunks(text)):
            words = chunk.split()
            try:
                command = _parse_command(words[0], words[1:])
            except (ValueError, IndexError) as exc:
                raise ScriptError(f"command {index} ({chunk!r}): {exc}") from None
            try:
                self.apply(command)
            except Exception as exc:
                raise ScriptError(f"command {index} ({chunk!r}): {exc}") from exc
        log = {
            "warnings": list(self.engine.warnings),
            "interactions": [rec.kind for rec in self.engine.stream],
            "attribute_events": len(self.table.event_log),
        }
        return self.state, self.layers(), log

    def switch_line_area(self) -> LayerSet:
        """Toggle between line and area displays; coordinates are untouched."""
        self.mode = "area" if self.mode == "line" else "line"
        layers = self.layers()
        if self.mode == "area":
            self.polygon_link = self.linker.link_polygons(self.table, layers.polygons)
        elif self.polygon_link is not None:
            self.polygon_link.detach()
            self.polygon_link = None
        return layers

    def layers(self, stats: bool = False) -> LayerSet:
        return build_layers(self.state, self.table, mode=self.mode, stats=stats)

    # -- brushing --------------------------------------------------------

    def brush(self, ids: list[int], mode: str = "singlePoint", table: str = "long") -> None:
        """Replace the brushed selection, expanding it per the highlight mode.

        The change propagates through every registered link; actions
        arriving while a propagation settles are queued behind it.
        """
        mode = _BRUSH_MODE_ALIASES.get(mode, mode)
        if table == "wide":
            if self.wide is None:
                raise ValueError("session has no wide table")
            target = self.wide
            expanded = sorted({int(i) for i in ids if 0 <= int(i) < len(target)})
        else:
            target = self.table
            expanded = self_link(self.table, ids, mode)

        def action():
            chosen = np.zeros(len(target), dtype=bool)
            chosen[expanded] = True
            changed = np.flatnonzero(chosen != target.brushed)
            if len(changed):
                target.set_attributes(changed.tolist(), brushed=chosen[changed].tolist())

        self.linker.run(action)
        self.version += 1

    # -- querying ----------------------------------------------------------

    def query_at(self, x: float, y: float, radius: float = 0.03) -> dict | None:
        """Nearest visible point within ``radius`` of a display position.

        Distances are normalized by the current axis ranges so the radius
        behaves isotropically on screen.  Returns the original time label
        and raw value; coordinates move under interactions, labels do not.
        """
        visible = np.flatnonzero(self.table.visible)
        if len(visible) == 0:
            return None
        xlo, xhi = self.state.xlim
        layers_ylim = (float(self.state.y.min()), float(self.state.y.max()))
        xr = max(xhi - xlo, 1e-12)
        yr = max(layers_ylim[1] - layers_ylim[0], 1e-12)
        dx = (self.state.x[visible] - x) / xr
        dy = (self.state.y[visible] - y) / yr
        dist = np.hypot(dx, dy)
        best = int(np.argmin(dist))
        if dist[best] > radius:
            return None
        row = int(visible[best])
        return {
            "point": row,
            "time": self.table.labels[row],
            "variable": self.table.variables[self.table.var_idx[row]],
            "individual": self.table.individuals[self.table.ind_idx[row]],
            "value": float(self.table.value[row]),
            "x": float(self.state.x[row]),
            "y": float(self.state.y[row]),
        }

    # -- exports -------------------------------------------------------------

    def export_coords(self) -> str:
        """Current coordinates as CSV, the golden-test surface.

        Floats are serialized with ``repr`` so identical states export to
        identical bytes and values round-trip exactly.
        """
        state = self.state
        groups = state.line_groups
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow([
            "pointId", "x0", "y0", "x", "y",
            "seriesGroup", "variableGroup", "individualGroup", "wrapGroup", "bandGroup",
            "facetBlock", "brushed", "color",
        ])
        for i in range(state.n):
            writer.writerow([
                i,
                repr(float(state.x0[i])), repr(float(state.y0[i])),
                repr(float(state.x[i])), repr(float(state.y[i])),
                int(groups["series"][i]), int(groups["variable"][i]),
                int(groups["individual"][i]), int(groups["wrap"][i]), int(groups["band"][i]),
                int(state.facet_blocks[i]),
                "true" if self.table.brushed[i] else "false",
                self.table.color[i],
            ])
        return out.getvalue()

    @classmethod
    def from_coords(cls, csv_text: str) -> "Session":
        """Reload a coordinate export as a fresh baseline.

        The exported current coordinates become both baseline and current
        state, so an empty script reproduces the export's (x, y).  This is
        an inspection facility: original time labels are not recoverable.
        """
        reader = csv.DictReader(io.StringIO(csv_text))
        rows = list(reader)
        if not rows:
            raise IngestError("empty coordinate export")
        records = []
        counters: dict[tuple[str, str], int] = {}
        for row in rows:
            var = f"V{row['variableGroup']}"
            ind = f"I{row['individualGroup']}"
            counters[(var, ind)] = counters.get((var, ind), 0) + 1
            records.append(
                TemporalRecord(
                    time=float(counters[(var, ind)]),
                    variable=var,
                    individual=ind,
                    value=float(row["y"]),
                )
            )
        session = cls(ingest(records))
        state = session.state
        for name, column in (("x0", "x"), ("y0", "y"), ("x", "x"), ("y", "y")):
            setattr(state, name, np.array([float(r[column]) for r in rows]))
        for name, column in (
            ("series", "seriesGroup"), ("variable", "variableGroup"),
            ("individual", "individualGroup"), ("wrap", "wrapGroup"), ("band", "bandGroup"),
        ):
            state.line_groups[name] = np.array([int(r[column]) for r in rows], dtype=np.int64)
        state.facet_blocks = np.array([int(r["facetBlock"]) for r in rows], dtype=np.int64)
        state.xlim = (float(state.x.min()), float(state.x.max()))
        brushed = [r["brushed"] == "true" for r in rows]
        if any(brushed):
            session.table.set_attributes(
                [i for i, b in enumerate(brushed) if b], brushed=True
            )
        return session

    def export_svg(self, title: str | None = None) -> str:
        return render_svg(self.layers(), aspect=self.aspect, title=title)
