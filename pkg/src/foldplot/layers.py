"""Renderable layers derived from coordinates and point attributes.

Layers are pure derivations: building twice from the same state yields
identical output.  The base layers (point, line or area, axes, grid) are
complemented by a brush overlay holding only the highlighted elements, so
brushing can repaint without touching the base.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .state import CoordinateState
from .table import AttributeTable

__all__ = [
    "AreaPolygon",
    "Axes",
    "BrushLayer",
    "Grid",
    "LayerSet",
    "LineSegment",
    "PointLayer",
    "StatsLayer",
    "build_layers",
    "initial_aspect",
]

BRUSH_COLOR = "#ffb300"


@dataclass(frozen=True)
class PointLayer:
    x: tuple[float, ...]
    y: tuple[float, ...]
    color: tuple[str, ...]
    size: tuple[float, ...]
    visible: tuple[bool, ...]
    brushed: tuple[bool, ...]


@dataclass(frozen=True)
class LineSegment:
    """One drawable segment; ``a``/``b`` are point ids, None for cut vertices.

    ``source_point`` is the earlier data point of the defining pair, which
    also fixes the segment color.
    """

    ax: float
    ay: float
    bx: float
    by: float
    a: int | None
    b: int | None
    source_point: int
    group: int
    color: str


@dataclass(frozen=True)
class AreaPolygon:
    """Quad closing a segment onto the facet baseline (two construction points)."""

    xs: tuple[float, float, float, float]
    ys: tuple[float, float, float, float]
    color: str
    source_point: int
    segment: int


@dataclass(frozen=True)
class Axes:
    xlim: tuple[float, float]
    ylim: tuple[float, float]


@dataclass(frozen=True)
class Grid:
    x_ticks: tuple[float, ...]
    y_ticks: tuple[float, ...]


@dataclass(frozen=True)
class BrushLayer:
    points: tuple[int, ...]
    segments: tuple[int, ...]
    polygons: tuple[int, ...]


@dataclass(frozen=True)
class StatsLayer:
    """Per-facet mean lines: (facet block, mean y) pairs."""

    means: tuple[tuple[int, float], ...]


@dataclass(frozen=True)
class LayerSet:
    mode: str
    points: PointLayer
    segments: tuple[LineSegment, ...]
    polygons: tuple[AreaPolygon, ...]
    brush: BrushLayer
    axes: Axes
    grid: Grid
    stats: StatsLayer | None = None


def _nice_ticks(lo: float, hi: float, target: int = 6) -> tuple[float, ...]:
    if hi <= lo:
        return (lo,)
    raw = (hi - lo) / target
    mag = 10.0 ** np.floor(np.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    else:
        step = 10.0 * mag
    first = np.ceil(lo / step) * step
    ticks = np.arange(first, hi + step * 1e-9, step)
    return tuple(float(t) for t in ticks)


def _build_segments(state: CoordinateState, attrs: AttributeTable) -> list[LineSegment]:
    series = state.line_groups["series"]
    wrapg = state.line_groups["wrap"]
    bands = state.line_groups["band"]
    draw = state.draw_groups()
    pieces: dict[tuple[int, int], list] = {}
    for piece in state.cut_pieces:
        pieces.setdefault((piece.left, piece.right), []).append(piece)
    segments: list[LineSegment] = []
    x, y = state.x, state.y
    extra = y - state.y0  # movement applied after the band baseline was keyed
    for a in range(state.n - 1):
        b = a + 1
        if series[a] != series[b] or wrapg[a] != wrapg[b]:
            continue
        if bands[a] == bands[b]:
            segments.append(
                LineSegment(
                    ax=float(x[a]), ay=float(y[a]), bx=float(x[b]), by=float(y[b]),
                    a=a, b=b, source_point=a, group=int(draw[a]), color=attrs.color[a],
                )
            )
            continue
        for piece in pieces.get((a, b), ()):
            x0p = x[a] + (x[b] - x[a]) * piece.t0
            x1p = x[a] + (x[b] - x[a]) * piece.t1
            off0 = extra[a] + (extra[b] - extra[a]) * piece.t0
            off1 = extra[a] + (extra[b] - extra[a]) * piece.t1
            segments.append(
                LineSegment(
                    ax=float(x0p), ay=float(piece.y0 + off0),
                    bx=float(x1p), by=float(piece.y1 + off1),
                    a=a if piece.t0 == 0.0 else None,
                    b=b if piece.t1 == 1.0 else None,
                    source_point=piece.source_point,
                    group=int(draw[a]),
                    color=attrs.color[piece.source_point],
                )
            )
    return segments


def build_layers(state: CoordinateState, attrs: AttributeTable, mode: str = "line",
                 stats: bool = False) -> LayerSet:
    """Derive the full layer stack for the current state.

    The point layer is always present; ``mode`` selects the line or area
    layer.  Area polygons close each segment onto the minimum y of its
    facet block, and inherit color and source point from their segment.
    """
    if mode not in ("line", "area"):
        raise ValueError(f"unknown display mode {mode!r}")
    x, y = state.x, state.y
    points = PointLayer(
        x=tuple(float(v) for v in x),
        y=tuple(float(v) for v in y),
        color=tuple(attrs.color),
        size=tuple(float(v) for v in attrs.size),
        visible=tuple(bool(v) for v in attrs.visible),
        brushed=tuple(bool(v) for v in attrs.brushed),
    )
    segments = _build_segments(state, attrs)

    polygons: list[AreaPolygon] = []
    if mode == "area":
        blocks = state.facet_blocks
        block_min = {int(b): float(y[blocks == b].min()) for b in np.unique(blocks)}
        for i, seg in enumerate(segments):
            base = block_min[int(blocks[seg.source_point])]
            polygons.append(
                AreaPolygon(
                    xs=(seg.ax, seg.bx, seg.bx, seg.ax),
                    ys=(seg.ay, seg.by, base, base),
                    color=seg.color,
                    source_point=seg.source_point,
                    segment=i,
                )
            )

    brushed = attrs.brushed
    brush_points = tuple(int(i) for i in np.flatnonzero(brushed))
    brush_segments = tuple(
        i for i, seg in enumerate(segments)
        if (seg.a is not None and brushed[seg.a])
        or (seg.b is not None and brushed[seg.b])
        or brushed[seg.source_point]
    )
    brush_polygons = tuple(
        i for i, poly in enumerate(polygons) if brushed[poly.source_point]
    )

    ylo, yhi = float(y.min()), float(y.max())
    if yhi == ylo:
        yhi = ylo + 1.0
    axes = Axes(xlim=state.xlim, ylim=(ylo, yhi))
    grid = Grid(x_ticks=_nice_ticks(*axes.xlim), y_ticks=_nice_ticks(ylo, yhi))

    stats_layer = None
    if stats:
        blocks = state.facet_blocks
        means = tuple(
            (int(b), float(y[blocks == b].mean())) for b in np.unique(blocks)
        )
        stats_layer = StatsLayer(means=means)

    return LayerSet(
        mode=mode,
        points=points,
        segments=tuple(segments),
        polygons=tuple(polygons),
        brush=BrushLayer(points=brush_points, segments=brush_segments, polygons=brush_polygons),
        axes=axes,
        grid=grid,
        stats=stats_layer,
    )


def initial_aspect(state: CoordinateState) -> float:
    """Aspect ratio banking the median segment to 45 degrees.

    Returns the y:x unit-length ratio ``1 / median(|dy/dx|)`` over the
    initial series segments: a plot drawn with y-units scaled by this
    factor relative to x-units shows the typical segment at slope one.
    Computed once at load; flat series fall back to 2:1.
    """
    slopes: list[float] = []
    for sl in state.series_slices:
        xs = state.x0[sl]
        ys = state.y0[sl]
        dx = np.diff(xs)
        dy = np.diff(ys)
        keep = dx != 0
        slopes.extend(np.abs(dy[keep] / dx[keep]).tolist())
    if not slopes:
        return 2.0
    med = float(np.median(slopes))
    if med == 0.0:
        return 2.0
    return 1.0 / med
