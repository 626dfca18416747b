"""Per-point movement formulas for every interaction kind.

Each function computes the *total* movement of its interaction kind
against the baseline coordinates (x0, y0), so applying a kind twice
replaces its previous contribution rather than stacking on top of it.
Horizontal shifts are the exception: every drag adds its own delta.
The composition of kinds into current coordinates lives in ``engine``.

All functions are pure: they read ``CoordinateState`` and return
``Movement`` objects (plus updated group vectors where relevant) without
mutating anything.
"""

from __future__ import annotations

import numpy as np

from .state import CoordinateState, CutPiece, FacetEntry, InteractionRecord, Movement, WrapState

__all__ = [
    "ReplayError",
    "WrapError",
    "facet_compose",
    "facet_individual_step",
    "facet_offsets",
    "facet_variable",
    "mirror_divider",
    "mirror_toggle",
    "recompute_baseline",
    "shift_x",
    "standardize_lines",
    "wrap_x_irregular",
    "wrap_x_multiplicative",
    "wrap_x_span",
    "wrap_x_step",
    "wrap_x_to_period",
    "wrap_y",
]

# Guard subtracted before ceil() so float noise cannot flip the boundary
# branch: a point exactly on a cut keeps mapping to the upper limit.
_CEIL_GUARD = 1e-12

DEFAULT_FACET_STEP = 0.05


class WrapError(ValueError):
    """A wrap step cannot be taken (series too short or past the stop)."""


class ReplayError(RuntimeError):
    """The interaction stream is missing data required to rebuild state."""


def _series_views(state: CoordinateState):
    for sl in state.series_slices:
        yield sl, state.x0[sl]


def _span_index(n_s: int, depth: int, stop: int) -> int:
    """Points kept in the base segment after ``depth`` wraps of one series."""
    return max(n_s - max(depth, 0), stop)


def _wrap_movement(state: CoordinateState, span_for_series) -> tuple[Movement, np.ndarray, tuple[float, float]]:
    """Shared wrapping core: modular fold of x0 onto per-series spans.

    ``span_for_series(n_s, xs)`` returns how many points the base segment
    of a series keeps.  Returns the movement, the new wrap group vector
    and the display x-limits (x_(1), x_(span)).
    """
    n = state.n
    dx = np.zeros(n)
    groups = np.ones(n, dtype=np.int64)
    lo = np.inf
    hi = -np.inf
    for sl, xs in _series_views(state):
        n_s = len(xs)
        span_idx = span_for_series(n_s, xs)
        delta = xs[span_idx - 1] - xs[0] + 1.0
        pos = xs - xs[0] + 1.0
        l = np.ceil(pos / delta - _CEIL_GUARD).astype(np.int64)
        l = np.maximum(l, 1)
        dx[sl] = -(l - 1) * delta
        groups[sl] = l
        lo = min(lo, xs[0])
        hi = max(hi, xs[span_idx - 1])
    return Movement.x_only(dx), groups, (float(lo), float(hi))


def wrap_x_step(state: CoordinateState, wrap: WrapState, steps: int = 1):
    """Advance x-wrapping by ``steps`` keystrokes (negative to unwrap).

    Each keystroke crops the latest point(s) and folds them onto the start
    of the series; the display limits shrink to (x_(1), x_(n-depth)).
    Depth is clamped so every wrapped segment keeps at least ``wrap.stop``
    points.  Mutates ``wrap`` (depth, mode) and returns the total wrap
    movement from the baseline, the new wrap groups and the new x-limits.
    """
    shortest = min(len(state.x0[sl]) for sl in state.series_slices)
    if steps > 0 and shortest < wrap.stop + 1:
        raise WrapError(
            f"wrap refused: shortest series has {shortest} points, "
            f"need more than the stop of {wrap.stop}"
        )
    max_depth = max(len(state.x0[sl]) for sl in state.series_slices) - wrap.stop
    wrap.depth = int(np.clip(wrap.depth + steps, 0, max_depth))
    wrap.mode = "step"
    movement, groups, lim = _wrap_movement(
        state, lambda n_s, xs: _span_index(n_s, wrap.depth, wrap.stop)
    )
    return movement, groups, lim


def wrap_x_multiplicative(state: CoordinateState, wrap: WrapState, size: int):
    """One multiplicative wrap step sending ``size`` points to the left.

    Equivalent to ``size`` plain keystrokes; cumulative wrapping past the
    stop is clamped onto the shortest allowed span.
    """
    if size < 0:
        raise ValueError("multiplicative step size must be nonnegative")
    return wrap_x_step(state, wrap, steps=size)


def wrap_x_to_period(state: CoordinateState, wrap: WrapState, period: int):
    """Jump straight to the fully wrapped position for a known period.

    Returns (movement, groups, xlim) or a warning string when the period
    is at least as long as every series (nothing to wrap).
    """
    if period < wrap.stop:
        raise ValueError(f"period must be at least the wrap stop ({wrap.stop})")
    longest = max(len(state.x0[sl]) for sl in state.series_slices)
    if period >= longest:
        return None, None, "period covers the whole series; nothing to wrap"
    wrap.mode = "period"
    wrap.period = int(period)
    wrap.depth = longest - int(period)
    movement, groups, lim = _wrap_movement(
        state, lambda n_s, xs: min(int(period), n_s)
    )
    return movement, groups, lim


def _irregular_spans(xs: np.ndarray, speed: float, steps: int, stop: int) -> int:
    upper_limit = xs[-1] - steps * speed
    g = int(np.sum(xs > upper_limit + _CEIL_GUARD))
    return len(xs) - g


def wrap_x_irregular(state: CoordinateState, wrap: WrapState, speed: float):
    """One irregular wrap step: shorten the x-range by at least ``speed``.

    Points beyond the threshold x_(n) - steps*speed are folded back; the
    gap structure decides how many move per step.  Refuses the step if any
    series would keep fewer than ``wrap.stop`` points.
    """
    if speed <= 0:
        raise ValueError("wrapping speed must be positive")
    steps = wrap.irregular_steps + 1
    for sl, xs in _series_views(state):
        if _irregular_spans(xs, speed, steps, wrap.stop) < wrap.stop:
            raise WrapError("wrap stopped: range would drop below the first points")
    wrap.irregular_steps = steps
    wrap.mode = "irregular"
    wrap.speed = float(speed)
    movement, groups, lim = _wrap_movement(
        state, lambda n_s, xs: _irregular_spans(xs, speed, steps, wrap.stop)
    )
    return movement, groups, lim


def wrap_y(state: CoordinateState, band: float):
    """Fold each line's baseline y modulo ``band`` into cropped pieces.

    Band membership binds to the per-line baseline values (standardized
    to [0, 1]), so whole-line movements riding on top, like facet
    offsets, survive the fold: a faceted display folds within its facet
    blocks.  Values exactly on a cut line map to the top of the band
    below, never to zero, mirroring the x-wrap boundary rule.  Segments
    crossing cut lines decompose into per-band pieces whose construction
    endpoints interpolate the crossing; stored piece positions are
    display positions, so any active whole-line offset is included.
    Each piece links back to the earlier data point of its segment.

    Returns (movement, band groups, pieces, warning).  When ``band`` is
    at least the y-range the result is an identity with a warning.
    """
    if band <= 0:
        raise ValueError("band height must be positive")
    y = state.y0
    y_range = float(y.max() - y.min()) if state.n else 0.0
    if band >= y_range:
        return (
            Movement.y_only(np.zeros(state.n)),
            np.ones(state.n, dtype=np.int64),
            [],
            "band height covers the whole y-range; nothing to wrap",
        )
    l = np.maximum(np.ceil(y / band - _CEIL_GUARD).astype(np.int64), 1)
    dy = -(l - 1) * band
    lift = state.y - state.y0  # whole-line offsets active at fold time
    pieces: list[CutPiece] = []
    series = state.line_groups["series"]
    wrapg = state.line_groups["wrap"]
    for a in range(state.n - 1):
        b = a + 1
        if series[a] != series[b] or wrapg[a] != wrapg[b]:
            continue
        la, lb = int(l[a]), int(l[b])
        if la == lb:
            continue
        ya, yb = float(y[a]), float(y[b])
        lo, hi = min(la, lb), max(la, lb)
        cuts = [c * band for c in range(lo, hi)]
        ts = [(c - ya) / (yb - ya) for c in cuts]
        bounds = [0.0, *sorted(ts), 1.0]
        for t0, t1 in zip(bounds[:-1], bounds[1:]):
            if t1 - t0 <= _CEIL_GUARD:
                continue
            tm = 0.5 * (t0 + t1)
            ym = ya + (yb - ya) * tm
            lp = max(int(np.ceil(ym / band - _CEIL_GUARD)), 1)
            off = (lp - 1) * band
            lift0 = lift[a] + (lift[b] - lift[a]) * t0
            lift1 = lift[a] + (lift[b] - lift[a]) * t1
            pieces.append(
                CutPiece(
                    left=a,
                    right=b,
                    band=lp,
                    t0=t0,
                    y0=ya + (yb - ya) * t0 - off + lift0,
                    t1=t1,
                    y1=ya + (yb - ya) * t1 - off + lift1,
                    source_point=a,
                )
            )
    return Movement.y_only(dy), l, pieces, None


def rescaled_lines(state: CoordinateState) -> np.ndarray:
    """Each series' current y min-max rescaled onto [0, 1] (constant -> 0.5)."""
    out = np.empty(state.n)
    for sl in state.series_slices:
        ys = state.y[sl]
        lo, hi = float(ys.min()), float(ys.max())
        out[sl] = (ys - lo) / (hi - lo) if hi > lo else 0.5
    return out


def standardize_lines(state: CoordinateState) -> Movement:
    """Min-max rescale of each series' current y onto [0, 1].

    Returned as a movement against the current y; the engine records it as
    a baseline reset because later formulas must bind to the rescaled
    values.  Apply via ``rescaled_lines`` rather than adding the movement,
    which would launder the small rescaled values through the raw
    magnitudes and shear off their low bits.
    """
    return Movement.y_only(rescaled_lines(state) - state.y)


def facet_offsets(layout: list[FacetEntry], progress: float, n: int) -> np.ndarray:
    """Vertical offsets of the active facet layout, outermost grouping first.

    Fully split, point offsets follow the mixed-radix rule: each grouping
    contributes (group - 1) scaled by the product of the inner group
    counts.  ``progress`` in [0, 1] interpolates the last grouping's
    contribution, which is how the step-by-step individual faceting pulls
    lines apart gradually.
    """
    if not layout:
        return np.zeros(n)

    def full(entries: list[FacetEntry]) -> np.ndarray:
        dy = np.zeros(n)
        scale = 1
        for entry in reversed(entries):
            dy += (entry.groups - 1) * scale
            scale *= entry.count
        return dy

    whole = full(layout)
    if progress >= 1.0:
        return whole
    prefix = full(layout[:-1])
    return prefix + progress * (whole - prefix)


def facet_individual_step(state: CoordinateState, j: int, step: float = DEFAULT_FACET_STEP) -> Movement:
    """Lift each standardized line by step*(group-1) per keystroke.

    After j >= 1/step keystrokes the lines are fully split at unit
    offsets.  ``step`` must lie strictly inside (0, 1).
    """
    if not 0.0 < step < 1.0:
        raise ValueError("facet step size must be in (0, 1)")
    groups = state.line_groups["individual"]
    s = min(step * max(j, 0), 1.0)
    return Movement.y_only(s * (groups - 1).astype(float))


def facet_variable(state: CoordinateState) -> Movement:
    """Fully split the variables in one shot: dy = group - 1."""
    groups = state.line_groups["variable"]
    return Movement.y_only((groups - 1).astype(float))


def facet_compose(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """Fully split two-level facet offsets, outer grouping applied first.

    dy = (outer - 1) * max(inner) + (inner - 1).  Swapping the arguments
    produces a different layout whenever both groupings are non-trivial:
    facet order is not commutative.
    """
    return (outer - 1).astype(float) * int(inner.max()) + (inner - 1).astype(float)


def mirror_divider(state: CoordinateState, kind: str) -> np.ndarray:
    """Per-point divider value p, constant within each series."""
    p = np.zeros(state.n)
    for sl in state.series_slices:
        ys = state.y0[sl]
        if kind == "mean":
            val = float(ys.mean())
        elif kind == "median":
            val = float(np.median(ys))
        elif kind == "midrange":
            val = float(ys.min() + ys.max()) / 2.0
        elif kind == "initial":
            val = float(ys[0])
        else:
            raise ValueError(f"unknown divider {kind!r}")
        p[sl] = val
    return p


def mirror_toggle(state: CoordinateState, divider: str, toggles: int) -> Movement:
    """Reflect values below the divider upward on odd toggle counts.

    dy = max(2p - 2y, 0) when the persistent toggle count is odd, zero
    when it is even (which restores the original values exactly).
    """
    if toggles % 2 == 0:
        return Movement.y_only(np.zeros(state.n))
    p = mirror_divider(state, divider)
    return Movement.y_only(np.maximum(2.0 * p - 2.0 * state.y0, 0.0))


def shift_x(groups: np.ndarray, drag_start: float, drag_end: float, group_id: int) -> Movement:
    """Translate one line group horizontally by the drag delta."""
    mask = groups == group_id
    dx = (drag_end - drag_start) * mask.astype(float)
    return Movement.x_only(dx)


def _wrap_deltas_from_record(state: CoordinateState, rec: InteractionRecord) -> np.ndarray:
    """Per-point span values for a recorded wrap, recomputed from x0."""
    params = rec.params
    deltas = np.zeros(state.n)
    for sl, xs in _series_views(state):
        n_s = len(xs)
        mode = params.get("mode", "step")
        if mode == "period":
            span_idx = min(int(params["period"]), n_s)
        elif mode == "irregular":
            span_idx = _irregular_spans(xs, params["speed"], params["steps"], params["stop"])
        else:
            span_idx = _span_index(n_s, int(params["depth"]), int(params["stop"]))
        deltas[sl] = xs[span_idx - 1] - xs[0] + 1.0
    return deltas


def recompute_baseline(state: CoordinateState, stream: list[InteractionRecord]) -> tuple[np.ndarray, np.ndarray]:
    """Rebuild current coordinates from the baseline and the record stream.

    The last record of each kind supplies that kind's effective movement
    (horizontal shifts accumulate instead).  Group snapshots stored on the
    records are trusted as-is; a record without its snapshot is a hard
    error because the state cannot be reconstructed.
    """
    wrap_dx = np.zeros(state.n)
    shift_dx = np.zeros(state.n)
    facet_dy = np.zeros(state.n)
    mirror_dy = np.zeros(state.n)
    for rec in stream:
        if rec.kind == "wrapX":
            l = rec.groups.get("wrap")
            if l is None:
                raise ReplayError("wrap record without stored line groups")
            deltas = _wrap_deltas_from_record(state, rec)
            wrap_dx = -(l - 1) * deltas
        elif rec.kind in ("facetIndividual", "facetVariable", "facetPeriod"):
            layout = []
            for i, (key, count) in enumerate(rec.params["layout"]):
                groups = rec.groups.get(f"facet:{i}")
                if groups is None:
                    raise ReplayError("facet record without stored line groups")
                layout.append(FacetEntry(key=key, groups=groups, count=count))
            facet_dy = facet_offsets(layout, rec.params["progress"], state.n)
        elif rec.kind == "mirror":
            if rec.j % 2 == 0:
                mirror_dy = np.zeros(state.n)
            else:
                p = mirror_divider(state, rec.params["divider"])
                mirror_dy = np.maximum(2.0 * p - 2.0 * state.y0, 0.0)
        elif rec.kind == "shiftX":
            groups = rec.groups.get("shift")
            if groups is None:
                raise ReplayError("shift record without stored line groups")
            delta = rec.inputs["drag_end"] - rec.inputs["drag_start"]
            shift_dx = shift_dx + delta * (groups == rec.inputs["group"])
        else:
            raise ReplayError(f"unknown interaction kind {rec.kind!r} in stream")
    x = state.x0 + wrap_dx + shift_dx
    y = state.y0 + facet_dy + mirror_dy
    return x, y


def wrap_x_span(state: CoordinateState, wrap: WrapState) -> float:
    """Current span of the first series, x_(span) - x_(1) + 1."""
    sl = state.series_slices[0]
    xs = state.x0[sl]
    if wrap.mode == "period" and wrap.period is not None:
        span_idx = min(wrap.period, len(xs))
    elif wrap.mode == "irregular":
        span_idx = _irregular_spans(xs, wrap.speed or 1.0, wrap.irregular_steps, wrap.stop)
    else:
        span_idx = _span_index(len(xs), wrap.depth, wrap.stop)
    return float(xs[span_idx - 1] - xs[0] + 1.0)
