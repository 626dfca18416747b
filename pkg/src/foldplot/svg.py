"""Standalone SVG snapshots of a layer set.

The writer is deliberately dependency-free and deterministic: the same
layer set always serializes to the same bytes, which is what the golden
tests pin.
"""

from __future__ import annotations

from .layers import BRUSH_COLOR, LayerSet

__all__ = ["render_svg"]

_MARGIN = 46.0
_WIDTH = 840.0


def _f(v: float) -> str:
    out = f"{v:.2f}"
    return "0.00" if out == "-0.00" else out


def render_svg(layers: LayerSet, aspect: float = 2.0, title: str | None = None) -> str:
    """Serialize the layer set to an SVG document string.

    ``aspect`` is the y:x unit-length ratio from the banking rule; the
    resulting plot height is clamped to keep degenerate ratios viewable.
    """
    xlo, xhi = layers.axes.xlim
    ylo, yhi = layers.axes.ylim
    xr = max(xhi - xlo, 1e-12)
    yr = max(yhi - ylo, 1e-12)
    plot_w = _WIDTH - 2 * _MARGIN
    plot_h = yr * aspect * (plot_w / xr)
    plot_h = min(max(plot_h, 0.15 * plot_w), 3.0 * plot_w)
    height = plot_h + 2 * _MARGIN

    def sx(x: float) -> float:
        return _MARGIN + (x - xlo) / xr * plot_w

    def sy(y: float) -> float:
        return _MARGIN + plot_h - (y - ylo) / yr * plot_h

    out: list[str] = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(_WIDTH)}" '
        f'height="{_f(height)}" viewBox="0 0 {_f(_WIDTH)} {_f(height)}">'
    )
    out.append(f'<rect width="{_f(_WIDTH)}" height="{_f(height)}" fill="#ffffff"/>')
    if title:
        out.append(
            f'<text x="{_f(_MARGIN)}" y="{_f(_MARGIN - 14)}" font-family="sans-serif" '
            f'font-size="13" fill="#333333">{title}</text>'
        )

    for t in layers.grid.x_ticks:
        if xlo <= t <= xhi:
            out.append(
                f'<line x1="{_f(sx(t))}" y1="{_f(_MARGIN)}" x2="{_f(sx(t))}" '
                f'y2="{_f(_MARGIN + plot_h)}" stroke="#e6e6e6" stroke-width="1"/>'
            )
            out.append(
                f'<text x="{_f(sx(t))}" y="{_f(_MARGIN + plot_h + 16)}" font-family="sans-serif" '
                f'font-size="10" fill="#666666" text-anchor="middle">{_f(t)}</text>'
            )
    for t in layers.grid.y_ticks:
        if ylo <= t <= yhi:
            out.append(
                f'<line x1="{_f(_MARGIN)}" y1="{_f(sy(t))}" x2="{_f(_MARGIN + plot_w)}" '
                f'y2="{_f(sy(t))}" stroke="#e6e6e6" stroke-width="1"/>'
            )
            out.append(
                f'<text x="{_f(_MARGIN - 6)}" y="{_f(sy(t) + 3)}" font-family="sans-serif" '
                f'font-size="10" fill="#666666" text-anchor="end">{_f(t)}</text>'
            )
    out.append(
        f'<rect x="{_f(_MARGIN)}" y="{_f(_MARGIN)}" width="{_f(plot_w)}" '
        f'height="{_f(plot_h)}" fill="none" stroke="#999999" stroke-width="1"/>'
    )

    if layers.mode == "area":
        for poly in layers.polygons:
            pts = " ".join(f"{_f(sx(x))},{_f(sy(y))}" for x, y in zip(poly.xs, poly.ys))
            out.append(f'<polygon points="{pts}" fill="{poly.color}" fill-opacity="0.45"/>')
    for seg in layers.segments:
        out.append(
            f'<line x1="{_f(sx(seg.ax))}" y1="{_f(sy(seg.ay))}" x2="{_f(sx(seg.bx))}" '
            f'y2="{_f(sy(seg.by))}" stroke="{seg.color}" stroke-width="1.2"/>'
        )
    for i in range(len(layers.points.x)):
        if not layers.points.visible[i]:
            continue
        out.append(
            f'<circle cx="{_f(sx(layers.points.x[i]))}" cy="{_f(sy(layers.points.y[i]))}" '
            f'r="{_f(1.6 * layers.points.size[i])}" fill="{layers.points.color[i]}"/>'
        )

    # Brush overlay: highlighted elements only, drawn last.
    for i in layers.brush.polygons:
        poly = layers.polygons[i]
        pts = " ".join(f"{_f(sx(x))},{_f(sy(y))}" for x, y in zip(poly.xs, poly.ys))
        out.append(f'<polygon points="{pts}" fill="{BRUSH_COLOR}" fill-opacity="0.7"/>')
    for i in layers.brush.segments:
        seg = layers.segments[i]
        out.append(
            f'<line x1="{_f(sx(seg.ax))}" y1="{_f(sy(seg.ay))}" x2="{_f(sx(seg.bx))}" '
            f'y2="{_f(sy(seg.by))}" stroke="{BRUSH_COLOR}" stroke-width="2.4"/>'
        )
    for i in layers.brush.points:
        if not layers.points.visible[i]:
            continue
        out.append(
            f'<circle cx="{_f(sx(layers.points.x[i]))}" cy="{_f(sy(layers.points.y[i]))}" '
            f'r="{_f(2.4 * layers.points.size[i])}" fill="{BRUSH_COLOR}" '
            f'stroke="#7a5200" stroke-width="0.8"/>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"
