/** Pan/zoom between data space and canvas pixels.
 *
 * The base mapping stretches the current axis limits over the plot box;
 * the camera composes an invertible zoom/pan on top, so screen deltas
 * divide by the effective scale to become data deltas.
 */

export interface AxisLimits {
  xlim: [number, number];
  ylim: [number, number];
}

export interface Size {
  width: number;
  height: number;
}

export class Camera {
  zoom = 1;
  panX = 0;
  panY = 0;

  reset(): void {
    this.zoom = 1;
    this.panX = 0;
    this.panY = 0;
  }

  /** Pixels per data unit along x under the current zoom. */
  xScale(axes: AxisLimits, size: Size): number {
    return (size.width / span(axes.xlim)) * this.zoom;
  }

  yScale(axes: AxisLimits, size: Size): number {
    return (size.height / span(axes.ylim)) * this.zoom;
  }

  /** Base mapping stretches the limits over the box (y flipped); the
   * camera is an affine zoom/pan in screen space on top of it. */
  toScreen(x: number, y: number, axes: AxisLimits, size: Size): [number, number] {
    const bx = ((x - axes.xlim[0]) / span(axes.xlim)) * size.width;
    const by = size.height - ((y - axes.ylim[0]) / span(axes.ylim)) * size.height;
    return [bx * this.zoom + this.panX, by * this.zoom + this.panY];
  }

  toData(sx: number, sy: number, axes: AxisLimits, size: Size): [number, number] {
    const bx = (sx - this.panX) / this.zoom;
    const by = (sy - this.panY) / this.zoom;
    const x = (bx / size.width) * span(axes.xlim) + axes.xlim[0];
    const y = ((size.height - by) / size.height) * span(axes.ylim) + axes.ylim[0];
    return [x, y];
  }

  /** Horizontal screen delta expressed in data units (drag-to-shift). */
  dataDeltaX(screenDelta: number, axes: AxisLimits, size: Size): number {
    return screenDelta / this.xScale(axes, size);
  }

  /** Zoom by a factor keeping the pixel (sx, sy) fixed. */
  zoomAt(sx: number, sy: number, factor: number): void {
    this.zoom *= factor;
    this.panX = sx - (sx - this.panX) * factor;
    this.panY = sy - (sy - this.panY) * factor;
  }

  panBy(dx: number, dy: number): void {
    this.panX += dx;
    this.panY += dy;
  }
}

function span(limits: [number, number]): number {
  return Math.max(limits[1] - limits[0], 1e-12);
}
