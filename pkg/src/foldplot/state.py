"""Coordinate bookkeeping shared by the whole movement algebra.

Current display coordinates are always the baseline plus the sum of the
effective movements of each interaction kind.  Group indicator vectors are
1-based and live beside the coordinates so recorded interactions can be
replayed without re-deriving them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .table import ReactiveTable

__all__ = [
    "CoordinateState",
    "CutPiece",
    "FacetEntry",
    "InteractionRecord",
    "Movement",
    "WrapState",
    "from_table",
]

GROUP_KINDS = ("series", "variable", "individual", "wrap", "band")


@dataclass
class Movement:
    """Per-point displacement produced by one interaction step.

    x-only kinds carry an all-zero ``dy`` and y-only kinds an all-zero
    ``dx``; the constructor helpers below enforce this.
    """

    dx: np.ndarray
    dy: np.ndarray
    produced_by: "InteractionRecord | None" = None

    @classmethod
    def x_only(cls, dx: np.ndarray, record: "InteractionRecord | None" = None) -> "Movement":
        return cls(dx=np.asarray(dx, dtype=float), dy=np.zeros(len(dx)), produced_by=record)

    @classmethod
    def y_only(cls, dy: np.ndarray, record: "InteractionRecord | None" = None) -> "Movement":
        return cls(dx=np.zeros(len(dy)), dy=np.asarray(dy, dtype=float), produced_by=record)


@dataclass
class InteractionRecord:
    """One entry of the interaction stream.

    ``j`` is the per-kind step counter; it only ever grows, even when an
    interaction is revisited after others.  ``params`` and ``inputs`` hold
    whatever the kind needs to recompute its movement from the baseline,
    and ``groups`` holds the line-group snapshots taken at the time of the
    interaction.
    """

    kind: str
    j: int
    params: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)
    groups: dict = field(default_factory=dict)


@dataclass
class WrapState:
    """Progress of x-wrapping: completed depth and the active span.

    ``stop`` is the minimum number of points a wrapped segment may keep
    (default 3); depth is clamped so no series drops below it.
    """

    depth: int = 0
    stop: int = 3
    mode: str = "step"  # step | multiplicative | period | irregular
    period: int | None = None
    speed: float | None = None
    irregular_steps: int = 0


@dataclass
class FacetEntry:
    """One grouping in the active facet layout, outermost first."""

    key: str  # variable | individual | period
    groups: np.ndarray  # 1-based group per point, snapshot
    count: int


@dataclass
class CutPiece:
    """A fragment of a series segment after y-wrapping.

    The fragment runs between interpolation parameters ``t0`` and ``t1``
    along the original (left, right) point pair; its display ys are stored
    directly because band cropping fixes them.  Construction endpoints
    carry no attributes of their own and link through ``source_point``.
    """

    left: int
    right: int
    band: int
    t0: float
    y0: float
    t1: float
    y1: float
    source_point: int


@dataclass
class CoordinateState:
    """Baseline and current coordinates plus group indicator vectors."""

    x0: np.ndarray
    y0: np.ndarray
    x: np.ndarray
    y: np.ndarray
    line_groups: dict[str, np.ndarray]
    series_slices: list[slice]
    irregular: np.ndarray
    facet_blocks: np.ndarray = None
    cut_pieces: list[CutPiece] = field(default_factory=list)
    band_height: float | None = None
    # Display x-limits; wrapping shrinks them.
    xlim: tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        if self.facet_blocks is None:
            self.facet_blocks = np.ones(len(self.x0), dtype=np.int64)

    @property
    def n(self) -> int:
        return len(self.x0)

    def draw_groups(self) -> np.ndarray:
        """Dense 1-based drawable polyline ids: series split by wrap and band."""
        key = (
            self.line_groups["series"].astype(np.int64),
            self.line_groups["wrap"].astype(np.int64),
            self.line_groups["band"].astype(np.int64),
        )
        combined = (key[0] * (key[1].max() + 1) + key[1]) * (key[2].max() + 1) + key[2]
        _, dense = np.unique(combined, return_inverse=True)
        return dense.astype(np.int64) + 1

    def copy(self) -> "CoordinateState":
        return CoordinateState(
            x0=self.x0.copy(),
            y0=self.y0.copy(),
            x=self.x.copy(),
            y=self.y.copy(),
            line_groups={k: v.copy() for k, v in self.line_groups.items()},
            series_slices=list(self.series_slices),
            irregular=self.irregular.copy(),
            facet_blocks=self.facet_blocks.copy(),
            cut_pieces=list(self.cut_pieces),
            band_height=self.band_height,
            xlim=self.xlim,
        )


def from_table(table: ReactiveTable) -> CoordinateState:
    """Initial coordinate state: x0 = normalized time, y0 = value."""
    x0 = table.time_index.astype(float).copy()
    y0 = table.value.astype(float).copy()
    n = len(table)
    groups = {
        "series": table.series_idx.astype(np.int64) + 1,
        "variable": table.var_idx.astype(np.int64) + 1,
        "individual": table.ind_idx.astype(np.int64) + 1,
        "wrap": np.ones(n, dtype=np.int64),
        "band": np.ones(n, dtype=np.int64),
    }
    return CoordinateState(
        x0=x0,
        y0=y0,
        x=x0.copy(),
        y=y0.copy(),
        line_groups=groups,
        series_slices=table.series_slices(),
        irregular=table.irregular.copy(),
        xlim=(float(x0.min()), float(x0.max())) if n else (0.0, 1.0),
    )
