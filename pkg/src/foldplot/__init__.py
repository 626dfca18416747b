"""foldplot: an interactive temporal-data engine.

Multivariate time series and longitudinal profiles live in a reactive
long-format table; interactions (x/y-wrapping, faceting, mirroring,
shifting, line/area switching, linked brushing) are per-point movements
composed against a baseline, so any state is the baseline plus the sum
of the recorded movements.
"""

from .engine import InteractionEngine
from .layers import LayerSet, build_layers, initial_aspect
from .linking import HIGHLIGHT_MODES, LinkSpec, Linker, PolygonLink, self_link
from .movements import (
    ReplayError,
    WrapError,
    facet_compose,
    facet_individual_step,
    facet_variable,
    mirror_toggle,
    recompute_baseline,
    shift_x,
    standardize_lines,
    wrap_x_irregular,
    wrap_x_multiplicative,
    wrap_x_step,
    wrap_x_to_period,
    wrap_y,
)
from .session import Command, ScriptError, Session, melt_wide, parse_script
from .state import CoordinateState, InteractionRecord, Movement, WrapState, from_table
from .svg import render_svg
from .table import (
    AttributeChange,
    IngestError,
    PALETTE,
    ReactiveTable,
    TemporalRecord,
    WideTable,
    ingest,
)

__version__ = "0.1.0"

__all__ = [
    "AttributeChange",
    "Command",
    "CoordinateState",
    "HIGHLIGHT_MODES",
    "IngestError",
    "InteractionEngine",
    "InteractionRecord",
    "LayerSet",
    "LinkSpec",
    "Linker",
    "Movement",
    "PALETTE",
    "PolygonLink",
    "ReactiveTable",
    "ReplayError",
    "ScriptError",
    "Session",
    "TemporalRecord",
    "WideTable",
    "WrapError",
    "WrapState",
    "build_layers",
    "facet_compose",
    "facet_individual_step",
    "facet_variable",
    "from_table",
    "ingest",
    "initial_aspect",
    "melt_wide",
    "mirror_toggle",
    "parse_script",
    "recompute_baseline",
    "render_svg",
    "self_link",
    "shift_x",
    "standardize_lines",
    "wrap_x_irregular",
    "wrap_x_multiplicative",
    "wrap_x_step",
    "wrap_x_to_period",
    "wrap_y",
]
