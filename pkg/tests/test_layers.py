from __future__ import annotations

import numpy as np
import pytest

from foldplot.engine import InteractionEngine
from foldplot.layers import build_layers, initial_aspect
from foldplot.state import from_table
from foldplot.svg import render_svg
from foldplot.table import ingest

from conftest import make_engine, make_state, series_records


def test_five_points_one_group_four_segments():
    table, state = make_state(range(5))
    layers = build_layers(state, table, mode="line")
    assert len(layers.segments) == 4
    assert layers.polygons == ()


def test_wrap_splits_groups_and_segment_count():
    table, state, engine = make_engine(range(5))
    engine.wrap_x(1)
    layers = build_layers(state, table, mode="line")
    # groups {1..4} and {5}: the singleton contributes zero segments
    assert len(layers.segments) == 3
    groups = {seg.group for seg in layers.segments}
    assert len(groups) == 1


def test_segment_count_identity_random_states():
    rng = np.random.default_rng(9)
    for trial in range(30):
        n_per = int(rng.integers(5, 20))
        records = series_records(rng.normal(0, 1, n_per), variable="A") + series_records(
            rng.normal(0, 1, n_per), variable="B"
        )
        table = ingest(records)
        engine = InteractionEngine(from_table(table))
        if rng.integers(0, 2):
            engine.wrap_x(int(rng.integers(1, n_per - 3)))
        if rng.integers(0, 2):
            engine.facet_variable()
        layers = build_layers(engine.state, table, mode="area")
        draw = engine.state.draw_groups()
        non_empty = len(np.unique(draw))
        assert len(layers.segments) == len(table) - non_empty
        assert len(layers.polygons) == len(layers.segments)


def test_area_polygons_share_facet_baseline():
    table, state = make_state([3.0, 1.0, 4.0, 2.0])
    layers = build_layers(state, table, mode="area")
    assert len(layers.polygons) == 3
    for poly in layers.polygons:
        assert poly.ys[2] == poly.ys[3] == 1.0  # minimum data value
        assert poly.color == layers.segments[poly.segment].color


def test_polygon_color_follows_first_endpoint():
    records = series_records([1, 2, 3], variable="A") + series_records(
        [4, 5, 6], variable="B"
    )
    table = ingest(records)
    state = from_table(table)
    layers = build_layers(state, table, mode="area")
    for poly in layers.polygons:
        assert poly.color == table.color[poly.source_point]


def test_brush_layer_contains_points_and_incident_segments():
    table, state = make_state(range(6))
    table.set_attributes([2], brushed=True)
    layers = build_layers(state, table, mode="line")
    assert layers.brush.points == (2,)
    incident = {i for i, seg in enumerate(layers.segments) if 2 in (seg.a, seg.b)}
    assert set(layers.brush.segments) == incident
    assert len(incident) == 2


def test_brushed_point_never_duplicated_in_base_layer():
    table, state = make_state(range(5))
    table.set_attributes([1, 3], brushed=True)
    layers = build_layers(state, table, mode="line")
    assert len(layers.points.x) == 5
    assert set(layers.brush.points) == {1, 3}


def test_layer_build_is_deterministic():
    table, state, engine = make_engine(np.sin(np.arange(12)))
    engine.wrap_x(2)
    table.set_attributes([0, 4], brushed=True)
    a = build_layers(state, table, mode="area")
    b = build_layers(state, table, mode="area")
    assert a == b
    assert render_svg(a) == render_svg(b)


def test_initial_aspect_fixed_point_and_scaling():
    # slopes exactly +-1 at unit aspect
    table, state = make_state([1.0, 2.0, 1.0, 2.0])
    assert initial_aspect(state) == pytest.approx(1.0)
    # doubling all y values halves the ratio
    table2, state2 = make_state([2.0, 4.0, 2.0, 4.0])
    assert initial_aspect(state2) == pytest.approx(0.5)


def test_initial_aspect_constant_series_fallback():
    table, state = make_state([3.0, 3.0, 3.0])
    assert initial_aspect(state) == 2.0


def test_wrap_y_cut_pieces_render_as_segments_and_polygons():
    table, state, engine = make_engine([0.2, 0.9, 0.2, 0.9, 0.2])
    engine.standardize()
    engine.wrap_y(0.5)
    layers = build_layers(state, table, mode="area")
    # every segment crosses a cut: two pieces each, 4 crossing pairs
    assert len(layers.segments) == 8
    assert len(layers.polygons) == 8
    # piece endpoints at the cut carry no point id
    cut_ends = [s for s in layers.segments if s.a is None or s.b is None]
    assert len(cut_ends) == 8
    for seg in layers.segments:
        assert seg.color == table.color[seg.source_point]
    # all pieces live inside one band after folding
    ys = [v for seg in layers.segments for v in (seg.ay, seg.by)]
    assert min(ys) >= -1e-9 and max(ys) <= 0.5 + 1e-9


def test_brushed_point_highlights_all_its_pieces():
    table, state, engine = make_engine([0.2, 0.9, 0.2, 0.9, 0.2])
    engine.standardize()
    engine.wrap_y(0.5)
    table.set_attributes([0], brushed=True)
    layers = build_layers(state, table, mode="area")
    highlighted = {layers.segments[i].source_point for i in layers.brush.segments}
    assert 0 in highlighted
    assert len(layers.brush.polygons) >= 2  # the point split across two pieces


def test_mode_validation():
    table, state = make_state(range(4))
    with pytest.raises(ValueError):
        build_layers(state, table, mode="bars")


def test_stats_layer_hook_disabled_by_default():
    table, state = make_state(range(4))
    assert build_layers(state, table).stats is None
    layers = build_layers(state, table, stats=True)
    assert layers.stats is not None
    assert layers.stats.means[0][1] == pytest.approx(np.mean(range(4)))
