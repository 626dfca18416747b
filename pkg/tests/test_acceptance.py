"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the report
lines.  Every tolerance and runtime budget is pinned here.
"""

from __future__ import annotations

import functools
import time

import numpy as np

from foldplot.engine import InteractionEngine
from foldplot.layers import build_layers
from foldplot.protocol import handle_message
from foldplot.session import Session
from foldplot.state import WrapState, from_table
from foldplot.table import TemporalRecord, ingest
from foldplot import movements

from conftest import series_records


def criterion(name: str, budget_s: float):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"\nACCEPTANCE {name}: FAIL ({time.perf_counter() - start:.2f}s)")
                raise
            elapsed = time.perf_counter() - start
            print(f"\nACCEPTANCE {name}: PASS ({elapsed:.2f}s, budget {budget_s:g}s)")
            assert elapsed < budget_s, f"{name} exceeded its {budget_s}s budget"
        return wrapper
    return decorate


def _lynx_records():
    rng = np.random.default_rng(42)
    years = np.arange(1821, 1935)
    values = np.round(np.exp(2.2 * np.sin(np.arange(114) / 9.6 * 2 * np.pi)) * 500
                      + rng.uniform(0, 40, 114))
    return [
        TemporalRecord(time=float(y), variable="trappings", value=float(v), label=str(y))
        for y, v in zip(years, values)
    ]


def _modular_oracle(x, delta, x1):
    pos = x - x1 + 1.0
    m = np.mod(pos, delta)
    return np.where(m == 0, x1 - 1.0 + delta, x1 - 1.0 + m)


@criterion("composed-faceting table reproduction", budget_s=1.0)
def test_composed_faceting_reproduces_worked_table():
    firsts = {
        ("V1", "i1"): 0.16, ("V1", "i2"): 0.33, ("V1", "i3"): 0.26,
        ("V2", "i1"): 0.84, ("V2", "i2"): 0.84, ("V2", "i3"): 0.90,
    }
    records = []
    for (var, ind), v in firsts.items():
        records += series_records([v, 0.0, 1.0], variable=var, individual=ind)
    session = Session.from_records(records)
    session.run_script("standardize; facetVar")
    first_rows = [sl.start for sl in session.table.series_slices()]
    stage_b = session.state.y[first_rows]
    np.testing.assert_allclose(
        stage_b, [0.16, 0.33, 0.26, 1.84, 1.84, 1.90], rtol=0, atol=1e-12
    )
    session.run_script("facetInd 20")
    final = session.state.y[first_rows]
    np.testing.assert_allclose(
        final, [0.16, 1.33, 2.26, 3.84, 4.84, 5.90], rtol=0, atol=1e-12
    )


@criterion("lynx composition (wrapX 75; facetVar)", budget_s=1.0)
def test_lynx_composition_movement_formula():
    session = Session.from_records(_lynx_records())
    session.run_script("wrapX 75; facetVar")
    state = session.state
    l = state.line_groups["wrap"]
    delta_39 = float(state.x0[39 - 1] - state.x0[0] + 1.0)
    assert delta_39 == 39.0
    # the effective movements are exactly the integer vectors of the formula
    wrap_dx = session.engine.slots["wrapX"][0]
    facet_dy = session.engine.slots["facet"][1]
    assert np.array_equal(wrap_dx, -(l - 1) * 39.0)
    assert np.array_equal(facet_dy, (l - 1).astype(float))
    # and the coordinates are exactly baseline plus those movements
    assert np.array_equal(state.x - state.x0, wrap_dx)
    assert np.array_equal(state.x, state.x0 - (l - 1) * 39.0)
    assert np.array_equal(state.y, state.y0 + (l - 1))
    # the record stream replays to the same movements
    rx, ry = session.engine.recompute()
    assert np.array_equal(rx, state.x)
    assert np.array_equal(ry, state.y)
    assert set(np.unique(l).tolist()) == {1, 2, 3}


@criterion("wrap oracle equivalence (n 4..40, j 1..n-3)", budget_s=10.0)
def test_wrap_matches_modular_oracle_exhaustively():
    for n in range(4, 41):
        table = ingest(series_records(range(n)))
        state = from_table(table)
        for j in range(1, n - 2):
            movement, groups, _ = movements.wrap_x_step(state, WrapState(depth=j - 1), 1)
            delta = state.x0[n - j - 1] - state.x0[0] + 1.0
            expected = _modular_oracle(state.x0, delta, state.x0[0])
            assert np.array_equal(state.x0 + movement.dx, expected), (n, j)
            assert np.array_equal(groups, np.ceil((state.x0 - state.x0[0] + 1.0) / delta - 1e-12))


@criterion("baseline equals incremental (1000 random streams)", budget_s=30.0)
def test_baseline_equals_incremental_randomized():
    rng = np.random.default_rng(20260810)
    for trial in range(1000):
        if trial % 2:
            values = rng.normal(0, 3, 30)
            records = series_records(values)
        else:
            records = series_records(rng.normal(0, 3, 15), variable="A") + series_records(
                rng.normal(4, 2, 15), variable="B"
            )
        engine = InteractionEngine(from_table(ingest(records)))
        state = engine.state
        for _ in range(int(rng.integers(1, 11))):
            op = rng.choice(
                ["wrapX", "unwrap", "wrapPeriod", "facetInd", "facetVar",
                 "mirror", "shift", "standardize"]
            )
            if op == "wrapX":
                engine.wrap_x(int(rng.integers(1, 6)))
            elif op == "unwrap":
                engine.wrap_x(-int(rng.integers(1, 4)))
            elif op == "wrapPeriod":
                engine.wrap_x_to_period(int(rng.integers(3, 12)))
            elif op == "facetInd":
                engine.facet_individual(int(rng.integers(1, 25)))
            elif op == "facetVar":
                engine.facet_variable()
            elif op == "mirror":
                engine.mirror(str(rng.choice(["mean", "median", "midrange", "initial"])))
            elif op == "shift":
                group = int(rng.choice(np.unique(state.draw_groups())))
                engine.shift_x(group, float(rng.uniform(-5, 5)), float(rng.uniform(-5, 5)))
            else:
                engine.standardize()
        x, y = engine.recompute()
        assert np.abs(x - state.x).max() <= 1e-9, trial
        assert np.abs(y - state.y).max() <= 1e-9, trial


@criterion("mirror involution and reflection", budget_s=5.0)
def test_mirror_property_suite():
    rng = np.random.default_rng(7)
    for divider in ("mean", "median", "midrange", "initial"):
        for _ in range(60):
            values = rng.normal(rng.uniform(-10, 10), rng.uniform(0.1, 8), rng.integers(3, 60))
            engine = InteractionEngine(from_table(ingest(series_records(values))))
            state = engine.state
            y_before = state.y.copy()
            engine.mirror(divider)
            p = movements.mirror_divider(state, divider)
            assert (state.y >= p - 1e-12).all()
            above = y_before >= p
            assert np.array_equal(state.y[above], y_before[above])
            engine.mirror(divider)
            assert np.array_equal(state.y, y_before)  # exact restore


@criterion("linking loop-cut and bounded propagation", budget_s=10.0)
def test_linking_loop_cut_and_propagation_bounds():
    wide_csv = "Time,V1,V2,V3\n1,3.1,27,11.9\n2,3.4,23,12.5\n3,3.3,25,12.1\n4,3.0,26,12.2\n"
    session = Session.from_wide_csv(wide_csv)
    target = next(
        i for i in range(len(session.table))
        if session.table.var_idx[i] == 0 and session.table.time_index[i] == 2
    )
    session.brush([target], mode="singlePoint")
    # forward hop done, backward hop cut: exactly one long row brushed
    assert np.flatnonzero(session.table.brushed).tolist() == [target]
    assert np.flatnonzero(session.wide.brushed).tolist() == [1]
    assert sum(session.linker.suppressed.values()) == 1

    rng = np.random.default_rng(99)
    for _ in range(300):
        before = sum(session.linker.fire_counts.values())
        if rng.integers(0, 2):
            ids = rng.choice(len(session.table), size=rng.integers(0, 5), replace=False)
            session.brush(ids.tolist(), mode=str(rng.choice(list(("singlePoint", "wholeSeries", "sameTime")))))
        else:
            ids = rng.choice(len(session.wide), size=rng.integers(0, 3), replace=False)
            session.brush(ids.tolist(), table="wide")
        fired = sum(session.linker.fire_counts.values()) - before
        assert fired <= len(session.linker.directions)
        assert session.linker.resettle() == 0  # settled state is a fixed point
        wide_times = set(session.wide.times[session.wide.brushed].tolist())
        long_times = set(session.table.time_index[session.table.brushed].tolist())
        assert wide_times == long_times


@criterion("layer counts on random wrapped/faceted states", budget_s=5.0)
def test_layer_count_identities():
    rng = np.random.default_rng(31)
    for _ in range(120):
        n_series = int(rng.integers(1, 4))
        records = []
        for k in range(n_series):
            n_pts = int(rng.integers(5, 25))
            records += series_records(rng.normal(0, 1, n_pts), variable=f"V{k + 1}")
        table = ingest(records)
        engine = InteractionEngine(from_table(table))
        if rng.integers(0, 2):
            engine.wrap_x(int(rng.integers(1, 15)))
        if rng.integers(0, 2):
            engine.facet_variable()
        if rng.integers(0, 2):
            engine.facet_individual(int(rng.integers(1, 30)))
        layers = build_layers(engine.state, table, mode="area")
        groups = engine.state.draw_groups()
        assert len(layers.segments) == len(table) - len(np.unique(groups))
        assert len(layers.polygons) == len(layers.segments)


@criterion("script determinism and path equivalence", budget_s=10.0)
def test_script_determinism_and_path_equivalence():
    exports = []
    for _ in range(2):
        session = Session.from_records(_lynx_records())
        session.run_script("wrapX 75; facetVar; switch; brush series 10")
        exports.append(session.export_coords())
    assert exports[0] == exports[1]  # bit-identical across runs

    wired = Session.from_records(_lynx_records())
    for _ in range(75):
        handle_message(wired, {"kind": "interact", "op": "wrapX"})
    handle_message(wired, {"kind": "interact", "op": "facetVar"})
    handle_message(wired, {"kind": "interact", "op": "switch"})
    handle_message(wired, {"kind": "brush", "ids": [10], "mode": "wholeSeries"})
    assert wired.export_coords() == exports[0]
    assert wired.mode == "area"
