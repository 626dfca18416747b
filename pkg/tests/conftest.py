from __future__ import annotations

import numpy as np
import pytest

from foldplot.engine import InteractionEngine
from foldplot.state import from_table
from foldplot.table import TemporalRecord, ingest


def series_records(values, variable="V1", individual="all", times=None, labels=None):
    values = list(values)
    if times is None:
        times = list(range(1, len(values) + 1))
    if labels is None:
        labels = [None] * len(values)
    return [
        TemporalRecord(time=float(t), variable=variable, individual=individual,
                       value=float(v), label=lab)
        for t, v, lab in zip(times, values, labels)
    ]


def make_state(values, times=None, variable="V1"):
    table = ingest(series_records(values, variable=variable, times=times))
    return table, from_table(table)


def make_engine(values, times=None):
    table, state = make_state(values, times=times)
    return table, state, InteractionEngine(state)


@pytest.fixture
def lynx_like():
    """114 annual observations, 1821..1934, quasi-periodic synthetic values."""
    rng = np.random.default_rng(42)
    years = np.arange(1821, 1935)
    values = np.exp(2.2 * np.sin(np.arange(114) / 9.6 * 2 * np.pi)) * 500
    values = np.round(values + rng.uniform(0, 40, 114))
    records = [
        TemporalRecord(time=float(y), variable="trappings", value=float(v), label=str(y))
        for y, v in zip(years, values)
    ]
    return ingest(records)
