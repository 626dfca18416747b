"""Synthetic demo datasets with controlled structure.

These generators produce data shaped like the classic exploration
targets (quasi-periodic trapping counts, quarterly production panels,
sparse longitudinal visits) without bundling any real measurements; the
seeds make every demo and test reproducible.
"""

from __future__ import annotations

import numpy as np

from .table import TemporalRecord

__all__ = ["longitudinal_profiles", "quarterly_panel", "trapping_series"]


def trapping_series(n: int = 114, first_year: int = 1821, period: float = 9.6,
                    seed: int = 7) -> list[TemporalRecord]:
    """Annual counts with sharp quasi-periodic peaks: slow rises, fast drops."""
    rng = np.random.default_rng(seed)
    years = np.arange(first_year, first_year + n)
    phase = np.cumsum(rng.normal(2 * np.pi / period, 0.012, n))
    base = np.exp(2.6 * np.sin(phase)) * 600
    noise = rng.lognormal(0.0, 0.18, n)
    values = np.round(base * noise + 60)
    return [
        TemporalRecord(time=float(y), variable="trappings", value=float(v), label=str(y))
        for y, v in zip(years, values)
    ]


def quarterly_panel(quarters: int = 48, seed: int = 11) -> str:
    """Wide CSV text: five related quarterly series over ``quarters`` quarters."""
    rng = np.random.default_rng(seed)
    t = np.arange(quarters)
    season = np.sin(2 * np.pi * t / 4)
    trend = 0.8 * t
    columns = {
        "herdsize": 4600 + trend * 9 + 140 * np.cumsum(rng.normal(0, 0.3, quarters)),
        "production": 920 + trend * 2 + 55 * season + rng.normal(0, 18, quarters),
        "profit": 48 + 12 * np.roll(season, 1) + rng.normal(0, 3.5, quarters),
        "gilts": 68 + 10 * np.roll(season, 2) + rng.normal(0, 3, quarters),
        "price": 110 + 0.4 * trend + 6 * season + rng.normal(0, 2, quarters),
    }
    header = "Time," + ",".join(columns)
    lines = [header]
    for i in range(quarters):
        cells = ",".join(f"{columns[c][i]:.2f}" for c in columns)
        lines.append(f"{i + 1},{cells}")
    return "\n".join(lines) + "\n"


def longitudinal_profiles(individuals: int = 6, visits: int = 9, seed: int = 3) -> list[TemporalRecord]:
    """Irregularly timed per-individual measurements (doctor-visit style)."""
    rng = np.random.default_rng(seed)
    records = []
    for k in range(individuals):
        days = np.cumsum(rng.integers(20, 90, visits)).astype(float)
        level = rng.normal(120, 12)
        drift = rng.normal(0.02, 0.01)
        for d in days:
            value = level + drift * d + rng.normal(0, 4)
            records.append(
                TemporalRecord(
                    time=float(d),
                    variable="measurement",
                    individual=f"subject-{k + 1}",
                    value=float(value),
                    label=f"day {int(d)}",
                )
            )
    return records
