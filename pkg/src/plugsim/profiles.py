"""Bundled synthetic day profiles (prices, inflexible load, PV) and CSV
loaders for user-supplied series.

The built-in curves are deterministic functions of the time of day shaped
like typical Dutch data: a day-ahead price with morning/evening peaks and a
midday dip, a household load with the same two peaks, and a solar bell
curve.  They stand in for proprietary market and metering datasets; CSV
override is the first-class path for real data.
"""

from __future__ import annotations

import csv
import math
from datetime import datetime, timedelta
from pathlib import Path

import numpy as np


def _hours_of_day(start: datetime, dt_minutes: int, length: int) -> np.ndarray:
    base = start.hour + start.minute / 60.0
    return (base + np.arange(length) * dt_minutes / 60.0) % 24.0


def default_charge_prices(start: datetime, dt_minutes: int, length: int) -> np.ndarray:
    """Synthetic day-ahead price curve in EUR/kWh."""
    h = _hours_of_day(start, dt_minutes, length)
    base = 0.22
    morning = 0.10 * np.exp(-0.5 * ((h - 8.5) / 1.8) ** 2)
    evening = 0.16 * np.exp(-0.5 * ((h - 19.0) / 2.2) ** 2)
    midday_dip = -0.12 * np.exp(-0.5 * ((h - 13.5) / 2.5) ** 2)
    night_dip = -0.08 * np.exp(-0.5 * ((h - 3.0) / 2.5) ** 2)
    return np.maximum(0.03, base + morning + evening + midday_dip + night_dip)


def default_load(start: datetime, dt_minutes: int, length: int,
                 peak_kw: float = 30.0) -> np.ndarray:
    """Inflexible load in kW: morning and evening residential peaks."""
    h = _hours_of_day(start, dt_minutes, length)
    base = 0.35
    morning = 0.45 * np.exp(-0.5 * ((h - 7.5) / 1.5) ** 2)
    evening = 0.65 * np.exp(-0.5 * ((h - 18.5) / 2.0) ** 2)
    return peak_kw * (base + morning + evening) / 1.0


def default_pv(start: datetime, dt_minutes: int, length: int,
               peak_kw: float = 20.0) -> np.ndarray:
    """PV generation in kW, stored negative (injection reduces net load)."""
    h = _hours_of_day(start, dt_minutes, length)
    bell = np.exp(-0.5 * ((h - 13.0) / 2.4) ** 2)
    bell[(h < 6.0) | (h > 20.5)] = 0.0
    return -peak_kw * bell


def load_series_csv(path: str | Path, length: int) -> np.ndarray:
    """Read a (step_or_timestamp, kw) CSV; the series must cover ``length``
    steps and is padded by repeating the final value."""
    values = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if len(header) < 2:
            raise ValueError(f"{path}: expected two columns (step, kw)")
        for row in reader:
            if not row:
                continue
            values.append(float(row[1]))
    if not values:
        raise ValueError(f"{path}: no data rows")
    return _fit_length(np.asarray(values, dtype=float), length, str(path))


def load_price_csv(path: str | Path, length: int) -> tuple[np.ndarray, np.ndarray]:
    """Read (step_or_timestamp, charge_price_eur_per_kwh, discharge_price_eur_per_kwh)."""
    ch, dis = [], []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if len(header) < 3:
            raise ValueError(
                f"{path}: expected columns (step, charge_price_eur_per_kwh, "
                "discharge_price_eur_per_kwh)")
        for row in reader:
            if not row:
                continue
            ch.append(float(row[1]))
            dis.append(float(row[2]))
    if not ch:
        raise ValueError(f"{path}: no data rows")
    return (_fit_length(np.asarray(ch), length, str(path)),
            _fit_length(np.asarray(dis), length, str(path)))


def _fit_length(values: np.ndarray, length: int, name: str) -> np.ndarray:
    if len(values) >= length:
        return values[:length]
    # pad the look-ahead window past the data's end with the last value
    pad = np.full(length - len(values), values[-1])
    return np.concatenate([values, pad])


def write_series_csv(path: str | Path, values, value_column: str = "kw") -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["step", value_column])
        for i, v in enumerate(values):
            writer.writerow([i, repr(float(v))])


def write_price_csv(path: str | Path, charge, discharge) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["step", "charge_price_eur_per_kwh", "discharge_price_eur_per_kwh"])
        for i, (c, d) in enumerate(zip(charge, discharge)):
            writer.writerow([i, repr(float(c)), repr(float(d))])
