"""Transformer-level aggregation: inflexible loads, PV, demand-response
capacity reductions, overload accounting, and Gaussian forecasts.

PV is stored as negative power (generation offsets load), so the net
transformer power is a plain sum of EV power, load, and PV.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class TransformerSpec:
    transformer_id: str
    power_min: float = -1e9   # kW
    power_max: float = 1e9    # kW
    load_scale: float = 1.0
    pv_scale: float = 1.0

    def validate(self) -> None:
        if self.power_min >= self.power_max:
            raise ValueError(
                f"transformer {self.transformer_id}: power_min must be below power_max")


@dataclass
class TransformerState:
    """A transformer with its resolved time series (length >= T + horizon)."""

    spec: TransformerSpec
    load_kw: np.ndarray
    pv_kw: np.ndarray        # <= 0
    dr_kw: np.ndarray        # >= 0, capacity reduction
    charger_indices: list = field(default_factory=list)

    def net_power(self, step: int, p_evs_kw: float) -> float:
        return p_evs_kw + float(self.load_kw[step]) + float(self.pv_kw[step])

    def effective_cap(self, step: int) -> float:
        return self.spec.power_max - float(self.dr_kw[step])

    def overload_at(self, step: int, p_evs_kw: float) -> float:
        """Power above the (DR-reduced) upper limit; 0 when within bounds."""
        return max(0.0, self.net_power(step, p_evs_kw) - self.effective_cap(step))

    def undershoot_at(self, step: int, p_evs_kw: float) -> float:
        """Power below the lower limit, tracked as a separate diagnostic."""
        return max(0.0, self.spec.power_min - self.net_power(step, p_evs_kw))


def build_dr_series(length: int, start_step: int | None, duration_steps: int,
                    reduction_kw: float) -> np.ndarray:
    dr = np.zeros(length)
    if start_step is not None and reduction_kw > 0:
        lo = max(0, int(start_step))
        hi = min(length, lo + int(duration_steps))
        dr[lo:hi] = reduction_kw
    return dr


def forecast(series: np.ndarray, step: int, horizon: int, sigma: float,
             rng: np.random.Generator) -> np.ndarray:
    """Noisy look-ahead: entry k is Normal(series[step+k], sigma).

    With sigma == 0 the slice of the true series is returned unchanged (and
    no random numbers are consumed, so noise-free runs do not disturb the
    forecast stream).
    """
    if step + horizon > len(series):
        raise ValueError(
            f"forecast window [{step}, {step + horizon}) exceeds padded series "
            f"of length {len(series)}")
    truth = np.asarray(series[step:step + horizon], dtype=float)
    if sigma == 0:
        return truth.copy()
    return truth + rng.normal(0.0, sigma, size=horizon)


def visible_dr(dr_series: np.ndarray, step: int, horizon: int,
               notice_steps: int) -> np.ndarray:
    """DR reductions as announced to controllers: exact up to the notice
    lead, zero beyond it (events are communicated only shortly ahead)."""
    if step + horizon > len(dr_series):
        raise ValueError("DR window exceeds padded series")
    out = np.asarray(dr_series[step:step + horizon], dtype=float).copy()
    if notice_steps + 1 < horizon:
        out[notice_steps + 1:] = 0.0
    return out
