"""Charging-station semantics: action decoding to currents, per-EVSE
dead-bands and clipping, station-level normalization, and cashflow."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class ChargerSpec:
    """One charging station with ``evse_count`` connectors.

    Current conventions: charge currents are positive, discharge currents
    negative.  For the discharge pair, ``evse_dis_current_max`` is the most
    negative value (largest magnitude) and ``evse_dis_current_min`` the
    dead-band edge closest to zero.
    """

    charger_id: str
    transformer_id: str
    evse_count: int = 1
    charger_type: str = "AC"           # AC | DC
    voltage: float = 400.0
    phases: int = 3
    station_current_min: float = 0.0   # A, <= 0
    station_current_max: float = 48.0  # A
    evse_ch_current_min: float = 6.0   # A
    evse_ch_current_max: float = 16.0  # A
    evse_dis_current_min: float = 0.0  # A, <= 0 (dead-band edge)
    evse_dis_current_max: float = 0.0  # A, <= 0 (max magnitude)
    charge_prices: np.ndarray | None = None     # EUR/kWh, resolved at reset
    discharge_prices: np.ndarray | None = None

    def validate(self) -> None:
        if self.evse_count < 1:
            raise ValueError(f"charger {self.charger_id}: needs at least one EVSE")
        if self.charger_type not in ("AC", "DC"):
            raise ValueError(f"charger {self.charger_id}: type must be AC or DC")
        if self.phases not in (1, 3):
            raise ValueError(f"charger {self.charger_id}: phases must be 1 or 3")
        if self.voltage <= 0:
            raise ValueError(f"charger {self.charger_id}: voltage must be positive")
        if self.station_current_min > 0 or self.station_current_max < 0:
            raise ValueError(
                f"charger {self.charger_id}: station current bounds must bracket 0 "
                "(an idle station draws no current)")
        if not 0 <= self.evse_ch_current_min <= self.evse_ch_current_max:
            raise ValueError(f"charger {self.charger_id}: bad EVSE charge current bounds")
        if self.evse_dis_current_min > 0 or self.evse_dis_current_max > self.evse_dis_current_min:
            raise ValueError(f"charger {self.charger_id}: bad EVSE discharge current bounds")

    @property
    def can_discharge(self) -> bool:
        return self.evse_dis_current_max < 0


def decode_action(action: float, charger: ChargerSpec, occupied: bool,
                  v2g: bool) -> tuple[float, bool]:
    """Map one normalized action to a requested EVSE current in amperes.

    Positive actions scale linearly to the maximum charge current, negative
    ones (V2G only) to the maximum discharge current.  Empty slots always
    request 0 A.  Returns ``(current, clamped)`` where ``clamped`` flags an
    out-of-range action that had to be clipped.
    """
    lo = -1.0 if v2g else 0.0
    clamped = action < lo or action > 1.0
    a = min(1.0, max(lo, action))
    if not occupied or a == 0.0:
        return 0.0, clamped
    if a > 0:
        return a * charger.evse_ch_current_max, clamped
    return a * abs(charger.evse_dis_current_max), clamped


def apply_station_limits(requested: np.ndarray,
                         charger: ChargerSpec) -> tuple[np.ndarray, dict]:
    """Turn requested EVSE currents into the currents the station allows.

    In order: (1) currents inside the charge/discharge dead-band are zeroed,
    (2) currents beyond the per-EVSE limits are clipped to them, (3) if the
    station total leaves its bounds, the violating side (charging currents
    for the upper bound, discharging for the lower) is scaled by a common
    factor; a scaled current that lands inside the dead-band is then zeroed
    without re-normalizing (a single pass only ever shrinks magnitudes).
    """
    out = np.asarray(requested, dtype=float).copy()
    adjustments = {"deadband": 0, "clipped": 0, "normalized": False}

    # (1) dead-band
    ch_dead = (out > 0) & (out < charger.evse_ch_current_min)
    dis_dead = (out < 0) & (out > charger.evse_dis_current_min)
    adjustments["deadband"] = int(np.count_nonzero(ch_dead | dis_dead))
    out[ch_dead | dis_dead] = 0.0

    # (2) clip to per-EVSE maxima
    over = out > charger.evse_ch_current_max
    under = out < charger.evse_dis_current_max
    adjustments["clipped"] = int(np.count_nonzero(over | under))
    out[over] = charger.evse_ch_current_max
    out[under] = charger.evse_dis_current_max

    # (3) proportional normalization of the violating side
    total = float(out.sum())
    scaled = np.zeros_like(out, dtype=bool)
    if total > charger.station_current_max:
        pos = out > 0
        pos_sum = float(out[pos].sum())
        target = charger.station_current_max - (total - pos_sum)
        out[pos] *= target / pos_sum
        scaled = pos
        adjustments["normalized"] = True
    elif total < charger.station_current_min:
        neg = out < 0
        neg_sum = float(out[neg].sum())
        target = charger.station_current_min - (total - neg_sum)
        out[neg] *= target / neg_sum
        scaled = neg
        adjustments["normalized"] = True
    if adjustments["normalized"]:
        redead = scaled & (((out > 0) & (out < charger.evse_ch_current_min))
                           | ((out < 0) & (out > charger.evse_dis_current_min)))
        out[redead] = 0.0
    return out, adjustments


def cashflow(power_kw: float, dt_hours: float, charge_price: float,
             discharge_price: float) -> float:
    """Money flow in EUR for one EVSE-step: charging costs, discharging earns."""
    if power_kw > 0:
        return -power_kw * charge_price * dt_hours
    if power_kw < 0:
        return -power_kw * discharge_price * dt_hours
    return 0.0
