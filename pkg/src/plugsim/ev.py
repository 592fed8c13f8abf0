"""EV-side physics: charge power conversion, two-stage SoC dynamics,
power-limit enforcement, and battery capacity-fade estimation.

Power flows follow one sign convention throughout: charging power and
current are positive, discharging power and current are negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .registry import EvSpec


def power_from_current(current_a: float, voltage: float, phases: int,
                       efficiency: float) -> float:
    """Electrical power in kW for a given line current.

    P = eta * I * V * sqrt(phases) / 1000.  The sign of the result follows
    the sign of the current.
    """
    if phases not in (1, 3):
        raise ValueError(f"phases must be 1 or 3, got {phases}")
    if voltage <= 0:
        raise ValueError("voltage must be positive")
    return efficiency * current_a * voltage * math.sqrt(phases) / 1000.0


def current_from_power(power_kw: float, voltage: float, phases: int,
                       efficiency: float) -> float:
    """Inverse of :func:`power_from_current` (used to report effective currents)."""
    return power_kw * 1000.0 / (efficiency * voltage * math.sqrt(phases))


def step_soc(soc: float, power_kw: float, dt_hours: float, e_max: float,
             transition_soc: float, e_min: float = 0.0) -> float:
    """Advance the state of charge by one step under the two-stage model.

    Below the transition SoC the battery absorbs the full power linearly;
    at or above it the charger enters the constant-voltage taper and the
    SoC approaches 1 exponentially.  With ``transition_soc == 1`` the model
    is linear everywhere.  The result is clamped to [e_min/e_max, 1].
    """
    if dt_hours <= 0:
        raise ValueError("dt_hours must be positive")
    if transition_soc >= 1.0 or soc < transition_soc:
        new_soc = soc + power_kw * dt_hours / e_max
    else:
        new_soc = 1.0 + (soc - 1.0) * math.exp(
            power_kw * dt_hours / (e_max * (transition_soc - 1.0)))
    return min(1.0, max(e_min / e_max, new_soc))


def clamp_ev_power(spec: EvSpec, energy_kwh: float, power_kw: float,
                   charger_type: str, dt_hours: float) -> float:
    """Restrict a requested power to what the EV's BMS would accept.

    Charging is capped by the mode-specific power limit and by the linear
    headroom to a full battery; requests below the minimum power snap to
    zero.  Discharging mirrors this against the BMS floor, and a model
    without discharge capability always returns 0.
    """
    if power_kw > 0:
        p_min, p_max = spec.charge_power_limits(charger_type)
        if power_kw < p_min:
            return 0.0
        power_kw = min(power_kw, p_max)
        headroom = max(0.0, (spec.e_max - energy_kwh) / dt_hours)
        return min(power_kw, headroom)
    if power_kw < 0:
        if spec.p_dis_max == 0.0:
            return 0.0
        if power_kw > spec.p_dis_min:  # magnitude below the minimum
            return 0.0
        power_kw = max(power_kw, spec.p_dis_max)
        floor_room = max(0.0, (energy_kwh - spec.e_min) / dt_hours)
        return max(power_kw, -floor_room)
    return 0.0


@dataclass
class DegradationParams:
    """Capacity-fade fit constants (battery temperature in degrees Celsius).

    The Arrhenius exponent is evaluated in Kelvin; with the published
    constants a Celsius-valued denominator would underflow the exponential
    and suppress calendar aging entirely.
    """

    eps0: float = 6.23e6
    eps1: float = 1.38e6
    eps2: float = 6976.0
    temperature_c: float = 28.0
    zeta0: float = 4.02e-4
    zeta1: float = 2.04e-3
    lifetime_throughput_kwh: float = 11160.0

    @property
    def temperature_k(self) -> float:
        return self.temperature_c + 273.15


DEFAULT_DEGRADATION = DegradationParams()


def calendar_loss(avg_soc: float, duration_days: float, battery_age_days: float,
                  params: DegradationParams = DEFAULT_DEGRADATION) -> float:
    """Capacity fraction lost to calendar aging over ``duration_days``.

    Floored at zero: at very low average SoC the linear fit goes negative,
    which would be unphysical negative degradation.
    """
    if battery_age_days <= 0:
        raise ValueError("battery_age_days must be positive")
    loss = (0.75 * (params.eps0 * avg_soc - params.eps1)
            * math.exp(-params.eps2 / params.temperature_k)
            * duration_days / battery_age_days ** 0.25)
    return max(0.0, loss)


def cyclic_loss(soc_series, power_series, dt_hours: float,
                params: DegradationParams = DEFAULT_DEGRADATION,
                duration_hours: float | None = None) -> float:
    """Capacity fraction lost to cycling over a session.

    Both integrals are left-Riemann sums over the connected steps: the SoC
    deviation from its session mean (normalised by the session duration)
    scales the cyclic fit, and the battery throughput is divided by the
    square root of the lifetime accumulated throughput.
    """
    n = len(soc_series)
    if n == 0 or len(power_series) != n:
        raise ValueError("soc and power series must have equal, nonzero length")
    if duration_hours is None:
        duration_hours = n * dt_hours
    mean_soc = sum(soc_series) / n
    deviation = sum(abs(mean_soc - s) * dt_hours for s in soc_series) / duration_hours
    throughput = sum(abs(p) * dt_hours for p in power_series)
    return ((params.zeta0 + params.zeta1 * deviation)
            * throughput / math.sqrt(params.lifetime_throughput_kwh))


@dataclass
class EvSession:
    """One EV's visit to an EVSE slot: battery state plus bookkeeping."""

    session_id: int
    spec: EvSpec
    slot: int                  # global EVSE slot index
    charger_index: int
    t_arr: int
    t_dep: int                 # first step at which the EV is gone
    e_arr: float               # kWh at arrival
    e_target: float            # desired kWh at departure
    battery_age_days: float = 730.0
    energy: float = 0.0        # current kWh
    soc_history: list = field(default_factory=list)
    power_history: list = field(default_factory=list)
    throughput_kwh: float = 0.0
    fully_charged: bool = False
    last_delivered_kwh: float = 0.0
    satisfaction: float | None = None
    cal_loss: float | None = None
    cyc_loss: float | None = None

    def __post_init__(self):
        if self.t_dep <= self.t_arr:
            raise ValueError("t_dep must be at least t_arr + 1")
        if not self.spec.e_min <= self.e_arr <= self.spec.e_max:
            raise ValueError("arrival energy outside battery bounds")
        if self.e_target > self.spec.e_max:
            raise ValueError("target energy above capacity")
        if self.energy == 0.0:
            self.energy = self.e_arr

    @property
    def soc(self) -> float:
        return self.energy / self.spec.e_max

    def connected_at(self, step: int) -> bool:
        return self.t_arr <= step < self.t_dep

    def apply_power(self, power_kw: float, dt_hours: float,
                    requested_charge: bool) -> float:
        """Run one step of battery dynamics; returns the delivered power.

        Delivered power is the battery-side energy change per time, which
        tapers below the commanded power in the constant-voltage region.
        The fully-charged flag latches when a charging request moves no
        energy, the only full-charge signal observable without SoC access.
        """
        prev = self.energy
        new_soc = step_soc(self.soc, power_kw, dt_hours, self.spec.e_max,
                           self.spec.transition_soc,
                           e_min=self.spec.e_min)
        self.energy = new_soc * self.spec.e_max
        delivered_kwh = self.energy - prev
        self.last_delivered_kwh = delivered_kwh
        if requested_charge and abs(delivered_kwh) < 1e-12:
            self.fully_charged = True
        delivered_kw = delivered_kwh / dt_hours
        self.soc_history.append(new_soc)
        self.power_history.append(delivered_kw)
        self.throughput_kwh += abs(delivered_kwh)
        return delivered_kw

    def finalize(self, dt_hours: float,
                 params: DegradationParams = DEFAULT_DEGRADATION) -> None:
        """Record departure satisfaction and the session's capacity fade."""
        target_soc = self.e_target / self.spec.e_max
        if target_soc <= 0:
            self.satisfaction = 1.0
        else:
            self.satisfaction = min(1.0, self.soc / target_soc)
        if self.soc_history:
            avg_soc = sum(self.soc_history) / len(self.soc_history)
            days = len(self.soc_history) * dt_hours / 24.0
            self.cal_loss = calendar_loss(avg_soc, days, self.battery_age_days, params)
            self.cyc_loss = cyclic_loss(self.soc_history, self.power_history,
                                        dt_hours, params)
        else:
            self.cal_loss = 0.0
            self.cyc_loss = 0.0

    def total_degradation(self) -> float:
        if self.cal_loss is None or self.cyc_loss is None:
            raise ValueError("session not finalized")
        return self.cal_loss + self.cyc_loss
