"""EV model registry: per-model battery and power limits plus sales weights.

The default registry mirrors the 2023 Dutch fleet statistics and is used to
sample a model for every arriving EV, weighted by sales numbers.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from pathlib import Path


@dataclass(frozen=True)
class EvSpec:
    """Static capabilities of one EV model.

    Sign convention: discharge powers are stored as non-positive kW, so
    ``p_dis_max`` is the most negative value (largest discharge magnitude)
    and ``p_dis_max == 0`` means the model cannot discharge at all.
    """

    model_name: str
    e_max: float                 # usable battery capacity, kWh
    e_min: float = 0.0           # BMS discharge floor, kWh
    p_ch_ac_max: float = 11.0    # kW
    p_ch_ac_min: float = 0.0
    p_ch_dc_max: float = 50.0
    p_ch_dc_min: float = 0.0
    p_dis_max: float = 0.0       # kW, <= 0
    p_dis_min: float = 0.0       # kW, <= 0, dead-band edge
    eta_ch: float = 0.95
    eta_dis: float = 0.95
    transition_soc: float = 0.8  # SoC where charging turns exponential
    sales_weight: int = 0

    def __post_init__(self):
        if not 0.0 <= self.e_min < self.e_max:
            raise ValueError(f"{self.model_name}: need 0 <= e_min < e_max")
        if self.p_dis_max > 0 or self.p_dis_min > 0:
            raise ValueError(f"{self.model_name}: discharge powers must be <= 0")
        if self.p_dis_max > self.p_dis_min:
            raise ValueError(f"{self.model_name}: p_dis_max must be <= p_dis_min")
        for lo, hi in ((self.p_ch_ac_min, self.p_ch_ac_max),
                       (self.p_ch_dc_min, self.p_ch_dc_max)):
            if lo > hi:
                raise ValueError(f"{self.model_name}: min power above max power")
        if not 0.0 < self.eta_ch <= 1.0 or not 0.0 < self.eta_dis <= 1.0:
            raise ValueError(f"{self.model_name}: efficiencies must be in (0, 1]")
        if not 0.0 < self.transition_soc <= 1.0:
            raise ValueError(f"{self.model_name}: transition_soc must be in (0, 1]")

    def charge_power_limits(self, charger_type: str) -> tuple[float, float]:
        if charger_type == "DC":
            return self.p_ch_dc_min, self.p_ch_dc_max
        return self.p_ch_ac_min, self.p_ch_ac_max


# (model, 2023 NL sales, e_max kWh, AC kW, DC kW, discharge magnitude kW)
_DEFAULT_ROWS = [
    ("Tesla Model 3", 45545, 57.5, 11.0, 170.0, 0.0),
    ("Kia Niro", 23105, 64.8, 11.0, 80.0, 0.0),
    ("Volkswagen ID.3", 19950, 58.0, 11.0, 120.0, 0.0),
    ("Hyundai Kona", 17752, 64.0, 11.0, 77.0, 0.0),
    ("Tesla Model Y", 16186, 57.5, 11.0, 170.0, 0.0),
    ("Skoda Enyaq", 16165, 58.0, 11.0, 124.0, 0.0),
    ("Peugeot 208", 14017, 46.3, 7.4, 101.0, 0.0),
    ("Renault Zoe", 14008, 52.0, 22.0, 46.0, 0.0),
    ("Volkswagen ID.4", 13283, 77.0, 11.0, 135.0, 10.0),
    ("Volvo XC40", 12520, 66.0, 11.0, 135.0, 0.0),
    ("Nissan Leaf", 11977, 39.0, 3.6, 46.0, 7.0),
    ("Tesla Model S", 10899, 75.0, 11.0, 250.0, 0.0),
]

REGISTRY_COLUMNS = ["model_name", "sales", "e_max_kwh", "p_ch_ac_kw", "p_ch_dc_kw", "p_dis_kw"]


def default_registry(min_soc_fraction: float = 0.1,
                     eta_ch: float = 0.95,
                     eta_dis: float = 0.95,
                     transition_soc: float = 0.8) -> list[EvSpec]:
    """Built-in registry with fleet-wide defaults applied to every model."""
    specs = []
    for name, sales, e_max, p_ac, p_dc, p_dis in _DEFAULT_ROWS:
        specs.append(EvSpec(
            model_name=name,
            e_max=e_max,
            e_min=min_soc_fraction * e_max,
            p_ch_ac_max=p_ac,
            p_ch_dc_max=p_dc,
            p_dis_max=-p_dis,
            eta_ch=eta_ch,
            eta_dis=eta_dis,
            transition_soc=transition_soc,
            sales_weight=sales,
        ))
    return specs


def load_registry_csv(path: str | Path, min_soc_fraction: float = 0.1,
                      eta_ch: float = 0.95, eta_dis: float = 0.95,
                      transition_soc: float = 0.8) -> list[EvSpec]:
    """Read a registry CSV (columns: model_name, sales, e_max_kwh, p_ch_ac_kw,
    p_ch_dc_kw, p_dis_kw). Discharge power is given as a magnitude and negated."""
    specs = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = set(REGISTRY_COLUMNS) - set(reader.fieldnames or [])
        if missing:
            raise ValueError(f"registry CSV missing columns: {sorted(missing)}")
        for i, row in enumerate(reader):
            try:
                specs.append(EvSpec(
                    model_name=row["model_name"],
                    e_max=float(row["e_max_kwh"]),
                    e_min=min_soc_fraction * float(row["e_max_kwh"]),
                    p_ch_ac_max=float(row["p_ch_ac_kw"]),
                    p_ch_dc_max=float(row["p_ch_dc_kw"]),
                    p_dis_max=-abs(float(row["p_dis_kw"])),
                    eta_ch=eta_ch,
                    eta_dis=eta_dis,
                    transition_soc=transition_soc,
                    sales_weight=int(row["sales"]),
                ))
            except (ValueError, KeyError) as exc:
                raise ValueError(f"registry CSV row {i + 2}: {exc}") from exc
    if not specs:
        raise ValueError("registry CSV contains no rows")
    return specs


def write_registry_csv(path: str | Path, specs: list[EvSpec] | None = None) -> None:
    specs = specs if specs is not None else default_registry()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(REGISTRY_COLUMNS)
        for s in specs:
            writer.writerow([s.model_name, s.sales_weight, repr(s.e_max),
                             repr(s.p_ch_ac_max), repr(s.p_ch_dc_max),
                             repr(abs(s.p_dis_max))])


def sample_spec(specs: list[EvSpec], rng) -> EvSpec:
    """Draw a model with probability proportional to its sales weight."""
    if not specs:
        raise ValueError("cannot sample from an empty registry")
    weights = [max(0, s.sales_weight) for s in specs]
    total = sum(weights)
    if total <= 0:
        raise ValueError("registry has no positive sales weight")
    u = rng.random() * total
    acc = 0.0
    for spec, w in zip(specs, weights):
        acc += w
        if u < acc:
            return spec
    return specs[-1]


def apply_fleet_defaults(specs: list[EvSpec], min_soc_fraction: float,
                         eta_ch: float, eta_dis: float,
                         transition_soc: float) -> list[EvSpec]:
    """Re-derive the configurable fields on an existing spec list."""
    return [replace(s,
                    e_min=min_soc_fraction * s.e_max,
                    eta_ch=eta_ch, eta_dis=eta_dis,
                    transition_soc=transition_soc)
            for s in specs]
