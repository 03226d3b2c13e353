"""Nakagami-m fading channel model, unit conversions, and link constants.

The normalized channel power gain is Gamma-distributed with shape m and rate
m (unit mean). All dB and dBm handling lives here; every other module works
in linear units only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .special import gamma_fn, upper_incomplete_gamma

LOG2_E = math.log2(math.e)


def dbm_to_watt(x_dbm: float) -> float:
    """Convert dBm to watts."""
    return 10.0 ** ((x_dbm - 30.0) / 10.0)


def db_to_linear(x_db: float) -> float:
    """Convert a dB value to a linear power ratio."""
    return 10.0 ** (x_db / 10.0)


def path_loss_db(distance_km: float) -> float:
    """Distance-based path loss in dB for a macro-cell link, distance in km."""
    if distance_km <= 0.0:
        raise DomainError(f"distance must be positive, got {distance_km} km")
    return 128.1 + 37.6 * math.log10(distance_km)


@dataclass(frozen=True)
class SystemParams:
    """Physical link constants.

    Exactly one of distance_km / path_loss may be supplied; a distance fixes
    the path loss through the macro-cell model above. Powers are watts,
    noise_density is W/Hz.
    """

    slot_duration: float
    bandwidth: float
    noise_density: float
    tx_power: float
    circuit_power: float
    idle_power: float = 0.0
    fading_m: float = 2.0
    distance_km: float | None = None
    path_loss: float | None = None

    def __post_init__(self) -> None:
        if self.slot_duration <= 0.0:
            raise DomainError("slot_duration must be positive")
        if self.bandwidth <= 0.0:
            raise DomainError("bandwidth must be positive")
        if self.noise_density <= 0.0:
            raise DomainError("noise_density must be positive")
        if self.fading_m < 0.5:
            raise DomainError("fading_m must be at least 0.5")
        if self.idle_power < 0.0:
            raise DomainError("idle_power must be nonnegative")
        if self.tx_power < self.idle_power:
            raise DomainError("tx_power must not be below idle_power")
        if self.distance_km is None and self.path_loss is None:
            raise DomainError("supply exactly one of distance_km or path_loss")
        if self.distance_km is not None:
            derived = db_to_linear(path_loss_db(self.distance_km))
            # A matching pair is fine (it appears when dataclasses.replace
            # copies a params object whose path loss was derived here).
            if self.path_loss is None:
                object.__setattr__(self, "path_loss", derived)
            elif not math.isclose(self.path_loss, derived, rel_tol=1e-12):
                raise DomainError("supply exactly one of distance_km or path_loss")
        if self.path_loss < 1.0:
            raise DomainError("path_loss must be at least 1 (linear ratio)")


@dataclass(frozen=True)
class DerivedConstants:
    """Constants the capacity formulas reuse.

    exponent_rate is -slot_duration * bandwidth * log2(e): multiplied by the
    QoS exponent it is the SNR power-law exponent of the per-slot service
    decay factor. mean_snr is the average received SNR (the gain has unit
    mean).
    """

    exponent_rate: float
    mean_snr: float


def derived_constants(params: SystemParams) -> DerivedConstants:
    return DerivedConstants(
        exponent_rate=-params.slot_duration * params.bandwidth * LOG2_E,
        mean_snr=params.tx_power / (params.path_loss * params.noise_density * params.bandwidth),
    )


def default_params() -> SystemParams:
    """Reference link: 1 ms slots, 180 kHz, -174 dBm/Hz noise, 43 dBm
    transmit power, 0.1 W circuit power, zero idle power, m = 2, 1 km."""
    return SystemParams(
        slot_duration=1e-3,
        bandwidth=180e3,
        noise_density=dbm_to_watt(-174.0),
        tx_power=dbm_to_watt(43.0),
        circuit_power=0.1,
        idle_power=0.0,
        fading_m=2.0,
        distance_km=1.0,
    )


def pdf(params: SystemParams, gain: float) -> float:
    """Density of the unit-mean channel power gain at the given point."""
    if gain < 0.0:
        raise DomainError(f"gain must be nonnegative, got {gain}")
    m = params.fading_m
    if gain == 0.0:
        if m > 1.0:
            return 0.0
        return m if m == 1.0 else math.inf
    return m**m * gain ** (m - 1.0) * math.exp(-m * gain) / gamma_fn(m)


def tail_probability(params: SystemParams, threshold: float) -> float:
    """P(gain >= threshold): regularized upper incomplete gamma at rate m."""
    if threshold < 0.0:
        raise DomainError(f"threshold must be nonnegative, got {threshold}")
    if threshold == 0.0:
        return 1.0
    m = params.fading_m
    return upper_incomplete_gamma(m, m * threshold) / gamma_fn(m)


def cdf(params: SystemParams, threshold: float) -> float:
    """P(gain < threshold); exact complement of tail_probability."""
    return 1.0 - tail_probability(params, threshold)


def sample_gain(params: SystemParams, rng: np.random.Generator) -> float:
    """One draw of the power gain; rng must be a seeded numpy Generator."""
    return float(rng.gamma(shape=params.fading_m, scale=1.0 / params.fading_m))


def sample_gains(params: SystemParams, rng: np.random.Generator, size: int) -> np.ndarray:
    """Vector of independent power-gain draws from the supplied generator."""
    return rng.gamma(shape=params.fading_m, scale=1.0 / params.fading_m, size=size)
