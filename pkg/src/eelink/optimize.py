"""Threshold optimization, regime boundary search, and capacity inversion.

The energy efficiency rises with the gating threshold exactly while the
trend indicator stays positive, so the optimal threshold is the indicator's
sign change and plain bisection finds it. The positive region shrinks toward
zero as the QoS exponent grows; once the optimal threshold falls below the
gating resolution the run is classified as the ungated regime (threshold
zero), which is also the predicate the exponent-boundary search bisects on.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .analysis import (
    METHOD_CLOSED,
    QosSpec,
    ee_trend,
    effective_capacity,
    energy_efficiency,
    service_mgf,
)
from .channel import SystemParams
from .errors import BracketError, DomainError, InfeasibleRateError, PreconditionError
from .special import QuadratureSettings

# Thresholds below this scale are operationally indistinguishable from no
# gating: for reference-class links the EE gain over a zero threshold is a
# few parts in 10^6 there, far below what sweeps or measurements resolve.
# The regime classification and the exponent-boundary predicate both probe
# the trend indicator at and above this scale.
GATING_RESOLUTION = 1.8e-3

_PREDICATE_GRID_POINTS = 200
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class Regime(enum.Enum):
    GATED = "gated"        # interior optimum; gating improves EE
    UNGATED = "ungated"    # best threshold is zero at the stated resolution


@dataclass(frozen=True)
class SearchSettings:
    """Bisection tolerance and bracket limits for the threshold searches."""

    epsilon: float = 1e-8
    gamma0_lower: float = 0.0
    gamma0_cap: float = 64.0
    max_iterations: int = 200

    def __post_init__(self) -> None:
        if self.epsilon <= 0.0:
            raise DomainError("epsilon must be positive")
        if self.gamma0_lower < 0.0:
            raise DomainError("gamma0_lower must be nonnegative")
        if self.gamma0_cap <= self.gamma0_lower:
            raise DomainError("gamma0_cap must exceed gamma0_lower")
        if self.max_iterations < 1:
            raise DomainError("max_iterations must be at least 1")


@dataclass(frozen=True)
class OptimumResult:
    """Outcome of the threshold search; bracket is the initial interval the
    bisection started from (its upper end already has a negative trend)."""

    regime: Regime
    gamma0_opt: float
    ee_opt: float
    ee_baseline: float
    iterations: int
    bracket: tuple[float, float]


def find_optimal_threshold(
    params: SystemParams,
    qos: QosSpec,
    settings: SearchSettings | None = None,
    resolution: float = GATING_RESOLUTION,
) -> OptimumResult:
    """EE-optimal gating threshold by bisection on the trend indicator.

    The upper bracket is grown geometrically from 1 until the indicator is
    negative; the bracket is then halved, moving the upper end whenever the
    midpoint indicator is negative or zero. Roots below `resolution` are
    reported as the ungated regime with a zero threshold.
    """
    s = settings if settings is not None else SearchSettings()
    ee_baseline = energy_efficiency(params, qos, 0.0, METHOD_CLOSED)

    upper = max(1.0, s.gamma0_lower)
    while ee_trend(params, qos, upper) > 0.0:
        if upper >= s.gamma0_cap:
            raise BracketError(
                f"trend indicator still positive at gamma0_cap = {s.gamma0_cap}"
            )
        upper = min(2.0 * upper, s.gamma0_cap)

    lower = s.gamma0_lower
    bracket = (lower, upper)
    mid = 0.5 * (lower + upper)
    iterations = 0
    while upper - lower > s.epsilon:
        if iterations >= s.max_iterations:
            raise BracketError("bisection exceeded max_iterations")
        if ee_trend(params, qos, mid) <= 0.0:
            upper = mid
        else:
            lower = mid
        mid = 0.5 * (lower + upper)
        iterations += 1

    if mid < resolution:
        return OptimumResult(
            regime=Regime.UNGATED,
            gamma0_opt=0.0,
            ee_opt=ee_baseline,
            ee_baseline=ee_baseline,
            iterations=iterations,
            bracket=bracket,
        )
    return OptimumResult(
        regime=Regime.GATED,
        gamma0_opt=mid,
        ee_opt=energy_efficiency(params, qos, mid, METHOD_CLOSED),
        ee_baseline=ee_baseline,
        iterations=iterations,
        bracket=bracket,
    )


def _max_trend(params: SystemParams, theta: float, floor: float, cap: float) -> float:
    """Max of the trend indicator over a log grid on [floor, cap], refined by
    golden-section around the best grid point."""
    qos = QosSpec(theta=theta)
    grid = np.logspace(math.log10(floor), math.log10(cap), _PREDICATE_GRID_POINTS)
    values = [ee_trend(params, qos, float(g)) for g in grid]
    best = int(np.argmax(values))
    if values[best] > 0.0:
        return values[best]
    a = float(grid[max(best - 1, 0)])
    b = float(grid[min(best + 1, len(grid) - 1)])
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc = ee_trend(params, qos, c)
    fd = ee_trend(params, qos, d)
    for _ in range(60):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = ee_trend(params, qos, c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = ee_trend(params, qos, d)
    return max(values[best], fc, fd)


def find_theta_threshold(
    params: SystemParams,
    theta_lo: float,
    theta_hi: float,
    settings: SearchSettings | None = None,
    resolution: float = GATING_RESOLUTION,
) -> float:
    """QoS-exponent boundary between the gated and ungated regimes.

    Bisects (in log space, to relative width 1e-4) on whether the trend
    indicator is positive anywhere at or above the gating resolution. The
    predicate must hold at theta_lo and fail at theta_hi.
    """
    s = settings if settings is not None else SearchSettings()
    if not 0.0 < theta_lo < theta_hi:
        raise DomainError("need 0 < theta_lo < theta_hi")

    def gated(theta: float) -> bool:
        return _max_trend(params, theta, resolution, s.gamma0_cap) > 0.0

    if not gated(theta_lo):
        raise PreconditionError(f"no gated regime at theta_lo = {theta_lo}")
    if gated(theta_hi):
        raise PreconditionError(f"still gated at theta_hi = {theta_hi}")

    lo, hi = theta_lo, theta_hi
    while hi / lo > 1.0 + 1e-4:
        mid = math.sqrt(lo * hi)
        if gated(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def invert_effective_capacity(
    params: SystemParams,
    qos: QosSpec,
    mu: float,
    settings: SearchSettings | None = None,
    method: str = METHOD_CLOSED,
) -> float:
    """Largest threshold at which the effective capacity still reaches the
    arrival rate mu (bits/s). The capacity is strictly decreasing in the
    threshold, so bisection applies directly."""
    s = settings if settings is not None else SearchSettings()
    if mu <= 0.0:
        raise DomainError("mu must be positive")
    capacity_at_zero = effective_capacity(params, qos, 0.0, method)
    if mu > capacity_at_zero:
        raise InfeasibleRateError(
            f"arrival rate {mu:.6g} bits/s exceeds the zero-threshold capacity "
            f"{capacity_at_zero:.6g} bits/s"
        )

    hi = 1.0
    while effective_capacity(params, qos, hi, method) > mu:
        if hi >= s.gamma0_cap:
            raise BracketError(f"capacity still above mu at gamma0_cap = {s.gamma0_cap}")
        hi = min(2.0 * hi, s.gamma0_cap)
    lo = 0.0
    while hi - lo > s.epsilon:
        mid = 0.5 * (lo + hi)
        if effective_capacity(params, qos, mid, method) > mu:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sweep(
    params: SystemParams,
    thetas: list[float],
    gamma0_range: tuple[float, float],
    quantity: str,
    steps: int,
    method: str = METHOD_CLOSED,
    settings: QuadratureSettings | None = None,
) -> list[tuple[float, float, float]]:
    """Dense (theta, gamma0, value) grid, row-major with theta outermost.

    quantity is one of EE, alpha, G, F (energy efficiency, effective
    capacity, trend indicator, service decay moment).
    """
    if not thetas:
        raise DomainError("thetas must be nonempty")
    if steps < 2:
        raise DomainError("steps must be at least 2")
    lo, hi = gamma0_range
    if not lo < hi:
        raise DomainError("gamma0_range must be increasing")

    def value_at(qos: QosSpec, g: float) -> float:
        if quantity == "EE":
            return energy_efficiency(params, qos, g, method, settings)
        if quantity == "alpha":
            return effective_capacity(params, qos, g, method, settings)
        if quantity == "G":
            return ee_trend(params, qos, g)
        if quantity == "F":
            return service_mgf(params, qos, g, METHOD_CLOSED)
        raise DomainError(f"unknown quantity {quantity!r}; expected EE, alpha, G, or F")

    gammas = np.linspace(lo, hi, steps)
    rows: list[tuple[float, float, float]] = []
    for theta in thetas:
        qos = QosSpec(theta=theta)
        for g in gammas:
            rows.append((theta, float(g), value_at(qos, float(g))))
    return rows
