"""Link-level analytics for the threshold-gated transmitter.

Everything revolves around the per-slot service decay moment
E[exp(-theta * s)], where s is the gated Shannon service in bits. Its log
gives the effective capacity; dividing by the two-mode power budget gives
the energy efficiency. A closed form exists for fading_m == 2 (large mean
SNR folds the integral into an upper incomplete gamma); the exact route
integrates the true kernel numerically and works for any m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import SystemParams, cdf, derived_constants, pdf, tail_probability
from .errors import DomainError
from .special import QuadratureSettings, integrate, upper_incomplete_gamma

METHOD_EXACT = "exact_quadrature"
METHOD_CLOSED = "closed_form_m2"
_METHODS = (METHOD_EXACT, METHOD_CLOSED)


@dataclass(frozen=True)
class QosSpec:
    """Delay-QoS requirement: per-bit exponent theta, optional delay bound."""

    theta: float
    delay_bound: float | None = None

    def __post_init__(self) -> None:
        if self.theta <= 0.0:
            raise DomainError("theta must be positive")
        if self.delay_bound is not None and self.delay_bound <= 0.0:
            raise DomainError("delay_bound must be positive when given")


@dataclass(frozen=True)
class AnalysisResult:
    """Analytics at one (theta, gamma0) operating point.

    service_mgf and ee_trend come from the m = 2 closed form and are None
    for other fading parameters.
    """

    gamma0: float
    effective_capacity: float
    p_tr: float
    p_idle: float
    total_power: float
    ee: float
    service_mgf: float | None
    ee_trend: float | None
    log_mgf: float


def _check_gamma0(gamma0: float) -> None:
    if gamma0 < 0.0:
        raise DomainError(f"gamma0 must be nonnegative, got {gamma0}")


def _log_mgf_closed(params: SystemParams, theta: float, gamma0: float) -> float:
    # log E[exp(-theta s)] for m = 2. The incomplete-gamma prefactor
    # (mean_snr / 2)^(exponent_rate * theta) is kept in log space: the mean
    # SNR is of order 10^3 and direct powers lose precision.
    if params.fading_m != 2.0:
        raise DomainError(f"{METHOD_CLOSED} requires fading_m == 2, got {params.fading_m}")
    c = derived_constants(params)
    a = c.exponent_rate * theta
    if gamma0 == 0.0 and 2.0 + a <= 0.0:
        raise DomainError(
            f"{METHOD_CLOSED} at gamma0 = 0 needs theta < {-2.0 / c.exponent_rate:.4e}"
        )
    p_idle = cdf(params, gamma0)
    log_tail = a * (math.log(c.mean_snr) - math.log(2.0)) + math.log(
        upper_incomplete_gamma(2.0 + a, 2.0 * gamma0)
    )
    if p_idle == 0.0:
        return log_tail
    return float(np.logaddexp(math.log(p_idle), log_tail))


def _log_mgf_exact(
    params: SystemParams,
    theta: float,
    gamma0: float,
    settings: QuadratureSettings | None,
) -> float:
    c = derived_constants(params)
    a = c.exponent_rate * theta

    def integrand(g: float) -> float:
        return (1.0 + c.mean_snr * g) ** a * pdf(params, g)

    tail = integrate(integrand, gamma0, math.inf, settings)
    return math.log(cdf(params, gamma0) + tail)


def log_service_mgf(
    params: SystemParams,
    qos: QosSpec,
    gamma0: float,
    method: str = METHOD_CLOSED,
    settings: QuadratureSettings | None = None,
) -> float:
    """Natural log of the per-slot service decay moment E[exp(-theta s)]."""
    _check_gamma0(gamma0)
    if method == METHOD_CLOSED:
        return _log_mgf_closed(params, qos.theta, gamma0)
    if method == METHOD_EXACT:
        return _log_mgf_exact(params, qos.theta, gamma0, settings)
    raise DomainError(f"unknown method {method!r}; expected one of {_METHODS}")


def service_mgf(
    params: SystemParams,
    qos: QosSpec,
    gamma0: float,
    method: str = METHOD_CLOSED,
    settings: QuadratureSettings | None = None,
) -> float:
    """E[exp(-theta s)], in (0, 1) for any positive theta and threshold."""
    return math.exp(log_service_mgf(params, qos, gamma0, method, settings))


def effective_capacity(
    params: SystemParams,
    qos: QosSpec,
    gamma0: float,
    method: str = METHOD_CLOSED,
    settings: QuadratureSettings | None = None,
) -> float:
    """Largest sustainable constant arrival rate in bits/s under the QoS
    exponent, for the service gated at the given threshold."""
    log_mgf = log_service_mgf(params, qos, gamma0, method, settings)
    return -log_mgf / (qos.theta * params.slot_duration)


def mode_probabilities(params: SystemParams, gamma0: float) -> tuple[float, float]:
    """(p_tr, p_idle): transmit- and idle-mode probabilities; they sum to 1
    exactly because the idle side is computed as the complement."""
    _check_gamma0(gamma0)
    p_tr = tail_probability(params, gamma0)
    return p_tr, 1.0 - p_tr


def total_power(params: SystemParams, gamma0: float) -> float:
    """Mean consumed power in W: circuit power plus mode-weighted radiated
    and idle power."""
    p_tr, p_idle = mode_probabilities(params, gamma0)
    return params.circuit_power + params.tx_power * p_tr + params.idle_power * p_idle


def energy_efficiency(
    params: SystemParams,
    qos: QosSpec,
    gamma0: float,
    method: str = METHOD_CLOSED,
    settings: QuadratureSettings | None = None,
) -> float:
    """Effective capacity per consumed watt, bits/Joule."""
    alpha = effective_capacity(params, qos, gamma0, method, settings)
    return alpha / total_power(params, gamma0)


def ee_trend(params: SystemParams, qos: QosSpec, gamma0: float) -> float:
    """Trend indicator for energy efficiency versus the threshold (m = 2).

    Its sign matches the sign of d(EE)/d(gamma0): positive while raising the
    threshold still helps, negative once it hurts. Cheap to evaluate, so the
    optimizer bisects on it instead of differencing EE.
    """
    _check_gamma0(gamma0)
    c = derived_constants(params)
    a = c.exponent_rate * qos.theta
    log_mgf = _log_mgf_closed(params, qos.theta, gamma0)
    mgf = math.exp(log_mgf)
    power = total_power(params, gamma0)
    swing = params.tx_power - params.idle_power
    kernel = (1.0 + c.mean_snr * gamma0) ** a
    return -swing * log_mgf * mgf - (1.0 - kernel) * power


def delay_outage_estimate(qos: QosSpec, p_buffer_nonempty: float, theta_seconds: float) -> float:
    """Large-deviations estimate of P(delay > delay_bound).

    theta_seconds is the per-second decay exponent; a constant-rate source
    served at capacity uses theta * arrival_rate. p_buffer_nonempty is the
    probability the transmit buffer is backlogged at a random slot.
    """
    if qos.delay_bound is None:
        raise DomainError("delay_bound missing from QosSpec")
    if not 0.0 <= p_buffer_nonempty <= 1.0:
        raise DomainError(f"p_buffer_nonempty must be in [0, 1], got {p_buffer_nonempty}")
    return p_buffer_nonempty * math.exp(-theta_seconds * qos.delay_bound)


def analyze(
    params: SystemParams,
    qos: QosSpec,
    gamma0: float,
    method: str = METHOD_CLOSED,
    settings: QuadratureSettings | None = None,
) -> AnalysisResult:
    """Bundle every per-point quantity into one result."""
    log_mgf = log_service_mgf(params, qos, gamma0, method, settings)
    alpha = -log_mgf / (qos.theta * params.slot_duration)
    p_tr, p_idle = mode_probabilities(params, gamma0)
    power = total_power(params, gamma0)
    mgf = trend = None
    if params.fading_m == 2.0:
        mgf = service_mgf(params, qos, gamma0, METHOD_CLOSED)
        trend = ee_trend(params, qos, gamma0)
    return AnalysisResult(
        gamma0=gamma0,
        effective_capacity=alpha,
        p_tr=p_tr,
        p_idle=p_idle,
        total_power=power,
        ee=alpha / power,
        service_mgf=mgf,
        ee_trend=trend,
        log_mgf=log_mgf,
    )


def mean_service_rate(
    params: SystemParams,
    gamma0: float,
    settings: QuadratureSettings | None = None,
) -> float:
    """E[s] / slot_duration in bits/s: the theta -> 0 limit of the effective
    capacity, by quadrature against the gain density."""
    _check_gamma0(gamma0)
    c = derived_constants(params)

    def integrand(g: float) -> float:
        return params.bandwidth * math.log2(1.0 + c.mean_snr * g) * pdf(params, g)

    return integrate(integrand, gamma0, math.inf, settings)
