"""Gamma-family special functions and adaptive quadrature.

The upper incomplete gamma function here accepts negative shape parameters,
which the closed-form link formulas produce once the QoS exponent gets large.
Negative shapes go to the continued fraction directly when the argument is
moderately large, and otherwise through a downward recurrence from an anchor
in (0, 1] where the standard series / continued-fraction split applies. All
functions are pure and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy import integrate as _sciint

from .errors import DomainError, PoleError, QuadratureError

_EULER = 0.5772156649015329
_TERM_EPS = 1e-15          # series / continued-fraction termination
_MAX_TERMS = 10_000


@dataclass(frozen=True)
class QuadratureSettings:
    """Tolerances and budget for adaptive integration."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000

    def __post_init__(self) -> None:
        if self.rel_tol <= 0.0:
            raise DomainError("rel_tol must be positive")
        if self.abs_tol < 0.0:
            raise DomainError("abs_tol must be nonnegative")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be at least 1")


def gamma_fn(v: float) -> float:
    """Complete gamma function. Raises PoleError at 0, -1, -2, ..."""
    if v <= 0.0 and v == math.floor(v):
        raise PoleError(f"gamma function pole at v = {v}")
    return math.gamma(v)


def _lower_series_scaled(v: float, z: float) -> float:
    # S such that lower_gamma(v, z) = z^v e^-z * S; wants v > 0, z < v + 1.
    term = 1.0 / v
    total = term
    for k in range(1, _MAX_TERMS):
        term *= z / (v + k)
        total += term
        if abs(term) <= _TERM_EPS * abs(total):
            return total
    raise QuadratureError(f"incomplete gamma series stalled at v={v}, z={z}")


def _upper_cf_scaled(v: float, z: float) -> float:
    # C such that Gamma(v, z) = z^v e^-z * C, by modified Lentz iteration.
    # Converges for z > 0; efficient once z >= v + 1.
    tiny = 1e-300
    b = z + 1.0 - v
    c = 1.0 / tiny
    d = 1.0 / b if b != 0.0 else 1.0 / tiny
    h = d
    for i in range(1, _MAX_TERMS):
        an = -i * (i - v)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) <= _TERM_EPS:
            return h
    raise QuadratureError(f"incomplete gamma fraction stalled at v={v}, z={z}")


def _upper_positive(v: float, z: float) -> float:
    # Gamma(v, z) for v > 0, z > 0. Tiny orders sit next to the v = 0 pole
    # of the complete gamma, where the series route cancels catastrophically;
    # they go to the continued fraction (z at least 1.5, any order), the
    # exponential integral (v below 1e-8), or one recurrence step down from
    # v + 1.
    if v < 0.01:
        if z >= 1.5:
            return math.exp(v * math.log(z) - z) * _upper_cf_scaled(v, z)
        if v < 1e-8:
            return _expint_e1(z)
        return (_upper_positive(v + 1.0, z) - math.exp(v * math.log(z) - z)) / v
    log_pre = v * math.log(z) - z
    if z < v + 1.0:
        lower = math.exp(log_pre) * _lower_series_scaled(v, z) if log_pre > -745.0 else 0.0
        return math.gamma(v) - lower
    return math.exp(log_pre) * _upper_cf_scaled(v, z)


def _expint_e1(z: float) -> float:
    # Gamma(0, z), the exponential integral E1.
    if z <= 1.0:
        total = -_EULER - math.log(z)
        term = 1.0
        for k in range(1, _MAX_TERMS):
            term *= -z / k
            contrib = -term / k
            total += contrib
            if abs(contrib) <= _TERM_EPS * abs(total):
                return total
        raise QuadratureError(f"E1 series stalled at z={z}")
    return math.exp(-z) * _upper_cf_scaled(0.0, z)


def upper_incomplete_gamma(v: float, z: float) -> float:
    """Upper incomplete gamma Gamma(v, z) = integral of w^(v-1) e^-w over [z, inf).

    v may be negative or zero provided z > 0; at z = 0 the integral only
    converges for v > 0, where it equals the complete gamma function.
    """
    if z < 0.0:
        raise DomainError(f"z must be nonnegative, got {z}")
    if z == 0.0:
        if v <= 0.0:
            raise DomainError(f"Gamma({v}, 0) diverges; need v > 0 at z = 0")
        return math.gamma(v)
    if v > 0.0:
        return _upper_positive(v, z)
    if z >= 1.5:
        # The continued fraction converges for any real order once z is
        # moderately large; the downward recurrence would lose a factor of
        # about z in precision per unit step here.
        return math.exp(v * math.log(z) - z) * _upper_cf_scaled(v, z)
    # Small z: anchor at v' = v + n in (0, 1], then step down one unit at a
    # time with Gamma(w - 1, z) = (Gamma(w, z) - z^(w-1) e^-z) / (w - 1).
    vp = v % 1.0
    if vp == 0.0:
        vp = 1.0
    n = round(vp - v)
    value = _upper_positive(vp, z)
    w = vp
    for _ in range(n):
        w -= 1.0
        if w == 0.0:
            value = _expint_e1(z)
        else:
            value = (value - math.exp(w * math.log(z) - z)) / w
    return value


def integrate(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    settings: QuadratureSettings | None = None,
) -> float:
    """Adaptive quadrature of f over (lo, hi); hi may be math.inf.

    Backed by QUADPACK (Gauss-Kronrod subdivision). Semi-infinite ranges are
    mapped onto (0, 1] by the rational transform w = lo + (1 - t) / t before
    subdivision. Raises QuadratureError when max_subdivisions is exhausted
    without reaching max(abs_tol, rel_tol * |result|).
    """
    s = settings if settings is not None else QuadratureSettings()
    if not lo < hi:
        raise DomainError(f"need lo < hi, got [{lo}, {hi}]")
    result = _sciint.quad(
        f,
        lo,
        hi,
        epsabs=s.abs_tol,
        epsrel=s.rel_tol,
        limit=s.max_subdivisions,
        full_output=True,
    )
    if len(result) > 3:  # QUADPACK appended a trouble message
        raise QuadratureError(str(result[3]).replace("\n", " ").strip())
    return float(result[0])
