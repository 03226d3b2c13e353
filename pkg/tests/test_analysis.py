import dataclasses
import math

import numpy as np
import pytest

from eelink import (
    METHOD_CLOSED,
    METHOD_EXACT,
    DomainError,
    QosSpec,
    analyze,
    delay_outage_estimate,
    derived_constants,
    ee_trend,
    effective_capacity,
    energy_efficiency,
    gamma_fn,
    mean_service_rate,
    mode_probabilities,
    service_mgf,
    total_power,
)

# Values frozen from 40-digit evaluation of the closed forms.
ALPHA_REF = 1519677.5422946024          # theta 1e-4, gamma0 0.5323
EE_REF = 106223.13552537811
EE0_REF = 104773.27076544819
MGF_AT_1 = 0.91687443628970887          # theta 1e-4, gamma0 1.0, by quadrature
TREND_AT_025 = 0.14942636298342384
TREND_AT_1 = -0.014368757787333229


class TestEffectiveCapacity:
    def test_published_operating_point(self, params, qos_1e4):
        alpha = effective_capacity(params, qos_1e4, 0.5323)
        assert alpha == pytest.approx(1519.7e3, rel=1e-3)
        assert alpha == pytest.approx(ALPHA_REF, rel=1e-10)

    def test_vanishes_for_large_threshold(self, params, qos_1e4):
        values = [effective_capacity(params, qos_1e4, g) for g in (2.0, 4.0, 8.0, 16.0, 32.0)]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert values[-1] < 1e-3

    def test_methods_agree(self, params, qos_1e4):
        exact = effective_capacity(params, qos_1e4, 1.0, METHOD_EXACT)
        closed = effective_capacity(params, qos_1e4, 1.0, METHOD_CLOSED)
        # The closed form replaces 1 + snr*g by snr*g inside the integral;
        # the measured gap at this point is 1.63e-5, frozen as a regression
        # bound.
        assert abs(exact - closed) / exact < 2e-5

    def test_nonincreasing_in_threshold(self, params, qos_1e4):
        for method in (METHOD_CLOSED, METHOD_EXACT):
            grid = [0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0]
            values = [effective_capacity(params, qos_1e4, g, method) for g in grid]
            assert all(a >= b for a, b in zip(values, values[1:]))

    def test_nonincreasing_in_theta(self, params):
        for method in (METHOD_CLOSED, METHOD_EXACT):
            values = [
                effective_capacity(params, QosSpec(theta=t), 0.5, method)
                for t in (1e-7, 1e-6, 1e-5, 1e-4, 1e-3)
            ]
            assert all(a >= b for a, b in zip(values, values[1:]))

    def test_mean_rate_limit(self, params):
        tiny = QosSpec(theta=1e-9)
        for g in (0.0, 0.5):
            assert effective_capacity(params, tiny, g) == pytest.approx(
                mean_service_rate(params, g), rel=1e-3
            )

    def test_closed_form_requires_m2(self, params, qos_1e4):
        rayleigh = dataclasses.replace(params, fading_m=1.0)
        with pytest.raises(DomainError):
            effective_capacity(rayleigh, qos_1e4, 0.5, METHOD_CLOSED)
        assert effective_capacity(rayleigh, qos_1e4, 0.5, METHOD_EXACT) > 0.0

    def test_unknown_method(self, params, qos_1e4):
        with pytest.raises(DomainError):
            effective_capacity(params, qos_1e4, 0.5, "closed_form")

    def test_closed_form_domain_edge_at_zero(self, params):
        c = derived_constants(params)
        too_strict = QosSpec(theta=-2.2 / c.exponent_rate)
        with pytest.raises(DomainError):
            effective_capacity(params, too_strict, 0.0, METHOD_CLOSED)
        # Away from zero the incomplete gamma handles the negative order.
        assert effective_capacity(params, too_strict, 0.5, METHOD_CLOSED) > 0.0


class TestModesAndPower:
    def test_zero_threshold(self, params):
        assert mode_probabilities(params, 0.0) == (1.0, 0.0)

    def test_published_threshold(self, params):
        p_tr, p_idle = mode_probabilities(params, 0.5323)
        assert p_tr == pytest.approx(0.7120098759495865, abs=1e-10)
        assert p_tr + p_idle == 1.0

    def test_deep_gating(self, params):
        p_tr, p_idle = mode_probabilities(params, 40.0)
        assert p_tr < 1e-12
        assert p_idle > 1.0 - 1e-12

    def test_total_power_endpoints(self, params):
        assert total_power(params, 0.0) == pytest.approx(20.0526231496888, rel=1e-13)
        assert total_power(params, 40.0) == pytest.approx(params.circuit_power, abs=1e-12)

    def test_equal_mode_powers_collapse(self, params):
        flat = dataclasses.replace(params, tx_power=2.0, idle_power=2.0)
        values = {total_power(flat, g) for g in (0.0, 0.5, 1.0, 3.0)}
        assert values == {flat.circuit_power + 2.0}


class TestEnergyEfficiency:
    def test_published_rows(self, params):
        assert energy_efficiency(params, QosSpec(theta=1e-4), 0.5323) == pytest.approx(
            1.0623e5, rel=5e-3
        )
        assert energy_efficiency(params, QosSpec(theta=1e-4), 0.0) == pytest.approx(
            1.0478e5, rel=5e-3
        )
        assert energy_efficiency(params, QosSpec(theta=1e-6), 1.6606) == pytest.approx(
            1.1544e5, rel=5e-3
        )

    def test_frozen_values(self, params, qos_1e4):
        assert energy_efficiency(params, qos_1e4, 0.5323) == pytest.approx(EE_REF, rel=1e-10)
        assert energy_efficiency(params, qos_1e4, 0.0) == pytest.approx(EE0_REF, rel=1e-10)

    def test_strategy_off_consistency(self, params, qos_1e4):
        alpha0 = effective_capacity(params, qos_1e4, 0.0)
        assert energy_efficiency(params, qos_1e4, 0.0) == alpha0 / (
            params.circuit_power + params.tx_power
        )


class TestServiceMgf:
    def test_zero_threshold_boundary_value(self, params, qos_1e4):
        c = derived_constants(params)
        a = c.exponent_rate * qos_1e4.theta
        expected = math.exp(a * math.log(c.mean_snr / 2.0)) * gamma_fn(2.0 + a)
        assert service_mgf(params, qos_1e4, 0.0) == pytest.approx(expected, rel=1e-12)

    def test_tends_to_one(self, params, qos_1e4):
        assert 0.999999 < service_mgf(params, qos_1e4, 16.0) < 1.0

    def test_derived_value(self, params, qos_1e4):
        assert service_mgf(params, qos_1e4, 1.0) == pytest.approx(MGF_AT_1, rel=1e-10)

    @pytest.mark.parametrize("theta", [1e-6, 1e-5, 1e-4, 1e-3])
    def test_monotone_and_bounded(self, params, theta):
        qos = QosSpec(theta=theta)
        step = 1e-3
        grid = np.arange(0.0, 10.0 + step / 2, step)
        values = np.array([service_mgf(params, qos, float(g)) for g in grid])
        assert np.all(np.diff(values) > 0.0)
        assert np.all(values[1:] > 0.0) and np.all(values[1:] < 1.0)


class TestTrendIndicator:
    def test_signs_at_published_points(self, params, qos_1e4):
        assert ee_trend(params, qos_1e4, 0.25) > 0.0
        assert ee_trend(params, qos_1e4, 1.0) < 0.0

    def test_frozen_values(self, params, qos_1e4):
        assert ee_trend(params, qos_1e4, 0.25) == pytest.approx(TREND_AT_025, rel=1e-10)
        assert ee_trend(params, qos_1e4, 1.0) == pytest.approx(TREND_AT_1, rel=1e-9)

    def test_strict_qos_always_negative(self, params):
        qos = QosSpec(theta=1e-3)
        for g in np.logspace(-3, math.log10(20.0), 40):
            assert ee_trend(params, qos, float(g)) < 0.0

    def test_sign_matches_ee_slope(self, params):
        # Centered difference of EE against the indicator, skipping points
        # within 1e-4 of an indicator zero.
        h = 1e-5
        for theta in (1e-6, 1e-5, 1e-4, 1e-3):
            qos = QosSpec(theta=theta)
            for g in np.arange(0.05, 5.0001, 0.05):
                g = float(g)
                near_zero = (
                    math.copysign(1.0, ee_trend(params, qos, g - 1e-4))
                    != math.copysign(1.0, ee_trend(params, qos, g + 1e-4))
                )
                if near_zero:
                    continue
                slope = energy_efficiency(params, qos, g + h) - energy_efficiency(
                    params, qos, g - h
                )
                assert math.copysign(1.0, slope) == math.copysign(
                    1.0, ee_trend(params, qos, g)
                ), f"sign mismatch at theta={theta}, gamma0={g}"


class TestDelayOutage:
    def test_no_decay(self):
        qos = QosSpec(theta=1e-4, delay_bound=1.0)
        assert delay_outage_estimate(qos, 1.0, 0.0) == 1.0

    def test_empty_buffer(self):
        qos = QosSpec(theta=1e-4, delay_bound=1.0)
        assert delay_outage_estimate(qos, 0.0, 500.0) == 0.0

    def test_direct_evaluation(self):
        qos = QosSpec(theta=1e-4, delay_bound=0.01)
        assert delay_outage_estimate(qos, 0.5, 230.0) == pytest.approx(
            0.5 * math.exp(-2.3), rel=1e-12
        )

    def test_missing_bound(self):
        with pytest.raises(DomainError):
            delay_outage_estimate(QosSpec(theta=1e-4), 0.5, 100.0)

    def test_bad_probability(self):
        qos = QosSpec(theta=1e-4, delay_bound=0.01)
        with pytest.raises(DomainError):
            delay_outage_estimate(qos, 1.5, 100.0)


class TestAnalyze:
    def test_bundle_consistency(self, params, qos_1e4):
        r = analyze(params, qos_1e4, 0.5323)
        assert r.ee == r.effective_capacity / r.total_power
        assert r.p_tr + r.p_idle == 1.0
        assert r.log_mgf == pytest.approx(math.log(r.service_mgf), rel=1e-12)
        assert 0.0 < r.service_mgf < 1.0

    def test_general_m_has_no_closed_fields(self, params, qos_1e4):
        rician_like = dataclasses.replace(params, fading_m=3.0)
        r = analyze(rician_like, qos_1e4, 0.5, method=METHOD_EXACT)
        assert r.service_mgf is None and r.ee_trend is None
        assert r.effective_capacity > 0.0


class TestQosSpec:
    def test_validation(self):
        with pytest.raises(DomainError):
            QosSpec(theta=0.0)
        with pytest.raises(DomainError):
            QosSpec(theta=-1e-4)
        with pytest.raises(DomainError):
            QosSpec(theta=1e-4, delay_bound=0.0)
