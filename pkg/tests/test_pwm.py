"""Test the servo command signal: calibration maps, waveform rendering and pulse
measurement.
"""
import gymnasium as gym
import numpy as np
import pytest
from gymnasium.logger import ERROR
from hypothesis import given, settings
from hypothesis import strategies as st

from paranav.common.exceptions import (
    ConfigValidationError,
    DomainError,
    MeasurementError,
)
from paranav.core.pwm import (
    DATASHEET,
    MEASURED,
    PwmConfig,
    ServoCalibration,
    angle_to_pulse,
    measure_pulse_width,
    positive_duty,
    pulse_samples,
    pulse_to_angle,
    render_waveform,
    samples_per_period,
    waveform_rows,
)

gym.logger.set_level(ERROR)

SAMPLE_MS = 1e-3  # One sample at 1 MHz.


@pytest.fixture
def cfg():
    """Default 20 ms, 1 MHz signal configuration."""
    return PwmConfig()


class TestCalibration:
    @pytest.mark.parametrize(
        "calibration, angle, pulse",
        [
            (DATASHEET, 0.0, 1.0),
            (DATASHEET, 90.0, 1.5),
            (DATASHEET, 180.0, 2.0),
            (MEASURED, 90.0, 1.020),
            (MEASURED, 180.0, 2.040),
        ],
    )
    def test_angle_to_pulse(self, calibration, angle, pulse):
        assert angle_to_pulse(angle, calibration) == pytest.approx(pulse, abs=1e-12)

    @pytest.mark.parametrize(
        "calibration, pulse, angle",
        [(DATASHEET, 1.5, 90.0), (MEASURED, 2.040, 180.0), (DATASHEET, 1.0, 0.0)],
    )
    def test_pulse_to_angle(self, calibration, pulse, angle):
        assert pulse_to_angle(pulse, calibration) == pytest.approx(angle, abs=1e-9)

    def test_angles_are_clamped(self):
        assert angle_to_pulse(-30.0) == angle_to_pulse(0.0)
        assert angle_to_pulse(250.0) == angle_to_pulse(180.0)
        assert pulse_to_angle(5.0) == pytest.approx(180.0)
        assert pulse_to_angle(0.1) == pytest.approx(0.0)

    @pytest.mark.parametrize("calibration", [DATASHEET, MEASURED])
    def test_round_trip(self, calibration):
        for angle in np.linspace(0.0, 180.0, 1801):
            pulse = angle_to_pulse(angle, calibration)
            assert abs(pulse_to_angle(pulse, calibration) - angle) <= 1e-9

    def test_from_name(self):
        assert ServoCalibration.from_name("Measured") is MEASURED
        with pytest.raises(ConfigValidationError, match="Unknown calibration"):
            ServoCalibration.from_name("vendor")

    def test_invalid_points(self):
        with pytest.raises(ConfigValidationError):
            ServoCalibration((90.0, 1.0), (90.0, 2.0))
        with pytest.raises(ConfigValidationError):
            ServoCalibration((0.0, -1.0), (180.0, 2.0))

    def test_pulse_must_fit_the_period(self):
        slow = ServoCalibration((0.0, 1.0), (180.0, 25.0))
        assert slow.violations(period=20.0)
        assert DATASHEET.violations(period=20.0) == []


class TestRender:
    def test_one_millisecond_pulse(self, cfg):
        w = render_waveform(1.0, cfg)
        assert samples_per_period(cfg) == 20_000
        assert len(w.samples) == 20_000
        assert w.samples[:1000].all()
        assert not w.samples[1000:].any()
        assert w.n_periods == 1

    def test_zero_pulse(self, cfg):
        w = render_waveform(0.0, cfg)
        assert not w.samples.any()
        assert w.positive_duty == 0.0

    def test_positive_duty(self, cfg):
        w = render_waveform(2.040, cfg)
        assert w.positive_duty == pytest.approx(0.102, abs=1.0 / 20_000)
        assert positive_duty(2.040, cfg) == pytest.approx(0.102)
        assert pulse_samples(2.040, cfg) == 2040

    @pytest.mark.parametrize("n_periods", [1, 3, 7])
    def test_period_preservation(self, cfg, n_periods):
        w = render_waveform(1.5, cfg, n_periods=n_periods)
        assert len(w.samples) == n_periods * samples_per_period(cfg)
        assert w.n_periods == n_periods

    @pytest.mark.parametrize("pulse", [20.0, 25.0, -0.5])
    def test_invalid_pulse(self, cfg, pulse):
        with pytest.raises(DomainError):
            render_waveform(pulse, cfg)

    def test_invalid_period_count(self, cfg):
        with pytest.raises(DomainError):
            render_waveform(1.0, cfg, n_periods=0)

    def test_config_needs_enough_samples(self):
        with pytest.raises(ConfigValidationError):
            PwmConfig(period=20.0, sample_rate=1000.0)
        with pytest.raises(ConfigValidationError):
            PwmConfig(period=0.0)

    def test_waveform_rows(self):
        cfg = PwmConfig(period=1.0, sample_rate=100_000.0)
        rows = list(waveform_rows(render_waveform(0.2, cfg)))
        assert len(rows) == 100
        assert rows[0] == (0, 1) and rows[19] == (19, 1) and rows[20] == (20, 0)


class TestMeasure:
    @pytest.mark.parametrize("pulse", [1.5, 2.040, 1.020])
    def test_measure_rendered_pulse(self, cfg, pulse):
        measured = measure_pulse_width(render_waveform(pulse, cfg, n_periods=3), cfg)
        assert measured == pytest.approx(pulse, abs=SAMPLE_MS)

    def test_all_low(self, cfg):
        with pytest.raises(MeasurementError):
            measure_pulse_width(render_waveform(0.0, cfg), cfg)

    @settings(max_examples=1000, deadline=None)
    @given(pulse=st.floats(min_value=0.5, max_value=2.5))
    def test_round_trip(self, pulse):
        cfg = PwmConfig()
        measured = measure_pulse_width(render_waveform(pulse, cfg), cfg)
        assert abs(measured - pulse) <= SAMPLE_MS

    @pytest.mark.parametrize(
        "calibration, angle, pulse",
        [
            (MEASURED, 180.0, 2.040),
            (MEASURED, 90.0, 1.020),
            (DATASHEET, 0.0, 1.0),
            (DATASHEET, 90.0, 1.5),
            (DATASHEET, 180.0, 2.0),
        ],
    )
    def test_timing_reproduction(self, cfg, calibration, angle, pulse):
        """Oscilloscope style cursor readings of the commanded signal."""
        w = render_waveform(angle_to_pulse(angle, calibration), cfg)
        assert measure_pulse_width(w, cfg) == pytest.approx(pulse, abs=0.001)
        assert len(w.samples) == 20_000
