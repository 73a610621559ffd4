"""Ultrasonic, FSR and encoder model checks."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rigsim.sensors import (
    EncoderSpec,
    FsrSpec,
    UltrasonicSensor,
    UltrasonicSpec,
    disturbance_detect,
    distance_from_echo,
    echo_time,
    encoder_speed,
    fsr_force,
    fsr_measured_force,
    fsr_resistance,
    fsr_voltage,
)

US = UltrasonicSpec()
FSR = FsrSpec()


class TestUltrasonic:
    def test_echo_time_hand_value(self):
        # t = 2*0.343/343 = 2.000 ms
        assert echo_time(0.343, US) == pytest.approx(2.000e-3, rel=1e-9)

    def test_round_trip_exact(self):
        for d in (0.05, 0.343, 1.234, 1.9999):
            assert distance_from_echo(echo_time(d, US), US) == pytest.approx(d, rel=1e-12)

    def test_beyond_range_is_no_echo(self):
        assert echo_time(2.5, US) is None
        assert distance_from_echo(2 * 3.0 / US.speed_of_sound, US) is None

    def test_nonpositive_inputs_rejected(self):
        with pytest.raises(ValueError):
            echo_time(0.0, US)
        with pytest.raises(ValueError):
            distance_from_echo(-1e-3, US)

    def test_carrier_band_enforced(self):
        with pytest.raises(ValueError):
            UltrasonicSpec(carrier_frequency=10e3)
        with pytest.raises(ValueError):
            UltrasonicSpec(carrier_frequency=250e3)

    def test_noiseless_sensor_is_identity(self):
        sensor = UltrasonicSensor(US, seed=1)
        assert sensor.measure(0.5) == 0.5
        assert sensor.measure(3.0) is None

    def test_seeded_noise_reproducible(self):
        spec = UltrasonicSpec(noise_std=0.01)
        a = UltrasonicSensor(spec, seed=42)
        b = UltrasonicSensor(spec, seed=42)
        readings_a = [a.measure(0.5) for _ in range(10)]
        readings_b = [b.measure(0.5) for _ in range(10)]
        assert readings_a == readings_b
        assert len(set(readings_a)) > 1  # noise actually varies


class TestFsr:
    def test_no_load_resistance_above_one_megohm(self):
        assert fsr_resistance(0.0, FSR) >= 1e6

    def test_full_load_resistance(self):
        assert fsr_resistance(FSR.full_load_force, FSR) == pytest.approx(2.5e3, rel=1e-12)

    def test_strictly_decreasing_on_unclamped_range(self):
        forces = np.linspace(FSR.min_resolvable_force * 1.01, FSR.full_load_force, 100)
        rs = [fsr_resistance(float(f), FSR) for f in forces]
        assert all(a > b for a, b in zip(rs, rs[1:]))

    @given(st.floats(0.01, 1.0))
    def test_round_trip_on_unclamped_range(self, frac):
        f = FSR.min_resolvable_force + frac * (FSR.full_load_force - FSR.min_resolvable_force)
        assert fsr_force(fsr_resistance(f, FSR), FSR) == pytest.approx(f, rel=1e-9)

    def test_force_outside_resistance_range_rejected(self):
        with pytest.raises(ValueError):
            fsr_force(FSR.r_no_load * 2, FSR)
        with pytest.raises(ValueError):
            fsr_force(FSR.r_full_load / 2, FSR)

    def test_measured_force_conventions(self):
        assert fsr_measured_force(0.0, FSR) == 0.0
        # saturates at full load
        assert fsr_measured_force(2 * FSR.full_load_force, FSR) == pytest.approx(
            FSR.full_load_force
        )
        assert fsr_measured_force(5.0, FSR) == pytest.approx(5.0, rel=1e-9)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            FsrSpec(r_no_load=5e5)  # must exceed 1 MOhm
        with pytest.raises(ValueError):
            FsrSpec(r_full_load=2e7)
        with pytest.raises(ValueError):
            FsrSpec(exponent=0.0)


class TestFsrVoltage:
    def test_divider_value(self):
        assert fsr_voltage(2.5e3, 1e4, 5.0) == pytest.approx(4.0, rel=1e-12)

    def test_equal_divider_halves_supply(self):
        assert fsr_voltage(1e4, 1e4, 5.0) == pytest.approx(2.5)

    def test_open_circuit_limit(self):
        assert fsr_voltage(1e12, 1e4, 5.0) < 1e-6

    def test_strictly_decreasing_in_r(self):
        rs = np.logspace(3, 7, 50)
        vs = [fsr_voltage(float(r), 1e4, 5.0) for r in rs]
        assert all(a > b for a, b in zip(vs, vs[1:]))


class TestEncoder:
    def test_one_rev_per_second(self):
        assert encoder_speed(20, 1.0, EncoderSpec(20)) == pytest.approx(1.0)

    def test_zero_pulses(self):
        assert encoder_speed(0, 1.0, EncoderSpec(20)) == 0.0

    def test_quantization_bound(self):
        # 1.5 rev/s over 0.1 s with 20 slots: count is 3 +- 1
        spec = EncoderSpec(20)
        true_speed = 1.5
        window = 0.1
        pulses = int(true_speed * spec.slots_per_rev * window)
        resolution = 1 / (spec.slots_per_rev * window)
        assert abs(encoder_speed(pulses, window, spec) - true_speed) <= resolution

    def test_bad_window_rejected(self):
        with pytest.raises(ValueError):
            encoder_speed(10, 0.0, EncoderSpec(20))


class TestDisturbance:
    def test_no_change(self):
        assert not disturbance_detect(0.5, 0.5, 0.05)

    def test_boundary_is_strict(self):
        # exactly representable offset equal to the threshold
        assert not disturbance_detect(0.5, 0.75, 0.25)

    def test_detects_offset(self):
        assert disturbance_detect(0.5, 0.4, 0.05)

    def test_bad_threshold(self):
        with pytest.raises(ValueError):
            disturbance_detect(0.5, 0.4, 0.0)
