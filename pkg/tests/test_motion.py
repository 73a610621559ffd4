"""Lead-screw quantization, profile kinematics and axis simulation."""

import pytest
from hypothesis import given, strategies as st

from rigsim.motion import (
    TRAPEZOID,
    TRIANGLE,
    Axis,
    AxisSpec,
    LeadScrewSpec,
    StepperSpec,
    displacement_to_steps,
    plan_trapezoid,
    rig_pose,
    simulate_move,
    steps_to_displacement,
)

DEFAULT = AxisSpec()  # 4-start 2 mm screw, 200x16 stepper, 600 mm travel


class TestQuantization:
    def test_one_rev_advances_by_lead(self):
        # lead = starts * pitch = 4 * 2 mm = 8 mm; one rev = 200*16 microsteps
        assert steps_to_displacement(3200, DEFAULT) == pytest.approx(0.008)

    def test_zero(self):
        assert displacement_to_steps(0.0, DEFAULT) == 0
        assert steps_to_displacement(0, DEFAULT) == 0.0

    def test_round_trip_error_bounded_by_half_microstep(self):
        # half a microstep = 8 mm / (2*3200) = 1.25 um at defaults
        half = 0.008 / 6400
        for d in (0.0001234, 0.1, 0.3141592, 0.59999, 0.25 - 1e-7):
            n = displacement_to_steps(d, DEFAULT)
            assert abs(d - steps_to_displacement(n, DEFAULT)) <= half + 1e-15

    @given(st.floats(-0.6, 0.6))
    def test_round_trip_property(self, d):
        n = displacement_to_steps(d, DEFAULT)
        assert abs(d - steps_to_displacement(n, DEFAULT)) <= DEFAULT.microstep_distance / 2 + 1e-15

    def test_displacement_beyond_travel_rejected(self):
        with pytest.raises(ValueError):
            displacement_to_steps(0.7, DEFAULT)

    def test_lead_is_starts_times_pitch(self):
        assert LeadScrewSpec(pitch=0.002, starts=4).lead == pytest.approx(0.008)
        assert LeadScrewSpec(pitch=0.003, starts=1).lead == pytest.approx(0.003)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            LeadScrewSpec(pitch=-0.002)
        with pytest.raises(ValueError):
            StepperSpec(microstepping=3)
        with pytest.raises(ValueError):
            AxisSpec(travel_min=0.5, travel_max=0.5)


class TestProfilePlanning:
    def test_boundary_distance_is_triangle_with_exact_time(self):
        v, a = 0.1, 0.5
        p = plan_trapezoid(v * v / a, v, a)
        assert p.shape == TRIANGLE
        assert p.t_cruise == 0.0
        assert p.t_total == pytest.approx(2 * v / a, rel=1e-9)

    def test_short_move_triangle_closed_form(self):
        # hand kinematics: t_accel = sqrt(0.02/0.5) = 0.2 s, total 0.4 s
        p = plan_trapezoid(0.02, v_max=0.1, a_max=0.5)
        assert p.shape == TRIANGLE
        assert p.t_total == pytest.approx(0.4, rel=1e-12)

    def test_zero_distance(self):
        p = plan_trapezoid(0.0, 0.1, 0.5)
        assert p.t_total == 0.0

    def test_long_move_is_trapezoid(self):
        p = plan_trapezoid(0.5, v_max=0.1, a_max=0.5)
        assert p.shape == TRAPEZOID
        assert p.t_accel == pytest.approx(0.2)
        assert p.t_cruise == pytest.approx((0.5 - 0.02) / 0.1)

    @given(
        distance=st.floats(1e-6, 2.0),
        v_max=st.floats(0.01, 1.0),
        a_max=st.floats(0.01, 5.0),
    )
    def test_profile_integrates_to_distance(self, distance, v_max, a_max):
        p = plan_trapezoid(distance, v_max, a_max)
        assert p.position(p.t_total) == pytest.approx(distance, rel=1e-9)
        # velocity never exceeds the commanded limit
        for frac in (0.1, 0.3, 0.5, 0.7, 0.9):
            assert p.velocity(frac * p.t_total) <= v_max * (1 + 1e-12)

    def test_quadrature_cross_check(self):
        # trapezoid-rule integral of velocity() agrees with position()
        p = plan_trapezoid(0.37, 0.1, 0.5)
        n = 20001
        dt = p.t_total / (n - 1)
        total = sum(
            0.5 * (p.velocity(i * dt) + p.velocity((i + 1) * dt)) * dt
            for i in range(n - 1)
        )
        assert total == pytest.approx(0.37, rel=1e-6)


class TestSimulateMove:
    def test_zero_distance_single_sample(self):
        p = plan_trapezoid(0.0, 0.1, 0.5)
        assert simulate_move(p, 1e-3) == [(0.0, 0.0, 0.0)]

    def test_final_sample_is_exact(self):
        p = plan_trapezoid(0.123, 0.1, 0.5)
        samples = simulate_move(p, 1e-3)
        t, s, v = samples[-1]
        assert t == pytest.approx(p.t_total)
        assert s == pytest.approx(0.123)
        assert v == 0.0

    def test_triangle_velocity_time_reversal_symmetry(self):
        p = plan_trapezoid(0.02, 0.1, 0.5)
        for t in (0.05, 0.1, 0.15, 0.19):
            assert p.velocity(t) == pytest.approx(p.velocity(p.t_total - t), abs=1e-9)

    def test_velocity_bounded(self):
        p = plan_trapezoid(0.4, 0.1, 0.5)
        for _, _, v in simulate_move(p, 1e-3):
            assert v <= 0.1 + 1e-12


class TestAxis:
    def _axis(self):
        axis = Axis("x")
        axis.home()
        return axis

    def test_unhomed_move_rejected(self):
        axis = Axis("x")
        with pytest.raises(RuntimeError):
            axis.move_to(0.1)

    def test_target_outside_travel_rejected_before_motion(self):
        axis = self._axis()
        with pytest.raises(ValueError):
            axis.move_to(0.75)
        assert axis.position == 0.0  # no motion happened

    def test_final_position_within_one_microstep(self):
        axis = self._axis()
        target = 0.2345678
        axis.move_to(target)
        assert abs(axis.position - target) <= axis.spec.microstep_distance

    def test_position_is_exact_microstep_multiple(self):
        axis = self._axis()
        axis.move_to(0.1)
        axis.move_to(0.2971)
        ratio = axis.position / axis.spec.microstep_distance
        assert ratio == pytest.approx(round(ratio), abs=1e-9)

    def test_reverse_move(self):
        axis = self._axis()
        axis.move_to(0.3)
        trajectory = axis.move_to(0.1)
        assert axis.position == pytest.approx(0.1, abs=1e-6)
        assert trajectory[0][1] == pytest.approx(0.3)
        # velocities are negative on the way down
        assert min(v for _, _, v in trajectory) < 0

    def test_trajectory_monotone_time(self):
        axis = self._axis()
        trajectory = axis.move_to(0.05)
        times = [t for t, _, _ in trajectory]
        assert all(b > a for a, b in zip(times, times[1:]))


class TestRigPose:
    def _rig(self):
        axes = [Axis(name) for name in "xyz"]
        for a in axes:
            a.home()
        return axes

    def test_origin(self):
        x, y, z = self._rig()
        assert rig_pose(x, y, z) == (0.0, 0.0, 0.0)

    def test_pose_is_componentwise(self):
        x, y, z = self._rig()
        x.move_to(0.1)
        y.move_to(0.2)
        z.move_to(0.05)
        assert rig_pose(x, y, z) == (x.position, y.position, z.position)

    def test_axes_commute(self):
        x1, y1, z1 = self._rig()
        x1.move_to(0.1)
        y1.move_to(0.2)
        x2, y2, z2 = self._rig()
        y2.move_to(0.2)
        x2.move_to(0.1)
        assert rig_pose(x1, y1, z1) == rig_pose(x2, y2, z2)

    def test_unhomed_pose_rejected(self):
        x, y, z = self._rig()
        z.homed = False
        with pytest.raises(RuntimeError):
            rig_pose(x, y, z)
