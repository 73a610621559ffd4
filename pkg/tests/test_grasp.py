"""PID unit behaviour and closed-loop checks against loop algebra."""

import numpy as np
import pytest

from rigsim.errors import UnstableLoopError
from rigsim.fuzzy import default_grasp_fuzzy
from rigsim.grasp import (
    ContactPlant,
    PidGains,
    PidState,
    grasp_simulate,
    kp_only_steady_state_error,
    pid_step,
)
from rigsim.sensors import FsrSpec

PLANT = ContactPlant()          # 2000 N/m, 50 g, critically damped
DT = 2e-4                       # well under the 0.1*sqrt(m/k) bound
GRASP_FSR = FsrSpec(full_load_force=50.0)


class TestPidStep:
    def test_proportional_only(self):
        u = pid_step(PidGains(kp=1.0), PidState(), error=0.5, dt=0.01)
        assert u == 0.5

    def test_zero_error_history_zero_output(self):
        gains = PidGains(kp=2.0, ki=1.0, kd=0.5)
        state = PidState()
        for _ in range(100):
            assert pid_step(gains, state, 0.0, 0.01) == 0.0

    def test_zero_gains_zero_output(self):
        state = PidState()
        for e in (1.0, -3.0, 100.0):
            assert pid_step(PidGains(), state, e, 0.01) == 0.0

    def test_integral_ramps_then_clamps(self):
        # constant error, ki only: u grows linearly until the clamp
        gains = PidGains(ki=1.0)
        state = PidState(output_limits=(0.0, 0.5))
        dt = 0.1
        outputs = [pid_step(gains, state, 1.0, dt) for _ in range(20)]
        for i in range(4):  # ramp: u = (i+1)*dt
            assert outputs[i] == pytest.approx((i + 1) * dt, rel=1e-12)
        assert all(u == pytest.approx(0.5) for u in outputs[6:])

    def test_derivative_backward_difference(self):
        gains = PidGains(kd=1.0)
        state = PidState()
        assert pid_step(gains, state, 1.0, 0.1) == 0.0  # no previous error yet
        assert pid_step(gains, state, 2.0, 0.1) == pytest.approx(10.0)

    def test_negative_gains_rejected(self):
        with pytest.raises(ValueError):
            PidGains(kp=-1.0)

    def test_bad_dt_rejected(self):
        with pytest.raises(ValueError):
            pid_step(PidGains(kp=1.0), PidState(), 1.0, 0.0)


class TestClosedLoop:
    def test_zero_setpoint_zero_trace(self):
        trace = grasp_simulate(
            PLANT, PidGains(kp=4.0, ki=20.0), lambda t: 0.0,
            duration=0.5, dt=DT, fsr=GRASP_FSR,
        )
        assert np.all(trace.desired == 0.0)
        assert np.all(trace.applied == 0.0)
        assert np.all(trace.contact == 0.0)
        assert np.all(trace.error == 0.0)

    def test_kp_only_matches_loop_algebra(self):
        setpoint = 10.0
        kp = 4.0
        trace = grasp_simulate(
            PLANT, PidGains(kp=kp), lambda t: setpoint, duration=1.0, dt=DT,
        )
        expected = kp_only_steady_state_error(setpoint, kp, PLANT)
        assert trace.error[-1] == pytest.approx(expected, rel=1e-2)

    def test_integral_action_removes_steady_state_error(self):
        setpoint = 10.0
        trace = grasp_simulate(
            PLANT, PidGains(kp=4.0, ki=20.0), lambda t: setpoint,
            duration=2.0, dt=DT,
        )
        assert trace.steady_state_error < 1e-3 * setpoint

    def test_fsr_measurement_path_still_converges(self):
        setpoint = 10.0
        trace = grasp_simulate(
            PLANT, PidGains(kp=4.0, ki=20.0), lambda t: setpoint,
            duration=2.0, dt=DT, fsr=GRASP_FSR,
        )
        assert trace.steady_state_error < 1e-3 * setpoint
        assert trace.contact[-1] == pytest.approx(setpoint, rel=1e-2)

    def test_bit_identical_repeat_runs(self):
        def run():
            return grasp_simulate(
                PLANT, PidGains(kp=4.0, ki=20.0), lambda t: 8.0 + 2.0 * np.sin(5 * t),
                duration=0.5, dt=DT, fsr=GRASP_FSR,
            )
        a, b = run(), run()
        assert np.array_equal(a.contact, b.contact)
        assert np.array_equal(a.error, b.error)
        assert np.array_equal(a.applied, b.applied)

    def test_fuzzy_driven_setpoint(self):
        system = default_grasp_fuzzy()
        trace = grasp_simulate(
            PLANT, PidGains(kp=4.0, ki=20.0),
            lambda t: (0.3, 0.15, 0.05), duration=1.0, dt=DT,
            fuzzy_system=system, fsr=GRASP_FSR,
        )
        # center inputs demand the center of the force universe
        assert trace.desired[-1] == pytest.approx(25.0, abs=1e-9)
        assert trace.contact[-1] == pytest.approx(25.0, rel=1e-2)

    def test_unstable_loop_aborts_with_diagnostic(self):
        # destabilize with a huge derivative gain on a stiff plant
        wild = ContactPlant(object_stiffness=2e4, object_mass=0.01)
        with pytest.raises(UnstableLoopError):
            grasp_simulate(
                wild, PidGains(kp=2000.0, kd=50.0), lambda t: 10.0,
                duration=2.0, dt=wild.max_stable_dt * 0.99,
            )

    def test_too_coarse_dt_rejected(self):
        with pytest.raises(ValueError):
            grasp_simulate(PLANT, PidGains(kp=1.0), lambda t: 1.0,
                           duration=0.1, dt=1.0)

    def test_trace_rows_shape(self):
        trace = grasp_simulate(PLANT, PidGains(kp=1.0), lambda t: 1.0,
                               duration=0.01, dt=DT)
        rows = list(trace.rows())
        assert len(rows) == len(trace.t)
        assert len(rows[0]) == 5

    def test_gain_schedule_hook(self):
        # scheduled gains override the static ones step by step
        setpoint = 10.0
        static = grasp_simulate(PLANT, PidGains(kp=2.0), lambda t: setpoint,
                                duration=1.0, dt=DT)
        scheduled = grasp_simulate(
            PLANT, PidGains(kp=2.0), lambda t: setpoint, duration=1.0, dt=DT,
            gain_schedule=lambda t, e: PidGains(kp=8.0),
        )
        # higher scheduled kp means a smaller steady-state error
        assert abs(scheduled.error[-1]) < abs(static.error[-1])
        expected = kp_only_steady_state_error(setpoint, 8.0, PLANT)
        assert scheduled.error[-1] == pytest.approx(expected, rel=1e-2)
