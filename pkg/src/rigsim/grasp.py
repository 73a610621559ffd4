"""
Grasp-force control loop: discrete-time PID tracking a desired contact
force against a 1-D spring/mass contact plant, with the force read back
through the FSR resistance map.

The loop is a pure step function over explicit state, so repeated runs of
the same configuration produce bit-identical traces.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnstableLoopError
from .fuzzy import FuzzySystem, fuzzy_desired_force
from .sensors import FsrSpec, fsr_measured_force

# abort when the contact force diverges this far past the force universe
DIVERGENCE_FACTOR = 10.0


@dataclass(frozen=True)
class PidGains:
    kp: float = 0.0
    ki: float = 0.0
    kd: float = 0.0

    def __post_init__(self):
        if self.kp < 0 or self.ki < 0 or self.kd < 0:
            raise ValueError("PID gains must be >= 0")


@dataclass
class PidState:
    integral: float = 0.0
    prev_error: float | None = None
    output_limits: tuple | None = None  # (lo, hi), either may be None


def pid_step(gains: PidGains, state: PidState, error: float, dt: float) -> float:
    """
    One controller update: u = kp*e + ki*int(e) + kd*de/dt.

    Backward-difference derivative (zero on the first call); the integral is
    clamped so its own contribution stays inside the output limits, which
    stops windup while the output saturates.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    derivative = 0.0 if state.prev_error is None else (error - state.prev_error) / dt
    state.prev_error = error
    state.integral += error * dt
    lo, hi = state.output_limits if state.output_limits else (None, None)
    if gains.ki > 0:
        if hi is not None:
            state.integral = min(state.integral, hi / gains.ki)
        if lo is not None:
            state.integral = max(state.integral, lo / gains.ki)
    u = gains.kp * error + gains.ki * state.integral + gains.kd * derivative
    if hi is not None:
        u = min(u, hi)
    if lo is not None:
        u = max(u, lo)
    return u


@dataclass(frozen=True)
class ContactPlant:
    """
    Gripper finger pressing an elastic object: m*x'' = F_applied - k*x - c*x'
    while in contact (x > 0), free otherwise.  DC force transmission is
    unity, so at equilibrium the contact force equals the applied force.
    """
    object_stiffness: float = 2000.0   # N/m
    object_mass: float = 0.05          # kg
    friction_coefficient: float = 0.5
    actuator_gain: float = 1.0         # N per volt of drive
    damping_ratio: float = 1.0         # of the contact resonance

    def __post_init__(self):
        if min(self.object_stiffness, self.object_mass,
               self.friction_coefficient, self.actuator_gain) <= 0:
            raise ValueError("plant parameters must be positive")
        if self.damping_ratio <= 0:
            raise ValueError("damping_ratio must be positive")

    @property
    def damping(self) -> float:
        return 2 * self.damping_ratio * math.sqrt(self.object_stiffness * self.object_mass)

    @property
    def max_stable_dt(self) -> float:
        return 0.1 * math.sqrt(self.object_mass / self.object_stiffness)

    def contact_force(self, x: float) -> float:
        return self.object_stiffness * x if x > 0 else 0.0


@dataclass
class GraspTrace:
    t: np.ndarray
    desired: np.ndarray   # N
    applied: np.ndarray   # N, actuator output
    contact: np.ndarray   # N, true plant contact force
    error: np.ndarray     # N, desired - measured

    def rows(self):
        for i in range(len(self.t)):
            yield (self.t[i], self.desired[i], self.applied[i],
                   self.contact[i], self.error[i])

    @property
    def steady_state_error(self) -> float:
        """Mean |error| over the final 10 % of the run."""
        tail = max(1, len(self.error) // 10)
        return float(np.mean(np.abs(self.error[-tail:])))


def grasp_simulate(
    plant: ContactPlant,
    gains: PidGains,
    setpoint,
    duration: float,
    dt: float,
    fuzzy_system: FuzzySystem | None = None,
    fsr: FsrSpec | None = None,
    output_limits: tuple | None = None,
    force_universe: float = 50.0,
    gain_schedule=None,
) -> GraspTrace:
    """
    Run the closed loop for the given duration.

    setpoint(t) returns either the desired force directly (N) or, when a
    fuzzy_system is supplied, the (target_position, relative_depth, speed)
    triple that the fuzzy stage turns into the desired force.  With an
    FsrSpec the controller sees the force as read back through the sensor
    map; otherwise it sees the true contact force.

    gain_schedule, if given, is called as gain_schedule(t, error) each step
    and returns the PidGains to apply for that step; the force-setpoint path
    above stays the primary mode of operation.

    Raises UnstableLoopError if the contact force diverges beyond
    DIVERGENCE_FACTOR * force_universe.
    """
    if dt <= 0 or duration <= 0:
        raise ValueError("duration and dt must be positive")
    if dt >= plant.max_stable_dt:
        raise ValueError(
            f"dt {dt} too coarse for the contact dynamics; "
            f"need dt < {plant.max_stable_dt:.3e}"
        )
    n = int(round(duration / dt)) + 1
    t_arr = np.empty(n)
    desired_arr = np.empty(n)
    applied_arr = np.empty(n)
    contact_arr = np.empty(n)
    error_arr = np.empty(n)

    state = PidState(output_limits=output_limits)
    k = plant.object_stiffness
    m = plant.object_mass
    c = plant.damping
    gain = plant.actuator_gain
    bound = DIVERGENCE_FACTOR * force_universe
    x = 0.0
    v = 0.0
    for i in range(n):
        t = i * dt
        sp = setpoint(t)
        if fuzzy_system is not None:
            desired = fuzzy_desired_force(*sp, fuzzy_system)
        else:
            desired = float(sp)
        contact = plant.contact_force(x)
        measured = contact if fsr is None else fsr_measured_force(contact, fsr)
        error = desired - measured
        step_gains = gains if gain_schedule is None else gain_schedule(t, error)
        u = pid_step(step_gains, state, error, dt)
        applied = max(gain * u, 0.0)  # the finger cannot pull
        if abs(contact) > bound or abs(applied) > bound:
            raise UnstableLoopError(
                f"force diverged at t={t:.4f}s: contact={contact:.3g} N, "
                f"applied={applied:.3g} N (bound {bound:.3g} N)"
            )
        t_arr[i] = t
        desired_arr[i] = desired
        applied_arr[i] = applied
        contact_arr[i] = contact
        error_arr[i] = error
        # semi-implicit Euler keeps the contact resonance well behaved
        accel = (applied - contact - c * v) / m
        v += accel * dt
        x += v * dt
    return GraspTrace(t_arr, desired_arr, applied_arr, contact_arr, error_arr)


def kp_only_steady_state_error(setpoint: float, kp: float, plant: ContactPlant) -> float:
    """
    Closed-form steady-state error of the proportional-only loop.

    At equilibrium the plant transmits the applied force one-to-one, so
    e = r / (1 + kp * actuator_gain).
    """
    return setpoint / (1 + kp * plant.actuator_gain)
