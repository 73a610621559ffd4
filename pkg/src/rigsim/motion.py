"""
Gantry drive-train model: lead-screw position quantization, trapezoidal
velocity profiles, and stepped simulation of the three prismatic axes.

Axis coordinates are absolute (m); an axis is homed at travel_min and its
position is always an exact integer count of microsteps.  The motor is
assumed to hold every commanded step (no missed-step or backlash model).
"""

import math
from dataclasses import dataclass, field

KG_CM_TO_NM = 0.0980665  # holding-torque unit conversion

ALLOWED_MICROSTEPPING = (1, 2, 4, 8, 16, 32)

TRAPEZOID = "trapezoid"
TRIANGLE = "triangle"


@dataclass(frozen=True)
class LeadScrewSpec:
    """Multi-start screw; travel per revolution (lead) = starts * pitch."""
    pitch: float = 0.002   # m, thread-to-thread
    starts: int = 4

    def __post_init__(self):
        if self.pitch <= 0:
            raise ValueError(f"pitch must be positive, got {self.pitch}")
        if self.starts < 1:
            raise ValueError(f"starts must be >= 1, got {self.starts}")

    @property
    def lead(self) -> float:
        return self.starts * self.pitch


@dataclass(frozen=True)
class StepperSpec:
    full_steps_per_rev: int = 200
    microstepping: int = 16
    holding_torque: float = 5.5 * KG_CM_TO_NM  # N*m
    phase_current: float = 1.5                 # A

    def __post_init__(self):
        if self.full_steps_per_rev < 1:
            raise ValueError("full_steps_per_rev must be >= 1")
        if self.microstepping not in ALLOWED_MICROSTEPPING:
            raise ValueError(
                f"microstepping must be one of {ALLOWED_MICROSTEPPING}, "
                f"got {self.microstepping}"
            )

    @property
    def steps_per_rev(self) -> int:
        return self.full_steps_per_rev * self.microstepping


@dataclass(frozen=True)
class AxisSpec:
    screw: LeadScrewSpec = LeadScrewSpec()
    motor: StepperSpec = StepperSpec()
    travel_min: float = 0.0   # m
    travel_max: float = 0.6   # m
    v_max: float = 0.1        # m/s, default move speed limit
    a_max: float = 0.5        # m/s^2

    def __post_init__(self):
        if self.travel_min >= self.travel_max:
            raise ValueError("travel_min must be below travel_max")
        if self.v_max <= 0 or self.a_max <= 0:
            raise ValueError("v_max and a_max must be positive")

    @property
    def microstep_distance(self) -> float:
        return self.screw.lead / self.motor.steps_per_rev


def steps_to_displacement(n: int, axis: AxisSpec) -> float:
    """Displacement of n microsteps: n * lead / (full_steps * microstepping)."""
    return n * axis.microstep_distance


def displacement_to_steps(d: float, axis: AxisSpec) -> int:
    """Nearest microstep count; round-trip error <= half a microstep."""
    span = axis.travel_max - axis.travel_min
    if abs(d) > span + axis.microstep_distance / 2:
        raise ValueError(f"displacement {d} m exceeds the {span} m travel span")
    return int(math.floor(d / axis.microstep_distance + 0.5))


@dataclass(frozen=True)
class MotionProfile:
    """
    Symmetric accelerate/cruise/decelerate profile for a non-negative
    distance.  Closed-form throughout, so integrating it reproduces the
    commanded distance exactly.
    """
    distance: float
    v_max: float
    a_max: float
    t_accel: float
    t_cruise: float
    shape: str

    @property
    def t_total(self) -> float:
        return 2 * self.t_accel + self.t_cruise

    @property
    def v_peak(self) -> float:
        return self.a_max * self.t_accel

    def velocity(self, t: float) -> float:
        if t <= 0 or t >= self.t_total:
            return 0.0
        if t < self.t_accel:
            return self.a_max * t
        if t <= self.t_accel + self.t_cruise:
            return self.v_peak
        return self.a_max * (self.t_total - t)

    def position(self, t: float) -> float:
        """Distance covered by time t (monotone, position(t_total) = distance)."""
        if t <= 0:
            return 0.0
        if t >= self.t_total:
            return self.distance
        if t < self.t_accel:
            return 0.5 * self.a_max * t * t
        d_accel = 0.5 * self.a_max * self.t_accel**2
        if t <= self.t_accel + self.t_cruise:
            return d_accel + self.v_peak * (t - self.t_accel)
        tau = self.t_total - t  # time remaining in the deceleration ramp
        return self.distance - 0.5 * self.a_max * tau * tau


def plan_trapezoid(distance: float, v_max: float, a_max: float) -> MotionProfile:
    """
    Plan a move of the given non-negative distance.

    Trapezoid when the distance allows reaching v_max (d > v_max^2/a_max),
    otherwise a triangle with t_accel = sqrt(d/a_max).
    """
    if distance < 0:
        raise ValueError(f"distance must be >= 0, got {distance}")
    if v_max <= 0 or a_max <= 0:
        raise ValueError("v_max and a_max must be positive")
    d_crit = v_max**2 / a_max
    if distance > d_crit:
        t_accel = v_max / a_max
        t_cruise = (distance - d_crit) / v_max
        return MotionProfile(distance, v_max, a_max, t_accel, t_cruise, TRAPEZOID)
    t_accel = math.sqrt(distance / a_max)
    return MotionProfile(distance, v_max, a_max, t_accel, 0.0, TRIANGLE)


def simulate_move(profile: MotionProfile, dt: float):
    """
    Sample the profile at dt intervals, always including t_total.

    Returns a list of (t, distance_covered, velocity) tuples; a zero-distance
    move yields the single sample (0, 0, 0).
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if profile.t_total == 0.0:
        return [(0.0, 0.0, 0.0)]
    samples = []
    n_steps = int(math.ceil(profile.t_total / dt - 1e-12))
    for i in range(n_steps):
        t = i * dt
        samples.append((t, profile.position(t), profile.velocity(t)))
    samples.append((profile.t_total, profile.distance, 0.0))
    return samples


@dataclass
class Axis:
    """One prismatic axis: immutable spec plus committed stepper state."""
    name: str
    spec: AxisSpec = field(default_factory=AxisSpec)
    step_count: int = 0
    velocity: float = 0.0
    homed: bool = False

    @property
    def position(self) -> float:
        return steps_to_displacement(self.step_count, self.spec)

    def home(self):
        """Drive to travel_min and establish the step reference."""
        self.step_count = displacement_to_steps(self.spec.travel_min, self.spec)
        self.velocity = 0.0
        self.homed = True

    def check_target(self, target: float):
        if not self.homed:
            raise RuntimeError(f"axis {self.name!r} is not homed")
        if not self.spec.travel_min <= target <= self.spec.travel_max:
            raise ValueError(
                f"target {target} m outside travel "
                f"[{self.spec.travel_min}, {self.spec.travel_max}] on axis {self.name!r}"
            )

    def move_to(self, target: float, v_max: float | None = None,
                a_max: float | None = None, dt: float = 1e-3):
        """
        Plan and execute a move; returns (t, position, velocity) samples in
        absolute coordinates.  The final position is committed to the nearest
        microstep, so its error is at most half a microstep from the target.
        """
        self.check_target(target)
        v = self.spec.v_max if v_max is None else min(v_max, self.spec.v_max)
        a = self.spec.a_max if a_max is None else min(a_max, self.spec.a_max)
        start = self.position
        delta = target - start
        direction = 1.0 if delta >= 0 else -1.0
        profile = plan_trapezoid(abs(delta), v, a)
        trajectory = [
            (t, start + direction * s, direction * vel)
            for t, s, vel in simulate_move(profile, dt)
        ]
        self.step_count = displacement_to_steps(target, self.spec)
        self.velocity = 0.0
        return trajectory


def rig_pose(x_axis: Axis, y_axis: Axis, z_axis: Axis) -> tuple:
    """Gripper position as the plain composition of the three prismatic axes."""
    for axis in (x_axis, y_axis, z_axis):
        if not axis.homed:
            raise RuntimeError(f"axis {axis.name!r} is not homed")
    return (x_axis.position, y_axis.position, z_axis.position)
