"""
Rig sensor models: ultrasonic time-of-flight ranging, force-sensitive
resistor (FSR) mapping with a voltage-divider readout, and slotted-disc
speed sensing.

Everything is deterministic with noise off; noisy instances draw from a
per-instance seeded stream, so identical seeds give identical readings.
A ranging target beyond max_range returns None (no echo), never a number.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class UltrasonicSpec:
    carrier_frequency: float = 40e3   # Hz, transducer band limit 20-200 kHz
    speed_of_sound: float = 343.0     # m/s, air at 20 C
    max_range: float = 2.0            # m
    noise_std: float = 0.0            # m, additive Gaussian

    def __post_init__(self):
        if not 20e3 <= self.carrier_frequency <= 200e3:
            raise ValueError(
                f"carrier must be within 20-200 kHz, got {self.carrier_frequency}"
            )
        if self.speed_of_sound <= 0:
            raise ValueError("speed_of_sound must be positive")
        if self.max_range <= 0:
            raise ValueError("max_range must be positive")
        if self.noise_std < 0:
            raise ValueError("noise_std must be >= 0")


@dataclass(frozen=True)
class FsrSpec:
    """
    Two published anchor points define the curve: resistance above 1 MOhm
    with nothing touching the pad, 2.5 kOhm at full load.  Between them a
    power law R = r_full_load * (F/full_load_force)^(-exponent), clamped
    into [r_full_load, r_no_load].
    """
    r_no_load: float = 1e7        # Ohm
    r_full_load: float = 2.5e3    # Ohm
    full_load_force: float = 10.0  # N
    exponent: float = 1.0
    active_diameter: float = 0.004  # m

    def __post_init__(self):
        if not self.r_no_load > 1e6:
            raise ValueError(f"r_no_load must exceed 1 MOhm, got {self.r_no_load}")
        if not 0 < self.r_full_load < self.r_no_load:
            raise ValueError("need 0 < r_full_load < r_no_load")
        if self.full_load_force <= 0:
            raise ValueError("full_load_force must be positive")
        if self.exponent <= 0:
            raise ValueError("exponent must be positive")

    @property
    def min_resolvable_force(self) -> float:
        """Force below which the resistance clamps at r_no_load."""
        return self.full_load_force * (self.r_full_load / self.r_no_load) ** (1 / self.exponent)


@dataclass(frozen=True)
class EncoderSpec:
    slots_per_rev: int = 20

    def __post_init__(self):
        if self.slots_per_rev < 1:
            raise ValueError("slots_per_rev must be >= 1")


def echo_time(distance: float, spec: UltrasonicSpec) -> float | None:
    """Round-trip time t = 2*d/c, or None when the target is out of range."""
    if distance <= 0:
        raise ValueError(f"distance must be positive, got {distance}")
    if distance > spec.max_range:
        return None
    return 2 * distance / spec.speed_of_sound


def distance_from_echo(t: float, spec: UltrasonicSpec) -> float | None:
    """Inverse of echo_time: d = c*t/2; None when beyond max_range."""
    if t <= 0:
        raise ValueError(f"echo time must be positive, got {t}")
    d = spec.speed_of_sound * t / 2
    if d > spec.max_range:
        return None
    return d


def fsr_resistance(force: float, spec: FsrSpec) -> float:
    """Resistance in Ohm; strictly decreasing between the clamp limits."""
    if force < 0:
        raise ValueError(f"force must be >= 0, got {force}")
    if force == 0.0:
        return spec.r_no_load
    r = spec.r_full_load * (force / spec.full_load_force) ** (-spec.exponent)
    return min(max(r, spec.r_full_load), spec.r_no_load)


def fsr_force(r: float, spec: FsrSpec) -> float:
    """Force in N from a resistance on the unclamped range."""
    if not spec.r_full_load <= r <= spec.r_no_load:
        raise ValueError(
            f"resistance {r} outside [{spec.r_full_load}, {spec.r_no_load}]"
        )
    return spec.full_load_force * (spec.r_full_load / r) ** (1 / spec.exponent)


def fsr_measured_force(true_force: float, spec: FsrSpec) -> float:
    """
    Force as read back through the resistance map and its inverse.

    Exact on the unclamped range; saturates at full_load_force above it and
    reads 0 below min_resolvable_force (the pad shows no-load resistance).
    """
    r = fsr_resistance(true_force, spec)
    if r >= spec.r_no_load:
        return 0.0
    return fsr_force(r, spec)


def fsr_voltage(r: float, divider_r: float, v_supply: float) -> float:
    """FSR on top of a divider: v = v_supply * divider_r / (r + divider_r)."""
    if r <= 0 or divider_r <= 0 or v_supply <= 0:
        raise ValueError("resistances and supply must be positive")
    return v_supply * divider_r / (r + divider_r)


def encoder_speed(pulses: int, window: float, spec: EncoderSpec) -> float:
    """Speed in rev/s; resolution is 1/(slots_per_rev*window)."""
    if window <= 0:
        raise ValueError(f"window must be positive, got {window}")
    if pulses < 0:
        raise ValueError(f"pulse count must be >= 0, got {pulses}")
    return pulses / (spec.slots_per_rev * window)


def disturbance_detect(baseline: float, reading: float, threshold: float) -> bool:
    """True iff the reading moved strictly more than threshold off baseline."""
    if threshold <= 0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    return abs(reading - baseline) > threshold


class UltrasonicSensor:
    """Stateful ranging instance with an optional seeded noise stream."""

    def __init__(self, spec: UltrasonicSpec, seed: int | None = None):
        self.spec = spec
        self._rng = np.random.default_rng(seed)

    def measure(self, true_distance: float) -> float | None:
        if echo_time(true_distance, self.spec) is None:
            return None
        if self.spec.noise_std == 0.0:
            return true_distance
        return true_distance + float(self._rng.normal(0.0, self.spec.noise_std))
