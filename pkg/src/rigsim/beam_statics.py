"""
Closed-form statics of a fixed-fixed tube under a uniformly distributed load.

The rig's load-bearing rods are stainless steel tubes clamped at both ends
by the end blocks.  Standard results for this case:

    R        = w*l/2            reactions, equal at both ends by symmetry
    M_end    = w*l^2/12         fixing moment at each clamped end
    M_centre = w*l^2/24         midspan moment (always half the end moment)
    delta    = w*l^4/(384*E*I)  midspan deflection, positive downward

All quantities in SI (m, N, Pa, kg).
"""

import math
from dataclasses import dataclass, field

G = 9.81  # m/s^2

# Load-intensity conventions for the distributed load.
# "physical" spreads the supported weight over the span (true N/m);
# "paper_compat" substitutes the total weight directly as the intensity,
# reproducing the rig's original design calculation number-for-number.
PHYSICAL = "physical"
PAPER_COMPAT = "paper_compat"

UDL_MODES = (PHYSICAL, PAPER_COMPAT)

# Second moment of area used by the original design calculation.  It is
# inconsistent with the actual tube section (true I ~ 5.27e-10 m^4) but is
# kept as a named constant so the original deflection figure stays an exact
# regression vector.
PAPER_I = 2.15e-3  # m^4

# 304 stainless, config default rather than a hard-coded check constant
DEFAULT_YIELD_304 = 215e6  # Pa


@dataclass(frozen=True)
class MaterialSpec:
    """Material constants. yield_strength is optional (None = no check)."""
    density: float            # kg/m^3
    youngs_modulus: float     # Pa
    yield_strength: float | None = None  # Pa

    def __post_init__(self):
        if self.density <= 0:
            raise ValueError(f"density must be positive, got {self.density}")
        if self.youngs_modulus <= 0:
            raise ValueError(f"youngs_modulus must be positive, got {self.youngs_modulus}")
        if self.yield_strength is not None and self.yield_strength <= 0:
            raise ValueError(f"yield_strength must be positive, got {self.yield_strength}")


@dataclass(frozen=True)
class TubeSection:
    """Annular cross section. inner_diameter = 0 degenerates to a solid rod."""
    outer_diameter: float  # m
    inner_diameter: float  # m

    def __post_init__(self):
        if not 0 <= self.inner_diameter < self.outer_diameter:
            raise ValueError(
                f"need 0 <= inner_diameter < outer_diameter, got "
                f"({self.outer_diameter}, {self.inner_diameter})"
            )

    @property
    def outer_radius(self) -> float:
        return self.outer_diameter / 2


@dataclass(frozen=True)
class BeamSpec:
    length: float  # m
    section: TubeSection
    material: MaterialSpec

    def __post_init__(self):
        if self.length <= 0:
            raise ValueError(f"length must be positive, got {self.length}")


@dataclass(frozen=True)
class UdlLoad:
    intensity: float       # N/m
    mode: str = PHYSICAL

    def __post_init__(self):
        if self.intensity < 0:
            raise ValueError(f"intensity must be >= 0, got {self.intensity}")
        if self.mode not in UDL_MODES:
            raise ValueError(f"mode must be one of {UDL_MODES}, got {self.mode!r}")


@dataclass(frozen=True)
class ComponentMassList:
    """Named point masses carried by the rod(s), e.g. the z-actuator stack."""
    entries: tuple = field(default_factory=tuple)  # of (name, mass_kg)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(e) for e in self.entries))
        for name, mass in self.entries:
            if mass <= 0:
                raise ValueError(f"component {name!r} has non-positive mass {mass}")

    @property
    def total_mass(self) -> float:
        return sum(m for _, m in self.entries)


def _intensity(w) -> float:
    """Accept either a UdlLoad or a bare intensity in N/m."""
    return w.intensity if isinstance(w, UdlLoad) else float(w)


def section_area(s: TubeSection) -> float:
    """Annulus area A = pi/4 * (d_o^2 - d_i^2) in m^2."""
    return math.pi / 4 * (s.outer_diameter**2 - s.inner_diameter**2)


def second_moment(s: TubeSection) -> float:
    """Second moment of area I = pi/64 * (d_o^4 - d_i^4) in m^4."""
    return math.pi / 64 * (s.outer_diameter**4 - s.inner_diameter**4)


def udl_from_masses(
    components: ComponentMassList,
    beam: BeamSpec,
    rods_sharing: int = 1,
    mode: str = PHYSICAL,
) -> UdlLoad:
    """
    Distributed load equivalent of the carried component masses.

    physical:     intensity = total_mass*g / (rods_sharing * length)  [N/m]
    paper_compat: intensity = total_mass*g, the total weight used directly
                  as the load figure (matches the original design numbers)
    """
    if not components.entries:
        raise ValueError("component mass list is empty")
    if rods_sharing < 1:
        raise ValueError(f"rods_sharing must be >= 1, got {rods_sharing}")
    weight = components.total_mass * G
    if mode == PAPER_COMPAT:
        return UdlLoad(weight, mode=PAPER_COMPAT)
    if mode == PHYSICAL:
        return UdlLoad(weight / (rods_sharing * beam.length), mode=PHYSICAL)
    raise ValueError(f"mode must be one of {UDL_MODES}, got {mode!r}")


def reactions(w, l: float) -> float:
    """End reaction R = w*l/2 (N). R_A = R_B by symmetry."""
    if l <= 0:
        raise ValueError(f"length must be positive, got {l}")
    return _intensity(w) * l / 2


def end_moment(w, l: float) -> float:
    """Fixing moment at each clamped end, M = w*l^2/12 (N*m)."""
    if l <= 0:
        raise ValueError(f"length must be positive, got {l}")
    return _intensity(w) * l**2 / 12


def centre_moment(w, l: float) -> float:
    """Midspan moment M = w*l^2/24 (N*m), exactly half the end moment."""
    if l <= 0:
        raise ValueError(f"length must be positive, got {l}")
    return _intensity(w) * l**2 / 24


def max_deflection(w, l: float, E: float, I: float) -> float:
    """
    Midspan deflection delta = w*l^4 / (384*E*I) in m, positive downward.

    I is always explicit: pass second_moment(section) for the real tube,
    or PAPER_I to reproduce the original design figure.
    """
    if E <= 0:
        raise ValueError(f"E must be positive, got {E}")
    if I <= 0:
        raise ValueError(f"I must be positive, got {I}")
    return _intensity(w) * l**4 / (384 * E * I)


def bending_stress(M: float, c: float, I: float) -> float:
    """Extreme-fibre bending stress sigma = M*c/I (Pa)."""
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    if I <= 0:
        raise ValueError(f"I must be positive, got {I}")
    return M * c / I


def safety_check(sigma: float, yield_strength: float | None) -> bool:
    """True iff sigma is strictly below the yield strength."""
    if yield_strength is None:
        raise ValueError("no yield strength available for safety check")
    return sigma < yield_strength


def statics_report(
    beam: BeamSpec,
    w: UdlLoad,
    I: float | None = None,
) -> dict:
    """Flat key/value summary of the full closed-form analysis."""
    l = beam.length
    I_used = second_moment(beam.section) if I is None else I
    M_end = end_moment(w, l)
    sigma = bending_stress(M_end, beam.section.outer_radius, second_moment(beam.section))
    report = {
        "udl_mode": w.mode,
        "udl_intensity_n_per_m": w.intensity,
        "length_m": l,
        "reaction_n": reactions(w, l),
        "end_moment_nm": M_end,
        "centre_moment_nm": centre_moment(w, l),
        "second_moment_m4": I_used,
        "max_deflection_m": max_deflection(w, l, beam.material.youngs_modulus, I_used),
        "bending_stress_pa": sigma,
    }
    if beam.material.yield_strength is not None:
        report["yield_strength_pa"] = beam.material.yield_strength
        report["safe"] = safety_check(sigma, beam.material.yield_strength)
    return report
