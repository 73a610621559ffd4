"""
Built-in reference vectors: the published design figures for the stock rig,
re-run end to end against the current configuration.

Each vector returns (name, got, want, tolerance_kind, ok); the CLI prints
one line per vector and fails the command if any vector fails.
"""

from dataclasses import dataclass

from .beam_statics import (
    PAPER_COMPAT,
    PAPER_I,
    centre_moment,
    end_moment,
    max_deflection,
    reactions,
)
from .beam_fem import analysis_system, solve_modal
from .config import RigConfig
from .sensors import fsr_resistance

# Published figures for the stock rig (SI units)
REFERENCE_UDL_N_PER_M = 19.62
REFERENCE_REACTION_N = 6.494
REFERENCE_END_MOMENT_NM = 0.7165
REFERENCE_CENTRE_MOMENT_NM = 0.3582
REFERENCE_DEFLECTION_M = 2.28e-11
REFERENCE_MODAL_FREQS_HZ = (144.34, 144.42, 396.1, 396.31, 771.74)

STATIC_REL_TOL = 1e-3   # the figures carry 4 significant digits
MODAL_REL_TOL = 0.02


@dataclass(frozen=True)
class Vector:
    name: str
    got: float
    want: float
    rel_tol: float

    @property
    def ok(self) -> bool:
        return abs(self.got - self.want) <= self.rel_tol * abs(self.want)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (f"{status} {self.name}: got {self.got:.6g}, "
                f"want {self.want:.6g} (rel tol {self.rel_tol:g})")


def run_reference_checks(config: RigConfig) -> list:
    """Every built-in vector evaluated on the given configuration."""
    vectors = []
    beam = config.beam_spec()
    l = beam.length
    E = beam.material.youngs_modulus

    w = config.udl()
    if w.mode == PAPER_COMPAT:
        vectors.append(Vector("udl_total_weight_as_intensity",
                              w.intensity, REFERENCE_UDL_N_PER_M, STATIC_REL_TOL))
    vectors.append(Vector("end_reaction",
                          reactions(w, l), REFERENCE_REACTION_N, STATIC_REL_TOL))
    vectors.append(Vector("end_moment",
                          end_moment(w, l), REFERENCE_END_MOMENT_NM, STATIC_REL_TOL))
    vectors.append(Vector("centre_moment",
                          centre_moment(w, l), REFERENCE_CENTRE_MOMENT_NM, STATIC_REL_TOL))
    vectors.append(Vector("centre_deflection_compat_inertia",
                          max_deflection(w, l, E, PAPER_I),
                          REFERENCE_DEFLECTION_M, STATIC_REL_TOL))

    sys = analysis_system(config.modal_beam_spec(), config.fem_elements)
    modal = solve_modal(sys, len(REFERENCE_MODAL_FREQS_HZ), expand_degenerate=True)
    for i, (got, want) in enumerate(zip(modal.frequencies, REFERENCE_MODAL_FREQS_HZ), 1):
        vectors.append(Vector(f"natural_frequency_{i}", float(got), want, MODAL_REL_TOL))

    fsr = config.fsr_spec()
    vectors.append(Vector("fsr_full_load_resistance",
                          fsr_resistance(fsr.full_load_force, fsr), 2.5e3, 1e-9))
    # no-load side is an inequality: resistance above 1 MOhm
    r0 = fsr_resistance(0.0, fsr)
    vectors.append(Vector("fsr_no_load_resistance_exceeds_1e6",
                          float(r0 > 1e6), 1.0, 1e-12))
    return vectors
