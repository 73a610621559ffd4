"""
Rig configuration: one YAML document wiring every module's parameters.

Loading is strict: unknown keys anywhere in the document are rejected, and
every value passes through the owning domain type so its invariants are
re-validated at load time.  The packaged data/default_config.yaml holds the
stock rig; any subset of it can be overridden from a user file.
"""

import copy
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
import yaml

from .beam_statics import (
    UDL_MODES,
    BeamSpec,
    ComponentMassList,
    MaterialSpec,
    TubeSection,
    UdlLoad,
    udl_from_masses,
)
from .beam_fem import RayleighDamping
from .errors import ConfigError
from .fuzzy import FuzzySystem, default_grasp_fuzzy, system_from_dict
from .grasp import ContactPlant, PidGains
from .motion import Axis, AxisSpec, LeadScrewSpec, StepperSpec
from .sensors import EncoderSpec, FsrSpec, UltrasonicSpec
from .test_matrix import Scenario


def _check_keys(doc: dict, allowed, section: str):
    unknown = sorted(set(doc) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown keys in {section}: {unknown}")


def _merge(defaults, overrides, section: str):
    """Recursive dict merge; override keys must exist in the defaults."""
    if not isinstance(overrides, dict):
        raise ConfigError(f"section {section} must be a mapping")
    _check_keys(overrides, defaults.keys(), section)
    merged = copy.deepcopy(defaults)
    for key, value in overrides.items():
        if isinstance(defaults[key], dict) and not key.endswith("_path"):
            merged[key] = _merge(defaults[key], value, f"{section}.{key}")
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def _default_doc() -> dict:
    text = resources.files("rigsim.data").joinpath("default_config.yaml").read_text()
    return yaml.safe_load(text)


@dataclass(frozen=True)
class RigConfig:
    """Validated effective configuration (defaults merged with overrides)."""
    doc: dict = field(repr=False)

    # --- structural rod ---
    def beam_spec(self) -> BeamSpec:
        b = self.doc["beam"]
        return BeamSpec(
            length=float(b["length"]),
            section=TubeSection(float(b["outer_diameter"]), float(b["inner_diameter"])),
            material=MaterialSpec(
                density=float(b["density"]),
                youngs_modulus=float(b["youngs_modulus"]),
                yield_strength=(None if b["yield_strength"] is None
                                else float(b["yield_strength"])),
            ),
        )

    def modal_beam_spec(self) -> BeamSpec:
        base = self.beam_spec()
        return BeamSpec(float(self.doc["fem"]["length"]), base.section, base.material)

    def component_masses(self) -> ComponentMassList:
        entries = tuple(
            (str(name), float(mass)) for name, mass in self.doc["beam"]["masses"].items()
        )
        return ComponentMassList(entries)

    def udl(self) -> UdlLoad:
        b = self.doc["beam"]
        if b["udl_mode"] not in UDL_MODES:
            raise ConfigError(f"beam.udl_mode must be one of {UDL_MODES}")
        return udl_from_masses(
            self.component_masses(), self.beam_spec(),
            rods_sharing=int(b["rods_sharing"]), mode=b["udl_mode"],
        )

    # --- FE analysis ---
    @property
    def fem_elements(self) -> int:
        return int(self.doc["fem"]["n_elements"])

    @property
    def fem_modes(self) -> int:
        return int(self.doc["fem"]["n_modes"])

    @property
    def expand_degenerate(self) -> bool:
        return bool(self.doc["fem"]["expand_degenerate"])

    def damping(self, f1: float, f2: float) -> RayleighDamping:
        d = self.doc["fem"]["damping"]
        if d["alpha"] is not None or d["beta"] is not None:
            return RayleighDamping(float(d["alpha"] or 0.0), float(d["beta"] or 0.0))
        return RayleighDamping.from_damping_ratio(float(d["ratio"]), f1, f2)

    def harmonic_grid(self):
        h = self.doc["fem"]["harmonic"]
        lo, hi, n = float(h["f_min"]), float(h["f_max"]), int(h["n_freqs"])
        if not 0 < lo < hi or n < 2:
            raise ConfigError("fem.harmonic needs 0 < f_min < f_max and n_freqs >= 2")
        return np.linspace(lo, hi, n)

    # --- axes ---
    def axis_spec(self, name: str) -> AxisSpec:
        a = self.doc["axes"][name]
        screw = LeadScrewSpec(pitch=float(a["pitch"]), starts=int(a["starts"]))
        if a["lead"] is not None and abs(float(a["lead"]) - screw.lead) > 1e-12:
            raise ConfigError(
                f"axes.{name}: lead {a['lead']} inconsistent with "
                f"starts*pitch = {screw.lead}"
            )
        return AxisSpec(
            screw=screw,
            motor=StepperSpec(
                full_steps_per_rev=int(a["full_steps_per_rev"]),
                microstepping=int(a["microstepping"]),
                holding_torque=float(a["holding_torque"]),
                phase_current=float(a["phase_current"]),
            ),
            travel_min=float(a["travel_min"]),
            travel_max=float(a["travel_max"]),
            v_max=float(a["v_max"]),
            a_max=float(a["a_max"]),
        )

    def axes(self) -> dict:
        return {name: Axis(name, self.axis_spec(name)) for name in ("x", "y", "z")}

    # --- sensors ---
    def ultrasonic_spec(self) -> UltrasonicSpec:
        u = self.doc["sensors"]["ultrasonic"]
        return UltrasonicSpec(
            carrier_frequency=float(u["carrier_frequency"]),
            speed_of_sound=float(u["speed_of_sound"]),
            max_range=float(u["max_range"]),
            noise_std=float(u["noise_std"]),
        )

    def fsr_spec(self) -> FsrSpec:
        f = self.doc["sensors"]["fsr"]
        return FsrSpec(
            r_no_load=float(f["r_no_load"]),
            r_full_load=float(f["r_full_load"]),
            full_load_force=float(f["full_load_force"]),
            exponent=float(f["exponent"]),
            active_diameter=float(f["active_diameter"]),
        )

    @property
    def fsr_divider(self) -> tuple:
        f = self.doc["sensors"]["fsr"]
        return float(f["divider_r"]), float(f["v_supply"])

    def encoder_spec(self) -> EncoderSpec:
        return EncoderSpec(int(self.doc["sensors"]["encoder"]["slots_per_rev"]))

    # --- grasp loop ---
    def plant(self) -> ContactPlant:
        g = self.doc["grasp"]["plant"]
        return ContactPlant(
            object_stiffness=float(g["object_stiffness"]),
            object_mass=float(g["object_mass"]),
            friction_coefficient=float(g["friction_coefficient"]),
            actuator_gain=float(g["actuator_gain"]),
            damping_ratio=float(g["damping_ratio"]),
        )

    def gains(self) -> PidGains:
        g = self.doc["grasp"]["gains"]
        return PidGains(kp=float(g["kp"]), ki=float(g["ki"]), kd=float(g["kd"]))

    @property
    def grasp_dt(self) -> float:
        return float(self.doc["grasp"]["dt"])

    @property
    def grasp_duration(self) -> float:
        return float(self.doc["grasp"]["duration"])

    @property
    def grasp_inputs(self) -> tuple:
        g = self.doc["grasp"]["inputs"]
        return (float(g["target_position"]), float(g["relative_depth"]), float(g["speed"]))

    # --- fuzzy system ---
    def fuzzy_system(self) -> FuzzySystem:
        f = self.doc["fuzzy"]
        if f["rulebase_path"] is None:
            return default_grasp_fuzzy()
        path = Path(f["rulebase_path"])
        if not path.exists():
            raise ConfigError(f"fuzzy.rulebase_path not found: {path}")
        try:
            return system_from_dict(yaml.safe_load(path.read_text()))
        except (KeyError, TypeError, ValueError, yaml.YAMLError) as exc:
            raise ConfigError(f"bad fuzzy rulebase {path}: {exc}") from exc

    # --- scenario ---
    def scenario(self) -> Scenario:
        s = self.doc["scenario"]
        return Scenario(
            object_mass=float(s["object_mass"]),
            friction_coefficient=float(s["friction_coefficient"]),
            n_contact_surfaces=int(s["n_contact_surfaces"]),
            motion_accel=float(s["motion_accel"]),
            safety_factor=float(s["safety_factor"]),
            conveyor_speed=float(s["conveyor_speed"]),
            target_path=tuple(tuple(wp) for wp in s["target_path"]),
            normalization_radius=float(s["normalization_radius"]),
            sensor_position=tuple(float(v) for v in s["sensor_position"]),
            baseline_distance=float(s["baseline_distance"]),
            detection_threshold=float(s["detection_threshold"]),
            grasp_timeout=float(s["grasp_timeout"]),
            min_efficiency=float(s["min_efficiency"]),
        )

    @property
    def bandwidth_settings(self) -> dict:
        b = self.doc["scenario"]["bandwidth"]
        return {
            "bandwidth_grid": tuple(float(f) for f in b["f_grid"]),
            "bandwidth_amplitude": float(b["amplitude"]),
            "bandwidth_threshold": float(b["error_threshold"]),
        }

    def dump(self) -> str:
        """Effective config as YAML; reloading it reproduces this config."""
        return yaml.safe_dump(self.doc, sort_keys=False)


def load_config(path: str | Path | None = None) -> RigConfig:
    """
    Load and validate a configuration; None gives the packaged defaults.

    The user document may specify any subset of keys; everything else comes
    from the defaults.  Unknown keys raise ConfigError.
    """
    defaults = _default_doc()
    if path is None:
        doc = defaults
    else:
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        try:
            overrides = yaml.safe_load(path.read_text())
        except yaml.YAMLError as exc:
            raise ConfigError(f"cannot parse {path}: {exc}") from exc
        if overrides is None:
            overrides = {}
        doc = _merge(defaults, overrides, "config")
    config = RigConfig(doc)
    validate(config)
    return config


def validate(config: RigConfig):
    """Construct every domain object once so all invariants run at load."""
    try:
        config.beam_spec()
        config.modal_beam_spec()
        config.udl()
        config.harmonic_grid()
        for name in ("x", "y", "z"):
            config.axis_spec(name)
        config.ultrasonic_spec()
        config.fsr_spec()
        config.encoder_spec()
        config.plant()
        config.gains()
        config.fuzzy_system()
        config.scenario()
        config.bandwidth_settings
        if config.grasp_dt >= config.plant().max_stable_dt:
            raise ConfigError(
                f"grasp.dt {config.grasp_dt} too coarse for the plant; "
                f"need < {config.plant().max_stable_dt:.3e}"
            )
        if config.fem_elements < 2:
            raise ConfigError("fem.n_elements must be >= 2")
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc
