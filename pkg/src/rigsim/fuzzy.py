"""
Mamdani fuzzy inference for the grasp-force setpoint.

Three crisp inputs (target position along the transport axis, remaining
descend depth to the target, operation speed) map through a rulebase to a
desired grasp force.  Semantics are the classic min/clip/max chain with
centroid defuzzification over a sampled output universe.

The shipped rulebase lives in data/default_fuzzy.yaml and encodes
"closer and faster means a firmer grip"; it is data, not code, and any
config can replace it wholesale.
"""

import warnings
from dataclasses import dataclass
from importlib import resources

import numpy as np
import yaml

TRIANGLE = "triangle"
TRAPEZOID = "trapezoid"

DEFAULT_SAMPLES = 513


@dataclass(frozen=True)
class MembershipFunction:
    """Piecewise-linear membership: 3 breakpoints (triangle) or 4 (trapezoid)."""
    shape: str
    breakpoints: tuple

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(float(b) for b in self.breakpoints))
        expected = {TRIANGLE: 3, TRAPEZOID: 4}.get(self.shape)
        if expected is None:
            raise ValueError(f"shape must be triangle or trapezoid, got {self.shape!r}")
        if len(self.breakpoints) != expected:
            raise ValueError(f"{self.shape} needs {expected} breakpoints")
        if any(b > c for b, c in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError(f"breakpoints must be non-decreasing: {self.breakpoints}")

    def __call__(self, x):
        """Degree in [0, 1]; accepts scalars or arrays."""
        x = np.asarray(x, dtype=float)
        if self.shape == TRIANGLE:
            a, b, d = self.breakpoints
            c = b
        else:
            a, b, c, d = self.breakpoints
        rising = np.ones_like(x) if b == a else np.clip((x - a) / (b - a), 0.0, 1.0)
        falling = np.ones_like(x) if d == c else np.clip((d - x) / (d - c), 0.0, 1.0)
        mu = np.minimum(rising, falling)
        mu = np.where((x < a) | (x > d), 0.0, mu)
        return mu if mu.ndim else float(mu)


@dataclass(frozen=True)
class FuzzyVariable:
    name: str
    universe: tuple           # (min, max)
    terms: tuple              # of (label, MembershipFunction)

    def __post_init__(self):
        lo, hi = self.universe
        if not lo < hi:
            raise ValueError(f"universe must have min < max, got {self.universe}")
        object.__setattr__(self, "universe", (float(lo), float(hi)))
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError(f"variable {self.name!r} has no terms")
        labels = [label for label, _ in self.terms]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate term labels on {self.name!r}")
        # coverage: every universe point belongs to at least one term
        grid = np.linspace(lo, hi, 1001)
        peak = np.max([mf(grid) for _, mf in self.terms], axis=0)
        if np.any(peak <= 0):
            bad = grid[np.argmin(peak)]
            raise ValueError(f"universe of {self.name!r} uncovered near {bad:.6g}")

    def term(self, label: str) -> MembershipFunction:
        for name, mf in self.terms:
            if name == label:
                return mf
        raise KeyError(f"no term {label!r} on variable {self.name!r}")


@dataclass(frozen=True)
class Rule:
    antecedent: tuple   # one term label per input variable, in order
    consequent: str     # output term label


@dataclass(frozen=True)
class RuleBase:
    rules: tuple
    and_op: str = "min"

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        if not self.rules:
            raise ValueError("rulebase is empty")
        if self.and_op != "min":
            raise ValueError(f"only min AND semantics supported, got {self.and_op!r}")


@dataclass(frozen=True)
class FuzzySystem:
    inputs: tuple          # of FuzzyVariable
    output: FuzzyVariable
    rulebase: RuleBase
    n_samples: int = DEFAULT_SAMPLES

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        if self.n_samples < 3:
            raise ValueError("n_samples must be >= 3")
        for rule in self.rulebase.rules:
            if len(rule.antecedent) != len(self.inputs):
                raise ValueError(
                    f"rule {rule} arity {len(rule.antecedent)} != {len(self.inputs)} inputs"
                )
            for label, var in zip(rule.antecedent, self.inputs):
                var.term(label)  # raises on unknown labels
            self.output.term(rule.consequent)

    @property
    def output_grid(self) -> np.ndarray:
        lo, hi = self.output.universe
        return np.linspace(lo, hi, self.n_samples)


def clamp_to_universe(value: float, variable: FuzzyVariable) -> float:
    lo, hi = variable.universe
    if value < lo or value > hi:
        warnings.warn(
            f"{variable.name} = {value:.6g} outside universe [{lo:.6g}, {hi:.6g}]; clamped",
            stacklevel=3,
        )
        return min(max(value, lo), hi)
    return value


def fuzzify(value: float, variable: FuzzyVariable):
    """Degrees of membership of a crisp value in every term of the variable."""
    v = clamp_to_universe(float(value), variable)
    return [(label, float(mf(v))) for label, mf in variable.terms]


def infer(system: FuzzySystem, values) -> np.ndarray:
    """
    Aggregated output membership sampled on system.output_grid.

    Mamdani chain: AND by min, implication by clipping the consequent term,
    aggregation by pointwise max over all rules.
    """
    values = list(values)
    if len(values) != len(system.inputs):
        raise ValueError(f"expected {len(system.inputs)} inputs, got {len(values)}")
    degrees = [dict(fuzzify(v, var)) for v, var in zip(values, system.inputs)]
    grid = system.output_grid
    aggregated = np.zeros_like(grid)
    any_fired = False
    for rule in system.rulebase.rules:
        firing = min(deg[label] for label, deg in zip(rule.antecedent, degrees))
        if firing <= 0.0:
            continue
        any_fired = True
        clipped = np.minimum(system.output.term(rule.consequent)(grid), firing)
        aggregated = np.maximum(aggregated, clipped)
    if not any_fired:
        raise ValueError(f"no rule fires for inputs {values}: rulebase incomplete")
    return aggregated


def defuzzify_centroid(grid: np.ndarray, membership: np.ndarray) -> float:
    """Crisp value sum(x*mu)/sum(mu) over the sample grid."""
    membership = np.asarray(membership, dtype=float)
    total = float(np.sum(membership))
    if total <= 0.0:
        raise ValueError("cannot defuzzify an all-zero membership")
    return float(np.sum(np.asarray(grid) * membership) / total)


def evaluate(system: FuzzySystem, values) -> float:
    """fuzzify -> infer -> defuzzify; output lies inside the output universe."""
    return defuzzify_centroid(system.output_grid, infer(system, values))


def fuzzy_desired_force(
    target_position: float,
    relative_depth: float,
    speed: float,
    system: FuzzySystem,
) -> float:
    """Desired grasp force (N) for the three rig inputs."""
    return evaluate(system, (target_position, relative_depth, speed))


def system_from_dict(doc: dict) -> FuzzySystem:
    """Build a FuzzySystem from the config-file structure (see data/)."""
    def variable(spec: dict) -> FuzzyVariable:
        terms = tuple(
            (t["label"], MembershipFunction(t["shape"], tuple(t["breakpoints"])))
            for t in spec["terms"]
        )
        return FuzzyVariable(spec["name"], tuple(spec["universe"]), terms)

    inputs = tuple(variable(v) for v in doc["inputs"])
    output = variable(doc["output"])
    rules = tuple(
        Rule(tuple(r["if"]), r["then"]) for r in doc["rules"]
    )
    return FuzzySystem(
        inputs=inputs,
        output=output,
        rulebase=RuleBase(rules),
        n_samples=int(doc.get("n_samples", DEFAULT_SAMPLES)),
    )


def default_grasp_fuzzy() -> FuzzySystem:
    """The packaged default grasp rulebase."""
    text = resources.files("rigsim.data").joinpath("default_fuzzy.yaml").read_text()
    return system_from_dict(yaml.safe_load(text))
