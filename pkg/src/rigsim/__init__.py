"""
rigsim: simulation and analysis toolkit for a 3-axis gantry end-effector
test rig. Rod structural analysis (closed form and FE), drive kinematics,
sensor models, fuzzy-PID grasp control, and the gripper test matrix.
"""

from .beam_statics import (
    BeamSpec,
    ComponentMassList,
    MaterialSpec,
    TubeSection,
    UdlLoad,
)
from .beam_fem import (
    HarmonicResult,
    Mesh1D,
    ModalResult,
    RayleighDamping,
    analysis_system,
    harmonic_response,
    solve_modal,
    solve_static,
)
from .config import RigConfig, load_config
from .errors import ConfigError, NumericalError, UnboundedResponseError, UnstableLoopError
from .fuzzy import FuzzySystem, default_grasp_fuzzy, fuzzy_desired_force
from .grasp import ContactPlant, GraspTrace, PidGains, grasp_simulate
from .motion import Axis, AxisSpec, LeadScrewSpec, MotionProfile, StepperSpec, plan_trapezoid
from .sensors import EncoderSpec, FsrSpec, UltrasonicSensor, UltrasonicSpec
from .test_matrix import (
    Scenario,
    TestMatrixReport,
    measure_bandwidth,
    positioning_efficiency,
    required_grasp_force,
    run_pick_place,
)

__version__ = "0.1.0"
