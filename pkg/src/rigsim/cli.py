"""
rigsim command line: one subcommand per analysis, CSV/key-value reports
plus rendered figures in the output directory.

Exit codes: 0 success, 1 configuration error, 2 numerical failure,
3 scenario failure (missed pick, grasp timeout).  Errors print a single
machine-parseable line `code=<n> msg=<text>` on stderr.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from . import plots
from .beam_fem import analysis_system, harmonic_response, solve_modal, udl_force_vector
from .beam_statics import statics_report
from .config import load_config
from .errors import ConfigError, NumericalError
from .fuzzy import fuzzy_desired_force
from .grasp import grasp_simulate
from .refcheck import run_reference_checks
from .test_matrix import SUCCESS, run_pick_place

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_SCENARIO = 3

MODAL_HEADER = "mode,frequency_hz"
HARMONIC_HEADER = "frequency_hz,displacement_m,stress_pa,strain"
MOTION_HEADER = "t_s,axis,position_m,velocity_mps"
GRASP_HEADER = "t_s,desired_n,applied_n,contact_n,error_n"
SENSOR_HEADER = "t_s,sensor,value,unit"
MATRIX_HEADER = "grasping_force_n,operating_bandwidth_hz,positioning_efficiency,outcome"


def _fmt(value) -> str:
    """Stable scalar formatting: repr round-trips floats bit-exactly."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _csv_lines(header: str, rows) -> str:
    lines = [header]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _kv_lines(report: dict, fmt: str) -> str:
    if fmt == "csv":
        return _csv_lines("key,value", report.items())
    return "\n".join(f"{k}={_fmt(v)}" for k, v in report.items()) + "\n"


class Emitter:
    """Writes the per-command outputs to a directory or streams to stdout."""

    def __init__(self, out, fmt: str, plot: bool):
        self.stream = out == "-"
        self.fmt = fmt
        self.plot = plot and not self.stream
        self.out_dir = None if self.stream else Path(out)
        if self.out_dir is not None:
            self.out_dir.mkdir(parents=True, exist_ok=True)

    def csv(self, name: str, header: str, rows, primary=False):
        text = _csv_lines(header, rows)
        if self.stream:
            if primary:
                sys.stdout.write(text)
            return None
        path = self.out_dir / name
        path.write_text(text)
        return path

    def kv(self, report: dict, primary=True):
        text = _kv_lines(report, self.fmt)
        if self.stream:
            if primary:
                sys.stdout.write(text)
            return None
        path = self.out_dir / "report.kv"
        path.write_text(text)
        return path

    def text(self, name: str, content: str):
        if self.stream:
            return None
        path = self.out_dir / name
        path.write_text(content)
        return path

    def figure(self, name: str, render):
        if not self.plot:
            return None
        return render(self.out_dir / name)


def cmd_statics(config, emitter, args):
    report = statics_report(config.beam_spec(), config.udl())
    emitter.kv(report)
    return EXIT_OK


def cmd_modal(config, emitter, args):
    sys_ = analysis_system(config.modal_beam_spec(), config.fem_elements)
    result = solve_modal(sys_, config.fem_modes, config.expand_degenerate)
    rows = [(i + 1, f) for i, f in enumerate(result.frequencies)]
    emitter.csv("modal.csv", MODAL_HEADER, rows, primary=True)
    emitter.figure("modal.png", lambda p: plots.plot_modal(result, sys_.mesh, p))
    return EXIT_OK


def cmd_harmonic(config, emitter, args):
    sys_ = analysis_system(config.modal_beam_spec(), config.fem_elements)
    anchors = solve_modal(sys_, 2).frequencies
    damping = config.damping(float(anchors[0]), float(anchors[1]))
    force = udl_force_vector(sys_.mesh, config.udl())
    result = harmonic_response(sys_, damping, force, config.harmonic_grid())
    rows = zip(result.frequencies, result.peak_displacement,
               result.peak_stress, result.peak_strain)
    emitter.csv("harmonic.csv", HARMONIC_HEADER, rows, primary=True)
    emitter.figure("harmonic.png", lambda p: plots.plot_harmonic(result, p))
    return EXIT_OK


def cmd_move(config, emitter, args):
    axes = config.axes()
    axis = axes[args.axis]
    axis.home()
    trajectory = axis.move_to(args.target, v_max=args.v_max, a_max=args.a_max)
    rows = [(t, args.axis, p, v) for t, p, v in trajectory]
    emitter.csv("trace.csv", MOTION_HEADER, rows, primary=True)
    emitter.figure("trace.png", lambda p: plots.plot_motion(rows, p))
    return EXIT_OK


def cmd_grasp(config, emitter, args):
    system = config.fuzzy_system()
    # configured fuzzy inputs are constant over the run, so the desired
    # force is a single inference rather than one per control step
    desired = fuzzy_desired_force(*config.grasp_inputs, system)
    trace = grasp_simulate(
        config.plant(), config.gains(), lambda t: desired,
        config.grasp_duration, config.grasp_dt, fsr=config.fsr_spec(),
    )
    emitter.csv("trace.csv", GRASP_HEADER, trace.rows(), primary=True)
    emitter.figure("trace.png", lambda p: plots.plot_grasp(trace, p))
    return EXIT_OK


def _run_scenario(config, args):
    return run_pick_place(
        config.scenario(), config.axes(), config.plant(), config.gains(),
        config.fuzzy_system(), fsr=config.fsr_spec(),
        ultrasonic=config.ultrasonic_spec(), seed=args.seed,
        **config.bandwidth_settings,
    )


def _matrix_row(result):
    report = result.report
    return [(report.grasping_force, report.operating_bandwidth,
             report.positioning_efficiency, result.outcome)]


def cmd_testmatrix(config, emitter, args):
    result = _run_scenario(config, args)
    report = dict(result.report.as_dict(), outcome=result.outcome)
    emitter.kv(report)
    emitter.csv("testmatrix.csv", MATRIX_HEADER, _matrix_row(result))
    if result.outcome != SUCCESS:
        print(f"code={EXIT_SCENARIO} msg=scenario failed: {result.outcome}",
              file=sys.stderr)
        return EXIT_SCENARIO
    return EXIT_OK


def cmd_pickplace(config, emitter, args):
    result = _run_scenario(config, args)
    report = dict(result.report.as_dict(), outcome=result.outcome)
    emitter.kv(report)
    emitter.csv("testmatrix.csv", MATRIX_HEADER, _matrix_row(result))
    emitter.csv("trace.csv", MOTION_HEADER, result.motion_rows)
    emitter.csv("sensors.csv", SENSOR_HEADER, result.sensor_rows)
    emitter.text("events.log", result.format_events())
    if result.grasp_trace is not None:
        emitter.csv("grasp.csv", GRASP_HEADER, result.grasp_trace.rows())
    emitter.figure("pickplace.png", lambda p: plots.plot_pick_place(result, p))
    if result.outcome != SUCCESS:
        print(f"code={EXIT_SCENARIO} msg=scenario failed: {result.outcome}",
              file=sys.stderr)
        return EXIT_SCENARIO
    return EXIT_OK


def cmd_paper_check(config, emitter, args):
    vectors = run_reference_checks(config)
    for v in vectors:
        print(v.line())
    if all(v.ok for v in vectors):
        return EXIT_OK
    bad = sum(1 for v in vectors if not v.ok)
    print(f"code={EXIT_NUMERICAL} msg={bad} reference vector(s) failed",
          file=sys.stderr)
    return EXIT_NUMERICAL


COMMANDS = {
    "statics": cmd_statics,
    "modal": cmd_modal,
    "harmonic": cmd_harmonic,
    "move": cmd_move,
    "grasp": cmd_grasp,
    "testmatrix": cmd_testmatrix,
    "pickplace": cmd_pickplace,
    "paper-check": cmd_paper_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rigsim",
        description="Structural, kinematic and grasp-control analysis of the "
                    "3-axis end-effector test rig",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("statics", "closed-form rod statics report"),
        ("modal", "finite-element natural frequencies"),
        ("harmonic", "damped frequency sweep with stress recovery"),
        ("move", "single-axis trapezoidal move trace"),
        ("grasp", "fuzzy-PID grasp loop trace"),
        ("testmatrix", "three-metric gripper report for the scenario"),
        ("pickplace", "full conveyor pick-and-place run"),
        ("paper-check", "verify the built-in reference vectors"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", default=None, help="YAML config file")
        p.add_argument("--out", default="out",
                       help="output directory, or - to stream CSV to stdout")
        p.add_argument("--format", choices=("csv", "kv"), default="kv",
                       help="scalar report format")
        p.add_argument("--seed", type=int, default=None, help="noise stream seed")
        p.add_argument("--no-plot", action="store_true",
                       help="skip figure rendering")
        p.add_argument("--dump-config", default=None, metavar="PATH",
                       help="write the effective config to PATH")
        if name == "move":
            p.add_argument("--axis", choices=("x", "y", "z"), default="x")
            p.add_argument("--target", type=float, required=True,
                           help="absolute target position in m")
            p.add_argument("--v-max", type=float, default=None)
            p.add_argument("--a-max", type=float, default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        if args.dump_config:
            Path(args.dump_config).write_text(config.dump())
        emitter = Emitter(args.out, args.format, plot=not args.no_plot)
        return COMMANDS[args.command](config, emitter, args)
    except ConfigError as exc:
        print(f"code={EXIT_CONFIG} msg={exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"code={EXIT_NUMERICAL} msg={exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, RuntimeError) as exc:
        # bad user input (targets, grids) maps to the config exit code
        print(f"code={EXIT_CONFIG} msg={exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
