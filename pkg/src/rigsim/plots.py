"""
Figure rendering for the CLI report path.

Every writer takes the already-computed result plus a target path and
returns the path written.  Uses the Agg backend throughout: this package
only ever renders to files.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

DPI = 150


def plot_modal(result, mesh, path):
    """Frequency stems plus the distinct transverse mode shapes."""
    fig, (ax_f, ax_s) = plt.subplots(1, 2, figsize=(9, 3.5))
    modes = np.arange(1, len(result.frequencies) + 1)
    ax_f.stem(modes, result.frequencies)
    ax_f.set_xlabel("mode")
    ax_f.set_ylabel("frequency [Hz]")
    ax_f.set_xticks(modes)
    ax_f.grid(alpha=0.3)

    x = mesh.node_positions
    seen = set()
    for i, f in enumerate(result.frequencies):
        key = round(float(f), 6)
        if key in seen:
            continue  # skip the duplicate of a degenerate pair
        seen.add(key)
        shape = result.mode_shapes[0::2, i]
        peak = np.max(np.abs(shape))
        if peak > 0:
            shape = shape / peak
        ax_s.plot(x, shape, label=f"{f:.1f} Hz")
    ax_s.set_xlabel("position [m]")
    ax_s.set_ylabel("normalized deflection")
    ax_s.legend(fontsize=8)
    ax_s.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def plot_harmonic(result, path):
    """Displacement and stress response curves over the frequency grid."""
    fig, (ax_d, ax_s) = plt.subplots(2, 1, figsize=(7, 5.5), sharex=True)
    ax_d.semilogy(result.frequencies, result.peak_displacement)
    ax_d.set_ylabel("peak displacement [m]")
    ax_d.grid(alpha=0.3, which="both")
    ax_s.semilogy(result.frequencies, result.peak_stress)
    ax_s.set_ylabel("peak stress [Pa]")
    ax_s.set_xlabel("frequency [Hz]")
    ax_s.grid(alpha=0.3, which="both")
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def plot_motion(rows, path):
    """Per-axis position and velocity histories from trajectory rows."""
    fig, (ax_p, ax_v) = plt.subplots(2, 1, figsize=(7, 5.5), sharex=True)
    axes_present = sorted({row[1] for row in rows})
    for name in axes_present:
        pts = [(t, p, v) for t, a, p, v in rows if a == name]
        t = [r[0] for r in pts]
        ax_p.plot(t, [r[1] for r in pts], label=name)
        ax_v.plot(t, [r[2] for r in pts], label=name)
    ax_p.set_ylabel("position [m]")
    ax_p.legend()
    ax_p.grid(alpha=0.3)
    ax_v.set_ylabel("velocity [m/s]")
    ax_v.set_xlabel("time [s]")
    ax_v.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def plot_grasp(trace, path):
    """Force histories of the closed grasp loop."""
    fig, (ax_f, ax_e) = plt.subplots(2, 1, figsize=(7, 5.5), sharex=True)
    ax_f.plot(trace.t, trace.desired, label="desired", linestyle="--")
    ax_f.plot(trace.t, trace.contact, label="contact")
    ax_f.plot(trace.t, trace.applied, label="applied", alpha=0.6)
    ax_f.set_ylabel("force [N]")
    ax_f.legend()
    ax_f.grid(alpha=0.3)
    ax_e.plot(trace.t, trace.error)
    ax_e.set_ylabel("error [N]")
    ax_e.set_xlabel("time [s]")
    ax_e.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def plot_pick_place(result, path):
    """Motion trajectories with the grasp-force history of a scenario run."""
    fig, (ax_p, ax_g) = plt.subplots(2, 1, figsize=(7, 5.5))
    for name in "xyz":
        pts = [(t, p) for t, a, p, _ in result.motion_rows if a == name]
        if pts:
            ax_p.plot([r[0] for r in pts], [r[1] for r in pts], label=name)
    ax_p.set_ylabel("axis position [m]")
    ax_p.set_xlabel("time [s]")
    ax_p.legend()
    ax_p.grid(alpha=0.3)
    if result.grasp_trace is not None:
        ax_g.plot(result.grasp_trace.t, result.grasp_trace.desired,
                  linestyle="--", label="desired")
        ax_g.plot(result.grasp_trace.t, result.grasp_trace.contact, label="contact")
        ax_g.axhline(result.report.grasping_force, color="k", alpha=0.4,
                     label="required")
        ax_g.legend()
    ax_g.set_ylabel("grasp force [N]")
    ax_g.set_xlabel("grasp time [s]")
    ax_g.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path
