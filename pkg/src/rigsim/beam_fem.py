"""
1-D Euler-Bernoulli beam finite elements: assembly, fixed-fixed static solve,
modal analysis and damped harmonic frequency sweeps with stress recovery.

Two-node Hermite-cubic elements, two DOFs per node (transverse deflection w,
rotation theta).  Local DOF order per element: [w_i, theta_i, w_j, theta_j].
Consistent mass throughout, so computed natural frequencies converge to the
continuum values from above as the mesh refines.

No shear deformation and no rotary inertia; slender-rod territory only.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .beam_statics import BeamSpec, second_moment, section_area, _intensity
from .errors import NumericalError, UnboundedResponseError

EIGEN_RESIDUAL_LIMIT = 1e-9


@dataclass(frozen=True)
class Mesh1D:
    """Nodes along the beam axis; node_positions[0] = 0, last = beam length."""
    node_positions: np.ndarray  # m, strictly increasing

    def __post_init__(self):
        pos = np.asarray(self.node_positions, dtype=float)
        object.__setattr__(self, "node_positions", pos)
        if len(pos) < 3:
            raise ValueError("mesh needs at least 2 elements (3 nodes)")
        if not np.all(np.diff(pos) > 0):
            raise ValueError("node positions must be strictly increasing")
        if pos[0] != 0.0:
            raise ValueError(f"first node must sit at 0, got {pos[0]}")

    @property
    def n_elements(self) -> int:
        return len(self.node_positions) - 1

    @property
    def n_nodes(self) -> int:
        return len(self.node_positions)

    @property
    def length(self) -> float:
        return float(self.node_positions[-1])

    @property
    def element_lengths(self) -> np.ndarray:
        return np.diff(self.node_positions)


def uniform_mesh(length: float, n_elements: int) -> Mesh1D:
    if length <= 0:
        raise ValueError(f"length must be positive, got {length}")
    return Mesh1D(np.linspace(0.0, length, n_elements + 1))


def element_matrices(EI: float, rhoA: float, L_e: float):
    """
    4x4 stiffness and consistent mass matrices of one Hermite-cubic element.

    Rigid-body translation and rotation lie in the stiffness null space;
    the translational mass content sums to rhoA*L_e.
    """
    if L_e <= 0:
        raise ValueError(f"element length must be positive, got {L_e}")
    if EI <= 0 or rhoA <= 0:
        raise ValueError("EI and rhoA must be positive")
    L = L_e
    L2 = L * L
    k = (EI / L**3) * np.array([
        [12.0, 6 * L, -12.0, 6 * L],
        [6 * L, 4 * L2, -6 * L, 2 * L2],
        [-12.0, -6 * L, 12.0, -6 * L],
        [6 * L, 2 * L2, -6 * L, 4 * L2],
    ])
    m = (rhoA * L / 420.0) * np.array([
        [156.0, 22 * L, 54.0, -13 * L],
        [22 * L, 4 * L2, 13 * L, -3 * L2],
        [54.0, 13 * L, 156.0, -22 * L],
        [-13 * L, -3 * L2, -22 * L, 4 * L2],
    ])
    return k, m


@dataclass
class DofSystem:
    """
    Assembled global system.  Node n owns DOFs (2n, 2n+1) = (deflection,
    rotation).  constrained_dofs lists removed DOFs; solves operate on the
    remaining free set and results are re-embedded into full-length vectors.
    """
    stiffness: np.ndarray
    mass: np.ndarray
    mesh: Mesh1D
    beam: BeamSpec
    constrained_dofs: tuple = ()
    _modal_cache: dict = field(default_factory=dict, repr=False)

    @property
    def n_dofs(self) -> int:
        return self.stiffness.shape[0]

    @property
    def free_dofs(self) -> np.ndarray:
        return np.setdiff1d(np.arange(self.n_dofs), np.array(self.constrained_dofs, dtype=int))

    def dof_indices(self, node: int) -> tuple:
        return 2 * node, 2 * node + 1

    def reduced(self):
        free = self.free_dofs
        ix = np.ix_(free, free)
        return self.stiffness[ix], self.mass[ix], free


@dataclass(frozen=True)
class ModalResult:
    frequencies: np.ndarray      # Hz, ascending
    mode_shapes: np.ndarray      # columns, mass-normalized, full DOF length
    degeneracy_expanded: bool


@dataclass(frozen=True)
class RayleighDamping:
    """Proportional damping C = alpha*M + beta*K."""
    alpha: float = 0.0  # 1/s
    beta: float = 0.0   # s

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be >= 0")

    @classmethod
    def from_damping_ratio(cls, zeta: float, f1: float, f2: float) -> "RayleighDamping":
        """
        Calibrate alpha, beta so the modal damping ratio equals zeta at the
        two anchor frequencies (Hz):

            zeta_i = alpha/(2*w_i) + beta*w_i/2
        """
        if not 0 < zeta < 1:
            raise ValueError(f"zeta must be in (0, 1), got {zeta}")
        if f1 <= 0 or f2 <= 0 or f1 == f2:
            raise ValueError("anchor frequencies must be positive and distinct")
        w1, w2 = 2 * np.pi * f1, 2 * np.pi * f2
        A = 0.5 * np.array([[1 / w1, w1], [1 / w2, w2]])
        alpha, beta = np.linalg.solve(A, np.array([zeta, zeta]))
        return cls(float(alpha), float(beta))

    @property
    def is_undamped(self) -> bool:
        return self.alpha == 0.0 and self.beta == 0.0


@dataclass(frozen=True)
class HarmonicResult:
    frequencies: np.ndarray        # Hz, ascending
    peak_displacement: np.ndarray  # m
    peak_stress: np.ndarray        # Pa
    peak_strain: np.ndarray        # dimensionless, = stress/E exactly


def assemble(mesh: Mesh1D, beam: BeamSpec) -> DofSystem:
    """Assemble global stiffness and consistent mass by DOF overlap."""
    if abs(mesh.length - beam.length) > 1e-12 * max(1.0, beam.length):
        raise ValueError(
            f"mesh length {mesh.length} does not match beam length {beam.length}"
        )
    EI = beam.material.youngs_modulus * second_moment(beam.section)
    rhoA = beam.material.density * section_area(beam.section)
    n_dofs = 2 * mesh.n_nodes
    K = np.zeros((n_dofs, n_dofs))
    M = np.zeros((n_dofs, n_dofs))
    for e, L_e in enumerate(mesh.element_lengths):
        ke, me = element_matrices(EI, rhoA, float(L_e))
        dofs = np.array([2 * e, 2 * e + 1, 2 * e + 2, 2 * e + 3])
        K[np.ix_(dofs, dofs)] += ke
        M[np.ix_(dofs, dofs)] += me
    return DofSystem(K, M, mesh, beam)


def apply_fixed_fixed(sys: DofSystem) -> DofSystem:
    """Clamp both end nodes (deflection and rotation), removing 4 DOFs."""
    n = sys.n_dofs
    constrained = (0, 1, n - 2, n - 1)
    reduced_sys = DofSystem(sys.stiffness, sys.mass, sys.mesh, sys.beam, constrained)
    Kr, Mr, _ = reduced_sys.reduced()
    try:
        scipy.linalg.cholesky(Mr)
    except scipy.linalg.LinAlgError as exc:
        raise NumericalError(f"reduced mass matrix not positive definite: {exc}") from exc
    return reduced_sys


def udl_force_vector(mesh: Mesh1D, w) -> np.ndarray:
    """
    Consistent nodal loads of a uniform load (N/m), full DOF length.

    Per element: [w*L/2, w*L^2/12, w*L/2, -w*L^2/12].
    """
    intensity = _intensity(w)
    f = np.zeros(2 * mesh.n_nodes)
    for e, L_e in enumerate(mesh.element_lengths):
        L = float(L_e)
        fe = intensity * np.array([L / 2, L**2 / 12, L / 2, -(L**2) / 12])
        f[2 * e:2 * e + 4] += fe
    return f


def solve_static(sys: DofSystem, udl) -> np.ndarray:
    """Solve K*u = f for the consistent UDL loads; returns full nodal vector."""
    if not sys.constrained_dofs:
        raise NumericalError("static solve on an unconstrained system is singular")
    Kr, _, free = sys.reduced()
    f = udl_force_vector(sys.mesh, udl)[free]
    try:
        ur = scipy.linalg.solve(Kr, f, assume_a="pos")
    except scipy.linalg.LinAlgError as exc:
        raise NumericalError(f"singular stiffness matrix: {exc}") from exc
    u = np.zeros(sys.n_dofs)
    u[free] = ur
    return u


def midspan_deflection(sys: DofSystem, u: np.ndarray) -> float:
    """Deflection at the node nearest midspan (exact node for even meshes)."""
    mid_node = int(np.argmin(np.abs(sys.mesh.node_positions - sys.mesh.length / 2)))
    return float(u[2 * mid_node])


def _polish_eigenpairs(Kr, Mr, vals, vecs, max_sweeps: int = 3):
    """
    One shifted-inverse-iteration step per mode, repeated until the relative
    residual clears EIGEN_RESIDUAL_LIMIT.  The LAPACK subset driver alone
    lands near 1e-8 on this badly scaled K/M pair; a single sweep drops it
    to ~1e-11.  Signs are fixed so repeated runs emit identical shapes.
    """
    for i in range(len(vals)):
        for _ in range(max_sweeps):
            v = vecs[:, i]
            kphi = Kr @ v
            res = np.linalg.norm(kphi - vals[i] * (Mr @ v)) / np.linalg.norm(kphi)
            if res <= 0.1 * EIGEN_RESIDUAL_LIMIT:
                break
            with warnings.catch_warnings():
                # (K - lam*M) is near-singular by construction here
                warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
                w = scipy.linalg.solve(Kr - vals[i] * Mr, Mr @ v)
            w /= np.sqrt(w @ Mr @ w)
            if w @ Mr @ v < 0:
                w = -w
            vecs[:, i] = w
            vals[i] = w @ Kr @ w
        # deterministic sign: largest-|.| entry positive
        pivot = np.argmax(np.abs(vecs[:, i]))
        if vecs[pivot, i] < 0:
            vecs[:, i] = -vecs[:, i]
    return vals, vecs


def _planar_modes(sys: DofSystem, n_planar: int):
    """Lowest n_planar eigenpairs of K*phi = w^2*M*phi on the free DOFs."""
    key = n_planar
    if key in sys._modal_cache:
        return sys._modal_cache[key]
    Kr, Mr, free = sys.reduced()
    n_free = Kr.shape[0]
    if n_planar > n_free:
        raise NumericalError(
            f"requested {n_planar} modes but the reduced system has {n_free} DOFs"
        )
    try:
        vals, vecs = scipy.linalg.eigh(Kr, Mr, subset_by_index=[0, n_planar - 1])
    except scipy.linalg.LinAlgError as exc:
        raise NumericalError(f"generalized eigen-solve failed: {exc}") from exc
    if np.any(vals <= 0):
        raise NumericalError("non-positive eigenvalue on a constrained structure")
    vals, vecs = _polish_eigenpairs(Kr, Mr, vals, vecs)
    # residual check: ||K*phi - w^2*M*phi|| / ||K*phi|| per mode
    for i in range(n_planar):
        kphi = Kr @ vecs[:, i]
        res = np.linalg.norm(kphi - vals[i] * (Mr @ vecs[:, i])) / np.linalg.norm(kphi)
        if res > EIGEN_RESIDUAL_LIMIT:
            raise NumericalError(f"eigen residual {res:.2e} exceeds {EIGEN_RESIDUAL_LIMIT:.0e}")
    omegas = np.sqrt(vals)
    shapes = np.zeros((sys.n_dofs, n_planar))
    shapes[free, :] = vecs  # eigh returns M-orthonormal vectors
    result = (omegas, shapes)
    sys._modal_cache[key] = result
    return result


def solve_modal(sys: DofSystem, n_modes: int, expand_degenerate: bool = False) -> ModalResult:
    """
    Natural frequencies and mass-normalized mode shapes.

    With expand_degenerate, each planar bending mode is emitted twice: the
    physical rod is axisymmetric and bends identically in two orthogonal
    planes, so its measured spectrum shows the modes in near-identical pairs.
    """
    if n_modes < 1:
        raise ValueError(f"n_modes must be >= 1, got {n_modes}")
    n_planar = (n_modes + 1) // 2 if expand_degenerate else n_modes
    omegas, shapes = _planar_modes(sys, n_planar)
    freqs = omegas / (2 * np.pi)
    if expand_degenerate:
        freqs = np.repeat(freqs, 2)[:n_modes]
        shapes = np.repeat(shapes, 2, axis=1)[:, :n_modes]
    return ModalResult(freqs, shapes, expand_degenerate)


def _element_end_curvatures(u: np.ndarray, mesh: Mesh1D) -> np.ndarray:
    """
    Curvature at both ends of every element from the Hermite second
    derivatives; rows are elements, columns (start, end).
    """
    n_el = mesh.n_elements
    kappa = np.zeros((n_el, 2), dtype=u.dtype)
    for e, L_e in enumerate(mesh.element_lengths):
        L = float(L_e)
        w1, t1, w2, t2 = u[2 * e], u[2 * e + 1], u[2 * e + 2], u[2 * e + 3]
        kappa[e, 0] = (-6 * w1 - 4 * L * t1 + 6 * w2 - 2 * L * t2) / L**2
        kappa[e, 1] = (6 * w1 + 2 * L * t1 - 6 * w2 + 4 * L * t2) / L**2
    return kappa


def stress_strain_recovery(u: np.ndarray, beam: BeamSpec, mesh: Mesh1D):
    """
    Peak bending stress (Pa) and strain over all element ends.

    sigma = E * kappa * c with c the outer radius; strain = sigma/E.
    """
    kappa = _element_end_curvatures(u, mesh)
    c = beam.section.outer_radius
    E = beam.material.youngs_modulus
    max_stress = float(np.max(np.abs(E * kappa * c)))
    return max_stress, max_stress / E


def end_moment_from_solution(sys: DofSystem, u: np.ndarray) -> float:
    """Recovered clamped-end moment M = E*I*kappa at the first element start."""
    kappa = _element_end_curvatures(u, sys.mesh)
    EI = sys.beam.material.youngs_modulus * second_moment(sys.beam.section)
    return float(abs(EI * kappa[0, 0]))


def harmonic_response(
    sys: DofSystem,
    damping: RayleighDamping,
    force: np.ndarray,
    f_grid,
) -> HarmonicResult:
    """
    Steady-state response over a frequency grid (Hz, ascending, positive).

    Per frequency solves (K - w^2*M + i*w*C) x = F with C = alpha*M + beta*K
    and records the peak displacement magnitude plus recovered peak bending
    stress/strain.  An undamped solve exactly at a natural frequency has no
    bounded answer and raises instead of returning garbage.
    """
    f_grid = np.asarray(f_grid, dtype=float)
    if len(f_grid) == 0:
        raise ValueError("empty frequency grid")
    if np.any(f_grid <= 0) or np.any(np.diff(f_grid) <= 0):
        raise ValueError("frequency grid must be positive and strictly ascending")
    if not sys.constrained_dofs:
        raise NumericalError("harmonic solve on an unconstrained system is singular")

    Kr, Mr, free = sys.reduced()
    Cr = damping.alpha * Mr + damping.beta * Kr
    Fr = np.asarray(force, dtype=float)[free]

    if damping.is_undamped:
        omegas, _ = _planar_modes(sys, Kr.shape[0])
        f_nat = omegas / (2 * np.pi)
        for f in f_grid:
            if np.any(np.abs(f_nat - f) <= 1e-9 * np.maximum(f_nat, 1.0)):
                raise UnboundedResponseError(
                    f"undamped response at natural frequency {f:.6g} Hz is unbounded"
                )

    trans = np.arange(0, sys.n_dofs, 2)  # translational DOFs of full vector
    c = sys.beam.section.outer_radius
    E = sys.beam.material.youngs_modulus

    n = len(f_grid)
    peak_disp = np.zeros(n)
    peak_stress = np.zeros(n)
    for i, f in enumerate(f_grid):
        w = 2 * np.pi * f
        Z = Kr - w**2 * Mr + 1j * w * Cr
        try:
            xr = scipy.linalg.solve(Z, Fr.astype(complex))
        except scipy.linalg.LinAlgError as exc:
            raise UnboundedResponseError(
                f"harmonic system singular at {f:.6g} Hz: {exc}"
            ) from exc
        x = np.zeros(sys.n_dofs, dtype=complex)
        x[free] = xr
        peak_disp[i] = float(np.max(np.abs(x[trans])))
        kappa = _element_end_curvatures(x, sys.mesh)
        peak_stress[i] = float(np.max(np.abs(E * kappa * c)))
    return HarmonicResult(f_grid, peak_disp, peak_stress, peak_stress / E)


def analysis_system(beam: BeamSpec, n_elements: int) -> DofSystem:
    """Uniform fixed-fixed system for the given beam, ready to solve."""
    return apply_fixed_fixed(assemble(uniform_mesh(beam.length, n_elements), beam))
