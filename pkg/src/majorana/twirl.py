"""Group averaging in the symmetric subspace and the measure-equality
certificate.

Everything lives in the (n+1)-dimensional symmetric subspace: product
states along a direction are the coherent vectors, rotations act through
the spin-n/2 representation (matrix exponential of the spin operators),
and averaging a maximizing product state over the detected symmetry group
yields an invariant separable operator omega.  If the residual
Delta = (omega - Lambda |psi><psi|) / (1 - Lambda) is a density matrix
with no component on psi, then omega has the split that pins three
entanglement measures of psi to the common value -log2(Lambda).

The residual of the full 2^n-dimensional construction can have components
outside the symmetric subspace; omega here is built entirely inside the
subspace, so checking the subspace block of Delta is exactly the
positivity content of the certificate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .entanglement import EntanglementResult
from .symmetry import O2, SO2, SO3, TRIVIAL, SymmetryReport
from .symstate import Rotation, SymmetricState, coherent_amplitudes

_HERMITIAN_TOL = 1e-12

OVERLAP_TOL = 1e-6
PSD_TOL = 1e-9
RESIDUAL_COMPONENT_TOL = 1e-9
TRACE_TOL = 1e-9


@lru_cache(maxsize=64)
def spin_matrices(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(Jx, Jy, Jz) for spin n/2 in the excitation-number basis.

    Basis index k counts excitations, so Jz = diag(n/2 - k) and the
    lowering operator steps k -> k+1.
    """
    k = np.arange(n + 1)
    jz = np.diag(n / 2.0 - k)
    jminus = np.zeros((n + 1, n + 1))
    steps = np.sqrt((k[:-1] + 1.0) * (n - k[:-1]))
    jminus[k[:-1] + 1, k[:-1]] = steps
    jplus = jminus.T.copy()
    jx = 0.5 * (jplus + jminus)
    jy = -0.5j * (jplus - jminus)
    for mat in (jx, jy, jz):
        mat.flags.writeable = False
    return jx, jy, jz


def wigner_rotation(n: int, r: Rotation) -> np.ndarray:
    """Unitary action of a sphere rotation on the n-qubit symmetric subspace."""
    if n > 64:
        raise ValueError(f"qubit count {n} exceeds supported maximum 64")
    jx, jy, jz = spin_matrices(n)
    generator = r.axis[0] * jx + r.axis[1] * jy + r.axis[2] * jz
    return expm(-1j * r.angle * generator)


@dataclass(frozen=True, eq=False)
class SymmetricOperator:
    """Hermitian operator on the symmetric subspace, Dicke-basis matrix."""

    n: int
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape != (self.n + 1, self.n + 1):
            raise ValueError(f"expected a {self.n + 1}x{self.n + 1} matrix, got {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise ValueError("matrix entries must be finite")
        if np.max(np.abs(mat - mat.conj().T)) > _HERMITIAN_TOL * max(1.0, np.max(np.abs(mat))):
            raise ValueError("matrix is not Hermitian within tolerance")
        mat = 0.5 * (mat + mat.conj().T)
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    @property
    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix)[0])

    def expectation(self, state: SymmetricState) -> float:
        return float(np.vdot(state.amps, self.matrix @ state.amps).real)


@dataclass(frozen=True)
class TwirlCertificate:
    lambda_claimed: float
    overlap: float
    delta_min_eig: float
    delta_psi_component: float
    valid: bool


def rotation_aligning_z(axis: np.ndarray) -> Rotation:
    """A rotation carrying +z onto `axis`."""
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    z = np.array([0.0, 0.0, 1.0])
    cross = np.cross(z, axis)
    norm = np.linalg.norm(cross)
    if norm < 1e-12:
        if axis[2] > 0:
            return Rotation.identity()
        return Rotation(np.array([1.0, 0.0, 0.0]), math.pi)
    return Rotation(cross / norm, math.atan2(norm, float(axis[2])))


def group_average(direction: tuple[float, float], group: SymmetryReport,
                  n: int) -> SymmetricOperator:
    """Average of the product state along `direction` over the group action.

    Discrete groups average their element list; the axial groups dephase
    in the axis-aligned excitation basis (the closed form of the
    continuous average), with an extra flip average for the variant that
    has one.  The result is an invariant convex mixture of product states,
    so it is separable by construction.
    """
    theta, phi = float(direction[0]), float(direction[1])
    if group.kind == TRIVIAL:
        raise ValueError("averaging over the trivial group certifies nothing")
    if group.kind == SO3:
        raise ValueError("all-coincident configurations are product states; "
                         "no certificate applies")
    vec = coherent_amplitudes(n, theta, phi)
    if group.kind in (SO2, O2):
        align = wigner_rotation(n, rotation_aligning_z(group.axis))
        in_frame = align.conj().T @ vec
        omega = align @ np.diag(np.abs(in_frame) ** 2).astype(complex) @ align.conj().T
        if group.kind == O2:
            flip = wigner_rotation(n, group.generators[0])
            omega = 0.5 * (omega + flip @ omega @ flip.conj().T)
        return SymmetricOperator(n, omega)
    if not group.elements:
        raise ValueError(f"group kind {group.kind!r} carries no element list")
    omega = np.zeros((n + 1, n + 1), dtype=complex)
    projector = np.outer(vec, vec.conj())
    for element in group.elements:
        d = wigner_rotation(n, element)
        omega += d @ projector @ d.conj().T
    omega /= len(group.elements)
    return SymmetricOperator(n, omega)


def certify_equivalence(state: SymmetricState, ent: EntanglementResult,
                        sym: SymmetryReport, *,
                        require_total_invariance: bool = True) -> TwirlCertificate:
    """Build omega from the maximizer and check the certificate algebra.

    With `require_total_invariance=False` the machinery also runs for
    groups outside the catalog, which is how the negative control shows
    the hypothesis doing real work: the residual then fails positivity.
    """
    if require_total_invariance and not sym.totally_invariant:
        raise ValueError("state is not totally invariant; pass "
                         "require_total_invariance=False to probe anyway")
    if not ent.converged:
        raise ValueError("optimizer did not converge; certificate needs a maximizer")
    lam = ent.lam
    if lam >= 1.0 - 1e-12:
        raise ValueError("product state: 1 - Lambda vanishes and the "
                         "residual is undefined")
    omega = group_average((ent.theta, ent.phi), sym, state.n)
    overlap = omega.expectation(state)
    psi_projector = np.outer(state.amps, state.amps.conj())
    delta = SymmetricOperator(state.n,
                              (omega.matrix - lam * psi_projector) / (1.0 - lam))
    min_eig = delta.min_eigenvalue
    psi_component = delta.expectation(state)
    valid = (abs(overlap - lam) <= OVERLAP_TOL
             and min_eig >= -PSD_TOL
             and abs(psi_component) <= RESIDUAL_COMPONENT_TOL
             and abs(delta.trace - 1.0) <= TRACE_TOL)
    return TwirlCertificate(lambda_claimed=lam, overlap=float(overlap),
                            delta_min_eig=min_eig,
                            delta_psi_component=float(psi_component),
                            valid=bool(valid))
