"""Core state model: Dicke amplitudes, sphere-point configurations, and
exact conversions between the two pictures.

A permutation-symmetric n-qubit state is held as a normalized vector of
n+1 Dicke amplitudes a_0..a_n (a_k multiplies the k-excitation basis state).
The same state is equivalently a multiset of n directions on the unit
sphere: the amplitudes define the polynomial with coefficients
sqrt(C(n,k)) * a_k, whose roots are stereographic images of "zero
directions"; each configuration point is the antipode of a zero direction,
and every degree drop at the top of the coefficient list contributes one
point at the exact north pole.  The inverse conversion multiplies one
first-degree factor per point and renormalizes.

Angles are radians throughout: theta is the polar angle in [0, pi]
measured from +z, phi the azimuth in [0, 2*pi).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.transform import Rotation as _SciRotation

from ._roots import MAX_DEGREE, effective_degree, polynomial_roots

TWO_PI = 2.0 * math.pi

# Default angular tolerance for treating two points as coincident.
COINCIDENCE_TOL = 1e-6

# Below this polar distance a point is snapped onto the exact pole, where
# the azimuth is meaningless and canonicalized to zero.
_POLE_SNAP = 1e-12


def binomial_weights(n: int) -> np.ndarray:
    """sqrt(C(n, k)) for k = 0..n, exact integers before the square root."""
    return np.sqrt(np.array([math.comb(n, k) for k in range(n + 1)], dtype=float))


def angles_to_unit(theta, phi) -> np.ndarray:
    """Spherical angles to unit vectors; broadcasts, returns shape (..., 3)."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def unit_to_angles(vecs) -> tuple[np.ndarray, np.ndarray]:
    """Unit vectors to (theta, phi); phi wrapped into [0, 2*pi)."""
    v = np.asarray(vecs, dtype=float)
    theta = np.arctan2(np.hypot(v[..., 0], v[..., 1]), v[..., 2])
    phi = np.arctan2(v[..., 1], v[..., 0]) % TWO_PI
    return theta, phi


def _canonical_points(points: np.ndarray) -> np.ndarray:
    """Wrap angles, zero the azimuth at the poles, sort lexicographically."""
    vecs = angles_to_unit(points[:, 0], points[:, 1])
    theta, phi = unit_to_angles(vecs)
    north = theta <= _POLE_SNAP
    south = theta >= math.pi - _POLE_SNAP
    theta = np.where(north, 0.0, np.where(south, math.pi, theta))
    phi = np.where(north | south, 0.0, phi)
    order = np.lexsort((phi, theta))
    return np.column_stack([theta[order], phi[order]])


@dataclass(frozen=True, eq=False)
class SymmetricState:
    """Normalized Dicke-amplitude vector for n qubits.

    The constructor rescales to unit norm (rejecting the zero vector), so
    every instance satisfies sum |a_k|^2 = 1 to machine precision.
    """

    n: int
    amps: np.ndarray

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"qubit count must be a positive integer, got {self.n!r}")
        amps = np.atleast_1d(np.asarray(self.amps, dtype=complex))
        if amps.shape != (self.n + 1,):
            raise ValueError(
                f"expected {self.n + 1} amplitudes for n={self.n}, got shape {amps.shape}")
        norm = float(np.linalg.norm(amps))
        if not np.isfinite(norm) or norm < 1e-12:
            raise ValueError("amplitude vector must have nonzero finite norm")
        amps = amps / norm
        amps.flags.writeable = False
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "amps", amps)


@dataclass(frozen=True, eq=False)
class MajoranaConfig:
    """Multiset of n sphere points plus a tracked global phase.

    Points are stored canonically (wrapped angles, zero azimuth at the
    poles, sorted by (theta, phi)), so two equal multisets compare equal
    entrywise.  The phase makes `to_dicke` reproduce amplitudes exactly,
    but it never participates in comparisons: states are rays.
    """

    n: int
    points: np.ndarray
    global_phase: float = 0.0

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"point count must be a positive integer, got {self.n!r}")
        pts = np.asarray(self.points, dtype=float)
        if pts.size != 2 * self.n:
            raise ValueError(f"expected {self.n} (theta, phi) pairs, got shape {pts.shape}")
        pts = _canonical_points(pts.reshape(self.n, 2))
        pts.flags.writeable = False
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "global_phase", float(self.global_phase) % TWO_PI)

    def unit_vectors(self) -> np.ndarray:
        """All n points as unit vectors, shape (n, 3), in canonical order."""
        return angles_to_unit(self.points[:, 0], self.points[:, 1])

    def __eq__(self, other):
        if not isinstance(other, MajoranaConfig):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.points, other.points)


@dataclass(frozen=True, eq=False)
class MajoranaPolynomial:
    """Coefficients c_k = sqrt(C(n,k)) a_k of the state's root polynomial."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if c.ndim != 1 or len(c) < 2:
            raise ValueError("need at least two coefficients")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        """Effective degree after dropping near-zero trailing coefficients."""
        return effective_degree(self.coeffs)

    def __call__(self, alpha):
        out = np.zeros_like(np.asarray(alpha, dtype=complex))
        for c in self.coeffs[::-1]:
            out = out * alpha + c
        return out


@dataclass(frozen=True)
class Rotation:
    """Axis-angle rotation of the sphere (right-hand rule, active)."""

    axis: np.ndarray
    angle: float

    def __post_init__(self):
        ax = np.asarray(self.axis, dtype=float).reshape(3)
        norm = float(np.linalg.norm(ax))
        if not np.isfinite(norm) or norm < 1e-12:
            raise ValueError("rotation axis must be a nonzero 3-vector")
        ax = ax / norm
        ax.flags.writeable = False
        object.__setattr__(self, "axis", ax)
        object.__setattr__(self, "angle", float(self.angle))

    @staticmethod
    def identity() -> "Rotation":
        return Rotation(np.array([0.0, 0.0, 1.0]), 0.0)

    @staticmethod
    def from_matrix(mat) -> "Rotation":
        rotvec = _SciRotation.from_matrix(np.asarray(mat, dtype=float)).as_rotvec()
        angle = float(np.linalg.norm(rotvec))
        if angle < 1e-15:
            return Rotation.identity()
        return Rotation(rotvec / angle, angle)

    def matrix(self) -> np.ndarray:
        return _SciRotation.from_rotvec(self.angle * self.axis).as_matrix()

    def apply(self, vecs) -> np.ndarray:
        """Rotate one or many 3-vectors."""
        return np.asarray(vecs, dtype=float) @ self.matrix().T

    def compose(self, other: "Rotation") -> "Rotation":
        """Rotation equal to applying `other` first, then `self`."""
        return Rotation.from_matrix(self.matrix() @ other.matrix())

    def inverse(self) -> "Rotation":
        return Rotation(self.axis, -self.angle)


def make_state(amps) -> SymmetricState:
    """Validating, normalizing constructor; infers n from the length."""
    arr = np.atleast_1d(np.asarray(amps))
    return SymmetricState(arr.shape[0] - 1, arr)


def state_fidelity(a: SymmetricState, b: SymmetricState) -> float:
    """|<a|b>|^2; raises on mismatched qubit counts."""
    if a.n != b.n:
        raise ValueError(f"qubit counts differ: {a.n} vs {b.n}")
    return float(abs(np.vdot(a.amps, b.amps)) ** 2)


def majorana_polynomial(state: SymmetricState) -> MajoranaPolynomial:
    return MajoranaPolynomial(binomial_weights(state.n) * state.amps)


def _product_amplitudes(points: np.ndarray) -> np.ndarray:
    """Normalized Dicke amplitudes of the symmetrized product over `points`.

    Multiplies the first-degree factor cos(t/2) + sin(t/2) e^{i phi} alpha
    for each point; points at the exact north pole contribute [1, 0], which
    is what makes the top coefficients vanish for them.
    """
    poly = np.array([1.0 + 0.0j])
    for theta, phi in points:
        half = 0.5 * theta
        factor = np.array([math.cos(half), math.sin(half) * np.exp(1j * phi)])
        poly = np.convolve(poly, factor)
    amps = poly / binomial_weights(len(points))
    return amps / np.linalg.norm(amps)


def to_majorana(state: SymmetricState) -> MajoranaConfig:
    """Decompose a state into its point configuration.

    Root alpha of the coefficient polynomial lies at stereographic
    coordinate alpha = e^{-i phi} tan(theta/2) of a zero direction; the
    configuration point is that direction's antipode.  Roots at infinity
    (degree drops) become points at the exact north pole; the root at the
    origin becomes the exact south pole.  The stored global phase is chosen
    so that `to_dicke` reproduces `state.amps` exactly, not just the ray.
    """
    n = state.n
    coeffs = binomial_weights(n) * state.amps
    finite, n_inf = polynomial_roots(coeffs)
    pts = np.zeros((n, 2))
    if len(finite):
        theta_zero = 2.0 * np.arctan(np.abs(finite))
        phi_zero = (-np.angle(finite)) % TWO_PI
        pts[n_inf:, 0] = math.pi - theta_zero
        pts[n_inf:, 1] = (phi_zero + math.pi) % TWO_PI
    config = MajoranaConfig(n, pts, 0.0)
    recon = _product_amplitudes(config.points)
    phase = float(np.angle(np.vdot(recon, state.amps))) % TWO_PI
    return MajoranaConfig(n, pts, phase)


def to_dicke(config: MajoranaConfig) -> SymmetricState:
    """Inverse of `to_majorana`: expand the product over all points."""
    if config.n > MAX_DEGREE:
        raise ValueError(f"point count {config.n} exceeds supported maximum {MAX_DEGREE}")
    amps = _product_amplitudes(config.points) * np.exp(1j * config.global_phase)
    return SymmetricState(config.n, amps)


def rotate(config: MajoranaConfig, r: Rotation) -> MajoranaConfig:
    """Rigidly rotate every point; the stored phase is carried unchanged."""
    theta, phi = unit_to_angles(r.apply(config.unit_vectors()))
    return MajoranaConfig(config.n, np.column_stack([theta, phi]), config.global_phase)


def rotate_state(state: SymmetricState, r: Rotation) -> SymmetricState:
    """Rotate a state by round-tripping through its point configuration.

    The result is the rotated ray; its global phase follows the product
    expansion convention rather than any particular unitary's phase.
    """
    return to_dicke(rotate(to_majorana(state), r))


def coherent_amplitudes(n: int, theta: float, phi: float) -> np.ndarray:
    """Dicke amplitudes of the n-fold product of one qubit along (theta, phi)."""
    k = np.arange(n + 1)
    c = math.cos(0.5 * theta)
    s = math.sin(0.5 * theta) * np.exp(1j * phi)
    return binomial_weights(n) * c ** (n - k) * s ** k


def overlap_product(state: SymmetricState, theta: float, phi: float) -> complex:
    """Amplitude of `state` on the product state along (theta, phi)."""
    return complex(np.vdot(coherent_amplitudes(state.n, theta, phi), state.amps))


def pairwise_angles(vecs: np.ndarray) -> np.ndarray:
    """Symmetric matrix of angular separations between unit vectors."""
    return pairwise_angles_cross(vecs, vecs)


def cluster_directions(vecs: np.ndarray, tol: float = COINCIDENCE_TOL) -> list[np.ndarray]:
    """Single-linkage clusters of directions at angular tolerance `tol`.

    Returns index arrays, ordered by each cluster's smallest member index.
    """
    m = len(vecs)
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    ang = pairwise_angles(vecs)
    for i in range(m):
        for j in range(i + 1, m):
            if ang[i, j] <= tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    return [np.array(groups[r]) for r in sorted(groups)]


def config_close(a: MajoranaConfig, b: MajoranaConfig, tol: float = 1e-8) -> bool:
    """Whether two configurations match as multisets within angular `tol`.

    Uses optimal assignment, so coincident-point orderings cannot cause
    spurious mismatches.
    """
    if a.n != b.n:
        return False
    cost = pairwise_angles_cross(a.unit_vectors(), b.unit_vectors())
    rows, cols = linear_sum_assignment(cost)
    return bool(cost[rows, cols].max() <= tol)


def pairwise_angles_cross(va: np.ndarray, vb: np.ndarray) -> np.ndarray:
    # arctan2(|cross|, dot) rather than arccos(dot): the latter loses half
    # the working precision near coincident or antipodal directions.
    va, vb = np.asarray(va), np.asarray(vb)
    dots = va @ vb.T
    crosses = np.linalg.norm(np.cross(va[:, None, :], vb[None, :, :]), axis=-1)
    return np.arctan2(crosses, dots)


def random_symmetric_state(n: int, rng: np.random.Generator | None = None) -> SymmetricState:
    """State with independent standard-normal real and imaginary parts."""
    rng = np.random.default_rng() if rng is None else rng
    amps = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    return SymmetricState(n, amps)


class SchemaError(ValueError):
    """Malformed JSON payload; `path` pinpoints the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def to_json_dict(obj: SymmetricState | MajoranaConfig) -> dict:
    if isinstance(obj, SymmetricState):
        return {
            "n": obj.n,
            "dicke": [{"re": float(a.real), "im": float(a.imag)} for a in obj.amps],
        }
    if isinstance(obj, MajoranaConfig):
        return {
            "n": obj.n,
            "majorana": [{"theta": float(t), "phi": float(p)} for t, p in obj.points],
            "phase": float(obj.global_phase),
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json_text(obj: SymmetricState | MajoranaConfig) -> str:
    return json.dumps(to_json_dict(obj))


def _require_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(path, f"expected a number, got {value!r}")
    return float(value)


def parse_json_dict(data) -> SymmetricState | MajoranaConfig:
    """Parse either JSON form; raises SchemaError with a field path."""
    if not isinstance(data, dict):
        raise SchemaError("$", f"expected an object, got {type(data).__name__}")
    if "n" not in data:
        raise SchemaError("$.n", "missing required field")
    n = data["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SchemaError("$.n", f"expected a positive integer, got {n!r}")
    has_dicke = "dicke" in data
    has_majorana = "majorana" in data
    if has_dicke == has_majorana:
        raise SchemaError("$", "exactly one of 'dicke'/'majorana' must be present")
    if has_dicke:
        entries = data["dicke"]
        if not isinstance(entries, list) or len(entries) != n + 1:
            raise SchemaError("$.dicke", f"expected a list of {n + 1} entries")
        amps = np.zeros(n + 1, dtype=complex)
        for i, entry in enumerate(entries):
            if not isinstance(entry, dict):
                raise SchemaError(f"$.dicke[{i}]", "expected an object with 're'/'im'")
            for key in ("re", "im"):
                if key not in entry:
                    raise SchemaError(f"$.dicke[{i}].{key}", "missing required field")
            amps[i] = complex(_require_number(entry["re"], f"$.dicke[{i}].re"),
                              _require_number(entry["im"], f"$.dicke[{i}].im"))
        try:
            return SymmetricState(n, amps)
        except ValueError as exc:
            raise SchemaError("$.dicke", str(exc)) from exc
    entries = data["majorana"]
    if not isinstance(entries, list) or len(entries) != n:
        raise SchemaError("$.majorana", f"expected a list of {n} entries")
    pts = np.zeros((n, 2))
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise SchemaError(f"$.majorana[{i}]", "expected an object with 'theta'/'phi'")
        for key in ("theta", "phi"):
            if key not in entry:
                raise SchemaError(f"$.majorana[{i}].{key}", "missing required field")
        pts[i] = (_require_number(entry["theta"], f"$.majorana[{i}].theta"),
                  _require_number(entry["phi"], f"$.majorana[{i}].phi"))
    phase = _require_number(data.get("phase", 0.0), "$.phase")
    return MajoranaConfig(n, pts, phase)


def parse_json_text(text: str) -> SymmetricState | MajoranaConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from exc
    return parse_json_dict(data)
