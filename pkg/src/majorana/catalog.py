"""Generators for the named states: Dicke, GHZ, dihedral, and the states
whose configurations are regular-solid vertex sets.

Solid orientations (documented so detection tests are reproducible):
tetrahedron with one vertex on +z and one ring vertex at azimuth 0;
octahedron on the coordinate axes; cube with vertices at (+-1,+-1,+-1);
icosahedron with poles on +-z and two staggered five-point rings at
latitude cos(theta) = +-1/sqrt(5); dodecahedron in the cube-inscribed
golden-ratio orientation.  With these choices the tetrahedral vertex state
coincides with `gen_tetrahedral` exactly, not merely up to rotation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .symstate import (
    MajoranaConfig,
    SymmetricState,
    to_dicke,
    unit_to_angles,
)

_GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0

SOLIDS = ("tetrahedron", "octahedron", "cube", "icosahedron", "dodecahedron")

# Largest per-vertex occupancy for which the vertex configuration stays
# rigid under its symmetry group (no occupancy split can preserve it).
MAX_MULTIPLICITY = {"tetrahedron": 2, "octahedron": 3, "cube": 3,
                    "icosahedron": 3, "dodecahedron": 2}

MAX_POINTS = 64


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    parameters: dict
    state: SymmetricState


def gen_dicke(n: int, k: int) -> SymmetricState:
    """Basis state with k excitations: n-k points north, k points south."""
    if not 0 <= k <= n:
        raise ValueError(f"excitation count {k} out of range for n={n}")
    amps = np.zeros(n + 1)
    amps[k] = 1.0
    return SymmetricState(n, amps)


def gen_ghz(n: int) -> SymmetricState:
    """Equal superposition of all-zero and all-one: an equatorial n-ring."""
    if n < 2:
        raise ValueError("GHZ needs at least 2 qubits")
    amps = np.zeros(n + 1)
    amps[0] = amps[n] = 1.0
    return SymmetricState(n, amps)


def gen_dihedral(n: int, p: int) -> SymmetricState:
    """(|k=p> + |k=n-p>)/sqrt(2): p points per pole, n-2p on the equator."""
    if p < 0 or n - 2 * p < 2:
        raise ValueError(f"need 0 <= p and a ring of n-2p >= 2 points, got p={p}, n={n}")
    amps = np.zeros(n + 1)
    amps[p] = amps[n - p] = 1.0
    return SymmetricState(n, amps)


def gen_tetrahedral() -> SymmetricState:
    """Four-qubit state whose configuration is a regular tetrahedron."""
    return SymmetricState(4, np.array([1.0, 0.0, 0.0, math.sqrt(2.0), 0.0]))


def platonic_vertices(solid: str) -> np.ndarray:
    """Unit vertex vectors of a regular solid, orientation as per module
    docstring."""
    if solid == "tetrahedron":
        ring_z = -1.0 / 3.0
        ring_r = math.sqrt(8.0) / 3.0
        verts = [(0.0, 0.0, 1.0)]
        for azimuth in (0.0, 2.0 * math.pi / 3.0, 4.0 * math.pi / 3.0):
            verts.append((ring_r * math.cos(azimuth), ring_r * math.sin(azimuth), ring_z))
        return np.array(verts)
    if solid == "octahedron":
        return np.array([(1.0, 0.0, 0.0), (-1.0, 0.0, 0.0), (0.0, 1.0, 0.0),
                         (0.0, -1.0, 0.0), (0.0, 0.0, 1.0), (0.0, 0.0, -1.0)])
    if solid == "cube":
        verts = [(x, y, z) for x in (1.0, -1.0) for y in (1.0, -1.0) for z in (1.0, -1.0)]
        return np.array(verts) / math.sqrt(3.0)
    if solid == "icosahedron":
        polar = math.atan2(2.0, 1.0)  # cos = 1/sqrt(5)
        verts = [(0.0, 0.0, 1.0), (0.0, 0.0, -1.0)]
        r = math.sin(polar)
        z = math.cos(polar)
        for j in range(5):
            upper = 2.0 * math.pi * j / 5.0
            lower = upper + math.pi / 5.0
            verts.append((r * math.cos(upper), r * math.sin(upper), z))
            verts.append((r * math.cos(lower), r * math.sin(lower), -z))
        return np.array(verts)
    if solid == "dodecahedron":
        verts = [(x, y, z) for x in (1.0, -1.0) for y in (1.0, -1.0) for z in (1.0, -1.0)]
        inv = 1.0 / _GOLDEN
        for a, b in [(inv, _GOLDEN), (-inv, _GOLDEN), (inv, -_GOLDEN), (-inv, -_GOLDEN)]:
            verts.append((0.0, a, b))
            verts.append((a, b, 0.0))
            verts.append((b, 0.0, a))
        arr = np.array(verts)
        return arr / np.linalg.norm(arr, axis=1)[:, None]
    raise ValueError(f"unknown solid {solid!r}; choose one of {SOLIDS}")


def gen_platonic(solid: str, multiplicity: int = 1) -> SymmetricState:
    """State whose configuration is `multiplicity` copies of each vertex."""
    verts = platonic_vertices(solid)
    cap = MAX_MULTIPLICITY[solid]
    if not 1 <= multiplicity <= cap:
        raise ValueError(f"multiplicity for {solid} must be in 1..{cap}, got {multiplicity}")
    total = len(verts) * multiplicity
    if total > MAX_POINTS:
        raise ValueError(f"{total} points exceeds the supported maximum {MAX_POINTS}")
    theta, phi = unit_to_angles(np.repeat(verts, multiplicity, axis=0))
    return to_dicke(MajoranaConfig(total, np.column_stack([theta, phi])))


def totally_invariant_states(n: int) -> list[CatalogEntry]:
    """All rigid-configuration states on n qubits from the single-orbit
    families: Dicke, dihedral, and the solid-vertex states.

    Mixed polyhedral occupancies (several orbits of one group at once) are
    not enumerated; the smallest such state needs 10 points, so the list
    is complete for n <= 7.  The vertex octahedron is omitted because it
    is a rotated copy of the dihedral state with p=1 on six qubits.
    """
    if n < 2:
        raise ValueError("need at least 2 qubits")
    entries = [CatalogEntry(f"S({n},{k})", {"n": n, "k": k}, gen_dicke(n, k))
               for k in range(1, n)]
    for p in range((n - 2) // 2 + 1):
        m = n - 2 * p
        entries.append(CatalogEntry(f"D{m}({n},{p})", {"n": n, "p": p},
                                    gen_dihedral(n, p)))
    if n == 4:
        entries.append(CatalogEntry("T", {}, gen_tetrahedral()))
    if n == 8:
        entries.append(CatalogEntry("cube", {}, gen_platonic("cube")))
    if n == 12:
        entries.append(CatalogEntry("icosahedron", {}, gen_platonic("icosahedron")))
    if n == 20:
        entries.append(CatalogEntry("dodecahedron", {}, gen_platonic("dodecahedron")))
    return entries
