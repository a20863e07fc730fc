"""Point-group detection for sphere configurations and the total-invariance
catalog test.

`detect_group` finds the largest subgroup of SO(3) whose rotations permute
the configuration's point multiset.  Coincident points are first merged
into weighted "sites".  Degenerate layouts (one site; all sites on one
axis) are dispatched to the continuous groups directly.  Otherwise the
finite group is assembled from candidate axes (site directions, pairwise
sums, pairwise cross products), validated ring by ring, and closed under
composition; the closure step matters because some high-order axes (for
example the five-fold axes of a dodecahedral configuration) are not
spanned by any single site or pair.

`is_totally_invariant` pattern-matches the configuration against the
per-group catalog of rigid layouts: ones where every infinitesimal motion
of the points breaks the symmetry.  Cyclic groups never qualify (rings can
slide along the axis); axial groups qualify exactly when all points sit at
the two poles; dihedral groups require p points per pole plus one singly
occupied evenly spaced equatorial ring; the polyhedral groups require all
points on their rotation-axis orbits within fixed occupancy caps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .symstate import MajoranaConfig, Rotation, cluster_directions

TWO_PI = 2.0 * math.pi

# Labels for report.kind.
TRIVIAL = "trivial"
CYCLIC = "cyclic"
DIHEDRAL = "dihedral"
TETRAHEDRAL = "tetrahedral"
OCTAHEDRAL = "octahedral"
ICOSAHEDRAL = "icosahedral"
SO2 = "so2"
O2 = "o2"
SO3 = "so3"

_LABELS = {TRIVIAL: "Trivial", TETRAHEDRAL: "T", OCTAHEDRAL: "O",
           ICOSAHEDRAL: "Y", SO2: "SO(2)", O2: "O(2)", SO3: "SO(3)"}

# Matrix-distance threshold separating "same rotation found twice" from
# genuinely distinct group elements (the closest pair in any group handled
# here differs by an angle of 2*pi/60, i.e. a Frobenius distance ~0.15).
_MAT_TOL = 1e-3
_CLOSURE_CAP = 240


@dataclass(frozen=True, eq=False)
class SymmetryReport:
    """Detected symmetry group of a configuration.

    `order` is m for cyclic/dihedral kinds and 0 otherwise.  `elements`
    lists every rotation of a finite group (identity included); it is
    empty for the continuous kinds.  `axis` is the principal axis where
    one exists (the shared axis for axial kinds, the point direction for
    the all-coincident case, the highest-order axis for polyhedral kinds).
    """

    kind: str
    order: int
    axis: np.ndarray | None
    generators: tuple[Rotation, ...]
    elements: tuple[Rotation, ...]
    totally_invariant: bool
    witness: str

    @property
    def label(self) -> str:
        if self.kind == CYCLIC:
            return f"C{self.order}"
        if self.kind == DIHEDRAL:
            return f"D{self.order}"
        return _LABELS[self.kind]

    @property
    def is_discrete(self) -> bool:
        return self.kind in (TRIVIAL, CYCLIC, DIHEDRAL, TETRAHEDRAL,
                             OCTAHEDRAL, ICOSAHEDRAL)


def _canonical_axis(v: np.ndarray) -> np.ndarray:
    idx = int(np.argmax(np.abs(v)))
    return -v if v[idx] < 0 else v.copy()


def _perpendicular(v: np.ndarray) -> np.ndarray:
    pick = np.zeros(3)
    pick[int(np.argmin(np.abs(v)))] = 1.0
    w = np.cross(v, pick)
    return w / np.linalg.norm(w)


def _site_decomposition(config: MajoranaConfig, tol: float):
    vecs = config.unit_vectors()
    clusters = cluster_directions(vecs, tol)
    sites = np.array([vecs[idx].sum(axis=0) for idx in clusters])
    sites /= np.linalg.norm(sites, axis=1)[:, None]
    mult = np.array([len(idx) for idx in clusters])
    return sites, mult


def _maps_sites(mat: np.ndarray, sites: np.ndarray, mult: np.ndarray,
                tol: float) -> bool:
    """Whether the rotation permutes sites (positions and multiplicities)."""
    dots = (sites @ mat.T) @ sites.T
    nearest = np.argmax(dots, axis=1)
    if np.any(dots[np.arange(len(sites)), nearest] < math.cos(tol)):
        return False
    if np.any(mult[nearest] != mult):
        return False
    return len(np.unique(nearest)) == len(sites)


def _candidate_axes(sites: np.ndarray, mult: np.ndarray, tol: float) -> np.ndarray:
    centroid = mult @ sites
    if np.linalg.norm(centroid) > 10.0 * tol * mult.sum():
        # A rotation preserving the multiset fixes the weighted centroid, so
        # with a nonzero centroid only one axis can carry any symmetry.
        return _canonical_axis(centroid / np.linalg.norm(centroid))[None, :]
    raw = [s for s in sites]
    for i in range(len(sites)):
        for j in range(i + 1, len(sites)):
            for v in (sites[i] + sites[j], np.cross(sites[i], sites[j])):
                norm = np.linalg.norm(v)
                if norm > 1e-8:
                    raw.append(v / norm)
    threshold = math.cos(min(10.0 * tol, 0.1))
    kept = np.empty((len(raw), 3))
    count = 0
    for v in raw:
        v = _canonical_axis(v)
        if count and np.any(np.abs(kept[:count] @ v) >= threshold):
            continue
        kept[count] = v
        count += 1
    return kept[:count]


def _divisors_descending(g: int):
    divs = [d for d in range(2, g + 1) if g % d == 0]
    return sorted(divs, reverse=True)


def _ring_gcd(axis: np.ndarray, sites: np.ndarray, tol: float) -> int:
    """gcd of site counts over latitude rings; 0 when no off-axis site."""
    lat = sites @ axis
    off_axis = np.abs(lat) < math.cos(tol)
    if not off_axis.any():
        return 0
    values = np.sort(lat[off_axis])
    g = 0
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] > 2.0 * tol:
            g = math.gcd(g, i - start)
            start = i
    return g


def _max_cyclic_order(axis: np.ndarray, sites: np.ndarray, mult: np.ndarray,
                      tol: float, n: int) -> int:
    g = _ring_gcd(axis, sites, tol)
    if g < 2:
        return 1
    for m in _divisors_descending(min(g, n)):
        mat = Rotation(axis, TWO_PI / m).matrix()
        if _maps_sites(mat, sites, mult, tol):
            return m
    return 1


def _is_known(mats: list[np.ndarray], candidate: np.ndarray,
              mat_tol: float = _MAT_TOL) -> bool:
    stack = np.array(mats)
    return bool(np.min(np.abs(stack - candidate).sum(axis=(1, 2))) < mat_tol)


def _collect_rotations(axes: np.ndarray, sites: np.ndarray, mult: np.ndarray,
                       tol: float, n: int, mat_tol: float) -> list[np.ndarray]:
    mats = [np.eye(3)]
    for axis in axes:
        m = _max_cyclic_order(axis, sites, mult, tol, n)
        if m < 2:
            continue
        step = Rotation(axis, TWO_PI / m).matrix()
        mat = np.eye(3)
        for _ in range(m - 1):
            mat = step @ mat
            if not _is_known(mats, mat, mat_tol) and _maps_sites(mat, sites, mult, tol):
                mats.append(mat)
    return mats


def _close_group(mats: list[np.ndarray], sites: np.ndarray, mult: np.ndarray,
                 tol: float, mat_tol: float) -> list[np.ndarray]:
    changed = True
    while changed and len(mats) <= _CLOSURE_CAP:
        changed = False
        snapshot = list(mats)
        for a in snapshot:
            for b in snapshot:
                prod = a @ b
                if not _is_known(mats, prod, mat_tol):
                    # Products of validated symmetries are symmetries;
                    # re-check anyway to catch tolerance drift.
                    if _maps_sites(prod, sites, mult, tol):
                        mats.append(prod)
                        changed = True
            if len(mats) > _CLOSURE_CAP:
                break
    return mats


def _axis_bins(rotations: list[Rotation], axis_tol: float = _MAT_TOL):
    """Group nonidentity rotations by axis line; order = count + 1."""
    bins: list[dict] = []
    for rot in rotations:
        axis = _canonical_axis(rot.axis)
        for entry in bins:
            if abs(float(entry["axis"] @ axis)) >= math.cos(axis_tol):
                entry["count"] += 1
                break
        else:
            bins.append({"axis": axis, "count": 1})
    for entry in bins:
        entry["order"] = entry["count"] + 1
    bins.sort(key=lambda e: (-e["order"], tuple(np.round(-e["axis"], 9))))
    return bins


def _sorted_rotations(mats: list[np.ndarray],
                      mat_tol: float = _MAT_TOL) -> tuple[list[Rotation], list[Rotation]]:
    """(nonidentity rotations, all rotations) in a deterministic order."""
    rotations = []
    has_identity = False
    for mat in mats:
        if np.abs(mat - np.eye(3)).sum() < mat_tol:
            has_identity = True
            continue
        rotations.append(Rotation.from_matrix(mat))
    rotations.sort(key=lambda r: (round(r.angle, 9), tuple(np.round(r.axis, 9))))
    everything = ([Rotation.identity()] if has_identity else []) + rotations
    return rotations, everything


def _classify(mats: list[np.ndarray], mat_tol: float = _MAT_TOL):
    """Census of the closed rotation set -> (kind, order, principal, bins)."""
    nonid, elements = _sorted_rotations(mats, mat_tol)
    if not nonid:
        return TRIVIAL, 0, None, [], elements
    bins = _axis_bins(nonid, mat_tol)
    size = len(elements)
    principal = bins[0]["axis"]
    top = bins[0]["order"]
    if len(bins) == 1:
        return CYCLIC, size, principal, bins, elements
    others_are_perpendicular_flips = all(
        entry["order"] == 2 and abs(float(entry["axis"] @ principal)) < mat_tol
        for entry in bins[1:])
    if size == 2 * top and others_are_perpendicular_flips and len(bins) == top + 1:
        return DIHEDRAL, top, principal, bins, elements
    if size == 12 and top == 3:
        return TETRAHEDRAL, 0, principal, bins, elements
    if size == 24 and top == 4:
        return OCTAHEDRAL, 0, principal, bins, elements
    if size == 60 and top == 5:
        return ICOSAHEDRAL, 0, principal, bins, elements
    # Incomplete census (tolerance drift or the closure cap): degrade to the
    # best cyclic subgroup rather than guess.
    return CYCLIC, top, principal, bins, elements


def _pick_generators(kind: str, order: int, principal: np.ndarray,
                     bins, elements: tuple[Rotation, ...]) -> tuple[Rotation, ...]:
    if kind in (TRIVIAL,):
        return ()
    if kind == CYCLIC:
        return (Rotation(principal, TWO_PI / order),)
    if kind == DIHEDRAL:
        return (Rotation(principal, TWO_PI / order),
                Rotation(bins[1]["axis"], math.pi))
    top = bins[0]["order"]
    second = next(e for e in bins[1:] if abs(float(e["axis"] @ principal)) < 0.999)
    return (Rotation(principal, TWO_PI / top),
            Rotation(second["axis"], TWO_PI / second["order"]))


def detect_group(config: MajoranaConfig, tol: float = 1e-6) -> SymmetryReport:
    """Largest rotation group permuting the configuration's point multiset."""
    sites, mult = _site_decomposition(config, tol)
    if len(sites) == 1:
        report = SymmetryReport(SO3, 0, sites[0], (), (), False, "")
    elif len(sites) == 2 and float(sites[0] @ sites[1]) <= -math.cos(tol):
        axis = _canonical_axis(sites[0])
        north = mult[0] if float(sites[0] @ axis) > 0 else mult[1]
        south = mult.sum() - north
        if north == south:
            flip = Rotation(_perpendicular(axis), math.pi)
            report = SymmetryReport(O2, 0, axis, (flip,), (), False, "")
        else:
            report = SymmetryReport(SO2, 0, axis, (), (), False, "")
    else:
        # At loose site tolerances the collected matrices carry comparable
        # error, so the dedupe threshold has to widen with them.
        mat_tol = max(_MAT_TOL, 4.0 * tol)
        axes = _candidate_axes(sites, mult, tol)
        mats = _collect_rotations(axes, sites, mult, tol, config.n, mat_tol)
        mats = _close_group(mats, sites, mult, tol, mat_tol)
        kind, order, principal, bins, elements = _classify(mats, mat_tol)
        generators = _pick_generators(kind, order, principal, bins, tuple(elements))
        report = SymmetryReport(kind, order, principal, generators,
                                tuple(elements), False, "")
    invariant, witness = is_totally_invariant(config, report, tol)
    return replace(report, totally_invariant=invariant, witness=witness)


def _ti_axial(config: MajoranaConfig, report: SymmetryReport, tol: float):
    sites, mult = _site_decomposition(config, tol)
    lat = sites @ report.axis
    if np.any(np.abs(lat) < math.cos(tol)):
        return False, "an off-axis point breaks the polar pattern"
    north = int(mult[lat > 0].sum())
    south = int(mult.sum()) - north
    return True, (f"all {config.n} points at the poles of the symmetry axis "
                  f"({north} north, {south} south)")


def _ti_dihedral(config: MajoranaConfig, report: SymmetryReport, tol: float):
    m = report.order
    candidates = [report.axis]
    if m == 2:
        # All three two-fold axes of D2 are interchangeable; any of them may
        # carry the polar pattern.
        candidates = [b["axis"] for b in
                      _axis_bins(list(report.elements[1:]))] or candidates
    sites, mult = _site_decomposition(config, tol)
    for axis in candidates:
        lat = sites @ axis
        polar = np.abs(lat) >= math.cos(tol)
        ring = np.abs(lat) <= 2.0 * tol
        if np.any(~polar & ~ring):
            continue
        north = int(mult[polar & (lat > 0)].sum())
        south = int(mult[polar & (lat < 0)].sum())
        if north != south:
            continue
        if int(ring.sum()) != m or np.any(mult[ring] != 1):
            continue
        return True, (f"{north} points at each pole plus {m} singly occupied, "
                      f"evenly spaced equatorial points")
    return False, ("configuration does not match the dihedral pattern of "
                   "equal polar stacks plus one singly occupied equatorial ring")


def _polyhedral_orbits(report: SymmetryReport):
    """Catalog orbit directions (from the group's own axes) and caps."""
    bins = _axis_bins(list(report.elements[1:]))
    by_order: dict[int, list[np.ndarray]] = {}
    for entry in bins:
        by_order.setdefault(entry["order"], []).append(entry["axis"])

    def dirs(order):
        axes = by_order.get(order, [])
        return np.array([sign * a for a in axes for sign in (1.0, -1.0)])

    if report.kind == TETRAHEDRAL:
        three = dirs(3)
        d0 = three[0]
        close = three @ d0
        first = three[(close > 0.9) | (np.abs(close + 1.0 / 3.0) < 0.1)]
        second = three[~((close > 0.9) | (np.abs(close + 1.0 / 3.0) < 0.1))]
        return [(first, 2, "tetrahedron vertex"),
                (second, 2, "mirror-tetrahedron vertex"),
                (dirs(2), 3, "octahedron vertex")], None
    if report.kind == OCTAHEDRAL:
        return [(dirs(3), 3, "cube vertex"), (dirs(4), 2, "octahedron vertex")], 34
    return [(dirs(3), 2, "dodecahedron vertex"), (dirs(5), 3, "icosahedron vertex")], 88


def _ti_polyhedral(config: MajoranaConfig, report: SymmetryReport, tol: float):
    orbits, bound = _polyhedral_orbits(report)
    if bound is not None and config.n > bound:
        return False, f"{config.n} points exceeds the stated bound of {bound}"
    sites, mult = _site_decomposition(config, tol)
    usage = []
    for i, site in enumerate(sites):
        for directions, cap, name in orbits:
            if len(directions) and float(np.max(directions @ site)) >= math.cos(tol):
                if mult[i] > cap:
                    return False, (f"{mult[i]} points on a {name} "
                                   f"exceeds the cap of {cap}")
                usage.append(name)
                break
        else:
            return False, "a point lies off the rotation-axis orbits"
    names = sorted(set(usage))
    return True, "points occupy " + " and ".join(f"{name} positions ({usage.count(name)} sites)"
                                                for name in names)


def is_totally_invariant(config: MajoranaConfig, report: SymmetryReport,
                         tol: float = 1e-6) -> tuple[bool, str]:
    """Catalog decision: (verdict, witness description).

    The verdict is computed from the configuration and the report's group
    data; the report's own `totally_invariant` field is ignored.
    """
    kind = report.kind
    if kind == SO3:
        return False, ("all points coincident (a product state); the cluster "
                       "can move rigidly without losing any symmetry")
    if kind == TRIVIAL:
        return False, "no nontrivial rotational symmetry"
    if kind == CYCLIC:
        return False, (f"C{report.order} constrains only azimuths: latitude "
                       "rings can slide along the axis without breaking it")
    if kind in (SO2, O2):
        return _ti_axial(config, report, tol)
    if kind == DIHEDRAL:
        return _ti_dihedral(config, report, tol)
    return _ti_polyhedral(config, report, tol)


def contains_dihedral(config: MajoranaConfig, m: int, tol: float = 1e-6) -> bool:
    """Whether some dihedral group D_m (order-m rotation plus perpendicular
    flip) preserves the configuration, regardless of the maximal group."""
    if m < 2:
        raise ValueError("dihedral order must be at least 2")
    report = detect_group(config, tol)
    if report.kind == O2:
        return True
    if not report.is_discrete or report.kind == CYCLIC:
        return False
    target = TWO_PI / m
    flips = [e for e in report.elements if abs(e.angle - math.pi) < 1e-6]
    for element in report.elements:
        if abs(element.angle - target) > 1e-6:
            continue
        for flip in flips:
            if abs(float(element.axis @ flip.axis)) < 1e-3:
                return True
    return False
