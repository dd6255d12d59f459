"""Instance model: generation with planted optima, serialization, validation.

An instance couples a point set ``X`` with an object set ``S`` (disks in the
plane or upper halfspaces in 3-space), optional positive per-object weights,
and optionally a *planted* subset of object ids certified to cover every
point.  A planted set of size ``t*`` certifies ``OPT <= t*`` and anchors all
approximation-ratio measurements.

Instances are immutable after construction and safe for shared reads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import InfeasibleInstanceError, ParameterError, ParseError
from .geometry import Disk2, containment_matrix, lift_disk

__all__ = [
    "Instance",
    "CoverReport",
    "CoverSolution",
    "generate_planted",
    "verify_cover",
    "save_instance",
    "load_instance",
    "canonicalize",
]

DOCUMENT_VERSION = 1

# Feasibility scan at load time is skipped above this many containment tests;
# solvers detect infeasibility themselves on larger inputs.
FEASIBILITY_BUDGET = 200_000_000


@dataclass(frozen=True)
class Instance:
    """Point set, object set and optional weights / planted certificate.

    ``kind`` is ``"disks2d"`` (points ``(n, 2)``, objects ``(m, 3)`` disk
    rows ``cx, cy, r``) or ``"halfspaces3d"`` (points ``(n, 3)``, objects
    plane rows ``a, b, c`` for ``z >= a*x + b*y + c``).
    """

    kind: str
    points: np.ndarray
    objects: np.ndarray
    weights: Optional[np.ndarray] = None
    planted: Optional[np.ndarray] = None
    perturbation_seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", np.asarray(self.points, dtype=float))
        object.__setattr__(self, "objects", np.asarray(self.objects, dtype=float))
        if self.kind not in ("disks2d", "halfspaces3d"):
            raise ParameterError(f"unknown instance kind {self.kind!r}")
        dim = 2 if self.kind == "disks2d" else 3
        if self.points.ndim != 2 or self.points.shape[1] != dim:
            raise ParameterError(f"points must be (n, {dim}) for kind {self.kind}")
        if self.objects.ndim != 2 or self.objects.shape[1] != 3:
            raise ParameterError("objects must be an (m, 3) array")
        if not np.all(np.isfinite(self.points)) or not np.all(np.isfinite(self.objects)):
            raise ParameterError("instance coordinates must be finite")
        if self.kind == "disks2d" and np.any(self.objects[:, 2] <= 0):
            raise ParameterError("disk radii must be positive")
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=float)
            object.__setattr__(self, "weights", w)
            if w.shape != (self.objects.shape[0],):
                raise ParameterError("weights length must match number of objects")
            if not np.all(np.isfinite(w)) or np.any(w <= 0):
                raise ParameterError("weights must be positive finite numbers")
        if self.planted is not None:
            ids = np.asarray(self.planted, dtype=np.int64)
            object.__setattr__(self, "planted", ids)
            if ids.size and (ids.min() < 0 or ids.max() >= self.objects.shape[0]):
                raise ParameterError("planted ids out of range")
        self.points.setflags(write=False)
        self.objects.setflags(write=False)

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def n_objects(self) -> int:
        return self.objects.shape[0]

    @property
    def n(self) -> int:
        """Combined size ``|X| + |S|`` used by every bound in the solvers."""
        return self.n_points + self.n_objects

    def is_canonical(self) -> bool:
        return self.kind == "halfspaces3d"

    def object_weight(self, ids) -> float:
        """Total weight of the given object ids (count when unweighted)."""
        ids = np.asarray(list(ids), dtype=np.int64)
        if self.weights is None:
            return float(ids.size)
        return float(self.weights[ids].sum())


@dataclass(frozen=True)
class CoverReport:
    valid: bool
    uncovered: np.ndarray  # point ids left uncovered


@dataclass
class CoverSolution:
    """Selected object ids plus run telemetry."""

    ids: list[int]
    size: int
    weight: float
    telemetry: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.ids = sorted(int(i) for i in self.ids)
        if self.size != len(self.ids):
            raise ParameterError("solution size must equal the number of ids")


def _containment(inst: Instance, object_ids=None, points=None) -> np.ndarray:
    """Closed containment matrix (points x selected objects) for any kind."""
    objs = inst.objects if object_ids is None else inst.objects[np.asarray(object_ids, dtype=np.int64)]
    pts = inst.points if points is None else points
    if inst.kind == "halfspaces3d":
        return containment_matrix(objs, pts)
    d2 = (pts[:, 0][:, None] - objs[:, 0][None, :]) ** 2 + (pts[:, 1][:, None] - objs[:, 1][None, :]) ** 2
    return d2 <= objs[:, 2][None, :] ** 2


def verify_cover(inst: Instance, ids) -> CoverReport:
    """Brute-force check that every point lies in at least one selected object."""
    ids = np.asarray(sorted(set(int(i) for i in ids)), dtype=np.int64)
    if ids.size and (ids.min() < 0 or ids.max() >= inst.n_objects):
        raise ParameterError("object id out of range")
    if inst.n_points == 0:
        return CoverReport(True, np.empty(0, dtype=np.int64))
    if ids.size == 0:
        return CoverReport(False, np.arange(inst.n_points, dtype=np.int64))
    covered = _containment(inst, object_ids=ids).any(axis=1)
    uncovered = np.flatnonzero(~covered).astype(np.int64)
    return CoverReport(uncovered.size == 0, uncovered)


def generate_planted(
    n_points: int,
    n_objects: int,
    t_star: int,
    kind: str,
    seed: int,
    weight_range: Optional[tuple[float, float]] = None,
) -> Instance:
    """Instance with a certified cover of ``t_star`` objects.

    Points are sampled inside the planted objects, so the planted set covers
    everything by construction; the remaining objects are decoys, each
    anchored to contain at least one point.  Deterministic per seed.
    """
    if n_points < 1 or n_objects < 1:
        raise ParameterError("need at least one point and one object")
    if not 1 <= t_star <= n_objects:
        raise ParameterError(f"t_star={t_star} must lie in [1, n_objects]")
    if kind not in ("disks2d", "halfspaces3d"):
        raise ParameterError(f"unknown instance kind {kind!r}")
    rng = np.random.default_rng(seed)

    r_patch = 0.35 / np.sqrt(t_star)
    centers = rng.uniform(0.0, 1.0, size=(t_star, 2))
    radii = r_patch * rng.uniform(0.8, 1.2, size=t_star)

    owner = rng.integers(0, t_star, size=n_points)
    ang = rng.uniform(0.0, 2 * np.pi, size=n_points)
    rad = radii[owner] * np.sqrt(rng.uniform(0.0, 1.0, size=n_points)) * 0.999
    pts_xy = centers[owner] + np.stack([rad * np.cos(ang), rad * np.sin(ang)], axis=1)

    n_decoys = n_objects - t_star
    if n_decoys > 0:
        anchor = pts_xy[rng.integers(0, n_points, size=n_decoys)]
        dec_r = r_patch * rng.uniform(0.3, 1.5, size=n_decoys)
        off_ang = rng.uniform(0.0, 2 * np.pi, size=n_decoys)
        off_len = dec_r * np.sqrt(rng.uniform(0.0, 1.0, size=n_decoys)) * 0.95
        dec_c = anchor + np.stack([off_len * np.cos(off_ang), off_len * np.sin(off_ang)], axis=1)
        disks = np.vstack(
            [
                np.column_stack([centers, radii]),
                np.column_stack([dec_c, dec_r]),
            ]
        )
    else:
        disks = np.column_stack([centers, radii])

    order = rng.permutation(n_objects)
    disks = disks[order]
    planted = np.flatnonzero(order < t_star).astype(np.int64)

    weights = None
    if weight_range is not None:
        lo, hi = weight_range
        if not (0 < lo <= hi):
            raise ParameterError("weight_range must satisfy 0 < lo <= hi")
        weights = rng.uniform(lo, hi, size=n_objects)

    if kind == "disks2d":
        inst = Instance("disks2d", pts_xy, disks, weights=weights, planted=planted, perturbation_seed=seed)
    else:
        lifted = np.column_stack([pts_xy, -(pts_xy[:, 0] ** 2 + pts_xy[:, 1] ** 2)])
        # lift points slightly off the paraboloid; raising z only adds coverage
        lifted[:, 2] += rng.uniform(0.0, 0.05 * r_patch**2, size=n_points)
        planes = np.column_stack(
            [
                -2.0 * disks[:, 0],
                -2.0 * disks[:, 1],
                disks[:, 0] ** 2 + disks[:, 1] ** 2 - disks[:, 2] ** 2,
            ]
        )
        inst = Instance("halfspaces3d", lifted, planes, weights=weights, planted=planted, perturbation_seed=seed)

    report = verify_cover(inst, planted)
    if not report.valid:
        raise AssertionError("planted generator produced an invalid certificate")
    return inst


def _feasibility_check(inst: Instance) -> None:
    if inst.n_points * max(inst.n_objects, 1) > FEASIBILITY_BUDGET:
        return
    covered = _containment(inst).any(axis=1)
    if not covered.all():
        bad = int(np.flatnonzero(~covered)[0])
        raise InfeasibleInstanceError(f"point {bad} is covered by no object")


def save_instance(inst: Instance) -> bytes:
    """Canonical JSON document; field order is fixed so save/load round-trips."""
    doc: dict = {
        "version": DOCUMENT_VERSION,
        "kind": inst.kind,
        "points": [[float(v) for v in row] for row in inst.points],
        "objects": [[float(v) for v in row] for row in inst.objects],
    }
    if inst.weights is not None:
        doc["weights"] = [float(w) for w in inst.weights]
    if inst.planted is not None:
        doc["planted"] = [int(i) for i in inst.planted]
    return (json.dumps(doc, indent=None, separators=(",", ":")) + "\n").encode("utf-8")


def load_instance(data: bytes) -> Instance:
    """Parse and validate an instance document; rejects infeasible instances."""
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"not a valid instance document: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    version = doc.get("version")
    if version != DOCUMENT_VERSION:
        raise ParseError(f"version: expected {DOCUMENT_VERSION}, got {version!r}")
    kind = doc.get("kind")
    if kind not in ("disks2d", "halfspaces3d"):
        raise ParseError(f"kind: expected 'disks2d' or 'halfspaces3d', got {kind!r}")
    dim = 2 if kind == "disks2d" else 3

    def _matrix(name: str, width: int) -> np.ndarray:
        rows = doc.get(name)
        if not isinstance(rows, list) or not rows:
            raise ParseError(f"{name}: expected a non-empty array")
        out = np.empty((len(rows), width), dtype=float)
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != width:
                raise ParseError(f"{name}[{i}]: expected {width} numbers")
            try:
                out[i] = [float(v) for v in row]
            except (TypeError, ValueError) as exc:
                raise ParseError(f"{name}[{i}]: non-numeric entry") from exc
        return out

    points = _matrix("points", dim)
    objects = _matrix("objects", 3)

    weights = None
    if "weights" in doc:
        w = doc["weights"]
        if not isinstance(w, list) or len(w) != objects.shape[0]:
            raise ParseError("weights: length must match objects")
        weights = np.asarray(w, dtype=float)
        if np.any(~np.isfinite(weights)) or np.any(weights <= 0):
            raise ParseError("weights: entries must be positive numbers")
    planted = None
    if "planted" in doc:
        p = doc["planted"]
        if not isinstance(p, list):
            raise ParseError("planted: expected an array of object ids")
        planted = np.asarray(p, dtype=np.int64)
        if planted.size and (planted.min() < 0 or planted.max() >= objects.shape[0]):
            raise ParseError("planted: object id out of range")

    try:
        inst = Instance(kind, points, objects, weights=weights, planted=planted)
    except ParameterError as exc:
        raise ParseError(str(exc)) from exc
    _feasibility_check(inst)
    if planted is not None and inst.n_points * planted.size <= FEASIBILITY_BUDGET:
        if not verify_cover(inst, planted).valid:
            raise ParseError("planted: certified ids do not cover all points")
    return inst


def canonicalize(inst: Instance) -> Instance:
    """Lift a planar instance to 3D halfspaces; identity on canonical input.

    Containment answers are preserved exactly: a planar point lies in a disk
    iff its lifted image lies in the lifted halfspace.  Duplicate objects are
    retained as separate ids; the solvers treat the object set as a multiset.
    """
    if inst.is_canonical():
        return inst
    pts = np.column_stack([inst.points, -(inst.points[:, 0] ** 2 + inst.points[:, 1] ** 2)])
    planes = np.column_stack(
        [
            -2.0 * inst.objects[:, 0],
            -2.0 * inst.objects[:, 1],
            inst.objects[:, 0] ** 2 + inst.objects[:, 1] ** 2 - inst.objects[:, 2] ** 2,
        ]
    )
    return Instance(
        "halfspaces3d",
        pts,
        planes,
        weights=inst.weights,
        planted=inst.planted,
        perturbation_seed=inst.perturbation_seed,
    )


def lift_disk_rows(disks: np.ndarray) -> np.ndarray:
    """Vectorized :func:`geomcover.geometry.lift_disk` over disk rows."""
    return np.column_stack(
        [
            -2.0 * disks[:, 0],
            -2.0 * disks[:, 1],
            disks[:, 0] ** 2 + disks[:, 1] ** 2 - disks[:, 2] ** 2,
        ]
    )


def _unused_lift_consistency(d: Disk2):  # pragma: no cover - import anchor
    return lift_disk(d)
