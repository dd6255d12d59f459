"""Geometric primitives: points, upper halfspaces, disks, lifting and duality.

All solver-facing geometry is reduced to one picture: points in 3-space and
upper halfspaces ``z >= a*x + b*y + c``.  Disks in the plane enter through
the lifting transform onto the paraboloid ``z = -(x^2 + y^2)``.  Containment
is closed: a point on the bounding plane counts as inside.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "InvalidGeometryError",
    "Point3",
    "UpperHalfspace",
    "Disk2",
    "Margin",
    "contains",
    "margin",
    "lift_point",
    "lift_disk",
    "reflect_halfspace",
    "dualize_point",
    "dualize_plane",
    "depth_bruteforce",
    "plane_heights",
    "containment_matrix",
    "depths_of_points",
]


class InvalidGeometryError(ValueError):
    """Raised for non-finite coordinates or degenerate shapes."""


def _check_finite(*values: float) -> None:
    for v in values:
        if not np.isfinite(v):
            raise InvalidGeometryError(f"non-finite coordinate: {v!r}")


@dataclass(frozen=True)
class Point3:
    """A point in 3-space."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        _check_finite(self.x, self.y, self.z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


@dataclass(frozen=True)
class UpperHalfspace:
    """The region ``z >= a*x + b*y + c`` above a non-vertical plane."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        _check_finite(self.a, self.b, self.c)

    def height_at(self, x: float, y: float) -> float:
        """z-coordinate of the bounding plane above ``(x, y)``."""
        return self.a * x + self.b * y + self.c

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c], dtype=float)


@dataclass(frozen=True)
class Disk2:
    """Closed disk in the plane with center ``(cx, cy)`` and radius ``r > 0``."""

    cx: float
    cy: float
    r: float

    def __post_init__(self) -> None:
        _check_finite(self.cx, self.cy, self.r)
        if self.r <= 0:
            raise InvalidGeometryError(f"disk radius must be positive, got {self.r}")

    def contains_xy(self, x: float, y: float) -> bool:
        return (x - self.cx) ** 2 + (y - self.cy) ** 2 <= self.r**2


@dataclass(frozen=True)
class Margin:
    """Signed clearance of a point above a bounding plane.

    ``value >= 0`` exactly when the halfspace contains the point.
    """

    value: float


def margin(h: UpperHalfspace, p: Point3) -> Margin:
    return Margin(p.z - h.height_at(p.x, p.y))


def contains(h: UpperHalfspace, p: Point3) -> bool:
    """Closed containment test: true iff ``p.z >= a*x + b*y + c``."""
    return p.z >= h.height_at(p.x, p.y)


def lift_point(x: float, y: float) -> Point3:
    """Lift a planar point onto the paraboloid ``z = -(x^2 + y^2)``."""
    _check_finite(x, y)
    return Point3(x, y, -(x * x + y * y))


def lift_disk(d: Disk2) -> UpperHalfspace:
    """Lift a disk to the upper halfspace whose lifted containment matches it.

    A planar point lies in ``d`` iff its lifted image lies in the returned
    halfspace, with equality on the disk boundary.
    """
    return UpperHalfspace(-2.0 * d.cx, -2.0 * d.cy, d.cx**2 + d.cy**2 - d.r**2)


def reflect_halfspace(h: UpperHalfspace) -> UpperHalfspace:
    """Image of a lower halfspace ``z <= a*x + b*y + c`` under ``z -> -z``.

    Callers holding lower halfspaces reflect them through this map and then
    work entirely with upper halfspaces; containment answers are preserved
    for reflected points ``(x, y, -z)``.
    """
    return UpperHalfspace(-h.a, -h.b, -h.c)


def dualize_point(p: Point3) -> UpperHalfspace:
    """Map point ``(a, b, c)`` to the plane ``z = a*x + b*y - c``."""
    return UpperHalfspace(p.x, p.y, -p.z)


def dualize_plane(h: UpperHalfspace) -> Point3:
    """Map plane ``z = a*x + b*y + c`` to the point ``(a, b, -c)``.

    Together with :func:`dualize_point` this preserves above/below incidence
    and round-trips: ``dualize_plane(dualize_point(p)) == p``.
    """
    return Point3(h.a, h.b, -h.c)


def depth_bruteforce(p, objects, multiplicities=None) -> int:
    """Exact depth of ``p``: total multiplicity of halfspaces containing it.

    Reference oracle for every approximate counting structure.  ``objects``
    may be a sequence of :class:`UpperHalfspace` or an ``(m, 3)`` array of
    plane coefficients.
    """
    planes = as_plane_array(objects)
    if planes.shape[0] == 0:
        return 0
    if isinstance(p, Point3):
        px, py, pz = p.x, p.y, p.z
    else:
        px, py, pz = float(p[0]), float(p[1]), float(p[2])
    inside = planes[:, 0] * px + planes[:, 1] * py + planes[:, 2] <= pz
    if multiplicities is None:
        return int(np.count_nonzero(inside))
    return int(np.sum(np.asarray(multiplicities)[inside]))


def as_plane_array(objects) -> np.ndarray:
    """Coerce halfspaces to an ``(m, 3)`` float array of ``(a, b, c)`` rows."""
    if isinstance(objects, np.ndarray):
        arr = np.asarray(objects, dtype=float)
        return arr.reshape(0, 3) if arr.size == 0 else arr
    rows = [o.as_array() if isinstance(o, UpperHalfspace) else np.asarray(o, dtype=float) for o in objects]
    if not rows:
        return np.empty((0, 3), dtype=float)
    return np.vstack(rows)


def as_point_array(points) -> np.ndarray:
    """Coerce points to an ``(n, 3)`` float array."""
    if isinstance(points, np.ndarray):
        arr = np.asarray(points, dtype=float)
        return arr.reshape(0, 3) if arr.size == 0 else arr
    rows = [p.as_array() if isinstance(p, Point3) else np.asarray(p, dtype=float) for p in points]
    if not rows:
        return np.empty((0, 3), dtype=float)
    return np.vstack(rows)


def plane_heights(planes: np.ndarray, xy: np.ndarray) -> np.ndarray:
    """Heights of every plane above every query location.

    Returns an ``(len(xy), len(planes))`` array; planes are ``(a, b, c)``
    rows and ``xy`` is ``(q, 2)``.
    """
    return xy @ planes[:, :2].T + planes[:, 2]


def containment_matrix(planes: np.ndarray, points: np.ndarray, chunk: int = 2048) -> np.ndarray:
    """Boolean ``(len(points), len(planes))`` closed-containment incidence."""
    points = np.asarray(points, dtype=float)
    planes = np.asarray(planes, dtype=float)
    out = np.empty((points.shape[0], planes.shape[0]), dtype=bool)
    for lo in range(0, points.shape[0], chunk):
        hi = min(lo + chunk, points.shape[0])
        h = plane_heights(planes, points[lo:hi, :2])
        out[lo:hi] = h <= points[lo:hi, 2][:, None]
    return out


def depths_of_points(planes: np.ndarray, points: np.ndarray, multiplicities=None, chunk: int = 2048) -> np.ndarray:
    """Exact depths of many points at once; int64 when multiplicities are integral."""
    points = np.asarray(points, dtype=float)
    planes = np.asarray(planes, dtype=float)
    if multiplicities is None:
        mult = np.ones(planes.shape[0], dtype=np.int64)
    else:
        mult = np.asarray(multiplicities)
    out = np.zeros(points.shape[0], dtype=mult.dtype if mult.dtype.kind in "iuf" else np.int64)
    if planes.shape[0] == 0:
        return out
    for lo in range(0, points.shape[0], chunk):
        hi = min(lo + chunk, points.shape[0])
        h = plane_heights(planes, points[lo:hi, :2])
        inside = h <= points[lo:hi, 2][:, None]
        out[lo:hi] = inside @ mult
    return out
