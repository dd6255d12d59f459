import numpy as np
import pytest

from geomcover.geometry import (
    Disk2,
    InvalidGeometryError,
    Point3,
    UpperHalfspace,
    contains,
    containment_matrix,
    depth_bruteforce,
    depths_of_points,
    dualize_plane,
    dualize_point,
    lift_disk,
    lift_point,
    margin,
)


def test_contains_boundary_counts_as_inside():
    assert contains(UpperHalfspace(0, 0, 0), Point3(0, 0, 0))


def test_contains_below_plane():
    assert not contains(UpperHalfspace(0, 0, 1), Point3(0, 0, 0))


def test_contains_direct_evaluation():
    # 4 >= 1*2 + (-2)*1 + 3 = 3
    assert contains(UpperHalfspace(1, -2, 3), Point3(2, 1, 4))


def test_contains_rejects_non_finite():
    with pytest.raises(InvalidGeometryError):
        UpperHalfspace(float("nan"), 0, 0)
    with pytest.raises(InvalidGeometryError):
        Point3(0, float("inf"), 0)


def test_contains_monotone_in_plane_offset():
    rng = np.random.default_rng(0)
    for _ in range(200):
        a, b, c, x, y, z = rng.normal(size=6)
        h0 = UpperHalfspace(a, b, c)
        p = Point3(x, y, z)
        # raising the plane can only evict the point, never admit it
        for delta in (1e-9, 1e-3, 1.0):
            if contains(UpperHalfspace(a, b, c + delta), p):
                assert contains(h0, p)


def test_lift_point_values():
    assert lift_point(0, 0) == Point3(0, 0, 0)
    assert lift_point(1, 2) == Point3(1, 2, -5)
    assert lift_point(-3, 4) == Point3(-3, 4, -25)


def test_lift_disk_unit_disk():
    h = lift_disk(Disk2(0, 0, 1))
    assert (h.a, h.b, h.c) == (0, 0, -1)
    assert contains(h, lift_point(0, 0))
    assert not contains(h, lift_point(2, 0))
    # boundary point has zero margin
    assert margin(h, lift_point(1, 0)).value == pytest.approx(0.0, abs=1e-12)
    assert contains(h, lift_point(1, 0))


def test_lift_disk_rejects_nonpositive_radius():
    with pytest.raises(InvalidGeometryError):
        Disk2(0, 0, 0)
    with pytest.raises(InvalidGeometryError):
        Disk2(0, 0, -1)


def test_lifting_matches_squared_distance_test():
    rng = np.random.default_rng(7)
    for _ in range(10_000):
        cx, cy = rng.uniform(-5, 5, size=2)
        r = rng.uniform(0.01, 4.0)
        x, y = rng.uniform(-6, 6, size=2)
        d = Disk2(cx, cy, r)
        assert d.contains_xy(x, y) == contains(lift_disk(d), lift_point(x, y))


def test_duality_origin_self_dual():
    assert dualize_plane(UpperHalfspace(0, 0, 0)) == Point3(0, 0, 0)


def test_duality_incidence_example():
    p = Point3(1, 1, 3)
    h = UpperHalfspace(1, 1, 0)
    assert contains(h, p)
    assert contains(dualize_point(p), dualize_plane(h))


def test_duality_incidence_preserved_randomly():
    rng = np.random.default_rng(11)
    for _ in range(10_000):
        p = Point3(*rng.normal(size=3))
        h = UpperHalfspace(*rng.normal(size=3))
        assert contains(h, p) == contains(dualize_point(p), dualize_plane(h))


def test_duality_round_trip():
    rng = np.random.default_rng(13)
    for _ in range(100):
        p = Point3(*rng.normal(size=3))
        q = dualize_plane(dualize_point(p))
        assert q == p


def test_depth_bruteforce_empty():
    assert depth_bruteforce(Point3(0, 0, 0), []) == 0


def test_depth_bruteforce_multiplicities():
    objs = [UpperHalfspace(0, 0, 0)]
    assert depth_bruteforce(Point3(0, 0, 1), objs, multiplicities=[3]) == 3


def test_depth_bruteforce_matches_predicate_sum():
    rng = np.random.default_rng(5)
    planes = rng.normal(size=(200, 3))
    p = Point3(*rng.normal(size=3))
    expected = sum(1 for a, b, c in planes if contains(UpperHalfspace(a, b, c), p))
    assert depth_bruteforce(p, planes) == expected


def test_bulk_depths_match_scalar_oracle():
    rng = np.random.default_rng(3)
    planes = rng.normal(size=(50, 3))
    pts = rng.normal(size=(40, 3))
    mult = rng.integers(1, 5, size=50)
    bulk = depths_of_points(planes, pts, multiplicities=mult)
    for i in range(pts.shape[0]):
        assert bulk[i] == depth_bruteforce(pts[i], planes, multiplicities=mult)


def test_containment_matrix_matches_contains():
    rng = np.random.default_rng(2)
    planes = rng.normal(size=(30, 3))
    pts = rng.normal(size=(25, 3))
    mat = containment_matrix(planes, pts)
    for i in range(25):
        for j in range(30):
            assert mat[i, j] == contains(UpperHalfspace(*planes[j]), Point3(*pts[i]))
