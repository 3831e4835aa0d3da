from fractions import Fraction

import pytest

import reebcomp
from reebcomp import geom2
from reebcomp.geom2 import RPoint

from _test_util import random_grid_mesh, random_triangles


def P(x, y):
    return RPoint(x, y)


def test_ring_helpers():
    square = [P(0, 0), P(2, 0), P(2, 2), P(0, 2)]
    assert geom2.signed_area(square) == 4
    assert geom2.signed_area(square[::-1]) == -4
    assert geom2.ring_contains(square, P(1, 1))
    assert not geom2.ring_contains(square, P(3, 1))
    # a ray through a vertex is counted once
    assert geom2.ring_contains([P(0, 0), P(2, 1), P(0, 2)], P(1, 1))
    assert geom2.on_segment(P(1, 1), P(0, 0), P(2, 2))
    assert not geom2.on_segment(P(3, 3), P(0, 0), P(2, 2))


def test_box():
    b = geom2.box(0, 0, 2, 3)
    assert b.area == 6
    assert b.contains(P(1, 1))
    assert b.contains(P(0, 1))
    assert not b.contains(P(3, 1))
    assert len(geom2.faces(b)) == 1
    assert geom2.box(0, 0, 2, 3) == b


def test_convex_hull_degenerate_cases():
    point = geom2.convex_hull([P(1, 1), P(1, 1)])
    assert point.degenerate
    assert point.area == 0
    assert point.contains(P(1, 1))
    segment = geom2.convex_hull([P(0, 0), P(1, 1), P(2, 2)])
    assert segment.degenerate
    assert segment.area == 0
    assert segment.contains(P(1, 1))
    assert not segment.contains(P(1, 0))
    triangle = geom2.convex_hull([P(0, 0), P(4, 0), P(0, 4), P(1, 1)])
    assert not triangle.degenerate
    assert triangle.area == 8
    with pytest.raises(ValueError):
        geom2.convex_hull([])


def test_empty():
    e = geom2.empty()
    assert not e
    assert e.area == 0
    assert geom2.faces(e) == []
    assert geom2.union(e, geom2.box(0, 0, 1, 1)).area == 1
    assert geom2.union_all([]) == geom2.empty()


def test_overlapping_boxes():
    a = geom2.box(0, 0, 2, 2)
    b = geom2.box(1, 1, 3, 3)
    assert geom2.union(a, b).area == 7
    assert len(geom2.faces(geom2.union(a, b))) == 1
    assert geom2.intersect(a, b).area == 1
    assert geom2.intersect(a, b) == geom2.box(1, 1, 2, 2)
    diff = geom2.subtract(a, b)
    assert diff.area == 3
    assert diff.contains(P(Fraction(1, 2), Fraction(1, 2)))
    assert not diff.contains(P(Fraction(3, 2), Fraction(3, 2)))
    # the closure of b is removed, so its boundary is not in the difference
    assert not diff.contains(P(Fraction(3, 2), 1))


def test_union_is_canonical():
    a = geom2.box(0, 0, 1, 1)
    b = geom2.box(1, 0, 2, 1)
    assert geom2.union(a, b) == geom2.box(0, 0, 2, 1)
    assert geom2.union_all([a, b, geom2.box(0, 0, 2, 1)]) == geom2.box(0, 0, 2, 1)


def test_subtracting_a_segment_cuts_without_removing_area():
    square = geom2.box(0, 0, 2, 2)
    cut = geom2.subtract(square, geom2.convex_hull([P(0, 0), P(2, 2)]))
    assert cut.area == 4
    faces = geom2.faces(cut)
    assert len(faces) == 2
    assert sorted(f.area for f in faces) == [2, 2]
    # the two halves touch across the excluded diagonal
    assert faces[0].neighbours == (1,)
    assert not cut.contains(P(1, 1))
    for face in faces:
        sample = geom2.representative_point(face)
        assert geom2.locate(cut, sample).index == face.index
    assert geom2.locate(cut, P(1, 1)) is None


def test_face_with_hole():
    ring = geom2.subtract(geom2.box(0, 0, 4, 4), geom2.box(1, 1, 2, 2))
    faces = geom2.faces(ring)
    assert len(faces) == 1
    assert len(faces[0].holes) == 1
    assert faces[0].area == 15
    sample = geom2.representative_point(faces[0])
    assert ring.contains(sample)
    assert not geom2.box(1, 1, 2, 2).closure_contains(sample)


def test_representative_point_avoids_values():
    face = geom2.faces(geom2.box(0, 0, 2, 2))[0]
    p = geom2.representative_point(face, avoid_x={1}, avoid_y={1})
    assert p.x != 1 and p.y != 1
    assert 0 < p.x < 2 and 0 < p.y < 2


def test_arrangement_faces():
    arr = geom2.Arrangement(segments=[(P(0, 0), P(1, 0))])
    assert arr.faces == []
    triangle = geom2.Arrangement(segments=[(P(0, 0), P(1, 0)), (P(1, 0), P(1, 1)), (P(1, 1), P(0, 0))])
    assert len(triangle.faces) == 1
    assert triangle.face_sample(0) is not None


def test_arrangement_splits_crossings():
    arr = geom2.Arrangement(segments=[(P(0, 0), P(2, 2)), (P(0, 2), P(2, 0))])
    assert P(1, 1) in arr.vertices
    assert len(arr.edges) == 4
    assert arr.feature_at(P(1, 1)) == ('vertex', P(1, 1))
    assert arr.feature_at(P(Fraction(1, 2), Fraction(1, 2)))[0] == 'edge'
    assert arr.feature_at(P(5, 0)) == ('face', geom2.UNBOUNDED)


def test_intervals_on_line():
    b = geom2.box(0, 0, 2, 3)
    assert b.intervals_on_line(0, 0) == [(0, 3)]
    assert b.intervals_on_line(1, 3) == [(0, 2)]
    assert b.intervals_on_line(0, 1) == []
    face = geom2.faces(b)[0]
    assert face.boundary_on_line(0, 2) == [(0, 3)]


def test_interval_arithmetic():
    assert geom2.merge_intervals([(2, 3), (0, 1), (1, 2)]) == [(0, 3)]
    assert geom2.subtract_intervals([(0, 4)], [(1, 2)]) == [(0, 1), (2, 4)]
    assert geom2.overlap_length([(0, 2)], [(1, 3)]) == 1
    assert geom2.overlap_length([(0, 1)], [(1, 3)]) == 0


def test_polygon_sets_are_immutable():
    b = geom2.box(0, 0, 1, 1)
    with pytest.raises(reebcomp.MeshStateError):
        b.face_in = frozenset()


@pytest.mark.parametrize('seed', range(5))
def test_union_of_hulls_matches_pairwise_union(seed):
    triangles = random_triangles(seed, count=8, high=4)
    # repeated and degenerate pieces
    triangles += [triangles[0], [P(0, 0), P(1, 1), P(2, 2)], [P(3, 3)] * 3]
    expected = geom2.union_all(geom2.convex_hull(t) for t in triangles)
    assert geom2.union_of_hulls(triangles) == expected


def test_union_of_hulls_over_mesh_images():
    mesh = random_grid_mesh(4, n=6, high=5)
    cx = mesh.complex
    images = [[P(cx.values[0][v], cx.values[1][v]) for v in s] for s in cx.simplices[:cx.nreal_simplices]]
    union = geom2.union_of_hulls(images)
    assert union == geom2.union_all(geom2.convex_hull(i) for i in images)
    for image in images:
        assert all(union.contains(p) for p in image)
    assert not geom2.union_of_hulls([])


def test_union_of_hulls_drops_shared_edges():
    halves = [[P(0, 0), P(2, 0), P(2, 2)], [P(0, 0), P(2, 2), P(0, 2)]]
    union = geom2.union_of_hulls(halves)
    assert union == geom2.box(0, 0, 2, 2)
    assert (P(0, 0), P(2, 2)) not in union.segments()


@pytest.mark.parametrize('seed', range(10))
def test_boolean_identities_on_random_triangles(seed):
    first, second = random_triangles(seed, count=6, high=6)[::2], random_triangles(seed + 100, count=6, high=6)[1::2]
    a = geom2.union_of_hulls(first)
    b = geom2.union_of_hulls(second)
    assert geom2.union(a, a) == a
    assert geom2.intersect(a, a) == a
    assert not geom2.subtract(a, a)
    assert geom2.union(a, b) == geom2.union(b, a)
    assert geom2.union(a, b).area + geom2.intersect(a, b).area == a.area + b.area
    assert geom2.subtract(a, b).area == a.area - geom2.intersect(a, b).area


def test_feature_lookup_on_vertical_and_long_edges():
    segments = [(P(k, 0), P(k, 3)) for k in range(6)] + [(P(0, 0), P(5, 3))]
    arr = geom2.Arrangement(segments)
    assert arr.feature_at(P(2, 1)) == ('edge', (P(2, 0), P(2, Fraction(6, 5))))
    assert arr.feature_at(P(Fraction(5, 2), Fraction(3, 2))) == ('edge', (P(2, Fraction(6, 5)), P(3, Fraction(9, 5))))
    assert arr.feature_at(P(0, 3))[0] == 'vertex'
    assert arr.feature_at(P(Fraction(1, 2), 2))[0] == 'face'
    assert arr.feature_at(P(-1, 2)) == ('face', geom2.UNBOUNDED)
