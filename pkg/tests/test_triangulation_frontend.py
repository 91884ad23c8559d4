"""Triangulations: validation, dualization, homogenization, rotation."""

from fractions import Fraction

import pytest

from splinedim import EdgeLabel, spline_dimension, validate
from splinedim.errors import BadRotation, Degenerate, HorizontalEdge
from splinedim.triangulation_frontend import (
    Triangulation,
    boundary_edges,
    boundary_vertices,
    dualize,
    face_translatable_check,
    find_rotation,
    homogenize,
    interior_edges,
    interior_vertices,
    rotate,
    rotate_labels,
    rotate_line_coefficients,
    rotate_triangulation,
    triangulation_from_dict,
    triangulation_to_dict,
)

F = Fraction


def _tri(points, triangles):
    return triangulation_from_dict({"points": points, "triangles": triangles})


def test_validation_rejects_degenerate_input():
    square = [[0, 0], [1, 0], [1, 1], [0, 1]]
    with pytest.raises(Degenerate, match="repeated points"):
        _tri(square + [[0, 0]], [[0, 1, 2]])
    with pytest.raises(Degenerate, match="distinct vertices"):
        _tri(square, [[0, 1, 1]])
    with pytest.raises(Degenerate, match="missing point"):
        _tri(square, [[0, 1, 7]])
    with pytest.raises(Degenerate, match="repeated"):
        _tri(square, [[0, 1, 2], [2, 1, 0]])
    with pytest.raises(Degenerate, match="collinear"):
        _tri([[0, 0], [1, 0], [2, 0]], [[0, 1, 2]])
    with pytest.raises(Degenerate, match="lies in 3 triangles"):
        _tri(square + [[2, 0], [2, 1]], [[0, 1, 2], [1, 4, 2], [1, 5, 2]])


def test_interior_boundary_split(subdivided_triangle):
    t = subdivided_triangle
    assert interior_vertices(t) == [0, 1, 2]
    assert boundary_vertices(t) == [3, 4, 5]
    assert len(interior_edges(t)) == 9
    assert len(boundary_edges(t)) == 3


def test_round_trip(subdivided_triangle, tmp_path):
    data = triangulation_to_dict(subdivided_triangle)
    again = triangulation_from_dict(data)
    assert again == subdivided_triangle


def test_dualize_subdivided_triangle(subdivided_triangle):
    g, labels = dualize(subdivided_triangle)
    assert validate(g).ok
    assert (g.e, g.f) == (9, 3)
    assert g.vertices == tuple("t%d" % i for i in range(7))
    want = {
        0: (F(0), F(0)),
        1: (F(1), F(-1)),
        2: (F(-1), F(1)),
        3: (F(-2), F(2)),
        4: (F(-1), F(-1)),
        5: (F(2), F(2)),
        6: (F(1), F(1)),
        7: (F(-1, 3), F(-1)),
        8: (F(1, 3), F(-1)),
    }
    assert {eid: (lab.a, lab.b) for eid, lab in labels.items()} == want
    assert g.labels == {eid: EdgeLabel(a, b) for eid, (a, b) in want.items()}


def test_face_witnesses(subdivided_triangle):
    g, _labels = dualize(subdivided_triangle)
    report = face_translatable_check(g)
    assert report.all_translatable
    assert [fw.witness for fw in report.faces] == [
        (F(0), F(1)),
        (F(0), F(-1)),
        (F(1), F(0)),
    ]
    assert report.witness_of(2) == (F(1), F(0))


def test_untranslatable_face(splittable):
    # two parallel lines on face 1 leave it without a common point;
    # duals of triangulations never do this (the interior vertex is a
    # witness), so the case only arises for hand-labeled graphs
    labels = {
        0: EdgeLabel(F(1), F(0)),
        1: EdgeLabel(F(2), F(0)),
        2: EdgeLabel(F(3), F(0)),
        3: EdgeLabel(F(0), F(0)),
        4: EdgeLabel(F(0), F(2)),  # parallel to edge 3's line
        5: EdgeLabel(F(1), F(0)),
    }
    report = face_translatable_check(splittable, labels)
    assert not report.all_translatable
    assert report.faces[0].translatable
    assert not report.faces[1].translatable
    assert report.witness_of(1) is None


def test_homogenize(subdivided_triangle):
    g, _ = dualize(subdivided_triangle)
    hg, originals = homogenize(g)
    assert originals == g.labels
    slopes = sorted(set(lab.a for lab in hg.labels.values()))
    assert slopes == [F(-2), F(-1), F(-1, 3), F(0), F(1, 3), F(1), F(2)]
    assert all(lab.homogeneous for lab in hg.labels.values())
    assert spline_dimension(hg) == 1  # symmetric position: one extra spline


def test_all_homogeneous_witnesses_at_origin(two_squares):
    report = face_translatable_check(two_squares)
    assert report.all_translatable
    assert {fw.witness for fw in report.faces} == {(F(0), F(0))}


def test_rotation_invariance(subdivided_triangle):
    t = subdivided_triangle
    dims = []
    for x0, y0 in ((1, 4), (2, -5)):
        g, _ = dualize(rotate_triangulation(t, x0, y0))
        assert face_translatable_check(g).all_translatable
        hg, _ = homogenize(g)
        dims.append(spline_dimension(hg))
    assert dims == [1, 1]


def test_rotation_commutes_with_dualize(subdivided_triangle):
    t = subdivided_triangle
    g, labels = dualize(t)
    g2, labels2 = dualize(rotate_triangulation(t, 1, 4))
    assert labels2 == rotate_labels(labels, 1, 4)
    # same walks up to the cyclic starting edge
    for f1, f2 in zip(g.faces, g2.faces):
        assert len(f1) == len(f2)
        shift = f2.index(f1[0])
        assert f1 == f2[shift:] + f2[:shift]


def test_rotate_line_coefficients():
    assert rotate_line_coefficients((1, 2, 3), 2, 1) == (F(4), F(3), F(3))


def test_bad_rotations(subdivided_triangle):
    with pytest.raises(BadRotation):
        rotate_triangulation(subdivided_triangle, 0, 0)
    g, labels = dualize(subdivided_triangle)
    with pytest.raises(BadRotation):
        rotate_labels(labels, 1, 1)  # slope -1 becomes horizontal
    rotated = rotate(g, 1, 4)
    assert set(rotated.labels) == set(labels)


def test_horizontal_edge_detected(morgan_scott_triangulation):
    with pytest.raises(HorizontalEdge, match="horizontal"):
        dualize(morgan_scott_triangulation)


def test_find_rotation_and_recover(morgan_scott_triangulation):
    t = morgan_scott_triangulation
    x0, y0 = find_rotation(t)
    assert (x0, y0) == (1, 1)
    g, _labels = dualize(rotate_triangulation(t, x0, y0))
    assert face_translatable_check(g).all_translatable
    hg, _ = homogenize(g)
    assert spline_dimension(hg) == 1


def test_find_rotation_on_labels():
    # monic labels stay monic under the identity; nothing to dodge at k=0
    labels = {0: EdgeLabel.of(F(-1, 1)), 1: EdgeLabel.of(F(-1, 2))}
    assert find_rotation(labels) == (1, 0)
    rotate_labels(labels, *find_rotation(labels))  # must not raise


def test_find_rotation_dodges_horizontal_slope():
    t = _tri([[0, 0], [2, 0], [1, 1], [1, -1]], [[0, 1, 2], [0, 3, 1]])
    assert find_rotation(t) == (1, 1)  # the interior edge has slope 0
    g, _ = dualize(rotate_triangulation(t, *find_rotation(t)))
    assert g.f == 0 and g.e == 1


def test_rotate_dispatch(subdivided_triangle):
    t = subdivided_triangle
    assert isinstance(rotate(t, 1, 4), Triangulation)
    g, labels = dualize(t)
    assert rotate(labels, 1, 4) == rotate_labels(labels, 1, 4)
