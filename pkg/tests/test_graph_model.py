"""Graph data model: validation rules, subgraphs, serialization."""

import json
from fractions import Fraction

import pytest

from conftest import GRAPH_FIXTURES, fixture_path
from splinedim import (
    Edge,
    EdgeLabel,
    PlanarGraph,
    graph_from_dict,
    graph_to_dict,
    load_graph,
    require_valid,
    save_graph,
    validate,
)
from splinedim.errors import InvalidGraph
from splinedim.graph_model import (
    connected_components,
    remove_leaves,
    subgraph_from_faces,
    subgraph_with_origin,
)


@pytest.mark.parametrize("name", GRAPH_FIXTURES)
def test_fixtures_validate(name):
    g = load_graph(fixture_path(name))
    report = validate(g)
    assert report.ok, report.problems


def test_edge_label_homogeneous():
    assert EdgeLabel.of(2).homogeneous
    assert not EdgeLabel.of(2, 1).homogeneous


def _quad(walk_sign=1):
    """One 4-gon face; walk_sign=-1 flips one face entry to break chaining."""
    return PlanarGraph(
        ("a", "b", "c", "d"),
        (
            Edge(0, "a", "b", None),
            Edge(1, "b", "c", None),
            Edge(2, "c", "d", None),
            Edge(3, "d", "a", None),
        ),
        (((0, 1), (1, walk_sign), (2, 1), (3, 1)),),
    )


def test_validate_accepts_simple_quad():
    assert validate(_quad()).ok


def test_validate_rejects_broken_walk():
    report = validate(_quad(walk_sign=-1))
    assert not report.ok
    assert any("walk" in p or "chain" in p for p in report.problems)


def test_validate_rejects_sparse_edge_ids():
    g = PlanarGraph(
        ("a", "b"),
        (Edge(0, "a", "b", None), Edge(5, "b", "a", None)),
        (((0, 1), (5, 1)),),
    )
    assert not validate(g).ok


def test_validate_rejects_unknown_endpoint():
    g = PlanarGraph(("a",), (Edge(0, "a", "zzz", None),), ())
    assert not validate(g).ok


def test_validate_rejects_same_sign_shared_edge(two_squares):
    # flip F2's shared-edge sign so both faces traverse edge 3 the same way
    faces = list(two_squares.faces)
    f2 = [(e, (1 if e == 3 else s)) for e, s in faces[1]]
    g = PlanarGraph(two_squares.vertices, two_squares.edges, (faces[0], tuple(f2)))
    assert not validate(g).ok


def test_validate_rejects_edge_in_three_faces(two_squares):
    faces = list(two_squares.faces) + [((3, -1), (3, 1))]
    g = PlanarGraph(two_squares.vertices, two_squares.edges, tuple(faces))
    assert not validate(g).ok


def test_validate_rejects_euler_violation():
    # 4-gon ring of faces around an unfilled hole fails per-component Euler
    outer = ["o%d" % i for i in range(4)]
    inner = ["i%d" % i for i in range(4)]
    edges = []
    for k in range(4):
        edges.append(Edge(k, outer[k], outer[(k + 1) % 4], None))
    for k in range(4):
        edges.append(Edge(4 + k, inner[k], inner[(k + 1) % 4], None))
    for k in range(4):
        edges.append(Edge(8 + k, outer[k], inner[k], None))
    faces = []
    for k in range(4):
        faces.append(
            (
                (k, 1),
                (8 + (k + 1) % 4, 1),
                (4 + k, -1),
                (8 + k, -1),
            )
        )
    g = PlanarGraph(tuple(outer + inner), tuple(edges), tuple(faces))
    report = validate(g)
    assert not report.ok
    assert any("Euler" in p for p in report.problems)


def test_require_valid_raises(two_squares):
    with pytest.raises(InvalidGraph):
        require_valid(_quad(walk_sign=-1))
    require_valid(two_squares)


def test_remove_leaves_drops_dangler(two_squares):
    trimmed = remove_leaves(two_squares)
    assert trimmed.e == 7
    assert "v62" not in trimmed.vertices
    assert validate(trimmed).ok


def test_subgraph_with_origin_maps_edges(nongeneric_lens):
    sub, origin = subgraph_with_origin(nongeneric_lens, [0])
    assert sub.e == 2 and sub.f == 1
    assert origin == (0, 1)
    assert validate(sub).ok
    sub2, origin2 = subgraph_with_origin(nongeneric_lens, [1])
    assert sub2.e == 4
    assert origin2 == (0, 6, 7, 8)


def test_subgraph_from_faces(splittable):
    sub = subgraph_from_faces(splittable, [1])
    assert sub.e == 3 and sub.f == 1
    assert validate(sub).ok


def test_connected_components(two_squares):
    assert len(connected_components(two_squares)) == 1
    g = PlanarGraph(
        ("a", "b", "c", "d"),
        (Edge(0, "a", "b", None), Edge(1, "c", "d", None)),
        (),
    )
    assert len(connected_components(g)) == 2


def test_faces_of_edge_and_signs(two_squares):
    assert two_squares.faces_of_edge[3] == (0, 1)
    assert two_squares.faces_of_edge.get(7, ()) == ()
    assert two_squares.face_sign(0, 3) == 1
    assert two_squares.face_sign(1, 3) == -1


def test_json_round_trip(two_squares, tmp_path):
    data = graph_to_dict(two_squares)
    again = graph_from_dict(data)
    assert again.vertices == two_squares.vertices
    assert again.faces == two_squares.faces
    assert [ (e.id, e.tail, e.head, e.label) for e in again.edges ] == [
        (e.id, e.tail, e.head, e.label) for e in two_squares.edges
    ]
    path = tmp_path / "g.json"
    save_graph(two_squares, path)
    assert load_graph(path).labels == two_squares.labels
    with open(path) as fh:
        raw = json.load(fh)
    assert raw["edges"][0]["a"] == "1"


def test_labels_parse_fractions():
    g = graph_from_dict(
        {
            "vertices": ["u", "v"],
            "edges": [
                {"id": 0, "tail": "u", "head": "v", "a": "2/3", "b": "-1/2"},
                {"id": 1, "tail": "v", "head": "u"},
            ],
            "faces": [[{"edge": 0, "sign": 1}, {"edge": 1, "sign": 1}]],
        }
    )
    assert g.labels[0] == EdgeLabel(Fraction(2, 3), Fraction(-1, 2))
    assert 1 not in g.labels


def test_malformed_record_raises():
    with pytest.raises(InvalidGraph):
        graph_from_dict({"vertices": [], "edges": [{"id": "x"}], "faces": []})
