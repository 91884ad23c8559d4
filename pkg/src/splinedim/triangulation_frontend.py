"""Planar triangulations and their labeled dual graphs.

The dual has one vertex per triangle, one edge per interior edge of the
triangulation, and one face per interior vertex (the clockwise fan of
triangles around it).  Each dual edge is labeled with the monic line
x + a*y + b through the crossed edge's endpoints; homogenization drops
the constants, licensed per face by a common zero of its lines, and a
rational rotation removes horizontal edges when they block the monic
form.  All coordinates and coefficients are exact rationals.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadRotation, Degenerate, HorizontalEdge, MissingLabel
from .exact_algebra import format_rational, rational
from .graph_model import Edge, EdgeLabel, PlanarGraph, require_valid

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Triangulation:
    points: tuple[Point, ...]
    triangles: tuple[tuple[int, int, int], ...]


def triangulation_from_dict(data: dict) -> Triangulation:
    points = tuple(
        (rational(x), rational(y)) for x, y in data["points"]
    )
    triangles = tuple(tuple(int(i) for i in tri) for tri in data["triangles"])
    t = Triangulation(points, triangles)
    validate_triangulation(t)
    return t


def triangulation_to_dict(t: Triangulation) -> dict:
    return {
        "points": [[format_rational(x), format_rational(y)] for x, y in t.points],
        "triangles": [list(tri) for tri in t.triangles],
    }


def load_triangulation(path) -> Triangulation:
    with open(path, "r", encoding="utf-8") as fh:
        return triangulation_from_dict(json.load(fh))


def _cross(o: Point, p: Point, q: Point) -> Fraction:
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def validate_triangulation(t: Triangulation) -> None:
    n = len(t.points)
    if len(set(t.points)) != n:
        raise Degenerate("repeated points")
    seen = set()
    for tri in t.triangles:
        if len(tri) != 3 or len(set(tri)) != 3:
            raise Degenerate("triangle %r does not have 3 distinct vertices" % (tri,))
        if any(i < 0 or i >= n for i in tri):
            raise Degenerate("triangle %r references a missing point" % (tri,))
        key = frozenset(tri)
        if key in seen:
            raise Degenerate("triangle %r repeated" % (tri,))
        seen.add(key)
        a, b, c = (t.points[i] for i in tri)
        if _cross(a, b, c) == 0:
            raise Degenerate("triangle %r is collinear" % (tri,))
    for edge, tris in edge_triangles(t).items():
        if len(tris) > 2:
            raise Degenerate("edge %r lies in %d triangles" % (sorted(edge), len(tris)))


def edge_triangles(t: Triangulation) -> dict[frozenset[int], list[int]]:
    out: dict[frozenset[int], list[int]] = {}
    for idx, tri in enumerate(t.triangles):
        for i in range(3):
            out.setdefault(frozenset((tri[i], tri[(i + 1) % 3])), []).append(idx)
    return out


def interior_edges(t: Triangulation) -> list[frozenset[int]]:
    return sorted(
        (e for e, tris in edge_triangles(t).items() if len(tris) == 2),
        key=sorted,
    )


def boundary_edges(t: Triangulation) -> list[frozenset[int]]:
    return sorted(
        (e for e, tris in edge_triangles(t).items() if len(tris) == 1),
        key=sorted,
    )


def interior_vertices(t: Triangulation) -> list[int]:
    used = {i for tri in t.triangles for i in tri}
    on_boundary = {i for e in boundary_edges(t) for i in e}
    return sorted(used - on_boundary)


def boundary_vertices(t: Triangulation) -> list[int]:
    return sorted({i for e in boundary_edges(t) for i in e})


def _line_label(p: Point, q: Point) -> EdgeLabel:
    """Monic line x + a*y + b through two points."""
    dx = q[0] - p[0]
    dy = q[1] - p[1]
    if dy == 0:
        raise HorizontalEdge(
            "edge through (%s, %s) and (%s, %s) is horizontal; rotate the input first"
            % (format_rational(p[0]), format_rational(p[1]),
               format_rational(q[0]), format_rational(q[1]))
        )
    return EdgeLabel.of(-dx / dy, (dx * p[1] - dy * p[0]) / dy)


def _clockwise_key(center: Point, points: dict):
    """Comparator sorting neighbor indices clockwise around the center."""

    def half(w) -> int:
        ux = points[w][0] - center[0]
        uy = points[w][1] - center[1]
        return 0 if (uy > 0 or (uy == 0 and ux > 0)) else 1

    def cmp(w1, w2) -> int:
        h1, h2 = half(w1), half(w2)
        if h1 != h2:
            return -1 if h1 < h2 else 1
        u = (points[w1][0] - center[0], points[w1][1] - center[1])
        v = (points[w2][0] - center[0], points[w2][1] - center[1])
        cross = u[0] * v[1] - u[1] * v[0]
        if cross == 0:
            raise Degenerate("coincident edge directions at %s" % (center,))
        return -1 if cross > 0 else 1

    # counterclockwise comparator; the caller reverses for clockwise
    return functools.cmp_to_key(cmp)


def dualize(t: Triangulation):
    """Labeled dual graph: (PlanarGraph with labels embedded, label dict)."""
    validate_triangulation(t)
    ints = interior_edges(t)
    by_edge = edge_triangles(t)
    eid_of = {e: i for i, e in enumerate(ints)}

    edges = []
    labels: dict[int, EdgeLabel] = {}
    for i, e in enumerate(ints):
        p_idx, q_idx = sorted(e)
        t1, t2 = sorted(by_edge[e])
        labels[i] = _line_label(t.points[p_idx], t.points[q_idx])
        edges.append(Edge(i, "t%d" % t1, "t%d" % t2, labels[i]))

    tri_index = {frozenset(tri): idx for idx, tri in enumerate(t.triangles)}
    pointmap = {i: t.points[i] for i in range(len(t.points))}
    faces = []
    for v in interior_vertices(t):
        ws = sorted({w for e in by_edge if v in e for w in e if w != v})
        ws.sort(key=_clockwise_key(t.points[v], pointmap))
        ws.reverse()
        sectors = []
        for i, w in enumerate(ws):
            w2 = ws[(i + 1) % len(ws)]
            tri = frozenset((v, w, w2))
            if tri not in tri_index:
                raise Degenerate(
                    "incomplete triangle fan around interior vertex %d" % v
                )
            sectors.append(tri_index[tri])
        entries = []
        for i, tri_a in enumerate(sectors):
            tri_b = sectors[(i + 1) % len(sectors)]
            shared = frozenset((v, ws[(i + 1) % len(ws)]))
            eid = eid_of[shared]
            t1, _t2 = sorted(by_edge[shared])
            entries.append((eid, 1 if t1 == tri_a else -1))
        faces.append(tuple(entries))

    g = PlanarGraph(
        tuple("t%d" % i for i in range(len(t.triangles))),
        tuple(edges),
        tuple(faces),
    )
    require_valid(g)
    return g, labels


# ---------------------------------------------------------------------------
# Homogenization and translatability


def homogenize_labels(labels: dict[int, EdgeLabel]):
    """Drop the constants; returns (homogeneous labels, originals)."""
    originals = dict(labels)
    stripped = {eid: EdgeLabel.of(lab.a) for eid, lab in labels.items()}
    return stripped, originals


def homogenize(g: PlanarGraph):
    """Graph with every label's constant dropped; returns (graph, originals)."""
    stripped, originals = homogenize_labels(g.labels)
    return g.with_labels(stripped), originals


@dataclass(frozen=True)
class FaceWitness:
    fid: int
    translatable: bool
    witness: Point | None


@dataclass(frozen=True)
class TranslatabilityReport:
    faces: tuple[FaceWitness, ...]

    @property
    def all_translatable(self) -> bool:
        return all(fw.translatable for fw in self.faces)

    def witness_of(self, fid: int):
        return self.faces[fid].witness


def face_translatable_check(g: PlanarGraph, labels=None) -> TranslatabilityReport:
    """Per bounded face, the common zero of its edge lines, if any.

    A missing constant counts as 0, so all-homogeneous faces witness at
    the origin.  Faces without a common point are reported, not raised.
    """
    require_valid(g)
    if labels is None:
        labels = g.labels
    out = []
    for fid in range(g.f):
        lines = []
        for eid in g.face_edge_ids(fid):
            if eid not in labels:
                raise MissingLabel("edge %d on face %d has no label" % (eid, fid))
            lab = labels[eid]
            lines.append((rational(lab.a), rational(lab.b) if lab.b is not None else Fraction(0)))
        witness = _common_point(lines)
        out.append(FaceWitness(fid, witness is not None, witness))
    return TranslatabilityReport(tuple(out))


def _common_point(lines):
    """Common solution of {x + a*y + b = 0}, preferring y = 0 when free."""
    distinct = sorted(set(lines))
    a0, b0 = distinct[0]
    pivot = next((ln for ln in distinct[1:] if ln[0] != a0), None)
    if pivot is None:
        # parallel lines: consistent only when they coincide
        if len(distinct) > 1:
            return None
        return (-b0, Fraction(0))
    a1, b1 = pivot
    y = (b1 - b0) / (a0 - a1)
    x = -b0 - a0 * y
    if all(x + a * y + b == 0 for a, b in distinct):
        return (x, y)
    return None


# ---------------------------------------------------------------------------
# Rotation (rational change of variables)


def rotate_line_coefficients(coeffs, x0, y0):
    """Raw line (a, b, c) -> (a*x0 + b*y0, b*x0 - a*y0, c)."""
    a, b, c = (rational(v) for v in coeffs)
    x0, y0 = rational(x0), rational(y0)
    return (a * x0 + b * y0, b * x0 - a * y0, c)


def _rotate_label(lab: EdgeLabel, x0: Fraction, y0: Fraction) -> EdgeLabel:
    lead = x0 + lab.a * y0
    if lead == 0:
        raise BadRotation(
            "label with a=%s maps to a horizontal line under (%s, %s)"
            % (format_rational(lab.a), format_rational(x0), format_rational(y0))
        )
    a = (lab.a * x0 - y0) / lead
    b = None if lab.b is None else lab.b / lead
    return EdgeLabel.of(a, b)


def rotate_labels(labels: dict[int, EdgeLabel], x0, y0) -> dict[int, EdgeLabel]:
    x0, y0 = _check_rotation(x0, y0)
    return {eid: _rotate_label(lab, x0, y0) for eid, lab in sorted(labels.items())}


def rotate_graph(g: PlanarGraph, x0, y0) -> PlanarGraph:
    return g.with_labels(rotate_labels(g.labels, x0, y0))


def rotate_triangulation(t: Triangulation, x0, y0) -> Triangulation:
    x0, y0 = _check_rotation(x0, y0)
    d = x0 * x0 + y0 * y0
    points = tuple(
        ((x0 * px + y0 * py) / d, (x0 * py - y0 * px) / d) for px, py in t.points
    )
    return Triangulation(points, t.triangles)


def rotate(obj, x0, y0):
    if isinstance(obj, Triangulation):
        return rotate_triangulation(obj, x0, y0)
    if isinstance(obj, PlanarGraph):
        return rotate_graph(obj, x0, y0)
    return rotate_labels(obj, x0, y0)


def _check_rotation(x0, y0):
    x0, y0 = rational(x0), rational(y0)
    if x0 == 0 and y0 == 0:
        raise BadRotation("(0, 0) is not a rotation")
    return x0, y0


def find_rotation(obj):
    """Smallest (1, k) making every line representable monic afterwards."""
    if isinstance(obj, Triangulation):
        bad = set()
        for e in interior_edges(obj):
            p_idx, q_idx = sorted(e)
            dx = obj.points[q_idx][0] - obj.points[p_idx][0]
            dy = obj.points[q_idx][1] - obj.points[p_idx][1]
            if dx != 0:
                bad.add(dy / dx)
    else:
        labels = obj.labels if isinstance(obj, PlanarGraph) else obj
        bad = {Fraction(-1) / lab.a for lab in labels.values() if lab.a != 0}
    k = 0
    while Fraction(k) in bad:
        k += 1
    return (Fraction(1), Fraction(k))
