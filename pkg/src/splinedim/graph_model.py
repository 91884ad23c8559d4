"""Planar graphs with explicit clockwise face cycles.

A graph here is combinatorial: opaque vertex ids, directed edges with
dense integer ids, and an explicit list of bounded faces.  Each face is
an ordered closed walk of (edge id, sign) entries where sign +1 means the
edge is traversed tail-to-head, which by convention is the clockwise
direction around the face.  The unbounded face is never stored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import InvalidGraph
from .exact_algebra import rational

FaceEntry = tuple[int, int]  # (edge id, +1 clockwise / -1 anticlockwise)


@dataclass(frozen=True)
class EdgeLabel:
    """The label (x + a*y + b)^2; b = None marks the homogeneous form."""

    a: Fraction
    b: Fraction | None = None

    @classmethod
    def of(cls, a, b=None) -> "EdgeLabel":
        return cls(rational(a), None if b is None else rational(b))

    @property
    def homogeneous(self) -> bool:
        return self.b is None or self.b == 0


@dataclass(frozen=True)
class Edge:
    id: int
    tail: object
    head: object
    label: EdgeLabel | None = None


@dataclass(frozen=True)
class PlanarGraph:
    vertices: tuple = ()
    edges: tuple[Edge, ...] = ()
    faces: tuple[tuple[FaceEntry, ...], ...] = ()

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def f(self) -> int:
        return len(self.faces)

    @cached_property
    def edge_by_id(self) -> dict[int, Edge]:
        return {ed.id: ed for ed in self.edges}

    @cached_property
    def labels(self) -> dict[int, EdgeLabel]:
        return {ed.id: ed.label for ed in self.edges if ed.label is not None}

    @cached_property
    def faces_of_edge(self) -> dict[int, tuple[int, ...]]:
        """Edge id -> bounded faces it lies on (0, 1 or 2 of them)."""
        hit: dict[int, list[int]] = {ed.id: [] for ed in self.edges}
        for fid, walk in enumerate(self.faces):
            for eid, _sign in walk:
                if eid in hit:
                    hit[eid].append(fid)
        return {k: tuple(v) for k, v in hit.items()}

    def face_edge_ids(self, fid: int) -> tuple[int, ...]:
        return tuple(eid for eid, _sign in self.faces[fid])

    def face_sign(self, fid: int, eid: int) -> int:
        for e, s in self.faces[fid]:
            if e == eid:
                return s
        raise KeyError("edge %d not on face %d" % (eid, fid))

    def with_labels(self, labels: dict[int, EdgeLabel]) -> "PlanarGraph":
        edges = tuple(
            Edge(ed.id, ed.tail, ed.head, labels.get(ed.id, ed.label))
            for ed in self.edges
        )
        return PlanarGraph(self.vertices, edges, self.faces)


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok


def _walk_endpoints(edge: Edge, sign: int):
    return (edge.tail, edge.head) if sign == 1 else (edge.head, edge.tail)


def validate(g: PlanarGraph) -> ValidationReport:
    """Check every structural invariant; an empty report means valid."""
    problems: list[str] = []
    vset = set(g.vertices)
    if len(vset) != len(g.vertices):
        problems.append("duplicate vertex ids")

    ids = [ed.id for ed in g.edges]
    if sorted(ids) != list(range(len(ids))):
        problems.append("edge ids are not dense 0..%d" % (len(ids) - 1))
    if len(set(ids)) != len(ids):
        problems.append("duplicate edge ids")
    for ed in g.edges:
        if ed.tail not in vset or ed.head not in vset:
            problems.append("edge %d has undeclared endpoint" % ed.id)

    by_id = {ed.id: ed for ed in g.edges}
    for fid, walk in enumerate(g.faces):
        if not walk:
            problems.append("face %d is empty" % fid)
            continue
        seen = set()
        bad = False
        for eid, sign in walk:
            if sign not in (1, -1):
                problems.append("face %d has sign %r" % (fid, sign))
                bad = True
            if eid not in by_id:
                problems.append("face %d references unknown edge %d" % (fid, eid))
                bad = True
            if eid in seen:
                problems.append("face %d repeats edge %d" % (fid, eid))
                bad = True
            seen.add(eid)
        if bad:
            continue
        starts_ends = [_walk_endpoints(by_id[eid], sign) for eid, sign in walk]
        for i, (_, end) in enumerate(starts_ends):
            nxt = starts_ends[(i + 1) % len(starts_ends)][0]
            if end != nxt:
                problems.append(
                    "face %d walk breaks between entries %d and %d" % (fid, i, (i + 1) % len(walk))
                )

    # MacLane-style condition: at most two faces per edge, opposite signs when two.
    usage: dict[int, list[tuple[int, int]]] = {}
    for fid, walk in enumerate(g.faces):
        for eid, sign in walk:
            usage.setdefault(eid, []).append((fid, sign))
    for eid, occ in usage.items():
        if len(occ) > 2:
            problems.append("edge %d lies on %d faces" % (eid, len(occ)))
        elif len(occ) == 2 and occ[0][1] == occ[1][1]:
            problems.append(
                "edge %d has the same sign on faces %d and %d" % (eid, occ[0][0], occ[1][0])
            )

    # Per-component Euler count as a planarity proxy for components with faces.
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for ed in g.edges:
        if ed.tail in parent and ed.head in parent:
            ra, rb = find(ed.tail), find(ed.head)
            if ra != rb:
                parent[ra] = rb
    comp_v: dict = {}
    for v in g.vertices:
        comp_v.setdefault(find(v), set()).add(v)
    comp_e: dict = {}
    for ed in g.edges:
        if ed.tail in parent:
            comp_e.setdefault(find(ed.tail), []).append(ed.id)
    comp_f: dict = {}
    for fid, walk in enumerate(g.faces):
        if not walk:
            continue
        eid = walk[0][0]
        if eid in by_id and by_id[eid].tail in parent:
            comp_f.setdefault(find(by_id[eid].tail), []).append(fid)
    for root, verts in comp_v.items():
        nf = len(comp_f.get(root, []))
        if nf == 0:
            continue
        nv, ne = len(verts), len(comp_e.get(root, []))
        if nv - ne + nf != 1:
            problems.append(
                "component Euler count fails: v=%d e=%d f=%d (expected v-e+f=1)" % (nv, ne, nf)
            )

    return ValidationReport(tuple(problems))


def require_valid(g: PlanarGraph) -> PlanarGraph:
    rep = validate(g)
    if not rep.ok:
        raise InvalidGraph("; ".join(rep.problems))
    return g


def _renumber(edges: list[Edge], faces: list[tuple[FaceEntry, ...]]):
    """Renumber edges densely (ascending old id); return (edges, faces, origin)."""
    order = sorted(edges, key=lambda ed: ed.id)
    newid = {ed.id: i for i, ed in enumerate(order)}
    out_edges = tuple(Edge(newid[ed.id], ed.tail, ed.head, ed.label) for ed in order)
    out_faces = tuple(
        tuple((newid[eid], sign) for eid, sign in walk) for walk in faces
    )
    origin = tuple(ed.id for ed in order)
    return out_edges, out_faces, origin


def remove_leaves(g: PlanarGraph) -> PlanarGraph:
    """Drop degree <= 1 vertices (and their edges) until none remain.

    Leaf edges never lie on a face cycle, so faces survive unchanged up to
    edge renumbering; a face edge disappearing marks the input as broken.
    """
    live_edges = {ed.id: ed for ed in g.edges}
    live_verts = set(g.vertices)
    while True:
        deg: dict = {v: 0 for v in live_verts}
        for ed in live_edges.values():
            deg[ed.tail] += 1
            deg[ed.head] += 1
        drop = {v for v, d in deg.items() if d <= 1}
        if not drop:
            break
        face_edges = {eid for walk in g.faces for eid, _ in walk}
        for ed in list(live_edges.values()):
            if ed.tail in drop or ed.head in drop:
                if ed.id in face_edges:
                    raise InvalidGraph("face edge %d hangs on a leaf vertex" % ed.id)
                del live_edges[ed.id]
        live_verts -= drop
    edges, faces, _ = _renumber(list(live_edges.values()), list(g.faces))
    vertices = tuple(v for v in g.vertices if v in live_verts)
    return PlanarGraph(vertices, edges, faces)


def subgraph_from_faces(g: PlanarGraph, s) -> PlanarGraph:
    """The subgraph carried by the faces in s: their edges and vertices.

    Not the induced subgraph: only edges lying on a face in s survive.
    Edge ids are renumbered densely in ascending original order.
    """
    sub, _origin = subgraph_with_origin(g, s)
    return sub


def subgraph_with_origin(g: PlanarGraph, s):
    s = sorted(set(s))
    if any(fid < 0 or fid >= g.f for fid in s):
        raise ValueError("face id out of range in %r" % (s,))
    keep_edges = {eid for fid in s for eid, _ in g.faces[fid]}
    edges = [g.edge_by_id[eid] for eid in sorted(keep_edges)]
    vset = []
    seen = set()
    for ed in edges:
        for v in (ed.tail, ed.head):
            if v not in seen:
                seen.add(v)
                vset.append(v)
    faces = [g.faces[fid] for fid in s]
    new_edges, new_faces, origin = _renumber(edges, faces)
    vertices = tuple(v for v in g.vertices if v in seen)
    return PlanarGraph(vertices, new_edges, new_faces), origin


def connected_components(g: PlanarGraph) -> list[set]:
    """Vertex sets of the connected components (isolated vertices included)."""
    adj: dict = {v: set() for v in g.vertices}
    for ed in g.edges:
        adj[ed.tail].add(ed.head)
        adj[ed.head].add(ed.tail)
    out = []
    left = set(g.vertices)
    for v in g.vertices:
        if v not in left:
            continue
        comp = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        out.append(comp)
        left -= comp
    return out


# ---------------------------------------------------------------------------
# JSON format


def graph_from_dict(data: dict) -> PlanarGraph:
    try:
        vertices = tuple(data["vertices"])
        edges = []
        for rec in data["edges"]:
            label = None
            if "a" in rec:
                b = rational(rec["b"]) if "b" in rec else None
                label = EdgeLabel(rational(rec["a"]), b)
            edges.append(Edge(int(rec["id"]), rec["tail"], rec["head"], label))
        edges.sort(key=lambda ed: ed.id)
        faces = tuple(
            tuple((int(ent["edge"]), int(ent["sign"])) for ent in walk)
            for walk in data["faces"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGraph("malformed graph record: %s" % exc) from None
    return PlanarGraph(vertices, tuple(edges), faces)


def graph_to_dict(g: PlanarGraph) -> dict:
    edges = []
    for ed in g.edges:
        rec = {"id": ed.id, "tail": ed.tail, "head": ed.head}
        if ed.label is not None:
            rec["a"] = str(ed.label.a)
            if ed.label.b is not None:
                rec["b"] = str(ed.label.b)
        edges.append(rec)
    return {
        "vertices": list(g.vertices),
        "edges": edges,
        "faces": [[{"edge": eid, "sign": sign} for eid, sign in walk] for walk in g.faces],
    }


def load_graph(path) -> PlanarGraph:
    with open(path) as fh:
        return graph_from_dict(json.load(fh))


def save_graph(g: PlanarGraph, path) -> None:
    with open(path, "w") as fh:
        json.dump(graph_to_dict(g), fh, indent=2, sort_keys=True)
        fh.write("\n")
