"""Random valid edge-labeled planar graphs for property tests.

Graphs start as grid polyominoes (each cell a clockwise 4-gon face) and
are then mutated: edge subdivisions, lenses on outer edges, loops at
outer vertices, chords across long faces, dangling edges.  At most five
faces, so no polyomino can enclose a hole.  Every emitted graph passes
validate(); emission is additionally filtered so that both dimension
methods apply to it (no two minimal contractible face sets share an
edge and every contraction stage is simply connected).
"""

from __future__ import annotations

import random
from fractions import Fraction

from splinedim import PlanarGraph, Edge, graph_from_dict, validate
from splinedim.contraction import dimension_by_contraction
from splinedim.errors import HypothesisViolation, SharedEdgeViolation, SpecialPosition

MAX_EDGES = 18
MAX_FACES = 5


class _Builder:
    """Mutable edge list + face walks, emitted as a PlanarGraph."""

    def __init__(self):
        self.edges = []  # (tail, head)
        self.faces = []  # list of [(eid, sign)]
        self.fresh = 0

    # -- construction ------------------------------------------------

    def add_edge(self, tail, head) -> int:
        self.edges.append((tail, head))
        return len(self.edges) - 1

    def faces_of(self, eid):
        return [i for i, walk in enumerate(self.faces) if any(e == eid for e, _s in walk)]

    def walk_vertices(self, fid):
        """Start vertex of each walk entry, in order."""
        out = []
        for eid, sign in self.faces[fid]:
            tail, head = self.edges[eid]
            out.append(tail if sign == 1 else head)
        return out

    def boundary_edges(self):
        counts = {}
        for walk in self.faces:
            for eid, _s in walk:
                counts[eid] = counts.get(eid, 0) + 1
        return [eid for eid, n in counts.items() if n == 1]

    def graph(self) -> PlanarGraph:
        seen = {}
        order = []
        for tail, head in self.edges:
            for v in (tail, head):
                if v not in seen:
                    seen[v] = True
                    order.append(v)
        g = PlanarGraph(
            tuple(order),
            tuple(Edge(i, t, h, None) for i, (t, h) in enumerate(self.edges)),
            tuple(tuple(walk) for walk in self.faces),
        )
        return g

    # -- mutations ---------------------------------------------------

    def subdivide(self, rng) -> bool:
        if not self.edges:
            return False
        candidates = [i for i, (t, h) in enumerate(self.edges) if t != h]
        if not candidates:
            return False
        eid = rng.choice(candidates)
        tail, head = self.edges[eid]
        mid = "s%d" % self.fresh
        self.fresh += 1
        self.edges[eid] = (tail, mid)
        new = self.add_edge(mid, head)
        for walk in self.faces:
            for pos, (e, sign) in enumerate(list(walk)):
                if e != eid:
                    continue
                if sign == 1:
                    walk[pos : pos + 1] = [(eid, 1), (new, 1)]
                else:
                    walk[pos : pos + 1] = [(new, -1), (eid, -1)]
        return True

    def lens(self, rng) -> bool:
        # base edge must bound exactly one face with >= 3 edges, so lens
        # faces never stack on lenses or loops
        candidates = []
        for eid in self.boundary_edges():
            tail, head = self.edges[eid]
            if tail == head:
                continue
            fid = self.faces_of(eid)[0]
            if len(self.faces[fid]) >= 3:
                candidates.append((eid, fid))
        if not candidates:
            return False
        eid, fid = rng.choice(candidates)
        sign = next(s for e, s in self.faces[fid] if e == eid)
        tail, head = self.edges[eid]
        new = self.add_edge(tail, head)
        self.faces.append([(eid, -sign), (new, sign)])
        return True

    def loop(self, rng) -> bool:
        outer = set()
        for eid in self.boundary_edges():
            outer.update(self.edges[eid])
        if not outer:
            return False
        v = rng.choice(sorted(outer))
        new = self.add_edge(v, v)
        self.faces.append([(new, 1)])
        return True

    def chord(self, rng) -> bool:
        # only faces of length >= 5, so a chord never splits a face into
        # two triangles sharing it
        candidates = [i for i, walk in enumerate(self.faces) if len(walk) >= 5]
        if not candidates:
            return False
        fid = rng.choice(candidates)
        walk = self.faces[fid]
        n = len(walk)
        verts = self.walk_vertices(fid)
        cuts = [
            (i, j)
            for i in range(n)
            for j in range(i + 2, n)
            if n - (j - i) >= 2 and verts[i] != verts[j]
        ]
        if not cuts:
            return False
        i, j = rng.choice(cuts)
        new = self.add_edge(verts[i], verts[j])
        first = walk[i:j] + [(new, -1)]
        second = walk[j:] + walk[:i] + [(new, 1)]
        self.faces[fid] = first
        self.faces.append(second)
        return True

    def leaf(self, rng) -> bool:
        verts = sorted({v for t, h in self.edges for v in (t, h)})
        if not verts:
            return False
        v = rng.choice(verts)
        tip = "d%d" % self.fresh
        self.fresh += 1
        self.add_edge(v, tip)
        return True


def _polyomino(rng: random.Random, max_cells: int) -> _Builder:
    cells = {(0, 0)}
    target = rng.randint(1, max_cells)
    while len(cells) < target:
        x, y = rng.choice(sorted(cells))
        dx, dy = rng.choice([(1, 0), (-1, 0), (0, 1), (0, -1)])
        cells.add((x + dx, y + dy))

    b = _Builder()
    name = lambda x, y: "p%d_%d" % (x, y)
    eid_of = {}

    def edge_between(u, v):
        key = (u, v) if u <= v else (v, u)
        if key not in eid_of:
            eid_of[key] = b.add_edge(*key)
        tail, _head = b.edges[eid_of[key]]
        return eid_of[key], 1 if tail == u else -1

    for x, y in sorted(cells):
        corners = [(x, y), (x, y + 1), (x + 1, y + 1), (x + 1, y)]
        walk = []
        for i in range(4):
            u = name(*corners[i])
            v = name(*corners[(i + 1) % 4])
            walk.append(edge_between(u, v))
        b.faces.append(walk)
    return b


_PROBE_LABELS = [Fraction(p) for p in (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
)]


def _hypotheses_ok(g: PlanarGraph) -> bool:
    labels = {ed.id: _PROBE_LABELS[ed.id] for ed in g.edges}
    try:
        dimension_by_contraction(g, labels)
    except (SharedEdgeViolation, HypothesisViolation):
        return False
    except SpecialPosition:
        return True
    return True


def random_graph(rng: random.Random) -> PlanarGraph:
    """A random valid planar graph with e <= 18, f <= 5, on which the
    contraction method's structural hypotheses hold."""
    while True:
        b = _polyomino(rng, max_cells=rng.choice((1, 1, 2, 2, 3, 4)))
        mutations = [b.subdivide, b.lens, b.loop, b.chord, b.leaf]
        for _ in range(rng.randint(0, 6)):
            if len(b.edges) >= MAX_EDGES:
                break
            op = rng.choice(mutations)
            if op in (b.lens, b.loop, b.chord) and len(b.faces) >= MAX_FACES:
                continue
            op(rng)
        g = b.graph()
        if g.e > MAX_EDGES or g.f > MAX_FACES:
            continue
        report = validate(g)
        if not report.ok:
            raise AssertionError("generator produced an invalid graph: %r" % (report.problems,))
        if _hypotheses_ok(g):
            return g


def random_distinct_labels(rng: random.Random, g: PlanarGraph) -> dict[int, Fraction]:
    """Distinct random rationals, one per edge."""
    seen = set()
    out = {}
    for ed in g.edges:
        while True:
            val = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
            if val not in seen:
                seen.add(val)
                out[ed.id] = val
                break
    return out
