"""Dual-graph combinatorics for the extended matrix determinant.

The dual has one vertex per bounded face; an edge on two faces joins
them, an edge on one face is a loop there, an edge on no face vanishes.
An edge-injective assignment hands each face up to three of its boundary
edges, all assignments pairwise disjoint.  Orienting every assigned dual
edge toward its assigned face gives the orientation whose directed-cycle
and coloring structure this module analyzes, and the determinant of any
square column choice expands as a signed sum of Vandermonde blocks over
the assignments that hit exactly those columns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidGraph, NoneExists, NotFound, SizeGuard
from .exact_algebra import MultiPoly
from .graph_model import PlanarGraph, require_valid

ENUMERATE_MAX_EDGES = 30
CYCLE_ARCS_MAX = 20
EXPANSION_TERMS_MAX = 100_000


@dataclass(frozen=True)
class DualEdge:
    gedge: int
    faces: tuple[int, ...]  # one face id (loop) or two

    @property
    def loop(self) -> bool:
        return len(self.faces) == 1


@dataclass(frozen=True)
class DualGraph:
    nvertices: int  # face count of the primal graph
    edges: tuple[DualEdge, ...]

    def loops_at(self, fid: int) -> int:
        return sum(1 for d in self.edges if d.loop and d.faces[0] == fid)


def build_dual(g: PlanarGraph) -> DualGraph:
    require_valid(g)
    out = []
    for eid in range(g.e):
        fids = g.faces_of_edge.get(eid, ())
        if fids:
            out.append(DualEdge(eid, tuple(fids)))
    return DualGraph(g.f, tuple(out))


@dataclass(frozen=True)
class EdgeInjectiveFn:
    entries: tuple[tuple[int, tuple[int, ...]], ...]  # (face id, sorted edge ids)

    @classmethod
    def from_dict(cls, assignment) -> "EdgeInjectiveFn":
        entries = tuple(
            (int(fid), tuple(sorted(edges)))
            for fid, edges in sorted(assignment.items())
            if edges
        )
        return cls(entries)

    @property
    def assignment(self) -> dict[int, frozenset[int]]:
        return {fid: frozenset(edges) for fid, edges in self.entries}

    def get(self, fid: int) -> tuple[int, ...]:
        for f, edges in self.entries:
            if f == fid:
                return edges
        return ()

    def image(self) -> frozenset[int]:
        return frozenset(e for _f, edges in self.entries for e in edges)

    def check(self, g: PlanarGraph) -> None:
        seen = set()
        for fid, edges in self.entries:
            bound = set(g.face_edge_ids(fid))
            if len(edges) > 3:
                raise InvalidGraph("face %d assigned %d edges" % (fid, len(edges)))
            for e in edges:
                if e not in bound:
                    raise InvalidGraph("edge %d does not bound face %d" % (e, fid))
                if e in seen:
                    raise InvalidGraph("edge %d assigned twice" % e)
                seen.add(e)


@dataclass(frozen=True)
class Arc:
    source: int
    target: int
    gedge: int

    @property
    def loop(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True)
class DualOrientation:
    nvertices: int
    arcs: tuple[Arc, ...]

    def in_degrees(self) -> list[int]:
        deg = [0] * self.nvertices
        for arc in self.arcs:
            deg[arc.target] += 1
        return deg

    def is_total(self) -> bool:
        return all(d == 3 for d in self.in_degrees())


def orientation_from(g: PlanarGraph, phi: EdgeInjectiveFn) -> DualOrientation:
    """Point every assigned dual edge at its assigned face; drop the rest."""
    phi.check(g)
    owner = {}
    for fid, edges in phi.entries:
        for e in edges:
            owner[e] = fid
    arcs = []
    for de in build_dual(g).edges:
        fid = owner.get(de.gedge)
        if fid is None:
            continue
        if de.loop:
            arcs.append(Arc(fid, fid, de.gedge))
        else:
            other = de.faces[0] if de.faces[1] == fid else de.faces[1]
            arcs.append(Arc(other, fid, de.gedge))
    return DualOrientation(g.f, tuple(arcs))


# ---------------------------------------------------------------------------
# Greedy maximal assignment


def _face_adjacency(g: PlanarGraph):
    """fid -> sorted list of (shared edge id, neighbor fid)."""
    adj: dict[int, list[tuple[int, int]]] = {fid: [] for fid in range(g.f)}
    for eid, fids in g.faces_of_edge.items():
        if len(fids) == 2:
            a, b = fids
            adj[a].append((eid, b))
            adj[b].append((eid, a))
    for fid in adj:
        adj[fid].sort()
    return adj

def _face_order(g: PlanarGraph) -> list[int]:
    # breadth-first over the dual, seeded at the face with the most
    # boundary-only edges, lowest id on ties; repeated per dual component
    boundary_only = [0] * g.f
    for eid, fids in g.faces_of_edge.items():
        if len(fids) == 1:
            boundary_only[fids[0]] += 1
    adj = _face_adjacency(g)
    order: list[int] = []
    seen: set[int] = set()
    while len(order) < g.f:
        start = max(
            (fid for fid in range(g.f) if fid not in seen),
            key=lambda fid: (boundary_only[fid], -fid),
        )
        queue = [start]
        seen.add(start)
        while queue:
            fid = queue.pop(0)
            order.append(fid)
            for _eid, nb in adj[fid]:
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
    return order


def greedy_maximal(g: PlanarGraph):
    phi, leftover, _stalls = greedy_with_stalls(g)
    return phi, leftover


def greedy_with_stalls(g: PlanarGraph):
    """Greedy assignment with augmentation; also reports stall certificates.

    Returns (phi, leftover edge ids, stalls) where each stall is
    (face id, frozenset of faces reachable along compatible paths).
    """
    require_valid(g)
    adj = _face_adjacency(g)
    assign: dict[int, set[int]] = {fid: set() for fid in range(g.f)}
    used: set[int] = set()
    stalls: list[tuple[int, frozenset[int]]] = []

    for fid in _face_order(g):
        boundary = sorted(g.face_edge_ids(fid))
        target = min(3, len(boundary))
        for eid in boundary:
            if len(assign[fid]) >= target:
                break
            if eid not in used:
                assign[fid].add(eid)
                used.add(eid)
        while len(assign[fid]) < target:
            path = _augmenting_path(g, adj, assign, used, fid)
            if path is None:
                reach = _compatible_reachable(adj, assign, fid)
                stalls.append((fid, frozenset(reach)))
                break
            moves, fresh = path
            for receiver, donor, eid in moves:
                assign[donor].remove(eid)
                assign[receiver].add(eid)
            assign[moves[-1][1]].add(fresh)
            used.add(fresh)

    phi = EdgeInjectiveFn.from_dict(assign)
    leftover = frozenset(range(g.e)) - phi.image()
    return phi, leftover, stalls


def _augmenting_path(g, adj, assign, used, start):
    """BFS over pulls: step to a neighbor that owns the shared edge.

    Returns ([(receiver, donor, edge), ...], fresh edge) ending at a donor
    face with a globally unused boundary edge, or None when stalled.
    """
    parent: dict[int, tuple[int, int]] = {}
    seen = {start}
    queue = [start]
    while queue:
        fid = queue.pop(0)
        for eid, nb in adj[fid]:
            if nb in seen or eid not in assign[nb]:
                continue
            seen.add(nb)
            parent[nb] = (fid, eid)
            fresh = next(
                (x for x in sorted(g.face_edge_ids(nb)) if x not in used), None
            )
            if fresh is not None:
                moves = []
                cur = nb
                while cur != start:
                    prev, pulled = parent[cur]
                    moves.append((prev, cur, pulled))
                    cur = prev
                moves.reverse()
                return moves, fresh
            queue.append(nb)
    return None


def _compatible_reachable(adj, assign, start) -> set[int]:
    seen = {start}
    queue = [start]
    while queue:
        fid = queue.pop(0)
        for eid, nb in adj[fid]:
            if nb not in seen and eid in assign[nb]:
                seen.add(nb)
                queue.append(nb)
    return seen


# ---------------------------------------------------------------------------
# Exhaustive enumeration


def enumerate_all(g: PlanarGraph) -> frozenset[EdgeInjectiveFn]:
    """All assignments giving every face exactly 3 edges, two ways.

    Brute force over per-face 3-subsets and reversal closure from the
    greedy assignment must agree exactly; a mismatch is a hard failure.
    """
    require_valid(g)
    if g.e > ENUMERATE_MAX_EDGES:
        raise SizeGuard("enumeration refused for e=%d" % g.e)
    active = [eid for eid in range(g.e) if g.faces_of_edge[eid]]
    if len(active) > 3 * g.f:
        raise InvalidGraph(
            "e=%d exceeds 3f=%d after discarding unused edges; restrict to a "
            "maximal image first" % (len(active), 3 * g.f)
        )
    brute = _enumerate_brute(g)
    closed = _enumerate_by_reversal(g)
    if brute != closed:
        raise AssertionError(
            "enumeration methods disagree: brute=%d closure=%d" % (len(brute), len(closed))
        )
    if not brute:
        raise NoneExists("no total edge-injective assignment exists")
    return frozenset(brute)


def _enumerate_brute(g: PlanarGraph) -> set[EdgeInjectiveFn]:
    candidates = []
    for fid in range(g.f):
        boundary = sorted(g.face_edge_ids(fid))
        candidates.append((fid, list(itertools.combinations(boundary, 3))))
    candidates.sort(key=lambda fc: len(fc[1]))
    found: set[EdgeInjectiveFn] = set()

    def rec(i: int, used: set[int], acc: dict[int, tuple[int, ...]]):
        if i == len(candidates):
            found.add(EdgeInjectiveFn.from_dict(acc))
            return
        fid, options = candidates[i]
        for triple in options:
            if any(e in used for e in triple):
                continue
            used.update(triple)
            acc[fid] = triple
            rec(i + 1, used, acc)
            used.difference_update(triple)
            del acc[fid]

    rec(0, set(), {})
    return found


def _enumerate_by_reversal(g: PlanarGraph) -> set[EdgeInjectiveFn]:
    phi0, _left = greedy_maximal(g)
    if any(len(phi0.get(fid)) != 3 for fid in range(g.f)):
        return set()
    states = {phi0}
    queue = [phi0]
    while queue:
        phi = queue.pop()
        orientation = orientation_from(g, phi)
        arcs = [a for a in orientation.arcs if not a.loop]
        for subset in _balanced_subsets(arcs, orientation.nvertices):
            nxt = _reverse(phi, subset)
            if nxt not in states:
                states.add(nxt)
                queue.append(nxt)
    return states


def _reverse(phi: EdgeInjectiveFn, arcs) -> EdgeInjectiveFn:
    assign = {fid: set(edges) for fid, edges in phi.entries}
    for arc in arcs:
        assign[arc.target].remove(arc.gedge)
        assign.setdefault(arc.source, set()).add(arc.gedge)
    return EdgeInjectiveFn.from_dict(assign)


def _balanced_subsets(arcs, nvertices):
    """Nonempty arc subsets with in-degree = out-degree at every vertex."""
    n = len(arcs)
    for mask in range(1, 1 << n):
        balance = [0] * nvertices
        for i in range(n):
            if mask & (1 << i):
                balance[arcs[i].source] += 1
                balance[arcs[i].target] -= 1
        if all(b == 0 for b in balance):
            yield [arcs[i] for i in range(n) if mask & (1 << i)]


# ---------------------------------------------------------------------------
# Directed cycle counting and admissible colorings


def count_directed_cycles(orientation: DualOrientation) -> int:
    """Number of vertex-balanced nonempty non-loop arc subsets.

    These are exactly the edge-disjoint unions of simple directed cycles;
    a disjoint union counts once.  Loops are excluded outright.
    """
    if not orientation.is_total():
        raise ValueError("orientation is not total (in-degree 3 everywhere)")
    arcs = [a for a in orientation.arcs if not a.loop]
    cyclic = [a for a in arcs if _reaches(arcs, a.target, a.source)]
    if len(cyclic) > CYCLE_ARCS_MAX:
        raise SizeGuard("cycle counting refused for %d cycle-capable arcs" % len(cyclic))
    return sum(1 for _ in _balanced_subsets(cyclic, orientation.nvertices))


def _reaches(arcs, src: int, dst: int) -> bool:
    if src == dst:
        return True
    seen = {src}
    queue = [src]
    while queue:
        v = queue.pop()
        for a in arcs:
            if a.source == v and a.target not in seen:
                if a.target == dst:
                    return True
                seen.add(a.target)
                queue.append(a.target)
    return False


@dataclass(frozen=True)
class ColoredOrientation:
    orientation: DualOrientation
    colors: tuple[int, ...]  # aligned with orientation.arcs

    def color_of_edge(self) -> dict[int, int]:
        return {a.gedge: c for a, c in zip(self.orientation.arcs, self.colors)}


def find_coloring(orientation: DualOrientation) -> ColoredOrientation:
    """3-color the arcs: distinct colors on each vertex's three incoming
    arcs, no monochromatic directed cycle among non-loop arcs.

    Backtracking over vertices, one permutation of {0,1,2} per vertex.
    NotFound signals a hypothesis violation such as dual multi-edges.
    """
    if not orientation.is_total():
        raise ValueError("orientation is not total (in-degree 3 everywhere)")
    arcs = orientation.arcs
    incoming: list[list[int]] = [[] for _ in range(orientation.nvertices)]
    for i, a in enumerate(arcs):
        incoming[a.target].append(i)
    colors: dict[int, int] = {}

    def mono_cycle() -> bool:
        for color in range(3):
            chosen = [arcs[i] for i, c in colors.items() if c == color and not arcs[i].loop]
            if _has_directed_cycle(chosen, orientation.nvertices):
                return True
        return False

    def place(v: int) -> bool:
        if v == orientation.nvertices:
            return True
        for perm in itertools.permutations(range(3)):
            for idx, color in zip(incoming[v], perm):
                colors[idx] = color
            if not mono_cycle() and place(v + 1):
                return True
            for idx in incoming[v]:
                del colors[idx]
        return False

    if not place(0):
        raise NotFound("no admissible 3-coloring; check the dual for multi-edges or holes")
    return ColoredOrientation(orientation, tuple(colors[i] for i in range(len(arcs))))


def _has_directed_cycle(arcs, nvertices: int) -> bool:
    nxt: list[list[int]] = [[] for _ in range(nvertices)]
    for a in arcs:
        nxt[a.source].append(a.target)
    state = [0] * nvertices  # 0 new, 1 on stack, 2 done
    for root in range(nvertices):
        if state[root]:
            continue
        stack = [(root, iter(nxt[root]))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if state[w] == 1:
                    return True
                if state[w] == 0:
                    state[w] = 1
                    stack.append((w, iter(nxt[w])))
                    advanced = True
                    break
            if not advanced:
                state[v] = 2
                stack.pop()
    return False


# ---------------------------------------------------------------------------
# Determinant expansion


def det_expansion(g: PlanarGraph, column_set) -> MultiPoly:
    """Symbolic determinant of the square submatrix on the given columns.

    Sum over assignments partitioning the columns into boundary triples:
    each face block contributes its sign product times a Vandermonde
    difference product, and the term carries the parity of sorting the
    concatenated face blocks against the ascending column list.
    """
    require_valid(g)
    cols = sorted(set(column_set))
    if len(cols) != 3 * g.f:
        raise ValueError("need exactly 3f=%d columns, got %d" % (3 * g.f, len(cols)))
    colset = set(cols)
    nvars = g.e
    pos = {c: i for i, c in enumerate(cols)}

    per_face = []
    for fid in range(g.f):
        boundary = sorted(e for e in g.face_edge_ids(fid) if e in colset)
        per_face.append(list(itertools.combinations(boundary, 3)))

    total = MultiPoly.zero(nvars)
    count = 0
    stack: list[tuple[int, ...]] = []
    used: set[int] = set()

    def rec(fid: int):
        nonlocal total, count
        if fid == g.f:
            count += 1
            if count > EXPANSION_TERMS_MAX:
                raise SizeGuard("expansion exceeded %d terms" % EXPANSION_TERMS_MAX)
            total = total + _term(g, nvars, pos, stack)
            return
        for triple in per_face[fid]:
            if any(e in used for e in triple):
                continue
            used.update(triple)
            stack.append(triple)
            rec(fid + 1)
            stack.pop()
            used.difference_update(triple)

    rec(0)
    return total


def _term(g: PlanarGraph, nvars: int, pos, triples) -> MultiPoly:
    concat = [pos[c] for triple in triples for c in triple]
    inversions = sum(
        1
        for i in range(len(concat))
        for j in range(i + 1, len(concat))
        if concat[i] > concat[j]
    )
    sign = -1 if inversions % 2 else 1
    poly = MultiPoly.const(nvars, sign)
    for fid, (c1, c2, c3) in enumerate(triples):
        eps = g.face_sign(fid, c1) * g.face_sign(fid, c2) * g.face_sign(fid, c3)
        block = MultiPoly.const(nvars, eps)
        for hi, lo in ((c2, c1), (c3, c1), (c3, c2)):
            block = block * (MultiPoly.variable(nvars, hi) - MultiPoly.variable(nvars, lo))
        poly = poly * block
    return poly
