"""Contractible face subsets, graph contraction, and the staged
dimension algorithm.

A face subset S is contractible when the subgraph G_S carried by those
faces satisfies e_S - 3 f_S <= 0, and minimal when no proper subset is.
Contracting G_S collapses each of its connected components to a single
vertex and deletes its edges.  Repeating on minimal subsets until none
remain yields a residual graph whose extended matrix has full expected
rank for generic labels, which gives the spline dimension; the stage
subgraphs also carry the polynomials cutting out the special-position
locus of the labels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    HypothesisViolation,
    NotContractible,
    SharedEdgeViolation,
    SizeGuard,
    SpecialPosition,
)
from .exact_algebra import MultiPoly, det_poly, rank, rational
from .graph_model import (
    Edge,
    PlanarGraph,
    _renumber,
    require_valid,
    subgraph_with_origin,
    validate,
)
from .spline_matrix import build_Mext, build_Mext_symbolic
from . import edge_injective

SUBSET_SEARCH_MAX = 6  # exhaustive minimal-subset search cap (face count)
CLASSIFY_FACES_MAX = 12
RESIDUAL_MINORS_MAX = 4000


@dataclass(frozen=True)
class ContractibilityResult:
    faces: frozenset[int]
    e_s: int
    f_s: int

    @property
    def deficiency(self) -> int:
        return self.e_s - 3 * self.f_s

    @property
    def contractible(self) -> bool:
        return self.deficiency <= 0

    def __bool__(self) -> bool:
        return self.contractible


def face_edge_set(g: PlanarGraph, s) -> frozenset[int]:
    return frozenset(eid for fid in s for eid, _sign in g.faces[fid])


def is_contractible(g: PlanarGraph, s) -> ContractibilityResult:
    faces = frozenset(int(fid) for fid in s)
    if not faces:
        raise ValueError("face subset is empty")
    if any(fid < 0 or fid >= g.f for fid in faces):
        raise ValueError("face id out of range in %r" % sorted(faces))
    edges = face_edge_set(g, faces)
    return ContractibilityResult(faces, len(edges), len(faces))


# ---------------------------------------------------------------------------
# Locating minimal contractible subsets


def _dual_adjacency(g: PlanarGraph) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {fid: set() for fid in range(g.f)}
    for fids in g.faces_of_edge.values():
        if len(fids) == 2:
            a, b = fids
            adj[a].add(b)
            adj[b].add(a)
    return adj


def _connected_subsets(adj: dict[int, set[int]], ground, max_size: int):
    """All subsets of `ground` up to max_size, connected under adj,
    each yielded exactly once (rooted at their minimum element)."""
    ground = sorted(ground)
    gset = set(ground)
    out: list[frozenset[int]] = []

    def grow(cur: set[int], ext: list[int], banned: set[int], root: int):
        out.append(frozenset(cur))
        if len(cur) == max_size:
            return
        local_ban: set[int] = set()
        for i, v in enumerate(ext):
            if v in local_ban:
                continue
            new_ext = ext[i + 1 :] + sorted(
                w
                for w in adj[v]
                if w in gset
                and w > root
                and w not in cur
                and w not in banned
                and w not in local_ban
                and w not in ext
            )
            cur.add(v)
            grow(cur, new_ext, banned | local_ban, root)
            cur.remove(v)
            local_ban.add(v)

    for root in ground:
        ext0 = sorted(w for w in adj[root] if w in gset and w > root)
        grow({root}, ext0, set(), root)
    return out


def _face_components(g: PlanarGraph, faces) -> list[frozenset[int]]:
    """Split a face set into dual-connected components."""
    adj = _dual_adjacency(g)
    faces = set(faces)
    comps = []
    while faces:
        start = min(faces)
        comp = {start}
        queue = [start]
        while queue:
            fid = queue.pop()
            for nb in adj[fid]:
                if nb in faces and nb not in comp:
                    comp.add(nb)
                    queue.append(nb)
        comps.append(frozenset(comp))
        faces -= comp
    return comps


def all_minimal_contractible(g: PlanarGraph, max_size: int | None = None):
    """Every minimal contractible proper subset with at most max_size
    faces, sorted lexicographically.

    A minimal subset is dual-connected (deficiency adds over components),
    so connected enumeration in increasing size suffices: a connected
    contractible set is minimal iff it contains no smaller one found.
    """
    require_valid(g)
    if max_size is None:
        max_size = SUBSET_SEARCH_MAX
    max_size = min(max_size, g.f - 1)
    if max_size < 1:
        return []
    adj = _dual_adjacency(g)
    subsets = _connected_subsets(adj, range(g.f), max_size)
    subsets.sort(key=lambda s: (len(s), sorted(s)))
    contractible: list[frozenset[int]] = []
    minimal: list[frozenset[int]] = []
    for s in subsets:
        if not is_contractible(g, s):
            continue
        if not any(c < s for c in contractible):
            minimal.append(s)
        contractible.append(s)
    return sorted(minimal, key=sorted)


def find_minimal_contractible(g: PlanarGraph):
    """A minimal contractible proper face subset, or None.

    A stalled augmentation certifies its reachable face set contractible;
    that set is shrunk greedily and then exhaustively when small.  With
    no stall, exhaustive search over small connected subsets decides.
    """
    require_valid(g)
    _phi, _leftover, stalls = edge_injective.greedy_with_stalls(g)
    if stalls:
        _fid, reach = stalls[0]
        if not is_contractible(g, reach):  # defensive; guaranteed by theory
            raise AssertionError("stall set %r not contractible" % sorted(reach))
        found = _minimize(g, reach)
        if len(found) < g.f:
            return found
        # only the whole face set qualified; a proper subset is required
    candidates = all_minimal_contractible(g)
    return candidates[0] if candidates else None


def _minimize(g: PlanarGraph, s: frozenset[int]) -> frozenset[int]:
    adj = _dual_adjacency(g)
    cur = s
    changed = True
    while changed and len(cur) > 1:
        changed = False
        for fid in sorted(cur):
            for comp in _face_components(g, cur - {fid}):
                if is_contractible(g, comp):
                    cur = comp
                    changed = True
                    break
            if changed:
                break
    if len(cur) <= SUBSET_SEARCH_MAX:
        subsets = _connected_subsets(adj, cur, len(cur))
        subsets.sort(key=lambda t: (len(t), sorted(t)))
        for t in subsets:
            if is_contractible(g, t):
                return t
    return cur


# ---------------------------------------------------------------------------
# Contraction


def contract(g: PlanarGraph, s) -> PlanarGraph:
    new_g, _edge_origin, _vertex_map = contract_with_maps(g, s)
    return new_g


def contract_with_maps(g: PlanarGraph, s):
    """Collapse each connected component of G_S to one fresh vertex and
    delete its edges; faces in S disappear, other faces drop those edges.

    Returns (graph, edge origin, vertex map): edge origin sends new edge
    ids to old ones, the vertex map sends every old vertex to its new
    name (merged vertices get fresh names).
    """
    require_valid(g)
    result = is_contractible(g, s)
    if not result:
        raise NotContractible(
            "faces %r have e_S=%d > 3 f_S=%d"
            % (sorted(result.faces), result.e_s, 3 * result.f_s)
        )
    s = result.faces
    gone_edges = face_edge_set(g, s)

    # union-find over the vertices touched by the removed edges
    parent: dict = {}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for eid in gone_edges:
        ed = g.edge_by_id[eid]
        for v in (ed.tail, ed.head):
            parent.setdefault(v, v)
        parent[find(ed.tail)] = find(ed.head)

    taken = set(g.vertices)
    fresh: dict = {}
    counter = 0
    for v in g.vertices:
        if v in parent:
            root = find(v)
            if root not in fresh:
                while "w%d" % counter in taken:
                    counter += 1
                fresh[root] = "w%d" % counter
                taken.add(fresh[root])
    vertex_map = {
        v: (fresh[find(v)] if v in parent else v) for v in g.vertices
    }

    kept_edges = [
        Edge(ed.id, vertex_map[ed.tail], vertex_map[ed.head], ed.label)
        for ed in g.edges
        if ed.id not in gone_edges
    ]
    kept_faces = [
        tuple(entry for entry in g.faces[fid] if entry[0] not in gone_edges)
        for fid in range(g.f)
        if fid not in s
    ]
    new_edges, new_faces, edge_origin = _renumber(kept_edges, kept_faces)
    vertices = tuple(
        [v for v in g.vertices if v not in parent]
        + [fresh[r] for r in sorted(fresh, key=str)]
    )
    new_g = PlanarGraph(vertices, new_edges, new_faces)
    require_valid(new_g)
    return new_g, edge_origin, vertex_map


# ---------------------------------------------------------------------------
# Classification


def classify_minimal_contractible(g: PlanarGraph) -> str:
    """Kind of a graph whose whole face set is minimal contractible:
    loop, two-cycle, three-cycle, or balanced (e_S = 3 f_S).

    Requires two faces to share at most one edge; violations of that or
    of minimality raise HypothesisViolation.
    """
    require_valid(g)
    if g.f == 0:
        raise HypothesisViolation("graph has no bounded faces")
    if g.f > CLASSIFY_FACES_MAX:
        raise SizeGuard("classification refused for f=%d" % g.f)
    _require_share_at_most_one(g)
    whole = is_contractible(g, range(g.f))
    if not whole:
        raise HypothesisViolation(
            "face set is not contractible (e_S=%d, f_S=%d)" % (whole.e_s, whole.f_s)
        )
    if g.f > 1:
        adj = _dual_adjacency(g)
        for sub in _connected_subsets(adj, range(g.f), g.f - 1):
            if is_contractible(g, sub):
                raise HypothesisViolation(
                    "face set is not minimal: %r is contractible" % sorted(sub)
                )
    if g.f == 1:
        n = len(g.faces[0])
        if n == 1:
            return "loop"
        if n == 2:
            return "two-cycle"
        if n == 3:
            return "three-cycle"
        raise HypothesisViolation("single face with %d edges is not contractible" % n)
    if whole.deficiency != 0:
        raise HypothesisViolation(
            "multi-face minimal contractible set with deficiency %d cannot "
            "occur when two faces share at most one edge" % whole.deficiency
        )
    return "balanced"


def _require_share_at_most_one(g: PlanarGraph) -> None:
    shared: dict[tuple[int, int], list[int]] = {}
    for eid, fids in g.faces_of_edge.items():
        if len(fids) == 2:
            shared.setdefault(tuple(sorted(fids)), []).append(eid)
    for (a, b), eids in sorted(shared.items()):
        if len(eids) > 1:
            raise HypothesisViolation(
                "faces %d and %d share edges %r" % (a, b, sorted(eids))
            )


# ---------------------------------------------------------------------------
# The staged dimension algorithm


@dataclass(frozen=True)
class ContractStage:
    index: int
    subset: tuple[int, ...]  # face ids in the graph this stage was found in
    subgraph: PlanarGraph
    deficiency: int
    kind: str
    edge_origin: tuple[int, ...]  # subgraph edge id -> original edge id
    rank_contribution: int  # e_S
    polynomials: tuple[MultiPoly, ...]  # in the original graph's edge variables


@dataclass(frozen=True)
class ContractionTrace:
    original: PlanarGraph
    stages: tuple[ContractStage, ...]
    residual: PlanarGraph
    residual_kind: str  # "no-contractible-subset" or "single-face"
    residual_edge_origin: tuple[int, ...]
    residual_rank: int
    residual_clamped: bool
    residual_polynomials: tuple[MultiPoly, ...] | None = None

    @property
    def total_rank(self) -> int:
        return sum(st.rank_contribution for st in self.stages) + self.residual_rank

    @property
    def dimension(self) -> int:
        return self.original.e - self.total_rank


def _active_edge_ids(g: PlanarGraph) -> list[int]:
    return sorted(eid for eid, fids in g.faces_of_edge.items() if fids)


def _stage_polynomials(sub: PlanarGraph, deficiency: int) -> tuple[MultiPoly, ...]:
    """Vanishing conditions in the stage subgraph's own edge variables."""
    nvars = sub.e
    if deficiency == -2:
        if sub.e != 1:
            raise HypothesisViolation("deficiency -2 stage that is not a loop")
        return (MultiPoly.variable(nvars, 0),)
    if deficiency == -1:
        if sub.e != 2:
            raise HypothesisViolation("deficiency -1 stage that is not a 2-cycle")
        return (MultiPoly.variable(nvars, 0) - MultiPoly.variable(nvars, 1),)
    if deficiency == 0:
        return (edge_injective.det_expansion(sub, range(sub.e)),)
    raise HypothesisViolation("stage deficiency %d outside {0,-1,-2}" % deficiency)


def _residual_polynomials(residual: PlanarGraph) -> tuple[MultiPoly, ...]:
    """One determinant per square choice; the locus is the intersection
    of their zero sets."""
    active = _active_edge_ids(residual)
    d = 3 * residual.f
    if len(active) >= d:
        n_minors = _ncomb(len(active), d)
        if n_minors > RESIDUAL_MINORS_MAX:
            raise SizeGuard(
                "residual needs %d column minors (cap %d)" % (n_minors, RESIDUAL_MINORS_MAX)
            )
        return tuple(
            edge_injective.det_expansion(residual, cols)
            for cols in itertools.combinations(active, d)
        )
    # fewer active columns than rows: square up by choosing row subsets
    k = len(active)
    n_minors = _ncomb(d, k)
    if n_minors > RESIDUAL_MINORS_MAX:
        raise SizeGuard(
            "residual needs %d row minors (cap %d)" % (n_minors, RESIDUAL_MINORS_MAX)
        )
    sym = build_Mext_symbolic(residual)
    cols = [sym.col_edge.index(eid) for eid in active]
    out = []
    for rows in itertools.combinations(range(d), k):
        square = [[sym.symbolic[r][c] for c in cols] for r in rows]
        out.append(det_poly(square))
    return tuple(out)


def _ncomb(n: int, k: int) -> int:
    import math

    return math.comb(n, k) if 0 <= k <= n else 0


def _translate(polys, origin, nvars_orig):
    return tuple(p.substitute_variables(origin, nvars_orig) for p in polys)


def _stage_label_map(labels, origin):
    return {local: labels[orig] for local, orig in enumerate(origin) if orig in labels}


def dimension_by_contraction(
    g: PlanarGraph,
    labels=None,
    *,
    from_triangulation: bool = False,
    with_residual_polynomials: bool = False,
):
    """Spline dimension by repeated contraction of minimal subsets.

    Stages pick the lexicographically least minimal contractible subset;
    any two minimal subsets sharing an edge abort with
    SharedEdgeViolation (skipped for duals of triangulations, where the
    hypothesis always holds).  With labels supplied, each stage and the
    residual are checked by exact rank and failures raise
    SpecialPosition naming the stage.  Returns (dimension, trace).
    """
    require_valid(g)
    _require_share_at_most_one(g)
    if labels is not None:
        labels = {int(eid): rational(a) for eid, a in labels.items()}

    nvars = g.e
    current = g
    origin = tuple(range(g.e))  # current edge id -> original edge id
    stages: list[ContractStage] = []
    while True:
        candidates = all_minimal_contractible(current)
        if not candidates:
            fallback = find_minimal_contractible(current)
            candidates = [fallback] if fallback is not None else []
        if not candidates:
            break
        if not from_triangulation:
            for s1, s2 in itertools.combinations(candidates, 2):
                common = face_edge_set(current, s1) & face_edge_set(current, s2)
                if common:
                    raise SharedEdgeViolation(
                        "minimal contractible subsets %r and %r share edges %r"
                        % (sorted(s1), sorted(s2), sorted(origin[e] for e in common))
                    )
        subset = candidates[0]
        sub, sub_origin = subgraph_with_origin(current, subset)
        sub_to_orig = tuple(origin[c] for c in sub_origin)
        report = validate(sub)
        if not report:
            raise HypothesisViolation(
                "stage subgraph on faces %r is not simply connected: %s"
                % (sorted(subset), "; ".join(report.problems))
            )
        deficiency = sub.e - 3 * sub.f
        kind = classify_minimal_contractible(sub)
        polys = _translate(_stage_polynomials(sub, deficiency), sub_to_orig, nvars)
        if labels is not None:
            got = rank(build_Mext(sub, _stage_label_map(labels, sub_to_orig)).matrix)
            if got != sub.e:
                raise SpecialPosition(
                    "stage %d rank %d < %d" % (len(stages), got, sub.e),
                    stage=len(stages),
                )
        stages.append(
            ContractStage(
                index=len(stages),
                subset=tuple(sorted(subset)),
                subgraph=sub,
                deficiency=deficiency,
                kind=kind,
                edge_origin=sub_to_orig,
                rank_contribution=sub.e,
                polynomials=polys,
            )
        )
        current, step_origin, _vmap = contract_with_maps(current, subset)
        origin = tuple(origin[c] for c in step_origin)

    residual = current
    single_face = residual.f == 1 and bool(is_contractible(residual, {0}))
    residual_kind = "single-face" if single_face else "no-contractible-subset"
    active = _active_edge_ids(residual)
    residual_rank = min(len(active), 3 * residual.f)
    residual_clamped = (residual.e - 3 * residual.f) != (residual.e - residual_rank)
    if labels is not None:
        got = rank(build_Mext(residual, _stage_label_map(labels, origin)).matrix)
        if got != residual_rank:
            raise SpecialPosition(
                "residual rank %d < %d" % (got, residual_rank), stage="residual"
            )
    residual_polys = None
    if with_residual_polynomials:
        residual_polys = _translate(_residual_polynomials(residual), origin, nvars)

    trace = ContractionTrace(
        original=g,
        stages=tuple(stages),
        residual=residual,
        residual_kind=residual_kind,
        residual_edge_origin=origin,
        residual_rank=residual_rank,
        residual_clamped=residual_clamped,
        residual_polynomials=residual_polys,
    )
    return trace.dimension, trace


# ---------------------------------------------------------------------------
# The special-position locus


@dataclass(frozen=True)
class LocusStage:
    index: int  # stage number; residual gets the last index
    kind: str  # loop | two-cycle | three-cycle | balanced | residual
    deficiency: int | None  # None for the residual
    edge_ids: tuple[int, ...]  # original edge ids involved
    polynomials: tuple[MultiPoly, ...]
    semantics: str  # "any" (one polynomial vanishing suffices) or "all"


@dataclass(frozen=True)
class SpecialLocus:
    nvars: int
    stages: tuple[LocusStage, ...]

    def vanishes(self, labels) -> bool:
        """True when the labels lie on the locus: some stage condition
        holds (for the residual, every minor must vanish)."""
        assignment = {int(eid): rational(a) for eid, a in labels.items()}
        for st in self.stages:
            values = [p.evaluate(assignment) for p in st.polynomials]
            if st.semantics == "all":
                if values and all(v == 0 for v in values):
                    return True
            elif any(v == 0 for v in values):
                return True
        return False


def special_locus(
    g: PlanarGraph, *, from_triangulation: bool = False
) -> SpecialLocus:
    """Polynomials cutting out the labels in special position, grouped
    by contraction stage, in the original edge variables."""
    _dim, trace = dimension_by_contraction(
        g, from_triangulation=from_triangulation, with_residual_polynomials=True
    )
    out = [
        LocusStage(
            index=st.index,
            kind=st.kind,
            deficiency=st.deficiency,
            edge_ids=st.edge_origin,
            polynomials=st.polynomials,
            semantics="any",
        )
        for st in trace.stages
    ]
    out.append(
        LocusStage(
            index=len(trace.stages),
            kind="residual",
            deficiency=None,
            edge_ids=trace.residual_edge_origin,
            polynomials=trace.residual_polynomials,
            semantics="all",
        )
    )
    return SpecialLocus(g.e, tuple(out))
