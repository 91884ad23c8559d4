"""The cycle basis matrix M, its degree-2 extension, and spline spaces.

M has one row per bounded face and one column per edge; the entry is the
face-walk sign (+1 clockwise) or 0.  The extended matrix replaces each
face row by three rows scaled by 1, a_e, a_e^2 where a_e is the edge's
label slope.  Spline dimension, genericity of the label variables, and
explicit spline vectors from the kernel all live here.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import edge_injective
from .errors import (
    Disconnected,
    InvalidGraph,
    MissingLabel,
    NonHomogeneousLabel,
    NotGeneric,
    SizeGuard,
)
from .exact_algebra import (
    MultiPoly,
    Quadratic,
    divides,
    expand_label,
    kernel_basis,
    rank,
    rational,
)
from .graph_model import EdgeLabel, PlanarGraph, connected_components, require_valid


@dataclass(frozen=True)
class CycleBasisMatrix:
    matrix: tuple[tuple[Fraction, ...], ...]
    row_face: tuple[int, ...]
    col_edge: tuple[int, ...]


@dataclass(frozen=True)
class ExtendedMatrix:
    matrix: tuple[tuple[Fraction, ...], ...] | None
    row_face: tuple[int, ...]
    col_edge: tuple[int, ...]
    symbolic: tuple[tuple[MultiPoly, ...], ...] | None = None


def build_M(g: PlanarGraph) -> CycleBasisMatrix:
    require_valid(g)
    rows = []
    for fid in range(g.f):
        row = [Fraction(0)] * g.e
        for eid, sign in g.faces[fid]:
            row[eid] = Fraction(sign)
        rows.append(tuple(row))
    return CycleBasisMatrix(tuple(rows), tuple(range(g.f)), tuple(range(g.e)))


def _face_labels(g: PlanarGraph, labels) -> dict[int, EdgeLabel]:
    """Labels for every face edge; b must be absent (or zero)."""
    if labels is None:
        labels = g.labels
    out = {}
    for fid in range(g.f):
        for eid, _sign in g.faces[fid]:
            if eid in out:
                continue
            lab = labels.get(eid)
            if lab is None:
                raise MissingLabel("edge %d lies on face %d but has no label" % (eid, fid))
            if not isinstance(lab, EdgeLabel):
                if hasattr(lab, "a"):
                    lab = EdgeLabel.of(lab.a, getattr(lab, "b", None))
                else:
                    lab = EdgeLabel.of(lab)  # bare monic slope
            if not lab.homogeneous:
                raise NonHomogeneousLabel(
                    "edge %d carries constant %s; homogenize first" % (eid, lab.b)
                )
            out[eid] = lab
    return out


def build_Mext(g: PlanarGraph, labels=None) -> ExtendedMatrix:
    """Numeric extended matrix (3f x e) at the given monic homogeneous labels.

    Edges off every bounded face may stay unlabeled; their columns are zero.
    """
    require_valid(g)
    lab = _face_labels(g, labels)
    rows = []
    row_face = []
    for fid in range(g.f):
        base = [Fraction(0)] * g.e
        for eid, sign in g.faces[fid]:
            base[eid] = Fraction(sign)
        for power in range(3):
            rows.append(tuple(
                base[eid] * (lab[eid].a ** power) if base[eid] else Fraction(0)
                for eid in range(g.e)
            ))
            row_face.append(fid)
    return ExtendedMatrix(tuple(rows), tuple(row_face), tuple(range(g.e)))


def build_Mext_symbolic(g: PlanarGraph) -> ExtendedMatrix:
    """Extended matrix with entries sign * a_e^power as polynomials."""
    require_valid(g)
    n = g.e
    zero = MultiPoly.zero(n)
    rows = []
    row_face = []
    for fid in range(g.f):
        for power in range(3):
            row = [zero] * n
            for eid, sign in g.faces[fid]:
                row[eid] = MultiPoly(n, {tuple(power if i == eid else 0 for i in range(n)): sign})
            rows.append(tuple(row))
            row_face.append(fid)
    return ExtendedMatrix(None, tuple(row_face), tuple(range(n)), symbolic=tuple(rows))


def spline_dimension(g: PlanarGraph, labels=None, v0=None) -> int:
    """dim of degree-2 smoothness-1 splines vanishing at v0 = e - rank(Mext).

    The value does not depend on v0; the basepoint is validated only.
    """
    if v0 is not None and v0 not in set(g.vertices):
        raise ValueError("basepoint %r is not a vertex" % (v0,))
    ext = build_Mext(g, labels)
    return g.e - rank(ext.matrix)


def expected_generic_rank(g: PlanarGraph) -> int:
    return min(g.e, 3 * g.f)


@dataclass(frozen=True)
class GenericReport:
    generic: bool
    d: int
    certified: bool
    method: str
    witness_columns: tuple[int, ...] | None = None
    witness_rows: tuple[int, ...] | None = None
    witness_poly: MultiPoly | None = None
    notes: tuple[str, ...] = ()


def _active_edges(g: PlanarGraph) -> list[int]:
    return sorted(eid for eid, fids in g.faces_of_edge.items() if fids)


def generic_check(g: PlanarGraph, symbolic: bool = True, seed: int = 0, trials: int = 3) -> GenericReport:
    """Decide whether some d x d submatrix of the symbolic extended matrix
    has determinant not identically zero, d = min(e, 3f).

    Symbolic mode is exact both ways.  Numeric mode certifies only the
    positive answer (a rational point of rank d witnesses a nonzero minor);
    a negative numeric answer is marked uncertified.
    """
    require_valid(g)
    d = expected_generic_rank(g)
    if d == 0:
        return GenericReport(True, 0, True, "trivial", notes=("no faces or no edges",))

    if not symbolic:
        rng = random.Random(seed)
        for _ in range(max(1, trials)):
            labels = {ed.id: EdgeLabel.of(Fraction(rng.randint(1, 10 ** 6))) for ed in g.edges}
            ext = build_Mext(g, labels)
            if rank(ext.matrix) == d:
                return GenericReport(
                    True, d, True, "numeric-sample",
                    notes=("rank d at a sampled point certifies a nonzero minor",),
                )
        return GenericReport(
            False, d, False, "numeric-sample",
            notes=("rank < d at %d sampled points; not a proof" % max(1, trials),),
        )

    if g.e >= 3 * g.f:
        phi, _left = edge_injective.greedy_maximal(g)
        image = sorted(phi.image())
        if len(image) < d:
            return GenericReport(
                False, d, True, "greedy-image",
                notes=("maximal edge-injective image has size %d < d" % len(image),),
            )
        poly = edge_injective.det_expansion(g, image)
        if not poly.is_zero():
            return GenericReport(True, d, True, "expansion", witness_columns=tuple(image), witness_poly=poly)
        if g.e > 12:
            raise SizeGuard(
                "first candidate minor vanished; exhaustive column search refused for e=%d" % g.e
            )
        for cols in itertools.combinations(range(g.e), d):
            if cols == tuple(image):
                continue
            poly = edge_injective.det_expansion(g, cols)
            if not poly.is_zero():
                return GenericReport(True, d, True, "expansion", witness_columns=cols, witness_poly=poly)
        return GenericReport(False, d, True, "expansion", notes=("every d-column minor is identically zero",))

    # e < 3f: the square minors pick d of the 3f rows instead.
    from .exact_algebra import det_poly

    sym = build_Mext_symbolic(g).symbolic
    nrows = len(sym)
    if d > 12 or _ncomb(nrows, d) > 4000:
        raise SizeGuard("row-subset search refused: C(%d,%d) minors of size %d" % (nrows, d, d))
    last = None
    for rows in itertools.combinations(range(nrows), d):
        sub = [[sym[r][c] for c in range(g.e)] for r in rows]
        poly = det_poly(sub)
        last = poly
        if not poly.is_zero():
            return GenericReport(True, d, True, "row-minors", witness_rows=rows, witness_poly=poly)
    return GenericReport(
        False, d, True, "row-minors",
        notes=("all %d row-subset minors vanish identically" % _ncomb(nrows, d),),
        witness_poly=last,
    )


def _ncomb(n: int, k: int) -> int:
    import math

    return math.comb(n, k)


def special_position_test(g: PlanarGraph, labels=None) -> bool:
    """True iff rank(Mext at labels) < min(e, 3f).  Requires a generic graph."""
    report = generic_check(g, symbolic=True)
    if not report.generic:
        raise NotGeneric("no square minor of the extended matrix is nonzero")
    ext = build_Mext(g, labels)
    return rank(ext.matrix) < report.d


@dataclass(frozen=True)
class SplineVector:
    """Vertex polynomials of one spline, normalized to vanish at the basepoint."""

    vertex_values: dict
    basepoint: object
    edge_coefficients: tuple[Fraction, ...] = ()


def splines_from_kernel(g: PlanarGraph, labels=None, v0=None) -> list[SplineVector]:
    """One SplineVector per kernel basis vector of the extended matrix.

    Kernel coordinates are the per-edge scalar multipliers c_e with
    p(head) - p(tail) = c_e * (expanded label of e); vertex polynomials are
    integrated over a spanning tree from v0 and checked on every edge.
    Every edge needs a label here, including edges off all faces.
    """
    require_valid(g)
    if v0 is None:
        if not g.vertices:
            raise InvalidGraph("empty graph")
        v0 = g.vertices[0]
    if v0 not in set(g.vertices):
        raise ValueError("basepoint %r is not a vertex" % (v0,))
    comps = connected_components(g)
    if len(comps) != 1:
        raise Disconnected("graph has %d components" % len(comps))

    if labels is None:
        labels = g.labels
    expanded = {}
    for ed in g.edges:
        lab = labels.get(ed.id)
        if lab is None:
            raise MissingLabel("edge %d has no label" % ed.id)
        expanded[ed.id] = expand_label(lab)

    ext = build_Mext(g, labels)
    basis = kernel_basis(ext.matrix)

    adj: dict = {v: [] for v in g.vertices}
    for ed in g.edges:
        adj[ed.tail].append((ed.head, ed.id, 1))
        adj[ed.head].append((ed.tail, ed.id, -1))

    out = []
    for coeffs in basis:
        values = {v0: Quadratic()}
        queue = [v0]
        while queue:
            u = queue.pop(0)
            for w, eid, direction in adj[u]:
                if w in values:
                    continue
                step = expanded[eid].scale(coeffs[eid] * direction)
                values[w] = values[u] + step
                queue.append(w)
        for ed in g.edges:
            want = expanded[ed.id].scale(coeffs[ed.id])
            got = values[ed.head] - values[ed.tail]
            if got != want:
                raise InvalidGraph(
                    "face cycles do not span the cycle space (edge %d breaks integration)" % ed.id
                )
        out.append(SplineVector(values, v0, tuple(coeffs)))
    return out


def verify_vertex_labeling(g: PlanarGraph, edge_labels, vertex_polys) -> bool:
    """Does each edge's label divide the difference of its endpoint polynomials?

    Labels and vertex polynomials may be Quadratic or bivariate MultiPoly.
    """
    polys = {}
    for v in g.vertices:
        if v not in vertex_polys:
            raise InvalidGraph("no polynomial for vertex %r" % (v,))
        p = vertex_polys[v]
        polys[v] = p.to_poly() if isinstance(p, Quadratic) else p
    for ed in g.edges:
        if ed.id not in edge_labels:
            raise MissingLabel("edge %d has no label" % ed.id)
        lab = edge_labels[ed.id]
        lab = lab.to_poly() if isinstance(lab, Quadratic) else lab
        diff = polys[ed.head] - polys[ed.tail]
        if diff.is_zero():
            continue
        ok, _cof = divides(lab, diff)
        if not ok:
            return False
    return True
