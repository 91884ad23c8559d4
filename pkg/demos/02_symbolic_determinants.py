"""
Symbolic determinants of the extended matrix
============================================

When the labels are left as variables a0, a1, ... the determinant of
the extended matrix factors in ways that explain exactly which label
choices are degenerate.
"""

from pathlib import Path

from splinedim import (
    Edge,
    MultiPoly,
    PlanarGraph,
    build_Mext_symbolic,
    det_poly,
    divides,
    load_graph,
)
from splinedim.edge_injective import det_expansion

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def v(n, i):
    return MultiPoly.variable(n, i)


# --- a single triangle -----------------------------------------------------
# one face, three edges: the determinant is the 3x3 Vandermonde

triangle = PlanarGraph(
    ("u", "v", "w"),
    (Edge(0, "u", "v"), Edge(1, "v", "w"), Edge(2, "w", "u")),
    (((0, 1), (1, 1), (2, 1)),),
)

det = det_expansion(triangle, range(3))
print("triangle det:", det)

vandermonde = (v(3, 0) - v(3, 1)) * (v(3, 1) - v(3, 2)) * (v(3, 2) - v(3, 0))
print("equals the Vandermonde up to sign:",
      (det - vandermonde).is_zero() or (det + vandermonde).is_zero())

# --- two independent triangles sharing no labels ---------------------------
# here the determinant splits into a product of two Vandermondes

split = load_graph(str(FIXTURES / "splittable.json"))
det = det_expansion(split, range(6))
left = (v(6, 0) - v(6, 1)) * (v(6, 1) - v(6, 2)) * (v(6, 2) - v(6, 0))
right = (v(6, 3) - v(6, 4)) * (v(6, 4) - v(6, 5)) * (v(6, 5) - v(6, 3))
product = left * right
print("\nsplittable det has", len(det.sorted_terms()), "terms")
print("equals a product of two Vandermondes:",
      (det - product).is_zero() or (det + product).is_zero())

# --- the triple-subdivided triangle -----------------------------------------
# nine edges; the determinant carries three forced linear factors,
# one per doubled boundary pair

ms = load_graph(str(FIXTURES / "morgan_scott.json"))
det = det_expansion(ms, range(9))
print("\nnine-edge det has", len(det.sorted_terms()), "terms")
for i, j in ((0, 1), (4, 5), (7, 8)):
    ok, _cofactor = divides(v(9, i) - v(9, j), det)
    print("divisible by a%d - a%d: %s" % (i, j, ok))

# the edge-by-edge expansion agrees with plain cofactor expansion
cofactor = det_poly(build_Mext_symbolic(ms).symbolic)
print("matches cofactor expansion:", det.equals(cofactor))
