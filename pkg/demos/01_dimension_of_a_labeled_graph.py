"""
Computing a spline space dimension
==================================

Two unit squares glued along a shared edge, each edge carrying a line
label.  A spline assigns one quadratic per vertex so that polynomials
on the two ends of an edge differ by a multiple of the squared label.
"""

from pathlib import Path

from splinedim import build_Mext, rank, spline_dimension, splines_from_kernel, validate

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

from splinedim import load_graph

g = load_graph(str(FIXTURES / "two_squares.json"))
print("vertices:", len(g.vertices), " edges:", g.e, " bounded faces:", g.f)

report = validate(g)
print("valid:", report.ok)

# the extended matrix has three rows per face (constant, linear,
# quadratic moments of the cycle) and one column per edge
M = build_Mext(g).matrix
print("matrix shape: %d x %d" % (len(M), len(M[0])))
print("rank:", rank(M))

# dimension = number of edges minus the rank
print("dimension:", spline_dimension(g))

# an explicit basis, anchored so the polynomial at the first vertex is 0
for i, s in enumerate(splines_from_kernel(g)):
    print("spline %d:" % i)
    for v in g.vertices:
        print("   %-4s %s" % (v, s.vertex_values[v].display()))
