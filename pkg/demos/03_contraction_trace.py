"""
Dimension by contraction, and the special-position locus
========================================================

The lens-on-a-triangle graph has an identically zero nine-edge
determinant, so no label choice makes the extended matrix square and
invertible.  Contraction still pins the dimension exactly: peel off
minimal contractible subgraphs, add up their ranks, and keep a trace
of every step.
"""

from fractions import Fraction
from pathlib import Path

from splinedim import (
    dimension_by_contraction,
    load_graph,
    spline_dimension,
    special_locus,
)
from splinedim.edge_injective import det_expansion
from splinedim.errors import SpecialPosition

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

g = load_graph(str(FIXTURES / "nongeneric_lens.json"))
print("determinant is identically zero:", det_expansion(g, range(9)).is_zero())

labels = {i: Fraction(i + 1) for i in range(9)}
dim, trace = dimension_by_contraction(g, labels)
print("dimension:", dim, " (matrix method agrees:", spline_dimension(g, labels), ")")

print("\ncontraction trace:")
for st in trace.stages:
    print("  stage %d: %s on original edges %s, rank %d" % (
        st.index, st.kind, st.edge_origin, st.rank_contribution))
print("  residual: %s on edges %s, rank %d" % (
    trace.residual_kind, trace.residual_edge_origin, trace.residual_rank))
print("  total rank %d out of %d edges" % (trace.total_rank, g.e))

# each stage contributes polynomials in the labels; a label choice is
# in special position exactly when some stage condition vanishes
locus = special_locus(g)
print("\nspecial-position locus:")
for st in locus.stages:
    polys = ", ".join(p.display() for p in st.polynomials)
    print("  %s (%s): %s" % (st.kind, st.semantics, polys))

# collide the two lens labels and the contraction refuses, naming the stage
bad = dict(labels)
bad[1] = bad[0]
try:
    dimension_by_contraction(g, bad)
except SpecialPosition as exc:
    print("\ncolliding labels 0 and 1 fails at stage:", exc.stage)
print("locus sees the collision:", locus.vanishes(bad))
