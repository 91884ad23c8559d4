"""
Edge-injective assignments, orientations, colorings
===================================================

A function picking, for each bounded face, a set of its edges, no edge
twice, induces an orientation of the dual: point every chosen edge at
its face.  Counting these functions, and 3-coloring the orientations
they induce, drives the determinant expansion.
"""

from pathlib import Path

from splinedim import load_graph
from splinedim.edge_injective import (
    Arc,
    DualOrientation,
    count_directed_cycles,
    enumerate_all,
    find_coloring,
    greedy_with_stalls,
    orientation_from,
)
from splinedim.errors import NotFound

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

g = load_graph(str(FIXTURES / "five_faces.json"))

# all ways to hand every edge to a bounding face, three per face
phis = enumerate_all(g)
print("complete assignments:", len(phis))

# each one orients the dual; the count always exceeds the number of
# directed cycles by exactly one
for phi in sorted(phis, key=lambda p: p.entries):
    orientation = orientation_from(g, phi)
    print("  cycles:", count_directed_cycles(orientation))

# the greedy strategy can wedge itself even when assignments exist
phi, leftover, stalls = greedy_with_stalls(load_graph(str(FIXTURES / "nongeneric_lens.json")))
print("\ngreedy on the lens graph leaves %d edge(s) unplaced after %d stall(s)"
      % (len(leftover), stalls))

# orientations from assignments always admit a 3-coloring with
# distinct colors into each face and no one-color directed cycle
colored = find_coloring(orientation_from(g, next(iter(phis))))
print("\na coloring:", colored.color_of_edge())

# but not every in-degree-3 orientation does; this one has no coloring
arcs = (
    Arc(0, 3, 0), Arc(0, 3, 1), Arc(0, 4, 2), Arc(0, 4, 3), Arc(0, 1, 4),
    Arc(0, 1, 5), Arc(2, 1, 6), Arc(2, 2, 7), Arc(2, 2, 8), Arc(1, 0, 9),
    Arc(0, 2, 10), Arc(3, 0, 11), Arc(2, 3, 12), Arc(2, 4, 13), Arc(4, 0, 14),
)
try:
    find_coloring(DualOrientation(5, arcs))
except NotFound:
    print("hand-built orientation with doubled arcs: no coloring exists")
