"""
From a triangulation to a labeled dual graph
============================================

Classical bivariate splines live on a triangulation.  Dualizing turns
each triangle into a vertex, each interior edge into a dual edge, and
the affine line through the edge into its label.  Smoothness
conditions then concentrate at the interior vertices, one bounded
face per interior vertex.
"""

from pathlib import Path

from splinedim import (
    dimension_by_contraction,
    dualize,
    face_translatable_check,
    homogenize_labels,
    load_triangulation,
    spline_dimension,
)
from splinedim.errors import SpecialPosition

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

t = load_triangulation(str(FIXTURES / "subdivided_triangle.json"))
print("points:", len(t.points), " triangles:", len(t.triangles))

g, labels = dualize(t)
print("dual graph: %d vertices, %d edges, %d faces" % (len(g.vertices), g.e, g.f))
for eid in sorted(labels):
    lab = labels[eid]
    print("  edge %d label: x + (%s) y + (%s)" % (eid, lab.a, lab.b))

# every face of this dual admits a translation taking its edge lines
# through a single point, witnessed by the interior vertex itself
report = face_translatable_check(g, labels)
for fw in report.faces:
    print("face %d translatable: %s, witness %s" % (fw.fid, fw.translatable, fw.witness))

# homogenizing drops the constant terms, keeping only the slopes;
# the matrix only ever sees slopes, so this is the step that makes the
# labels usable
stripped, _orig = homogenize_labels(labels)
print("homogenized slopes:", {e: str(lab.a) for e, lab in sorted(stripped.items())})
print("dimension:", spline_dimension(g, stripped))

# geometric labels straight off a triangulation are usually in special
# position (equal slopes share faces), so the generic contraction
# count refuses them by design rather than reporting a wrong rank
try:
    dimension_by_contraction(g, {e: lab.a for e, lab in labels.items()})
except SpecialPosition as exc:
    print("contraction rejects these labels (stage %s)" % exc.stage)
