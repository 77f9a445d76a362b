# Jordan projections of all short conjugacy classes.
#
# Each class gives a point (log lambda_1, -log lambda_3).  At t = 1 the
# representation is Fuchsian and the points lie on the diagonal; as t grows
# they spread out inside the cone between slopes 1/2 and 2 and, divided by
# log t, drift towards integer points.

import io
import math

import numpy as np

from triangle_finsler import Presentation, jordan_scan, lattice_distances

pres = Presentation(4, 4, 4)

fuchsian = jordan_scan(pres, 10, t2=1.0)
print(f"t^2 = 1: {len(fuchsian)} classes, max |x - y| = {max(abs(p.x - p.y) for p in fuchsian):.2e}")

for t2 in (1e6, 1e12, 1e24):
    pts = jordan_scan(pres, 12, t2=t2)
    d = lattice_distances(pts, math.sqrt(t2))
    inside = all(p.in_cone() for p in pts)
    print(f"t^2 = {t2:.0e}: in cone {inside}, lattice distance mean {d.mean():.3f} p90 {np.percentile(d, 90):.3f}")

buf = io.StringIO()
jordan_scan(pres, 6, t2=1e12, sink=buf)
print(buf.getvalue())
