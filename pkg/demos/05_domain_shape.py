# Domain-shape metrics, the Titeica surface and F^Delta as a limit.
#
# A convex body plus a lift to 3-space gives an asymmetric metric.  With the
# flat lift it is the Funk metric, whose symmetrization is the Hilbert
# metric.  With the Titeica lift of a triangle it is, at the centre, exactly
# F^Delta, and balls of the developing map over larger discs fill out the
# F^Delta unit ball.

import cmath
import math

from triangle_finsler import (
    FLAT_LIFT,
    TITEICA_LIFT,
    TWICE_EUCLIDEAN,
    Polygon,
    dds_eval,
    delta_ball,
    finsler_delta_eval,
    fds_eval,
    hilbert_distance,
    polar_dual,
    truncated_ball,
)
from triangle_finsler.domain_shape import titeica_triangle

hexagon = Polygon([[math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)] for k in range(6)])
x, y = (0.1, 0.2), (-0.4, 0.1)
a, b = dds_eval(hexagon, FLAT_LIFT, x, y), dds_eval(hexagon, FLAT_LIFT, y, x)
print(f"Funk d(x,y) = {a:.6f}, d(y,x) = {b:.6f}, sum = {a + b:.6f}, Hilbert = {hilbert_distance(hexagon, x, y):.6f}")

tri = titeica_triangle()
for v in (1, 1j, cmath.exp(1j * math.pi / 7)):
    w = v.conjugate()  # chart direction of the tangent vector v
    print(f"v = {v:.3f}: F^DS at centre {fds_eval(tri, TITEICA_LIFT, (0, 0), (w.real, w.imag)):.12f}"
          f"  F^Delta {finsler_delta_eval(1, v):.12f}")

for d in (1, 2, 4, 8):
    ball = truncated_ball(d)
    print(f"d = {d}: gauge of 1 = {ball.gauge([1, 0]):.12f}")

dual = polar_dual(delta_ball(1), TWICE_EUCLIDEAN)
print("dual of the dz^3 triangle:", dual.vertices.round(12).tolist())
print("the -dz^3 triangle:      ", delta_ball(-1).vertices.round(12).tolist())
