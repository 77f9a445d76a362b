import numpy as np
from scipy.spatial import ConvexHull

from triangle_finsler.domain_shape import Polygon


def random_polygon(rng, n=None):
    """Convex polygon around the origin with 3..12 vertices."""
    n = n or int(rng.integers(3, 13))
    while True:
        angles = np.sort(rng.uniform(0, 2 * np.pi, n))
        gaps = np.diff(np.concatenate([angles, [angles[0] + 2 * np.pi]]))
        if gaps.max() < np.pi * 0.9:
            break
    radii = rng.uniform(0.6, 1.4, n)
    pts = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])
    return Polygon(pts[ConvexHull(pts).vertices])


def interior_point(rng, poly, margin=0.05):
    w = rng.dirichlet(np.ones(len(poly.vertices)))
    p = w @ poly.vertices
    return (1 - margin) * p + margin * poly.base
