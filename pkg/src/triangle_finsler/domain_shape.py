"""Domain-shape (generalised Funk) metrics on planar convex bodies.

A chart point u of the plane is lifted to 3-space as (u h(u), h(u)).  A
supporting line of the body at a boundary point p with outward normal n
gives the functional

    beta(X, h) = -n . X + (n . p) h,

which vanishes on the cone over the supporting line and is positive over
the interior.  With these,

    F(x, v) = beta(v~) / beta(x~),       d(x, y) = log beta(y~) / beta(x~),

where beta supports the body at the exit point of the ray x - s v (for F)
or of the ray from y through x (for d).
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq
from scipy.spatial import ConvexHull

_CUBE_ROOTS = np.exp(2j * np.pi * np.arange(3) / 3)


def _vec(x) -> np.ndarray:
    if isinstance(x, complex):
        return np.array([x.real, x.imag])
    return np.asarray(x, dtype=float).reshape(2)


class ConvexBody:
    base: np.ndarray

    def contains(self, u, strict: bool = True) -> bool:
        raise NotImplementedError

    def boundary_hit(self, x, direction) -> np.ndarray:
        raise NotImplementedError

    def outward_normals(self, p, tol: float = 1e-9) -> list[np.ndarray]:
        """Outward normals of supporting lines at boundary point p (unnormalised)."""
        raise NotImplementedError


class Polygon(ConvexBody):
    """Convex polygon with counterclockwise vertices."""

    def __init__(self, vertices, base=None):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise ValueError("polygon needs at least three planar vertices")
        area2 = np.sum(v[:, 0] * np.roll(v[:, 1], -1) - np.roll(v[:, 0], -1) * v[:, 1])
        if area2 < 0:
            v = v[::-1]
        edges = np.roll(v, -1, axis=0) - v
        cross = edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0]
        if np.any(cross <= 0):
            raise ValueError("polygon vertices are not strictly convex")
        self.vertices = v
        # outward normal of edge i (from v[i] to v[i+1]) and offset: n.u <= c inside
        self.normals = np.column_stack([edges[:, 1], -edges[:, 0]])
        self.offsets = np.einsum("ij,ij->i", self.normals, v)
        self.base = v.mean(axis=0) if base is None else _vec(base)
        if not self.contains(self.base):
            raise ValueError("base point must be strictly interior")

    @classmethod
    def from_json(cls, data: dict | str) -> Polygon:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["vertices"], data.get("base"))

    def to_json(self) -> dict:
        return {"vertices": self.vertices.tolist(), "base": self.base.tolist()}

    def contains(self, u, strict: bool = True) -> bool:
        slack = self.normals @ _vec(u) - self.offsets
        return bool(np.all(slack < 0) if strict else np.all(slack <= 1e-12))

    def boundary_hit(self, x, direction) -> np.ndarray:
        x, d = _vec(x), _vec(direction)
        if not np.any(d):
            raise ValueError("direction must be nonzero")
        rate = self.normals @ d
        gap = self.offsets - self.normals @ x
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.where(rate > 0, gap / rate, np.inf)
        return x + float(np.min(s)) * d

    def outward_normals(self, p, tol: float = 1e-9) -> list[np.ndarray]:
        p = _vec(p)
        scale = np.linalg.norm(self.normals, axis=1)
        dist = (self.normals @ p - self.offsets) / scale
        if np.any(dist > tol) or np.min(np.abs(dist)) > tol:
            raise ValueError(f"{p} is not on the boundary")
        on = [i for i in range(len(dist)) if abs(dist[i]) <= tol]
        # incoming edge first at a vertex
        n = len(self.vertices)
        if len(on) == 2 and (on[0] + 1) % n != on[1]:
            on = on[::-1]
        return [self.normals[i] / scale[i] for i in on]


class SmoothBody(ConvexBody):
    """Smooth strictly convex body given by a convex level function (< 0 inside).

    ``boundary`` parametrises the boundary over [0, 2 pi) and is only used
    for sampling; exit points are found by root bracketing on the level
    function along the ray.
    """

    def __init__(self, level: Callable, gradient: Callable, boundary: Callable, base=(0.0, 0.0)):
        self.level = level
        self.gradient = gradient
        self.boundary = boundary
        self.base = _vec(base)
        if not self.contains(self.base):
            raise ValueError("base point must be strictly interior")

    def contains(self, u, strict: bool = True) -> bool:
        val = self.level(_vec(u))
        return bool(val < 0 if strict else val <= 1e-12)

    def boundary_hit(self, x, direction) -> np.ndarray:
        x, d = _vec(x), _vec(direction)
        if not np.any(d):
            raise ValueError("direction must be nonzero")
        f = lambda s: self.level(x + s * d)  # noqa: E731
        hi = 1.0
        while f(hi) < 0:
            hi *= 2.0
        s = brentq(f, 0.0, hi, xtol=1e-15, rtol=1e-15, maxiter=500)
        return x + s * d

    def outward_normals(self, p, tol: float = 1e-9) -> list[np.ndarray]:
        p = _vec(p)
        g = np.asarray(self.gradient(p), dtype=float)
        if abs(self.level(p)) > tol * max(1.0, np.linalg.norm(g)):
            raise ValueError(f"{p} is not on the boundary")
        return [g / np.linalg.norm(g)]


def ellipse(a: float = 1.0, b: float = 1.0, center=(0.0, 0.0)) -> SmoothBody:
    c = _vec(center)
    return SmoothBody(
        level=lambda u: ((u[0] - c[0]) / a) ** 2 + ((u[1] - c[1]) / b) ** 2 - 1.0,
        gradient=lambda u: np.array([2 * (u[0] - c[0]) / a**2, 2 * (u[1] - c[1]) / b**2]),
        boundary=lambda th: c + np.array([a * np.cos(th), b * np.sin(th)]),
        base=c,
    )


def unit_disk() -> SmoothBody:
    return ellipse(1.0, 1.0)


# -- lifts ------------------------------------------------------------------

@dataclass(frozen=True)
class Lift:
    """u -> (u h(u), h(u)); ``height`` returns (h(u), grad h(u))."""

    height: Callable[[np.ndarray], tuple[float, np.ndarray]]
    name: str = "lift"

    def point(self, u) -> np.ndarray:
        u = _vec(u)
        h, _ = self.height(u)
        return np.array([u[0] * h, u[1] * h, h])

    def tangent(self, u, v) -> np.ndarray:
        """Differential of the lift at u applied to v."""
        u, v = _vec(u), _vec(v)
        h, grad = self.height(u)
        dh = float(grad @ v)
        return np.array([v[0] * h + u[0] * dh, v[1] * h + u[1] * dh, dh])


FLAT_LIFT = Lift(lambda u: (1.0, np.zeros(2)), "flat")


def _barycentric(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Barycentric coordinates of u w.r.t. the cube roots of unity, and their gradients."""
    verts = np.column_stack([_CUBE_ROOTS.real, _CUBE_ROOTS.imag])
    # lambda_k = 1/3 + (2/3) <u, zeta_k>
    lam = 1.0 / 3.0 + (2.0 / 3.0) * verts @ u
    return lam, (2.0 / 3.0) * verts


def _titeica_height(u: np.ndarray) -> tuple[float, np.ndarray]:
    lam, dlam = _barycentric(u)
    if np.any(lam <= 0):
        raise ValueError(f"{u} is outside the triangle")
    h = 1.0 / (3.0 * np.prod(lam) ** (1.0 / 3.0))
    grad = -h / 3.0 * np.sum(dlam / lam[:, None], axis=0)
    return float(h), grad


TITEICA_LIFT = Lift(_titeica_height, "titeica")
"""Lift of the triangle with vertices at the cube roots of unity to the
surface {sum c_k (zeta_k, 1) : c_k > 0, c_1 c_2 c_3 = 1/27}."""


def titeica_triangle() -> Polygon:
    return Polygon(np.column_stack([_CUBE_ROOTS.real, _CUBE_ROOTS.imag]), base=(0.0, 0.0))


def titeica_point(z: complex) -> tuple[np.ndarray, complex]:
    """Developing-map image sum_zeta (1/3) e^{2 Re(zeta z)} (zeta, 1) and its chart point."""
    z = complex(z)
    expo = 2.0 * np.real(_CUBE_ROOTS * z)
    # factor out the largest exponent so huge |z| does not overflow the chart point
    shift = expo.max()
    c = np.exp(expo - shift) / 3.0
    chart = complex(np.sum(c * _CUBE_ROOTS) / np.sum(c))
    scale = math.exp(shift) if shift < 700 else math.inf
    vec = np.array([chart.real, chart.imag, 1.0])
    with np.errstate(invalid="ignore"):
        point = np.where(vec == 0.0, 0.0, vec * (float(np.sum(c)) * scale))
    return point, chart


# -- functionals and metrics ------------------------------------------------

@dataclass(frozen=True)
class AffineFunctional:
    """beta(X1, X2, h) = n1 X1 + n2 X2 + c h."""

    n1: float
    n2: float
    c: float

    def __call__(self, X) -> float:
        X = np.asarray(X, dtype=float)
        return float(self.n1 * X[0] + self.n2 * X[1] + self.c * X[2])


def _functional(normal: np.ndarray, p: np.ndarray) -> AffineFunctional:
    return AffineFunctional(-float(normal[0]), -float(normal[1]), float(normal @ p))


def support_functionals(body: ConvexBody, p) -> list[AffineFunctional]:
    p = _vec(p)
    return [_functional(n, p) for n in body.outward_normals(p)]


def support_functional(body: ConvexBody, p) -> AffineFunctional:
    """Supporting functional at p; at a polygon vertex the incoming edge's."""
    return support_functionals(body, p)[0]


def boundary_hit(body: ConvexBody, x, direction) -> np.ndarray:
    if not body.contains(x):
        raise ValueError("x must be strictly interior")
    return body.boundary_hit(x, direction)


def fds_eval(body: ConvexBody, lift: Lift, x, v) -> float:
    x, v = _vec(x), _vec(v)
    if not np.any(v):
        raise ValueError("v must be nonzero")
    p = boundary_hit(body, x, -v)
    beta = support_functional(body, p)
    return beta(lift.tangent(x, v)) / beta(lift.point(x))


def dds_eval(body: ConvexBody, lift: Lift, x, y, functional: int = 0) -> float:
    """log beta(y~)/beta(x~) with beta supporting where the ray y -> x exits.

    ``functional`` picks among several supporting lines at a polygon corner;
    the value does not depend on the choice.
    """
    x, y = _vec(x), _vec(y)
    if np.array_equal(x, y):
        return 0.0
    if not body.contains(y):
        raise ValueError("y must be strictly interior")
    p = boundary_hit(body, x, x - y)
    beta = support_functionals(body, p)[functional]
    return math.log(beta(lift.point(y)) / beta(lift.point(x)))


def hilbert_distance(body: ConvexBody, x, y) -> float:
    """log of the cross ratio of x, y and the two boundary points on their line."""
    x, y = _vec(x), _vec(y)
    if np.array_equal(x, y):
        return 0.0
    p = boundary_hit(body, x, x - y)  # beyond x
    q = boundary_hit(body, y, y - x)  # beyond y
    d = np.linalg.norm
    return math.log(d(x - q) * d(y - p) / (d(x - p) * d(y - q)))


# -- gauge balls and duality ------------------------------------------------

class GaugeBall:
    """Convex polygon with the origin strictly inside, viewed as a unit ball."""

    def __init__(self, vertices):
        v = np.asarray(vertices, dtype=float)
        hull = ConvexHull(v)
        self.vertices = v[hull.vertices]  # counterclockwise
        edges = np.roll(self.vertices, -1, axis=0) - self.vertices
        self.normals = np.column_stack([edges[:, 1], -edges[:, 0]])
        self.offsets = np.einsum("ij,ij->i", self.normals, self.vertices)
        if np.any(self.offsets <= 0):
            raise ValueError("origin must be strictly inside the ball")

    def gauge(self, v) -> float:
        """Minkowski functional inf{s > 0 : v in s * ball}."""
        v = _vec(v)
        return float(max(0.0, np.max(self.normals @ v / self.offsets)))

    def to_json(self) -> dict:
        return {"vertices": self.vertices.tolist(), "base": [0.0, 0.0]}

    @classmethod
    def from_json(cls, data: dict | str) -> GaugeBall:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["vertices"])


@dataclass(frozen=True)
class BilinearForm:
    matrix: np.ndarray = field(default_factory=lambda: np.eye(2))

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (2, 2) or not np.array_equal(m, m.T):
            raise ValueError("bilinear form must be a symmetric 2x2 array")
        if np.any(np.linalg.eigvalsh(m) <= 0):
            raise ValueError("bilinear form must be positive definite")
        object.__setattr__(self, "matrix", m)

    def __call__(self, u, v) -> float:
        return float(_vec(u) @ self.matrix @ _vec(v))


# g(u, v) = 2 Re(u conj(v)) on C = R^2
TWICE_EUCLIDEAN = BilinearForm(2.0 * np.eye(2))


def polar_dual(ball: GaugeBall, form: BilinearForm = BilinearForm()) -> GaugeBall:
    """{u : g(u, v) <= 1 for all v in ball}; one vertex per edge of ``ball``."""
    # edge i is {v : n_i . v = c_i}; its dual vertex u solves G u = n_i / c_i
    dual = np.linalg.solve(form.matrix, (ball.normals / ball.offsets[:, None]).T).T
    return GaugeBall(dual)


def delta_ball(mu: complex = 1.0) -> GaugeBall:
    """Unit ball of F^Delta_mu, a triangle; for mu = 1 its vertices are the cube roots of -1."""
    mu = complex(mu)
    if mu == 0:
        raise ValueError("F^Delta vanishes at a zero of mu; no bounded unit ball")
    r = abs(mu) ** (1.0 / 3.0)
    base = -cmath.exp(-1j * cmath.phase(mu) / 3.0) / r
    pts = [base * z for z in _CUBE_ROOTS]
    return GaugeBall([[p.real, p.imag] for p in pts])


def truncated_ball(d: float, samples: int = 512) -> GaugeBall:
    """-Conv of chart points of the developing map over |z| <= d.

    The developing map is a diffeomorphism onto the open triangle, so the
    image of the disc is bounded by the image of its boundary circle; the
    hull is taken over ``samples`` equally spaced points of that circle
    (the centre is included to keep the hull nondegenerate).
    """
    if d <= 0:
        raise ValueError("d must be positive")
    if samples < 16:
        raise ValueError("need at least 16 samples")
    angles = 2 * np.pi * np.arange(samples) / samples
    pts = [titeica_point(d * cmath.exp(1j * a))[1] for a in angles]
    pts.append(0j)
    return GaugeBall([[-p.real, -p.imag] for p in pts])
