"""The triangular Finsler metric F^Delta and translation lengths on the tiling.

Copies of a unit equilateral triangle, one per group element, are glued
along the mirrors a, b, c.  Triangle g meets triangle g*s across its side s;
the element w acts by g -> w*g.  F^Delta of a unit side traversed
counterclockwise around a grey (even) triangle is 2 and clockwise is 1, the
other way round for white triangles.  Translation lengths are computed as
weighted directed shortest paths on the 1-skeleton.
"""

from __future__ import annotations

import cmath
import math
from collections import deque
from dataclasses import dataclass, field

from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .spectral import trace_top_degrees
from .triangle_group import (
    Presentation,
    check_word,
    cyclic_reduce,
    fuchsian_point,
    inverse_word,
    matrix_key,
    reduce_word,
)

_CUBE_ROOTS = tuple(cmath.exp(2j * math.pi * k / 3) for k in range(3))

# corner types, listed in the counterclockwise order of a grey triangle
CORNERS = ("ab", "bc", "ca")
# side s joins the two corners whose types contain s
SIDE_CORNERS = {"a": ("ca", "ab"), "b": ("ab", "bc"), "c": ("bc", "ca")}
_NEXT = {"ab": "bc", "bc": "ca", "ca": "ab"}


class NotStabilizedError(RuntimeError):
    pass


class OrientationError(RuntimeError):
    pass


def finsler_delta_eval(mu, v) -> float:
    """max over cube roots alpha of mu of 2 Re(alpha v); 0 where mu vanishes."""
    mu, v = complex(mu), complex(v)
    if mu == 0:
        return 0.0
    r = abs(mu) ** (1.0 / 3.0)
    base = r * cmath.exp(1j * cmath.phase(mu) / 3.0)
    return max(2.0 * (base * z * v).real for z in _CUBE_ROOTS)


def edge_weight(start: str, end: str) -> int:
    """F^Delta length of a unit side run from a ``start`` corner to an ``end`` corner."""
    if start == end or start not in _NEXT or end not in _NEXT:
        raise ValueError(f"not a side: {start} -> {end}")
    return 2 if _NEXT[start] == end else 1


@dataclass
class Triangle:
    key: tuple
    word: str
    matrix: tuple = field(repr=False)
    origin: int  # index of the spine triangle this one was reached from
    depth: int

    @property
    def grey(self) -> bool:
        return len(self.word) % 2 == 0


@dataclass
class TilingPatch:
    pres: Presentation
    word: str
    thickness: int
    triangles: dict[tuple, Triangle]
    spine: list[tuple]
    vertices: dict[tuple, int] = field(default_factory=dict)
    corner_of: dict[tuple[tuple, str], tuple] = field(default_factory=dict)
    edges: list[tuple[tuple, str, tuple, tuple]] = field(default_factory=list)
    weights: dict[tuple[tuple, tuple], int] = field(default_factory=dict)
    action: dict[tuple, tuple] = field(default_factory=dict)

    def neighbours(self, key: tuple, letter: str):
        return self.triangles.get(matrix_key(fuchsian_point(self.pres).times_generator(self.triangles[key].matrix, letter)))

    def to_json(self) -> dict:
        tri_index = {k: i for i, k in enumerate(self.triangles)}
        return {
            "presentation": str(self.pres),
            "word": self.word,
            "thickness": self.thickness,
            "triangles": [
                {"id": tri_index[k], "word": t.word, "color": "grey" if t.grey else "white"}
                for k, t in self.triangles.items()
            ],
            "vertices": [{"id": i, "type": v[0]} for v, i in self.vertices.items()],
            "edges": [
                {"triangle": tri_index[tk], "side": side, "ends": [self.vertices[u], self.vertices[v]]}
                for tk, side, u, v in self.edges
            ],
            "directed_weights": [
                [self.vertices[u], self.vertices[v], wt] for (u, v), wt in self.weights.items()
            ],
        }


def _vertex_key(pres: Presentation, matrix: tuple, corner: str, cache: dict | None = None) -> tuple:
    """Canonical key of the vertex at ``corner`` of the triangle with ``matrix``.

    The vertex is the coset g<x, y>; its key is the corner type together with
    the smallest matrix key among the 2m triangles around it.  ``cache`` maps
    (triangle key, corner) to vertex keys and is filled for the whole cycle.
    """
    start = matrix_key(matrix)
    if cache is not None and (start, corner) in cache:
        return cache[(start, corner)]
    fp = fuchsian_point(pres)
    x, y = corner
    m = pres.exponent(x, y)
    keys = [start]
    cur = matrix
    for i in range(2 * m - 1):
        cur = fp.times_generator(cur, x if i % 2 == 0 else y)
        keys.append(matrix_key(cur))
    vk = (corner, min(keys))
    if cache is not None:
        for k in keys:
            cache[(k, corner)] = vk
    return vk


def build_tube(pres: Presentation, w: str, thickness: int) -> TilingPatch:
    """Triangles along three copies of w's letter path, plus a ``thickness`` neighbourhood."""
    w = reduce_word(check_word(w))
    if not w:
        raise ValueError("build_tube needs a nonempty reduced word")
    if thickness < 1:
        raise ValueError("thickness must be >= 1")
    fp = fuchsian_point(pres)
    triangles: dict[tuple, Triangle] = {}
    spine: list[tuple] = []
    m, word = fp.identity, ""
    path = w * 3
    queue: deque[tuple] = deque()
    for i in range(len(path) + 1):
        k = matrix_key(m)
        spine.append(k)
        if k not in triangles:
            triangles[k] = Triangle(k, word, m, origin=i, depth=0)
            queue.append(k)
        if i < len(path):
            m = fp.times_generator(m, path[i])
            word = reduce_word(word + path[i])
    while queue:
        k = queue.popleft()
        tri = triangles[k]
        if tri.depth >= thickness:
            continue
        for letter in "abc":
            nm = fp.times_generator(tri.matrix, letter)
            nk = matrix_key(nm)
            if nk not in triangles:
                triangles[nk] = Triangle(nk, reduce_word(tri.word + letter), nm, tri.origin, tri.depth + 1)
                queue.append(nk)
    patch = TilingPatch(pres, w, thickness, triangles, spine)
    _add_skeleton(patch)
    return patch


def _add_skeleton(patch: TilingPatch) -> None:
    pres = patch.pres
    cache: dict = {}
    for tk, tri in patch.triangles.items():
        for corner in CORNERS:
            vk = _vertex_key(pres, tri.matrix, corner, cache)
            patch.corner_of[(tk, corner)] = vk
            if vk not in patch.vertices:
                patch.vertices[vk] = len(patch.vertices)
        for side, (c0, c1) in SIDE_CORNERS.items():
            patch.edges.append((tk, side, patch.corner_of[(tk, c0)], patch.corner_of[(tk, c1)]))
    fp = fuchsian_point(pres)
    wm = fp.matrix(patch.word)
    for (tk, corner), vk in patch.corner_of.items():
        if vk in patch.action:
            continue
        image = _vertex_key(pres, fp.multiply(wm, patch.triangles[tk].matrix), corner, cache)
        patch.action[vk] = image


def edge_weights(patch: TilingPatch) -> TilingPatch:
    """Assign both directed weights to every side, checking the two colour rules agree.

    Grey triangles run ab -> bc -> ca counterclockwise; white ones the other
    way.  Counterclockwise around grey (clockwise around white) costs 2.
    """
    weights: dict[tuple[tuple, tuple], int] = {}
    for tk, side, u, v in patch.edges:
        tri = patch.triangles[tk]
        cu, cv = u[0], v[0]
        ccw = (_NEXT[cu] == cv) == tri.grey
        for (a, b), forward in (((u, v), ccw), ((v, u), not ccw)):
            wt = (2 if forward else 1) if tri.grey else (1 if forward else 2)
            if wt != edge_weight(a[0], b[0]):
                raise OrientationError(f"colour rule disagrees on side {side} of {tri.word!r}")
            prev = weights.setdefault((a, b), wt)
            if prev != wt:
                raise OrientationError(f"inconsistent weights on an edge of {tri.word!r}")
    patch.weights = weights
    return patch


def _min_displacement(patch: TilingPatch) -> float:
    """min over vertices x near the middle copy of d(x, w.x) within the patch."""
    n = len(patch.word)
    index = patch.vertices
    rows, cols, vals = [], [], []
    for (u, v), wt in patch.weights.items():
        rows.append(index[u])
        cols.append(index[v])
        vals.append(float(wt))
    size = len(index)
    graph = csr_matrix((vals, (rows, cols)), shape=(size, size))
    sources = []
    for (tk, corner), vk in patch.corner_of.items():
        if n <= patch.triangles[tk].origin <= 2 * n and patch.action.get(vk) in index:
            sources.append(vk)
    sources = sorted(set(sources), key=index.__getitem__)
    if not sources:
        return math.inf
    src_idx = [index[s] for s in sources]
    dist = dijkstra(graph, directed=True, indices=src_idx)
    best = math.inf
    for row, s in enumerate(sources):
        best = min(best, dist[row, index[patch.action[s]]])
    return best


def translation_length(pres: Presentation, w: str, max_doublings: int = 12) -> int:
    """F^Delta translation length of w on the reflection-locus graph.

    Builds tubes of thickness 1, 2, 4, ... and stops when two successive
    thicknesses give the same value.
    """
    w = cyclic_reduce(check_word(w))
    if not w:
        return 0
    thickness, prev = 1, None
    for _ in range(max_doublings + 1):
        patch = edge_weights(build_tube(pres, w, thickness))
        val = _min_displacement(patch)
        if prev is not None and val == prev and math.isfinite(val):
            return int(val)
        prev = val
        thickness *= 2
    raise NotStabilizedError(f"translation length of {w!r} did not stabilize (last value {prev})")


@dataclass(frozen=True)
class DegreeLengthReport:
    word: str
    d1: int
    d2: int
    length: int
    inverse_length: int

    @property
    def consistent(self) -> bool:
        return self.length == 3 * self.d1 and self.inverse_length == 3 * self.d2

    def to_json(self) -> dict:
        return {
            "word": self.word,
            "d1": self.d1,
            "d2": self.d2,
            "length": self.length,
            "inverse_length": self.inverse_length,
            "consistent": self.consistent,
        }


def check_degree_length(pres: Presentation, w: str) -> DegreeLengthReport:
    """Compare 3 * (trace degrees) with the translation lengths of w and w^-1."""
    d1, d2 = trace_top_degrees(pres, w)
    return DegreeLengthReport(
        w, d1, d2, translation_length(pres, w), translation_length(pres, inverse_word(w))
    )
