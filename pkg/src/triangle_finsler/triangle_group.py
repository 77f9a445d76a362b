"""Hyperbolic triangle reflection groups and the one-parameter family rho_t.

Generators a, b, c act on R^3 by the reflections ``I - e_i (x) row_i(G)``
where G is the Gram matrix of pairings

    [[2,                -2cos(pi/p) t,  -2cos(pi/r)],
     [-2cos(pi/p)/t,     2,             -2cos(pi/q)],
     [-2cos(pi/r),      -2cos(pi/q),     2        ]]

Symbolic representations have Laurent-polynomial entries over
Q(2cos(pi/lcm(p, q, r))); numeric ones have float entries for a fixed t > 0.

Words act letter by letter on column vectors, first letter first:
rho(w1 w2 ... wn) = rho(wn) ... rho(w2) rho(w1).  With this reading the
word cbcacbcacbcacbacbabcabab has trace degrees (6, 5) and the triple ratio
of the Gram matrix above is t^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .algebra import LaurentPoly, Mat3, NFElem, NumberField, ScaledMat3, cos_embed, number_field

LETTERS = "abc"
INDEX = {"a": 0, "b": 1, "c": 2}


class RelationError(RuntimeError):
    """A constructed representation failed its defining relations."""


@dataclass(frozen=True)
class Presentation:
    p: int
    q: int
    r: int

    def __post_init__(self):
        for v in (self.p, self.q, self.r):
            if not isinstance(v, int) or v < 2:
                raise ValueError(f"exponents must be integers >= 2, got {(self.p, self.q, self.r)}")
        if Fraction(1, self.p) + Fraction(1, self.q) + Fraction(1, self.r) >= 1:
            raise ValueError(f"({self.p},{self.q},{self.r}) is not hyperbolic: 1/p + 1/q + 1/r >= 1")

    @classmethod
    def parse(cls, text: str) -> Presentation:
        parts = [s.strip() for s in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected 'p,q,r', got {text!r}")
        return cls(*(int(s) for s in parts))

    def __str__(self) -> str:
        return f"{self.p},{self.q},{self.r}"

    @property
    def order(self) -> int:
        return math.lcm(self.p, self.q, self.r)

    @property
    def field(self) -> NumberField:
        return number_field(self.order)

    def exponent(self, x: str, y: str) -> int:
        """Order of the product xy of two distinct generators."""
        pair = frozenset((x, y))
        if pair == frozenset("ab"):
            return self.p
        if pair == frozenset("bc"):
            return self.q
        if pair == frozenset("ca"):
            return self.r
        raise ValueError(f"not a pair of distinct generators: {x}{y}")

    def cosines(self) -> tuple[NFElem, NFElem, NFElem]:
        """2cos(pi/p), 2cos(pi/q), 2cos(pi/r) as elements of one field."""
        n = self.order
        F = self.field
        return cos_embed(F, n // self.p), cos_embed(F, n // self.q), cos_embed(F, n // self.r)


def check_word(w: str) -> str:
    if any(ch not in INDEX for ch in w):
        raise ValueError(f"words are strings over 'abc', got {w!r}")
    return w


def reduce_word(w: str) -> str:
    """Cancel adjacent equal letters (the generators are involutions)."""
    out: list[str] = []
    for ch in check_word(w):
        if out and out[-1] == ch:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def cyclic_reduce(w: str) -> str:
    w = reduce_word(w)
    while len(w) > 1 and w[0] == w[-1]:
        w = reduce_word(w[1:-1])
    return w


def inverse_word(w: str) -> str:
    return check_word(w)[::-1]


def gram_matrix(pres: Presentation, t: float | None = None) -> Mat3:
    """Gram matrix of pairings; symbolic in t when ``t`` is None."""
    cp, cq, cr = pres.cosines()
    if t is None:
        F = pres.field
        lp = lambda c, e=0: LaurentPoly(F, {e: c})  # noqa: E731
        two = F(2)
        return Mat3(
            [
                [lp(two), lp(-cp, 1), lp(-cr)],
                [lp(-cp, -1), lp(two), lp(-cq)],
                [lp(-cr), lp(-cq), lp(two)],
            ]
        )
    if not t > 0:
        raise ValueError("t must be positive")
    fp, fq, fr = float(cp), float(cq), float(cr)
    return Mat3(
        [
            [2.0, -fp * t, -fr],
            [-fp / t, 2.0, -fq],
            [-fr, -fq, 2.0],
        ]
    )


def _reflections(gram: Mat3, zero, one) -> dict[str, Mat3]:
    gens = {}
    for letter, i in INDEX.items():
        rows = []
        for r in range(3):
            row = []
            for c in range(3):
                delta = one if r == c else zero
                row.append(delta - gram[i, c] if r == i else delta)
            rows.append(row)
        gens[letter] = Mat3(rows)
    return gens


@dataclass(frozen=True)
class Rep:
    """rho_t for a presentation; ``t is None`` marks the symbolic family."""

    pres: Presentation
    t: float | None
    gram: Mat3
    generators: dict[str, Mat3] = field(repr=False)

    @property
    def symbolic(self) -> bool:
        return self.t is None

    @cached_property
    def numeric_generators(self) -> dict[str, np.ndarray]:
        if self.symbolic:
            raise ValueError("symbolic representation has no float generators")
        return {k: g.to_numpy() for k, g in self.generators.items()}

    def verify(self) -> dict[str, bool]:
        """Check involutions, determinants and the three dihedral relations."""
        results = {}
        if self.symbolic:
            F = self.pres.field
            one, zero = LaurentPoly.constant(F, 1), LaurentPoly(F)
            ident = Mat3.identity(zero, one)
            for k, g in self.generators.items():
                results[f"{k}^2 = 1"] = (g @ g) == ident
                results[f"det {k} = -1"] = g.det() == LaurentPoly.constant(F, -1)
            for x, y in ("ab", "bc", "ca"):
                n = self.pres.exponent(x, y)
                prod = self.generators[x] @ self.generators[y]
                results[f"({x}{y})^{n} = 1"] = (prod**n) == ident
        else:
            eye = np.eye(3)
            gens = self.numeric_generators
            for k, g in gens.items():
                results[f"{k}^2 = 1"] = bool(np.allclose(g @ g, eye, rtol=0, atol=1e-9 * max(1.0, np.abs(g).max() ** 2)))
                results[f"det {k} = -1"] = bool(abs(np.linalg.det(g) + 1) < 1e-9 * max(1.0, np.abs(g).max() ** 2))
            for x, y in ("ab", "bc", "ca"):
                n = self.pres.exponent(x, y)
                step = gens[x] @ gens[y]
                prod, worst = eye, 1.0
                for _ in range(n):
                    prod = prod @ step
                    worst = max(worst, np.abs(prod).max() * np.abs(step).max())
                # rounding grows with the largest intermediate product
                results[f"({x}{y})^{n} = 1"] = bool(np.abs(prod - eye).max() <= 1e-9 * worst)
        return results


def build_rep(pres: Presentation, t: float | None = None, verify: bool = True) -> Rep:
    """Representation rho_t; symbolic when ``t`` is None, numeric otherwise.

    Raises RelationError if the generators fail to satisfy the presentation,
    which would indicate a bug rather than bad input.
    """
    gram = gram_matrix(pres, t)
    if t is None:
        F = pres.field
        gens = _reflections(gram, LaurentPoly(F), LaurentPoly.constant(F, 1))
    else:
        gens = _reflections(gram, 0.0, 1.0)
    rep = Rep(pres, None if t is None else float(t), gram, gens)
    if verify:
        failed = [k for k, ok in rep.verify().items() if not ok]
        if failed:
            raise RelationError(f"representation of ({pres}) at t={t} violates {failed}")
    return rep


@lru_cache(maxsize=None)
def symbolic_rep(pres: Presentation) -> Rep:
    return build_rep(pres, None)


def triple_ratio(rep: Rep):
    """alpha1(v2) alpha2(v3) alpha3(v1) / (alpha1(v3) alpha2(v1) alpha3(v2)); equals t^2."""
    g = rep.gram
    den_entries = (g[0, 2], g[1, 0], g[2, 1])
    zero = 0.0 if not rep.symbolic else LaurentPoly(rep.pres.field)
    if any(e == zero for e in den_entries + (g[0, 1], g[1, 2], g[2, 0])):
        raise ValueError(f"triple ratio undefined for this presentation ({rep.pres}): a pairing vanishes")
    num = g[0, 1] * g[1, 2] * g[2, 0]
    den = den_entries[0] * den_entries[1] * den_entries[2]
    return num / den


def evaluate_word_symbolic(rep: Rep, w: str) -> Mat3:
    """Exact matrix rho_t(w); the first letter is applied first."""
    if not rep.symbolic:
        raise ValueError("evaluate_word_symbolic needs a symbolic representation")
    F = rep.pres.field
    out = Mat3.identity(LaurentPoly(F), LaurentPoly.constant(F, 1))
    for ch in check_word(w):
        out = rep.generators[ch] @ out
    return out


def evaluate_word_numeric(rep: Rep, w: str) -> ScaledMat3:
    """Overflow-safe product: renormalises to sup-norm 1 after every factor."""
    gens = rep.numeric_generators
    out = ScaledMat3(np.eye(3), 0.0)
    for ch in check_word(w):
        out = out.left_multiply(gens[ch])
    return out


# -- exact word problem at the Fuchsian point t = 1 -------------------------

class FuchsianPoint:
    """Exact generator matrices at t = 1, with fast right multiplication.

    Right multiplication by a generator s only rewrites entries using the
    s-th Gram row, so it costs six field multiplications rather than 27.
    """

    def __init__(self, pres: Presentation):
        self.pres = pres
        F = pres.field
        self.field = F
        cp, cq, cr = pres.cosines()
        self.gram = (
            (F(2), -cp, -cr),
            (-cp, F(2), -cq),
            (-cr, -cq, F(2)),
        )
        self.identity = tuple(tuple(F(1) if i == j else F(0) for j in range(3)) for i in range(3))

    def times_generator(self, m: tuple, letter: str) -> tuple:
        """m @ rho_1(letter) for m given as a tuple of rows."""
        s = INDEX[letter]
        row_s = self.gram[s]
        out = []
        for row in m:
            ms = row[s]
            if ms.is_zero():
                out.append(row)
                continue
            new = [row[j] - ms * row_s[j] if j != s else -ms for j in range(3)]
            out.append(tuple(new))
        return tuple(out)

    def generator_times(self, letter: str, m: tuple) -> tuple:
        """rho_1(letter) @ m: only row ``letter`` changes."""
        s = INDEX[letter]
        row_s = self.gram[s]
        new_row = []
        for j in range(3):
            acc = m[s][j]
            for k in range(3):
                if row_s[k]:
                    acc = acc - row_s[k] * m[k][j]
            new_row.append(acc)
        rows = list(m)
        rows[s] = tuple(new_row)
        return tuple(rows)

    def matrix(self, w: str) -> tuple:
        m = self.identity
        for ch in check_word(w):
            m = self.times_generator(m, ch)
        return m

    def multiply(self, x: tuple, y: tuple) -> tuple:
        return tuple(
            tuple(x[i][0] * y[0][j] + x[i][1] * y[1][j] + x[i][2] * y[2][j] for j in range(3))
            for i in range(3)
        )


def matrix_key(m: tuple) -> tuple:
    """Hashable, totally ordered identifier of an exact matrix."""
    return tuple(tuple(e.coords for e in row) for row in m)


@lru_cache(maxsize=None)
def fuchsian_point(pres: Presentation) -> FuchsianPoint:
    return FuchsianPoint(pres)


def element_id(pres: Presentation, w: str) -> tuple:
    """Canonical identifier of the group element represented by ``w``.

    rho_1 is faithful, so equal identifiers mean equal elements.
    """
    return matrix_key(fuchsian_point(pres).matrix(w))


def is_torsion(pres: Presentation, w: str) -> bool:
    """True iff w has finite order; decided exactly at t = 1.

    Torsion elements of a triangle group are conjugate into one of the three
    dihedral vertex groups, so their order divides 2 or one of p, q, r.
    """
    fp = fuchsian_point(pres)
    m = fp.matrix(w)
    one = fp.identity
    power = m
    for _ in range(max(2, pres.p, pres.q, pres.r)):
        if power == one:
            return True
        power = fp.multiply(power, m)
    return False
