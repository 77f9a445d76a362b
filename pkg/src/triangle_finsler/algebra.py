"""Exact arithmetic for the real cyclotomic fields Q(2cos(pi/m)).

Elements are coordinate vectors in the power basis of ``y = 2cos(pi/m)``.
Coordinates are Python ints whenever possible and ``Fraction`` otherwise, so
the common case (algebraic integers, e.g. matrix entries of a reflection
group at the Fuchsian point) never touches ``Fraction`` at all.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

Rational = int | Fraction


def _norm(x: Rational) -> Rational:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Long division of integer polynomials (low degree first), monic divisor."""
    num = list(num)
    assert den[-1] == 1
    dq = len(num) - len(den)
    if dq < 0:
        return [0], num
    quot = [0] * (dq + 1)
    for i in range(dq, -1, -1):
        c = num[i + len(den) - 1]
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    rem = num[: len(den) - 1]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic(d)))
            assert not any(rem)
    return tuple(poly)


def _dickson(k: int) -> list[int]:
    """Integer polynomial D_k with x^k + x^-k = D_k(x + 1/x); D_0 = 2."""
    prev, cur = [2], [0, 1]
    if k == 0:
        return prev
    for _ in range(k - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return cur


def _totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


_DEC = decimal.Context(prec=60)


class NumberField:
    """The field Q(y) with y = 2cos(pi/m).

    The minimal polynomial is obtained by writing the palindromic cyclotomic
    polynomial Phi_{2m}(x) as x^k times a polynomial in y = x + 1/x.
    """

    def __init__(self, m: int):
        if m < 2:
            raise ValueError(f"order must be >= 2, got {m}")
        self.m = m
        phi = cyclotomic(2 * m)
        k = (len(phi) - 1) // 2
        minpoly = [0] * (k + 1)
        minpoly[0] += phi[k]
        for j in range(1, k + 1):
            for i, c in enumerate(_dickson(j)):
                minpoly[i] += phi[k + j] * c
        self.minpoly: tuple[int, ...] = tuple(minpoly)
        self.degree = k
        self.generator_value = 2.0 * math.cos(math.pi / m)
        if self.minpoly[-1] != 1 or self.degree != _totient(2 * m) // 2:
            raise ArithmeticError(f"bad minimal polynomial for m={m}: {self.minpoly}")
        resid = sum(c * self.generator_value**i for i, c in enumerate(self.minpoly))
        if abs(resid) > 1e-12 * max(1.0, max(abs(c) for c in self.minpoly)):
            raise ArithmeticError(f"minimal polynomial residual {resid} for m={m}")
        # y^j reduced into the power basis, for j < 2*degree - 1
        red: list[tuple[int, ...]] = []
        for j in range(max(2 * k - 1, 1)):
            if j < k:
                red.append(tuple(1 if i == j else 0 for i in range(k)))
            else:
                prev = red[-1]
                shifted = [0] + list(prev)
                top = shifted.pop()
                red.append(tuple(s - top * c for s, c in zip(shifted, self.minpoly)))
        self._powers = red
        self._ydec = None

    @property
    def generator_decimal(self) -> decimal.Decimal:
        """y to ~60 digits: Newton on the minimal polynomial from the float value."""
        if self._ydec is None:
            with decimal.localcontext(_DEC):
                y = decimal.Decimal(self.generator_value)
                for _ in range(6):
                    f = df = decimal.Decimal(0)
                    for c in reversed(self.minpoly):
                        df = df * y + f
                        f = f * y + c
                    if df == 0:
                        break
                    y -= f / df
            self._ydec = y
        return self._ydec

    def __repr__(self) -> str:
        return f"NumberField(m={self.m})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NumberField) and other.m == self.m

    def __hash__(self) -> int:
        return hash(("NumberField", self.m))

    def __call__(self, value: Rational | Sequence[Rational]) -> NFElem:
        if isinstance(value, (int, Fraction)):
            return NFElem(self, (value,) + (0,) * (self.degree - 1))
        coords = tuple(value)
        if len(coords) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(coords)}")
        return NFElem(self, coords)

    @property
    def zero(self) -> NFElem:
        return self(0)

    @property
    def one(self) -> NFElem:
        return self(1)

    @property
    def gen(self) -> NFElem:
        if self.degree == 1:
            # y is rational: y = -minpoly[0]
            return self(-self.minpoly[0])
        return self([0, 1] + [0] * (self.degree - 2))

    def reduce(self, coeffs: Sequence[Rational]) -> tuple[Rational, ...]:
        """Reduce a polynomial in y (low degree first) modulo the minimal polynomial."""
        out = [0] * self.degree
        for j, c in enumerate(coeffs):
            if not c:
                continue
            if j < len(self._powers):
                vec = self._powers[j]
            else:
                vec = self._power(j)
            for i, v in enumerate(vec):
                if v:
                    out[i] += c * v
        return tuple(_norm(x) for x in out)

    def _power(self, j: int) -> tuple[int, ...]:
        while len(self._powers) <= j:
            prev = self._powers[-1]
            shifted = [0] + list(prev)
            top = shifted.pop()
            self._powers.append(tuple(s - top * c for s, c in zip(shifted, self.minpoly)))
        return self._powers[j]


@lru_cache(maxsize=None)
def number_field(m: int) -> NumberField:
    return NumberField(m)


def cos_embed(field: NumberField, k: int) -> NFElem:
    """The element 2cos(k*pi/m) of ``field``, as a Dickson polynomial in the generator."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if field.degree == 1:
        y = field.gen.coords[0]
        return field(sum(c * y**i for i, c in enumerate(_dickson(k))))
    return NFElem(field, field.reduce(_dickson(k)))


@dataclass(frozen=True, eq=False)
class NFElem:
    field: NumberField
    coords: tuple[Rational, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_norm(Fraction(c) if not isinstance(c, (int, Fraction)) else c) for c in self.coords))

    def _coerce(self, other) -> NFElem | None:
        if isinstance(other, NFElem):
            if other.field.m != self.field.m:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, tuple(_norm(a + b) for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, tuple(_norm(a - b) for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElem(self.field, tuple(_norm(a * other) for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coords, o.coords
        n = len(a)
        if n == 1:
            return NFElem(self.field, (_norm(a[0] * b[0]),))
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return NFElem(self.field, self.field.reduce(prod))

    __rmul__ = __mul__

    def _mult_matrix(self) -> list[list[Fraction]]:
        # column j = coordinates of self * y^j
        n = self.field.degree
        cols = []
        for j in range(n):
            basis = self.field([1 if i == j else 0 for i in range(n)])
            cols.append((self * basis).coords)
        return [[Fraction(cols[j][i]) for j in range(n)] for i in range(n)]

    def inverse(self) -> NFElem:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in number field")
        n = self.field.degree
        mat = self._mult_matrix()
        rhs = [Fraction(1)] + [Fraction(0)] * (n - 1)
        aug = [row + [r] for row, r in zip(mat, rhs)]
        for col in range(n):
            piv = next(r for r in range(col, n) if aug[r][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return NFElem(self.field, tuple(aug[i][n] for i in range(n)))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse() if isinstance(other, (int, Fraction)) else NotImplemented

    def __pow__(self, k: int):
        out = self.field.one
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if isinstance(other, (int, Fraction, NFElem)) else None
        if o is None:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __lt__(self, other: NFElem) -> bool:
        # lexicographic on coordinates; only for canonical ordering, not numeric
        return self.coords < other.coords

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __float__(self) -> float:
        # power-basis coefficients grow with the degree and cancel in doubles
        y = self.field.generator_decimal
        with decimal.localcontext(_DEC):
            acc = decimal.Decimal(0)
            for c in reversed(self.coords):
                c = Fraction(c)
                acc = acc * y + decimal.Decimal(c.numerator) / decimal.Decimal(c.denominator)
            return float(acc)

    def __repr__(self) -> str:
        return f"NFElem(m={self.field.m}, {list(map(str, self.coords))})"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(str(c) if i == 0 else f"({c})*y" + (f"^{i}" if i > 1 else ""))
        return " + ".join(terms) if terms else "0"


class LaurentPoly:
    """Sparse Laurent polynomial in t with number-field coefficients.

    Canonical form: zero coefficients are never stored. Instances are
    treated as immutable.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field: NumberField, terms: dict[int, NFElem] | Iterable[tuple[int, NFElem]] = ()):
        self.field = field
        items = terms.items() if isinstance(terms, dict) else terms
        clean: dict[int, NFElem] = {}
        for e, c in items:
            if not isinstance(c, NFElem):
                c = field(c)
            if not c.is_zero():
                clean[int(e)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, coeff: NFElem | Rational, exp: int, field: NumberField | None = None) -> LaurentPoly:
        if field is None:
            field = coeff.field
        return cls(field, {exp: coeff})

    @classmethod
    def constant(cls, field: NumberField, c: NFElem | Rational) -> LaurentPoly:
        return cls(field, {0: c})

    def _coerce(self, other) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction, NFElem)):
            return LaurentPoly.constant(self.field, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentPoly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.field, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[int, NFElem] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = e1 + e2
                prod = c1 * c2
                out[e] = out[e] + prod if e in out else prod
        return LaurentPoly(self.field, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero monomial (or constant) only."""
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(o.terms) != 1:
            raise ValueError("can only divide by a monomial")
        (e, c), = o.terms.items()
        inv = c.inverse()
        return LaurentPoly(self.field, {k - e: v * inv for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items(), key=lambda kv: kv[0])))

    def is_zero(self) -> bool:
        return not self.terms

    def top_degree(self) -> int:
        return laurent_top_degree(self)

    def bottom_degree(self) -> int:
        if not self.terms:
            raise ValueError("undefined degree: zero Laurent polynomial")
        return min(self.terms)

    def __call__(self, t):
        """Evaluate at a float or exact rational t."""
        if isinstance(t, (int, Fraction)):
            out = self.field.zero
            for e, c in self.terms.items():
                out = out + c * (Fraction(t) ** e)
            return out
        return sum(float(c) * t**e for e, c in self.terms.items())

    def to_json(self) -> dict:
        return {
            "field": self.field.m,
            "terms": [[e, [str(x) for x in self.terms[e].coords]] for e in sorted(self.terms)],
        }

    @classmethod
    def from_json(cls, data: dict) -> LaurentPoly:
        field = number_field(int(data["field"]))
        return cls(field, {int(e): field([Fraction(x) for x in coords]) for e, coords in data["terms"]})

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"[{self.terms[e]}]*t^{e}" for e in sorted(self.terms, reverse=True))


def laurent_mul(P: LaurentPoly, Q: LaurentPoly) -> LaurentPoly:
    return P * Q


def laurent_top_degree(P: LaurentPoly) -> int:
    if not P.terms:
        raise ValueError("undefined degree: zero Laurent polynomial")
    return max(P.terms)


class Mat3:
    """3x3 matrix over any commutative ring whose elements support + - *."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(r) for r in rows)
        if len(self.rows) != 3 or any(len(r) != 3 for r in self.rows):
            raise ValueError("Mat3 needs a 3x3 array")

    @classmethod
    def identity(cls, zero, one) -> Mat3:
        return cls([[one if i == j else zero for j in range(3)] for i in range(3)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: Mat3) -> Mat3:
        a, b = self.rows, other.rows
        return Mat3(
            [[a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] for j in range(3)] for i in range(3)]
        )

    def __mul__(self, other):
        if isinstance(other, Mat3):
            return self @ other
        return Mat3([[x * other for x in r] for r in self.rows])

    def __add__(self, other: Mat3) -> Mat3:
        return Mat3([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: Mat3) -> Mat3:
        return Mat3([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> Mat3:
        return Mat3([[-x for x in r] for r in self.rows])

    def __pow__(self, k: int) -> Mat3:
        if k < 1:
            raise ValueError("power must be >= 1")
        out = self
        for _ in range(k - 1):
            out = out @ self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat3):
            return NotImplemented
        return all(x == y for r, s in zip(self.rows, other.rows) for x, y in zip(r, s))

    def __hash__(self) -> int:
        return hash(self.rows)

    def trace(self):
        return self.rows[0][0] + self.rows[1][1] + self.rows[2][2]

    def second_invariant(self):
        """Sum of principal 2x2 minors (coefficient of lambda in the char. poly)."""
        m = self.rows
        return (
            m[0][0] * m[1][1] - m[0][1] * m[1][0]
            + m[0][0] * m[2][2] - m[0][2] * m[2][0]
            + m[1][1] * m[2][2] - m[1][2] * m[2][1]
        )

    def det(self):
        m = self.rows
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    def transpose(self) -> Mat3:
        return Mat3(list(zip(*self.rows)))

    def map(self, fn) -> Mat3:
        return Mat3([[fn(x) for x in r] for r in self.rows])

    def to_numpy(self, fn=float) -> np.ndarray:
        return np.array([[fn(x) for x in r] for r in self.rows], dtype=float)

    def __repr__(self) -> str:
        return "Mat3(" + "; ".join(", ".join(map(str, r)) for r in self.rows) + ")"


@dataclass(frozen=True)
class ScaledMat3:
    """Float 3x3 matrix stored as exp(log_scale) * mantissa with max|mantissa| = 1."""

    mantissa: np.ndarray
    log_scale: float = 0.0

    @classmethod
    def from_array(cls, a) -> ScaledMat3:
        a = np.asarray(a, dtype=float)
        return cls(np.eye(3), 0.0).renormalized(a, 0.0)

    @staticmethod
    def renormalized(m: np.ndarray, s: float) -> ScaledMat3:
        norm = float(np.max(np.abs(m)))
        if norm == 0.0 or not math.isfinite(norm):
            raise FloatingPointError(f"cannot normalise matrix with sup-norm {norm}")
        return ScaledMat3(m / norm, s + math.log(norm))

    def __matmul__(self, other) -> ScaledMat3:
        if isinstance(other, ScaledMat3):
            return self.renormalized(self.mantissa @ other.mantissa, self.log_scale + other.log_scale)
        return self.renormalized(self.mantissa @ np.asarray(other, dtype=float), self.log_scale)

    def left_multiply(self, a: np.ndarray) -> ScaledMat3:
        return self.renormalized(np.asarray(a, dtype=float) @ self.mantissa, self.log_scale)

    def value(self) -> np.ndarray:
        """The true matrix; overflows for large log_scale."""
        return math.exp(self.log_scale) * self.mantissa
