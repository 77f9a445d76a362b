"""Eigenvalue asymptotics of rho_t: log-spectra, Jordan projections, trace degrees."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from typing import Iterable, TextIO

import numpy as np

from .algebra import ScaledMat3
from .triangle_group import (
    LETTERS,
    Presentation,
    Rep,
    build_rep,
    evaluate_word_numeric,
    evaluate_word_symbolic,
    fuchsian_point,
    inverse_word,
    is_torsion,
    matrix_key,
    symbolic_rep,
)

__all__ = [
    "ScaledMat3",
    "CharPoly",
    "LogSpectrum",
    "JordanPoint",
    "char_poly",
    "log_eigenvalues",
    "top_log_eigenvalue",
    "jordan_projection",
    "trace_top_degrees",
    "enumerate_even_classes",
    "jordan_scan",
    "lattice_distances",
    "write_scan",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ("word", "length", "x_logl1", "y_neg_logl3")


@dataclass(frozen=True)
class CharPoly:
    """lambda^3 - c1 lambda^2 + c2 lambda - c3 with c_k = exp(k * log_scale) * mantissas[k-1]."""

    mantissas: tuple[float, float, float]
    log_scale: float

    def coefficients(self) -> tuple[float, float, float]:
        """Unscaled (trace, second invariant, determinant); may overflow."""
        s = self.log_scale
        return tuple(m * math.exp(k * s) for k, m in enumerate(self.mantissas, start=1))

    def monic(self) -> np.ndarray:
        """Coefficients of the scaled cubic in mu = lambda * exp(-log_scale)."""
        c1, c2, c3 = self.mantissas
        return np.array([1.0, -c1, c2, -c3])


def char_poly(m: ScaledMat3) -> CharPoly:
    a = m.mantissa
    tr = float(np.trace(a))
    m2 = float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0] + a[0, 0] * a[2, 2] - a[0, 2] * a[2, 0]
               + a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
    det = float(np.linalg.det(a))
    return CharPoly((tr, m2, det), m.log_scale)


@dataclass(frozen=True)
class LogSpectrum:
    values: tuple[float, float, float]
    real: tuple[bool, bool, bool]
    clustered: bool = False

    @property
    def top(self) -> float:
        return self.values[0]


def _polish(coeffs: np.ndarray, root: complex, steps: int = 1) -> complex:
    dcoeffs = np.polyder(coeffs)
    for _ in range(steps):
        f = np.polyval(coeffs, root)
        df = np.polyval(dcoeffs, root)
        if df == 0:
            break
        with np.errstate(all="ignore"):
            new = root - f / df
        # keep the step only if it is finite and does not make things worse
        if not np.isfinite(new) or abs(np.polyval(coeffs, new)) > abs(f):
            break
        root = new
    return root


def log_eigenvalues(m: ScaledMat3) -> LogSpectrum:
    """Log-magnitudes of the eigenvalues, largest first.

    The largest one is accurate to ~1e-9 relative once it is separated from
    the second.  The smaller ones come from the same float cubic and lose
    accuracy when the spread exceeds double precision; ``jordan_projection``
    therefore reads the bottom eigenvalue off the inverse word instead.
    """
    cp = char_poly(m)
    coeffs = cp.monic()
    roots = np.roots(coeffs)
    roots = np.array([_polish(coeffs, complex(r)) for r in roots])
    mags = np.abs(roots)
    order = np.argsort(-mags, kind="stable")
    roots, mags = roots[order], mags[order]
    with np.errstate(divide="ignore"):
        logs = tuple(float(cp.log_scale + np.log(x)) for x in mags)
    real = tuple(bool(abs(r.imag) <= 1e-12 * max(1.0, abs(r))) for r in roots)
    gaps = [abs(logs[i] - logs[i + 1]) for i in range(2)]
    return LogSpectrum(logs, real, clustered=min(gaps) < 1e-3)


def top_log_eigenvalue(m: ScaledMat3) -> float:
    return log_eigenvalues(m).top


@dataclass(frozen=True)
class JordanPoint:
    word: str
    x: float
    y: float

    def in_cone(self, slack: float = 1e-6) -> bool:
        return self.y <= 2 * self.x + slack and self.x <= 2 * self.y + slack


def jordan_projection(rep: Rep, w: str) -> JordanPoint:
    """(log|lambda_1|, -log|lambda_3|) of rho(w) for an even word w.

    -log|lambda_3(w)| = log|lambda_1(w^-1)|, and w^-1 is the reversed word.
    Finite-order elements have unimodular spectrum for every t and are
    returned as (0, 0) exactly; their float matrices cancel badly at large t.
    """
    if len(w) % 2:
        raise ValueError(f"Jordan projection needs an even (orientation preserving) word, got {w!r}")
    if is_torsion(rep.pres, w):
        return JordanPoint(w, 0.0, 0.0)
    x = top_log_eigenvalue(evaluate_word_numeric(rep, w))
    y = top_log_eigenvalue(evaluate_word_numeric(rep, inverse_word(w)))
    return JordanPoint(w, x, y)


def trace_top_degrees(pres: Presentation, w: str) -> tuple[int, int]:
    """Top t-degrees of tr rho_t(w) and tr rho_t(w^-1), exactly.

    Odd words are accepted (their traces are still Laurent polynomials) but
    the pair only has its limit meaning for even ones.
    """
    rep = symbolic_rep(pres)
    d1 = evaluate_word_symbolic(rep, w).trace().top_degree()
    d2 = evaluate_word_symbolic(rep, inverse_word(w)).trace().top_degree()
    return d1, d2


def _cyclically_reduced_words(n: int) -> Iterable[str]:
    """Reduced words of length n whose first and last letters differ."""
    if n == 0:
        yield ""
        return

    def extend(prefix: str):
        if len(prefix) == n:
            if n == 1 or prefix[0] != prefix[-1]:
                yield prefix
            return
        for ch in LETTERS:
            if ch != prefix[-1]:
                yield from extend(prefix + ch)

    for ch in LETTERS:
        yield from extend(ch)


def _rotations(w: str) -> list[str]:
    return [w[i:] + w[:i] for i in range(len(w))] or [""]


def enumerate_even_classes(pres: Presentation, max_len: int) -> list[str]:
    """One word per conjugacy class among even words of length <= max_len.

    Words are identified when they are cyclic rotations of each other; w and
    its reverse stay separate.  Rotation classes representing the same
    element (detected exactly via ``element_id``) are merged, keeping the
    first in (length, word) order.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    fp = fuchsian_point(pres)
    seen: set[tuple] = set()
    out: list[str] = []
    for n in range(0, max_len + 1, 2):
        reps = sorted({min(_rotations(w)) for w in _cyclically_reduced_words(n)})
        for w in reps:
            ids = {matrix_key(fp.matrix(r)) for r in _rotations(w)}
            if ids & seen:
                continue
            seen |= ids
            out.append(w)
    return out


def _resolve_t(t: float | None, t2: float | None) -> float:
    if (t is None) == (t2 is None):
        raise ValueError("give exactly one of t or t2 (the parameter must be tagged explicitly)")
    val = t if t is not None else math.sqrt(t2)
    if not val > 0:
        raise ValueError("parameter must be positive")
    return float(val)


def jordan_scan(
    pres: Presentation,
    max_len: int,
    *,
    t: float | None = None,
    t2: float | None = None,
    sink: TextIO | None = None,
    fmt: str = "csv",
) -> list[JordanPoint]:
    """Jordan projections of all even conjugacy classes up to ``max_len``.

    Exactly one of ``t`` / ``t2`` (the triple ratio) must be given.  Rows are
    sorted by (length, word); if ``sink`` is given the table is written to it.
    """
    rep = build_rep(pres, _resolve_t(t, t2))
    words = enumerate_even_classes(pres, max_len)
    points = [jordan_projection(rep, w) for w in words]
    points.sort(key=lambda p: (len(p.word), p.word))
    if sink is not None:
        write_scan(points, sink, fmt)
    return points


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def write_scan(points: list[JordanPoint], sink: TextIO, fmt: str = "csv") -> None:
    if fmt == "csv":
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for p in points:
            writer.writerow([p.word, len(p.word), _fmt(p.x), _fmt(p.y)])
    elif fmt == "json":
        rows = [
            {"word": p.word, "length": len(p.word), "x_logl1": float(_fmt(p.x)), "y_neg_logl3": float(_fmt(p.y))}
            for p in points
        ]
        json.dump({"columns": list(CSV_COLUMNS), "rows": rows}, sink, indent=1)
        sink.write("\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def lattice_distances(points: list[JordanPoint], t: float) -> np.ndarray:
    """Euclidean distance of each point to log(t) Z^2, divided by log(t)."""
    lt = math.log(t)
    if lt <= 0:
        raise ValueError("lattice distances need t > 1")
    xy = np.array([[p.x, p.y] for p in points]) / lt
    return np.linalg.norm(xy - np.round(xy), axis=1)
