import io
import itertools
import json
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triangle_finsler.algebra import ScaledMat3
from triangle_finsler.spectral import (
    CSV_COLUMNS,
    JordanPoint,
    enumerate_even_classes,
    jordan_projection,
    jordan_scan,
    lattice_distances,
    log_eigenvalues,
    trace_top_degrees,
    write_scan,
)
from triangle_finsler.triangle_group import (
    Presentation,
    build_rep,
    evaluate_word_symbolic,
    fuchsian_point,
    inverse_word,
    matrix_key,
    symbolic_rep,
)

P444 = Presentation(4, 4, 4)
EXAMPLE = "cbcacbcacbcacbacbabcabab"


def _reduced(n):
    return ["".join(w) for w in itertools.product("abc", repeat=n) if all(w[i] != w[i + 1] for i in range(n - 1))]


def _mp_top_log(pres, w, t, dps=60):
    """log|lambda_1| of rho_t(w) from an mpmath matrix product and eigensolver."""
    with mpmath.workdps(dps):
        c = [2 * mpmath.cos(mpmath.pi / k) for k in (pres.p, pres.q, pres.r)]
        t = mpmath.mpf(t)
        G = mpmath.matrix([[2, -c[0] * t, -c[2]], [-c[0] / t, 2, -c[1]], [-c[2], -c[1], 2]])
        gens = {}
        for s, i in zip("abc", range(3)):
            g = mpmath.eye(3)
            for j in range(3):
                g[i, j] -= G[i, j]
            gens[s] = g
        m = mpmath.eye(3)
        for ch in w:
            m = gens[ch] * m
        ev = mpmath.eig(m, left=False, right=False)
        return float(max(mpmath.log(abs(e)) for e in ev))


def test_log_eigenvalues_match_numpy():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = rng.normal(size=(3, 3))
        spec = log_eigenvalues(ScaledMat3.from_array(a))
        expected = np.sort(np.log(np.abs(np.linalg.eigvals(a))))[::-1]
        assert np.allclose(spec.values, expected, atol=1e-8)


def test_top_eigenvalue_survives_huge_scale():
    a = np.diag([3.0, 2.0, 0.5])
    s = ScaledMat3.from_array(np.eye(3))
    for _ in range(2000):
        s = s.left_multiply(a)
    assert log_eigenvalues(s).top == pytest.approx(2000 * math.log(3.0), rel=1e-12)


def test_trace_degrees_example():
    assert trace_top_degrees(P444, EXAMPLE) == (6, 5)


@pytest.mark.parametrize("w", ["ab", "abab", "cabc"])
def test_trace_degrees_elliptic(w):
    assert trace_top_degrees(P444, w) == (0, 0)


def test_trace_degrees_empty_word():
    assert trace_top_degrees(P444, "") == (0, 0)


def test_trace_is_exact_laurent_polynomial():
    tr = evaluate_word_symbolic(symbolic_rep(P444), EXAMPLE).trace()
    assert tr.top_degree() == 6
    assert float(tr.terms[6]) == pytest.approx(512.0)


def test_jordan_projection_example():
    # the spectrum at t = 1e6 sits a constant away from (6, 5) log t: log of the leading coefficient
    rep = build_rep(P444, 1e6)
    pt = jordan_projection(rep, EXAMPLE)
    assert pt.x == pytest.approx(_mp_top_log(P444, EXAMPLE, 1e6), abs=1e-8)
    assert pt.y == pytest.approx(_mp_top_log(P444, inverse_word(EXAMPLE), 1e6), abs=1e-8)
    assert pt.x == pytest.approx(89.1313968, abs=1e-6)
    assert pt.y == pytest.approx(74.9693130, abs=1e-6)
    assert pt.in_cone()


def test_jordan_projection_needs_even_word():
    with pytest.raises(ValueError):
        jordan_projection(build_rep(P444, 2.0), "abc")


def test_high_precision_oracle_short_words():
    words = enumerate_even_classes(P444, 10)
    for t in (1.5, 30.0, 1e3):
        rep = build_rep(P444, t)
        for w in words[:: max(1, len(words) // 15)]:
            pt = jordan_projection(rep, w)
            assert pt.x == pytest.approx(_mp_top_log(P444, w, t), abs=1e-8), (w, t)
            assert pt.y == pytest.approx(_mp_top_log(P444, inverse_word(w), t), abs=1e-8), (w, t)


even_words = st.integers(1, 8).flatmap(lambda k: st.text(alphabet="abc", min_size=2 * k, max_size=2 * k))


@settings(max_examples=60, deadline=None)
@given(even_words, st.floats(0.0, 12.0))
def test_cone_condition(w, log10_t2):
    rep = build_rep(P444, math.sqrt(10.0**log10_t2))
    assert jordan_projection(rep, w).in_cone()


@settings(max_examples=40, deadline=None)
@given(even_words)
def test_fuchsian_symmetry(w):
    pt = jordan_projection(build_rep(P444, 1.0), w)
    assert abs(pt.x - pt.y) < 1e-6


def test_inverse_swaps_coordinates():
    rep = build_rep(P444, 40.0)
    p, q = jordan_projection(rep, "abcb"), jordan_projection(rep, "bcba")
    assert (p.x, p.y) == pytest.approx((q.y, q.x))


def test_cone_membership_helper():
    assert JordanPoint("", 1.0, 2.0).in_cone()
    assert not JordanPoint("", 1.0, 2.1).in_cone()
    assert not JordanPoint("", 3.0, 1.0).in_cone()


def test_class_enumeration_small():
    assert enumerate_even_classes(P444, 0) == [""]
    assert enumerate_even_classes(P444, 2) == ["", "ab", "ac", "bc"]


def test_class_counts_frozen():
    counts = [len(enumerate_even_classes(P444, L)) for L in (0, 2, 4, 6, 8, 10)]
    assert counts == [1, 4, 10, 15, 33, 62]


def test_class_count_matches_bruteforce_conjugacy():
    # conjugacy tested with matrices at t = 1 and conjugators of length <= 6
    fp = fuchsian_point(P444)
    elems = {}
    for n in (0, 2, 4):
        for w in _reduced(n):
            m = fp.matrix(w)
            elems.setdefault(matrix_key(m), m)
    conj = [(fp.matrix(g), fp.matrix(g[::-1])) for n in range(7) for g in _reduced(n)]
    parent = {k: k for k in elems}

    def find(k):
        while parent[k] != k:
            k = parent[k]
        return k

    for k, m in elems.items():
        for g, gi in conj:
            kk = matrix_key(fp.multiply(fp.multiply(g, m), gi))
            if kk in parent:
                parent[find(kk)] = find(k)
    assert len({find(k) for k in elems}) == len(enumerate_even_classes(P444, 4)) == 10


def test_classes_keep_reverse_words():
    classes = enumerate_even_classes(P444, 4)
    assert "abcb" in classes and "acbc" in classes


def test_scan_requires_tagged_parameter():
    with pytest.raises(ValueError):
        jordan_scan(P444, 4)
    with pytest.raises(ValueError):
        jordan_scan(P444, 4, t=2.0, t2=4.0)


def test_scan_t_and_t2_agree():
    a = jordan_scan(P444, 6, t=100.0)
    b = jordan_scan(P444, 6, t2=1e4)
    assert [(p.x, p.y) for p in a] == [(p.x, p.y) for p in b]


def test_scan_output_deterministic():
    outs = []
    for _ in range(2):
        buf = io.StringIO()
        jordan_scan(P444, 8, t2=1e12, sink=buf)
        outs.append(buf.getvalue())
    assert outs[0] == outs[1]
    lines = outs[0].splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[1] == ",0,0,0"
    rows = [line.split(",") for line in lines[1:]]
    assert [(int(r[1]), r[0]) for r in rows] == sorted((int(r[1]), r[0]) for r in rows)


def test_scan_json():
    buf = io.StringIO()
    jordan_scan(P444, 4, t=10.0, sink=buf, fmt="json")
    data = json.loads(buf.getvalue())
    assert data["columns"] == list(CSV_COLUMNS)
    assert len(data["rows"]) == 10
    with pytest.raises(ValueError):
        write_scan([], io.StringIO(), "xml")


def test_lattice_distances():
    t = math.e**10
    pts = [JordanPoint("", 20.0, 10.0), JordanPoint("", 25.0, 10.0), JordanPoint("", 21.0, 9.0)]
    assert lattice_distances(pts, t) == pytest.approx([0.0, 0.5, math.hypot(0.1, 0.1)])
    with pytest.raises(ValueError):
        lattice_distances(pts, 1.0)
