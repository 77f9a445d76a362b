# Trace degrees predict eigenvalue growth.
#
# For a word w the top t-degree d1 of tr rho_t(w) controls log lambda_1, and
# the degree d2 for the inverse word controls -log lambda_3.  So the ratio
# log lambda_1(w) / log lambda_1(w^-1) should approach d1/d2 as t grows.

import math

from triangle_finsler import Presentation, build_rep, evaluate_word_numeric, inverse_word, trace_top_degrees
from triangle_finsler.spectral import top_log_eigenvalue
from triangle_finsler.triangle_group import evaluate_word_symbolic, symbolic_rep

pres = Presentation(4, 4, 4)
w = "cbcacbcacbcacbacbabcabab"

d1, d2 = trace_top_degrees(pres, w)
print(f"trace degrees of w and w^-1: {d1}, {d2}")

tr = evaluate_word_symbolic(symbolic_rep(pres), w).trace()
print(f"leading coefficient of tr rho_t(w): {float(tr.terms[d1]):g}")

print(f"{'t^2':>8} {'log l1(w)':>12} {'log l1(w^-1)':>13} {'ratio':>9} {'residual':>10}")
for t2 in (1e6, 1e12, 1e24, 1e48):
    rep = build_rep(pres, math.sqrt(t2))
    x = top_log_eigenvalue(evaluate_word_numeric(rep, w))
    y = top_log_eigenvalue(evaluate_word_numeric(rep, inverse_word(w)))
    print(f"{t2:8.0e} {x:12.4f} {y:13.4f} {x / y:9.5f} {x / y - d1 / d2:10.2e}")

# the residual decays like log(leading coefficients) / log t, slowly
