# The one-parameter family rho_t of a hyperbolic triangle group, exactly.
#
# Entries live in Laurent polynomials in t over Q(2cos(pi/m)).  We print the
# generators, check every defining relation symbolically and recover the
# triple ratio, which comes out as t^2.

from triangle_finsler import Presentation, symbolic_rep, triple_ratio
from triangle_finsler.triangle_group import build_rep

pres = Presentation(4, 4, 4)
rep = symbolic_rep(pres)

print("field: Q(2cos(pi/%d)), degree %d" % (pres.field.m, pres.field.degree))
for name, g in rep.generators.items():
    print(f"rho({name}):")
    for i in range(3):
        print("   ", [repr(g[i, j]) for j in range(3)])

for rel, ok in rep.verify().items():
    print(f"{rel:12s} {'ok' if ok else 'FAILED'}")

print("triple ratio:", triple_ratio(rep))

# a right angle kills one pairing, so the triple ratio is not defined there
try:
    triple_ratio(symbolic_rep(Presentation(2, 3, 7)))
except ValueError as exc:
    print("(2,3,7):", exc)

# numeric representatives far out in the family still satisfy the relations
for t in (1.0, 1e3, 1e6):
    build_rep(pres, t)
    print(f"t = {t:g}: relations hold numerically")
