# Translation lengths in the triangular Finsler metric.
#
# The tiling by unit equilateral triangles carries the asymmetric metric
# F^Delta; moving counterclockwise around a grey triangle costs 2, clockwise 1.
# An element w translates along a tube of triangles and its translation
# length is a weighted shortest-path problem.  It should equal 3 times the
# trace degree.

import time

from triangle_finsler import Presentation, enumerate_even_classes, inverse_word, translation_length
from triangle_finsler.flat_metric import build_tube, check_degree_length

pres = Presentation(4, 4, 4)
w = "cbcacbcacbcacbacbabcabab"

for k in (1, 2, 4):
    print(f"tube of thickness {k}: {len(build_tube(pres, w, k).triangles)} triangles")

print("length of w:", translation_length(pres, w))
print("length of w^-1:", translation_length(pres, inverse_word(w)))

start = time.perf_counter()
classes = enumerate_even_classes(pres, 8)
bad = [r for r in map(lambda u: check_degree_length(pres, u), classes) if not r.consistent]
print(f"{len(classes)} classes up to length 8, {len(bad)} disagreements "
      f"({time.perf_counter() - start:.1f}s)")
for word in classes[4:10]:
    r = check_degree_length(pres, word)
    print(f"  {word:10s} degrees ({r.d1}, {r.d2})  lengths ({r.length}, {r.inverse_length})")
