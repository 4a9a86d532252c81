"""A tour of envelope objects over the walking arrow a -> b.

Run with ``python3 demos/yoneda_tour.py``.
"""

import random

from isbell.envelope import dual, isbell_hom, lemma2_bijection, random_isbell_object, yoneda, yoneda_morphism
from isbell.fincat import walking_arrow

c = walking_arrow()

# representables: a presheaf and a copresheaf glued along composition
ya, yb = yoneda(c, "a"), yoneda(c, "b")
print("Y a:", ya)
print("Y b:", yb)

# maps between representables are exactly the arrows of c
for s, t in [("a", "b"), ("b", "a"), ("a", "a")]:
    homs = isbell_hom(yoneda(c, s), yoneda(c, t))
    print(f"hom(Y {s}, Y {t}) has {len(homs)} maps; arrows {sorted(c.hom(s, t))}")
print("image of f:", yoneda_morphism(c, "f"))

# a random object, and the elements it is probed by
x = random_isbell_object(c, random.Random(3), 3)
print("\nrandom object:", x)
for a in c.objects:
    cert = lemma2_bijection(x, a)
    print(f"  maps Y {a} -> x: {cert.plus_maps} (= |plus({a})| = {len(x.plus(a))}),"
          f" x -> Y {a}: {cert.minus_maps} (= |minus({a})| = {len(x.minus(a))})")

# swapping the two halves lands over the opposite category, and back again
print("\ndual:", dual(x))
print("double dual equals x:", dual(dual(x)) == x)
