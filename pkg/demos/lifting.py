"""Unique fillers for cocone/cone squares in finite sets.

Run with ``python3 demos/lifting.py``.
"""

from isbell.cylinder import single_cocone, single_cone
from isbell.ortho import boundaries, fillers, is_orthogonal
from isbell.sets import FINSET, FinFunction, canonical_set

three, two = canonical_set(3), canonical_set(2)

# a surjection against an injection: every square has one diagonal
surj = single_cocone(FINSET, FinFunction(three, two, ("0", "0", "1")))
inj = single_cone(FINSET, FinFunction(two, three, ("0", "2")))
cert = is_orthogonal(surj, inj)
print(f"surjection vs injection: orthogonal={cert.orthogonal}, "
      f"{cert.boundaries} squares, {cert.maps} candidate diagonals")
for h, k in boundaries(surj, inj):
    print("  square", h.legs["*"].values, k.legs["*"].values, "->",
          [j.values for j in fillers(surj, h, k, inj)])

# the roles swapped: some square has two diagonals
one = canonical_set(1)
p = single_cocone(FINSET, FinFunction(one, two, ("0",)))
q = single_cone(FINSET, FinFunction(two, one, ("0", "0")))
cert = is_orthogonal(p, q)
h, k, n = cert.witness
print(f"\ninjection vs surjection: orthogonal={cert.orthogonal}; witness square has {n} diagonals")
