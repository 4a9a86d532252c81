"""Factorising cylinders of finite sets, and in the envelope.

Run with ``python3 demos/factorisations.py``.
"""

import random

from isbell.cfs import Budget, check_axioms, covering_mono_cfs, essential_uniqueness, lift_ofs, surj_inj
from isbell.cylinder import Cylinder, compose_cylinder
from isbell.envelope import envelope_cfs
from isbell.fincat import Functor, discrete, walking_arrow
from isbell.sets import FINSET, FinFunction, canonical_set, fset


def dset(sets):
    shape = discrete(sorted(sets))
    return Functor(shape, FINSET, sets, {shape.identity(x): FinFunction.identity(s) for x, s in sets.items()})


# two points mapped into {a, b, c} through a two-legged target
D = dset({"i": canonical_set(1), "j": canonical_set(1)})
E = dset({"x": fset("abc"), "y": fset("uv")})
r = Cylinder(D, E, {("i", "x"): FinFunction(("0",), fset("abc"), ("a",)),
                    ("i", "y"): FinFunction(("0",), fset("uv"), ("u",)),
                    ("j", "x"): FinFunction(("0",), fset("abc"), ("b",)),
                    ("j", "y"): FinFunction(("0",), fset("uv"), ("u",))})

spec = covering_mono_cfs()
p, q = spec.factorise(r)
print("middle set:", p.vertex)
print("legs in:", {i: l.values for i, l in p.legs.items()})
print("legs out:", {j: l.values for j, l in q.legs.items()})
print("recomposes:", compose_cylinder(q, p) == r)

# the lifted single-arrow system gives an isomorphic answer
other = lift_ofs(surj_inj()).factorise(r)
print("comparison iso:", essential_uniqueness(spec, r, (p, q), other).filler)

# axioms, checked on seeded samples
print(check_axioms(spec, Budget(samples=40)))

# the same story for envelope objects over a -> b
env = envelope_cfs(walking_arrow())
r = env.universe.random_cylinder(random.Random(1), Budget(max_index=2, max_set=2))
p, q = env.factorise(r)
print("\nenvelope middle object:", p.vertex)
print("recomposes:", compose_cylinder(q, p) == r)
