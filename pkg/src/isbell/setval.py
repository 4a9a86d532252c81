"""Limits and colimits of finite-set data, image factorisation, unions of
subobjects, and pointwise (co)limits of diagrams of Set-valued functors.

Limit elements are named ``(x_1,...,x_n)`` after the matching family in
sorted index order; colimit classes are named ``(i,x)`` after their least
member.
"""

import itertools
from dataclasses import dataclass

from ._ids import tup
from ._search import Problem, UnionFind
from .cylinder import Cocone, Cone
from .errors import InternalError, MalformedError, ShapeError
from .fincat import Functor, NatTrans
from .sets import FINSET, FinFunction, FunctorCategory, SetFunctor, fset

SetCone = Cone
SetCocone = Cocone


def _check_finset_diagram(d):
    if d.target != FINSET:
        raise ShapeError("diagram does not land in finite sets")


def matching_families(d: Functor):
    """Compatible families ``{i: x_i}`` of a diagram of finite sets, in canonical order."""
    _check_finset_diagram(d)
    prob = Problem()
    index = d.source
    for i in index.objects:
        prob.add_variable(i, d.ob(i))
    ids = set(index.identities.values())
    for f, (i, i2) in index.morphisms.items():
        if f in ids:
            continue
        df = d.mor(f)
        prob.add_constraint([i, i2], lambda x, y, df=df: df(x) == y)
    fams = [tuple(sol[i] for i in index.objects) for sol in prob.solutions()]
    return sorted(fams)


def limit(d: Functor) -> Cone:
    index = d.source
    fams = matching_families(d)
    vertex = fset(tup(*fam) for fam in fams)
    by_name = {tup(*fam): fam for fam in fams}
    legs = {}
    for k, i in enumerate(index.objects):
        legs[i] = FinFunction(vertex, d.ob(i), tuple(by_name[v][k] for v in vertex))
    return Cone._trusted(d, vertex, legs)


def limit_mediator(lim: Cone, cone: Cone) -> FinFunction:
    """The unique ``m`` with ``lim . m = cone``."""
    objs = lim.diagram.source.objects
    vals = tuple(tup(*(cone.legs[i](v) for i in objs)) for v in cone.vertex)
    return FinFunction(cone.vertex, lim.vertex, vals)


def colimit(d: Functor) -> Cocone:
    _check_finset_diagram(d)
    index = d.source
    uf = UnionFind((i, x) for i in index.objects for x in d.ob(i))
    for f, (i, i2) in index.morphisms.items():
        df = d.mor(f)
        for x in d.ob(i):
            uf.union((i, x), (i2, df(x)))
    vertex = fset(tup(*rep) for rep in uf.classes())
    legs = {i: FinFunction(d.ob(i), vertex, tuple(tup(*uf.find((i, x))) for x in d.ob(i)))
            for i in index.objects}
    return Cocone._trusted(d, vertex, legs)


def colimit_mediator(colim: Cocone, cocone: Cocone) -> FinFunction:
    """The unique ``m`` with ``m . colim = cocone``."""
    out = {}
    for i, leg in colim.legs.items():
        for x, cls in zip(leg.dom, leg.values):
            y = cocone.legs[i](x)
            if out.setdefault(cls, y) != y:
                raise InternalError(f"cocone does not descend at class {cls}", (i, x))
    return FinFunction.from_mapping(colim.vertex, cocone.vertex, out)


def is_limiting(cone: Cone) -> bool:
    """Comparison map into the computed limit is a bijection."""
    return limit_mediator(limit(cone.diagram), cone).is_bijective()


def is_colimiting(cocone: Cocone) -> bool:
    return colimit_mediator(colimit(cocone.diagram), cocone).is_bijective()


def image_factorise(f: FinFunction):
    """``f = inj . surj`` through the image of ``f`` (named by its elements)."""
    im = f.image()
    return FinFunction(f.dom, im, f.values), FinFunction(im, f.cod, im)


@dataclass(frozen=True)
class Subobject:
    ambient: tuple
    inclusion: FinFunction

    def __post_init__(self):
        if self.inclusion.cod != tuple(self.ambient):
            raise ShapeError("inclusion does not land in the ambient set")
        if not self.inclusion.is_injective():
            raise MalformedError("subobject inclusion is not injective")

    @classmethod
    def of_subset(cls, ambient, subset):
        sub = fset(subset)
        return cls(tuple(ambient), FinFunction(sub, tuple(ambient), sub))

    def image(self):
        return self.inclusion.image()

    def __le__(self, other):
        return set(self.image()) <= set(other.image())


def subobjects(ambient):
    """Every subset of ``ambient`` as a subobject, smallest first."""
    ambient = tuple(ambient)
    for k in range(len(ambient) + 1):
        for sub in itertools.combinations(ambient, k):
            yield Subobject.of_subset(ambient, sub)


def union_subobjects(fam, ambient=None):
    """The union ``n`` of a family with the inclusions ``h_i: dom m_i -> dom n``."""
    fam = list(fam)
    if ambient is None:
        if not fam:
            raise ShapeError("the empty union needs an explicit ambient set")
        ambient = fam[0].ambient
    ambient = tuple(ambient)
    for m in fam:
        if tuple(m.ambient) != ambient:
            raise ShapeError("subobjects live in different ambient sets")
    union = fset(y for m in fam for y in m.inclusion.values)
    n = Subobject(ambient, FinFunction(union, ambient, union))
    hs = [FinFunction(m.inclusion.dom, union, m.inclusion.values) for m in fam]
    return n, hs


# -- pointwise constructions ---------------------------------------------

def evaluate(d: Functor, a) -> Functor:
    """A diagram of Set-valued functors evaluated at the object ``a``."""
    return Functor(d.source, FINSET, {i: d.ob(i)(a) for i in d.source.objects},
                   {f: d.mor(f)[a] for f in d.source.morphisms})


def _base_of(d):
    if not isinstance(d.target, FunctorCategory):
        raise ShapeError("diagram does not land in a functor category")
    return d.target.source


def pointwise_colimit(d: Functor) -> Cocone:
    base = _base_of(d)
    at = {a: colimit(evaluate(d, a)) for a in base.objects}
    action = {}
    for u, (a, a2) in base.morphisms.items():
        shifted = Cocone._trusted(at[a].diagram, at[a2].vertex,
                                  {i: FINSET.compose(at[a2].legs[i], d.ob(i).mor(u))
                                   for i in d.source.objects})
        action[u] = colimit_mediator(at[a], shifted)
    vertex = SetFunctor(base, {a: at[a].vertex for a in base.objects}, action)
    legs = {i: NatTrans(d.ob(i), vertex, {a: at[a].legs[i] for a in base.objects})
            for i in d.source.objects}
    return Cocone._trusted(d, vertex, legs)


def pointwise_limit(d: Functor) -> Cone:
    base = _base_of(d)
    at = {a: limit(evaluate(d, a)) for a in base.objects}
    action = {}
    for u, (a, a2) in base.morphisms.items():
        shifted = Cone._trusted(at[a2].diagram, at[a].vertex,
                                {j: FINSET.compose(d.ob(j).mor(u), at[a].legs[j])
                                 for j in d.source.objects})
        action[u] = limit_mediator(at[a2], shifted)
    vertex = SetFunctor(base, {a: at[a].vertex for a in base.objects}, action)
    legs = {j: NatTrans(vertex, d.ob(j), {a: at[a].legs[j] for a in base.objects})
            for j in d.source.objects}
    return Cone._trusted(d, vertex, legs)


def pointwise_colimit_mediator(colim: Cocone, cocone: Cocone) -> NatTrans:
    base = colim.vertex.source
    comps = {}
    for a in base.objects:
        ca = Cocone._trusted(evaluate(colim.diagram, a), colim.vertex(a),
                             {i: l[a] for i, l in colim.legs.items()})
        oa = Cocone._trusted(ca.diagram, cocone.vertex(a), {i: l[a] for i, l in cocone.legs.items()})
        comps[a] = colimit_mediator(ca, oa)
    return NatTrans(colim.vertex, cocone.vertex, comps)


def pointwise_limit_mediator(lim: Cone, cone: Cone) -> NatTrans:
    base = lim.vertex.source
    comps = {}
    for a in base.objects:
        la = Cone._trusted(evaluate(lim.diagram, a), lim.vertex(a),
                           {j: l[a] for j, l in lim.legs.items()})
        oa = Cone._trusted(la.diagram, cone.vertex(a), {j: l[a] for j, l in cone.legs.items()})
        comps[a] = limit_mediator(la, oa)
    return NatTrans(cone.vertex, lim.vertex, comps)


def is_pointwise_colimiting(cocone: Cocone) -> bool:
    base = _base_of(cocone.diagram)
    for a in base.objects:
        ca = Cocone._trusted(evaluate(cocone.diagram, a), cocone.vertex(a),
                             {i: l[a] for i, l in cocone.legs.items()})
        if not is_colimiting(ca):
            return False
    return True


def is_pointwise_limiting(cone: Cone) -> bool:
    base = _base_of(cone.diagram)
    for a in base.objects:
        ca = Cone._trusted(evaluate(cone.diagram, a), cone.vertex(a),
                           {j: l[a] for j, l in cone.legs.items()})
        if not is_limiting(ca):
            return False
    return True
