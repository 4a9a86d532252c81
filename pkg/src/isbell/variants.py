"""Restricted envelopes and the factorisation variants for arrows, arrays
and sources.

A :class:`WeightClass` decides membership of a presheaf (``side="plus"``)
or a copresheaf (``side="minus"``).  Sums and products are taken in the
presheaf category and in the reversed copresheaf category respectively, so
that a sum of copresheaves is a pointwise product of corepresentables.
"""

import itertools
from dataclasses import dataclass

from ._search import UnionFind
from .cfs import covering_mono_cfs, surj_inj
from .cylinder import precompose
from .envelope import IsbellObject, enumerate_xi, isbell_hom, yoneda
from .errors import InternalError, ShapeError
from .fincat import FinCat, Functor, disconnected_comma, functors, opposite
from .sets import (FINSET, FinFunction, FunctorCategory, SetFunctor,
                   all_set_functors, elements, hom_functor, representable,
                   set_functor_isomorphisms)
from . import setval

WEIGHT_NAMES = ("representables", "finite-coproducts-of-representables",
                "finite-products-of-representables", "all-finite")


def is_representable(F: SetFunctor):
    """A generating element ``(c, x)`` with ``u -> F(u)(x)`` bijective on
    every ``hom(c, d)``, or None."""
    src = F.source
    for c in src.objects:
        for x in F(c):
            if _generates_freely(F, c, x):
                return (c, x)
    return None


def _generates_freely(F, c, x, part=None):
    src = F.source
    for d in src.objects:
        hs = src.hom(c, d)
        hit = [F.act(u, x) for u in hs]
        target = F(d) if part is None else [y for y in F(d) if (d, y) in part]
        if len(set(hit)) != len(hs) or set(hit) != set(target):
            return False
    return True


def is_sum_of_representables(F: SetFunctor):
    """Generators, one per connected component of the elements, or None."""
    src = F.source
    uf = UnionFind((a, x) for a in src.objects for x in F(a))
    for u, (a, b) in src.morphisms.items():
        for x in F(a):
            uf.union((a, x), (b, F.act(u, x)))
    gens = []
    for members in uf.classes().values():
        part = set(members)
        gen = next((m for m in members if _generates_freely(F, m[0], m[1], part)), None)
        if gen is None:
            return None
        gens.append(gen)
    return sorted(gens)


def product_of_reps(source: FinCat, objs) -> SetFunctor:
    """Pointwise product of the functors ``source(c, -)``."""
    from .fincat import discrete
    index = discrete([str(k) for k in range(len(objs))])
    cat = FunctorCategory(source)
    reps = {str(k): hom_functor(source, c) for k, c in enumerate(objs)}
    d = Functor(index, cat, reps, {index.identity(k): setval_identity(reps[k]) for k in reps})
    return setval.pointwise_limit(d).vertex


def setval_identity(F):
    from .sets import identity_nat
    return identity_nat(F)


def is_product_of_representables(F: SetFunctor, max_factors=None):
    """A list of objects whose corepresentables have pointwise product
    isomorphic to ``F``, or None."""
    src = F.source
    sizes = {a: len(F(a)) for a in src.objects}
    biggest = max(sizes.values(), default=0)
    if max_factors is None:
        max_factors = len(src.objects) + max(1, biggest).bit_length()
    for n in range(max_factors + 1):
        for objs in itertools.combinations_with_replacement(src.objects, n):
            prof = {a: 1 for a in src.objects}
            for c in objs:
                for a in src.objects:
                    prof[a] *= len(src.hom(c, a))
            if prof != sizes:
                continue
            if set_functor_isomorphisms(product_of_reps(src, objs), F, limit=1):
                return list(objs)
    return None


@dataclass(frozen=True)
class WeightClass:
    name: str

    def __post_init__(self):
        if self.name not in WEIGHT_NAMES:
            raise ValueError(f"unknown weight class {self.name!r}")

    def contains(self, F: SetFunctor, side="plus") -> bool:
        if self.name == "all-finite":
            return True
        if self.name == "representables":
            return is_representable(F) is not None
        sums = self.name == "finite-coproducts-of-representables"
        # sums of copresheaves in the reversed category are pointwise products
        if sums == (side == "plus"):
            return is_sum_of_representables(F) is not None
        return is_product_of_representables(F) is not None


REPRESENTABLES = WeightClass("representables")
SUMS = WeightClass("finite-coproducts-of-representables")
PRODUCTS = WeightClass("finite-products-of-representables")
ALL_FINITE = WeightClass("all-finite")


def restricted_envelope_member(x: IsbellObject, phi: WeightClass, psi: WeightClass) -> bool:
    return phi.contains(x.plus, "plus") and psi.contains(x.minus, "minus")


# -- arrows --------------------------------------------------------------------

def arrow_object(c: FinCat, theta) -> IsbellObject:
    """``(C(-, a), C(b, -), (v, u) -> v . theta . u)`` for ``theta: a -> b``."""
    a, b = c.morphisms[theta]
    plus, minus = representable(c, a), hom_functor(c, b)
    xi = {(s, t, v, u): c.compose(v, c.compose(theta, u))
          for s in c.objects for t in c.objects for v in minus(t) for u in plus(s)}
    return IsbellObject(c, plus, minus, xi)


def commutative_squares(c: FinCat, theta, theta2):
    """Pairs ``(u, v)`` with ``theta2 . u = v . theta``."""
    a, b = c.morphisms[theta]
    a2, b2 = c.morphisms[theta2]
    return [(u, v) for u in c.hom(a, a2) for v in c.hom(b, b2)
            if c.compose(theta2, u) == c.compose(v, theta)]


def square_morphism(c, obj, obj2, u, v):
    from .envelope import IsbellMorphism
    from .fincat import NatTrans
    plus = {s: FinFunction(obj.plus(s), obj2.plus(s), tuple(c.compose(u, x) for x in obj.plus(s)))
            for s in c.objects}
    minus = {t: FinFunction(obj2.minus(t), obj.minus(t), tuple(c.compose(n, v) for n in obj2.minus(t)))
             for t in c.objects}
    return IsbellMorphism(obj, obj2, NatTrans(obj.plus, obj2.plus, plus),
                          NatTrans(obj2.minus, obj.minus, minus))


@dataclass
class ArrowCertificate:
    objects: int
    arrows: int
    pairs: int
    squares: int
    ok: bool


def arrow_category_check(c: FinCat) -> ArrowCertificate:
    """Members with representable parts correspond to arrows of ``c`` and
    their morphisms to commutative squares."""
    objs = {}
    for a in c.objects:
        for b in c.objects:
            plus, minus = representable(c, a), hom_functor(c, b)
            tables = enumerate_xi(c, plus, minus)
            thetas = []
            for xi in tables:
                theta = xi[(a, b, c.identity(b), c.identity(a))]
                obj = IsbellObject(c, plus, minus, xi)
                if obj != arrow_object(c, theta):
                    raise InternalError(f"member over ({a}, {b}) is not determined by its diagonal", (a, b))
                if not restricted_envelope_member(obj, REPRESENTABLES, REPRESENTABLES):
                    raise InternalError("arrow object is not representable on both sides", (theta,))
                thetas.append(theta)
            if sorted(thetas) != sorted(c.hom(a, b)):
                raise InternalError(f"members over ({a}, {b}) do not match hom({a}, {b})", (a, b))
            for theta in thetas:
                objs[theta] = arrow_object(c, theta)
    for x in c.objects:
        if objs[c.identity(x)] != yoneda(c, x):
            raise InternalError(f"identity arrow at {x} does not give the Yoneda object", (x,))
    squares = 0
    for t1, o1 in objs.items():
        for t2, o2 in objs.items():
            homs = isbell_hom(o1, o2)
            sq = commutative_squares(c, t1, t2)
            images = {square_morphism(c, o1, o2, u, v) for u, v in sq}
            if len(images) != len(sq) or images != set(homs):
                raise InternalError(f"homs from {t1} to {t2} do not match squares", (t1, t2))
            squares += len(sq)
    _check_iso_classes(c, objs)
    return ArrowCertificate(len(objs), len(c.morphisms), len(objs) ** 2, squares, True)


def _check_iso_classes(c, objs):
    # arrow objects are isomorphic exactly when the arrows are
    env_iso = {}
    for t1, o1 in objs.items():
        for t2, o2 in objs.items():
            sq = commutative_squares(c, t1, t2)
            arrow_iso = any(c.is_iso(u) and c.is_iso(v) for u, v in sq)
            from .envelope import IsbellEnvelope
            env = IsbellEnvelope(c)
            has = any(env.is_iso(f) for f in isbell_hom(o1, o2))
            if has != arrow_iso:
                raise InternalError("isomorphism classes do not match", (t1, t2))
            env_iso[(t1, t2)] = has
    return env_iso


# -- arrays and sources --------------------------------------------------------

def array_factorise(r, base=None):
    """Factorise a cylinder between discrete diagrams with ``base``
    (covering/monic on finite sets by default)."""
    if not (r.source.source.is_discrete() and r.target.source.is_discrete()):
        raise ShapeError("arrays need discrete index categories")
    base = base or covering_mono_cfs()
    return base.factorise(r)


def source_factorise(r, ofs=None):
    """Factorise a discrete cone out of one object as a single left-class
    map followed by a right-class cone; returns ``(e, cone)``."""
    if len(r.source.source.objects) != 1:
        raise ShapeError("a source has a one-object domain")
    if not r.target.source.is_discrete():
        raise ShapeError("a source has a discrete codomain")
    ofs = ofs or surj_inj()
    (i,) = r.source.source.objects
    from .cylinder import cone_row
    from .cfs import find_limit, limit_mediator
    cat = r.ambient
    lim = find_limit(cat, r.target)
    pairing = limit_mediator(cat, lim, cone_row(r, i))
    e, m = ofs.factor(pairing)
    if cat.compose(m, e) != pairing:
        raise InternalError("factoriser does not compose")
    return e, precompose(lim, m)


# -- Phi-diagrams --------------------------------------------------------------

def weight_candidates(c: FinCat, weight: WeightClass, bound: int):
    """Presheaves of the class with at most ``bound`` generators or elements."""
    op = opposite(c)
    if weight.name in ("representables", "finite-coproducts-of-representables"):
        top = 1 if weight.name == "representables" else bound
        for n in range(1, top + 1):
            for objs in itertools.combinations_with_replacement(c.objects, n):
                yield _sum_of_reps(c, objs)
    elif weight.name == "finite-products-of-representables":
        for n in range(0, bound + 1):
            for objs in itertools.combinations_with_replacement(c.objects, n):
                yield product_of_reps(op, objs)
    else:
        yield from all_set_functors(op, bound)


def _sum_of_reps(c, objs):
    from .fincat import discrete
    index = discrete([str(k) for k in range(len(objs))])
    cat = FunctorCategory(opposite(c))
    reps = {str(k): representable(c, o) for k, o in enumerate(objs)}
    d = Functor(index, cat, reps, {index.identity(k): setval_identity(reps[k]) for k in reps})
    return setval.pointwise_colimit(d).vertex


def is_phi_diagram(d: Functor, weight: WeightClass, bound: int = 2):
    """``("yes", (phi, H))`` when ``d`` factors through the projection of
    ``el phi`` along a final ``H``; otherwise ``("unknown", None)``."""
    c = d.target
    for phi in weight_candidates(c, weight, bound):
        el, proj = _elements_over_base(phi)
        for H in functors(d.source, el):
            if any(proj.ob(H.ob(i)) != d.ob(i) for i in d.source.objects):
                continue
            if any(proj.mor(H.mor(m)) != d.mor(m) for m in d.source.morphisms):
                continue
            if disconnected_comma(H, "under") is None:
                return "yes", (phi, H)
    return "unknown", None


def _elements_over_base(phi):
    el, proj = elements(phi)
    el_c = opposite(el)
    return el_c, Functor(el_c, opposite(phi.source), proj.obj_map, proj.mor_map)
