"""Cylinder factorisation systems as executable objects.

A :class:`CfsSpec` bundles membership predicates for cocones and cones with
a factoriser for cylinders.  The four recipes built here are the
(all cocones, limit cones) and (colimit cocones, all cones) systems, the
lift of an orthogonal factorisation system on single arrows, and the
(covering, monic) system on finite sets.  :func:`check_axioms` validates
any spec against the orthogonality oracle on a seeded budget.
"""

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from .cylinder import (Cocone, Cone, Cylinder, apply_to_cocone, apply_to_cone,
                       cocone_as_cylinder, cocone_column, compose_cylinder,
                       cone_as_cylinder, cone_row, cocones, cones, cylinders,
                       postcompose, precompose, restrict_cocone, restrict_cone,
                       single_cocone, single_cone, single_cylinder)
from .errors import (InternalError, IsbellError, LawViolation, LimitMissing,
                     NotFinalError, ShapeError)
from .fincat import (Category, FinCat, Functor, OppositeCategory,
                     disconnected_comma, index_shapes, opposite,
                     validate_functor)
from .ortho import fillers, is_orthogonal, search_space
from . import setval
from .sets import FINSET, FinFunction, FunctorCategory, canonical_set, fset


# -- limits and colimits by ambient ------------------------------------------

def _flip(d: Functor) -> Functor:
    """A diagram in ``base^op`` read as a diagram in ``base`` on the opposite index."""
    return Functor(opposite(d.source), d.target.base, d.obj_map, d.mor_map)


def find_limit(cat: Category, E: Functor) -> Cone:
    if cat == FINSET:
        return setval.limit(E)
    if isinstance(cat, FunctorCategory):
        return setval.pointwise_limit(E)
    if isinstance(cat, OppositeCategory):
        c = find_colimit(cat.base, _flip(E))
        return Cone._trusted(E, c.vertex, c.legs)
    if isinstance(cat, FinCat):
        for w in cat.objects:
            for q in cones(E, w):
                if _fincat_is_limit(q):
                    return q
        raise LimitMissing("diagram has no limit in this category")
    if hasattr(cat, "find_limit"):
        return cat.find_limit(E)
    raise LimitMissing(f"no limit procedure for {cat!r}")


def find_colimit(cat: Category, D: Functor) -> Cocone:
    if cat == FINSET:
        return setval.colimit(D)
    if isinstance(cat, FunctorCategory):
        return setval.pointwise_colimit(D)
    if isinstance(cat, OppositeCategory):
        c = find_limit(cat.base, _flip(D))
        return Cocone._trusted(D, c.vertex, c.legs)
    if isinstance(cat, FinCat):
        for v in cat.objects:
            for p in cocones(D, v):
                if _fincat_is_colimit(p):
                    return p
        raise LimitMissing("diagram has no colimit in this category")
    if hasattr(cat, "find_colimit"):
        return cat.find_colimit(D)
    raise LimitMissing(f"no colimit procedure for {cat!r}")


def limit_mediator(cat, lim: Cone, cone: Cone):
    if cat == FINSET:
        return setval.limit_mediator(lim, cone)
    if isinstance(cat, FunctorCategory):
        return setval.pointwise_limit_mediator(lim, cone)
    if isinstance(cat, OppositeCategory):
        E = _flip(lim.diagram)
        return colimit_mediator(cat.base, Cocone._trusted(E, lim.vertex, lim.legs),
                                Cocone._trusted(E, cone.vertex, cone.legs))
    for m in cat.hom(cone.vertex, lim.vertex):
        if precompose(lim, m) == cone:
            return m
    raise InternalError("no mediating map into a limit")


def colimit_mediator(cat, colim: Cocone, cocone: Cocone):
    if cat == FINSET:
        return setval.colimit_mediator(colim, cocone)
    if isinstance(cat, FunctorCategory):
        return setval.pointwise_colimit_mediator(colim, cocone)
    if isinstance(cat, OppositeCategory):
        D = _flip(colim.diagram)
        return limit_mediator(cat.base, Cone._trusted(D, colim.vertex, colim.legs),
                              Cone._trusted(D, cocone.vertex, cocone.legs))
    for m in cat.hom(colim.vertex, cocone.vertex):
        if postcompose(m, colim) == cocone:
            return m
    raise InternalError("no mediating map out of a colimit")


def is_limit(q: Cone) -> bool:
    cat = q.ambient
    if cat == FINSET:
        return setval.is_limiting(q)
    if isinstance(cat, FunctorCategory):
        return setval.is_pointwise_limiting(q)
    if isinstance(cat, OppositeCategory):
        return is_colimit(Cocone._trusted(_flip(q.diagram), q.vertex, q.legs))
    if isinstance(cat, FinCat):
        return _fincat_is_limit(q)
    return cat.inverse(limit_mediator(cat, find_limit(cat, q.diagram), q)) is not None


def is_colimit(p: Cocone) -> bool:
    cat = p.ambient
    if cat == FINSET:
        return setval.is_colimiting(p)
    if isinstance(cat, FunctorCategory):
        return setval.is_pointwise_colimiting(p)
    if isinstance(cat, OppositeCategory):
        return is_limit(Cone._trusted(_flip(p.diagram), p.vertex, p.legs))
    if isinstance(cat, FinCat):
        return _fincat_is_colimit(p)
    return cat.inverse(colimit_mediator(cat, find_colimit(cat, p.diagram), p)) is not None


def _fincat_is_limit(q: Cone) -> bool:
    cat = q.ambient
    for x in cat.objects:
        maps = cat.hom(x, q.vertex)
        induced = {precompose(q, m) for m in maps}
        if len(induced) != len(maps) or len(induced) != sum(1 for _ in cones(q.diagram, x)):
            return False
    return True


def _fincat_is_colimit(p: Cocone) -> bool:
    cat = p.ambient
    for x in cat.objects:
        maps = cat.hom(p.vertex, x)
        induced = {postcompose(m, p) for m in maps}
        if len(induced) != len(maps) or len(induced) != sum(1 for _ in cocones(p.diagram, x)):
            return False
    return True


# -- universes: what check_axioms enumerates ---------------------------------

@dataclass(frozen=True)
class Budget:
    max_index: int = 3
    max_set: int = 3
    samples: int = 200
    seed: int = 0
    # pairs whose boundary search space exceeds this are skipped and counted
    max_boundaries: int = 10 ** 5


class Universe:
    """Sampling and enumeration of objects and diagrams of an ambient category."""

    def __init__(self, ambient):
        self.ambient = ambient

    def objects(self, budget):
        raise NotImplementedError

    def random_object(self, rng, budget):
        return rng.choice(self.objects(budget))

    def random_iso(self, x, rng, budget):
        cat = self.ambient
        isos = [f for y in self.objects(budget) for f in cat.hom(x, y) if cat.is_iso(f)]
        return rng.choice(isos) if isos else cat.identity(x)

    def shapes(self, budget):
        return list(index_shapes(budget.max_index).values())

    def test_objects(self):
        return self.objects(Budget())

    def random_diagram(self, rng, budget, shape=None, tries=20):
        shape = shape if shape is not None else rng.choice(self.shapes(budget))
        for _ in range(tries):
            d = _random_free_diagram(self, shape, rng, budget)
            if d is not None:
                return d
        return None

    def random_cylinder(self, rng, budget, tries=40):
        for _ in range(tries):
            D = self.random_diagram(rng, budget)
            E = self.random_diagram(rng, budget)
            if D is None or E is None:
                continue
            for r in cylinders(D, E, rng):
                return r
        return None

    def random_cocone(self, rng, budget, tries=40):
        for _ in range(tries):
            D = self.random_diagram(rng, budget)
            if D is None:
                continue
            for p in cocones(D, self.random_object(rng, budget), rng):
                return p
        return None

    def random_cone(self, rng, budget, tries=40):
        for _ in range(tries):
            E = self.random_diagram(rng, budget)
            if E is None:
                continue
            for q in cones(E, self.random_object(rng, budget), rng):
                return q
        return None


def _generators(shape):
    ids = set(shape.identities.values())
    composite = {h for (g, f), h in shape.table.items() if g not in ids and f not in ids}
    return [m for m in shape.morphisms if m not in ids and m not in composite]


def _random_free_diagram(universe, shape, rng, budget):
    cat = universe.ambient
    om = {x: universe.random_object(rng, budget) for x in shape.objects}
    mm = {}
    for x, i in shape.identities.items():
        mm[i] = cat.identity(om[x])
    for m in _generators(shape):
        x, y = shape.morphisms[m]
        hs = cat.hom(om[x], om[y])
        if not hs:
            return None
        mm[m] = rng.choice(list(hs))
    pending = [m for m in shape.morphisms if m not in mm]
    while pending:
        progress = False
        for h in list(pending):
            for (g, f), hh in shape.table.items():
                if hh == h and g in mm and f in mm and g != h and f != h:
                    mm[h] = cat.compose(mm[g], mm[f])
                    pending.remove(h)
                    progress = True
                    break
        if not progress:
            return None
    d = Functor(shape, cat, om, mm)
    if not validate_functor(d).ok:
        return None
    return d


class FinSetUniverse(Universe):
    def __init__(self):
        super().__init__(FINSET)

    def objects(self, budget):
        return [canonical_set(n) for n in range(budget.max_set + 1)]

    def random_iso(self, x, rng, budget):
        # a bijection onto a renamed copy, so element names are exercised too
        target = fset(f"r{k}" for k in range(len(x)))
        vals = list(target)
        rng.shuffle(vals)
        return FinFunction(tuple(x), target, tuple(vals))

    def test_objects(self):
        # epis are detected by maps into a 2-element set, monos by maps out of a point
        return [canonical_set(n) for n in range(3)]


class FinCatUniverse(Universe):
    def objects(self, budget):
        return list(self.ambient.objects)

    def test_objects(self):
        return list(self.ambient.objects)


def universe_for(cat):
    if cat == FINSET:
        return FinSetUniverse()
    if isinstance(cat, FinCat):
        return FinCatUniverse(cat)
    if hasattr(cat, "universe"):
        return cat.universe()
    raise ShapeError(f"no enumeration universe for {cat!r}")


# -- specs -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CfsSpec:
    name: str
    ambient: object
    e_member: Callable
    m_member: Callable
    factorise: Callable
    universe: Universe = None

    def __repr__(self):
        return f"CfsSpec({self.name})"


@dataclass(frozen=True, eq=False)
class Ofs:
    """Orthogonal factorisation system on single arrows: ``factor(f) = (e, m)``
    with ``f = m . e``."""

    name: str
    ambient: object
    e0: Callable
    m0: Callable
    factor: Callable

    def __repr__(self):
        return f"Ofs({self.name})"


def _universe(ambient, universe):
    if universe is not None:
        return universe
    try:
        return universe_for(ambient)
    except ShapeError:
        return None


def limit_cfs(ambient, universe=None) -> CfsSpec:
    """(all cocones, limit cones)."""
    def factorise(r: Cylinder):
        q = find_limit(ambient, r.target)
        legs = {i: limit_mediator(ambient, q, cone_row(r, i)) for i in r.source.source.objects}
        return Cocone._trusted(r.source, q.vertex, legs), q

    return CfsSpec("limit", ambient, lambda p: True, is_limit, factorise,
                   _universe(ambient, universe))


def colimit_cfs(ambient, universe=None) -> CfsSpec:
    """(colimit cocones, all cones)."""
    def factorise(r: Cylinder):
        p = find_colimit(ambient, r.source)
        legs = {j: colimit_mediator(ambient, p, cocone_column(r, j)) for j in r.target.source.objects}
        return p, Cone._trusted(r.target, p.vertex, legs)

    return CfsSpec("colimit", ambient, is_colimit, lambda q: True, factorise,
                   _universe(ambient, universe))


def cocone_comparison(p: Cocone):
    """The induced map ``colim D -> V``."""
    cat = p.ambient
    return colimit_mediator(cat, find_colimit(cat, p.diagram), p)


def cone_comparison(q: Cone):
    """The induced map ``W -> lim E``."""
    cat = q.ambient
    return limit_mediator(cat, find_limit(cat, q.diagram), q)


def lift_ofs(ofs: Ofs, universe=None) -> CfsSpec:
    ambient = ofs.ambient

    def factorise(r: Cylinder):
        q = find_limit(ambient, r.target)
        ell = Cocone._trusted(r.source, q.vertex,
                              {i: limit_mediator(ambient, q, cone_row(r, i))
                               for i in r.source.source.objects})
        p = find_colimit(ambient, r.source)
        f = colimit_mediator(ambient, p, ell)
        e, m = ofs.factor(f)
        if ambient.compose(m, e) != f:
            raise LawViolation(f"{ofs.name} factoriser returned parts that do not compose")
        return postcompose(e, p), precompose(q, m)

    return CfsSpec(f"ofs:{ofs.name}", ambient,
                   lambda p: ofs.e0(cocone_comparison(p)),
                   lambda q: ofs.m0(cone_comparison(q)),
                   factorise, _universe(ambient, universe))


def is_jointly_surjective(p: Cocone) -> bool:
    hit = {y for leg in p.legs.values() for y in leg.values}
    return hit == set(p.vertex)


def is_jointly_injective(q: Cone) -> bool:
    seen = set()
    for w in q.vertex:
        key = tuple(leg(w) for leg in q.legs.values())
        if key in seen:
            return False
        seen.add(key)
    return True


def covering_mono_cfs() -> CfsSpec:
    """(covering cocones, monic cones) on finite sets."""
    def factorise(r: Cylinder):
        q = setval.limit(r.target)
        ps = {i: setval.limit_mediator(q, cone_row(r, i)) for i in r.source.source.objects}
        parts = {i: setval.image_factorise(f) for i, f in ps.items()}
        fam = [setval.Subobject(q.vertex, parts[i][1]) for i in ps]
        n, hs = setval.union_subobjects(fam, q.vertex)
        legs = {i: FINSET.compose(h, parts[i][0]) for i, h in zip(ps, hs)}
        middle = n.inclusion.dom
        return Cocone._trusted(r.source, middle, legs), precompose(q, n.inclusion)

    return CfsSpec("covering", FINSET, is_jointly_surjective, is_jointly_injective,
                   factorise, FinSetUniverse())


# -- single-arrow systems ----------------------------------------------------

def iso_all(ambient) -> Ofs:
    return Ofs("iso-all", ambient, ambient.is_iso, lambda f: True,
               lambda f: (ambient.identity(ambient.dom(f)), f))


def all_iso(ambient) -> Ofs:
    return Ofs("all-iso", ambient, lambda f: True, ambient.is_iso,
               lambda f: (f, ambient.identity(ambient.cod(f))))


def surj_inj() -> Ofs:
    return Ofs("surj-inj", FINSET, FinFunction.is_surjective, FinFunction.is_injective,
               setval.image_factorise)


def arrows_orthogonal(cat, e, m) -> bool:
    """Unique diagonal for every commutative square from ``e`` to ``m``."""
    a, b = cat.dom(e), cat.cod(e)
    c, d = cat.dom(m), cat.cod(m)
    for u in cat.hom(a, c):
        for v in cat.hom(b, d):
            if cat.compose(m, u) != cat.compose(v, e):
                continue
            n = sum(1 for x in cat.hom(b, c)
                    if cat.compose(x, e) == u and cat.compose(m, x) == v)
            if n != 1:
                return False
    return True


def _factor_in(cat: FinCat, e_set, m_set, f):
    for z in cat.objects:
        for e in cat.hom(cat.dom(f), z):
            if e not in e_set:
                continue
            for m in cat.hom(z, cat.cod(f)):
                if m in m_set and cat.compose(m, e) == f:
                    return e, m
    return None


def enumerate_ofs(cat: FinCat):
    """Every orthogonal factorisation system on a finite category."""
    mors = list(cat.morphisms)
    orth = {(e, m): arrows_orthogonal(cat, e, m) for e in mors for m in mors}
    found = []
    for k in range(len(mors) + 1):
        for subset in itertools.combinations(mors, k):
            es = frozenset(subset)
            ms = frozenset(m for m in mors if all(orth[(e, m)] for e in es))
            if frozenset(e for e in mors if all(orth[(e, m)] for m in ms)) != es:
                continue
            table = {}
            for f in mors:
                fm = _factor_in(cat, es, ms, f)
                if fm is None:
                    break
                table[f] = fm
            else:
                name = "{" + ",".join(sorted(es)) + "}"
                found.append(Ofs(name, cat, es.__contains__, ms.__contains__, table.__getitem__))
    return found


def underlying_ofs(spec: CfsSpec) -> Ofs:
    cat = spec.ambient

    def factor(f):
        p, q = spec.factorise(single_cylinder(cat, f))
        return p.legs["*"], q.legs["*"]

    return Ofs(f"underlying:{spec.name}", cat,
               lambda f: spec.e_member(single_cocone(cat, f)),
               lambda f: spec.m_member(single_cone(cat, f)), factor)


def check_ofs(ofs: Ofs, arrows):
    """Classical axioms on the given arrows: isos in both classes, closure
    under composition, orthogonality and factorisation."""
    cat = ofs.ambient
    arrows = list(arrows)
    es = [f for f in arrows if ofs.e0(f)]
    ms = [f for f in arrows if ofs.m0(f)]
    for f in arrows:
        if cat.is_iso(f) and not (ofs.e0(f) and ofs.m0(f)):
            return Report(False, "ofs", f"isomorphism {f!r} missing from a class", (f,))
        e, m = ofs.factor(f)
        if cat.compose(m, e) != f or not ofs.e0(e) or not ofs.m0(m):
            return Report(False, "ofs", f"bad factorisation of {f!r}", (f,))
    for g, f in itertools.product(arrows, repeat=2):
        if cat.dom(g) != cat.cod(f):
            continue
        gf = cat.compose(g, f)
        if ofs.e0(f) and ofs.e0(g) and not ofs.e0(gf):
            return Report(False, "ofs", "left class not closed under composition", (g, f))
        if ofs.m0(f) and ofs.m0(g) and not ofs.m0(gf):
            return Report(False, "ofs", "right class not closed under composition", (g, f))
    for e in es:
        for m in ms:
            if not arrows_orthogonal(cat, e, m):
                return Report(False, "ofs", "left arrow not orthogonal to right arrow", (e, m))
    return Report(True)


# -- axiom checking ----------------------------------------------------------

@dataclass(frozen=True)
class Report:
    ok: bool
    axiom: str = ""
    message: str = ""
    witness: tuple = ()
    counts: dict = field(default_factory=dict, compare=False)


def _pools(spec, budget, rng):
    """Sampled E-cocones and M-cones: factorisation legs plus random members."""
    uni = spec.universe
    es, ms, facts = [], [], []
    for _ in range(budget.samples):
        r = uni.random_cylinder(rng, budget)
        if r is None:
            continue
        p, q = spec.factorise(r)
        facts.append((r, p, q))
        es.append(p)
        ms.append(q)
    for _ in range(budget.samples):
        p = uni.random_cocone(rng, budget)
        if p is not None and spec.e_member(p):
            es.append(p)
        q = uni.random_cone(rng, budget)
        if q is not None and spec.m_member(q):
            ms.append(q)
    return es, ms, facts


def check_axioms(spec: CfsSpec, budget: Budget = Budget()) -> Report:
    """Axioms (i)-(iii) on a seeded sample; the first failure is reported."""
    if spec.universe is None:
        raise ShapeError(f"{spec.name} has no enumeration universe")
    rng = random.Random(budget.seed)
    uni = spec.universe
    counts = {"factorised": 0, "iso-checks": 0, "orthogonality-pairs": 0, "skipped-pairs": 0}
    try:
        es, ms, facts = _pools(spec, budget, rng)
    except IsbellError as exc:
        return Report(False, "iii", f"factoriser failed: {exc}", (), counts)
    for r, p, q in facts:
        counts["factorised"] += 1
        if p.diagram != r.source or q.diagram != r.target or p.vertex != q.vertex:
            return Report(False, "iii", "factorisation has the wrong shape", (r,), counts)
        if compose_cylinder(q, p) != r:
            return Report(False, "iii", "factorisation does not recompose", (r,), counts)
        if not spec.e_member(p):
            return Report(False, "iii", "left part is not in E", (r, p), counts)
        if not spec.m_member(q):
            return Report(False, "iii", "right part is not in M", (r, q), counts)
    for p in es[:budget.samples]:
        counts["iso-checks"] += 1
        if not spec.e_member(postcompose(uni.random_iso(p.vertex, rng, budget), p)):
            return Report(False, "i", "E not closed under isomorphism", (p,), counts)
    for q in ms[:budget.samples]:
        counts["iso-checks"] += 1
        iso = uni.random_iso(q.vertex, rng, budget)
        inv = spec.ambient.inverse(iso)
        if not spec.m_member(precompose(q, inv)):
            return Report(False, "i", "M not closed under isomorphism", (q,), counts)
    if es and ms:
        for _ in range(budget.samples):
            p, q = rng.choice(es), rng.choice(ms)
            if search_space(p, q) > budget.max_boundaries:
                counts["skipped-pairs"] += 1
                continue
            counts["orthogonality-pairs"] += 1
            cert = is_orthogonal(p, q)
            if not cert:
                return Report(False, "ii", "E-cocone not orthogonal to M-cone",
                              (p, q, cert.witness), counts)
    return Report(True, "", "", (), counts)


def check_saturation(spec: CfsSpec, budget: Budget = Budget()) -> Report:
    """Empirical check that E is exactly the left complement of M and M the
    right complement of E: a non-member is refuted by the M-part (resp.
    E-part) of its own factorisation."""
    rng = random.Random(budget.seed)
    uni = spec.universe
    counts = {"cocones": 0, "cones": 0, "skipped": 0}
    for _ in range(budget.samples):
        p = uni.random_cocone(rng, budget)
        if p is not None:
            _, q = spec.factorise(cocone_as_cylinder(p))
            if search_space(p, q) > budget.max_boundaries:
                counts["skipped"] += 1
                p = None
        if p is not None:
            counts["cocones"] += 1
            if bool(is_orthogonal(p, q)) != bool(spec.e_member(p)):
                return Report(False, "saturation", "E differs from the complement of M", (p,), counts)
        q = uni.random_cone(rng, budget)
        if q is not None:
            p2, _ = spec.factorise(cone_as_cylinder(q))
            if search_space(p2, q) > budget.max_boundaries:
                counts["skipped"] += 1
                q = None
        if q is not None:
            counts["cones"] += 1
            if bool(is_orthogonal(p2, q)) != bool(spec.m_member(q)):
                return Report(False, "saturation", "M differs from the complement of E", (q,), counts)
    return Report(True, counts=counts)


@dataclass(frozen=True)
class IsoCertificate:
    filler: object
    inverse: object


def essential_uniqueness(spec: CfsSpec, r: Cylinder, first, second) -> IsoCertificate:
    """The comparison between two factorisations of ``r`` and its inverse."""
    cat = spec.ambient
    (p, q), (p2, q2) = first, second
    for pp, qq in (first, second):
        if compose_cylinder(qq, pp) != r:
            raise ShapeError("a factorisation does not recompose to r")
        if not (spec.e_member(pp) and spec.m_member(qq)):
            raise ShapeError("a factorisation is not an (E, M)-factorisation")
    js = fillers(p, p2, q, q2)
    back = fillers(p2, p, q2, q)
    if len(js) != 1 or len(back) != 1:
        raise LawViolation(f"expected unique fillers, found {len(js)} and {len(back)}",
                           (len(js), len(back)))
    j, jb = js[0], back[0]
    if cat.compose(jb, j) != cat.identity(p.vertex) or cat.compose(j, jb) != cat.identity(p2.vertex):
        raise InternalError("fillers are not mutually inverse")
    return IsoCertificate(j, jb)


def preserves_classes(f, src: CfsSpec, dst: CfsSpec, mode="both", budget: Budget = Budget()) -> Report:
    """Whether ``f`` carries E-cocones to E-cocones and/or M-cones to M-cones
    on a seeded sample of the source."""
    rng = random.Random(budget.seed)
    es, ms, _ = _pools(src, budget, rng)
    if mode in ("both", "E-only"):
        for p in es:
            if not dst.e_member(apply_to_cocone(f, p)):
                return Report(False, "E", "image of an E-cocone is not in E", (p,))
    if mode in ("both", "M-only"):
        for q in ms:
            if not dst.m_member(apply_to_cone(f, q)):
                return Report(False, "M", "image of an M-cone is not in M", (q,))
    if mode not in ("both", "E-only", "M-only"):
        raise ValueError(f"unknown mode {mode!r}")
    return Report(True, counts={"cocones": len(es), "cones": len(ms)})


def extended_membership(spec: CfsSpec, p: Cocone, h, second=None) -> bool:
    """``pH`` in E for a final ``H`` (independent of the witness)."""
    verdicts = []
    for w in [h] + ([second] if second is not None else []):
        bad = disconnected_comma(w, "under")
        if bad is not None:
            raise NotFinalError(f"witness is not final at {bad}", (bad,))
        verdicts.append(bool(spec.e_member(restrict_cocone(p, w))))
    if len(set(verdicts)) != 1:
        raise InternalError("final witnesses disagree on membership")
    return verdicts[0]


def extended_cone_membership(spec: CfsSpec, q: Cone, k, second=None) -> bool:
    verdicts = []
    for w in [k] + ([second] if second is not None else []):
        bad = disconnected_comma(w, "over")
        if bad is not None:
            raise NotFinalError(f"witness is not initial at {bad}", (bad,))
        verdicts.append(bool(spec.m_member(restrict_cone(q, w))))
    if len(set(verdicts)) != 1:
        raise InternalError("initial witnesses disagree on membership")
    return verdicts[0]


def round_trip(spec: CfsSpec, budget: Budget = Budget()) -> Report:
    """Rebuild ``spec`` from its underlying single-arrow system and compare
    memberships on a sample."""
    rebuilt = lift_ofs(underlying_ofs(spec), spec.universe)
    rng = random.Random(budget.seed)
    uni = spec.universe
    n = 0
    for _ in range(budget.samples):
        p = uni.random_cocone(rng, budget)
        if p is not None:
            n += 1
            if bool(spec.e_member(p)) != bool(rebuilt.e_member(p)):
                return Report(False, "round-trip", "E memberships differ", (p,))
        q = uni.random_cone(rng, budget)
        if q is not None:
            n += 1
            if bool(spec.m_member(q)) != bool(rebuilt.m_member(q)):
                return Report(False, "round-trip", "M memberships differ", (q,))
    return Report(True, counts={"compared": n})


# -- joint epi/mono ----------------------------------------------------------

def is_jointly_epic(p: Cocone, objects) -> bool:
    cat = p.ambient
    for u in objects:
        seen = {}
        for f in cat.hom(p.vertex, u):
            key = tuple(cat.sort_key(cat.compose(f, l)) for l in p.legs.values())
            if key in seen:
                return False
            seen[key] = f
    return True


def is_jointly_monic(q: Cone, objects) -> bool:
    cat = q.ambient
    for u in objects:
        seen = {}
        for f in cat.hom(u, q.vertex):
            key = tuple(cat.sort_key(cat.compose(l, f)) for l in q.legs.values())
            if key in seen:
                return False
            seen[key] = f
    return True


def _pool_diagrams(universe: Universe, shape, pool):
    """Every diagram of ``shape`` whose objects come from ``pool``."""
    cat = universe.ambient
    gens = _generators(shape)
    for objs in itertools.product(range(len(pool)), repeat=len(shape.objects)):
        om = {x: pool[k] for x, k in zip(shape.objects, objs)}
        homs = [list(cat.hom(om[shape.morphisms[m][0]], om[shape.morphisms[m][1]])) for m in gens]
        for pick in itertools.product(*homs):
            mm = {i: cat.identity(om[x]) for x, i in shape.identities.items()}
            mm.update(zip(gens, pick))
            for _ in shape.morphisms:
                for (g, f), h in shape.table.items():
                    if h not in mm and g in mm and f in mm:
                        mm[h] = cat.compose(mm[g], mm[f])
            if len(mm) < len(shape.morphisms):
                continue
            d = Functor(shape, cat, om, mm)
            if validate_functor(d).ok:
                yield d


def all_diagrams(universe: Universe, budget: Budget):
    """Exhaustive diagrams for finite universes; otherwise every diagram
    over the universe's object pool."""
    from .fincat import functors
    from .sets import all_set_functors
    for shape in universe.shapes(budget):
        if universe.ambient == FINSET:
            yield from all_set_functors(shape, budget.max_set)
        elif isinstance(universe.ambient, FinCat):
            yield from functors(shape, universe.ambient)
        else:
            yield from _pool_diagrams(universe, shape, universe.objects(budget))


def joint_epi_mono_check(spec: CfsSpec, budget: Budget = Budget()) -> Report:
    """Every E-cocone jointly epic and every M-cone jointly monic, over all
    diagrams and vertices in budget."""
    uni = spec.universe
    tests = uni.test_objects()
    vertices = uni.objects(budget)
    n_e = n_m = 0
    for d in all_diagrams(uni, budget):
        for v in vertices:
            for p in cocones(d, v):
                if spec.e_member(p):
                    n_e += 1
                    if not is_jointly_epic(p, tests):
                        return Report(False, "E", "E-cocone is not jointly epic", (p,))
            for q in cones(d, v):
                if spec.m_member(q):
                    n_m += 1
                    if not is_jointly_monic(q, tests):
                        return Report(False, "M", "M-cone is not jointly monic", (q,))
    return Report(True, counts={"E-cocones": n_e, "M-cones": n_m})
