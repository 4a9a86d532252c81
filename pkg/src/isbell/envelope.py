"""The Isbell envelope of a finite category as a hom-theory.

An object is a presheaf ``plus`` (a SetFunctor on the opposite category),
a copresheaf ``minus`` (a SetFunctor on the category) and an evaluation
``xi[(a, b, m, x)]`` in ``C(a, b)`` for ``m`` in ``minus(b)`` and ``x`` in
``plus(a)``.  A morphism ``X -> Y`` is a pair of natural transformations
``plus: X.plus -> Y.plus`` and ``minus: Y.minus -> X.minus`` compatible
with the evaluations.  The envelope itself is never materialised; homs are
enumerated on demand.
"""

import random

from ._search import Problem
from .cfs import Budget, CfsSpec, Universe, find_limit, limit_mediator
from .cylinder import Cocone, Cone, Cylinder, cocone_column, compose_cylinder
from .errors import InternalError, LawViolation, MalformedError, ShapeError
from .fincat import (Category, FinCat, Functor, MapFunctor, NatTrans, Report,
                     PASS, OppositeCategory, opposite)
from .sets import (FINSET, FinFunction, FunctorCategory, SetFunctor, fset,
                   hom_functor, natural_transformations, representable,
                   set_functors)
from . import setval


class IsbellObject:
    def __init__(self, base: FinCat, plus: SetFunctor, minus: SetFunctor, xi, check=True):
        self.base = base
        self.plus = plus
        self.minus = minus
        self.xi = {k: xi[k] for k in sorted(xi)}
        self._key = None
        if check:
            validate_object(self).raise_for_failure()

    def __call__(self, a, b, m, x):
        return self.xi[(a, b, m, x)]

    def key(self):
        if self._key is None:
            self._key = (self.base, self.plus, self.minus, tuple(self.xi.items()))
        return self._key

    def __eq__(self, other):
        return isinstance(other, IsbellObject) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        sp = {a: len(self.plus(a)) for a in self.base.objects}
        sm = {b: len(self.minus(b)) for b in self.base.objects}
        return f"IsbellObject(plus={sp}, minus={sm})"


def validate_object(x: IsbellObject) -> Report:
    c = x.base
    if x.plus.source != opposite(c):
        return Report(False, "malformed", "plus part is not a presheaf on the base")
    if x.minus.source != c:
        return Report(False, "malformed", "minus part is not a copresheaf on the base")
    expected = {(a, b, m, e) for a in c.objects for b in c.objects
                for m in x.minus(b) for e in x.plus(a)}
    if set(x.xi) != expected:
        extra = sorted(set(x.xi) - expected)
        missing = sorted(expected - set(x.xi))
        w = (missing or extra)[0]
        return Report(False, "malformed", f"evaluation table {'misses' if missing else 'has extra'} {w}", w)
    for (a, b, m, e), u in x.xi.items():
        if c.morphisms.get(u) != (a, b):
            return Report(False, "law", f"evaluation at {(a, b, m, e)} is not in hom({a}, {b})", (a, b, m, e))
    for u, (a2, a) in c.morphisms.items():
        # u: a2 -> a acts on the presheaf as plus(a) -> plus(a2)
        act = x.plus.mor(u)
        for b in c.objects:
            for m in x.minus(b):
                for e in x.plus(a):
                    if x.xi[(a2, b, m, act(e))] != c.compose(x.xi[(a, b, m, e)], u):
                        return Report(False, "law", f"evaluation not natural in a at {u}", (a, b, m, e))
    for v, (b, b2) in c.morphisms.items():
        act = x.minus.mor(v)
        for a in c.objects:
            for m in x.minus(b):
                for e in x.plus(a):
                    if x.xi[(a, b2, act(m), e)] != c.compose(v, x.xi[(a, b, m, e)]):
                        return Report(False, "law", f"evaluation not natural in b at {v}", (a, b, m, e))
    return PASS


class IsbellMorphism:
    def __init__(self, source: IsbellObject, target: IsbellObject, plus: NatTrans, minus: NatTrans,
                 check=True):
        self.source = source
        self.target = target
        self.plus = plus
        self.minus = minus
        self._key = None
        if check:
            validate_morphism(self).raise_for_failure()

    def key(self):
        if self._key is None:
            self._key = (self.source, self.target, self.plus, self.minus)
        return self._key

    def __eq__(self, other):
        return isinstance(other, IsbellMorphism) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def sort_key(self):
        return (tuple(c.values for c in self.plus.components.values()),
                tuple(c.values for c in self.minus.components.values()))

    def __repr__(self):
        return f"IsbellMorphism(plus={self.plus.components}, minus={self.minus.components})"


def validate_morphism(f: IsbellMorphism) -> Report:
    X, Y = f.source, f.target
    if X.base != Y.base:
        return Report(False, "malformed", "objects live over different categories")
    if f.plus.source != X.plus or f.plus.target != Y.plus:
        return Report(False, "malformed", "plus part has the wrong boundary")
    if f.minus.source != Y.minus or f.minus.target != X.minus:
        return Report(False, "malformed", "minus part has the wrong boundary")
    try:
        f.plus.check()
        f.minus.check()
    except LawViolation as exc:
        return Report(False, "law", f"component is not natural: {exc}", exc.witness)
    c = X.base
    for a in c.objects:
        fp = f.plus[a]
        for b in c.objects:
            fm = f.minus[b]
            for n in Y.minus(b):
                for x in X.plus(a):
                    if Y.xi[(a, b, n, fp(x))] != X.xi[(a, b, fm(n), x)]:
                        return Report(False, "law", f"compatibility square fails at {(a, b, n, x)}",
                                      (a, b, n, x))
    return PASS


class IsbellEnvelope(Category):
    """Hom-theory of the envelope over a finite base category."""

    def __init__(self, base: FinCat):
        self.base = base

    def __eq__(self, other):
        return isinstance(other, IsbellEnvelope) and other.base == self.base

    def __hash__(self):
        return hash(("Isbell", self.base))

    def __repr__(self):
        return f"IsbellEnvelope({self.base!r})"

    def hom(self, x, y):
        return isbell_hom(x, y)

    def identity(self, x):
        return identity_morphism(x)

    def compose(self, g, f):
        return compose(g, f)

    def dom(self, f):
        return f.source

    def cod(self, f):
        return f.target

    def inverse(self, f):
        plus, minus = {}, {}
        for a, comp in f.plus.components.items():
            inv = FINSET.inverse(comp)
            if inv is None:
                return None
            plus[a] = inv
        for b, comp in f.minus.components.items():
            inv = FINSET.inverse(comp)
            if inv is None:
                return None
            minus[b] = inv
        return IsbellMorphism(f.target, f.source, NatTrans(f.target.plus, f.source.plus, plus),
                              NatTrans(f.source.minus, f.target.minus, minus), check=False)

    def sort_key(self, f):
        return f.sort_key()

    def universe(self, budget=None):
        return EnvelopeUniverse(self)


def identity_morphism(x: IsbellObject) -> IsbellMorphism:
    return IsbellMorphism(x, x, setval_identity(x.plus), setval_identity(x.minus), check=False)


def setval_identity(F):
    return NatTrans(F, F, {a: FinFunction.identity(F(a)) for a in F.source.objects})


def compose(g: IsbellMorphism, f: IsbellMorphism) -> IsbellMorphism:
    """``g`` after ``f``: plus parts compose forwards, minus parts backwards."""
    if f.target != g.source:
        raise ShapeError("morphisms are not composable")
    plus = {a: FINSET.compose(g.plus[a], f.plus[a]) for a in f.plus.components}
    minus = {b: FINSET.compose(f.minus[b], g.minus[b]) for b in f.minus.components}
    return IsbellMorphism(f.source, g.target, NatTrans(f.source.plus, g.target.plus, plus),
                          NatTrans(g.target.minus, f.source.minus, minus), check=False)


def hom_problem(x: IsbellObject, y: IsbellObject):
    if x.base != y.base:
        raise ShapeError("objects live over different categories")
    c = x.base
    prob = Problem()
    _add_nat(prob, x.plus, y.plus, "+")
    _add_nat(prob, y.minus, x.minus, "-")
    for a in c.objects:
        for b in c.objects:
            for n in y.minus(b):
                for e in x.plus(a):
                    prob.add_constraint([("+", a, e), ("-", b, n)],
                                        lambda fx, fn, a=a, b=b, n=n, e=e:
                                        y.xi[(a, b, n, fx)] == x.xi[(a, b, fn, e)])
    return prob


def _add_nat(prob, F, G, tag):
    src = F.source
    for a in src.objects:
        for e in F(a):
            prob.add_variable((tag, a, e), G(a))
    ids = set(src.identities.values())
    for m, (a, b) in src.morphisms.items():
        if m in ids:
            continue
        Fm, Gm = F.mor(m), G.mor(m)
        for e in F(a):
            prob.add_constraint([(tag, a, e), (tag, b, Fm(e))], lambda s, t, Gm=Gm: Gm(s) == t)


def _morphism_from(x, y, sol):
    c = x.base
    plus = {a: FinFunction(x.plus(a), y.plus(a), tuple(sol[("+", a, e)] for e in x.plus(a)))
            for a in c.objects}
    minus = {b: FinFunction(y.minus(b), x.minus(b), tuple(sol[("-", b, n)] for n in y.minus(b)))
             for b in c.objects}
    return IsbellMorphism(x, y, NatTrans(x.plus, y.plus, plus), NatTrans(y.minus, x.minus, minus),
                          check=False)


def isbell_hom(x: IsbellObject, y: IsbellObject, rng=None):
    """Every morphism ``x -> y``, canonically ordered."""
    out = [_morphism_from(x, y, sol) for sol in hom_problem(x, y).solutions(rng)]
    if rng is None:
        out.sort(key=IsbellMorphism.sort_key)
    return out


def brute_force_hom(x: IsbellObject, y: IsbellObject):
    """Pairs of natural transformations filtered by the compatibility square."""
    out = []
    for fp in natural_transformations(x.plus, y.plus):
        for fm in natural_transformations(y.minus, x.minus):
            f = IsbellMorphism(x, y, fp, fm, check=False)
            if validate_morphism(f).ok:
                out.append(f)
    return sorted(out, key=IsbellMorphism.sort_key)


# -- Yoneda, projections ----------------------------------------------------

def yoneda(c: FinCat, obj) -> IsbellObject:
    if obj not in c.objects:
        raise ShapeError(f"unknown object {obj!r}")
    plus = representable(c, obj)
    minus = hom_functor(c, obj)
    xi = {(a, b, m, e): c.compose(m, e) for a in c.objects for b in c.objects
          for m in minus(b) for e in plus(a)}
    return IsbellObject(c, plus, minus, xi)


def yoneda_morphism(c: FinCat, u) -> IsbellMorphism:
    """``Y u: Y s -> Y t`` for ``u: s -> t``."""
    s, t = c.morphisms[u]
    ys, yt = yoneda(c, s), yoneda(c, t)
    plus = {a: FinFunction(ys.plus(a), yt.plus(a), tuple(c.compose(u, e) for e in ys.plus(a)))
            for a in c.objects}
    minus = {b: FinFunction(yt.minus(b), ys.minus(b), tuple(c.compose(n, u) for n in yt.minus(b)))
             for b in c.objects}
    return IsbellMorphism(ys, yt, NatTrans(ys.plus, yt.plus, plus), NatTrans(yt.minus, ys.minus, minus))


def presheaves(c: FinCat):
    return FunctorCategory(opposite(c))


def copresheaves(c: FinCat):
    """Copresheaves with arrows reversed, so morphisms are natural maps the other way."""
    return OppositeCategory(FunctorCategory(c))


def pi1(v):
    """Presheaf part of an object or morphism."""
    return v.plus


def pi2(v):
    return v.minus


def pi1_functor(c: FinCat):
    return MapFunctor(IsbellEnvelope(c), presheaves(c), pi1, pi1, "pi1")


def pi2_functor(c: FinCat):
    return MapFunctor(IsbellEnvelope(c), copresheaves(c), pi2, pi2, "pi2")


def yoneda_functor(c: FinCat) -> Functor:
    env = IsbellEnvelope(c)
    return Functor(c, env, {x: yoneda(c, x) for x in c.objects},
                   {u: yoneda_morphism(c, u) for u in c.morphisms})


# -- maps from and to representables ------------------------------------------

def from_plus_element(x: IsbellObject, a, e) -> IsbellMorphism:
    """The morphism ``Y a -> x`` determined by ``e`` in ``x.plus(a)``."""
    c = x.base
    ya = yoneda(c, a)
    plus = {a2: FinFunction(ya.plus(a2), x.plus(a2), tuple(x.plus.act(w, e) for w in ya.plus(a2)))
            for a2 in c.objects}
    minus = {b: FinFunction(x.minus(b), ya.minus(b), tuple(x.xi[(a, b, m, e)] for m in x.minus(b)))
             for b in c.objects}
    return IsbellMorphism(ya, x, NatTrans(ya.plus, x.plus, plus), NatTrans(x.minus, ya.minus, minus))


def from_minus_element(x: IsbellObject, b, m) -> IsbellMorphism:
    """The morphism ``x -> Y b`` determined by ``m`` in ``x.minus(b)``."""
    c = x.base
    yb = yoneda(c, b)
    plus = {a: FinFunction(x.plus(a), yb.plus(a), tuple(x.xi[(a, b, m, e)] for e in x.plus(a)))
            for a in c.objects}
    minus = {b2: FinFunction(yb.minus(b2), x.minus(b2), tuple(x.minus.act(v, m) for v in yb.minus(b2)))
             for b2 in c.objects}
    return IsbellMorphism(x, yb, NatTrans(x.plus, yb.plus, plus), NatTrans(yb.minus, x.minus, minus))


class RepresentableCertificate:
    def __init__(self, obj, plus_maps, minus_maps):
        self.obj = obj
        self.plus_maps = plus_maps
        self.minus_maps = minus_maps
        self.ok = True

    def __repr__(self):
        return f"RepresentableCertificate({self.obj}: {self.plus_maps} and {self.minus_maps} maps)"


def lemma2_bijection(x: IsbellObject, a) -> RepresentableCertificate:
    """Check that taking plus parts is a bijection ``hom(Y a, x) -> PC(Y a, x.plus)``
    and taking minus parts is a bijection ``hom(x, Y a) -> (x.minus <- Y a minus)``,
    with inverses built from the evaluation."""
    c = x.base
    ya = yoneda(c, a)
    homs = isbell_hom(ya, x)
    nats = natural_transformations(ya.plus, x.plus)
    images = [f.plus for f in homs]
    if len(set(images)) != len(homs) or set(images) != set(nats):
        raise InternalError(f"plus projection is not a bijection at {a}", (a,))
    for alpha in nats:
        e = alpha[a](c.identity(a))
        f = from_plus_element(x, a, e)
        if f.plus != alpha or f not in homs:
            raise InternalError(f"inverse formula fails at {a}", (a, e))
    homs2 = isbell_hom(x, ya)
    nats2 = natural_transformations(ya.minus, x.minus)
    images2 = [f.minus for f in homs2]
    if len(set(images2)) != len(homs2) or set(images2) != set(nats2):
        raise InternalError(f"minus projection is not a bijection at {a}", (a,))
    for beta in nats2:
        m = beta[a](c.identity(a))
        f = from_minus_element(x, a, m)
        if f.minus != beta or f not in homs2:
            raise InternalError(f"inverse formula fails at {a}", (a, m))
    return RepresentableCertificate(a, len(homs), len(homs2))


# -- duality ------------------------------------------------------------------

def dual(x: IsbellObject) -> IsbellObject:
    """The corresponding object over the opposite category."""
    xi = {(b, a, e, m): u for (a, b, m, e), u in x.xi.items()}
    return IsbellObject(opposite(x.base), x.minus, x.plus, xi)


def dual_morphism(f: IsbellMorphism) -> IsbellMorphism:
    """``f: x -> y`` becomes ``dual y -> dual x``."""
    return IsbellMorphism(dual(f.target), dual(f.source), f.minus, f.plus)


# -- canonical cylinder ------------------------------------------------------

def plus_elements(x: IsbellObject):
    """``el x.plus`` with arrows oriented over the base, and its projection."""
    from .sets import elements
    el, proj = elements(x.plus)
    el_c = opposite(el)
    return el_c, Functor(el_c, x.base, proj.obj_map, proj.mor_map)


def minus_elements(x: IsbellObject):
    from .sets import elements
    return elements(x.minus)


def canonical_cylinder(x: IsbellObject):
    """The cocone ``Y U -> x`` over elements of ``x.plus`` and the cone
    ``x -> Y V`` over elements of ``x.minus``."""
    c = x.base
    env = IsbellEnvelope(c)
    el_p, U = plus_elements(x)
    el_m, V = minus_elements(x)
    ys = {o: yoneda(c, o) for o in c.objects}
    ym = {u: yoneda_morphism(c, u) for u in c.morphisms}
    D = Functor(el_p, env, {o: ys[U.ob(o)] for o in el_p.objects},
                {m: ym[U.mor(m)] for m in el_p.morphisms})
    E = Functor(el_m, env, {o: ys[V.ob(o)] for o in el_m.objects},
                {m: ym[V.mor(m)] for m in el_m.morphisms})
    from ._ids import split
    legs_p = {}
    for o in el_p.objects:
        a, e = split(o)
        legs_p[o] = from_plus_element(x, a, e)
    legs_q = {}
    for o in el_m.objects:
        b, m = split(o)
        legs_q[o] = from_minus_element(x, b, m)
    return Cocone(D, x, legs_p), Cone(E, x, legs_q)


def point_of(diagram_index: FinCat, obj) -> Functor:
    """Inclusion ``1 -> index`` at ``obj``."""
    from .fincat import terminal
    return Functor(terminal(), diagram_index, {"*": obj}, {"id_*": diagram_index.identity(obj)})


# -- the free factorisation system -------------------------------------------

def project_cocone(p: Cocone, side):
    c = p.ambient.base
    F = pi1_functor(c) if side == "+" else pi2_functor(c)
    from .cylinder import apply_to_cocone
    return apply_to_cocone(F, p)


def project_cone(q: Cone, side):
    c = q.ambient.base
    F = pi1_functor(c) if side == "+" else pi2_functor(c)
    from .cylinder import apply_to_cone
    return apply_to_cone(F, q)


def in_e(p: Cocone) -> bool:
    """The presheaf part is a pointwise colimit."""
    return setval.is_pointwise_colimiting(project_cocone(p, "+"))


def in_m(q: Cone) -> bool:
    """The copresheaf part is a pointwise limit (a colimit of copresheaves)."""
    from .cfs import is_limit
    return is_limit(project_cone(q, "-"))


def envelope_factorise(r: Cylinder):
    env = r.ambient
    c = env.base
    D, E = r.source, r.target
    I, J = D.source, E.source
    PC, PdC = presheaves(c), copresheaves(c)
    Dp = Functor(I, PC, {i: D.ob(i).plus for i in I.objects}, {f: D.mor(f).plus for f in I.morphisms})
    Ep = Functor(J, PC, {j: E.ob(j).plus for j in J.objects}, {g: E.mor(g).plus for g in J.morphisms})
    Dm = Functor(I, PdC, {i: D.ob(i).minus for i in I.objects}, {f: D.mor(f).minus for f in I.morphisms})
    Em = Functor(J, PdC, {j: E.ob(j).minus for j in J.objects}, {g: E.mor(g).minus for g in J.morphisms})
    # presheaf side: colimit of D+, mediators out of it
    pp = setval.pointwise_colimit(Dp)
    qp = {j: setval.pointwise_colimit_mediator(
        pp, Cocone._trusted(Dp, Ep.ob(j), {i: r[(i, j)].plus for i in I.objects}))
        for j in J.objects}
    # copresheaf side: limit of E- in the reversed category, mediators into it
    qm = find_limit(PdC, Em)
    pm = {i: limit_mediator(PdC, qm, Cone._trusted(Em, Dm.ob(i), {j: r[(i, j)].minus for j in J.objects}))
          for i in I.objects}
    vplus, vminus = pp.vertex, qm.vertex
    xi = {}
    for i in I.objects:
        Di = D.ob(i)
        for j in J.objects:
            Ej = E.ob(j)
            rij = r[(i, j)]
            for a in c.objects:
                for b in c.objects:
                    for x in Di.plus(a):
                        cls_x = pp.legs[i][a](x)
                        for m in Ej.minus(b):
                            cls_m = qm.legs[j][b](m)
                            delta = Ej.xi[(a, b, m, rij.plus[a](x))]
                            if delta != Di.xi[(a, b, rij.minus[b](m), x)]:
                                raise InternalError("the two sides of the square disagree",
                                                    (a, b, i, j, m, x))
                            key = (a, b, cls_m, cls_x)
                            if xi.setdefault(key, delta) != delta:
                                raise InternalError("evaluation does not descend to the quotient",
                                                    (a, b, i, j, m, x))
    V = IsbellObject(c, vplus, vminus, xi)
    legs_p = {i: IsbellMorphism(D.ob(i), V, pp.legs[i], pm[i]) for i in I.objects}
    legs_q = {j: IsbellMorphism(V, E.ob(j), qp[j], qm.legs[j]) for j in J.objects}
    p, q = Cocone(D, V, legs_p), Cone(E, V, legs_q)
    if compose_cylinder(q, p) != r:
        raise InternalError("factorisation does not recompose")
    return p, q


def envelope_cfs(c: FinCat) -> CfsSpec:
    env = IsbellEnvelope(c)
    return CfsSpec("envelope", env, in_e, in_m, envelope_factorise, EnvelopeUniverse(env))


# -- random data --------------------------------------------------------------

def xi_problem(c: FinCat, plus: SetFunctor, minus: SetFunctor):
    prob = Problem()
    for a in c.objects:
        for b in c.objects:
            for m in minus(b):
                for e in plus(a):
                    prob.add_variable((a, b, m, e), c.hom(a, b))
    ids = set(c.identities.values())
    for u, (a2, a) in c.morphisms.items():
        if u in ids:
            continue
        act = plus.mor(u)
        for b in c.objects:
            for m in minus(b):
                for e in plus(a):
                    prob.add_constraint([(a, b, m, e), (a2, b, m, act(e))],
                                        lambda s, t, u=u: c.compose(s, u) == t)
    for v, (b, b2) in c.morphisms.items():
        if v in ids:
            continue
        act = minus.mor(v)
        for a in c.objects:
            for m in minus(b):
                for e in plus(a):
                    prob.add_constraint([(a, b, m, e), (a, b2, act(m), e)],
                                        lambda s, t, v=v: c.compose(v, s) == t)
    return prob


def enumerate_xi(c: FinCat, plus: SetFunctor, minus: SetFunctor):
    """Every valid evaluation table for the given pair."""
    return [dict(sol) for sol in xi_problem(c, plus, minus).solutions()]


def random_set_functor(source: FinCat, rng, max_set):
    from .sets import canonical_set
    for _ in range(50):
        sets = {x: canonical_set(rng.randint(0, max_set)) for x in source.objects}
        for F in set_functors(source, sets, rng):
            return F
    raise InternalError("could not sample a functor")


def random_isbell_object(c: FinCat, rng, max_set=3, tries=100) -> IsbellObject:
    for _ in range(tries):
        plus = random_set_functor(opposite(c), rng, max_set)
        minus = random_set_functor(c, rng, max_set)
        sol = xi_problem(c, plus, minus).first(rng)
        if sol is not None:
            return IsbellObject(c, plus, minus, sol)
    raise InternalError("could not sample an envelope object")


def relabel(x: IsbellObject, rng):
    """An isomorphic copy of ``x`` with fresh element names, and the iso ``x -> copy``."""
    c = x.base
    ren_p, ren_m = {}, {}
    for a in c.objects:
        names = [f"r{k}" for k in range(len(x.plus(a)))]
        rng.shuffle(names)
        ren_p[a] = dict(zip(x.plus(a), names))
        names = [f"s{k}" for k in range(len(x.minus(a)))]
        rng.shuffle(names)
        ren_m[a] = dict(zip(x.minus(a), names))
    op = opposite(c)
    plus = SetFunctor(op, {a: ren_p[a].values() for a in c.objects},
                      {u: {ren_p[s][e]: ren_p[t][x.plus.act(u, e)] for e in x.plus(s)}
                       for u, (s, t) in op.morphisms.items()})
    minus = SetFunctor(c, {a: ren_m[a].values() for a in c.objects},
                       {v: {ren_m[s][m]: ren_m[t][x.minus.act(v, m)] for m in x.minus(s)}
                        for v, (s, t) in c.morphisms.items()})
    xi = {(a, b, ren_m[b][m], ren_p[a][e]): u for (a, b, m, e), u in x.xi.items()}
    y = IsbellObject(c, plus, minus, xi)
    fp = {a: FinFunction.from_mapping(x.plus(a), y.plus(a), ren_p[a]) for a in c.objects}
    back = {b: FinFunction.from_mapping(y.minus(b), x.minus(b), {v: k for k, v in ren_m[b].items()})
            for b in c.objects}
    iso = IsbellMorphism(x, y, NatTrans(x.plus, y.plus, fp), NatTrans(y.minus, x.minus, back))
    return y, iso


class EnvelopeUniverse(Universe):
    def objects(self, budget):
        rng = random.Random(budget.seed)
        c = self.ambient.base
        return [yoneda(c, o) for o in c.objects] + \
            [random_isbell_object(c, rng, budget.max_set) for _ in range(4)]

    def random_object(self, rng, budget):
        c = self.ambient.base
        if rng.random() < 0.25:
            return yoneda(c, rng.choice(c.objects))
        return random_isbell_object(c, rng, budget.max_set)

    def random_iso(self, x, rng, budget):
        return relabel(x, rng)[1]
