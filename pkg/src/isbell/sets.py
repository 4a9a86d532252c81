"""Finite sets and functions, Set-valued functors on finite categories, and
the functor categories they form."""

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

from ._ids import check_id, tup
from ._search import Problem
from .errors import LawViolation, MalformedError, NaturalityError
from .fincat import Category, FinCat, Functor, NatTrans, opposite


def fset(elements=()):
    """Canonical finite set: a sorted tuple of distinct string ids."""
    out = tuple(sorted(set(elements)))
    for x in out:
        check_id(x, "element id")
    return out


def canonical_set(n: int):
    return fset(str(i) for i in range(n))


@dataclass(frozen=True, order=True)
class FinFunction:
    """A function between finite sets; ``values[k]`` is the image of ``dom[k]``."""

    dom: tuple
    cod: tuple
    values: tuple

    def __post_init__(self):
        if len(self.values) != len(self.dom):
            raise MalformedError("function table has the wrong length")
        cod = self._cod_set
        for v in self.values:
            if v not in cod:
                raise MalformedError(f"value {v!r} is not in the codomain")

    @cached_property
    def _cod_set(self):
        return frozenset(self.cod)

    @cached_property
    def _index(self):
        return {x: k for k, x in enumerate(self.dom)}

    def __call__(self, x):
        return self.values[self._index[x]]

    def __repr__(self):
        body = ", ".join(f"{x}->{y}" for x, y in zip(self.dom, self.values))
        return f"FinFunction({{{body}}} : {len(self.dom)} -> {len(self.cod)})"

    @classmethod
    def from_mapping(cls, dom, cod, mapping):
        dom, cod = tuple(dom), tuple(cod)
        missing = [x for x in dom if x not in mapping]
        if missing:
            raise MalformedError(f"function undefined on {missing[0]!r}")
        extra = set(mapping) - set(dom)
        if extra:
            raise MalformedError(f"function defined outside its domain at {sorted(extra)[0]!r}")
        return cls(dom, cod, tuple(mapping[x] for x in dom))

    @classmethod
    def identity(cls, s):
        return cls(tuple(s), tuple(s), tuple(s))

    def as_dict(self):
        return dict(zip(self.dom, self.values))

    def image(self):
        return fset(self.values)

    def is_injective(self):
        return len(set(self.values)) == len(self.values)

    def is_surjective(self):
        return set(self.values) == self._cod_set

    def is_bijective(self):
        return self.is_injective() and self.is_surjective()


class FinSetCategory(Category):
    """The category of finite sets; objects are canonical sorted tuples."""

    def __eq__(self, other):
        return isinstance(other, FinSetCategory)

    def __hash__(self):
        return hash("FinSet")

    def __repr__(self):
        return "FINSET"

    def hom(self, x, y):
        return _all_functions(tuple(x), tuple(y))

    def identity(self, x):
        return FinFunction.identity(x)

    def compose(self, g, f):
        if f.cod != g.dom:
            raise MalformedError("functions are not composable")
        return FinFunction(f.dom, g.cod, tuple(g(v) for v in f.values))

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def inverse(self, f):
        if not f.is_bijective():
            return None
        back = dict(zip(f.values, f.dom))
        return FinFunction(f.cod, f.dom, tuple(back[y] for y in f.cod))


FINSET = FinSetCategory()


@lru_cache(maxsize=4096)
def _all_functions(x, y):
    return tuple(FinFunction(x, y, vals) for vals in itertools.product(y, repeat=len(x)))


class SetFunctor(Functor):
    """A functor from a finite category into finite sets.

    ``sets`` maps objects to iterables of element ids; ``action`` maps
    morphisms to dicts (or :class:`FinFunction`).  Identity actions may be
    omitted.  Presheaves are SetFunctors on the opposite category.
    """

    def __init__(self, source: FinCat, sets, action=None):
        action = dict(action or {})
        obj_map = {x: fset(sets[x]) for x in source.objects}
        mor_map = {}
        for m, (x, y) in source.morphisms.items():
            a = action.get(m)
            if a is None:
                if source.identities.get(x) != m:
                    raise MalformedError(f"no action given for {m}")
                mor_map[m] = FinFunction.identity(obj_map[x])
            elif isinstance(a, FinFunction):
                mor_map[m] = a
            else:
                mor_map[m] = FinFunction.from_mapping(obj_map[x], obj_map[y], a)
        super().__init__(source, FINSET, obj_map, mor_map)

    def __call__(self, x):
        return self.obj_map[x]

    def act(self, m, element):
        return self.mor_map[m](element)

    def size(self):
        return sum(len(s) for s in self.obj_map.values())


def as_set_functor(F: Functor) -> SetFunctor:
    if isinstance(F, SetFunctor):
        return F
    if F.target != FINSET:
        raise LawViolation("functor does not land in finite sets")
    return SetFunctor(F.source, F.obj_map, F.mor_map)


def hom_functor(c: FinCat, x) -> SetFunctor:
    """The covariant representable ``c(x, -)``; on ``opposite(C)`` this is ``C(-, x)``."""
    sets = {a: c.hom(x, a) for a in c.objects}
    action = {m: {u: c.compose(m, u) for u in sets[a]} for m, (a, b) in c.morphisms.items()}
    return SetFunctor(c, sets, action)


def representable(c: FinCat, x) -> SetFunctor:
    """The presheaf ``C(-, x)`` as a SetFunctor on ``opposite(c)``."""
    return hom_functor(opposite(c), x)


def constant_functor(c: FinCat, s) -> SetFunctor:
    s = fset(s)
    return SetFunctor(c, {x: s for x in c.objects},
                      {m: FinFunction.identity(s) for m in c.morphisms})


def natural_transformations(F: SetFunctor, G: SetFunctor, pins=None, rng=None, limit=None):
    """All natural transformations ``F -> G`` (canonical order unless ``rng``).

    ``pins`` maps ``(object, element)`` to a required image.
    """
    prob = nat_trans_problem(F, G, pins)
    out = []
    for sol in prob.solutions(rng):
        out.append(_nat_from_solution(F, G, sol))
        if limit is not None and len(out) >= limit:
            break
    if rng is None:
        out.sort(key=lambda t: tuple(c.values for c in t.components.values()))
    return out


def nat_trans_problem(F, G, pins=None, prefix=()):
    prob = Problem()
    add_nat_trans_variables(prob, F, G, pins, prefix)
    return prob


def add_nat_trans_variables(prob, F, G, pins=None, prefix=()):
    src = F.source
    for a in src.objects:
        for x in F(a):
            dom = G(a)
            if pins and (a, x) in pins:
                dom = [y for y in dom if y == pins[(a, x)]]
            prob.add_variable(prefix + (a, x), dom)
    ids = set(src.identities.values())
    for m, (a, b) in src.morphisms.items():
        if m in ids:
            continue
        Fm, Gm = F.mor(m), G.mor(m)
        for x in F(a):
            prob.add_constraint([prefix + (a, x), prefix + (b, Fm(x))],
                                lambda y, z, Gm=Gm: Gm(y) == z)
    return prob


def _nat_from_solution(F, G, sol, prefix=()):
    comps = {a: FinFunction(F(a), G(a), tuple(sol[prefix + (a, x)] for x in F(a)))
             for a in F.source.objects}
    return NatTrans(F, G, comps)


def identity_nat(F: Functor) -> NatTrans:
    cat = F.target
    return NatTrans(F, F, {x: cat.identity(F.ob(x)) for x in F.source.objects})


def vertical(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """``beta`` after ``alpha``."""
    if alpha.target != beta.source:
        raise LawViolation("natural transformations are not composable")
    cat = alpha.source.target
    return NatTrans(alpha.source, beta.target,
                    {x: cat.compose(beta[x], alpha[x]) for x in alpha.components})


class FunctorCategory(Category):
    """``[source, FinSet]`` restricted to finite-set-valued functors."""

    def __init__(self, source: FinCat):
        self.source = source

    def __eq__(self, other):
        return isinstance(other, FunctorCategory) and other.source == self.source

    def __hash__(self):
        return hash(("Fun", self.source))

    def __repr__(self):
        return f"FunctorCategory({self.source!r})"

    def hom(self, x, y):
        return natural_transformations(x, y)

    def identity(self, x):
        return identity_nat(x)

    def compose(self, g, f):
        return vertical(g, f)

    def dom(self, f):
        return f.source

    def cod(self, f):
        return f.target

    def inverse(self, f):
        comps = {}
        for a, c in f.components.items():
            inv = FINSET.inverse(c)
            if inv is None:
                return None
            comps[a] = inv
        return NatTrans(f.target, f.source, comps)

    def sort_key(self, f):
        return tuple(c.values for c in f.components.values())


def check_nat(t: NatTrans):
    try:
        return t.check()
    except KeyError as e:
        raise NaturalityError(f"component undefined: {e}") from None


def elements(x: SetFunctor):
    """Category of elements of ``x`` with its projection to ``x.source``.

    Objects are ``(a, e)`` for ``e`` in ``x(a)``; a morphism ``(a, e) -> (b, x(u)(e))``
    has id ``(u, (a,e))``.
    """
    c = x.source
    oid = {(a, e): tup(a, e) for a in c.objects for e in x(a)}
    morphisms, src_of = {}, {}
    for u, (a, b) in c.morphisms.items():
        for e in x(a):
            mid = tup(u, oid[(a, e)])
            morphisms[mid] = (oid[(a, e)], oid[(b, x.act(u, e))])
            src_of[mid] = (u, a, e)
    ids = {oid[(a, e)]: tup(c.identity(a), oid[(a, e)]) for (a, e) in oid}
    table = {}
    for g, (y1, z) in morphisms.items():
        v, b, e2 = src_of[g]
        for f, (w, y2) in morphisms.items():
            if y2 != y1:
                continue
            u, a, e = src_of[f]
            table[(g, f)] = tup(c.compose(v, u), oid[(a, e)])
    el = FinCat(oid.values(), morphisms, ids, table)
    proj = Functor(el, c, {oid[k]: k[0] for k in oid}, {m: src_of[m][0] for m in morphisms})
    return el, proj


def set_functor_isomorphisms(F: SetFunctor, G: SetFunctor, limit=None):
    """Natural isomorphisms ``F -> G`` (bijective components)."""
    if F.source != G.source:
        return []
    if any(len(F(a)) != len(G(a)) for a in F.source.objects):
        return []
    prob = nat_trans_problem(F, G)
    for a in F.source.objects:
        xs = [(a, x) for x in F(a)]
        for i, v in enumerate(xs):
            for w in xs[i + 1:]:
                prob.add_constraint([v, w], lambda y, z: y != z)
    out = []
    for sol in prob.solutions():
        out.append(_nat_from_solution(F, G, sol))
        if limit is not None and len(out) >= limit:
            break
    return out


def set_functors(source: FinCat, sets, rng=None):
    """Every SetFunctor on ``source`` with the given object sets (lazily)."""
    sets = {x: fset(sets[x]) for x in source.objects}
    ids = set(source.identities.values())
    gens = [m for m in source.morphisms if m not in ids]
    prob = Problem()
    for m in gens:
        x, y = source.morphisms[m]
        prob.add_variable(m, FINSET.hom(sets[x], sets[y]))
    gset = set(gens)
    for (g, f), h in source.table.items():
        if g not in gset or f not in gset:
            continue
        if h in gset:
            prob.add_constraint([g, f, h], lambda a, b, c: FINSET.compose(a, b) == c)
        else:
            ident = FinFunction.identity(sets[source.morphisms[h][0]])
            prob.add_constraint([g, f], lambda a, b, ident=ident: FINSET.compose(a, b) == ident)
    for sol in prob.solutions(rng):
        yield SetFunctor(source, sets, sol)


def all_set_functors(source: FinCat, max_set: int):
    """SetFunctors on ``source`` whose sets are canonical of size at most ``max_set``."""
    for sizes in itertools.product(range(max_set + 1), repeat=len(source.objects)):
        yield from set_functors(source, {x: canonical_set(n) for x, n in zip(source.objects, sizes)})
