"""Finite categories as explicit composition tables, functors out of them,
natural transformations, comma categories and finality tests."""

from dataclasses import dataclass, field

from ._ids import check_id, is_term, tup
from ._search import Problem, UnionFind
from .errors import LawViolation, MalformedError, NaturalityError, UnknownIdError


class Category:
    """What the rest of the package needs from an ambient category.

    Objects and morphisms may be any hashable values; ``hom`` must return the
    morphisms in a fixed canonical order.
    """

    def hom(self, x, y):
        raise NotImplementedError

    def identity(self, x):
        raise NotImplementedError

    def compose(self, g, f):
        """``g`` after ``f``."""
        raise NotImplementedError

    def dom(self, f):
        raise NotImplementedError

    def cod(self, f):
        raise NotImplementedError

    def inverse(self, f):
        x, y = self.dom(f), self.cod(f)
        idx, idy = self.identity(x), self.identity(y)
        for g in self.hom(y, x):
            if self.compose(g, f) == idx and self.compose(f, g) == idy:
                return g
        return None

    def is_iso(self, f):
        return self.inverse(f) is not None

    def sort_key(self, f):
        return f

    def opposite(self):
        return OppositeCategory(self)


class OppositeCategory(Category):
    """``base`` with arrows reversed; morphism values are shared with ``base``."""

    def __init__(self, base):
        self.base = base

    def __eq__(self, other):
        return isinstance(other, OppositeCategory) and other.base == self.base

    def __hash__(self):
        return hash(("op", self.base))

    def __repr__(self):
        return f"OppositeCategory({self.base!r})"

    def hom(self, x, y):
        return self.base.hom(y, x)

    def identity(self, x):
        return self.base.identity(x)

    def compose(self, g, f):
        return self.base.compose(f, g)

    def dom(self, f):
        return self.base.cod(f)

    def cod(self, f):
        return self.base.dom(f)

    def inverse(self, f):
        return self.base.inverse(f)

    def sort_key(self, f):
        return self.base.sort_key(f)

    def opposite(self):
        return self.base


class FinCat(Category):
    """A finite category.

    ``morphisms`` maps each morphism id to ``(dom, cod)``, ``identities``
    maps each object to its identity, and ``table`` maps composable pairs
    ``(g, f)`` to ``g . f``.  The constructor only checks ids; use
    :func:`validate_category` for the laws.
    """

    def __init__(self, objects, morphisms, identities, table):
        objects = list(objects)
        if len(set(objects)) != len(objects):
            raise MalformedError("duplicate object id")
        for x in objects:
            check_id(x, "object id")
        for m in morphisms:
            check_id(m, "morphism id")
        self.objects = tuple(sorted(objects))
        self.morphisms = {m: tuple(morphisms[m]) for m in sorted(morphisms)}
        self.identities = {x: identities[x] for x in sorted(identities)}
        self.table = {k: table[k] for k in sorted(table)}
        homs = {}
        for m, (x, y) in self.morphisms.items():
            homs.setdefault((x, y), []).append(m)
        self._homs = {k: tuple(v) for k, v in homs.items()}
        self._key = (self.objects, tuple(self.morphisms.items()),
                     tuple(self.identities.items()), tuple(self.table.items()))
        self._hash = hash(self._key)

    @classmethod
    def make(cls, objects, arrows=None, identities=None, compose=None):
        """Build a category from its non-identity arrows.

        Identities default to ``id_x``; composites with an identity are
        filled in, every other composite must be listed in ``compose``.
        """
        objects = list(objects)
        ids = {x: _default_identity(x) for x in objects}
        ids.update(identities or {})
        morphisms = {ids[x]: (x, x) for x in objects}
        for name, (x, y) in (arrows or {}).items():
            if name in morphisms:
                raise MalformedError(f"duplicate morphism id {name!r}")
            morphisms[name] = (x, y)
        table = dict(compose or {})
        for m, (x, y) in morphisms.items():
            if x in ids and y in ids:
                table.setdefault((ids[y], m), m)
                table.setdefault((m, ids[x]), m)
        return cls(objects, morphisms, ids, table)

    def __eq__(self, other):
        return isinstance(other, FinCat) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FinCat(objects={list(self.objects)}, morphisms={len(self.morphisms)})"

    def hom(self, x, y):
        return self._homs.get((x, y), ())

    def identity(self, x):
        try:
            return self.identities[x]
        except KeyError:
            raise UnknownIdError(f"unknown object {x!r}") from None

    def compose(self, g, f):
        try:
            return self.table[(g, f)]
        except KeyError:
            raise MalformedError(f"no composite {g} . {f}") from None

    def dom(self, f):
        return self._mor(f)[0]

    def cod(self, f):
        return self._mor(f)[1]

    def _mor(self, f):
        try:
            return self.morphisms[f]
        except KeyError:
            raise UnknownIdError(f"unknown morphism {f!r}") from None

    def non_identities(self):
        idset = set(self.identities.values())
        return [m for m in self.morphisms if m not in idset]

    def composable_pairs(self):
        for g, (y, z) in self.morphisms.items():
            for f, (x, y2) in self.morphisms.items():
                if y2 == y:
                    yield g, f

    def is_discrete(self):
        return not self.non_identities()


def _default_identity(x):
    return f"id_{x}" if is_term(f"id_{x}") else tup("id", x)


@dataclass(frozen=True)
class Report:
    """Outcome of a validator: ``kind`` is ``pass``, ``malformed`` or ``law``."""

    ok: bool
    kind: str = "pass"
    message: str = ""
    witness: tuple = ()

    def raise_for_failure(self):
        if self.ok:
            return
        if self.kind == "malformed":
            raise MalformedError(self.message)
        raise LawViolation(self.message, self.witness)


PASS = Report(True)


def validate_category(c: FinCat) -> Report:
    objs = set(c.objects)
    for m, (x, y) in c.morphisms.items():
        if x not in objs or y not in objs:
            return Report(False, "malformed", f"morphism {m} has unknown endpoint", (m,))
    for x in c.objects:
        if x not in c.identities:
            return Report(False, "malformed", f"object {x} has no identity", (x,))
    for x, i in c.identities.items():
        if x not in objs:
            return Report(False, "malformed", f"identity given for unknown object {x}", (x,))
        if c.morphisms.get(i) != (x, x):
            return Report(False, "malformed", f"identity {i} of {x} is not an endomorphism of {x}", (i,))
    pairs = set(c.composable_pairs())
    for pair in pairs:
        if pair not in c.table:
            return Report(False, "malformed", "missing composite %s . %s" % pair, pair)
    for pair, h in c.table.items():
        if pair not in pairs:
            return Report(False, "malformed", "composite %s . %s of non-composable pair" % pair, pair)
        if h not in c.morphisms:
            return Report(False, "malformed", f"composite {pair[0]} . {pair[1]} = {h} is unknown", pair)
    for (g, f), h in c.table.items():
        if c.morphisms[h] != (c.morphisms[f][0], c.morphisms[g][1]):
            return Report(False, "law", f"{g} . {f} = {h} lands in the wrong hom-set", (g, f))
    for f, (x, y) in c.morphisms.items():
        if c.table[(c.identities[y], f)] != f:
            return Report(False, "law", f"left identity fails at {f}", (c.identities[y], f))
        if c.table[(f, c.identities[x])] != f:
            return Report(False, "law", f"right identity fails at {f}", (f, c.identities[x]))
    for (g, f), gf in c.table.items():
        for h in c.morphisms:
            if c.morphisms[h][0] != c.morphisms[g][1]:
                continue
            if c.table[(h, gf)] != c.table[(c.table[(h, g)], f)]:
                return Report(False, "law", f"associativity fails at ({h}, {g}, {f})", (h, g, f))
    return PASS


def opposite(c: FinCat) -> FinCat:
    return FinCat(c.objects, {m: (y, x) for m, (x, y) in c.morphisms.items()},
                  c.identities, {(f, g): h for (g, f), h in c.table.items()})


class Functor:
    """A functor out of a finite category into any :class:`Category`."""

    def __init__(self, source: FinCat, target: Category, obj_map, mor_map):
        self.source = source
        self.target = target
        self.obj_map = {x: obj_map[x] for x in sorted(obj_map)}
        self.mor_map = {m: mor_map[m] for m in sorted(mor_map)}
        self._key = None

    def ob(self, x):
        try:
            return self.obj_map[x]
        except KeyError:
            raise UnknownIdError(f"functor undefined on object {x!r}") from None

    def mor(self, m):
        try:
            return self.mor_map[m]
        except KeyError:
            raise UnknownIdError(f"functor undefined on morphism {m!r}") from None

    def key(self):
        if self._key is None:
            self._key = (self.source, self.target, tuple(self.obj_map.items()),
                         tuple(self.mor_map.items()))
        return self._key

    def __eq__(self, other):
        return isinstance(other, Functor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"{type(self).__name__}(objects={self.obj_map})"

    def check(self):
        validate_functor(self).raise_for_failure()
        return self


def validate_functor(F: Functor) -> Report:
    src, tgt = F.source, F.target
    for x in src.objects:
        if x not in F.obj_map:
            return Report(False, "malformed", f"object {x} is not mapped", (x,))
    for m in src.morphisms:
        if m not in F.mor_map:
            return Report(False, "malformed", f"morphism {m} is not mapped", (m,))
    for m, (x, y) in src.morphisms.items():
        fm = F.mor_map[m]
        if tgt.dom(fm) != F.obj_map[x] or tgt.cod(fm) != F.obj_map[y]:
            return Report(False, "law", f"image of {m} has the wrong endpoints", (m,))
    for x, i in src.identities.items():
        if F.mor_map[i] != tgt.identity(F.obj_map[x]):
            return Report(False, "law", f"identity of {x} is not preserved", (i,))
    for (g, f), h in src.table.items():
        if tgt.compose(F.mor_map[g], F.mor_map[f]) != F.mor_map[h]:
            return Report(False, "law", f"composite {g} . {f} is not preserved", (g, f))
    return PASS


def identity_functor(c: FinCat) -> Functor:
    return Functor(c, c, {x: x for x in c.objects}, {m: m for m in c.morphisms})


def compose_functors(G, F: Functor) -> Functor:
    """``G`` after ``F``; ``G`` may be a :class:`Functor` or anything with
    ``ob``/``mor``/``target`` (e.g. :class:`MapFunctor`)."""
    return Functor(F.source, G.target, {x: G.ob(y) for x, y in F.obj_map.items()},
                   {m: G.mor(n) for m, n in F.mor_map.items()})


def point(target: Category, x) -> Functor:
    """The functor from the terminal category picking out ``x``."""
    one = terminal()
    return Functor(one, target, {"*": x}, {"id_*": target.identity(x)})


class MapFunctor:
    """A functor between arbitrary categories given by Python callables."""

    def __init__(self, source, target, ob, mor, name="F"):
        self.source = source
        self.target = target
        self._ob = ob
        self._mor = mor
        self.name = name

    def ob(self, x):
        return self._ob(x)

    def mor(self, f):
        return self._mor(f)

    def __repr__(self):
        return f"MapFunctor({self.name})"


@dataclass(frozen=True, eq=False)
class NatTrans:
    """Natural transformation between functors out of the same finite category."""

    source: Functor
    target: Functor
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "components",
                           {x: self.components[x] for x in sorted(self.components)})

    def __getitem__(self, x):
        return self.components[x]

    def key(self):
        return (self.source, self.target, tuple(self.components.items()))

    def __eq__(self, other):
        return isinstance(other, NatTrans) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def check(self):
        F, G = self.source, self.target
        if F.source != G.source or F.target != G.target:
            raise LawViolation("natural transformation between functors of different type")
        cat = F.target
        for x in F.source.objects:
            if x not in self.components:
                raise MalformedError(f"missing component at {x}")
            c = self.components[x]
            if cat.dom(c) != F.ob(x) or cat.cod(c) != G.ob(x):
                raise LawViolation(f"component at {x} has the wrong type", (x,))
        for m, (x, y) in F.source.morphisms.items():
            if cat.compose(G.mor(m), self.components[x]) != cat.compose(self.components[y], F.mor(m)):
                raise NaturalityError(f"naturality fails at {m}", (m,))
        return self


def comma_parts(f: Functor, j, side="over"):
    """Objects and morphisms of ``f/j`` (``side="over"``) or ``j/f`` (``"under"``).

    Objects are ``(x, u)`` with ``u: f x -> j`` (resp. ``u: j -> f x``);
    morphisms are ``(g, source_object, target_object)``.
    """
    tgt = f.target
    if isinstance(tgt, FinCat) and j not in tgt.objects:
        raise UnknownIdError(f"unknown object {j!r}")
    objs = []
    for x in f.source.objects:
        hs = tgt.hom(f.ob(x), j) if side == "over" else tgt.hom(j, f.ob(x))
        objs.extend((x, u) for u in hs)
    by_src = {}
    for o in objs:
        by_src.setdefault(o[0], []).append(o)
    mors = []
    for g, (x1, x2) in f.source.morphisms.items():
        fg = f.mor(g)
        for o1 in by_src.get(x1, ()):
            for o2 in by_src.get(x2, ()):
                if side == "over":
                    ok = tgt.compose(o2[1], fg) == o1[1]
                else:
                    ok = tgt.compose(fg, o1[1]) == o2[1]
                if ok:
                    mors.append((g, o1, o2))
    return objs, mors


def comma(f: Functor, j, side="over") -> FinCat:
    objs, mors = comma_parts(f, j, side)
    oid = {o: tup(o[0], str(o[1])) for o in objs}
    morphisms = {tup(g, oid[a], oid[b]): (oid[a], oid[b]) for g, a, b in mors}
    ids = {oid[o]: tup(f.source.identity(o[0]), oid[o], oid[o]) for o in objs}
    by_pair = {(g, a, b): tup(g, oid[a], oid[b]) for g, a, b in mors}
    out_of, into = {}, {}
    for g, a, b in mors:
        out_of.setdefault(a, []).append((g, b))
        into.setdefault(b, []).append((g, a))
    table = {}
    for g2, b, c in mors:
        for g1, a in into.get(b, ()):
            table[(by_pair[(g2, b, c)], by_pair[(g1, a, b)])] = \
                by_pair[(f.source.compose(g2, g1), a, c)]
    return FinCat(oid.values(), morphisms, ids, table)


def is_connected(c: FinCat) -> bool:
    """Nonempty with a single zig-zag component."""
    if not c.objects:
        return False
    uf = UnionFind(c.objects)
    for x, y in c.morphisms.values():
        uf.union(x, y)
    return len(uf.classes()) == 1


def disconnected_comma(f: Functor, side):
    """First object whose comma category is empty or disconnected, else None."""
    for j in f.target.objects:
        if not is_connected(comma(f, j, side)):
            return j
    return None


def is_final(h: Functor) -> bool:
    return disconnected_comma(h, "under") is None


def is_initial(k: Functor) -> bool:
    return disconnected_comma(k, "over") is None


def functors(source: FinCat, target: FinCat):
    """All functors ``source -> target`` in canonical order."""
    prob = Problem()
    ids_src = set(source.identities.values())
    for x in source.objects:
        prob.add_variable(("o", x), target.objects)
    gens = [m for m in source.morphisms if m not in ids_src]
    for m in gens:
        x, y = source.morphisms[m]
        prob.add_variable(("m", m), target.morphisms)
        prob.add_constraint([("o", x), ("o", y), ("m", m)],
                            lambda a, b, fm: target.morphisms[fm] == (a, b))
    gset = set(gens)
    for (g, f), h in source.table.items():
        if g not in gset or f not in gset:
            continue
        if h in gset:
            prob.add_constraint([("m", g), ("m", f), ("m", h)],
                                lambda fg, ff, fh: target.compose(fg, ff) == fh)
        else:
            x = source.morphisms[h][0]
            prob.add_constraint([("m", g), ("m", f), ("o", x)],
                                lambda fg, ff, a: target.compose(fg, ff) == target.identity(a))
    out = []
    for sol in prob.solutions():
        om = {x: sol[("o", x)] for x in source.objects}
        mm = {m: sol[("m", m)] for m in gens}
        for x, i in source.identities.items():
            mm[i] = target.identity(om[x])
        out.append(Functor(source, target, om, mm))
    out.sort(key=lambda F: (tuple(F.obj_map.values()), tuple(F.mor_map.values())))
    return out


# -- standard shapes -------------------------------------------------------

def empty() -> FinCat:
    return FinCat((), {}, {}, {})


def terminal() -> FinCat:
    return FinCat.make(["*"])


def discrete(names) -> FinCat:
    return FinCat.make(list(names))


def walking_arrow() -> FinCat:
    return FinCat.make(["a", "b"], {"f": ("a", "b")})


def parallel_pair() -> FinCat:
    return FinCat.make(["a", "b"], {"f": ("a", "b"), "g": ("a", "b")})


def span() -> FinCat:
    return FinCat.make(["a", "b", "c"], {"f": ("c", "a"), "g": ("c", "b")})


def cospan() -> FinCat:
    return FinCat.make(["a", "b", "c"], {"f": ("a", "c"), "g": ("b", "c")})


def commutative_square() -> FinCat:
    return FinCat.make(
        ["a", "b", "c", "d"],
        {"f": ("a", "b"), "g": ("a", "c"), "h": ("b", "d"), "k": ("c", "d"), "hf": ("a", "d")},
        compose={("h", "f"): "hf", ("k", "g"): "hf"})


def poset(elements, leq) -> FinCat:
    """Preorder category; ``leq`` lists generating pairs, closed transitively."""
    elements = list(elements)
    rel = {(x, x) for x in elements} | set(leq)
    changed = True
    while changed:
        changed = False
        for (x, y) in list(rel):
            for (y2, z) in list(rel):
                if y == y2 and (x, z) not in rel:
                    rel.add((x, z))
                    changed = True
    name = {(x, y): (_default_identity(x) if x == y else f"{x}<{y}") for x, y in rel}
    table = {}
    for (x, y) in rel:
        for (y2, z) in rel:
            if y == y2:
                table[(name[(y, z)], name[(x, y)])] = name[(x, z)]
    return FinCat(elements, {name[p]: p for p in rel}, {x: name[(x, x)] for x in elements}, table)


def chain(n: int) -> FinCat:
    return poset([str(i) for i in range(n)], [(str(i), str(i + 1)) for i in range(n - 1)])


def index_shapes(max_objects=3):
    """Named small index categories with at most ``max_objects`` objects."""
    shapes = {
        "0": empty(),
        "1": terminal(),
        "1+1": discrete(["a", "b"]),
        "2": walking_arrow(),
        "pair": parallel_pair(),
        "span": span(),
        "cospan": cospan(),
        "3": chain(3),
        "1+1+1": discrete(["a", "b", "c"]),
    }
    return {k: v for k, v in shapes.items() if len(v.objects) <= max_objects}
