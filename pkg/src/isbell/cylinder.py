"""Cocones, cones and cylinders between diagrams, with composition,
restriction along functors and extension along final/initial functors.

A diagram is a :class:`~isbell.fincat.Functor` from a finite index category
into an ambient :class:`~isbell.fincat.Category`.
"""

from ._search import Problem
from .errors import InternalError, NaturalityError, NotFinalError, ShapeError
from .fincat import (Functor, comma_parts, compose_functors, disconnected_comma,
                     terminal)


class _Family:
    _fields = ()

    def key(self):
        return tuple(getattr(self, f) for f in self._fields[:-1]) + \
            (tuple(getattr(self, self._fields[-1]).items()),)

    def __eq__(self, other):
        return type(other) is type(self) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @classmethod
    def _trusted(cls, *args):
        obj = object.__new__(cls)
        for name, value in zip(cls._fields, args):
            setattr(obj, name, value)
        return obj


class Cocone(_Family):
    """Legs ``p_i: D i -> vertex`` with ``p_i' . D f = p_i`` for ``f: i -> i'``."""

    _fields = ("diagram", "vertex", "legs")

    def __init__(self, diagram: Functor, vertex, legs):
        self.diagram = diagram
        self.vertex = vertex
        self.legs = {i: legs[i] for i in sorted(legs)}
        _check_cocone(self)

    @property
    def ambient(self):
        return self.diagram.target

    def __getitem__(self, i):
        return self.legs[i]

    def __repr__(self):
        return f"Cocone(vertex={self.vertex!r}, legs={len(self.legs)})"


class Cone(_Family):
    """Legs ``q_j: vertex -> E j`` with ``E g . q_j = q_j'`` for ``g: j -> j'``."""

    _fields = ("diagram", "vertex", "legs")

    def __init__(self, diagram: Functor, vertex, legs):
        self.diagram = diagram
        self.vertex = vertex
        self.legs = {j: legs[j] for j in sorted(legs)}
        _check_cone(self)

    @property
    def ambient(self):
        return self.diagram.target

    def __getitem__(self, j):
        return self.legs[j]

    def __repr__(self):
        return f"Cone(vertex={self.vertex!r}, legs={len(self.legs)})"


class Cylinder(_Family):
    """A family ``r_ij: D i -> E j`` natural in both ``i`` and ``j``."""

    _fields = ("source", "target", "components")

    def __init__(self, source: Functor, target: Functor, components):
        self.source = source
        self.target = target
        self.components = {k: components[k] for k in sorted(components)}
        _check_cylinder(self)

    @property
    def ambient(self):
        return self.source.target

    def __getitem__(self, ij):
        return self.components[ij]

    def __repr__(self):
        return f"Cylinder(components={len(self.components)})"


def _check_cocone(p):
    D, cat = p.diagram, p.ambient
    for i in D.source.objects:
        if i not in p.legs:
            raise ShapeError(f"cocone has no leg at {i}")
        leg = p.legs[i]
        if cat.dom(leg) != D.ob(i) or cat.cod(leg) != p.vertex:
            raise ShapeError(f"cocone leg at {i} has the wrong type")
    if len(p.legs) != len(D.source.objects):
        raise ShapeError("cocone has legs outside its index category")
    for f, (i, i2) in D.source.morphisms.items():
        if cat.compose(p.legs[i2], D.mor(f)) != p.legs[i]:
            raise NaturalityError(f"cocone square fails at {f}: {i} -> {i2}", (f, i, i2))


def _check_cone(q):
    E, cat = q.diagram, q.ambient
    for j in E.source.objects:
        if j not in q.legs:
            raise ShapeError(f"cone has no leg at {j}")
        leg = q.legs[j]
        if cat.dom(leg) != q.vertex or cat.cod(leg) != E.ob(j):
            raise ShapeError(f"cone leg at {j} has the wrong type")
    if len(q.legs) != len(E.source.objects):
        raise ShapeError("cone has legs outside its index category")
    for g, (j, j2) in E.source.morphisms.items():
        if cat.compose(E.mor(g), q.legs[j]) != q.legs[j2]:
            raise NaturalityError(f"cone square fails at {g}: {j} -> {j2}", (g, j, j2))


def _check_cylinder(r):
    D, E, cat = r.source, r.target, r.source.target
    if E.target != cat:
        raise ShapeError("cylinder diagrams live in different categories")
    I, J = D.source, E.source
    for i in I.objects:
        for j in J.objects:
            if (i, j) not in r.components:
                raise ShapeError(f"cylinder has no component at ({i}, {j})")
            c = r.components[(i, j)]
            if cat.dom(c) != D.ob(i) or cat.cod(c) != E.ob(j):
                raise ShapeError(f"cylinder component at ({i}, {j}) has the wrong type")
    if len(r.components) != len(I.objects) * len(J.objects):
        raise ShapeError("cylinder has components outside its index categories")
    for f, (i, i2) in I.morphisms.items():
        for j in J.objects:
            if cat.compose(r.components[(i2, j)], D.mor(f)) != r.components[(i, j)]:
                raise NaturalityError(f"cylinder square fails at ({f}, {j})", (f, j))
    for g, (j, j2) in J.morphisms.items():
        for i in I.objects:
            if cat.compose(E.mor(g), r.components[(i, j)]) != r.components[(i, j2)]:
                raise NaturalityError(f"cylinder square fails at ({i}, {g})", (i, g))


# -- operations ------------------------------------------------------------

def compose_cylinder(q: Cone, p: Cocone) -> Cylinder:
    """The cylinder ``q . p`` with components ``q_j . p_i``."""
    if p.ambient != q.ambient:
        raise ShapeError("cocone and cone live in different categories")
    if p.vertex != q.vertex:
        raise ShapeError("cocone vertex differs from cone vertex")
    cat = p.ambient
    comps = {(i, j): cat.compose(qj, pi) for i, pi in p.legs.items() for j, qj in q.legs.items()}
    return Cylinder._trusted(p.diagram, q.diagram, comps)


def postcompose(f, p: Cocone) -> Cocone:
    """``f . p`` for ``f: p.vertex -> W``."""
    cat = p.ambient
    if cat.dom(f) != p.vertex:
        raise ShapeError("map does not start at the cocone vertex")
    return Cocone._trusted(p.diagram, cat.cod(f), {i: cat.compose(f, l) for i, l in p.legs.items()})


def precompose(q: Cone, f) -> Cone:
    """``q . f`` for ``f: V -> q.vertex``."""
    cat = q.ambient
    if cat.cod(f) != q.vertex:
        raise ShapeError("map does not end at the cone vertex")
    return Cone._trusted(q.diagram, cat.dom(f), {j: cat.compose(l, f) for j, l in q.legs.items()})


def singleton_diagram(ambient, x) -> Functor:
    one = terminal()
    return Functor(one, ambient, {"*": x}, {"id_*": ambient.identity(x)})


def cocone_as_cylinder(p: Cocone) -> Cylinder:
    """A cocone is a cylinder into the one-object diagram at its vertex."""
    E = singleton_diagram(p.ambient, p.vertex)
    return Cylinder._trusted(p.diagram, E, {(i, "*"): l for i, l in p.legs.items()})


def cone_as_cylinder(q: Cone) -> Cylinder:
    D = singleton_diagram(q.ambient, q.vertex)
    return Cylinder._trusted(D, q.diagram, {("*", j): l for j, l in q.legs.items()})


def single_cylinder(ambient, f) -> Cylinder:
    """The cylinder between one-object diagrams given by a single morphism."""
    D = singleton_diagram(ambient, ambient.dom(f))
    E = singleton_diagram(ambient, ambient.cod(f))
    return Cylinder._trusted(D, E, {("*", "*"): f})


def single_cocone(ambient, f) -> Cocone:
    return Cocone._trusted(singleton_diagram(ambient, ambient.dom(f)), ambient.cod(f), {"*": f})


def single_cone(ambient, f) -> Cone:
    return Cone._trusted(singleton_diagram(ambient, ambient.cod(f)), ambient.dom(f), {"*": f})


def cocone_column(r: Cylinder, j) -> Cocone:
    """The cocone ``(r_ij)_i`` under the source with vertex ``E j``."""
    return Cocone._trusted(r.source, r.target.ob(j), {i: r.components[(i, j)] for i in r.source.source.objects})


def cone_row(r: Cylinder, i) -> Cone:
    """The cone ``(r_ij)_j`` over the target with vertex ``D i``."""
    return Cone._trusted(r.target, r.source.ob(i), {j: r.components[(i, j)] for j in r.target.source.objects})


def restrict(r: Cylinder, h: Functor = None, k: Functor = None) -> Cylinder:
    """``r(H x K)``: components ``(i', j') -> r(H i', K j')``."""
    if h is not None and h.target != r.source.source:
        raise ShapeError("H does not land in the source index category")
    if k is not None and k.target != r.target.source:
        raise ShapeError("K does not land in the target index category")
    D = compose_functors(r.source, h) if h is not None else r.source
    E = compose_functors(r.target, k) if k is not None else r.target
    hob = h.ob if h is not None else (lambda x: x)
    kob = k.ob if k is not None else (lambda x: x)
    comps = {(i, j): r.components[(hob(i), kob(j))]
             for i in D.source.objects for j in E.source.objects}
    return Cylinder._trusted(D, E, comps)


def restrict_cocone(p: Cocone, h: Functor) -> Cocone:
    if h.target != p.diagram.source:
        raise ShapeError("H does not land in the cocone's index category")
    return Cocone._trusted(compose_functors(p.diagram, h), p.vertex,
                           {i: p.legs[h.ob(i)] for i in h.source.objects})


def restrict_cone(q: Cone, k: Functor) -> Cone:
    if k.target != q.diagram.source:
        raise ShapeError("K does not land in the cone's index category")
    return Cone._trusted(compose_functors(q.diagram, k), q.vertex,
                         {j: q.legs[k.ob(j)] for j in k.source.objects})


def extend_along_final(p_restricted: Cocone, diagram: Functor, h: Functor) -> Cocone:
    """The unique cocone ``p`` under ``diagram`` with ``p H = p_restricted``.

    ``p_i`` is transported from the lexicographically first object
    ``(i', u: i -> H i')`` of ``i/H``; agreement over all of ``i/H`` is checked.
    """
    if h.target != diagram.source:
        raise ShapeError("H does not land in the diagram's index category")
    bad = disconnected_comma(h, "under")
    if bad is not None:
        raise NotFinalError(f"H is not final: the comma category at {bad} is not connected", (bad,))
    cat = diagram.target
    legs = {}
    for i in diagram.source.objects:
        objs, _ = comma_parts(h, i, "under")
        candidates = [cat.compose(p_restricted.legs[x], diagram.mor(u)) for x, u in sorted(objs)]
        if any(c != candidates[0] for c in candidates):
            raise InternalError(f"transport along {i}/H is not well defined", (i,))
        legs[i] = candidates[0]
    p = Cocone(diagram, p_restricted.vertex, legs)
    if restrict_cocone(p, h) != p_restricted:
        raise InternalError("extension does not restrict back")
    return p


def extend_along_initial(q_restricted: Cone, diagram: Functor, k: Functor) -> Cone:
    """The unique cone ``q`` over ``diagram`` with ``q K = q_restricted``."""
    if k.target != diagram.source:
        raise ShapeError("K does not land in the diagram's index category")
    bad = disconnected_comma(k, "over")
    if bad is not None:
        raise NotFinalError(f"K is not initial: the comma category at {bad} is not connected", (bad,))
    cat = diagram.target
    legs = {}
    for j in diagram.source.objects:
        objs, _ = comma_parts(k, j, "over")
        candidates = [cat.compose(diagram.mor(u), q_restricted.legs[x]) for x, u in sorted(objs)]
        if any(c != candidates[0] for c in candidates):
            raise InternalError(f"transport along K/{j} is not well defined", (j,))
        legs[j] = candidates[0]
    q = Cone(diagram, q_restricted.vertex, legs)
    if restrict_cone(q, k) != q_restricted:
        raise InternalError("extension does not restrict back")
    return q


def apply_to_cocone(F, p: Cocone) -> Cocone:
    """Image of a cocone under a functor (``Functor`` or ``MapFunctor``)."""
    return Cocone(compose_functors(F, p.diagram), F.ob(p.vertex),
                  {i: F.mor(l) for i, l in p.legs.items()})


def apply_to_cone(F, q: Cone) -> Cone:
    return Cone(compose_functors(F, q.diagram), F.ob(q.vertex),
                {j: F.mor(l) for j, l in q.legs.items()})


def apply_to_cylinder(F, r: Cylinder) -> Cylinder:
    return Cylinder(compose_functors(F, r.source), compose_functors(F, r.target),
                    {k: F.mor(c) for k, c in r.components.items()})


# -- enumeration -----------------------------------------------------------

def _non_identities(c):
    ids = set(c.identities.values())
    return [(m, xy) for m, xy in c.morphisms.items() if m not in ids]


def cocone_problem(D: Functor, vertex):
    cat = D.target
    prob = Problem()
    for i in D.source.objects:
        prob.add_variable(i, cat.hom(D.ob(i), vertex))
    for f, (i, i2) in _non_identities(D.source):
        Df = D.mor(f)
        prob.add_constraint([i, i2], lambda a, b, Df=Df: cat.compose(b, Df) == a)
    return prob


def cone_problem(E: Functor, vertex):
    cat = E.target
    prob = Problem()
    for j in E.source.objects:
        prob.add_variable(j, cat.hom(vertex, E.ob(j)))
    for g, (j, j2) in _non_identities(E.source):
        Eg = E.mor(g)
        prob.add_constraint([j, j2], lambda a, b, Eg=Eg: cat.compose(Eg, a) == b)
    return prob


def cocones(D: Functor, vertex, rng=None):
    """Every cocone under ``D`` with the given vertex (lazily)."""
    for sol in cocone_problem(D, vertex).solutions(rng):
        yield Cocone._trusted(D, vertex, {i: sol[i] for i in sorted(sol)})


def cones(E: Functor, vertex, rng=None):
    for sol in cone_problem(E, vertex).solutions(rng):
        yield Cone._trusted(E, vertex, {j: sol[j] for j in sorted(sol)})


def cylinders(D: Functor, E: Functor, rng=None):
    cat = D.target
    prob = Problem()
    I, J = D.source, E.source
    for i in I.objects:
        for j in J.objects:
            prob.add_variable((i, j), cat.hom(D.ob(i), E.ob(j)))
    for f, (i, i2) in _non_identities(I):
        Df = D.mor(f)
        for j in J.objects:
            prob.add_constraint([(i, j), (i2, j)], lambda a, b, Df=Df: cat.compose(b, Df) == a)
    for g, (j, j2) in _non_identities(J):
        Eg = E.mor(g)
        for i in I.objects:
            prob.add_constraint([(i, j), (i, j2)], lambda a, b, Eg=Eg: cat.compose(Eg, a) == b)
    for sol in prob.solutions(rng):
        yield Cylinder._trusted(D, E, {k: sol[k] for k in sorted(sol)})
