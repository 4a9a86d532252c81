"""Diagonal fillers and orthogonality of a cocone against a cone.

The square has a cocone ``p: D -> V``, a cone ``q: W -> E`` and a boundary
``(h, k)`` with ``h: D -> W`` a cocone, ``k: V -> E`` a cone and
``q . h = k . p``.  A filler is ``j: V -> W`` with ``j . p = h`` and
``q . j = k``.
"""

import itertools
from dataclasses import dataclass

from ._search import Problem
from .cylinder import (Cocone, Cone, apply_to_cocone, apply_to_cone, compose_cylinder,
                       postcompose, precompose, restrict_cocone, restrict_cone)
from .errors import LawViolation, NotFinalError, ShapeError
from .fincat import disconnected_comma
from .sets import FINSET, FinFunction


def _check_square(p, h, k, q):
    if p.ambient != q.ambient or h.ambient != p.ambient or k.ambient != p.ambient:
        raise ShapeError("square lives in more than one category")
    if h.diagram != p.diagram:
        raise ShapeError("p and h are cocones under different diagrams")
    if k.diagram != q.diagram:
        raise ShapeError("q and k are cones over different diagrams")
    if h.vertex != q.vertex:
        raise ShapeError("h does not land at the vertex of q")
    if k.vertex != p.vertex:
        raise ShapeError("k does not start at the vertex of p")
    cat = p.ambient
    for i, pi in p.legs.items():
        for j, qj in q.legs.items():
            if cat.compose(qj, h.legs[i]) != cat.compose(k.legs[j], pi):
                raise LawViolation(f"square does not commute at ({i}, {j})", (i, j))


def fillers(p: Cocone, h: Cocone, k: Cone, q: Cone):
    """Every diagonal ``j`` of the square, in canonical order."""
    _check_square(p, h, k, q)
    cat = p.ambient
    if cat == FINSET:
        return _finset_fillers(p, h, k, q)
    out = [j for j in cat.hom(p.vertex, q.vertex)
           if all(cat.compose(j, l) == h.legs[i] for i, l in p.legs.items())
           and all(cat.compose(l, j) == k.legs[jj] for jj, l in q.legs.items())]
    return sorted(out, key=cat.sort_key)


def _finset_fillers(p, h, k, q):
    V, W = p.vertex, q.vertex
    allowed = {v: [w for w in W if all(q.legs[j](w) == k.legs[j](v) for j in q.legs)] for v in V}
    for i, pi in p.legs.items():
        hi = h.legs[i]
        for x in pi.dom:
            v = pi(x)
            allowed[v] = [w for w in allowed[v] if w == hi(x)]
    prob = Problem()
    for v in V:
        prob.add_variable(v, allowed[v])
    out = [FinFunction(V, W, tuple(sol[v] for v in V)) for sol in prob.solutions()]
    return sorted(out)


def mirrored_fillers(p: Cocone, h: Cocone, k: Cone, q: Cone):
    """Fillers of the square with the roles of ``(p, q)`` and ``(h, k)`` swapped."""
    return fillers(h, p, q, k)


# -- boundaries ------------------------------------------------------------

def boundary_problem(p: Cocone, q: Cone):
    """Constraint problem whose solutions are the boundaries ``(h, k)``."""
    cat = p.ambient
    D, E = p.diagram, q.diagram
    prob = Problem()
    for i in D.source.objects:
        prob.add_variable(("h", i), cat.hom(D.ob(i), q.vertex))
    for j in E.source.objects:
        prob.add_variable(("k", j), cat.hom(p.vertex, E.ob(j)))
    _naturality(prob, D, E, cat)
    for i, pi in p.legs.items():
        for j, qj in q.legs.items():
            prob.add_constraint([("h", i), ("k", j)],
                                lambda hi, kj, pi=pi, qj=qj: cat.compose(qj, hi) == cat.compose(kj, pi))
    return prob


def _naturality(prob, D, E, cat):
    for f, (i, i2) in D.source.morphisms.items():
        if f in D.source.identities.values():
            continue
        Df = D.mor(f)
        prob.add_constraint([("h", i), ("h", i2)], lambda a, b, Df=Df: cat.compose(b, Df) == a)
    for g, (j, j2) in E.source.morphisms.items():
        if g in E.source.identities.values():
            continue
        Eg = E.mor(g)
        prob.add_constraint([("k", j), ("k", j2)], lambda a, b, Eg=Eg: cat.compose(Eg, a) == b)


def _finset_boundary_problem(p, q):
    # elementwise: one variable per element of each D i and per (j, v)
    D, E = p.diagram, q.diagram
    V, W = p.vertex, q.vertex
    prob = Problem()
    for i in D.source.objects:
        for x in D.ob(i):
            prob.add_variable(("h", i, x), W)
    for j in E.source.objects:
        for v in V:
            prob.add_variable(("k", j, v), E.ob(j))
    for f, (i, i2) in D.source.morphisms.items():
        Df = D.mor(f)
        for x in D.ob(i):
            y = Df(x)
            if (i, x) != (i2, y):
                prob.add_constraint([("h", i, x), ("h", i2, y)], lambda a, b: a == b)
    for g, (j, j2) in E.source.morphisms.items():
        Eg = E.mor(g)
        for v in V:
            if j != j2:
                prob.add_constraint([("k", j, v), ("k", j2, v)], lambda a, b, Eg=Eg: Eg(a) == b)
            else:
                prob.restrict(("k", j, v), lambda a, Eg=Eg: Eg(a) == a)
    for i, pi in p.legs.items():
        for x in D.ob(i):
            v = pi(x)
            for j, qj in q.legs.items():
                prob.add_constraint([("h", i, x), ("k", j, v)], lambda a, b, qj=qj: qj(a) == b)
    return prob


def _finset_boundary(p, q, sol):
    D, E = p.diagram, q.diagram
    V, W = p.vertex, q.vertex
    h = {i: FinFunction(D.ob(i), W, tuple(sol[("h", i, x)] for x in D.ob(i))) for i in D.source.objects}
    k = {j: FinFunction(V, E.ob(j), tuple(sol[("k", j, v)] for v in V)) for j in E.source.objects}
    return Cocone._trusted(D, W, h), Cone._trusted(E, V, k)


def search_space(p: Cocone, q: Cone) -> int:
    """Upper bound on the number of candidate boundaries for ``(p, q)``."""
    cat, D, E = p.ambient, p.diagram, q.diagram
    n = 1
    for i in D.source.objects:
        n *= len(cat.hom(D.ob(i), q.vertex)) if cat != FINSET else len(q.vertex) ** len(D.ob(i))
    for j in E.source.objects:
        n *= len(cat.hom(p.vertex, E.ob(j))) if cat != FINSET else len(E.ob(j)) ** len(p.vertex)
    return n


def boundaries(p: Cocone, q: Cone, method="auto"):
    """Every commuting boundary ``(h, k)`` (lazily, in search order)."""
    if p.ambient != q.ambient:
        raise ShapeError("cocone and cone live in different categories")
    if method == "auto":
        method = "elementwise" if p.ambient == FINSET else "generic"
    if method == "elementwise":
        for sol in _finset_boundary_problem(p, q).solutions():
            yield _finset_boundary(p, q, sol)
        return
    cat, D, E = p.ambient, p.diagram, q.diagram
    for sol in boundary_problem(p, q).solutions():
        yield (Cocone._trusted(D, q.vertex, {i: sol[("h", i)] for i in D.source.objects}),
               Cone._trusted(E, p.vertex, {j: sol[("k", j)] for j in E.source.objects}))


def _boundary_key(cat, h, k):
    return (tuple(cat.sort_key(l) for l in h.legs.values()),
            tuple(cat.sort_key(l) for l in k.legs.values()))


@dataclass(frozen=True)
class Certificate:
    """``orthogonal`` verdict; otherwise the least boundary whose filler
    count is not one, as ``(h, k, count)``."""

    orthogonal: bool
    boundaries: int
    maps: int
    witness: tuple = None

    def __bool__(self):
        return self.orthogonal


def is_orthogonal(p: Cocone, q: Cone, method="auto") -> Certificate:
    """Decide ``p`` orthogonal to ``q`` by comparing ``j -> (j.p, q.j)``
    against the set of all boundaries."""
    if p.ambient != q.ambient:
        raise ShapeError("cocone and cone live in different categories")
    cat = p.ambient
    maps = cat.hom(p.vertex, q.vertex)
    hit = {}
    for j in maps:
        key = _boundary_key(cat, postcompose(j, p), precompose(q, j))
        hit[key] = hit.get(key, 0) + 1
    injective = all(n == 1 for n in hit.values())
    total = 0
    for h, k in boundaries(p, q, method):
        total += 1
        if injective and total > len(maps):
            break
    if injective and total == len(maps):
        return Certificate(True, total, len(maps))
    # collect the canonically least offending boundary
    bad = []
    for h, k in boundaries(p, q, method):
        n = hit.get(_boundary_key(cat, h, k), 0)
        if n != 1:
            bad.append((_boundary_key(cat, h, k), h, k, n))
    if not bad:
        raise ShapeError("boundary enumeration is inconsistent with the hom-set")
    bad.sort(key=lambda t: t[0])
    _, h, k, n = bad[0]
    return Certificate(False, sum(1 for _ in boundaries(p, q, method)), len(maps), (h, k, n))


def lemma1_transfer(p: Cocone, q: Cone, h, k) -> bool:
    """Whether ``p`` orthogonal to ``q`` agrees with ``pH`` orthogonal to ``qK``."""
    bad = disconnected_comma(h, "under")
    if bad is not None:
        raise NotFinalError(f"H is not final at {bad}", (bad,))
    bad = disconnected_comma(k, "over")
    if bad is not None:
        raise NotFinalError(f"K is not initial at {bad}", (bad,))
    whole = bool(is_orthogonal(p, q))
    part = bool(is_orthogonal(restrict_cocone(p, h), restrict_cone(q, k)))
    return whole == part


def square_cylinder_ok(p, h, k, q):
    """``q . h == k . p`` as cylinders."""
    return compose_cylinder(q, h) == compose_cylinder(k, p)


# -- adjunctions ---------------------------------------------------------------

def adjunction_unit(F, G):
    """A unit ``{a: a -> G F a}`` exhibiting ``F`` left adjoint to ``G``
    between finite categories, or None."""
    A, B = F.source, F.target
    if G.source != B or G.target != A:
        raise ShapeError("functors do not form a round trip")
    choices = [A.hom(a, G.ob(F.ob(a))) for a in A.objects]
    for pick in itertools.product(*choices):
        eta = dict(zip(A.objects, pick))
        if all(A.compose(G.mor(F.mor(u)), eta[x]) == A.compose(eta[y], u)
               for u, (x, y) in A.morphisms.items()) and _transposes(F, G, eta):
            return eta
    return None


def _transposes(F, G, eta):
    A, B = F.source, F.target
    for a in A.objects:
        for b in B.objects:
            src = B.hom(F.ob(a), b)
            img = {A.compose(G.mor(g), eta[a]) for g in src}
            if len(img) != len(src) or img != set(A.hom(a, G.ob(b))):
                return False
    return True


def adjoint_transfer(p: Cocone, q: Cone, F, G):
    """``(Fp orthogonal to q, p orthogonal to Gq)``; equal when ``F`` is left
    adjoint to ``G``."""
    return (bool(is_orthogonal(apply_to_cocone(F, p), q)),
            bool(is_orthogonal(p, apply_to_cone(G, q))))
