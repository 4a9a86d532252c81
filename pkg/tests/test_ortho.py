import itertools
import random

import pytest
from hypothesis import given, strategies as st

from conftest import SMALL_CATS, finset_diagrams, finsets, seeds
from oracles import all_maps, finset_fillers, raw_cocones
from isbell.cfs import Budget, FinSetUniverse, colimit_cfs, covering_mono_cfs, is_jointly_injective, \
    is_jointly_surjective
from isbell.cylinder import (Cocone, Cone, cocones, compose_cylinder, cones, postcompose, precompose,
                             single_cocone, single_cone)
from isbell.errors import LawViolation, NotFinalError
from isbell.fincat import (Functor, chain, discrete, empty, functors, identity_functor, index_shapes,
                           is_final, is_initial, point, terminal, walking_arrow)
from isbell.ortho import (adjoint_transfer, adjunction_unit, boundaries, fillers, is_orthogonal,
                          lemma1_transfer, mirrored_fillers)
from isbell.sets import FINSET, FinFunction, canonical_set, fset


def fn(dom, cod, vals):
    return FinFunction(tuple(dom), tuple(cod), tuple(vals))


def test_identity_square_has_identity_filler():
    one = terminal()
    p, q = single_cocone(one, "id_*"), single_cone(one, "id_*")
    assert fillers(p, p, q, q) == ["id_*"]
    assert is_orthogonal(p, q)


def test_square_must_commute():
    s = canonical_set(2)
    p = single_cocone(FINSET, FinFunction.identity(s))
    q = single_cone(FINSET, FinFunction.identity(s))
    h = single_cocone(FINSET, fn(s, s, "00"))
    with pytest.raises(LawViolation):
        fillers(p, h, q, q)


def test_swapped_roles_give_two_fillers():
    one, two = fset(["0"]), canonical_set(2)
    p = single_cocone(FINSET, fn(one, two, "0"))         # injective, not surjective
    q = single_cone(FINSET, fn(two, one, "00"))          # surjective, not injective
    h = single_cocone(FINSET, fn(one, two, "0"))
    k = single_cone(FINSET, fn(two, one, "00"))
    assert len(fillers(p, h, k, q)) == 2
    cert = is_orthogonal(p, q)
    assert not cert
    hh, kk, n = cert.witness
    assert n != 1
    assert len(finset_fillers(p, hh, kk, q)) == n


def _raw_boundaries(p, q):
    D, E = p.diagram, q.diagram
    out = set()
    for hfam in raw_cocones(D, q.vertex):
        for kvals in itertools.product(*[list(all_maps(p.vertex, E.ob(j))) for j in E.source.objects]):
            kfam = dict(zip(E.source.objects, kvals))
            natural = all(E.mor(g)(kfam[j][v]) == kfam[j2][v]
                          for g, (j, j2) in E.source.morphisms.items() for v in p.vertex)
            square = all(q.legs[j](hfam[i][x]) == kfam[j][p.legs[i](x)]
                         for i in D.source.objects for x in D.ob(i) for j in E.source.objects)
            if natural and square:
                out.add((tuple(tuple(hfam[i][x] for x in D.ob(i)) for i in D.source.objects),
                         tuple(tuple(kfam[j][v] for v in p.vertex) for j in E.source.objects)))
    return out


def _key(h, k):
    return (tuple(l.values for l in h.legs.values()), tuple(l.values for l in k.legs.values()))


@st.composite
def square_data(draw):
    D = draw(finset_diagrams(max_objects=2, max_size=2))
    E = draw(finset_diagrams(max_objects=2, max_size=2))
    v, w = draw(finsets(2)), draw(finsets(2))
    ps, qs = list(cocones(D, v)), list(cones(E, w))
    p = draw(st.sampled_from(ps)) if ps else draw(st.nothing())
    q = draw(st.sampled_from(qs)) if qs else draw(st.nothing())
    return p, q


@given(square_data())
def test_boundary_enumerations_agree(pq):
    p, q = pq
    elem = [_key(h, k) for h, k in boundaries(p, q, "elementwise")]
    gen = [_key(h, k) for h, k in boundaries(p, q, "generic")]
    assert len(set(elem)) == len(elem)
    assert set(elem) == set(gen) == _raw_boundaries(p, q)


@given(square_data())
def test_fillers_match_brute_force(pq):
    p, q = pq
    for h, k in itertools.islice(boundaries(p, q), 6):
        assert fillers(p, h, k, q) == sorted(finset_fillers(p, h, k, q))


@given(square_data())
def test_verdict_matches_filler_counts(pq):
    p, q = pq
    expect = all(len(finset_fillers(p, h, k, q)) == 1 for h, k in boundaries(p, q))
    cert = is_orthogonal(p, q)
    assert bool(cert) == expect
    assert bool(is_orthogonal(p, q, "generic")) == expect


@given(square_data())
def test_surjective_against_injective_has_one_filler(pq):
    p, q = pq
    if is_jointly_surjective(p) and is_jointly_injective(q):
        for h, k in boundaries(p, q):
            assert len(finset_fillers(p, h, k, q)) == 1


def test_against_terminal_cone():
    two = walking_arrow()
    E = Functor(empty(), two, {}, {})
    q = Cone(E, "b", {})
    D = identity_functor(two)
    for v in two.objects:
        for p in cocones(D, v):
            assert is_orthogonal(p, q)


@given(finset_diagrams(max_objects=2, max_size=2), finset_diagrams(max_objects=2, max_size=2),
       finsets(2), st.data())
def test_colimiting_cocone_is_orthogonal_to_everything(D, E, w, data):
    from isbell import setval
    p = setval.colimit(D)
    qs = list(cones(E, w))
    if not qs:
        return
    assert is_orthogonal(p, data.draw(st.sampled_from(qs)))


def test_identity_against_identity():
    s = canonical_set(2)
    assert is_orthogonal(single_cocone(FINSET, FinFunction.identity(s)),
                         single_cone(FINSET, FinFunction.identity(s)))


@given(square_data(), seeds())
def test_orthogonality_stable_under_isomorphism(pq, seed):
    p, q = pq
    rng = random.Random(seed)
    uni, budget = FinSetUniverse(), Budget()
    a = uni.random_iso(p.vertex, rng, budget)
    b = uni.random_iso(q.vertex, rng, budget)
    assert bool(is_orthogonal(postcompose(a, p), precompose(q, FINSET.inverse(b)))) == bool(is_orthogonal(p, q))


# -- transfer along final and initial functors ---------------------------------

def test_transfer_along_identities():
    s = canonical_set(2)
    p = single_cocone(FINSET, FinFunction.identity(s))
    q = single_cone(FINSET, fn(s, s, "00"))
    one = terminal()
    assert lemma1_transfer(p, q, identity_functor(one), identity_functor(one))


def test_transfer_refuses_non_final():
    two = walking_arrow()
    s = canonical_set(1)
    D = Functor(two, FINSET, {"a": s, "b": s}, {m: FinFunction.identity(s) for m in two.morphisms})
    p = next(iter(cocones(D, s)))
    q = single_cone(FINSET, FinFunction.identity(s))
    with pytest.raises(NotFinalError):
        lemma1_transfer(p, q, point(two, "a"), identity_functor(terminal()))


@given(st.data())
def test_transfer_along_terminal_points(data):
    shapes = [walking_arrow(), chain(3), SMALL_CATS["square"], SMALL_CATS["span"]]
    c = data.draw(st.sampled_from(shapes))
    hs = [h for h in functors(terminal(), c) if is_final(h)]
    ks = [k for k in functors(terminal(), c) if is_initial(k)]
    if not hs:
        return
    D = data.draw(finset_diagrams(shape=c, max_size=2))
    v = data.draw(finsets(2))
    ps = list(cocones(D, v))
    if not ps:
        return
    p = data.draw(st.sampled_from(ps))
    E = data.draw(finset_diagrams(shape=c, max_size=2))
    w = data.draw(finsets(2))
    qs = list(cones(E, w))
    if not qs or not ks:
        return
    q = data.draw(st.sampled_from(qs))
    assert lemma1_transfer(p, q, hs[0], ks[0])


# -- mirror symmetry -----------------------------------------------------------

def test_mirror_count_agrees_between_factorisations():
    spec = covering_mono_cfs()
    rng = random.Random(7)
    uni, budget = spec.universe, Budget(max_index=2, max_set=3)
    from isbell.cfs import FinSetUniverse
    checked = 0
    for _ in range(30):
        r = uni.random_cylinder(rng, budget)
        p, q = spec.factorise(r)
        iso = uni.random_iso(p.vertex, rng, budget)
        p2, q2 = postcompose(iso, p), precompose(q, FINSET.inverse(iso))
        assert compose_cylinder(q2, p2) == r
        a = fillers(p, p2, q, q2)
        b = mirrored_fillers(p, p2, q, q2)
        assert len(a) == len(b) == 1
        checked += 1
    assert checked == 30


def test_mirror_count_differs_outside_factorisations():
    # with p = q = identity and h = k a non-invertible map there is one
    # filler but no mirrored filler
    s = canonical_set(2)
    ident = FinFunction.identity(s)
    f = fn(s, s, "00")
    p, q = single_cocone(FINSET, ident), single_cone(FINSET, ident)
    h, k = single_cocone(FINSET, f), single_cone(FINSET, f)
    assert len(fillers(p, h, k, q)) == 1
    assert len(mirrored_fillers(p, h, k, q)) == 0


# -- adjoint transfer ----------------------------------------------------------

def _adjunctions():
    cats = [SMALL_CATS[n] for n in ("1", "2", "1+1", "chain3", "span")]
    out = []
    for A, B in itertools.product(cats, repeat=2):
        for F in functors(A, B):
            for G in functors(B, A):
                if adjunction_unit(F, G) is not None:
                    out.append((F, G))
    return out


def test_known_adjunction():
    # the point at the initial object of 2 is left adjoint to the unique functor to 1
    two, one = walking_arrow(), terminal()
    F = point(two, "a")
    G = Functor(two, one, {"a": "*", "b": "*"}, {m: "id_*" for m in two.morphisms})
    assert adjunction_unit(F, G) is not None
    assert adjunction_unit(point(two, "b"), G) is None


def test_adjoint_transfer_exhaustive():
    adj = _adjunctions()
    assert len(adj) > 10
    shapes = list(index_shapes(2).values())
    pairs = 0
    for F, G in adj:
        A, B = F.source, F.target
        for shape in shapes:
            for D in functors(shape, A):
                for v in A.objects:
                    for p in cocones(D, v):
                        for shape2 in shapes:
                            for E in functors(shape2, B):
                                for w in B.objects:
                                    for q in cones(E, w):
                                        left, right = adjoint_transfer(p, q, F, G)
                                        assert left == right
                                        pairs += 1
    assert pairs > 1000
