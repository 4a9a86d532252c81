import itertools
import random

import pytest
from hypothesis import given, strategies as st

from conftest import FIXTURE_CATS, SMALL_CATS, seeds
from oracles import colimiting, envelope_slices, pointwise, raw_isbell_hom_count
from isbell.cfs import Budget, check_axioms, essential_uniqueness
from isbell.cylinder import compose_cylinder, single_cylinder
from isbell.envelope import (IsbellEnvelope, IsbellMorphism, IsbellObject, brute_force_hom,
                             canonical_cylinder, compose, dual, dual_morphism, envelope_cfs,
                             enumerate_xi, from_minus_element, from_plus_element, identity_morphism,
                             in_e, in_m, isbell_hom, lemma2_bijection, pi1, pi2, project_cocone,
                             project_cone, random_isbell_object, relabel, validate_morphism,
                             validate_object, yoneda, yoneda_morphism)
from isbell.errors import IsbellError
from isbell.fincat import NatTrans, opposite, parallel_pair, terminal, walking_arrow
from isbell.sets import (FINSET, FinFunction, SetFunctor, canonical_set, constant_functor,
                         hom_functor, natural_transformations, representable)

ONE = terminal()
TWO = walking_arrow()


def over_one(plus, minus):
    """An object over the one-object category: a pair of sets."""
    xi = {("*", "*", m, e): "id_*" for m in minus for e in plus}
    return IsbellObject(ONE, constant_functor(ONE, plus), constant_functor(ONE, minus), xi)


# -- objects and morphisms -------------------------------------------------------

def test_identity_is_valid_and_a_unit():
    rng = random.Random(1)
    x = random_isbell_object(TWO, rng, 2)
    y = random_isbell_object(TWO, rng, 2)
    ident = identity_morphism(x)
    assert validate_morphism(ident).ok
    for f in isbell_hom(x, y)[:5]:
        assert compose(f, ident) == f
        assert compose(identity_morphism(y), f) == f


@pytest.mark.parametrize("sizes", list(itertools.product(range(3), repeat=4)))
def test_over_one_every_pair_is_a_morphism(sizes):
    sp, sm, tp, tm = sizes
    x = over_one(canonical_set(sp), canonical_set(sm))
    y = over_one(canonical_set(tp), canonical_set(tm))
    assert validate_object(x).ok
    assert len(isbell_hom(x, y)) == tp ** sp * sm ** tm
    assert len(enumerate_xi(ONE, x.plus, x.minus)) == 1


def test_broken_evaluation_is_rejected():
    c = parallel_pair()
    y = yoneda(c, "b")
    xi = dict(y.xi)
    key = ("a", "b", "id_b", "f")
    assert xi[key] == "f"
    xi[key] = "g"
    rep = validate_object(IsbellObject(c, y.plus, y.minus, xi, check=False))
    assert not rep.ok and rep.kind == "law"
    with pytest.raises(IsbellError):
        IsbellObject(c, y.plus, y.minus, xi)


def test_square_cannot_fail_over_a_poset():
    # hom-sets of the arrow category have at most one element
    rng = random.Random(3)
    for _ in range(10):
        x = random_isbell_object(TWO, rng, 2)
        y = random_isbell_object(TWO, rng, 2)
        for fp in natural_transformations(x.plus, y.plus):
            for fm in natural_transformations(y.minus, x.minus):
                assert validate_morphism(IsbellMorphism(x, y, fp, fm, check=False)).ok


def test_square_violation_is_rejected_with_witness():
    c = parallel_pair()
    rng = random.Random(3)
    found = 0
    for _ in range(30):
        x = random_isbell_object(c, rng, 2)
        y = random_isbell_object(c, rng, 2)
        for fp in natural_transformations(x.plus, y.plus):
            for fm in natural_transformations(y.minus, x.minus):
                f = IsbellMorphism(x, y, fp, fm, check=False)
                rep = validate_morphism(f)
                if rep.ok:
                    continue
                a, b, n, e = rep.witness
                assert y.xi[(a, b, n, fp[a](e))] != x.xi[(a, b, fm[b](n), e)]
                found += 1
    assert found > 0


@given(seeds(), st.sampled_from(["1", "2", "span", "pair"]))
def test_hom_enumeration_against_brute_force(seed, name):
    c = SMALL_CATS[name]
    rng = random.Random(seed)
    x = random_isbell_object(c, rng, 2)
    y = random_isbell_object(c, rng, 2)
    homs = isbell_hom(x, y)
    assert homs == brute_force_hom(x, y)
    assert len(homs) == raw_isbell_hom_count(x, y)
    assert all(validate_morphism(f).ok for f in homs)


@given(seeds())
def test_composition_stays_valid(seed):
    rng = random.Random(seed)
    x, y, z = (random_isbell_object(TWO, rng, 2) for _ in range(3))
    for f, g in itertools.islice(itertools.product(isbell_hom(x, y), isbell_hom(y, z)), 10):
        gf = compose(g, f)
        assert validate_morphism(gf).ok
        assert pi1(gf) == NatTrans(x.plus, z.plus, {a: FINSET.compose(g.plus[a], f.plus[a])
                                                    for a in TWO.objects})


# -- Yoneda ------------------------------------------------------------------------

def test_yoneda_of_a_point():
    y = yoneda(ONE, "*")
    assert y.plus("*") == ("id_*",) and y.minus("*") == ("id_*",)
    assert y.xi == {("*", "*", "id_*", "id_*"): "id_*"}


def test_yoneda_of_the_codomain():
    y = yoneda(TWO, "b")
    assert y.plus("a") == ("f",) and y.plus("b") == ("id_b",)
    assert y.minus("b") == ("id_b",) and y.minus("a") == ()
    assert y("a", "b", "id_b", "f") == "f"


def test_projections_of_yoneda():
    for name, c in FIXTURE_CATS.items():
        for o in c.objects:
            y = yoneda(c, o)
            assert pi1(y) == representable(c, o)
            assert pi2(y) == hom_functor(c, o)


@pytest.mark.parametrize("name", sorted(FIXTURE_CATS))
def test_yoneda_is_fully_faithful(name):
    c = FIXTURE_CATS[name]
    for a, b in itertools.product(c.objects, repeat=2):
        homs = isbell_hom(yoneda(c, a), yoneda(c, b))
        images = sorted(homs, key=IsbellMorphism.sort_key)
        assert images == sorted((yoneda_morphism(c, u) for u in c.hom(a, b)),
                                key=IsbellMorphism.sort_key)
        assert len(homs) == len(c.hom(a, b))


def test_hom_contains_identity():
    y = yoneda(TWO, "a")
    assert identity_morphism(y) in isbell_hom(y, y)


# -- maps from and to representables ------------------------------------------

@given(seeds())
def test_lemma2_on_random_objects(seed):
    rng = random.Random(seed)
    x = random_isbell_object(TWO, rng, 3)
    for a in TWO.objects:
        cert = lemma2_bijection(x, a)
        assert cert.plus_maps == len(x.plus(a))
        assert cert.minus_maps == len(x.minus(a))


def test_lemma2_on_a_representable():
    yb = yoneda(TWO, "b")
    for a in TWO.objects:
        cert = lemma2_bijection(yb, a)
        assert cert.plus_maps == len(TWO.hom(a, "b"))
        assert cert.minus_maps == len(TWO.hom("b", a))


def test_lemma2_with_empty_plus():
    plus = SetFunctor(opposite(TWO), {"a": [], "b": []}, {"f": {}})
    minus = hom_functor(TWO, "a")
    x = IsbellObject(TWO, plus, minus, {})
    cert = lemma2_bijection(x, "a")
    assert cert.plus_maps == 0 and cert.minus_maps == 1


def test_element_morphisms_have_the_given_components():
    rng = random.Random(9)
    x = random_isbell_object(TWO, rng, 3)
    for a in TWO.objects:
        for e in x.plus(a):
            assert from_plus_element(x, a, e).plus[a](TWO.identity(a)) == e
        for m in x.minus(a):
            assert from_minus_element(x, a, m).minus[a](TWO.identity(a)) == m


# -- duality -----------------------------------------------------------------------

@given(seeds(), st.sampled_from(["2", "span", "square"]))
def test_duality_is_an_involution(seed, name):
    rng = random.Random(seed)
    c = FIXTURE_CATS[name]
    x = random_isbell_object(c, rng, 2)
    assert dual(dual(x)) == x
    assert dual(x).base == opposite(c)


@pytest.mark.parametrize("name", sorted(FIXTURE_CATS))
def test_dual_of_yoneda_is_yoneda_of_the_opposite(name):
    c = FIXTURE_CATS[name]
    for o in c.objects:
        assert dual(yoneda(c, o)) == yoneda(opposite(c), o)


@given(seeds())
def test_duality_reverses_hom_sets(seed):
    rng = random.Random(seed)
    x, y = random_isbell_object(TWO, rng, 2), random_isbell_object(TWO, rng, 2)
    homs = isbell_hom(x, y)
    back = isbell_hom(dual(y), dual(x))
    assert len(homs) == len(back)
    assert sorted(map(dual_morphism, homs), key=IsbellMorphism.sort_key) == back


# -- canonical cylinder -----------------------------------------------------------

def test_canonical_cocone_over_a_point_is_indexed_by_elements():
    x = over_one(canonical_set(3), canonical_set(2))
    p, q = canonical_cylinder(x)
    assert len(p.diagram.source.objects) == 3 and len(q.diagram.source.objects) == 2
    assert sorted(leg.plus["*"].values[0] for leg in p.legs.values()) == ["0", "1", "2"]
    assert in_e(p) and in_m(q)


def test_canonical_cocone_of_a_sum_of_representables():
    plus = SetFunctor(opposite(TWO), {"a": ["ia", "fb"], "b": ["ib"]}, {"f": {"ib": "fb"}})
    empty_minus = SetFunctor(TWO, {"a": [], "b": []}, {"f": {}})
    x = IsbellObject(TWO, plus, empty_minus, {})
    p, _ = canonical_cylinder(x)
    assert len(p.legs) == 3
    assert pointwise(project_cocone(p, "+"), colimiting)


@given(seeds(), st.sampled_from(["1", "2", "span"]))
def test_canonical_cylinder_is_in_the_classes(seed, name):
    c = SMALL_CATS[name]
    x = random_isbell_object(c, random.Random(seed), 2)
    p, q = canonical_cylinder(x)
    assert in_e(p) and in_m(q)
    assert pointwise(project_cocone(p, "+"), colimiting)
    assert all(colimiting(s) for s in envelope_slices(q, "-"))


# -- the free factorisation system ------------------------------------------------

def test_identity_cylinder_on_a_representable():
    spec = envelope_cfs(TWO)
    env = IsbellEnvelope(TWO)
    for o in TWO.objects:
        y = yoneda(TWO, o)
        r = single_cylinder(env, identity_morphism(y))
        p, q = spec.factorise(r)
        assert compose_cylinder(q, p) == r
        assert env.inverse(p.legs["*"]) is not None


@given(seeds(), st.sampled_from(["1", "2", "span"]))
def test_canonical_factorisation_matches_the_free_one(seed, name):
    c = SMALL_CATS[name]
    spec = envelope_cfs(c)
    rng = random.Random(seed)
    x = random_isbell_object(c, rng, 2)
    p, q = canonical_cylinder(x)
    r = compose_cylinder(q, p)
    p2, q2 = spec.factorise(r)
    assert spec.e_member(p2) and spec.m_member(q2)
    cert = essential_uniqueness(spec, r, (p, q), (p2, q2))
    assert cert.filler.source == x


def test_single_morphism_over_a_point():
    env = IsbellEnvelope(ONE)
    x = over_one(canonical_set(2), canonical_set(1))
    y = over_one(canonical_set(1), canonical_set(2))
    for f in isbell_hom(x, y):
        p, q = envelope_cfs(ONE).factorise(single_cylinder(env, f))
        leg_p, leg_q = p.legs["*"], q.legs["*"]
        assert leg_p.plus["*"].is_bijective() and leg_q.minus["*"].is_bijective()
        assert compose(leg_q, leg_p) == f


def test_factorisation_legs_project_to_pointwise_colimits():
    spec = envelope_cfs(TWO)
    rng = random.Random(4)
    budget = Budget(max_index=2, max_set=2)
    n = 0
    for _ in range(10):
        r = spec.universe.random_cylinder(rng, budget)
        if r is None:
            continue
        p, q = spec.factorise(r)
        assert compose_cylinder(q, p) == r
        assert all(colimiting(s) for s in envelope_slices(p, "+"))
        assert all(colimiting(s) for s in envelope_slices(q, "-"))
        assert all(validate_morphism(leg).ok for leg in list(p.legs.values()) + list(q.legs.values()))
        n += 1
    assert n >= 5


def test_envelope_axioms_sampled():
    rep = check_axioms(envelope_cfs(TWO), Budget(max_index=2, max_set=2, samples=20))
    assert rep.ok, rep


def test_relabelled_copy_is_isomorphic():
    rng = random.Random(2)
    x = random_isbell_object(TWO, rng, 3)
    y, iso = relabel(x, rng)
    env = IsbellEnvelope(TWO)
    inv = env.inverse(iso)
    assert compose(inv, iso) == identity_morphism(x)
    assert validate_morphism(inv).ok


def test_envelope_cocones_need_not_be_jointly_epic():
    # the envelope is not small: an empty cocone whose vertex has empty plus
    # part is in E, yet maps out of it are free in the minus part
    from isbell.cfs import joint_epi_mono_check
    spec = envelope_cfs(TWO)
    rep = joint_epi_mono_check(spec, Budget(max_index=2, max_set=2))
    assert not rep.ok and rep.axiom == "E"
    (p,) = rep.witness
    assert p.legs == {} and spec.e_member(p)
    assert all(len(p.vertex.plus(a)) == 0 for a in TWO.objects)
    assert rep.counts == {} and joint_epi_mono_check(spec, Budget(max_index=1, max_set=1)).ok
