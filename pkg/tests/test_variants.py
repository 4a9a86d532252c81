import itertools
import random

import pytest
from hypothesis import given, strategies as st

from conftest import FIXTURE_CATS, SMALL_CATS, finsets, functions, seeds
from oracles import raw_isbell_hom_count
from isbell.cfs import covering_mono_cfs, essential_uniqueness, is_jointly_injective, lift_ofs, surj_inj
from isbell.cylinder import Cylinder, cocones, compose_cylinder, cones, precompose, single_cylinder
from isbell.envelope import IsbellObject, isbell_hom, random_isbell_object, yoneda
from isbell.errors import ShapeError
from isbell.fincat import (Functor, comma, commutative_square, discrete, identity_functor, opposite,
                           point, terminal, walking_arrow)
from isbell.ortho import lemma1_transfer
from isbell.sets import FINSET, FinFunction, SetFunctor, canonical_set, fset, hom_functor, representable
from isbell.variants import (ALL_FINITE, PRODUCTS, REPRESENTABLES, SUMS, WeightClass, arrow_category_check,
                             arrow_object, array_factorise, is_phi_diagram, is_product_of_representables,
                             is_representable, is_sum_of_representables, restricted_envelope_member,
                             source_factorise)
from isbell._ids import split

TWO = walking_arrow()
CLASSES = [REPRESENTABLES, SUMS, PRODUCTS, ALL_FINITE]


def fn(dom, cod, vals):
    return FinFunction(tuple(dom), tuple(cod), tuple(vals))


def dset(sets):
    shape = discrete(sorted(sets))
    return Functor(shape, FINSET, sets, {shape.identity(x): FinFunction.identity(s) for x, s in sets.items()})


def sum_of_two():
    """``C(-, a) + C(-, b)`` over the arrow category, with empty minus part."""
    plus = SetFunctor(opposite(TWO), {"a": ["ia", "fb"], "b": ["ib"]}, {"f": {"ib": "fb"}})
    minus = SetFunctor(TWO, {"a": [], "b": []}, {"f": {}})
    return IsbellObject(TWO, plus, minus, {})


# -- weight classes ----------------------------------------------------------

def test_unknown_weight_class():
    with pytest.raises(ValueError):
        WeightClass("everything")


@pytest.mark.parametrize("name", sorted(FIXTURE_CATS))
def test_representables_are_in_every_restriction(name):
    c = FIXTURE_CATS[name]
    for o in c.objects:
        for phi, psi in itertools.product(CLASSES, repeat=2):
            assert restricted_envelope_member(yoneda(c, o), phi, psi)


def test_sum_of_two_representables():
    x = sum_of_two()
    verdicts = {phi.name: restricted_envelope_member(x, phi, ALL_FINITE) for phi in CLASSES}
    assert verdicts == {"representables": False, "finite-coproducts-of-representables": True,
                        "finite-products-of-representables": False, "all-finite": True}
    assert is_sum_of_representables(x.plus) == [("a", "ia"), ("b", "ib")]


def test_detectors_on_representables():
    for name, c in FIXTURE_CATS.items():
        for o in c.objects:
            assert is_representable(representable(c, o)) == (o, c.identity(o))
            assert is_product_of_representables(hom_functor(c, o)) is not None


def test_terminal_copresheaf_is_an_empty_product():
    c = commutative_square()
    ones = SetFunctor(c, {x: ["*"] for x in c.objects},
                      {m: {"*": "*"} for m in c.morphisms})
    assert is_product_of_representables(ones) is not None
    assert is_representable(ones) == ("a", "*")


# -- arrow objects -----------------------------------------------------------

def _poset_squares(c):
    leq = {(x, y) for x in c.objects for y in c.objects if c.hom(x, y)}
    arrows = sorted(leq)
    return len(arrows), sum(1 for (a1, b1), (a2, b2) in itertools.product(arrows, repeat=2)
                            if (a1, a2) in leq and (b1, b2) in leq)


@pytest.mark.parametrize("name,objects,squares", [("1", 1, 1), ("2", 3, 6), ("square", 9, 36)])
def test_arrow_correspondence(name, objects, squares):
    c = FIXTURE_CATS[name]
    cert = arrow_category_check(c)
    assert cert.ok
    assert (cert.objects, cert.squares) == (objects, squares) == _poset_squares(c)
    assert cert.objects == cert.arrows == len(c.morphisms)


def test_arrow_objects_on_a_non_poset():
    from isbell.fincat import parallel_pair
    c = parallel_pair()
    cert = arrow_category_check(c)
    assert cert.objects == len(c.morphisms) == 4


def test_identity_arrow_is_yoneda():
    for name, c in FIXTURE_CATS.items():
        for o in c.objects:
            assert arrow_object(c, c.identity(o)) == yoneda(c, o)


def test_arrow_hom_counts_against_brute_force():
    c = commutative_square()
    for t1, t2 in itertools.product(c.morphisms, repeat=2):
        x, y = arrow_object(c, t1), arrow_object(c, t2)
        assert len(isbell_hom(x, y)) == raw_isbell_hom_count(x, y)


# -- arrays -------------------------------------------------------------------

def test_single_entry_array():
    f = fn(canonical_set(3), fset(["a", "b"]), "aab")
    r = single_cylinder(FINSET, f)
    assert array_factorise(r) == covering_mono_cfs().factorise(r)


def test_two_by_one_array():
    D = dset({"i": ("x",), "j": canonical_set(2)})
    E = dset({"k": fset(["a", "b", "c"])})
    r = Cylinder(D, E, {("i", "k"): fn(("x",), "abc", "c"), ("j", "k"): fn(canonical_set(2), "abc", "aa")})
    p, q = array_factorise(r)
    assert compose_cylinder(q, p) == r
    assert len(p.vertex) == 2 and is_jointly_injective(q)


@st.composite
def arrays(draw, rows=2, cols=2):
    D = dset({f"i{k}": draw(finsets(3)) for k in range(rows)})
    E = dset({f"j{k}": draw(finsets(3)) for k in range(cols)})
    comps = {(i, j): draw(functions(D.ob(i), E.ob(j))) for i in D.source.objects for j in E.source.objects}
    return Cylinder(D, E, comps)


@given(arrays())
def test_two_by_two_arrays(r):
    spec = covering_mono_cfs()
    p, q = array_factorise(r)
    assert compose_cylinder(q, p) == r
    assert spec.e_member(p) and spec.m_member(q)
    other = lift_ofs(surj_inj()).factorise(r)
    essential_uniqueness(spec, r, (p, q), other)


def test_array_rejects_non_discrete():
    s = canonical_set(1)
    D = Functor(TWO, FINSET, {"a": s, "b": s}, {m: FinFunction.identity(s) for m in TWO.morphisms})
    r = Cylinder(D, dset({"k": s}), {("a", "k"): FinFunction.identity(s), ("b", "k"): FinFunction.identity(s)})
    with pytest.raises(ShapeError):
        array_factorise(r)


# -- sources -------------------------------------------------------------------

def test_single_map_source_is_the_image_factorisation():
    f = fn(canonical_set(3), fset(["a", "b", "c"]), "aca")
    e, cone = source_factorise(single_cylinder(FINSET, f))
    assert e.is_surjective() and len(e.cod) == 2
    assert FINSET.compose(cone.legs["*"], e) == f


def test_two_legged_source():
    S = canonical_set(3)
    D = dset({"i": S})
    E = dset({"x": fset(["a", "b"]), "y": fset(["u", "v"])})
    r = Cylinder(D, E, {("i", "x"): fn(S, "ab", "aab"), ("i", "y"): fn(S, "uv", "uuv")})
    e, cone = source_factorise(r)
    # the joint image of the pairing has two points
    assert e.is_surjective() and len(e.cod) == 2
    assert is_jointly_injective(cone)
    for j in ("x", "y"):
        assert FINSET.compose(cone.legs[j], e) == r[("i", j)]


def test_empty_source():
    S = canonical_set(2)
    e, cone = source_factorise(Cylinder(dset({"i": S}), dset({}), {}))
    assert len(e.cod) == 1 and e.is_surjective() and cone.legs == {}
    e, _ = source_factorise(Cylinder(dset({"i": ()}), dset({}), {}))
    assert e.cod == ()


def test_source_shape_errors():
    S = canonical_set(1)
    with pytest.raises(ShapeError):
        source_factorise(Cylinder(dset({"i": S, "j": S}), dset({}), {}))


@given(seeds())
def test_sources_match_covering(seed):
    rng = random.Random(seed)
    S = canonical_set(rng.randrange(4))
    E = dset({f"j{k}": canonical_set(rng.randrange(1, 4)) for k in range(rng.randrange(3))})
    comps = {("i", j): FinFunction(S, E.ob(j), tuple(rng.choice(E.ob(j)) for _ in S)) for j in E.source.objects}
    r = Cylinder(dset({"i": S}), E, comps)
    e, cone = source_factorise(r)
    p, q = covering_mono_cfs().factorise(r)
    assert len(e.cod) == len(p.vertex)


# -- phi-diagrams --------------------------------------------------------------

def _slice_projection(c, obj):
    sl = comma(identity_functor(c), obj)
    return Functor(sl, c, {o: split(o)[0] for o in sl.objects}, {m: split(m)[0] for m in sl.morphisms}), sl


@pytest.mark.parametrize("name", ["2", "span", "square"])
def test_slices_are_representable_diagrams(name):
    c = FIXTURE_CATS[name]
    for o in c.objects:
        d, _ = _slice_projection(c, o)
        verdict, (phi, H) = is_phi_diagram(d, REPRESENTABLES)
        assert verdict == "yes"
        assert is_representable(phi) is not None


def test_points_are_representable_diagrams():
    for o in TWO.objects:
        verdict, witness = is_phi_diagram(point(TWO, o), REPRESENTABLES)
        assert verdict == "yes"


def test_only_unknown_when_no_witness():
    d = Functor(discrete(["x", "y"]), TWO, {"x": "a", "y": "b"}, {"id_x": "id_a", "id_y": "id_b"})
    assert is_phi_diagram(d, REPRESENTABLES) == ("unknown", None)
    assert is_phi_diagram(d, SUMS)[0] == "yes"


@pytest.mark.parametrize("name", ["2", "square"])
def test_generators_decide_orthogonality(name):
    # a cocone over a presentation and its restriction to the generating point agree
    c = FIXTURE_CATS[name]
    for o in c.objects:
        d, sl = _slice_projection(c, o)
        verdict, (phi, H) = is_phi_diagram(point(c, o), REPRESENTABLES)
        assert verdict == "yes"
        top = next(x for x in sl.objects if split(x)[1] == c.identity(o))
        h = point(sl, top)
        for v in c.objects:
            for p in cocones(d, v):
                for w in c.objects:
                    for q in cones(identity_functor(c), w):
                        assert lemma1_transfer(p, q, h, identity_functor(c))
