import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import FIXTURE_CATS, SMALL_CATS, finset_diagrams, tables
from oracles import law_failures, raw_cocones
from isbell._ids import split, tup
from isbell.cylinder import Cocone, restrict_cocone
from isbell.errors import MalformedError, UnknownIdError
from isbell.fincat import (FinCat, Functor, comma, compose_functors, disconnected_comma, empty,
                           functors, identity_functor, is_connected, is_final, is_initial,
                           opposite, point, span, terminal, validate_category, validate_functor,
                           walking_arrow)
from isbell.sets import FINSET, SetFunctor, constant_functor, elements, representable


def test_terminal_and_arrow_pass():
    assert validate_category(terminal()).ok
    two = walking_arrow()
    assert validate_category(two).ok
    assert set(two.morphisms) == {"id_a", "id_b", "f"}


def test_broken_right_unit_reports_the_pair():
    two = walking_arrow()
    table = dict(two.table)
    table[("f", "id_a")] = "id_a"
    rep = validate_category(FinCat(two.objects, two.morphisms, two.identities, table))
    assert not rep.ok
    assert rep.witness == ("f", "id_a")


def test_missing_composite_is_malformed():
    two = walking_arrow()
    table = dict(two.table)
    del table[("f", "id_a")]
    rep = validate_category(FinCat(two.objects, two.morphisms, two.identities, table))
    assert rep.kind == "malformed"


def test_duplicate_ids_rejected():
    with pytest.raises(MalformedError):
        FinCat.make(["a", "a"])
    with pytest.raises(MalformedError):
        FinCat.make(["a", "b"], {"id_a": ("a", "b")})


def test_opposites():
    assert opposite(terminal()) == terminal()
    op2 = opposite(walking_arrow())
    assert op2.morphisms["f"] == ("b", "a")
    assert opposite(opposite(span())) == span()


def test_unknown_ids():
    with pytest.raises(UnknownIdError):
        walking_arrow().identity("z")
    with pytest.raises(UnknownIdError):
        walking_arrow().dom("nope")


@given(tables())
def test_validator_matches_brute_force(c):
    assert len(c.objects) <= 5 and len(c.morphisms) <= 20
    assert validate_category(c).ok == (not law_failures(c))


# -- elements ------------------------------------------------------------------

def test_elements_of_a_point():
    one = terminal()
    el, proj = elements(constant_functor(one, ["x"]))
    assert len(el.objects) == 1 and len(el.morphisms) == 1


def test_elements_of_a_representable():
    two = walking_arrow()
    el, proj = elements(representable(two, "b"))
    assert sorted(el.objects) == [tup("a", "f"), tup("b", "id_b")]
    assert len(el.non_identities()) == 1
    (m,) = el.non_identities()
    assert proj.mor(m) == "f"


def test_elements_of_empty_functor():
    two = walking_arrow()
    el, _ = elements(SetFunctor(opposite(two), {"a": [], "b": []}, {"f": {}}))
    assert el.objects == () and not el.morphisms


@pytest.mark.parametrize("name", sorted(SMALL_CATS))
def test_elements_projection_faithful_with_fibres(name):
    c = SMALL_CATS[name]
    for b in c.objects:
        x = representable(c, b)
        el, proj = elements(x)
        assert validate_category(el).ok and validate_functor(proj).ok
        for a in x.source.objects:
            fibre = [o for o in el.objects if proj.ob(o) == a]
            assert sorted(split(o)[1] for o in fibre) == sorted(x(a))
        seen = {}
        for m, (s, t) in el.morphisms.items():
            key = (s, t, proj.mor(m))
            assert key not in seen
            seen[key] = m


# -- comma categories and finality ---------------------------------------------

def test_comma_of_identity_on_a_point():
    one = terminal()
    cm = comma(identity_functor(one), "*")
    assert len(cm.objects) == 1 and len(cm.morphisms) == 1


def test_slice_of_arrow_over_b():
    two = walking_arrow()
    sl = comma(identity_functor(two), "b")
    assert len(sl.objects) == 2
    assert sorted(split(o)[1] for o in sl.objects) == ["f", "id_b"]
    assert len(sl.non_identities()) == 1


def test_comma_of_empty_source():
    F = Functor(empty(), walking_arrow(), {}, {})
    cm = comma(F, "a")
    assert cm.objects == ()
    assert not is_connected(cm)


def _slice_point(c, obj):
    sl = comma(identity_functor(c), obj)
    top = next(o for o in sl.objects if split(o)[1] == c.identity(obj))
    return sl, point(sl, top)


@pytest.mark.parametrize("name", sorted(FIXTURE_CATS))
def test_terminal_of_slice_is_final(name):
    c = FIXTURE_CATS[name]
    for obj in c.objects:
        sl, h = _slice_point(c, obj)
        assert validate_category(sl).ok
        assert is_final(h)


def test_identity_is_final_and_initial(fixture_cat):
    assert is_final(identity_functor(fixture_cat))
    assert is_initial(identity_functor(fixture_cat))


def test_non_terminal_point_is_not_final():
    two = walking_arrow()
    h = point(two, "a")
    assert not is_final(h)
    assert disconnected_comma(h, "under") == "b"
    assert is_initial(h)


def test_compose_functors_is_associative():
    two = walking_arrow()
    fs = functors(two, two)
    for f, g, h in itertools.product(fs, repeat=3):
        assert compose_functors(h, compose_functors(g, f)) == compose_functors(compose_functors(h, g), f)


def test_functors_count_matches():
    # functors 2 -> 2: the three arrows of 2, picked out
    assert len(functors(walking_arrow(), walking_arrow())) == 3
    assert len(functors(terminal(), span())) == 3


def _cocone_bijection_holds(h, d):
    """Restriction along ``h`` is a bijection on cocones under ``d`` into a few sets."""
    dh = compose_functors(d, h)
    for n in range(3):
        target = tuple(str(k) for k in range(n))
        full = [Cocone(d, target, {i: _fn(d.ob(i), target, fam[i]) for i in d.source.objects})
                for fam in raw_cocones(d, target)]
        images = {restrict_cocone(c, h) for c in full}
        small = list(raw_cocones(dh, target))
        if len(images) != len(full) or len(images) != len(small):
            return False
    return True


def _fn(dom, cod, mapping):
    from isbell.sets import FinFunction
    return FinFunction.from_mapping(dom, cod, mapping)


@given(st.data())
def test_final_functor_gives_cocone_bijection(data):
    names = ["2", "span", "square", "1+1", "chain3", "pair"]
    c = SMALL_CATS[data.draw(st.sampled_from(names))]
    src = SMALL_CATS[data.draw(st.sampled_from(["1", "2", "1+1"]))]
    hs = [h for h in functors(src, c) if is_final(h)]
    if not hs:
        return
    h = data.draw(st.sampled_from(hs))
    d = data.draw(finset_diagrams(shape=c, max_size=2))
    assert _cocone_bijection_holds(h, d)
