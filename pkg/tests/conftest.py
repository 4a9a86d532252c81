import itertools
import os
import sys

import pytest
from hypothesis import HealthCheck, assume, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from isbell.fincat import (FinCat, Functor, chain, commutative_square, discrete, index_shapes,
                           parallel_pair, poset, span, terminal, validate_functor,
                           walking_arrow)
from isbell.sets import FINSET, FinFunction, canonical_set

settings.register_profile("desk", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("desk")

HERE = os.path.dirname(__file__)
SAMPLE = os.path.join(HERE, "data", "sample.cat")

FIXTURE_CATS = {
    "1": terminal(),
    "2": walking_arrow(),
    "span": span(),
    "square": commutative_square(),
}

SMALL_CATS = dict(FIXTURE_CATS, pair=parallel_pair(), chain3=chain(3), **{"1+1": discrete(["a", "b"])})


@pytest.fixture(params=sorted(FIXTURE_CATS))
def fixture_cat(request):
    return FIXTURE_CATS[request.param]


# -- strategies ----------------------------------------------------------------

SHAPES = index_shapes(3)


def generators(shape):
    ids = set(shape.identities.values())
    composite = {h for (g, f), h in shape.table.items() if g not in ids and f not in ids}
    return [m for m in shape.morphisms if m not in ids and m not in composite]


@st.composite
def finsets(draw, max_size=3):
    return canonical_set(draw(st.integers(0, max_size)))


@st.composite
def functions(draw, dom, cod):
    dom, cod = tuple(dom), tuple(cod)
    if not cod:
        return FinFunction(dom, cod, ()) if not dom else draw(st.nothing())
    vals = draw(st.lists(st.sampled_from(cod), min_size=len(dom), max_size=len(dom)))
    return FinFunction(dom, cod, tuple(vals))


@st.composite
def finset_diagrams(draw, max_objects=2, max_size=3, shape=None):
    """A diagram of finite sets; composite arrows of the shape are filled in."""
    if shape is None:
        names = sorted(k for k, v in SHAPES.items() if len(v.objects) <= max_objects)
        shape = SHAPES[draw(st.sampled_from(names))]
    sets = {x: draw(finsets(max_size)) for x in shape.objects}
    mm = {i: FinFunction.identity(sets[x]) for x, i in shape.identities.items()}
    for m in generators(shape):
        x, y = shape.morphisms[m]
        mm[m] = draw(functions(sets[x], sets[y]))
    for (g, f), h in shape.table.items():
        if h not in mm and g in mm and f in mm:
            mm[h] = FINSET.compose(mm[g], mm[f])
    d = Functor(shape, FINSET, sets, mm)
    assume(validate_functor(d).ok)
    return d


@st.composite
def tables(draw):
    """A composition table that is sometimes lawful and sometimes not."""
    base = draw(st.sampled_from([terminal(), walking_arrow(), span(), commutative_square(),
                                 parallel_pair(), chain(3), chain(4),
                                 poset(list("abcde"), [("a", "b"), ("a", "c"), ("c", "d")])]))
    if draw(st.booleans()):
        return base
    table = dict(base.table)
    key = draw(st.sampled_from(sorted(table)))
    g, f = key
    x, z = base.morphisms[f][0], base.morphisms[g][1]
    pool = sorted(base.morphisms) if draw(st.booleans()) else \
        sorted(m for m, xy in base.morphisms.items() if xy == (x, z))
    table[key] = draw(st.sampled_from(pool))
    return FinCat(base.objects, base.morphisms, base.identities, table)


def seeds():
    return st.integers(0, 2 ** 32 - 1)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 11):
        ok, detail = mod.RESULTS.get(n, (False, "not run to completion"))
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
