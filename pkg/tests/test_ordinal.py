import math

import pytest
from hypothesis import given, strategies as st

from actcat import ordinal
from actcat.ordinal import OrdinalMap


def test_compose_examples():
    f = ordinal.parse("[0,0,1]:2->1")
    g = ordinal.parse("[0,2]:1->2")
    assert ordinal.compose(f, g) == OrdinalMap(2, 2, (0, 0, 2))
    assert ordinal.compose(ordinal.identity(2), f) == f
    assert ordinal.compose(f, ordinal.identity(1)) == f
    e = OrdinalMap(-1, -1, ())
    assert ordinal.compose(e, OrdinalMap(-1, 3, ())) == OrdinalMap(-1, 3, ())


def test_no_map_into_empty():
    with pytest.raises(ValueError):
        OrdinalMap(0, -1, (0,))
    # but the empty ordinal maps everywhere, uniquely
    assert ordinal.enumerate_maps(-1, 5) == [OrdinalMap(-1, 5, ())]


def test_epi_mono_examples():
    e, m = ordinal.epi_mono_factorize(ordinal.identity(2))
    assert e == ordinal.identity(2) and m == ordinal.identity(2)
    e, m = ordinal.epi_mono_factorize(OrdinalMap(2, 2, (0, 0, 2)))
    assert e == OrdinalMap(2, 1, (0, 0, 1))
    assert m == OrdinalMap(1, 2, (0, 2))
    e, m = ordinal.epi_mono_factorize(OrdinalMap(-1, 4, ()))
    assert e == OrdinalMap(-1, -1, ())
    assert m == OrdinalMap(-1, 4, ())


def test_epi_mono_uniqueness_brute_force():
    # oracle: scan all epi/mono pairs through all middles
    for f in ordinal.enumerate_maps(3, 2):
        found = []
        for y in range(-1, 4):
            for e in ordinal.enumerate_maps(3, y):
                if not e.is_epi:
                    continue
                for m in ordinal.enumerate_maps(y, 2):
                    if m.is_mono and ordinal.compose(e, m) == f:
                        found.append((e, m))
        assert found == [ordinal.epi_mono_factorize(f)]


def test_pushout_examples():
    f = OrdinalMap(2, 1, (0, 0, 1))
    g = OrdinalMap(2, 1, (0, 1, 1))
    t1, t2 = ordinal.pushout_of_epis(f, g)
    assert t1.tgt_n == 0 and t2.tgt_n == 0
    i = ordinal.identity(2)
    t1, t2 = ordinal.pushout_of_epis(i, g)
    assert t1 == g and t2 == ordinal.identity(1)
    t1, t2 = ordinal.pushout_of_epis(g, g)
    assert t1 == t2 == ordinal.identity(1)


def test_pushout_is_set_pushout_of_representables():
    # probe the completed square against every small ordinal
    from actcat import squares
    epis = [m for m in ordinal.enumerate_maps(3, 2) if m.is_epi]
    epis += [m for m in ordinal.enumerate_maps(3, 1) if m.is_epi]
    for f in epis:
        for g in epis:
            t1, t2 = ordinal.pushout_of_epis(f, g)
            for z in range(-1, 5):
                ok, why = squares.is_pushout(
                    ordinal.enumerate_maps(z, 3),
                    ordinal.enumerate_maps(z, f.tgt_n),
                    ordinal.enumerate_maps(z, g.tgt_n),
                    ordinal.enumerate_maps(z, t1.tgt_n),
                    lambda s: ordinal.compose(s, f),
                    lambda s: ordinal.compose(s, g),
                    lambda x: ordinal.compose(x, t1),
                    lambda x: ordinal.compose(x, t2))
                assert ok, why


def test_enumerate_counts():
    assert len(ordinal.enumerate_maps(1, 1)) == 3
    assert len(ordinal.enumerate_maps(0, 2)) == 3
    assert len(ordinal.enumerate_maps(-1, 5)) == 1
    for n in range(-1, 4):
        for m in range(-1, 4):
            assert len(ordinal.enumerate_maps(n, m)) == ordinal.count_maps(n, m)
    assert ordinal.count_maps(2, 3) == math.comb(6, 3)


@given(st.integers(0, 4), st.integers(0, 4), st.data())
def test_factorization_recomposes(n, m, data):
    maps = ordinal.enumerate_maps(n, m)
    f = data.draw(st.sampled_from(maps))
    e, mo = ordinal.epi_mono_factorize(f)
    assert e.is_epi and mo.is_mono
    assert ordinal.compose(e, mo) == f


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3),
       st.integers(0, 3), st.data())
def test_compose_associative(a, b, c, d, data):
    f = data.draw(st.sampled_from(ordinal.enumerate_maps(a, b)))
    g = data.draw(st.sampled_from(ordinal.enumerate_maps(b, c)))
    h = data.draw(st.sampled_from(ordinal.enumerate_maps(c, d)))
    assert ordinal.compose(ordinal.compose(f, g), h) == \
        ordinal.compose(f, ordinal.compose(g, h))


def test_parse_format_roundtrip():
    for text in ("[0,0,2]:2->2", "[]:-1->3", "[1]:0->1"):
        assert ordinal.parse(text).format() == text
    with pytest.raises(ValueError):
        ordinal.parse("[2,1]:1->2")
