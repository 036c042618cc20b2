"""Tests for the chain-on-chain action category.

The count oracles below are independent of the construction code: they
simulate the stagewise growth purely on (moment, depth) records, using
the fact that the acted category is generated by a tree with in-degree
one, so the morphisms into an object are exactly its weak ancestors.
"""

import itertools

import pytest

from actcat import chainact as ca
from actcat import fincat, nerve, ordinal


def oracle_object_records(n, k):
    """Stagewise simulation with abstract (moment, depth) records."""
    if k == -1:
        return []
    objs = [(("*", j) if j < k else 0, j) for j in range(k + 1)]
    for i in range(1, n + 1):
        new = []
        for moment, depth in objs:
            if moment == i - 1:
                # one new object per weak ancestor, at depths 1..depth+1
                new.extend((i, d) for d in range(1, depth + 2))
        objs.extend(new)
    return objs


def oracle_object_count(n, k):
    return len(oracle_object_records(n, k))


def oracle_hom_0101():
    # direct enumeration over the explicit two-object chain 0 -> 1 with
    # moments (*0, 0): alpha is a single object of {*0, 0}
    count = 0
    for alpha0 in ("*0", "0"):
        for b0 in (0, 1):
            for b1 in (0, 1):
                if b0 > b1:
                    continue
                moment = "*0" if b1 == 0 else "0"
                if moment == alpha0:
                    count += 1
    return count


def test_build_counts_against_oracle():
    for n in range(4):
        for k in range(-1, 4):
            assert ca.build(n, k).n_objects == oracle_object_count(n, k)


def test_frozen_counts():
    assert ca.build(0, 2).n_objects == 3
    assert ca.build(1, 2).n_objects == 6
    assert ca.build(2, 2).n_objects == 15
    assert ca.build(2, 2).degree == 17
    assert ca.build(1, 1).n_objects == 4  # the fundamental example
    assert ca.build(0, 0).degree == 1
    assert ca.build(0, -1).degree == 0


def test_acted_hom_sets_are_singletons():
    # the acted category is generated by a tree with in-degree one, so
    # hom-sets have at most one element
    for key in ((2, 2), (3, 1)):
        o = ca.build(*key)
        _, acted, _ = ca.as_fincat(o)
        for a in acted.objects:
            for b in acted.objects:
                arrows = [x for x in acted.arrows
                          if x.src == a and x.tgt == b]
                assert len(arrows) <= 1


def test_moments_of_base_chain():
    o = ca.build(0, 2)
    assert [o.moment[x] for x in range(3)] == [("*", 0), ("*", 1), 0]


def test_ladder_hearts():
    o = ca.build(1, 2)
    hearts = [x for x in range(o.n_objects) if o.stage[x] == 1]
    assert len(hearts) == 3
    assert all(o.moment[x] == 1 for x in hearts)
    assert sorted(o.parent[x] for x in hearts) == [0, 1, 2]


def test_moment_monotone_along_morphisms():
    # along any morphism a -> b the moment weakly increases in the star
    # order; stars sit below the integers
    def rank(o, c):
        return (0, c[1]) if isinstance(c, tuple) else (1, c)

    for n in range(3):
        for k in range(-1, 3):
            o = ca.build(n, k)
            for b in range(o.n_objects):
                for a in o.path[b]:
                    assert rank(o, o.moment[a]) <= rank(o, o.moment[b])


def test_hom_counts():
    assert len(ca.hom_enumerate(ca.build(0, 1), ca.build(0, 1))) == 3
    assert oracle_hom_0101() == 3
    h11 = ca.hom_enumerate(ca.build(1, 1), ca.build(1, 1))
    assert sum(1 for m in h11 if m.is_identity) == 1
    o22 = ca.build(2, 2)
    assert len(ca.hom_enumerate(ca.build(0, 0), o22)) == o22.n_objects


def test_hat_extension_examples():
    o11 = ca.build(1, 1)
    i = ca.identity(o11)
    c_map, d_map = ca.hat_extend(i)
    assert d_map == tuple(range(o11.n_objects))
    assert all(c_map[c] == c for c in o11.c_objects)
    # alpha = (0, 2) into <2|1> sends the heart over g two stages up
    o21 = ca.build(2, 1)
    m = ca.ActMorphism(o11, o21, (0, 2), (0, 1))
    _, d_map = ca.hat_extend(m)
    heart = o11.index[(1, (0, 1))]
    assert o21.names[d_map[heart]] == (2, (0, (1, (0, 1))))


def test_hat_is_a_map_of_actions():
    # the extension intertwines moments and the action tables
    src, tgt = ca.build(1, 1), ca.build(2, 2)
    for m in ca.hom_enumerate(src, tgt):
        c_map, d_map = ca.hat_extend(m)
        for x in range(src.n_objects):
            assert tgt.moment[d_map[x]] == c_map[src.moment[x]]


def test_compose_unital_and_associative():
    objs = [ca.build(n, k) for n in (0, 1) for k in (-1, 0, 1)]
    for a, b in itertools.product(objs, repeat=2):
        for f in ca.hom_enumerate(a, b):
            assert ca.compose(ca.identity(a), f) == f
            assert ca.compose(f, ca.identity(b)) == f
    for a, b, c, d in itertools.product(objs[:4], repeat=4):
        for f in ca.hom_enumerate(a, b)[:3]:
            for g in ca.hom_enumerate(b, c)[:3]:
                for h in ca.hom_enumerate(c, d)[:3]:
                    assert ca.compose(ca.compose(f, g), h) == \
                        ca.compose(f, ca.compose(g, h))


def test_classify_examples():
    deg = ca.ActMorphism(ca.build(1, 1), ca.build(0, 1), (0, 0), (0, 1))
    assert ca.classify(deg) == (False, True)
    face = ca.ActMorphism(ca.build(0, 1), ca.build(1, 1), (0,), (0, 1))
    assert ca.classify(face) == (True, False)
    assert ca.classify(ca.identity(ca.build(1, 1))) == (True, True)


def test_minus_closed_under_composition():
    objs = [ca.build(n, k) for n in (0, 1, 2) for k in (-1, 0, 1)]
    for a, b, c in itertools.product(objs, repeat=3):
        for f in ca.hom_enumerate(a, b):
            if not ca.classify(f)[1]:
                continue
            for g in ca.hom_enumerate(b, c):
                if not ca.classify(g)[1]:
                    continue
                assert ca.classify(ca.compose(f, g))[1]


def test_structure_lemma_on_window():
    objs = [ca.build(n, k) for n in (0, 1, 2) for k in (-1, 0, 1, 2)]
    for a, b in itertools.product(objs, repeat=2):
        for m in ca.hom_enumerate(a, b):
            plus, minus = ca.classify(m)
            alpha_onto = set(range(b.n + 1)).issubset(set(m.alpha))
            beta_spine = set(range(b.k + 1)).issubset(set(m.beta)) \
                if b.k >= 0 else True
            # (1) onto both spines implies inverse class
            if alpha_onto and beta_spine:
                assert minus
            # (2) inverse class covers the target spine, inside it
            if minus and b.k >= 0:
                assert set(m.beta) == set(range(b.k + 1))
            # (3) direct class has injective extensions
            if plus:
                c_map, d_map = ca.hat_extend(m)
                assert len(set(c_map.values())) == len(c_map)
                assert len(set(d_map)) == len(d_map)


def test_reedy_factorize_examples():
    o11 = ca.build(1, 1)
    mn, pl = ca.reedy_factorize(ca.identity(o11))
    assert mn.is_identity and pl.is_identity
    # a direct-class map factors with an identity inverse part
    face = ca.ActMorphism(ca.build(0, 1), o11, (0,), (0, 1))
    mn, pl = ca.reedy_factorize(face)
    assert mn.tgt.key == (0, 1) and mn.is_identity
    # beta landing on a starred moment collapses alpha through [0]
    m = ca.ActMorphism(ca.build(1, 0), o11, (("*", 0),) * 2, (0,))
    mn, pl = ca.reedy_factorize(m)
    assert mn.tgt.key == (0, 0)
    assert ca.compose(mn, pl) == m
    assert ca.classify(mn)[1] and ca.classify(pl)[0]


def test_elegance_pushout_cases():
    o20 = ca.build(2, 0)
    collapses = [m for m in ca.hom_enumerate(o20, ca.build(0, 0))
                 if ca.classify(m)[1]]
    (f,) = collapses
    l1, l2 = ca.elegance_pushout(f, f)
    assert l1.tgt.key == (0, 0)
    o11 = ca.build(1, 1)
    alpha_col = ca.ActMorphism(o11, ca.build(0, 1), (0, 0), (0, 1))
    beta_col = ca.ActMorphism(o11, ca.build(1, 0), (0, 1), (0, 0))
    assert ca.classify(alpha_col)[1] and ca.classify(beta_col)[1]
    l1, l2 = ca.elegance_pushout(alpha_col, beta_col)
    assert l1.tgt.key == (0, 0)
    assert ca.compose(alpha_col, l1) == ca.compose(beta_col, l2)


def test_probe_objects_degree_bound():
    probes = ca.probe_objects(10)
    assert all(o.degree <= 10 for o in probes)
    assert ca.build(0, 9) in probes
    assert ca.build(1, 3) in probes
    assert ca.build(2, 1) not in probes  # degree 11


def test_materialized_action_satisfies_axioms():
    for key in ((1, 1), (2, 2), (1, -1)):
        _, _, act = ca.as_fincat(ca.build(*key))
        assert fincat.check_cat_action(act) == []


def test_generic_extension_agrees_with_hat():
    # the universal-property extension over the materialized action must
    # match the formal hat on objects
    o11 = ca.build(1, 1)
    _, _, act = ca.as_fincat(o11)
    for m in ca.hom_enumerate(ca.build(1, 1), o11):
        cell = nerve.Cell(
            nerve.Chain(tuple(o11.c_label(a) for a in m.alpha),
                        (_arrow_label(o11, m.alpha[0], m.alpha[1]),)),
            nerve.Chain(tuple(o11.obj_label(b) for b in m.beta),
                        (_mor_label(o11, m.beta[0], m.beta[1]),)))
        ext = nerve.extend_cell(act, cell, o11)
        _, d_map = ca.hat_extend(m)
        for x in range(o11.n_objects):
            assert ext.d_obj(x) == o11.obj_label(d_map[x])


def _arrow_label(o, c1, c2):
    if c1 == c2 or isinstance(c1, tuple):
        return f"id_{o.c_label(c1)}"
    return f"p{c1}.{c2}"


def _mor_label(o, a, b):
    return f"id_{o.obj_label(a)}" if a == b else f"m{a}.{b}"


def test_hom_description_comparison():
    # the naive spine-only description can undercount
    full, spine = ca.compare_hom_descriptions(ca.build(0, 0), ca.build(1, 1))
    assert full == 4 and spine != full
    full, spine = ca.compare_hom_descriptions(ca.build(0, 0), ca.build(0, 1))
    assert full == 2


def test_to_dot_deterministic():
    a = ca.to_dot(ca.build(2, 1))
    b = ca.to_dot(ca.build(2, 1))
    assert a == b and a.startswith("//") and "digraph" in a


def test_invalid_morphisms_rejected():
    o11 = ca.build(1, 1)
    with pytest.raises(ValueError):
        ca.ActMorphism(o11, o11, (1, 0), (0, 1))  # alpha not monotone
    with pytest.raises(ValueError):
        ca.ActMorphism(o11, o11, (0, 1), (1, 0))  # beta not a chain
    with pytest.raises(ValueError):
        ca.ActMorphism(o11, o11, (1, 1), (0, 1))  # moment mismatch
