"""Tests for the chain-on-tree-operad action category.

The color oracle for unary towers is independent of the construction: a
color is a record carrying its reach (the number of colors strictly
below it in its expansion), operations with a given target number
reach+1, and each stage adds one color per operation of the previous
moment.
"""

import itertools

import pytest

from actcat import fincat, ptree, treeact as ta
from actcat.ptree import EMPTY, ETA

COR1 = ptree.parse("(*)")
COR2 = ptree.parse("(* *)")
LIN2 = ptree.parse("((*))")
NULL2 = ptree.parse("(())")


def oracle_eta_colors(n):
    """(moment, reach) simulation for the single-edge tree."""
    colors = [(0, 0)]
    for i in range(1, n + 1):
        new = []
        for moment, reach in colors:
            if moment == i - 1:
                # one new color per cut: the identity cut keeps the whole
                # expansion below, deeper cuts keep successively less
                new.append((i, reach + 1))
                new.extend((i, r + 1)
                           for r in _eta_reaches_below(colors, reach))
        colors.extend(new)
    return colors


def _eta_reaches_below(colors, reach):
    # in a unary tower the expansion below a color of reach r passes
    # through colors of reaches r-1, ..., 0 in order
    return list(range(reach - 1, -1, -1))


def test_eta_color_oracle():
    for n in range(4):
        assert ta.build(n, ETA).n_colors == len(oracle_eta_colors(n))
    assert ta.build(2, ETA).n_colors == 4
    assert len(oracle_eta_colors(2)) == 4


def test_frozen_counts():
    o = ta.build(2, ETA)
    assert o.n_colors == 4 and o.degree == 5
    assert ta.build(0, COR1).n_colors == 2
    assert len(ta.build(0, COR1).operations()) == 3
    assert ta.build(1, COR1).n_colors == 4
    assert ta.build(0, COR2).degree == 1
    assert ta.build(3, EMPTY).degree == 3


def test_stage_zero_matches_free_operad():
    # cuts of stage 0 agree with the region boundaries of the tree operad
    for tree in (COR1, COR2, LIN2, NULL2):
        o = ta.build(0, tree)
        ops = {(op.target, op.sources)
               for op in ptree.enumerate_operations(tree)}
        mine = {(o.col_names[t], tuple(o.col_names[x] for x in w))
                for (t, w) in o.operations()}
        assert mine == ops


def test_generator_count_identity():
    # |gen| = |V| + |Col| - |E|, recomputed two ways at every build
    for n in range(3):
        for tree in (ETA, COR1, COR2, LIN2, NULL2):
            o = ta.build(n, tree)
            assert o.n_gens == sum(1 for g in o.col_gen if g is not None)
            assert o.n_gens == tree.n_vertices + o.n_colors - tree.n_edges


def test_gen_bijects_with_non_leaf_colors():
    for n in range(3):
        for tree in (ETA, COR1, COR2, LIN2):
            o = ta.build(n, tree)
            assert o.n_gens == o.n_colors - len(o.leaf_cols)
            assert all(o.col_stage[c] == 0 for c in o.leaf_cols)


def test_color_moment_order_along_operations():
    # inputs of an operation sit strictly below its target in the order
    # on the acting objects (stars below integers, stars by the tree)
    for n in range(3):
        for tree in (COR1, COR2, LIN2):
            o = ta.build(n, tree)
            for t in range(o.n_colors):
                for w in o.cuts(t):
                    if w == (t,):
                        continue
                    for c in w:
                        assert _strictly_below(o, o.col_moment[c],
                                               o.col_moment[t])


def _strictly_below(o, a, b):
    if isinstance(a, tuple) and isinstance(b, tuple):
        ea, eb = a[1], b[1]
        return ea[:len(eb)] == eb and ea != eb
    if isinstance(a, tuple):
        return True
    if isinstance(b, tuple):
        return False
    return a < b


def test_hom_counts():
    o0eta = ta.build(0, ETA)
    assert len(ta.hom_enumerate(o0eta, ta.build(0, COR2))) == 3
    assert len(ta.hom_enumerate(o0eta, ta.build(0, LIN2))) == 3
    # source with the empty tree: chain maps plus constant stars
    o1empty = ta.build(1, EMPTY)
    h = ta.hom_enumerate(o1empty, ta.build(1, COR2))
    assert len(h) == 3 + 2  # monotone [1]->[1] plus two constant stars
    # identities occur exactly once
    h = ta.hom_enumerate(ta.build(1, COR2), ta.build(1, COR2))
    assert sum(1 for m in h if m.is_identity) == 1


def test_extract_tree_over():
    o = ta.build(0, COR2)
    t0, mapping = ta.extract_tree_over(o, 0)
    assert t0 == COR2 and mapping[()] == 0
    o1 = ta.build(1, COR1)
    cv = o1.col_index[(1, ((), ((0,),)))]
    t1, _ = ta.extract_tree_over(o1, cv)
    assert t1 == COR1
    leaf = o1.col_index[(0,)]
    t2, _ = ta.extract_tree_over(o1, leaf)
    assert t2 == ETA


def test_classify_examples():
    o = ta.build(1, COR2)
    assert ta.classify(ta.identity(o)) == (True, True)
    drop = ta.OpActMorphism(o, ta.build(0, COR2), (0, 0), (0, 1, 2))
    assert ta.classify(drop) == (False, True)
    # the broken-minus regression: edge-surjective but leaf-violating
    bad = ta.OpActMorphism(ta.build(0, COR1), ta.build(0, NULL2), (0,),
                           (0, 1))
    assert ta.classify(bad)[1] is False
    assert ta.build(0, COR1).degree < ta.build(0, NULL2).degree


def test_minus_lands_in_tree_colors():
    objs = [ta.build(n, t) for n in (0, 1)
            for t in (ETA, COR1, COR2, LIN2)]
    for a, b in itertools.product(objs, repeat=2):
        for m in ta.hom_enumerate(a, b):
            if ta.classify(m)[1]:
                assert all(b.col_stage[c] == 0 for c in m.beta)
                # every leaf of the target is hit by a source leaf
                idx = a.tree.index
                leaf_imgs = {m.beta[idx[l]] for l in a.tree.leaves}
                assert b.leaf_cols.issubset(leaf_imgs)


def test_structure_lemma_on_window():
    objs = [ta.build(n, t) for n in (0, 1)
            for t in (ETA, COR1, COR2, NULL2)]
    for a, b in itertools.product(objs, repeat=2):
        for m in ta.hom_enumerate(a, b):
            plus, minus = ta.classify(m)
            alpha_onto = set(range(b.n + 1)).issubset(set(m.alpha))
            if not a.tree.is_empty:
                idx = a.tree.index
                covers_edges = set(range(b.tree.n_edges)).issubset(
                    set(m.beta))
                leaves_ok = all(m.beta[idx[l]] in b.leaf_cols
                                for l in a.tree.leaves)
                if alpha_onto and covers_edges and leaves_ok:
                    assert minus
            if plus:
                c_map, d_map = ta.hat_extend(m)
                assert len(set(c_map.values())) == len(c_map)
                assert len(set(d_map)) == len(d_map)


def test_reedy_factorize_cases():
    o0eta, o1eta = ta.build(0, ETA), ta.build(1, ETA)
    i = ta.identity(o1eta)
    mn, pl = ta.reedy_factorize(i)
    assert mn.is_identity and pl.is_identity
    # case (a): root goes to a stage-1 color
    c = o1eta.col_index[(1, ((), ((),)))]
    m = ta.OpActMorphism(o0eta, o1eta, (1,), (c,))
    mn, pl = ta.reedy_factorize(m)
    assert mn.tgt.key == (0, "*") and mn.is_identity
    assert ta.compose(mn, pl) == m
    # case (b): root goes to a non-root edge
    o0c2 = ta.build(0, COR2)
    m2 = ta.OpActMorphism(o0eta, o0c2, (("*", (0,)),),
                          (o0c2.col_index[(0,)],))
    mn, pl = ta.reedy_factorize(m2)
    assert mn.tgt.n == 0 and mn.tgt.tree == ETA
    assert ta.compose(mn, pl) == m2
    # empty source factors through empty middles
    m3 = ta.OpActMorphism(ta.build(2, EMPTY), o0c2,
                          (("*", (1,)),) * 3, ())
    mn, pl = ta.reedy_factorize(m3)
    assert mn.tgt.tree.is_empty
    assert ta.compose(mn, pl) == m3


def test_elegance_pushout_cases():
    o1lin = ta.build(1, LIN2)
    f = ta.OpActMorphism(o1lin, ta.build(0, COR1), (0, 0), (0, 1, 1))
    g = ta.OpActMorphism(o1lin, ta.build(1, COR1), (0, 1), (0, 0, 1))
    assert ta.classify(f)[1] and ta.classify(g)[1]
    l1, l2 = ta.elegance_pushout(f, g)
    assert ta.compose(f, l1) == ta.compose(g, l2)
    assert l1.tgt.tree == ETA
    l1, l2 = ta.elegance_pushout(f, f)
    assert l1 == l2


def test_materialized_action_satisfies_axioms():
    for (n, tree) in ((0, COR2), (1, COR1), (1, COR2), (2, ETA)):
        _, act = ta.as_finoperad(ta.build(n, tree))
        assert fincat.check_op_action(act) == []


def test_invalid_morphisms_rejected():
    o = ta.build(0, COR2)
    with pytest.raises(ValueError):
        # binary vertex onto an identity cut
        ta.OpActMorphism(o, ta.build(0, ETA), (0,), (0, 0, 0))
    with pytest.raises(ValueError):
        # out-of-order sources are not planar
        ta.OpActMorphism(o, o, (0,), (0, 2, 1))


def test_window_objects_sorted_and_bounded():
    objs = ta.window_objects(1, 2, 3)
    assert objs == tuple(sorted(
        objs, key=lambda o: (o.degree, o.n, o.tree.format())))
    assert all(o.n <= 1 and o.tree.n_vertices <= 2 and o.tree.n_edges <= 3
               for o in objs)


def test_to_dot_deterministic():
    a = ta.to_dot(ta.build(1, COR2))
    assert a == ta.to_dot(ta.build(1, COR2))
    assert "digraph" in a
