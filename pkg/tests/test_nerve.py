import itertools

from actcat import chainact as ca
from actcat import fincat, nerve

Z2_MULT = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}


def comp_action():
    return fincat.self_action_by_composition(fincat.chain_category(1))


def conj_action():
    return fincat.conjugation_action(
        fincat.group_category(["e", "s"], "e", Z2_MULT))


def test_cell_counts():
    triv = fincat.trivial_action()
    assert len(nerve.nerve_cells(triv, 1, 1)) == 1
    assert len(nerve.nerve_cells(triv, 3, 2)) == 1
    assert len(nerve.nerve_cells(comp_action(), 1, 1)) == 4
    assert len(nerve.nerve_cells(conj_action(), 1, 1)) == 4


def test_c11_bijection():
    for act in (comp_action(), conj_action(), fincat.trivial_action()):
        rep = nerve.check_c11_bijection(act)
        assert rep["bijective"]
    assert nerve.check_c11_bijection(comp_action())["cells"] == 4
    assert nerve.check_c11_bijection(conj_action())["cells"] == 4


def test_c11_on_formal_objects():
    # cells of shape (1,1) on a materialized formal object must agree
    # with its formal hom-set
    for key in ((1, 1), (2, 1)):
        obj = ca.build(*key)
        _, _, act = ca.as_fincat(obj)
        rep = nerve.check_c11_bijection(act)
        assert rep["bijective"]
        assert rep["cells"] == len(ca.hom_enumerate(ca.build(1, 1), obj))


def test_restriction_along_degeneracy_inserts_identity():
    act = comp_action()
    cells = nerve.nerve_cells(act, 0, 1)
    # degenerate the acting chain: alpha gains an identity arrow
    m = ca.ActMorphism(ca.build(1, 1), ca.build(0, 1), (0, 0), (0, 1))
    for cell in cells:
        res = nerve.restrict(act, cell, m)
        assert res.alpha.arrows == (
            act.acting.identity[cell.alpha.objects[0]],)
        assert res.beta == cell.beta


def test_restriction_along_starred_face_lands_at_moment():
    act = comp_action()
    cells = nerve.nerve_cells(act, 1, 1)
    # alpha constant at the starred object: the acting string restricts to
    # the moment of the beta string's start
    m = ca.ActMorphism(ca.build(1, 0), ca.build(1, 1),
                       (("*", 0),) * 2, (0,))
    for cell in cells:
        res = nerve.restrict(act, cell, m)
        assert res.alpha.objects == (
            act.moment[cell.beta.objects[0]],) * 2
        assert res.beta.objects == (cell.beta.objects[0],)


def test_restriction_functorial():
    act = conj_action()
    shapes = [ca.build(n, k) for n in (0, 1) for k in (0, 1)]
    top = ca.build(1, 1)
    cells = nerve.nerve_cells(act, 1, 1)
    count = 0
    for p2, p1 in itertools.product(shapes, repeat=2):
        for m2 in ca.hom_enumerate(p2, p1):
            for m1 in ca.hom_enumerate(p1, top):
                for cell in cells:
                    lhs = nerve.restrict(act, nerve.restrict(act, cell, m1),
                                         m2)
                    rhs = nerve.restrict(act, cell, ca.compose(m2, m1))
                    assert lhs == rhs
                    count += 1
    assert count > 500


def test_restriction_matches_formal_composition():
    # on a formal target, restriction along m is composition with m
    obj = ca.build(1, 1)
    _, _, act = ca.as_fincat(obj)
    shape = ca.build(1, 1)

    def to_cell(m):
        ext = nerve.extend_cell(act, _cell_of(obj, m), obj)
        return _cell_of(obj, m)

    for m in ca.hom_enumerate(shape, obj):
        cell = _cell_of(obj, m)
        for p in (ca.build(0, 1), ca.build(1, 0)):
            for r in ca.hom_enumerate(p, shape):
                assert nerve.restrict(act, cell, r) == \
                    _cell_of(obj, ca.compose(r, m))


def _cell_of(obj, m):
    alpha_objs = tuple(obj.c_label(a) for a in m.alpha)
    alpha_arrs = tuple(
        f"id_{obj.c_label(m.alpha[i])}"
        if m.alpha[i] == m.alpha[i + 1] or isinstance(m.alpha[i], tuple)
        else f"p{m.alpha[i]}.{m.alpha[i + 1]}"
        for i in range(len(m.alpha) - 1))
    beta_objs = tuple(obj.obj_label(b) for b in m.beta)
    beta_arrs = tuple(
        f"id_{obj.obj_label(m.beta[i])}" if m.beta[i] == m.beta[i + 1]
        else f"m{m.beta[i]}.{m.beta[i + 1]}"
        for i in range(len(m.beta) - 1))
    return nerve.Cell(nerve.Chain(alpha_objs, alpha_arrs),
                      nerve.Chain(beta_objs, beta_arrs))
