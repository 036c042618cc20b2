"""Nerves of finite category actions.

An (n, k)-cell of the nerve of an action is a chain of n composable
arrows in the acting category together with a chain of k composable
arrows in the acted category, such that the acting chain can act on the
last arrow of the acted chain (the moment condition).  Restriction along
a shape morphism extends the cell over the whole formal shape and
precomposes; the extension is the inductive one from the shape's stages.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import chainact, fincat


@dataclass(frozen=True)
class Chain:
    """A functor from a chain ordinal into a finite category, as its
    object sequence plus the connecting arrows."""

    objects: tuple
    arrows: tuple

    def __post_init__(self):
        if len(self.arrows) != max(len(self.objects) - 1, 0):
            raise ValueError("arrow chain has wrong length")


@dataclass(frozen=True)
class Cell:
    alpha: Chain
    beta: Chain


def enumerate_chains(cat: fincat.FinCategory, length: int) -> list[Chain]:
    """All functors [length] -> cat, i.e. strings of `length` composable
    arrows; length -1 gives the empty chain."""
    if length == -1:
        return [Chain((), ())]
    out = []

    def extend(objs, arrs):
        if len(arrs) == length:
            out.append(Chain(tuple(objs), tuple(arrs)))
            return
        for a in cat.arrows_by_src.get(objs[-1], ()):
            extend(objs + [a.tgt], arrs + [a.name])

    for o in cat.objects:
        extend([o], [])
    return out


def nerve_cells(action: fincat.CatAction, n: int, k: int) -> list[Cell]:
    """All (n, k)-cells of the nerve: pairs of chains with the moment of
    the last acted object equal to the first acting object."""
    if action.kind != "cat":
        raise ValueError("nerve_cells wants a category action")
    alphas = enumerate_chains(action.acting, n)
    betas = enumerate_chains(action.acted, k)
    out = []
    for al in alphas:
        for be in betas:
            if k >= 0 and action.moment[be.objects[-1]] != al.objects[0]:
                continue
            out.append(Cell(al, be))
    return out


class _Extension:
    """The inductive extension of a cell over a full formal shape."""

    def __init__(self, action: fincat.CatAction, cell: Cell,
                 shape: chainact.ActObject):
        if len(cell.alpha.objects) != shape.n + 1:
            raise ValueError("cell alpha does not match the shape")
        if len(cell.beta.objects) != shape.k + 1:
            raise ValueError("cell beta does not match the shape")
        self.action = action
        self.cell = cell
        self.shape = shape
        self._d_obj: dict = {}
        self._d_mor: dict = {}

    def c_obj(self, c):
        if isinstance(c, tuple):
            return self.action.moment[self.cell.beta.objects[c[1]]]
        return self.cell.alpha.objects[c]

    def c_arrow(self, c1, c2):
        """Image of the unique acting arrow c1 -> c2 of the shape."""
        acting = self.action.acting
        if c1 == c2:
            return acting.identity[self.c_obj(c1)]
        arr = acting.identity[self.cell.alpha.objects[c1]]
        for i in range(c1, c2):
            arr = acting.compose(arr, self.cell.alpha.arrows[i])
        return arr

    def d_obj(self, x: int):
        got = self._d_obj.get(x)
        if got is None:
            sh = self.shape
            if sh.stage[x] == 0:
                got = self.cell.beta.objects[x]
            else:
                a, t = sh.defmor[x]
                acted = self.action.acted
                got = acted.tgt(self._generator_image(x, a, t))
            self._d_obj[x] = got
        return got

    def _generator_image(self, x, a, t):
        i = self.shape.stage[x]
        return self.action.act(self.c_arrow(i - 1, i), self.d_mor(a, t))

    def d_mor(self, a: int, b: int):
        """Image of the unique shape morphism a -> b, as an arrow name."""
        got = self._d_mor.get((a, b))
        if got is not None:
            return got
        sh = self.shape
        acted = self.action.acted
        if a == b:
            got = acted.identity[self.d_obj(a)]
        else:
            par = sh.parent[b]
            if sh.stage[b] == 0:
                step = self.cell.beta.arrows[b - 1]
            else:
                pa, pt = sh.defmor[b]
                step = self._generator_image(b, pa, pt)
            got = acted.compose(self.d_mor(a, par), step)
        self._d_mor[(a, b)] = got
        return got


def extend_cell(action: fincat.CatAction, cell: Cell,
                shape: chainact.ActObject) -> _Extension:
    return _Extension(action, cell, shape)


def restrict(action: fincat.CatAction, cell: Cell,
             m: chainact.ActMorphism) -> Cell:
    """Precompose a cell of shape m.tgt with the shape morphism m, giving
    a cell of shape m.src; contravariantly functorial."""
    ext = _Extension(action, cell, m.tgt)
    al_objs = tuple(ext.c_obj(c) for c in m.alpha)
    al_arrs = tuple(_alpha_arrow(ext, m.alpha[i], m.alpha[i + 1])
                    for i in range(len(m.alpha) - 1))
    be_objs = tuple(ext.d_obj(x) for x in m.beta)
    be_arrs = tuple(ext.d_mor(m.beta[i], m.beta[i + 1])
                    for i in range(len(m.beta) - 1))
    return Cell(Chain(al_objs, al_arrs), Chain(be_objs, be_arrs))


def _alpha_arrow(ext, c1, c2):
    if isinstance(c1, tuple):
        return ext.action.acting.identity[ext.c_obj(c1)]
    return ext.c_arrow(c1, c2)


def check_c11_bijection(action: fincat.CatAction) -> dict:
    """Verify that (1,1)-cells biject with the action's domain pullback:
    pairs (f, g) with the source of f equal to the moment of g."""
    cells = nerve_cells(action, 1, 1)
    cat, acted = action.acting, action.acted
    pairs = [(f, g) for f in cat.arrow_by_name for g in acted.arrow_by_name
             if cat.src(f) == action.moment[acted.tgt(g)]]
    fwd = {}
    ok = True
    for cell in cells:
        key = (cell.alpha.arrows[0], cell.beta.arrows[0])
        if key in fwd:
            ok = False
        fwd[key] = cell
    for f, g in pairs:
        cell = fwd.get((f, g))
        if cell is None:
            ok = False
            continue
        # the inverse reconstructs the cell from its arrow pair
        want = Cell(
            Chain((cat.src(f), cat.tgt(f)), (f,)),
            Chain((acted.src(g), acted.tgt(g)), (g,)))
        if cell != want:
            ok = False
    return {
        "cells": len(cells),
        "pairs": len(pairs),
        "bijective": ok and len(cells) == len(pairs),
    }
