"""The formal objects <n|S>: the chain [n] acting on a stagewise operad
grown from the free operad of a planar tree S.

Colors of stage 0 are the edges of S; stage i adjoins one color (i, h)
and one generating operation with sources s(h) for every operation h of
moment i-1.  Each color is the target of at most one generator, so an
operation normalizes to a "cut": its target together with the boundary
tuple obtained by repeatedly expanding colors through their generator.
Operations are therefore stored as (target index, sources tuple) pairs
and composition is concatenation of cuts.

A morphism <n|S> -> <m|R> is (alpha, beta) with beta a color assignment
on the edges of S sending each vertex to a valid operation;
moment(beta(root)) == alpha[0].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import fincat, ordinal, ptree
from .ptree import EMPTY, PlanarTree

_OBJECTS: dict = {}
_HATS: dict = {}
_HOMS: dict = {}


def build(n: int, tree: PlanarTree) -> "OpActObject":
    if n < 0:
        raise ValueError("need n >= 0")
    key = (n, tree.shape)
    obj = _OBJECTS.get(key)
    if obj is None:
        obj = _OBJECTS.setdefault(key, OpActObject(n, tree))
    return obj


class OpActObject:
    __slots__ = ("n", "tree", "key", "stars", "c_objects", "c_code",
                 "col_names", "col_index", "col_gen", "col_def", "col_moment",
                 "col_stage", "leaf_cols", "n_colors", "n_gens", "degree",
                 "_cuts", "_cuts_by_len")

    def __init__(self, n: int, tree: PlanarTree):
        self.n = n
        self.tree = tree
        self.key = (n, tree.shape)
        self.stars = tuple(("*", e) for e in tree.edges if e != ())
        self.c_objects = self.stars + tuple(range(n + 1))
        self.c_code = {c: i for i, c in enumerate(self.c_objects)}

        names: list = list(tree.edges)
        index = {nm: i for i, nm in enumerate(names)}
        gen: list = []
        dfop: list = []
        moment: list = []
        stage: list = []
        for e in tree.edges:
            ch = tree.children.get(e)
            gen.append(None if ch is None else tuple(index[c] for c in ch))
            dfop.append(None)
            moment.append(0 if e == () else ("*", e))
            stage.append(0)
        self._cuts = {}
        self._cuts_by_len = {}
        self.col_gen = gen
        for i in range(1, n + 1):
            targets = [c for c in range(len(names)) if moment[c] == i - 1]
            for t in targets:
                for w in self.cuts(t):
                    nm = (i, (names[t], tuple(names[x] for x in w)))
                    index[nm] = len(names)
                    names.append(nm)
                    gen.append(w)
                    dfop.append((t, w))
                    moment.append(i)
                    stage.append(i)
        self.col_names = tuple(names)
        self.col_index = index
        self.col_gen = tuple(gen)
        self.col_def = tuple(dfop)
        self.col_moment = tuple(moment)
        self.col_stage = tuple(stage)
        self.leaf_cols = frozenset(
            c for c in range(len(names)) if gen[c] is None)
        self.n_colors = len(names)
        self.n_gens = sum(1 for g in gen if g is not None)
        assert self.n_gens == tree.n_vertices + (self.n_colors - tree.n_edges)
        self.degree = n + self.n_gens

    def cuts(self, c: int) -> tuple:
        """All source tuples of operations with target color c; the
        identity cut (c,) comes first."""
        got = self._cuts.get(c)
        if got is None:
            out = [(c,)]
            g = self.col_gen[c]
            if g is not None:
                for combo in itertools.product(*(self.cuts(x) for x in g)):
                    out.append(tuple(itertools.chain.from_iterable(combo)))
            got = self._cuts[c] = tuple(out)
        return got

    def cuts_by_len(self, c: int) -> dict:
        got = self._cuts_by_len.get(c)
        if got is None:
            table: dict = {}
            for w in self.cuts(c):
                table.setdefault(len(w), []).append(w)
            got = self._cuts_by_len[c] = {k: tuple(v) for k, v in table.items()}
        return got

    def op_valid(self, t: int, sources: tuple) -> bool:
        """Is (t; sources) an operation, i.e. a cut of the expansion tree?"""
        if sources == (t,):
            return True
        want = set(sources)
        if len(want) != len(sources) or t in want:
            return False
        out = []
        stack = [t]
        while stack:
            c = stack.pop()
            if c in want:
                out.append(c)
                if len(out) > len(sources):
                    return False
            else:
                g = self.col_gen[c]
                if g is None:
                    return False
                stack.extend(reversed(g))
        return tuple(out) == sources

    def act_step(self, a: int, op: tuple) -> tuple:
        """The step a -> a+1 acting on an operation of moment a."""
        t, w = op
        assert self.col_moment[t] == a
        nm = (a + 1, (self.col_names[t],
                      tuple(self.col_names[x] for x in w)))
        return self.col_index[nm], w

    def act(self, c1, c2, op: tuple) -> tuple:
        if c1 == c2:
            return op
        cur = op
        for step in range(c1, c2):
            cur = self.act_step(step, cur)
        return cur

    def operations(self) -> list:
        """All (target, sources) operations of the stage-n operad."""
        return [(t, w) for t in range(self.n_colors) for w in self.cuts(t)]

    def col_label(self, c: int) -> str:
        nm = self.col_names[c]
        return _addr_label(nm) if _is_addr(nm) else f"c{c}@{self.col_stage[c]}"

    def c_label(self, c) -> str:
        if isinstance(c, tuple):
            return f"*{_addr_label(c[1])}"
        return str(c)

    def __repr__(self):
        return f"<{self.n}|{self.tree.format()}>"

    def __eq__(self, other):
        return isinstance(other, OpActObject) and self.key == other.key

    def __hash__(self):
        return hash(("treeact", self.key))


def _is_addr(nm) -> bool:
    return isinstance(nm, tuple) and all(isinstance(x, int) for x in nm)


def _addr_label(addr) -> str:
    return "r" if addr == () else ".".join(str(i) for i in addr)


@dataclass(frozen=True)
class OpActMorphism:
    src: OpActObject
    tgt: OpActObject
    alpha: tuple
    beta: tuple  # target color index per source edge, in edge order

    def __post_init__(self):
        n = self.src.n
        if len(self.alpha) != n + 1:
            raise ValueError("alpha has wrong length")
        a0 = self.alpha[0]
        if isinstance(a0, tuple):
            if any(a != a0 for a in self.alpha):
                raise ValueError("a starred alpha must be constant")
            if a0 not in self.tgt.c_code:
                raise ValueError(f"{a0!r} is not an object of the target")
        else:
            prev = -1
            for a in self.alpha:
                if isinstance(a, tuple) or a < prev or a > self.tgt.n:
                    raise ValueError("alpha is not a monotone chain")
                prev = a
        stree = self.src.tree
        if len(self.beta) != stree.n_edges:
            raise ValueError("beta has wrong length")
        if not stree.is_empty:
            for b in self.beta:
                if not (0 <= b < self.tgt.n_colors):
                    raise ValueError("beta entry out of range")
            idx = stree.index
            for e, ch in stree.children.items():
                t = self.beta[idx[e]]
                w = tuple(self.beta[idx[c]] for c in ch)
                if not self.tgt.op_valid(t, w):
                    raise ValueError(
                        f"vertex over {e} maps to ({t}; {w}), not an operation")
            if self.tgt.col_moment[self.beta[0]] != a0:
                raise ValueError("moment(beta(root)) != alpha[0]")

    @property
    def is_identity(self) -> bool:
        return (self.src is self.tgt
                and self.alpha == tuple(range(self.src.n + 1))
                and self.beta == tuple(range(self.src.tree.n_edges)))

    def format(self) -> str:
        al = ",".join(self.tgt.c_label(a) for a in self.alpha)
        be = ",".join(str(b) for b in self.beta)
        return f"(a=[{al}] b=[{be}])"

    def __repr__(self):
        return f"{self.src}->{self.tgt}{self.format()}"


def identity(obj: OpActObject) -> OpActMorphism:
    return OpActMorphism(obj, obj, tuple(range(obj.n + 1)),
                         tuple(range(obj.tree.n_edges)))


def hat_extend(m: OpActMorphism):
    got = _HATS.get(m)
    if got is not None:
        return got
    src, tgt = m.src, m.tgt
    c_map = {}
    for star in src.stars:
        c_map[star] = tgt.col_moment[m.beta[src.tree.index[star[1]]]]
    for i in range(src.n + 1):
        c_map[i] = m.alpha[i]
    d_map = list(m.beta)
    for x in range(src.tree.n_edges, src.n_colors):
        i = src.col_stage[x]
        t_idx, w = src.col_def[x]
        img = (d_map[t_idx], tuple(d_map[y] for y in w))
        assert tgt.op_valid(*img), "extension left the operad"
        c1, c2 = c_map[i - 1], c_map[i]
        if c1 == c2:
            d_map.append(img[0])
        else:
            assert tgt.col_moment[img[0]] == c1
            d_map.append(tgt.act(c1, c2, img)[0])
    got = (c_map, tuple(d_map))
    _HATS[m] = got
    return got


def compose(f: OpActMorphism, g: OpActMorphism) -> OpActMorphism:
    if f.tgt != g.src:
        raise ValueError("endpoint mismatch")
    c_map, d_map = hat_extend(g)
    return OpActMorphism(f.src, g.tgt,
                         tuple(c_map[a] for a in f.alpha),
                         tuple(d_map[b] for b in f.beta))


def classify(m: OpActMorphism) -> tuple[bool, bool]:
    """(direct?, inverse?): direct is injective alpha and beta; inverse
    needs alpha onto [m], the extension onto all colors, and leaf edges
    landing on leaf colors."""
    plus = (len(set(m.alpha)) == len(m.alpha)
            and len(set(m.beta)) == len(m.beta))
    minus = False
    if set(range(m.tgt.n + 1)).issubset(set(m.alpha)):
        idx = m.src.tree.index
        leaves_ok = all(m.beta[idx[l]] in m.tgt.leaf_cols
                        for l in m.src.tree.leaves)
        if leaves_ok:
            _, d_map = hat_extend(m)
            minus = len(set(d_map)) == m.tgt.n_colors
    return plus, minus


def _alphas(src, tgt):
    out = [mp.values for mp in ordinal.enumerate_maps(src.n, tgt.n)]
    out += [(s,) * (src.n + 1) for s in tgt.stars]
    return out


def hom_enumerate(src: OpActObject, tgt: OpActObject) -> tuple:
    key = (src.key, tgt.key)
    got = _HOMS.get(key)
    if got is not None:
        return got
    n = src.n
    out = []
    if src.tree.is_empty:
        out = [OpActMorphism(src, tgt, al, ()) for al in _alphas(src, tgt)]
    else:
        stree = src.tree
        idx = stree.index
        monotone_by_start: dict = {}
        for mp in ordinal.enumerate_maps(n, tgt.n):
            monotone_by_start.setdefault(mp.values[0], []).append(mp.values)

        def assign(e, color):
            ch = stree.children.get(e)
            if ch is None:
                return [[(idx[e], color)]]
            res = []
            for w in tgt.cuts_by_len(color).get(len(ch), ()):
                parts = [assign(c, w[i]) for i, c in enumerate(ch)]
                for combo in itertools.product(*parts):
                    merged = [(idx[e], color)]
                    for part in combo:
                        merged.extend(part)
                    res.append(merged)
            return res

        for c0 in range(tgt.n_colors):
            mu = tgt.col_moment[c0]
            if isinstance(mu, tuple):
                alphas = [(mu,) * (n + 1)]
            else:
                alphas = monotone_by_start.get(mu, [])
            if not alphas:
                continue
            for pairs in assign((), c0):
                beta = [0] * stree.n_edges
                for i, c in pairs:
                    beta[i] = c
                beta = tuple(beta)
                for al in alphas:
                    out.append(OpActMorphism(src, tgt, al, beta))
    got = tuple(out)
    _HOMS[key] = got
    return got


def extract_tree_over(obj: OpActObject, c0: int):
    """The expansion tree of a color: edges are the colors lying over c0
    (via generators) plus c0 itself.  Returns the tree and the address ->
    color correspondence of its inclusion."""
    mapping = {}

    def sh(c, addr):
        mapping[addr] = c
        g = obj.col_gen[c]
        if g is None:
            return "*"
        return tuple(sh(x, addr + (i,)) for i, x in enumerate(g))

    t = PlanarTree(sh(c0, ()))
    return t, mapping


def reedy_factorize(m: OpActMorphism) -> tuple[OpActMorphism, OpActMorphism]:
    """The inverse-then-direct factorization.

    When the root lands on a starred moment, alpha collapses through [0]
    and beta stays inside the edge colors of the target tree; otherwise
    alpha factors epi-mono and beta factors through the expansion tree of
    the root image.  Either way the operad part is split by the planar
    tree factorization.
    """
    src, tgt = m.src, m.tgt
    n = src.n
    a0 = m.alpha[0]
    if src.tree.is_empty:
        if isinstance(a0, tuple):
            mid = build(0, EMPTY)
            return (OpActMorphism(src, mid, (0,) * (n + 1), ()),
                    OpActMorphism(mid, tgt, (a0,), ()))
        epi, mono = ordinal.epi_mono_factorize(
            ordinal.OrdinalMap(n, tgt.n, m.alpha))
        mid = build(epi.tgt_n, EMPTY)
        return (OpActMorphism(src, mid, epi.values, ()),
                OpActMorphism(mid, tgt, mono.values, ()))

    if isinstance(a0, tuple):
        assert all(tgt.col_stage[c] == 0 for c in m.beta)
        f0 = ptree.OmegaPMap(src.tree, tgt.tree,
                             tuple(tgt.col_names[c] for c in m.beta))
        mn, pl = ptree.factorize(f0)
        mid = build(0, mn.tgt)
        minus = OpActMorphism(
            src, mid, (0,) * (n + 1),
            tuple(mid.col_index[v] for v in mn.values))
        plus = OpActMorphism(
            mid, tgt, (a0,),
            tuple(tgt.col_index[v] for v in pl.values))
        return minus, plus

    epi, mono = ordinal.epi_mono_factorize(
        ordinal.OrdinalMap(n, tgt.n, m.alpha))
    t0, col_of = extract_tree_over(tgt, m.beta[0])
    addr_of = {c: a for a, c in col_of.items()}
    f0 = ptree.OmegaPMap(src.tree, t0,
                         tuple(addr_of[c] for c in m.beta))
    mn, pl = ptree.factorize(f0)
    mid = build(epi.tgt_n, mn.tgt)
    minus = OpActMorphism(src, mid, epi.values,
                          tuple(mid.col_index[v] for v in mn.values))
    plus = OpActMorphism(mid, tgt, mono.values,
                         tuple(col_of[v] for v in pl.values))
    return minus, plus


def elegance_pushout(f: OpActMorphism, g: OpActMorphism):
    """Complete two inverse-class maps out of a common source to a
    commuting cospan via the ordinal and tree pushouts."""
    if f.src != g.src:
        raise ValueError("pushout needs a common source")
    n = f.src.n
    a1 = ordinal.OrdinalMap(n, f.tgt.n, f.alpha)
    a2 = ordinal.OrdinalMap(n, g.tgt.n, g.alpha)
    d1, d2 = ordinal.pushout_of_epis(a1, a2)
    if f.src.tree.is_empty:
        if not (f.tgt.tree.is_empty and g.tgt.tree.is_empty):
            raise ValueError("inverse maps out of <n|empty> land in <m|empty>")
        out = build(d1.tgt_n, EMPTY)
        return (OpActMorphism(f.tgt, out, d1.values, ()),
                OpActMorphism(g.tgt, out, d2.values, ()))
    t1 = ptree.OmegaPMap(f.src.tree, f.tgt.tree,
                         tuple(f.tgt.col_names[c] for c in f.beta))
    t2 = ptree.OmegaPMap(g.src.tree, g.tgt.tree,
                         tuple(g.tgt.col_names[c] for c in g.beta))
    l1, l2 = ptree.pushout_of_minus(t1, t2)
    out = build(d1.tgt_n, l1.tgt)
    leg1 = OpActMorphism(f.tgt, out, d1.values,
                         tuple(out.col_index[l1.map(e)]
                               for e in f.tgt.tree.edges))
    leg2 = OpActMorphism(g.tgt, out, d2.values,
                         tuple(out.col_index[l2.map(e)]
                               for e in g.tgt.tree.edges))
    return leg1, leg2


def window_objects(max_n: int, max_vertices: int, max_edges: int,
                   include_empty: bool = True, max_degree=None) -> tuple:
    trees = ptree.enumerate_trees(max_vertices, max_edges, include_empty)
    out = [build(n, t) for n in range(max_n + 1) for t in trees]
    if max_degree is not None:
        out = [o for o in out if o.degree <= max_degree]
    out.sort(key=lambda o: (o.degree, o.n, o.tree.format()))
    return tuple(out)


# ---------------------------------------------------------------------------
# materialization and export


def as_finoperad(obj: OpActObject, symmetrized: bool = False,
                 max_operations: int = 4000):
    """The stage-n operad (optionally symmetrized) as an explicit
    FinOperad plus the CatAction of the acting chain on it."""
    if symmetrized:
        from . import symact
        return symact.sym_finoperad_action(obj, max_operations)
    ops = obj.operations()
    if len(ops) > max_operations:
        raise ValueError(f"operad too large to materialize ({len(ops)} ops)")
    name = {op: f"o{i}" for i, op in enumerate(ops)}
    colors = tuple(f"c{c}" for c in range(obj.n_colors))
    records = [fincat.Operation(name[(t, w)], tuple(f"c{x}" for x in w),
                                f"c{t}") for (t, w) in ops]
    identities = {f"c{c}": name[(c, (c,))] for c in range(obj.n_colors)}
    by_target: dict = {}
    for (t, w) in ops:
        by_target.setdefault(t, []).append((t, w))
    gamma = {}
    for (t, w) in ops:
        pools = [by_target[x] for x in w]
        for args in itertools.product(*pools):
            flat = tuple(itertools.chain.from_iterable(a[1] for a in args))
            gamma[(name[(t, w)], tuple(name[a] for a in args))] = name[(t, flat)]
    operad = fincat.FinOperad(colors, records, identities, gamma)

    acting = _acting_category(obj)
    moment = {f"c{c}": obj.c_label(obj.col_moment[c])
              for c in range(obj.n_colors)}
    table = {}
    for (t, w) in ops:
        mu = obj.col_moment[t]
        table[(acting.identity[obj.c_label(mu)], name[(t, w)])] = name[(t, w)]
        if isinstance(mu, tuple):
            continue
        for c2 in range(mu + 1, obj.n + 1):
            res = obj.act(mu, c2, (t, w))
            table[(f"p{mu}.{c2}", name[(t, w)])] = name[res]
    return operad, fincat.CatAction(acting, operad, "op", moment, table)


def _acting_category(obj: OpActObject):
    c_objs = [obj.c_label(c) for c in obj.c_objects]
    c_arrows = [fincat.Arrow(f"p{a}.{b}", str(a), str(b))
                for a in range(obj.n + 1) for b in range(a + 1, obj.n + 1)]
    triples = []
    for a in range(obj.n + 1):
        for b in range(a + 1, obj.n + 1):
            for c in range(b + 1, obj.n + 1):
                triples.append((f"p{a}.{b}", f"p{b}.{c}", f"p{a}.{c}"))
    return fincat.build_category(c_objs, c_arrows, triples)


def to_dot(obj: OpActObject) -> str:
    """The color/generator graph of the stage-n operad as a DOT digraph."""
    lines = [f"// operad of {obj!r}: {obj.n_colors} colors,"
             f" {obj.n_gens} generators, degree {obj.degree}",
             "digraph colors {", "  rankdir=BT;", "  node [shape=ellipse];"]
    for c in range(obj.n_colors):
        mu = obj.c_label(obj.col_moment[c])
        nm = obj.col_names[c]
        label = _addr_label(nm) if _is_addr(nm) else f"({obj.col_stage[c]}|c{c})"
        lines.append(f'  c{c} [label="{label}\\nmu={mu}"];')
    for c in range(obj.n_colors):
        g = obj.col_gen[c]
        if g is None:
            continue
        if not g:
            lines.append(f'  v{c} [shape=point];')
            lines.append(f"  v{c} -> c{c};")
        for x in g:
            lines.append(f"  c{x} -> c{c};")
    lines.append("}")
    return "\n".join(lines) + "\n"
