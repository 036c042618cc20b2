"""Planar rooted trees and morphisms of their free nonsymmetric operads.

A tree is kept in nested normal form: a leaf edge is the string ``"*"``,
an edge carrying a vertex is the tuple of its child subtrees (the empty
tuple for a nullary vertex), and the empty tree is ``None``.  Edges are
addressed by the path from the root: the root edge is ``()`` and the
i-th input of the vertex above ``e`` is ``e + (i,)``.

The free operad on a tree has the edges as colors.  An operation is a
connected region of vertices above a target edge; it is canonically
identified by its tuple of boundary edges read in planar order, so
operations are (target, sources) pairs and composition is concatenation
of boundaries.  A morphism of free operads is determined by its edge map,
which must send every vertex to an operation of the target tree.

Tree literal syntax (also used by the CLI): ``*`` is the lone edge,
``(t1 ... tk)`` is a vertex with ordered subtrees, ``()`` a nullary
vertex, and ``empty`` the tree with no edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class PlanarTree:
    """Immutable planar rooted tree in nested normal form."""

    __slots__ = ("shape", "edges", "index", "children", "leaves", "leaf_set",
                 "n_edges", "n_vertices", "_npf", "_cuts", "_cuts_by_len")

    def __init__(self, shape):
        _check_shape(shape)
        self.shape = shape
        edges: list[tuple[int, ...]] = []
        children: dict[tuple[int, ...], tuple] = {}

        def walk(sh, addr):
            edges.append(addr)
            if sh == "*":
                return
            children[addr] = tuple(addr + (i,) for i in range(len(sh)))
            for i, sub in enumerate(sh):
                walk(sub, addr + (i,))

        if shape is not None:
            walk(shape, ())
        self.edges = tuple(edges)
        self.index = {e: i for i, e in enumerate(edges)}
        self.children = children
        self.leaves = tuple(e for e in edges if e not in children)
        self.leaf_set = frozenset(self.leaves)
        self.n_edges = len(edges)
        self.n_vertices = len(children)
        self._npf = None
        self._cuts = {}
        self._cuts_by_len = {}

    @property
    def is_empty(self) -> bool:
        return self.shape is None

    @property
    def root(self) -> tuple[int, ...]:
        if self.is_empty:
            raise ValueError("the empty tree has no root edge")
        return ()

    def subshape(self, e):
        sh = self.shape
        for i in e:
            sh = sh[i]
        return sh

    def npf(self) -> str:
        """Canonical form of the underlying nonplanar tree."""
        if self._npf is None:
            memo = {}

            def go(sh):
                if sh == "*":
                    return "*"
                key = id(sh)
                if key not in memo:
                    memo[key] = "(" + "".join(sorted(go(s) for s in sh)) + ")"
                return memo[key]

            self._npf = "" if self.is_empty else go(self.shape)
        return self._npf

    def format(self) -> str:
        return format_tree(self)

    def __eq__(self, other):
        return isinstance(other, PlanarTree) and self.shape == other.shape

    def __hash__(self):
        return hash(self.shape)

    def __repr__(self):
        return f"PlanarTree({self.format()!r})"


def _check_shape(shape):
    if shape is None or shape == "*":
        return
    if isinstance(shape, tuple):
        for sub in shape:
            if sub is None:
                raise ValueError("the empty tree cannot be a subtree")
            _check_shape(sub)
        return
    raise ValueError(f"bad tree shape: {shape!r}")


EMPTY = PlanarTree(None)
ETA = PlanarTree("*")


def parse(text: str) -> PlanarTree:
    text = text.strip()
    if text in ("empty", "0"):
        return EMPTY
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def tree():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError(f"bad tree literal: {text!r}")
        tok = tokens[pos]
        pos += 1
        if tok == "*":
            return "*"
        if tok == "(":
            subs = []
            while pos < len(tokens) and tokens[pos] != ")":
                subs.append(tree())
            if pos >= len(tokens):
                raise ValueError(f"unbalanced tree literal: {text!r}")
            pos += 1
            return tuple(subs)
        raise ValueError(f"bad token {tok!r} in tree literal {text!r}")

    sh = tree()
    if pos != len(tokens):
        raise ValueError(f"trailing input in tree literal: {text!r}")
    return PlanarTree(sh)


def format_tree(t: PlanarTree) -> str:
    if t.is_empty:
        return "empty"

    def go(sh):
        if sh == "*":
            return "*"
        return "(" + " ".join(go(s) for s in sh) + ")"

    return go(t.shape)


def degree(t: PlanarTree) -> int:
    """The grading used by the augmented tree category: 0 for the empty
    tree, vertex count plus one otherwise."""
    return 0 if t.is_empty else t.n_vertices + 1


# ---------------------------------------------------------------------------
# operations of the free operad on a tree


@dataclass(frozen=True)
class TreeOp:
    """An operation: a region of vertices over a target edge.

    Vertices are named by their output edges.  The empty region is the
    identity at the target, with the target itself as the lone source.
    """

    target: tuple[int, ...]
    region: frozenset
    sources: tuple


def cuts(t: PlanarTree, e) -> tuple:
    """All boundary tuples of regions rooted at edge e, identity first."""
    got = t._cuts.get(e)
    if got is None:
        out = [(e,)]
        ch = t.children.get(e)
        if ch is not None:
            for combo in itertools.product(*(cuts(t, c) for c in ch)):
                out.append(tuple(itertools.chain.from_iterable(combo)))
        got = t._cuts[e] = tuple(out)
    return got


def cuts_by_len(t: PlanarTree, e) -> dict:
    got = t._cuts_by_len.get(e)
    if got is None:
        table: dict[int, list] = {}
        for w in cuts(t, e):
            table.setdefault(len(w), []).append(w)
        got = t._cuts_by_len[e] = {k: tuple(v) for k, v in table.items()}
    return got


def enumerate_operations(t: PlanarTree) -> list[TreeOp]:
    """Every operation of the free operad on t, including identities."""
    if t.is_empty:
        return []
    out = []
    for e in t.edges:
        for region, sources in _regions(t, e):
            out.append(TreeOp(e, frozenset(region), sources))
    return out


def _regions(t, e):
    res = [((), (e,))]
    ch = t.children.get(e)
    if ch is not None:
        for combo in itertools.product(*(_regions(t, c) for c in ch)):
            region = (e,) + tuple(itertools.chain.from_iterable(r for r, _ in combo))
            sources = tuple(itertools.chain.from_iterable(s for _, s in combo))
            res.append((region, sources))
    return res


def _match_cut(t: PlanarTree, target, want) -> bool:
    """Is `want` the boundary of a region of t rooted at `target`?

    Boundaries have pairwise distinct entries, so the expansion is forced:
    walk down from the target and cut exactly at the wanted edges.
    """
    if want == (target,):
        return True
    want_set = set(want)
    if len(want_set) != len(want) or target in want_set:
        return False
    out = []
    stack = [target]
    while stack:
        e = stack.pop()
        if e in want_set:
            out.append(e)
            if len(out) > len(want):
                return False
        else:
            ch = t.children.get(e)
            if ch is None:
                return False
            stack.extend(reversed(ch))
    return tuple(out) == want


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class OmegaPMap:
    """A morphism of free tree operads, stored as its edge map.

    ``values[i]`` is the image of ``src.edges[i]``.  Every vertex of the
    source must land on an operation of the target, which is checked on
    construction.
    """

    src: PlanarTree
    tgt: PlanarTree
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.src.n_edges:
            raise ValueError("edge map has wrong length")
        tgt_index = self.tgt.index
        for v in self.values:
            if v not in tgt_index:
                raise ValueError(f"{v!r} is not an edge of the target")
        for e, ch in self.src.children.items():
            target = self.map(e)
            want = tuple(self.map(c) for c in ch)
            if not _match_cut(self.tgt, target, want):
                raise ValueError(
                    f"vertex over {e} maps to ({target}; {want}), "
                    "not an operation of the target")

    def map(self, e):
        return self.values[self.src.index[e]]

    @property
    def is_plus(self) -> bool:
        """Injective on edges."""
        return len(set(self.values)) == len(self.values)

    @property
    def is_minus(self) -> bool:
        """Surjective on edges and sending leaves to leaves."""
        if set(self.values) != set(self.tgt.edges):
            return False
        return all(self.map(l) in self.tgt.leaf_set for l in self.src.leaves)

    @property
    def is_identity(self) -> bool:
        return self.src == self.tgt and self.values == self.src.edges

    def __repr__(self):
        return f"OmegaPMap({self.src.format()}->{self.tgt.format()}, {self.values})"


def identity_map(t: PlanarTree) -> OmegaPMap:
    return OmegaPMap(t, t, t.edges)


def compose(f: OmegaPMap, g: OmegaPMap) -> OmegaPMap:
    """f first, then g."""
    if f.tgt != g.src:
        raise ValueError("endpoint mismatch")
    return OmegaPMap(f.src, g.tgt, tuple(g.map(v) for v in f.values))


def factorize(f: OmegaPMap) -> tuple[OmegaPMap, OmegaPMap]:
    """Split f into an edge-surjection (leaves to leaves) followed by an
    edge-injection.

    The only identifications an operad map can make are vertical chains
    through unary vertices whose operation collapses to an identity, so
    the intermediate tree is obtained by contracting exactly those.
    """
    S, T = f.src, f.tgt
    if S.is_empty:
        return identity_map(EMPTY), f

    minus_vals = [None] * S.n_edges
    plus_pairs = []  # (quotient edge, image in T)

    def build(e, qaddr):
        cur = e
        minus_vals[S.index[cur]] = qaddr
        while True:
            ch = S.children.get(cur)
            if ch is not None and len(ch) == 1 and f.map(ch[0]) == f.map(cur):
                cur = ch[0]
                minus_vals[S.index[cur]] = qaddr
                continue
            break
        plus_pairs.append((qaddr, f.map(cur)))
        ch = S.children.get(cur)
        if ch is None:
            return "*"
        return tuple(build(c, qaddr + (i,)) for i, c in enumerate(ch))

    mid = PlanarTree(build((), ()))
    minus = OmegaPMap(S, mid, tuple(minus_vals))
    plus_map = dict(plus_pairs)
    plus = OmegaPMap(mid, T, tuple(plus_map[e] for e in mid.edges))
    assert plus.is_plus, f"factorization of {f} failed to separate"
    assert compose(minus, plus) == f
    return minus, plus


def pushout_of_minus(f: OmegaPMap, g: OmegaPMap) -> tuple[OmegaPMap, OmegaPMap]:
    """Complete two edge-surjections with a common source to a pushout
    cospan, by contracting the join of their kernels.

    Returns (leg1: f.tgt -> U, leg2: g.tgt -> U).
    """
    if f.src != g.src:
        raise ValueError("pushout needs a common source")
    if not (f.is_minus and g.is_minus):
        raise ValueError("pushout_of_minus needs inverse-class maps")
    S = f.src
    if S.is_empty:
        e = identity_map(EMPTY)
        return e, e

    parent = list(range(S.n_edges))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for m in (f, g):
        groups: dict = {}
        for i, v in enumerate(m.values):
            groups.setdefault(v, []).append(i)
        for members in groups.values():
            for other in members[1:]:
                union(members[0], other)

    qaddr = [None] * S.n_edges

    def build(e, addr):
        cur = e
        qaddr[S.index[cur]] = addr
        while True:
            ch = S.children.get(cur)
            if (ch is not None and len(ch) == 1
                    and find(S.index[ch[0]]) == find(S.index[cur])):
                cur = ch[0]
                qaddr[S.index[cur]] = addr
                continue
            break
        ch = S.children.get(cur)
        if ch is None:
            return "*"
        return tuple(build(c, addr + (i,)) for i, c in enumerate(ch))

    out = PlanarTree(build((), ()))

    def leg(m):
        vals = {}
        for i, v in enumerate(m.values):
            vals[v] = qaddr[i]
        return OmegaPMap(m.tgt, out, tuple(vals[e] for e in m.tgt.edges))

    leg1, leg2 = leg(f), leg(g)
    assert compose(f, leg1) == compose(g, leg2)
    assert leg1.is_minus and leg2.is_minus
    return leg1, leg2


def enumerate_maps(S: PlanarTree, T: PlanarTree) -> list[OmegaPMap]:
    """All operad morphisms S -> T, in a deterministic order."""
    if S.is_empty:
        return [OmegaPMap(EMPTY, T, ())]
    if T.is_empty:
        return []

    def assign(e, target):
        ch = S.children.get(e)
        if ch is None:
            return [[(e, target)]]
        res = []
        for w in cuts_by_len(T, target).get(len(ch), ()):
            parts = [assign(c, w[i]) for i, c in enumerate(ch)]
            for combo in itertools.product(*parts):
                merged = [(e, target)]
                for part in combo:
                    merged.extend(part)
                res.append(merged)
        return res

    out = []
    for t0 in T.edges:
        for pairs in assign((), t0):
            vals = [None] * S.n_edges
            for e, v in pairs:
                vals[S.index[e]] = v
            out.append(OmegaPMap(S, T, tuple(vals)))
    return out


# ---------------------------------------------------------------------------
# nonplanar automorphisms


@dataclass(frozen=True)
class TreeAutGroup:
    """All root-preserving automorphisms of the underlying nonplanar tree,
    as permutations of the edge list, with the composition table."""

    tree: PlanarTree
    elements: tuple  # tuple of permutations (tuples over edge indices)
    table: dict = field(compare=False, hash=False)
    identity_index: int = 0

    @property
    def order(self):
        return len(self.elements)

    def compose(self, a: int, b: int) -> int:
        """Index of the element applying b first, then a."""
        return self.table[(a, b)]

    def inverse(self, a: int) -> int:
        for b in range(len(self.elements)):
            if self.table[(a, b)] == self.identity_index:
                return b
        raise AssertionError("group element without inverse")

    def index_of(self, perm: tuple) -> int:
        return self.elements.index(perm)

    def apply(self, a: int, edge_index: int) -> int:
        return self.elements[a][edge_index]


def _subtree_isos(t1: PlanarTree, t2: PlanarTree, a1, a2):
    """Nonplanar isomorphisms from the subtree of t1 over a1 onto the
    subtree of t2 over a2, as dicts of edge addresses."""
    ch1 = t1.children.get(a1)
    ch2 = t2.children.get(a2)
    if ch1 is None or ch2 is None:
        if ch1 is None and ch2 is None:
            return [{a1: a2}]
        return []
    if len(ch1) != len(ch2):
        return []
    npfs1 = [_np_key(t1, c) for c in ch1]
    npfs2 = [_np_key(t2, c) for c in ch2]
    out = []
    for perm in itertools.permutations(range(len(ch1))):
        if any(npfs1[i] != npfs2[perm[i]] for i in range(len(ch1))):
            continue
        parts = [_subtree_isos(t1, t2, ch1[i], ch2[perm[i]])
                 for i in range(len(ch1))]
        for combo in itertools.product(*parts):
            merged = {a1: a2}
            for part in combo:
                merged.update(part)
            out.append(merged)
    return out


def nonplanar_isos(t1: PlanarTree, t2: PlanarTree) -> list:
    """Root-preserving isomorphisms of the underlying nonplanar trees, as
    tuples over t1's edge indices with values in t2's edge indices."""
    if t1.is_empty or t2.is_empty:
        return [()] if t1.is_empty and t2.is_empty else []
    if t1.npf() != t2.npf():
        return []
    out = []
    for iso in _subtree_isos(t1, t2, (), ()):
        out.append(tuple(t2.index[iso[e]] for e in t1.edges))
    return sorted(set(out))


def _np_key(t: PlanarTree, e) -> str:
    sh = t.subshape(e)

    def go(s):
        if s == "*":
            return "*"
        return "(" + "".join(sorted(go(x) for x in s)) + ")"

    return go(sh)


def automorphisms(t: PlanarTree) -> TreeAutGroup:
    if t.is_empty:
        elements = ((),)
        return TreeAutGroup(t, elements, {(0, 0): 0}, 0)
    perms = nonplanar_isos(t, t)
    ident = tuple(range(t.n_edges))
    # put the identity first for convenience
    perms.remove(ident)
    elements = (ident,) + tuple(perms)
    lookup = {p: i for i, p in enumerate(elements)}
    table = {}
    for i, p in enumerate(elements):
        for j, q in enumerate(elements):
            composite = tuple(p[q[x]] for x in range(t.n_edges))
            table[(i, j)] = lookup[composite]
    return TreeAutGroup(t, elements, table, 0)


# ---------------------------------------------------------------------------
# enumeration of trees


def enumerate_trees(max_vertices: int, max_edges: int,
                    include_empty: bool = True) -> list[PlanarTree]:
    """All planar trees within the given vertex and edge budgets, sorted by
    (vertices, edges, literal)."""
    shapes = _shapes(max_vertices, max_edges)
    trees = [PlanarTree(sh) for sh in shapes]
    trees.sort(key=lambda t: (t.n_vertices, t.n_edges, t.format()))
    if include_empty:
        return [EMPTY] + trees
    return trees


def _shapes(vb, eb):
    # shapes with at most vb vertices and at most eb edges (>= 1 edge)
    out = []
    if eb >= 1:
        out.append("*")
    if vb >= 1 and eb >= 1:
        for seq in _shape_seqs(vb - 1, eb - 1):
            out.append(tuple(seq))
    return out


def _shape_seqs(vb, eb):
    # ordered lists of shapes with total vertices <= vb, total edges <= eb
    res = [[]]
    if eb >= 1:
        for first in _shapes(vb, eb):
            fv, fe = _weight(first)
            for rest in _shape_seqs(vb - fv, eb - fe):
                res.append([first] + rest)
    return res


def _weight(sh):
    if sh == "*":
        return 0, 1
    v, e = 1, 1
    for sub in sh:
        sv, se = _weight(sub)
        v += sv
        e += se
    return v, e
