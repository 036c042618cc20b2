"""The formal objects <n|k>: the chain [n] acting on a stagewise chain.

The acting category has objects *_0, ..., *_{k-1}, 0, ..., n and is free
on the steps i -> i+1; the starred objects only receive moments.  The
acted category starts as the chain [k] (the final object has moment 0,
the earlier ones moment *_i) and stage i adjoins one new object (i, h)
with a generating arrow s(h) -> (i, h) for every morphism h of moment
i-1.  The generating graph is a tree with in-degree one, so morphisms
are (ancestor, descendant) pairs and hom-sets are at most singletons.

A morphism <n|k> -> <m|l> is a pair (alpha, beta): alpha a functor
[n] -> C_{m,l} (a monotone integer sequence, or a constant star), beta a
chain of k+1 objects of the acted category, subject to
moment(beta[k]) == alpha[0].  Its unique extension to a full map of
actions ("hat") is computed stagewise and memoized; composition,
classification and Reedy factorization all run through the hat.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fincat, ordinal

_OBJECTS: dict[tuple[int, int], "ActObject"] = {}
_HATS: dict = {}
_HOMS: dict = {}


def build(n: int, k: int) -> "ActObject":
    """The formal action <n|k>; instances are cached and shared."""
    if n < 0 or k < -1:
        raise ValueError("need n >= 0 and k >= -1")
    key = (n, k)
    obj = _OBJECTS.get(key)
    if obj is None:
        obj = _OBJECTS.setdefault(key, ActObject(n, k))
    return obj


class ActObject:
    __slots__ = ("n", "k", "key", "stars", "c_objects", "c_code", "names",
                 "index", "parent", "defmor", "moment", "stage", "path",
                 "path_set", "by_moment", "n_objects", "degree")

    def __init__(self, n: int, k: int):
        self.n, self.k = n, k
        self.key = (n, k)
        self.stars = tuple(("*", j) for j in range(max(k, 0)))
        self.c_objects = self.stars + tuple(range(n + 1))
        self.c_code = {c: i for i, c in enumerate(self.c_objects)}

        names: list = []
        parent: list = []
        defmor: list = []
        moment: list = []
        stage: list = []
        path: list = []
        index: dict = {}
        for j in range(k + 1):
            index[j] = len(names)
            names.append(j)
            parent.append(j - 1 if j > 0 else None)
            defmor.append(None)
            moment.append(("*", j) if j < k else 0)
            stage.append(0)
            path.append(tuple(range(j + 1)))
        for i in range(1, n + 1):
            targets = [x for x in range(len(names)) if moment[x] == i - 1]
            for t in targets:
                for a in path[t]:
                    nm = (i, (names[a], names[t]))
                    index[nm] = len(names)
                    names.append(nm)
                    parent.append(a)
                    defmor.append((a, t))
                    moment.append(i)
                    stage.append(i)
                    path.append(path[a] + (len(names) - 1,))
        self.names = tuple(names)
        self.index = index
        self.parent = tuple(parent)
        self.defmor = tuple(defmor)
        self.moment = tuple(moment)
        self.stage = tuple(stage)
        self.path = tuple(path)
        self.path_set = tuple(frozenset(p) for p in path)
        by_moment: dict = {}
        for x, mu in enumerate(moment):
            by_moment.setdefault(mu, []).append(x)
        self.by_moment = {mu: tuple(v) for mu, v in by_moment.items()}
        self.n_objects = len(names)
        self.degree = n + self.n_objects

    def has_mor(self, a: int, b: int) -> bool:
        return a in self.path_set[b]

    def act_step(self, a: int, mor: tuple[int, int]) -> tuple[int, int]:
        """The step a -> a+1 acting on a morphism of moment a."""
        s, t = mor
        assert self.moment[t] == a, "action undefined: moment mismatch"
        return s, self.index[(a + 1, (self.names[s], self.names[t]))]

    def act(self, c1, c2, mor: tuple[int, int]) -> tuple[int, int]:
        """The unique acting arrow c1 -> c2 applied to mor."""
        if c1 == c2:
            return mor
        cur = mor
        for step in range(c1, c2):
            cur = self.act_step(step, cur)
        return cur

    def obj_label(self, x: int) -> str:
        nm = self.names[x]
        if isinstance(nm, int):
            return str(nm)
        i, (a, t) = nm
        return f"({i}|{_nm_label(a)}->{_nm_label(t)})"

    def c_label(self, c) -> str:
        return f"*{c[1]}" if isinstance(c, tuple) else str(c)

    def __repr__(self):
        return f"<{self.n}|{self.k}>"

    def __eq__(self, other):
        return isinstance(other, ActObject) and self.key == other.key

    def __hash__(self):
        return hash(("chain", self.key))


def _nm_label(nm) -> str:
    if isinstance(nm, int):
        return str(nm)
    i, (a, t) = nm
    return f"({i}|{_nm_label(a)}->{_nm_label(t)})"


@dataclass(frozen=True)
class ActMorphism:
    """A morphism of formal actions as its universal-property pair."""

    src: ActObject
    tgt: ActObject
    alpha: tuple
    beta: tuple

    def __post_init__(self):
        n, k = self.src.n, self.src.k
        m = self.tgt.n
        if len(self.alpha) != n + 1:
            raise ValueError("alpha has wrong length")
        a0 = self.alpha[0]
        if isinstance(a0, tuple):
            if any(a != a0 for a in self.alpha):
                raise ValueError("a starred alpha must be constant")
            if not (a0[0] == "*" and 0 <= a0[1] < self.tgt.k):
                raise ValueError(f"{a0!r} is not a star of the target")
        else:
            prev = -1
            for a in self.alpha:
                if isinstance(a, tuple) or a < prev or a > m:
                    raise ValueError("alpha is not a monotone chain in the target")
                prev = a
        if len(self.beta) != k + 1:
            raise ValueError("beta has wrong length")
        if k >= 0:
            tgt = self.tgt
            for b in self.beta:
                if not (0 <= b < tgt.n_objects):
                    raise ValueError("beta entry out of range")
            for b1, b2 in zip(self.beta, self.beta[1:]):
                if not tgt.has_mor(b1, b2):
                    raise ValueError("beta is not a chain")
            if tgt.moment[self.beta[-1]] != a0:
                raise ValueError("moment(beta[k]) != alpha[0]")

    @property
    def is_identity(self) -> bool:
        return (self.src is self.tgt
                and self.alpha == tuple(range(self.src.n + 1))
                and self.beta == tuple(range(self.src.k + 1)))

    def format(self) -> str:
        al = ",".join(self.tgt.c_label(a) for a in self.alpha)
        be = ",".join(self.tgt.obj_label(b) for b in self.beta)
        return f"(a=[{al}] b=[{be}])"

    def __repr__(self):
        return f"{self.src}->{self.tgt}{self.format()}"


def identity(obj: ActObject) -> ActMorphism:
    return ActMorphism(obj, obj, tuple(range(obj.n + 1)),
                       tuple(range(obj.k + 1)))


def hat_extend(m: ActMorphism):
    """The full action map extending m: a dict on acting objects and a
    tuple over acted objects.  Memoized."""
    got = _HATS.get(m)
    if got is not None:
        return got
    src, tgt = m.src, m.tgt
    c_map = {}
    for j, star in enumerate(src.stars):
        c_map[star] = tgt.moment[m.beta[j]]
    for i in range(src.n + 1):
        c_map[i] = m.alpha[i]
    d_map = list(m.beta)
    for x in range(src.k + 1, src.n_objects):
        i = src.stage[x]
        a_idx, t_idx = src.defmor[x]
        h_img = (d_map[a_idx], d_map[t_idx])
        c1, c2 = c_map[i - 1], c_map[i]
        if c1 == c2:
            d_map.append(h_img[1])
        else:
            assert tgt.moment[h_img[1]] == c1
            d_map.append(tgt.act(c1, c2, h_img)[1])
    got = (c_map, tuple(d_map))
    _HATS[m] = got
    return got


def compose(f: ActMorphism, g: ActMorphism) -> ActMorphism:
    """f first, then g."""
    if f.tgt != g.src:
        raise ValueError("endpoint mismatch")
    c_map, d_map = hat_extend(g)
    return ActMorphism(f.src, g.tgt,
                       tuple(c_map[a] for a in f.alpha),
                       tuple(d_map[b] for b in f.beta))


def classify(m: ActMorphism) -> tuple[bool, bool]:
    """(direct?, inverse?): direct means alpha and beta are injective on
    objects; inverse means alpha covers [m] and the extension covers the
    acted objects."""
    plus = (len(set(m.alpha)) == len(m.alpha)
            and len(set(m.beta)) == len(m.beta))
    minus = False
    if set(range(m.tgt.n + 1)).issubset(set(m.alpha)):
        _, d_map = hat_extend(m)
        minus = len(set(d_map)) == m.tgt.n_objects
    return plus, minus


def hom_enumerate(src: ActObject, tgt: ActObject) -> tuple:
    """All morphisms src -> tgt, in a fixed deterministic order."""
    key = (src.key, tgt.key)
    got = _HOMS.get(key)
    if got is not None:
        return got
    n, k, m, l = src.n, src.k, tgt.n, tgt.k
    alphas = [mp.values for mp in ordinal.enumerate_maps(n, m)]
    alphas += [(("*", j),) * (n + 1) for j in range(max(l, 0))]
    out = []
    if k == -1:
        out = [ActMorphism(src, tgt, al, ()) for al in alphas]
    else:
        from itertools import combinations_with_replacement
        for al in alphas:
            for x in tgt.by_moment.get(al[0], ()):
                p = tgt.path[x]
                if k == 0:
                    out.append(ActMorphism(src, tgt, al, (x,)))
                    continue
                for combo in combinations_with_replacement(range(len(p)), k):
                    beta = tuple(p[c] for c in combo) + (x,)
                    out.append(ActMorphism(src, tgt, al, beta))
    got = tuple(out)
    _HOMS[key] = got
    return got


def _dedup(seq):
    out = []
    for v in seq:
        if not out or out[-1] != v:
            out.append(v)
    return out


def reedy_factorize(m: ActMorphism) -> tuple[ActMorphism, ActMorphism]:
    """The inverse-then-direct factorization.

    If beta lands on a starred moment (alpha is a constant star), alpha
    collapses through [0]; otherwise alpha is a monotone integer map and
    factors epi-mono.  In both cases the image of beta is a linear chain
    whose length fixes the middle object.
    """
    src, tgt = m.src, m.tgt
    n = src.n
    img = _dedup(m.beta)
    pos = {v: i for i, v in enumerate(img)}
    z = len(img) - 1
    a0 = m.alpha[0]
    if isinstance(a0, tuple):
        assert all(tgt.stage[b] == 0 and b < tgt.k for b in m.beta)
        mid = build(0, z)
        minus = ActMorphism(src, mid, (0,) * (n + 1),
                            tuple(pos[b] for b in m.beta))
        plus = ActMorphism(mid, tgt, (a0,), tuple(img))
    else:
        epi, mono = ordinal.epi_mono_factorize(
            ordinal.OrdinalMap(n, tgt.n, m.alpha))
        mid = build(epi.tgt_n, z)
        minus = ActMorphism(src, mid, epi.values,
                            tuple(pos[b] for b in m.beta))
        plus = ActMorphism(mid, tgt, mono.values, tuple(img))
    return minus, plus


def elegance_pushout(f: ActMorphism, g: ActMorphism):
    """Complete two inverse-class maps out of a common source to a
    commuting cospan, componentwise over the ordinal pushouts.

    Returns (leg1, leg2) with leg1 . f == leg2 . g.
    """
    if f.src != g.src:
        raise ValueError("pushout needs a common source")
    n, k = f.src.n, f.src.k
    a1 = ordinal.OrdinalMap(n, f.tgt.n, f.alpha)
    a2 = ordinal.OrdinalMap(n, g.tgt.n, g.alpha)
    d1, d2 = ordinal.pushout_of_epis(a1, a2)
    if k == -1:
        if f.tgt.k != -1 or g.tgt.k != -1:
            raise ValueError("inverse maps out of <n|-1> land in <m|-1>")
        x = -1
        g1_vals = g2_vals = ()
    else:
        b1 = ordinal.OrdinalMap(k, f.tgt.k, f.beta)
        b2 = ordinal.OrdinalMap(k, g.tgt.k, g.beta)
        g1, g2 = ordinal.pushout_of_epis(b1, b2)
        x = g1.tgt_n
        g1_vals, g2_vals = g1.values, g2.values
    out = build(d1.tgt_n, x)
    leg1 = ActMorphism(f.tgt, out, d1.values, g1_vals)
    leg2 = ActMorphism(g.tgt, out, d2.values, g2_vals)
    return leg1, leg2


def probe_objects(max_degree: int = 10) -> tuple:
    """All formal objects of degree up to the bound, sorted by degree."""
    out = []
    y = 0
    while y <= max_degree:
        z = -1
        while True:
            o = build(y, z)
            if o.degree > max_degree:
                break
            out.append(o)
            z += 1
        y += 1
    out.sort(key=lambda o: (o.degree, o.n, o.k))
    return tuple(out)


def compare_hom_descriptions(src: ActObject, tgt: ActObject) -> tuple[int, int]:
    """Size of the hom-set against the naive count of pairs of chain maps
    constrained to the stage-0 spine of the target.  The two descriptions
    agree when beta never needs to leave the spine."""
    full = len(hom_enumerate(src, tgt))
    n, k, m, l = src.n, src.k, tgt.n, tgt.k
    spine = 0
    sigmas = [mp.values for mp in ordinal.enumerate_maps(n, m)]
    sigmas += [(("*", j),) * (n + 1) for j in range(max(l, 0))]
    if k == -1:
        spine = len(sigmas)
    else:
        for sg in sigmas:
            for tau in ordinal.enumerate_maps(k, l):
                mu = ("*", tau.values[-1]) if tau.values[-1] < l else 0
                if mu == sg[0]:
                    spine += 1
    return full, spine


# ---------------------------------------------------------------------------
# materialization and export


def as_fincat(obj: ActObject):
    """The object as explicit finite data: (acting category, acted
    category, action), suitable for the axiom checkers and the nerve."""
    c_objs = [obj.c_label(c) for c in obj.c_objects]
    c_arrows = [fincat.Arrow(f"p{a}.{b}", str(a), str(b))
                for a in range(obj.n + 1) for b in range(a + 1, obj.n + 1)]
    triples = []
    for a in range(obj.n + 1):
        for b in range(a + 1, obj.n + 1):
            for c in range(b + 1, obj.n + 1):
                triples.append((f"p{a}.{b}", f"p{b}.{c}", f"p{a}.{c}"))
    acting = fincat.build_category(c_objs, c_arrows, triples)

    labels = [obj.obj_label(x) for x in range(obj.n_objects)]
    mor_name = {}
    d_arrows = []
    for b in range(obj.n_objects):
        for a in obj.path[b]:
            if a == b:
                mor_name[(a, b)] = f"id_{labels[a]}"
            else:
                nm = f"m{a}.{b}"
                mor_name[(a, b)] = nm
                d_arrows.append(fincat.Arrow(nm, labels[a], labels[b]))
    d_triples = []
    for b in range(obj.n_objects):
        for mid in obj.path[b]:
            for a in obj.path[mid]:
                if a != mid and mid != b:
                    d_triples.append((mor_name[(a, mid)], mor_name[(mid, b)],
                                      mor_name[(a, b)]))
    acted = fincat.build_category(labels, d_arrows, d_triples)

    moment = {labels[x]: obj.c_label(obj.moment[x])
              for x in range(obj.n_objects)}
    table = {}
    for (a, b), nm in mor_name.items():
        mu = obj.moment[b]
        ident = acting.identity[obj.c_label(mu)]
        table[(ident, nm)] = nm
        if isinstance(mu, tuple):
            continue
        for c2 in range(mu + 1, obj.n + 1):
            res = obj.act(mu, c2, (a, b))
            table[(f"p{mu}.{c2}", nm)] = mor_name[res]
    return acting, acted, fincat.CatAction(acting, acted, "cat", moment, table)


def to_dot(obj: ActObject) -> str:
    """The generating tree of the acted category as a DOT digraph, with
    moments as node annotations."""
    lines = [f"// acted category of {obj!r}: {obj.n_objects} objects,"
             f" degree {obj.degree}",
             "digraph acted {", "  rankdir=BT;", "  node [shape=box];"]
    for x in range(obj.n_objects):
        mu = obj.c_label(obj.moment[x])
        lines.append(f'  n{x} [label="{obj.obj_label(x)}\\nmu={mu}"];')
    for x in range(obj.n_objects):
        p = obj.parent[x]
        if p is not None:
            lines.append(f"  n{p} -> n{x};")
    lines.append("}")
    return "\n".join(lines) + "\n"
