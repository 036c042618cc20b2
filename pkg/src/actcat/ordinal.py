"""Monotone maps of finite ordinals.

Objects are the chains [n] = (0 < 1 < ... < n) for n >= 0 together with
the empty ordinal [-1].  A map is stored as its value sequence; [-1] has
the empty sequence, admits exactly one map to every [m], and receives no
map from a nonempty ordinal.

Surjections correspond to interval partitions of the source, which makes
the pushout of two surjections a join of interval partitions; that is the
combinatorial core of the elegance checks downstream.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import comb


@dataclass(frozen=True)
class OrdinalMap:
    src_n: int
    tgt_n: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.src_n < -1 or self.tgt_n < -1:
            raise ValueError("ordinals are indexed by n >= -1")
        if len(self.values) != self.src_n + 1:
            raise ValueError("value sequence has wrong length")
        if self.src_n >= 0 and self.tgt_n == -1:
            raise ValueError("no map from a nonempty ordinal to [-1]")
        if self.values:
            if self.values[0] < 0 or self.values[-1] > self.tgt_n:
                raise ValueError("values out of range")
            for a, b in zip(self.values, self.values[1:]):
                if a > b:
                    raise ValueError("values not weakly increasing")

    def __call__(self, i: int) -> int:
        return self.values[i]

    @property
    def is_epi(self) -> bool:
        return len(set(self.values)) == self.tgt_n + 1

    @property
    def is_mono(self) -> bool:
        return all(a < b for a, b in zip(self.values, self.values[1:]))

    @property
    def is_identity(self) -> bool:
        return self.src_n == self.tgt_n and self.values == tuple(range(self.src_n + 1))

    def format(self) -> str:
        vals = ",".join(str(v) for v in self.values)
        return f"[{vals}]:{self.src_n}->{self.tgt_n}"

    def __str__(self):
        return self.format()


_LITERAL = re.compile(r"^\[([-0-9,\s]*)\]:(-?\d+)->(-?\d+)$")


def parse(text: str) -> OrdinalMap:
    """Parse the textual literal ``[a0,a1,...]:n->m``."""
    m = _LITERAL.match(text.strip())
    if not m:
        raise ValueError(f"bad ordinal map literal: {text!r}")
    body = m.group(1).strip()
    values = tuple(int(v) for v in body.split(",")) if body else ()
    return OrdinalMap(int(m.group(2)), int(m.group(3)), values)


def identity(n: int) -> OrdinalMap:
    return OrdinalMap(n, n, tuple(range(n + 1)))


def compose(f: OrdinalMap, g: OrdinalMap) -> OrdinalMap:
    """The composite doing f first and g second."""
    if f.tgt_n != g.src_n:
        raise ValueError(f"cannot compose {f} with {g}: endpoint mismatch")
    return OrdinalMap(f.src_n, g.tgt_n, tuple(g.values[v] for v in f.values))


def epi_mono_factorize(f: OrdinalMap) -> tuple[OrdinalMap, OrdinalMap]:
    """The unique surjection-followed-by-injection factorization of f."""
    image = sorted(set(f.values))
    y = len(image) - 1
    pos = {v: i for i, v in enumerate(image)}
    epi = OrdinalMap(f.src_n, y, tuple(pos[v] for v in f.values))
    mono = OrdinalMap(y, f.tgt_n, tuple(image))
    return epi, mono


def pushout_of_epis(f: OrdinalMap, g: OrdinalMap) -> tuple[OrdinalMap, OrdinalMap]:
    """Complete surjections f, g with a common source to a pushout cospan.

    The kernel of a surjection is an interval partition of the source, so
    the pushout quotients by the join of the two kernels: a new class
    starts exactly where both f and g step.  Returns (t1, t2) with
    t1 . f == t2 . g, both surjections.
    """
    if f.src_n != g.src_n:
        raise ValueError("pushout needs a common source")
    if not (f.is_epi and g.is_epi):
        raise ValueError("pushout_of_epis needs surjections")
    n = f.src_n
    if n == -1:
        return identity(-1), identity(-1)
    labels = [0]
    for i in range(1, n + 1):
        step = f.values[i] != f.values[i - 1] and g.values[i] != g.values[i - 1]
        labels.append(labels[-1] + (1 if step else 0))
    w = labels[-1]
    t1_vals = [0] * (f.tgt_n + 1)
    t2_vals = [0] * (g.tgt_n + 1)
    for i in range(n + 1):
        t1_vals[f.values[i]] = labels[i]
        t2_vals[g.values[i]] = labels[i]
    t1 = OrdinalMap(f.tgt_n, w, tuple(t1_vals))
    t2 = OrdinalMap(g.tgt_n, w, tuple(t2_vals))
    assert compose(f, t1) == compose(g, t2)
    return t1, t2


def enumerate_maps(n: int, m: int) -> list[OrdinalMap]:
    """All monotone maps [n] -> [m], in lexicographic order of values."""
    if n < -1 or m < -1:
        raise ValueError("ordinals are indexed by n >= -1")
    if n == -1:
        return [OrdinalMap(-1, m, ())]
    if m == -1:
        return []
    return [
        OrdinalMap(n, m, vals)
        for vals in itertools.combinations_with_replacement(range(m + 1), n + 1)
    ]


def count_maps(n: int, m: int) -> int:
    if n == -1:
        return 1
    if m == -1:
        return 0
    return comb(n + m + 1, n + 1)
