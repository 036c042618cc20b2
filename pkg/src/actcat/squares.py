"""Checking that a commuting square of finite sets is a pushout.

Given a span S0 -> A1, S0 -> A2 and a cospan A1 -> U <- A2, the square is
a pushout exactly when the canonical map from (A1 + A2) / ~ to U is a
bijection, where ~ is generated by identifying the two images of each
element of S0.
"""

from __future__ import annotations


def is_pushout(s0, a1, a2, u, to_a1, to_a2, a1_to_u, a2_to_u):
    """Union-find check over the disjoint union of a1 and a2.

    The four set arguments are sequences; the map arguments are callables.
    Returns (ok, reason).
    """
    idx1 = {x: i for i, x in enumerate(a1)}
    idx2 = {x: i for i, x in enumerate(a2)}
    n1 = len(a1)
    n = n1 + len(a2)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in s0:
        x = idx1[to_a1(s)]
        y = idx2[to_a2(s)] + n1
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    theta = [None] * n
    for i, x in enumerate(a1):
        theta[i] = a1_to_u(x)
    for i, x in enumerate(a2):
        theta[i + n1] = a2_to_u(x)

    rep_value: dict = {}
    for i in range(n):
        r = find(i)
        if r in rep_value:
            if rep_value[r] != theta[i]:
                return False, "canonical map not constant on a class"
        else:
            rep_value[r] = theta[i]
    values = list(rep_value.values())
    if len(set(values)) != len(values):
        return False, "canonical map not injective on classes"
    if set(values) != set(u):
        return False, "canonical map not onto"
    return True, ""
