"""Shared fixtures and independent oracles.

The oracles here are deliberately written with plain loops over the raw
tables, independent of the engine's code paths, so every [engine ==
oracle] assertion is a genuine cross-check.
"""
from __future__ import annotations

import itertools
import random

import pytest

from quantale_engine.base import Quantale, boolean, tropical
from quantale_engine.structures import VCategory, VGraph
from quantale_engine.vmat import VMat, fin_set

INF = None  # oracle-side marker for the absorbing tropical weight


@pytest.fixture
def bool_q():
    return boolean()


@pytest.fixture
def trop10():
    return tropical(10)


def divisibility_quantale() -> Quantale:
    """{1,2,3,6} ordered by divisibility, join = lcm, tensor = gcd, unit 6.

    A 4-element non-chain quantale: gcd distributes over lcm.
    """
    import math

    elems = (1, 2, 3, 6)
    idx = {e: i for i, e in enumerate(elems)}
    leq = [[b % a == 0 for b in elems] for a in elems]
    tensor = [[idx[math.gcd(a, b)] for b in elems] for a in elems]
    return Quantale([str(e) for e in elems], leq, tensor, idx[6])


@pytest.fixture
def divis_q():
    return divisibility_quantale()


# -- independent law checker (acceptance criterion 1 oracle) -----------------


def brute_force_quantale_check(elements, leq, tensor, unit) -> bool:
    """Re-derivation of the quantale laws from raw tables, plain loops."""
    n = len(elements)
    rng = range(n)
    for a in rng:
        if not leq[a][a]:
            return False
    for a in rng:
        for b in rng:
            if a != b and leq[a][b] and leq[b][a]:
                return False
    for a in rng:
        for b in rng:
            for c in rng:
                if leq[a][b] and leq[b][c] and not leq[a][c]:
                    return False

    def lub(subset):
        ubs = [c for c in rng if all(leq[x][c] for x in subset)]
        for c in ubs:
            if all(leq[c][u] for u in ubs):
                return c
        return None

    if lub([]) is None:
        return False
    join = [[lub([a, b]) for b in rng] for a in rng]
    for a in rng:
        for b in rng:
            if join[a][b] is None:
                return False
    bot = lub([])
    for a in rng:
        for b in rng:
            if tensor[a][b] != tensor[b][a]:
                return False
            for c in rng:
                if tensor[tensor[a][b]][c] != tensor[a][tensor[b][c]]:
                    return False
                if tensor[a][join[b][c]] != join[tensor[a][b]][tensor[a][c]]:
                    return False
        if tensor[unit][a] != a:
            return False
        if tensor[a][bot] != bot:
            return False
    for a in rng:
        for b in rng:
            lower = [c for c in rng if leq[tensor[c][a]][b]]
            h = lub(lower)
            if h is None or not leq[tensor[h][a]][b]:
                return False
    return True


# -- Boolean closure oracle ----------------------------------------------------


def warshall(adj):
    """Reflexive-transitive closure of a boolean relation, classic loops."""
    n = len(adj)
    reach = [[bool(adj[i][j]) or i == j for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if reach[i][k] and reach[k][j]:
                    reach[i][j] = True
    return reach


def floyd_warshall_saturating(weights, cap):
    """All-pairs shortest paths where sums exceeding cap saturate to the
    absorbing value (represented as None)."""
    n = len(weights)

    def sat_add(a, b):
        if a is None or b is None:
            return None
        s = a + b
        return s if s <= cap else None

    def better(a, b):  # min with None as +infinity
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    dist = [[0 if i == j else weights[i][j] for j in range(n)] for i in range(n)]
    for i in range(n):
        dist[i][i] = 0
    for k in range(n):
        for i in range(n):
            for j in range(n):
                dist[i][j] = better(dist[i][j], sat_add(dist[i][k], dist[k][j]))
    return dist


# -- generators shared with the engine's harness -------------------------------

from quantale_engine.randgen import (  # noqa: E402
    all_preorders,
    preorder_category,
    random_bool_graph,
    random_indexed,
    random_tropical_graph,
    random_tropical_metric as tropical_metric_matrix,
)
from quantale_engine.fib.fincat import poset_adjunctions as chain_adjunctions  # noqa: E402


# -- finite-category helpers -----------------------------------------------------


def arrow_category(c):
    """The category of arrows of c with commutative squares, plus the
    codomain projection functor."""
    from quantale_engine.fib.fincat import FinCategory, FinFunctor, Morph

    objs = list(range(c.n_morphisms()))
    names = [f"[{c.morphisms[f].name}]" for f in objs]
    morphs = []
    index = {}
    for f in objs:
        for g in objs:
            for h in c.hom(c.src(f), c.src(g)):
                for k in c.hom(c.dst(f), c.dst(g)):
                    if c.comp(g, h) == c.comp(k, f):
                        index[(f, g, h, k)] = len(morphs)
                        morphs.append(Morph(
                            f"sq({c.morphisms[h].name};{c.morphisms[k].name}):"
                            f"{f}->{g}", f, g))
    compose = {}
    for (f2, g2, h2, k2), m2 in index.items():
        for (f1, g1, h1, k1), m1 in index.items():
            if g1 != f2:
                continue
            compose[(m2, m1)] = index[
                (f1, g2, c.comp(h2, h1), c.comp(k2, k1))
            ]
    identities = [
        index[(f, f, c.id_of(c.src(f)), c.id_of(c.dst(f)))] for f in objs
    ]
    cat = FinCategory(names, morphs, compose, identities)
    cod = FinFunctor(
        cat, c,
        tuple(c.dst(f) for f in objs),
        tuple(k for (_, _, _, k), _m in sorted(index.items(),
                                               key=lambda kv: kv[1])),
    )
    return cat, cod, index


def lambda_poset():
    """The poset w ≤ x, w ≤ y: five morphisms, all pullbacks exist."""
    from quantale_engine.fib.fincat import from_poset

    leq = [
        [True, True, True],
        [False, True, False],
        [False, False, True],
    ]
    return from_poset(("w", "x", "y"), leq)


from quantale_engine.fib.adjunction import (  # noqa: E402
    thin_total_functor as groth_total_functor,
)
