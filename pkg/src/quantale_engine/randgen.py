"""Seeded generators and small enumerations used by the acceptance
harness and the randomized parts of the test suite."""
from __future__ import annotations

import itertools
import random

from .base import Quantale
from .fib.fincat import (
    FinCategory,
    Morph,
    chain,
    from_poset,
    identity_functor,
    monotone_maps,
    terminal_category,
)
from .fib.indexed import IndexedCategory, strict_indexed, thin_indexed
from .structures import VCategory, VGraph, free_category
from .vmat import VMat, fin_set


def random_bool_graph(rng: random.Random, n: int, density: float = 0.4):
    return [[1 if rng.random() < density else 0 for _ in range(n)]
            for _ in range(n)]


def random_tropical_graph(rng: random.Random, n: int, cap: int,
                          density: float = 0.5):
    bottom = cap + 1
    return [
        [rng.randint(0, cap) if rng.random() < density else bottom
         for _ in range(n)]
        for _ in range(n)
    ]


def all_preorders(n: int):
    """Every reflexive-transitive boolean relation on n points."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in itertools.product((False, True), repeat=len(pairs)):
        rel = [[i == j for j in range(n)] for i in range(n)]
        for (i, j), b in zip(pairs, bits):
            rel[i][j] = b
        if all(
            not (rel[i][j] and rel[j][k]) or rel[i][k]
            for i in range(n) for j in range(n) for k in range(n)
        ):
            yield rel


def preorder_category(q: Quantale, rel) -> VCategory:
    """Boolean V-category of a preorder, A(y,x) = rel[x][y] (arrow x→y
    exists iff x ≤ y)."""
    n = len(rel)
    xs = fin_set(f"x{i}" for i in range(n))
    entries = [[1 if rel[x][y] else 0 for x in range(n)] for y in range(n)]
    return VCategory(VGraph(VMat(q, xs, xs, entries)))


def random_preorder(rng: random.Random, n: int):
    rel = [[i == j for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < 0.4:
                rel[i][j] = True
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if rel[i][k] and rel[k][j]:
                    rel[i][j] = True
    return rel


def random_tropical_metric(rng: random.Random, q: Quantale, n: int) -> VCategory:
    """A generalized metric space: closure of a random weight matrix."""
    xs = fin_set(f"p{i}" for i in range(n))
    cap = q.n - 2
    raw = [[rng.randint(0, cap) if i != j else 0 for j in range(n)]
           for i in range(n)]
    return free_category(VGraph(VMat(q, xs, xs, raw)))


BASE_SHAPES = ("terminal", "discrete2", "chain2", "discrete3", "one_arrow3",
               "parallel2")


def small_base_category(shape: str) -> FinCategory:
    """Base categories with at most 4 morphisms, identities included."""
    if shape == "terminal":
        return terminal_category()
    if shape == "discrete2":
        return from_poset(("A", "B"), ((True, False), (False, True)))
    if shape == "chain2":
        return chain(2)
    if shape == "discrete3":
        return from_poset(("A", "B", "C"),
                          ((True, False, False), (False, True, False),
                           (False, False, True)))
    if shape == "one_arrow3":
        return from_poset(("A", "B", "C"),
                          ((True, True, False), (False, True, False),
                           (False, False, True)))
    if shape == "parallel2":
        morphs = [Morph("1A", 0, 0), Morph("1B", 1, 1),
                  Morph("u", 0, 1), Morph("v", 0, 1)]
        compose = {(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2,
                   (3, 0): 3, (1, 3): 3}
        return FinCategory(("A", "B"), morphs, compose, (0, 1))
    raise ValueError(shape)


def random_preorder_fibre(rng: random.Random, max_objects: int = 4,
                          with_isos: bool = False) -> FinCategory:
    n = rng.randint(1, max_objects)
    rel = random_preorder(rng, n)
    if with_isos and n >= 2:
        i, j = rng.sample(range(n), 2)
        rel[i][j] = rel[j][i] = True
        for k in range(n):
            for a in range(n):
                for b in range(n):
                    if rel[a][k] and rel[k][b]:
                        rel[a][b] = True
    return from_poset(tuple(f"o{i}" for i in range(n)), rel)


def random_indexed(rng: random.Random, pseudo: bool) -> IndexedCategory:
    """A random strict or pseudo indexed category over a ≤ 4-morphism base
    with thin fibres of ≤ 4 objects."""
    base = small_base_category(rng.choice(BASE_SHAPES))
    fibres = [random_preorder_fibre(rng, 4, with_isos=pseudo)
              for _ in range(base.n_objects())]
    reindex = []
    for f in range(base.n_morphisms()):
        src_fib = fibres[base.dst(f)]
        dst_fib = fibres[base.src(f)]
        if f == base.id_of(base.src(f)) and not pseudo:
            reindex.append(identity_functor(src_fib))
        elif f == base.id_of(base.src(f)):
            choices = [
                m for m in monotone_maps(src_fib, src_fib)
                if all(src_fib.hom(x, m.obj(x)) and src_fib.hom(m.obj(x), x)
                       for x in range(src_fib.n_objects()))
            ]
            reindex.append(rng.choice(choices))
        else:
            reindex.append(rng.choice(list(monotone_maps(src_fib, dst_fib))))
    if pseudo:
        return thin_indexed(base, fibres, reindex)
    return strict_indexed(base, fibres, reindex)
