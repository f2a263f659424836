"""The posetal bicategory of quantale-valued matrices.

A matrix S from X to Y is a table ``entries[y][x]`` of quantale element ids
(rows indexed by the destination, matching the composition convention
(t∘s)(z,x) = ⋁_y t(z,y)⊗s(y,x)).  2-cells are the pointwise order, so all
coherence isomorphisms are equalities and associativity is strict.

Matrices are dense and immutable; every operation is pure.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .base import Quantale
from .errors import BaseMismatch, ExponentTooLarge, ShapeMismatch

EXPONENT_CAP = 4096


@dataclass(frozen=True)
class FinSet:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate names in finite set: {self.names}")

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __iter__(self):
        return iter(range(self.size))


def fin_set(names) -> FinSet:
    return FinSet(tuple(names))


SINGLETON = fin_set(("*",))


def prod_set(x: FinSet, y: FinSet) -> FinSet:
    return fin_set(f"({a},{b})" for a in x.names for b in y.names)


def prod_index(x: FinSet, y: FinSet, a: int, b: int) -> int:
    return a * y.size + b


@dataclass(frozen=True)
class FinFn:
    """A total function between finite sets, as a lookup table."""

    src: FinSet
    dst: FinSet
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.src.size or any(
            not (0 <= v < self.dst.size) for v in self.table
        ):
            raise ValueError("function table does not match its carrier sets")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def then(self, g: "FinFn") -> "FinFn":
        if g.src != self.dst:
            raise ShapeMismatch("functions are not composable")
        return FinFn(self.src, g.dst, tuple(g.table[v] for v in self.table))


def identity_fn(x: FinSet) -> FinFn:
    return FinFn(x, x, tuple(range(x.size)))


class FnSpace:
    """The set Y^X of functions, materialized with lexicographic graphs.

    ``graphs[i]`` is the tuple (f(x_0), ..., f(x_{n-1})) of Y-indices; the
    enumeration order is lexicographic in these graphs, and all exponential
    relabelings (currying) elsewhere in the engine go through this class.
    """

    def __init__(self, src: FinSet, dst: FinSet, cap: int = EXPONENT_CAP):
        size = dst.size ** src.size
        if size > cap:
            raise ExponentTooLarge(size, cap)
        self.src = src
        self.dst = dst
        self.graphs = tuple(
            itertools.product(range(dst.size), repeat=src.size)
        )
        self.set = fin_set(
            "(" + ",".join(dst.names[v] for v in g) + ")" for g in self.graphs
        )

    def index_of(self, graph) -> int:
        return self.graphs.index(tuple(graph))

    def apply(self, fn_index: int, x: int) -> int:
        return self.graphs[fn_index][x]

    def as_fn(self, fn_index: int) -> FinFn:
        return FinFn(self.src, self.dst, self.graphs[fn_index])


def curry_index(outer: FnSpace, inner: FnSpace, flat: FnSpace,
                prod_src: FinSet, fn_index: int) -> int:
    """Canonical bijection (Y^Z)^X ≅ Y^(X×Z) on indices.

    ``outer`` is (Y^Z)^X, ``inner`` is Y^Z, ``flat`` is Y^(X×Z) and
    ``prod_src`` the product set X×Z with `prod_index` layout.
    """
    zsize = inner.src.size
    graph = []
    for x in range(outer.src.size):
        inner_idx = outer.graphs[fn_index][x]
        graph.extend(inner.graphs[inner_idx][z] for z in range(zsize))
    return flat.index_of(tuple(graph))


class VMat:
    """A 1-cell of the matrix bicategory: entries[y][x] over dst×src."""

    __slots__ = ("base", "src", "dst", "entries")

    def __init__(self, base: Quantale, src: FinSet, dst: FinSet, entries):
        self.base = base
        self.src = src
        self.dst = dst
        self.entries = tuple(tuple(int(v) for v in row) for row in entries)
        if len(self.entries) != dst.size or any(
            len(row) != src.size for row in self.entries
        ):
            raise ShapeMismatch(
                f"entries are {len(self.entries)}x? but shape is "
                f"{dst.size}x{src.size}"
            )
        for row in self.entries:
            for v in row:
                if not (0 <= v < base.n):
                    raise ValueError(f"entry id {v} out of range")

    def entry(self, y: int, x: int) -> int:
        return self.entries[y][x]

    def is_square(self) -> bool:
        return self.src == self.dst

    def __eq__(self, other):
        return (
            isinstance(other, VMat)
            and self.base == other.base
            and self.src == other.src
            and self.dst == other.dst
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.src, self.dst, self.entries))

    def __repr__(self):
        rows = [
            [self.base.name(v) for v in row] for row in self.entries
        ]
        return f"VMat({rows})"


def _check_same_base(s: VMat, t: VMat):
    if s.base != t.base:
        raise BaseMismatch("operands live over different quantales")


def compose(t: VMat, s: VMat) -> VMat:
    """(t∘s)(z,x) = ⋁_y t(z,y)⊗s(y,x) for s: X→Y, t: Y→Z."""
    _check_same_base(s, t)
    if s.dst != t.src:
        raise ShapeMismatch(f"cannot compose {t.src.names} after {s.dst.names}")
    q = s.base
    return VMat(
        q,
        s.src,
        t.dst,
        tuple(
            tuple(
                q.join_all(
                    q.tensor(t.entries[z][y], s.entries[y][x])
                    for y in range(s.dst.size)
                )
                for x in range(s.src.size)
            )
            for z in range(t.dst.size)
        ),
    )


def id_mat(x: FinSet, base: Quantale) -> VMat:
    """Unit at each diagonal entry, bottom elsewhere."""
    return VMat(
        base,
        x,
        x,
        tuple(
            tuple(base.unit if i == j else base.bottom for j in x)
            for i in x
        ),
    )



def leq2cell(s: VMat, t: VMat) -> bool:
    """Existence of the (unique) 2-cell s ⇒ t: the pointwise order."""
    _check_same_base(s, t)
    if s.src != t.src or s.dst != t.dst:
        raise ShapeMismatch("2-cells need equal shapes")
    q = s.base
    return all(
        q.leq(s.entries[y][x], t.entries[y][x])
        for y in range(s.dst.size)
        for x in range(s.src.size)
    )


def join_mat(s: VMat, t: VMat) -> VMat:
    _check_same_base(s, t)
    if s.src != t.src or s.dst != t.dst:
        raise ShapeMismatch("join needs equal shapes")
    q = s.base
    return VMat(q, s.src, s.dst, tuple(
        tuple(q.join(s.entries[y][x], t.entries[y][x]) for x in range(s.src.size))
        for y in range(s.dst.size)))


def meet_mat(s: VMat, t: VMat) -> VMat:
    _check_same_base(s, t)
    if s.src != t.src or s.dst != t.dst:
        raise ShapeMismatch("meet needs equal shapes")
    q = s.base
    return VMat(q, s.src, s.dst, tuple(
        tuple(q.meet(s.entries[y][x], t.entries[y][x]) for x in range(s.src.size))
        for y in range(s.dst.size)))


def companion(f: FinFn, base: Quantale) -> VMat:
    """f⋆: X→Y with f⋆(y,x) = I if f(x)=y, bottom otherwise."""
    return VMat(
        base,
        f.src,
        f.dst,
        tuple(
            tuple(base.unit if f(x) == y else base.bottom for x in f.src)
            for y in f.dst
        ),
    )


def conjoint(f: FinFn, base: Quantale) -> VMat:
    """f*: Y→X with f*(x,y) = I if f(x)=y, bottom otherwise."""
    return VMat(
        base,
        f.dst,
        f.src,
        tuple(
            tuple(base.unit if f(x) == y else base.bottom for y in f.dst)
            for x in f.src
        ),
    )


def star_functoriality(f: FinFn, g: FinFn, base: Quantale) -> bool:
    """Posetal ζ/ξ: g⋆∘f⋆ = (gf)⋆ and f*∘g* = (gf)* as matrix equalities."""
    gf = f.then(g)
    comp_ok = compose(companion(g, base), companion(f, base)) == companion(gf, base)
    conj_ok = compose(conjoint(f, base), conjoint(g, base)) == conjoint(gf, base)
    return comp_ok and conj_ok


def tensor_mat(s: VMat, t: VMat) -> VMat:
    """(S⊗T)((y,z),(x,w)) = S(y,x)⊗T(z,w) on product index sets."""
    _check_same_base(s, t)
    q = s.base
    src = prod_set(s.src, t.src)
    dst = prod_set(s.dst, t.dst)
    entries = [[None] * src.size for _ in range(dst.size)]
    for y in range(s.dst.size):
        for z in range(t.dst.size):
            row = entries[prod_index(s.dst, t.dst, y, z)]
            for x in range(s.src.size):
                for w in range(t.src.size):
                    row[prod_index(s.src, t.src, x, w)] = q.tensor(
                        s.entries[y][x], t.entries[z][w]
                    )
    return VMat(q, src, dst, entries)


def hom_spaces(s: VMat, t: VMat, cap: int = EXPONENT_CAP):
    """The function spaces (Y^X, W^Z) underlying hom_mat(s, t)."""
    return FnSpace(s.src, t.src, cap), FnSpace(s.dst, t.dst, cap)


def hom_mat(s: VMat, t: VMat, cap: int = EXPONENT_CAP) -> VMat:
    """Hom(S,T): Y^X → W^Z with entry (q,k) = ⋀_{z,x} hom(S(z,x), T(qz,kx)).

    Here s: X→Z and t: Y→W; the result's src is the function set Y^X and its
    dst is W^Z, both materialized through `FnSpace`.
    """
    _check_same_base(s, t)
    quant = s.base
    src_space, dst_space = hom_spaces(s, t, cap)
    entries = []
    for qi in range(dst_space.set.size):
        qgraph = dst_space.graphs[qi]
        row = []
        for ki in range(src_space.set.size):
            kgraph = src_space.graphs[ki]
            row.append(
                quant.meet_all(
                    quant.hom(s.entries[z][x], t.entries[qgraph[z]][kgraph[x]])
                    for z in range(s.dst.size)
                    for x in range(s.src.size)
                )
            )
        entries.append(row)
    return VMat(quant, src_space.set, dst_space.set, entries)
