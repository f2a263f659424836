"""V-graphs, V-categories and V-cocategories over a quantale base.

A V-category is a square matrix A with id ⊑ A and A∘A ⊑ A (a monad in the
matrix bicategory); over the Boolean base these are preorders, over the
tropical base generalized metric spaces.  The convention A(y,x) = hom(x→y)
is fixed globally.  A V-cocategory is the dual: C ⊑ id and C ⊑ C∘C, which
over a quantale forces the carrier onto the diagonal.

The free category and cofree cocategory are computed as lattice fixpoints
(Jacobi-style full-matrix updates, so results are schedule-independent).
"""
from __future__ import annotations

from dataclasses import dataclass

from .base import Quantale
from .errors import CertificateFailure, ShapeMismatch
from .reporting import Certificate, PASS, failure
from .vmat import (
    FinFn,
    FinSet,
    VMat,
    companion,
    compose,
    conjoint,
    id_mat,
    join_mat,
    leq2cell,
)


@dataclass(frozen=True)
class VGraph:
    """An endo-matrix G: X→X, the underlying data of a (co)category."""

    carrier: VMat

    def __post_init__(self):
        if not self.carrier.is_square():
            raise ShapeMismatch("a V-graph needs src = dst")

    @property
    def objects(self) -> FinSet:
        return self.carrier.src

    @property
    def base(self) -> Quantale:
        return self.carrier.base


def check_category(g: VGraph) -> Certificate:
    """Monad laws, posetally: id ⊑ A and A∘A ⊑ A, with a witness on failure."""
    a = g.carrier
    q = a.base
    for x in a.src:
        if not q.leq(q.unit, a.entry(x, x)):
            return failure("category.unit", (x,))
    for z in a.src:
        for y in a.src:
            for x in a.src:
                lhs = q.tensor(a.entry(z, y), a.entry(y, x))
                if not q.leq(lhs, a.entry(z, x)):
                    return failure("category.multiplication", (z, y, x))
    return PASS


def check_cocategory(g: VGraph) -> Certificate:
    """Comonad laws, posetally: C ⊑ id (diagonal support, counit ⊑ I) and
    C ⊑ C∘C."""
    c = g.carrier
    q = c.base
    for y in c.src:
        for x in c.src:
            if y != x and c.entry(y, x) != q.bottom:
                return failure("cocategory.counit", (y, x))
    for x in c.src:
        if not q.leq(c.entry(x, x), q.unit):
            return failure("cocategory.counit", (x, x))
    cc = compose(c, c)
    for y in c.src:
        for x in c.src:
            if not q.leq(c.entry(y, x), cc.entry(y, x)):
                return failure("cocategory.comultiplication", (y, x))
    return PASS


class VCategory:
    """A certified V-category; construction re-runs the law check."""

    def __init__(self, graph: VGraph, iterations: int | None = None):
        cert = check_category(graph)
        if not cert.ok:
            raise CertificateFailure(f"not a V-category: {cert}")
        self.graph = graph
        self.certificate = cert
        self.iterations = iterations

    @property
    def carrier(self) -> VMat:
        return self.graph.carrier

    @property
    def objects(self) -> FinSet:
        return self.graph.objects

    @property
    def base(self) -> Quantale:
        return self.graph.base

    def __eq__(self, other):
        return isinstance(other, VCategory) and self.carrier == other.carrier

    def __hash__(self):
        return hash(self.carrier)

    def __repr__(self):
        return f"VCategory({self.carrier!r})"


class VCocategory:
    def __init__(self, graph: VGraph, iterations: int | None = None):
        cert = check_cocategory(graph)
        if not cert.ok:
            raise CertificateFailure(f"not a V-cocategory: {cert}")
        self.graph = graph
        self.certificate = cert
        self.iterations = iterations

    @property
    def carrier(self) -> VMat:
        return self.graph.carrier

    @property
    def objects(self) -> FinSet:
        return self.graph.objects

    @property
    def base(self) -> Quantale:
        return self.graph.base

    def __eq__(self, other):
        return isinstance(other, VCocategory) and self.carrier == other.carrier

    def __hash__(self):
        return hash(self.carrier)

    def __repr__(self):
        return f"VCocategory({self.carrier!r})"


def free_category(g: VGraph) -> VCategory:
    """Least fixpoint of F ↦ id ∨ G ∨ F∘F, i.e. ⋁_{n≥0} Gⁿ (Kleene star).

    Termination: the iterates form a monotone chain in a finite lattice.
    The iteration count is reported on the result.
    """
    seed = join_mat(id_mat(g.objects, g.base), g.carrier)
    f = seed
    iterations = 0
    while True:
        iterations += 1
        nxt = join_mat(seed, compose(f, f))
        if nxt == f:
            return VCategory(VGraph(f), iterations=iterations)
        f = nxt


def cofree_cocategory(g: VGraph) -> VCocategory:
    """Greatest C with C ⊑ G, C ⊑ id and C ⊑ C∘C.

    The counit forces diagonal support, so each diagonal entry is the
    greatest subidempotent below G(x,x) ∧ I, reached by the decreasing
    meet iteration v ← v ∧ (v⊗v).
    """
    q = g.base
    xs = g.objects
    entries = [[q.bottom] * xs.size for _ in range(xs.size)]
    iterations = 0
    for x in xs:
        m = q.meet(g.carrier.entry(x, x), q.unit)
        v = m
        while True:
            iterations += 1
            nxt = q.meet(v, q.tensor(v, v))
            if nxt == v:
                break
            v = nxt
        entries[x][x] = v
    mat = VMat(q, xs, xs, entries)
    return VCocategory(VGraph(mat), iterations=iterations)


def check_functor(a: VCategory, b: VCategory, f: FinFn) -> Certificate:
    """A ⊑ f*∘B∘f⋆ pointwise: A(x′,x) ⊑ B(fx′,fx)."""
    if f.src != a.objects or f.dst != b.objects:
        raise ShapeMismatch("object map does not match the categories")
    q = a.base
    for x2 in a.objects:
        for x in a.objects:
            if not q.leq(a.carrier.entry(x2, x), b.carrier.entry(f(x2), f(x))):
                return failure("functor.hom_inequality", (x2, x))
    return PASS


def check_cofunctor(c: VCocategory, d: VCocategory, f: FinFn) -> Certificate:
    """f⋆∘C∘f* ⊑ D pointwise: C(x′,x) ⊑ D(fx′,fx)."""
    if f.src != c.objects or f.dst != d.objects:
        raise ShapeMismatch("object map does not match the cocategories")
    q = c.base
    for x2 in c.objects:
        for x in c.objects:
            if not q.leq(c.carrier.entry(x2, x), d.carrier.entry(f(x2), f(x))):
                return failure("cofunctor.hom_inequality", (x2, x))
    return PASS


@dataclass(frozen=True)
class VFunctor:
    """A certified V-functor: an object map whose 2-cell exists posetally."""

    src: VCategory
    dst: VCategory
    object_map: FinFn
    certificate: Certificate

    @staticmethod
    def certify(a: VCategory, b: VCategory, f: FinFn) -> "VFunctor":
        cert = check_functor(a, b, f)
        if not cert.ok:
            raise CertificateFailure(f"not a V-functor: {cert}")
        return VFunctor(a, b, f, cert)


@dataclass(frozen=True)
class VCofunctor:
    src: VCocategory
    dst: VCocategory
    object_map: FinFn
    certificate: Certificate

    @staticmethod
    def certify(c: VCocategory, d: VCocategory, f: FinFn) -> "VCofunctor":
        cert = check_cofunctor(c, d, f)
        if not cert.ok:
            raise CertificateFailure(f"not a V-cofunctor: {cert}")
        return VCofunctor(c, d, f, cert)


def restrict(b: VCategory, f: FinFn) -> VCategory:
    """Pull a category on Y back along f: X→Y: carrier f*∘B∘f⋆."""
    if f.dst != b.objects:
        raise ShapeMismatch("f must land in the category's objects")
    q = b.base
    carrier = compose(conjoint(f, q), compose(b.carrier, companion(f, q)))
    return VCategory(VGraph(carrier))


def corestrict(c: VCocategory, f: FinFn) -> VCocategory:
    """Push a cocategory on X forward along f: X→Y: carrier f⋆∘C∘f*."""
    if f.src != c.objects:
        raise ShapeMismatch("f must start at the cocategory's objects")
    q = c.base
    carrier = compose(companion(f, q), compose(c.carrier, conjoint(f, q)))
    return VCocategory(VGraph(carrier))


def discrete_category(xs: FinSet, q: Quantale) -> VCategory:
    return VCategory(VGraph(id_mat(xs, q)))


def unit_cocategory(xs: FinSet, q: Quantale) -> VCocategory:
    return VCocategory(VGraph(id_mat(xs, q)))


def contains(bigger: VGraph, smaller: VGraph) -> bool:
    return leq2cell(smaller.carrier, bigger.carrier)
