"""The enrichment engine: internal-hom categories and Sweedler homs.

`k_functor` builds the V-category Hom(C,B) on the function set Y^X;
`sweedler_hom` computes its parametrized adjoint T(A,B), the largest
cocategory on Y^X measuring A into B; `verify_sweedler_adjunction`
replaces the adjoint-functor-theorem existence proof by an exhaustive
Galois check over enumerated probes.  `measuring_object` and
`convolution` are the one-object specializations.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .base import Quantale
from .errors import CertificateFailure, NotAMonoid
from .structures import (
    VCategory,
    VCocategory,
    VGraph,
    check_cofunctor,
    check_functor,
)
from .vmat import (
    EXPONENT_CAP,
    FinFn,
    FinSet,
    FnSpace,
    VMat,
    curry_index,
    fin_set,
    hom_mat,
    prod_set,
)


class HomCategory(VCategory):
    """K(C,B): the internal-hom V-category on the object set Y^X."""

    def __init__(self, graph: VGraph, src_space: FnSpace):
        super().__init__(graph)
        self.space = src_space


def k_functor(c: VCocategory, b: VCategory, cap: int = EXPONENT_CAP) -> HomCategory:
    """Hom(C,B) with entries ⋀_{x,x'} hom(C(x',x), B(qx',kx)).

    The category certificate is recomputed and must pass; a failure here
    would be an engine bug, not bad input.
    """
    carrier = hom_mat(c.carrier, b.carrier, cap)
    space = FnSpace(c.objects, b.objects, cap)
    try:
        return HomCategory(VGraph(carrier), space)
    except CertificateFailure as exc:  # pragma: no cover - engine invariant
        raise CertificateFailure(f"k_functor produced a non-category: {exc}")


@dataclass
class SweedlerHom:
    """T(A,B): the largest cocategory on Y^X measuring A into B."""

    cocategory: VCocategory
    space: FnSpace
    iterations: int

    @property
    def carrier(self) -> VMat:
        return self.cocategory.carrier

    def support(self) -> dict[str, str]:
        """Function name → non-bottom diagonal value name."""
        q = self.carrier.base
        out = {}
        for s in range(self.space.set.size):
            v = self.carrier.entry(s, s)
            if v != q.bottom:
                out[self.space.set.names[s]] = q.name(v)
        return out


def sweedler_hom(a: VCategory, b: VCategory, cap: int = EXPONENT_CAP) -> SweedlerHom:
    """Greatest fixpoint computation of T(A,B).

    Starting from D(s,s) = I ∧ ⋀_{x,x'} hom(A(x',x), B(sx',sx)) on the
    diagonal (bottom elsewhere, as the counit dictates), each entry is
    lowered by v ← v ∧ (v⊗v) until subidempotent.  The result is the
    largest cocategory D with D(s,s)⊗A(x',x) ⊑ B(sx',sx) throughout.
    """
    q = a.base
    space = FnSpace(a.objects, b.objects, cap)
    n = space.set.size
    entries = [[q.bottom] * n for _ in range(n)]
    iterations = 0
    for s in range(n):
        graph = space.graphs[s]
        m = q.meet(
            q.unit,
            q.meet_all(
                q.hom(a.carrier.entry(x2, x), b.carrier.entry(graph[x2], graph[x]))
                for x2 in a.objects
                for x in a.objects
            ),
        )
        v = m
        while True:
            iterations += 1
            nxt = q.meet(v, q.tensor(v, v))
            if nxt == v:
                break
            v = nxt
        entries[s][s] = v
    cocat = VCocategory(VGraph(VMat(q, space.set, space.set, entries)))
    # Measuring inequality is part of the contract; surface violations.
    for s in range(n):
        graph = space.graphs[s]
        for x2 in a.objects:
            for x in a.objects:
                lhs = q.tensor(entries[s][s], a.carrier.entry(x2, x))
                if not q.leq(lhs, b.carrier.entry(graph[x2], graph[x])):
                    raise CertificateFailure(
                        f"sweedler hom violates measuring at s={s}, ({x2},{x})"
                    )
    return SweedlerHom(cocat, space, iterations)


def all_cocategories(q: Quantale, xs: FinSet):
    """Every V-cocategory on xs: diagonal tuples of comonoid elements."""
    comonoids = q.comonoid_elements()
    for diag in itertools.product(comonoids, repeat=xs.size):
        entries = [
            [diag[i] if i == j else q.bottom for j in xs] for i in xs
        ]
        yield VCocategory(VGraph(VMat(q, xs, xs, entries)))


def all_functions(src: FinSet, dst: FinSet):
    for table in itertools.product(range(dst.size), repeat=src.size):
        yield FinFn(src, dst, table)


@dataclass
class AdjunctionReport:
    """Outcome of the exhaustive Galois verification for T(A,B)."""

    total: int = 0
    matches: int = 0
    mismatches: list = field(default_factory=list)
    table: list = field(default_factory=list)

    @property
    def all_match(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "matches": self.matches,
            "all_match": self.all_match,
            "mismatches": self.mismatches,
        }


def verify_sweedler_adjunction(
    a: VCategory, b: VCategory, bound: int, cap: int = EXPONENT_CAP
) -> AdjunctionReport:
    """Check Cocat(C, T(A,B)) ≅ Cat(A, K(C,B)) by complete enumeration.

    For every cocategory C over every carrier Z with |Z| ≤ bound and every
    g: Z → Y^X, the cofunctor condition for g must hold exactly when the
    functor condition holds for its curry partner ĝ: X → Y^Z.
    """
    q = a.base
    t = sweedler_hom(a, b, cap)
    report = AdjunctionReport()
    for zsize in range(1, bound + 1):
        zs = fin_set(f"z{i}" for i in range(zsize))
        probe_space = FnSpace(zs, b.objects, cap)  # Y^Z, objects of K(C,B)
        for c in all_cocategories(q, zs):
            k = k_functor(c, b, cap)
            for g in all_functions(zs, t.space.set):
                cof = check_cofunctor(c, t.cocategory, g).ok
                ghat_graph = tuple(
                    probe_space.index_of(
                        tuple(
                            t.space.graphs[g(z)][x] for z in range(zsize)
                        )
                    )
                    for x in a.objects
                )
                ghat = FinFn(a.objects, k.objects, ghat_graph)
                fun = check_functor(a, k, ghat).ok
                report.total += 1
                row = (zsize, c.carrier.entries, g.table, cof, fun)
                report.table.append(row)
                if cof == fun:
                    report.matches += 1
                else:
                    report.mismatches.append(row)
    return report


def measuring_object(a: int, b: int, q: Quantale) -> int:
    """P(a,b): largest c with c ⊑ I, c ⊑ c⊗c and c⊗a ⊑ b.

    The one-object Sweedler hom; a and b must be monoid elements.
    """
    q.require_monoid(a)
    q.require_monoid(b)
    m = q.meet(q.unit, q.hom(a, b))
    return q.largest_subidempotent_below(m)


def convolution(c: int, a: int, q: Quantale) -> int:
    """hom(c,a) with its monoid certificate asserted, for c a comonoid
    element and a a monoid element."""
    if not q.is_comonoid_element(c):
        raise NotAMonoid(f"{q.name(c)} is not a comonoid element", (c,))
    q.require_monoid(a)
    h = q.hom(c, a)
    if not q.leq(q.unit, h) or not q.leq(q.tensor(h, h), h):
        raise CertificateFailure(
            f"convolution of {q.name(c)}, {q.name(a)} is not a monoid element"
        )
    return h


@dataclass
class BijectionReport:
    """One-object Galois correspondence, tabulated as a set bijection."""

    entries: list = field(default_factory=list)
    mismatches: list = field(default_factory=list)

    @property
    def all_match(self) -> bool:
        return not self.mismatches


def verify_measuring_bijection(q: Quantale) -> BijectionReport:
    """For all monoid elements a,b and comonoid elements c, the set of
    monoid maps a → hom(c,b) must biject with the set of comonoid maps
    c → P(a,b); posetally both sets have 0 or 1 elements."""
    report = BijectionReport()
    for a in q.monoid_elements():
        for b in q.monoid_elements():
            p = measuring_object(a, b, q)
            for c in q.comonoid_elements():
                mon_side = 1 if q.leq(a, q.hom(c, b)) else 0
                comon_side = 1 if q.leq(c, p) else 0
                report.entries.append((a, b, c, mon_side, comon_side))
                if mon_side != comon_side:
                    report.mismatches.append((a, b, c, mon_side, comon_side))
    return report


def k_action_relabel_check(
    c: VCocategory, d: VCocategory, a: VCategory, cap: int = EXPONENT_CAP
) -> bool:
    """K(C⊗D, A) = K(C, K(D,A)) after the canonical exponential relabeling
    (Y^(X×Z) ≅ (Y^Z)^X, currying in lexicographic order)."""
    q = a.base
    cd_entries_src = prod_set(c.objects, d.objects)
    # tensor of cocategories = tensor of carriers (diagonal support survives)
    from .vmat import tensor_mat

    cd = VCocategory(VGraph(tensor_mat(c.carrier, d.carrier)))
    lhs = k_functor(cd, a, cap)  # on Y^(X×Z)
    ka = k_functor(d, a, cap)  # on Y^Z
    rhs = k_functor(c, ka, cap)  # on (Y^Z)^X
    flat = FnSpace(cd_entries_src, a.objects, cap)
    outer = FnSpace(c.objects, ka.objects, cap)
    inner = ka.space
    n = outer.set.size
    if lhs.objects.size != n:
        return False
    for i in range(n):
        fi = curry_index(outer, inner, flat, cd_entries_src, i)
        for j in range(n):
            fj = curry_index(outer, inner, flat, cd_entries_src, j)
            if rhs.carrier.entry(i, j) != lhs.carrier.entry(fi, fj):
                return False
    return True
