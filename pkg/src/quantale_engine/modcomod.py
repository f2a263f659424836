"""V-modules and V-comodules with singleton domain, and the measuring
comodule as a lattice fixpoint.

A module over a V-category A on X is a column Ψ with A(x,x')⊗Ψ(x') ⊑ Ψ(x);
a comodule over a cocategory C is a column Φ with Φ(x) ⊑ ⋁_{x'} C(x,x')⊗Φ(x')
(the join collapses to C(x,x)⊗Φ(x) since cocategories are diagonal).
Modules carry their acting (co)category by reference, mirroring the
Grothendieck presentation of the global categories.  Left-sided only.
"""
from __future__ import annotations

from .base import Quantale
from .enrichment import SweedlerHom, k_functor, sweedler_hom
from .errors import CertificateFailure, ShapeMismatch
from .reporting import Certificate, PASS, failure
from .structures import VCategory, VCocategory, VCofunctor, VFunctor, check_functor
from .vmat import EXPONENT_CAP, FinFn, FnSpace


def _check_column(over_objects, carrier):
    if len(carrier) != over_objects.size:
        raise ShapeMismatch("carrier length does not match the object set")


def check_module(a: VCategory, psi) -> Certificate:
    """Action inequality A(x,x')⊗Ψ(x') ⊑ Ψ(x); witness (x,x') on failure."""
    _check_column(a.objects, psi)
    q = a.base
    for x in a.objects:
        for x2 in a.objects:
            if not q.leq(q.tensor(a.carrier.entry(x, x2), psi[x2]), psi[x]):
                return failure("module.action", (x, x2))
    return PASS


def check_comodule(c: VCocategory, phi) -> Certificate:
    """Coaction inequality Φ(x) ⊑ ⋁_{x'} C(x,x')⊗Φ(x')."""
    _check_column(c.objects, phi)
    q = c.base
    for x in c.objects:
        bound = q.join_all(
            q.tensor(c.carrier.entry(x, x2), phi[x2]) for x2 in c.objects
        )
        if not q.leq(phi[x], bound):
            return failure("comodule.coaction", (x,))
    return PASS


class VModule:
    def __init__(self, over: VCategory, carrier, iterations: int | None = None):
        carrier = tuple(int(v) for v in carrier)
        cert = check_module(over, carrier)
        if not cert.ok:
            raise CertificateFailure(f"not a module: {cert}")
        self.over = over
        self.carrier = carrier
        self.certificate = cert
        self.iterations = iterations

    @property
    def base(self) -> Quantale:
        return self.over.base

    def __eq__(self, other):
        return (
            isinstance(other, VModule)
            and self.over == other.over
            and self.carrier == other.carrier
        )

    def __hash__(self):
        return hash((self.over, self.carrier))

    def __repr__(self):
        names = [self.base.name(v) for v in self.carrier]
        return f"VModule({names})"


class VComodule:
    def __init__(self, over: VCocategory, carrier, iterations: int | None = None):
        carrier = tuple(int(v) for v in carrier)
        cert = check_comodule(over, carrier)
        if not cert.ok:
            raise CertificateFailure(f"not a comodule: {cert}")
        self.over = over
        self.carrier = carrier
        self.certificate = cert
        self.iterations = iterations

    @property
    def base(self) -> Quantale:
        return self.over.base

    def __eq__(self, other):
        return (
            isinstance(other, VComodule)
            and self.over == other.over
            and self.carrier == other.carrier
        )

    def __hash__(self):
        return hash((self.over, self.carrier))

    def __repr__(self):
        names = [self.base.name(v) for v in self.carrier]
        return f"VComodule({names})"


def check_module_morphism(
    psi: VModule, xi: VModule, f: FinFn
) -> Certificate:
    """Global-category morphism over a functor: Ψ(x) ⊑ Ξ(fx), plus the
    action-compatibility inequality (which the posetal model then implies;
    both are asserted)."""
    fun = check_functor(psi.over, xi.over, f)
    if not fun.ok:
        return fun
    q = psi.base
    for x in psi.over.objects:
        if not q.leq(psi.carrier[x], xi.carrier[f(x)]):
            return failure("module_morphism.carrier", (x,))
    for x in psi.over.objects:
        for x2 in psi.over.objects:
            lhs = q.tensor(psi.over.carrier.entry(x, x2), psi.carrier[x2])
            if not q.leq(lhs, xi.carrier[f(x)]):
                return failure("module_morphism.action_compat", (x, x2))
    return PASS


def restrict_module(xi: VModule, functor: VFunctor) -> VModule:
    """Restriction of scalars along a certified functor F: A→B: x ↦ Ξ(fx)."""
    if functor.dst != xi.over:
        raise ShapeMismatch("functor must land in the module's category")
    f = functor.object_map
    carrier = tuple(xi.carrier[f(x)] for x in functor.src.objects)
    return VModule(functor.src, carrier)


def corestrict_comodule(phi: VComodule, cofunctor: VCofunctor) -> VComodule:
    """Corestriction along a certified cofunctor G: C→D: y ↦ ⋁_{gx=y} Φ(x)."""
    if cofunctor.src != phi.over:
        raise ShapeMismatch("cofunctor must start at the comodule's cocategory")
    g = cofunctor.object_map
    q = phi.base
    carrier = tuple(
        q.join_all(phi.carrier[x] for x in g.src if g(x) == y)
        for y in g.dst
    )
    return VComodule(cofunctor.dst, carrier)


def hom_module(
    phi: VComodule, psi: VModule, cap: int = EXPONENT_CAP
) -> tuple[VModule, FnSpace]:
    """Hom(Φ,Ψ)(t) = ⋀_x hom(Φ(x), Ψ(tx)), a module over k_functor(C,B)."""
    q = phi.base
    k = k_functor(phi.over, psi.over, cap)
    carrier = tuple(
        q.meet_all(
            q.hom(phi.carrier[x], psi.carrier[k.space.apply(t, x)])
            for x in phi.over.objects
        )
        for t in range(k.objects.size)
    )
    return VModule(k, carrier), k.space


def measuring_comodule(
    psi: VModule, xi: VModule, cap: int = EXPONENT_CAP
) -> tuple[VComodule, SweedlerHom]:
    """T̄(Ψ,Ξ): the largest comodule Φ over T(A,B) with Φ(s)⊗Ψ(x) ⊑ Ξ(sx).

    Per entry, a greatest-fixpoint iteration from ⋀_x hom(Ψ(x), Ξ(sx))
    meets in the coaction constraint Φ(s) ⊑ T(s,s)⊗Φ(s) until stable.
    """
    q = psi.base
    t = sweedler_hom(psi.over, xi.over, cap)
    carrier = []
    iterations = 0
    for s in range(t.space.set.size):
        graph = t.space.graphs[s]
        v = q.meet_all(
            q.hom(psi.carrier[x], xi.carrier[graph[x]])
            for x in psi.over.objects
        )
        tss = t.carrier.entry(s, s)
        while True:
            iterations += 1
            nxt = q.meet(v, q.tensor(tss, v))
            if nxt == v:
                break
            v = nxt
        carrier.append(v)
    return VComodule(t.cocategory, tuple(carrier), iterations=iterations), t
