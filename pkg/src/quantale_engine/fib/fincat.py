"""Explicit finite categories, functors, natural transformations and
adjunctions, with universal properties decided by enumeration."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import CategoryAuditError, ShapeMismatch


@dataclass(frozen=True)
class Morph:
    name: str
    src: int
    dst: int


class FinCategory:
    """Objects, morphisms, a composition table and identities.

    ``compose[(g, f)]`` is g∘f, defined exactly when cod f = dom g.
    Associativity and the identity laws are audited on construction.
    """

    def __init__(self, objects, morphisms, compose, identities):
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.compose_table = dict(compose)
        self.identities = tuple(identities)
        self._audit()
        self._hom: dict[tuple[int, int], tuple[int, ...]] = {}
        for i, m in enumerate(self.morphisms):
            self._hom.setdefault((m.src, m.dst), ())
            self._hom[(m.src, m.dst)] += (i,)

    # -- structure access ------------------------------------------------

    def n_objects(self) -> int:
        return len(self.objects)

    def n_morphisms(self) -> int:
        return len(self.morphisms)

    def src(self, m: int) -> int:
        return self.morphisms[m].src

    def dst(self, m: int) -> int:
        return self.morphisms[m].dst

    def id_of(self, obj: int) -> int:
        return self.identities[obj]

    def comp(self, g: int, f: int) -> int:
        """g∘f, for cod f = dom g."""
        try:
            return self.compose_table[(g, f)]
        except KeyError:
            raise ShapeMismatch(
                f"morphisms {self.morphisms[g].name} after "
                f"{self.morphisms[f].name} do not compose"
            )

    def hom(self, a: int, b: int) -> tuple[int, ...]:
        return self._hom.get((a, b), ())

    def morphism_index(self, name: str) -> int:
        for i, m in enumerate(self.morphisms):
            if m.name == name:
                return i
        raise KeyError(name)

    def object_index(self, name: str) -> int:
        return self.objects.index(name)

    def is_iso(self, m: int) -> bool:
        a, b = self.src(m), self.dst(m)
        return any(
            self.comp(m, inv) == self.id_of(b) and self.comp(inv, m) == self.id_of(a)
            for inv in self.hom(b, a)
        )

    def composable_pairs(self):
        for g in range(self.n_morphisms()):
            for f in range(self.n_morphisms()):
                if self.dst(f) == self.src(g):
                    yield g, f

    # -- audit -------------------------------------------------------------

    def _audit(self):
        n_obj = len(self.objects)
        if len(set(self.objects)) != n_obj:
            raise CategoryAuditError("duplicate object names")
        if len({m.name for m in self.morphisms}) != len(self.morphisms):
            raise CategoryAuditError("duplicate morphism names")
        if len(self.identities) != n_obj:
            raise CategoryAuditError("one identity per object required")
        for x, i in enumerate(self.identities):
            m = self.morphisms[i]
            if m.src != x or m.dst != x:
                raise CategoryAuditError(f"identity of {self.objects[x]} is not an endo")
        for (g, f), h in self.compose_table.items():
            if self.dst(f) != self.src(g):
                raise CategoryAuditError("composition table entry for non-composable pair")
            if self.src(h) != self.src(f) or self.dst(h) != self.dst(g):
                raise CategoryAuditError("composite has wrong endpoints")
        for g in range(len(self.morphisms)):
            for f in range(len(self.morphisms)):
                if self.dst(f) == self.src(g) and (g, f) not in self.compose_table:
                    raise CategoryAuditError(
                        f"missing composite {self.morphisms[g].name}∘{self.morphisms[f].name}"
                    )
        for f in range(len(self.morphisms)):
            if self.comp(f, self.id_of(self.src(f))) != f:
                raise CategoryAuditError(f"right identity law fails at {f}")
            if self.comp(self.id_of(self.dst(f)), f) != f:
                raise CategoryAuditError(f"left identity law fails at {f}")
        for h in range(len(self.morphisms)):
            for g in range(len(self.morphisms)):
                if self.dst(g) != self.src(h):
                    continue
                for f in range(len(self.morphisms)):
                    if self.dst(f) != self.src(g):
                        continue
                    if self.comp(self.comp(h, g), f) != self.comp(h, self.comp(g, f)):
                        raise CategoryAuditError(
                            f"associativity fails at ({h},{g},{f})"
                        )

    def __repr__(self):
        return (
            f"FinCategory({len(self.objects)} objects, "
            f"{len(self.morphisms)} morphisms)"
        )



def from_poset(names, leq) -> FinCategory:
    """The thin category of a preorder: one arrow x→y per related pair."""
    objects = tuple(names)
    n = len(objects)
    morphs = []
    index = {}
    for a in range(n):
        for b in range(n):
            if leq[a][b]:
                index[(a, b)] = len(morphs)
                morphs.append(Morph(f"{objects[a]}<={objects[b]}", a, b))
    compose = {}
    for (b, c), g in index.items():
        for (a, b2), f in index.items():
            if b2 == b:
                compose[(g, f)] = index[(a, c)]
    identities = tuple(index[(a, a)] for a in range(n))
    return FinCategory(objects, morphs, compose, identities)


def terminal_category() -> FinCategory:
    return from_poset(("*",), ((True,),))


def chain(n: int) -> FinCategory:
    """The linear order 0 ≤ 1 ≤ ... ≤ n-1 as a thin category."""
    return from_poset(
        tuple(str(i) for i in range(n)),
        tuple(tuple(a <= b for b in range(n)) for a in range(n)),
    )


class FinFunctor:
    """Object and morphism maps, audited to preserve ids and composition."""

    def __init__(self, src: FinCategory, dst: FinCategory, obj_map, mor_map):
        self.src = src
        self.dst = dst
        self.obj_map = tuple(obj_map)
        self.mor_map = tuple(mor_map)
        self._audit()

    def obj(self, x: int) -> int:
        return self.obj_map[x]

    def mor(self, m: int) -> int:
        return self.mor_map[m]

    def then(self, other: "FinFunctor") -> "FinFunctor":
        if other.src is not self.dst and other.src != self.dst:
            raise ShapeMismatch("functors do not compose")
        return FinFunctor(
            self.src,
            other.dst,
            tuple(other.obj_map[x] for x in self.obj_map),
            tuple(other.mor_map[m] for m in self.mor_map),
        )

    def _audit(self):
        if len(self.obj_map) != self.src.n_objects():
            raise CategoryAuditError("object map has wrong length")
        if len(self.mor_map) != self.src.n_morphisms():
            raise CategoryAuditError("morphism map has wrong length")
        for m in range(self.src.n_morphisms()):
            tm = self.mor_map[m]
            if self.dst.src(tm) != self.obj_map[self.src.src(m)]:
                raise CategoryAuditError(f"functor breaks sources at {m}")
            if self.dst.dst(tm) != self.obj_map[self.src.dst(m)]:
                raise CategoryAuditError(f"functor breaks targets at {m}")
        for x in range(self.src.n_objects()):
            if self.mor_map[self.src.id_of(x)] != self.dst.id_of(self.obj_map[x]):
                raise CategoryAuditError(f"functor breaks identity at object {x}")
        for g, f in self.src.composable_pairs():
            if self.mor_map[self.src.comp(g, f)] != self.dst.comp(
                self.mor_map[g], self.mor_map[f]
            ):
                raise CategoryAuditError(f"functor breaks composition at ({g},{f})")


def identity_functor(c: FinCategory) -> FinFunctor:
    return FinFunctor(
        c, c, tuple(range(c.n_objects())), tuple(range(c.n_morphisms()))
    )


class NatTrans:
    """Components per source-category object, audited for naturality."""

    def __init__(self, f: FinFunctor, g: FinFunctor, components):
        if f.src != g.src and f.src is not g.src:
            raise ShapeMismatch("parallel functors required")
        self.f = f
        self.g = g
        self.components = tuple(components)
        cat = f.dst
        for x in range(f.src.n_objects()):
            c = self.components[x]
            if cat.src(c) != f.obj(x) or cat.dst(c) != g.obj(x):
                raise CategoryAuditError(f"component at {x} has wrong endpoints")
        for m in range(f.src.n_morphisms()):
            a, b = f.src.src(m), f.src.dst(m)
            left = cat.comp(self.components[b], f.mor(m))
            right = cat.comp(g.mor(m), self.components[a])
            if left != right:
                raise CategoryAuditError(f"naturality fails at morphism {m}")

    def at(self, x: int) -> int:
        return self.components[x]


def vertical_compose(second: NatTrans, first: NatTrans) -> NatTrans:
    """second ∘ first componentwise (first: F⇒G, second: G⇒H)."""
    cat = first.f.dst
    comps = tuple(
        cat.comp(second.components[x], first.components[x])
        for x in range(len(first.components))
    )
    return NatTrans(first.f, second.g, comps)


class FinAdjunction:
    """F ⊣ G with unit/counit components; triangle identities audited."""

    def __init__(self, f: FinFunctor, g: FinFunctor, unit, counit):
        if f.src != g.dst or f.dst != g.src:
            if f.src is not g.dst or f.dst is not g.src:
                raise ShapeMismatch("adjunction endpoints do not match")
        self.f = f
        self.g = g
        self.unit = tuple(unit)      # per object a of f.src: a → G F a
        self.counit = tuple(counit)  # per object b of f.dst: F G b → b
        a_cat, b_cat = f.src, f.dst
        for a in range(a_cat.n_objects()):
            u = self.unit[a]
            if a_cat.src(u) != a or a_cat.dst(u) != g.obj(f.obj(a)):
                raise CategoryAuditError(f"unit component at {a} has wrong endpoints")
        for b in range(b_cat.n_objects()):
            c = self.counit[b]
            if b_cat.src(c) != f.obj(g.obj(b)) or b_cat.dst(c) != b:
                raise CategoryAuditError(f"counit component at {b} has wrong endpoints")
        # naturality of unit and counit
        NatTrans(identity_functor(a_cat), f.then(g), self.unit)
        NatTrans(g.then(f), identity_functor(b_cat), self.counit)
        for a in range(a_cat.n_objects()):
            tri = b_cat.comp(self.counit[f.obj(a)], f.mor(self.unit[a]))
            if tri != b_cat.id_of(f.obj(a)):
                raise CategoryAuditError(f"triangle (εF)(Fη) fails at {a}")
        for b in range(b_cat.n_objects()):
            tri = a_cat.comp(g.mor(self.counit[b]), self.unit[g.obj(b)])
            if tri != a_cat.id_of(g.obj(b)):
                raise CategoryAuditError(f"triangle (Gε)(ηG) fails at {b}")

    def transpose(self, a: int, v: int) -> int:
        """Hom(Fa, b) → Hom(a, Gb): v ↦ G(v)∘η_a."""
        return self.f.src.comp(self.g.mor(v), self.unit[a])

    def transpose_back(self, b: int, u: int) -> int:
        """Hom(a, Gb) → Hom(Fa, b): u ↦ ε_b∘F(u)."""
        return self.f.dst.comp(self.counit[b], self.f.mor(u))


# -- universal properties by enumeration ----------------------------------


def is_cartesian(p: FinFunctor, phi: int) -> bool:
    """phi is cartesian for the projection p iff every θ into cod(phi) over a
    factorization g of its projection lifts uniquely through phi."""
    total, base = p.src, p.dst
    f = p.mor(phi)
    a, b = total.src(phi), total.dst(phi)
    for theta in range(total.n_morphisms()):
        if total.dst(theta) != b:
            continue
        ptheta = p.mor(theta)
        a2 = total.src(theta)
        for g in base.hom(base.src(ptheta), base.src(f)):
            if base.comp(f, g) != ptheta:
                continue
            count = sum(
                1
                for psi in total.hom(a2, a)
                if p.mor(psi) == g and total.comp(phi, psi) == theta
            )
            if count != 1:
                return False
    return True


def is_cocartesian(p: FinFunctor, beta: int) -> bool:
    total, base = p.src, p.dst
    f = p.mor(beta)
    c, d = total.src(beta), total.dst(beta)
    for gamma in range(total.n_morphisms()):
        if total.src(gamma) != c:
            continue
        pgamma = p.mor(gamma)
        d2 = total.dst(gamma)
        for g in base.hom(base.dst(f), base.dst(pgamma)):
            if base.comp(g, f) != pgamma:
                continue
            count = sum(
                1
                for delta in total.hom(d, d2)
                if p.mor(delta) == g and total.comp(delta, beta) == gamma
            )
            if count != 1:
                return False
    return True


def all_functions_between(n: int, m: int):
    return itertools.product(range(m), repeat=n)


def monotone_maps(src: FinCategory, dst: FinCategory):
    """All functors between thin categories, as FinFunctors."""
    for obj_map in all_functions_between(src.n_objects(), dst.n_objects()):
        mor_map = []
        ok = True
        for m in range(src.n_morphisms()):
            a, b = src.src(m), src.dst(m)
            hom = dst.hom(obj_map[a], obj_map[b])
            if len(hom) != 1:
                ok = False
                break
            mor_map.append(hom[0])
        if ok:
            yield FinFunctor(src, dst, obj_map, tuple(mor_map))


def poset_adjunctions(a: FinCategory, b: FinCategory):
    """All adjunctions f ⊣ g between thin categories (Galois connections),
    with units and counits filled in by thinness."""
    out = []
    for f in monotone_maps(a, b):
        for g in monotone_maps(b, a):
            if all(
                bool(b.hom(f.obj(x), y)) == bool(a.hom(x, g.obj(y)))
                for x in range(a.n_objects()) for y in range(b.n_objects())
            ):
                unit = [a.hom(x, g.obj(f.obj(x)))[0]
                        for x in range(a.n_objects())]
                counit = [b.hom(f.obj(g.obj(y)), y)[0]
                          for y in range(b.n_objects())]
                out.append(FinAdjunction(f, g, unit, counit))
    return out
