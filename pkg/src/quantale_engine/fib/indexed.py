"""Indexed categories (pseudofunctors as data), the Grothendieck
construction, cloven fibrations and the fibration↔indexed round trip."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import (
    CoherenceFailure,
    EngineError,
    EnumerationCapExceeded,
    ShapeMismatch,
)
from .fincat import FinCategory, FinFunctor, Morph, is_cartesian

TOTAL_MORPHISM_CAP = 64


class IndexedCategory:
    """A pseudofunctor base^op → Cat given by explicit tables.

    ``fibres[X]`` is the fibre category over base object X; ``reindex[f]``
    is M(f): fibre(cod f) → fibre(dom f); ``delta[(g,f)]`` has a component
    per object A of fibre(cod g), an iso Mf(Mg A) → M(g∘f) A; ``gamma[X]``
    has a component per object A of fibre(X), an iso A → M(1_X) A.
    Coherence (naturality, iso-ness, associativity and unit laws) is
    audited exhaustively on construction.
    """

    def __init__(self, base: FinCategory, fibres, reindex, delta, gamma):
        self.base = base
        self.fibres = tuple(fibres)
        self.reindex = tuple(reindex)
        self.delta = dict(delta)
        self.gamma = tuple(tuple(g) for g in gamma)
        self._audit()

    def fibre(self, x: int) -> FinCategory:
        return self.fibres[x]

    def m(self, f: int) -> FinFunctor:
        return self.reindex[f]

    def _audit(self):
        base = self.base
        if len(self.fibres) != base.n_objects():
            raise CoherenceFailure("one fibre per base object required")
        if len(self.reindex) != base.n_morphisms():
            raise CoherenceFailure("one reindexing functor per base morphism")
        for f in range(base.n_morphisms()):
            mf = self.reindex[f]
            if mf.src != self.fibres[base.dst(f)] or mf.dst != self.fibres[base.src(f)]:
                raise CoherenceFailure(f"reindexing of {f} has wrong endpoints")
        for g, f in base.composable_pairs():
            if (g, f) not in self.delta:
                raise CoherenceFailure(f"missing delta component for pair ({g},{f})")
        for (g, f), comps in self.delta.items():
            if base.dst(f) != base.src(g):
                raise CoherenceFailure("delta indexed by non-composable pair")
            gf = base.comp(g, f)
            fib_src = self.fibres[base.src(f)]
            fib_top = self.fibres[base.dst(g)]
            mf, mg, mgf = self.reindex[f], self.reindex[g], self.reindex[gf]
            if len(comps) != fib_top.n_objects():
                raise CoherenceFailure("delta has wrong component count")
            for a in range(fib_top.n_objects()):
                d = comps[a]
                if not (0 <= d < fib_src.n_morphisms()):
                    raise CoherenceFailure(
                        f"delta[{g},{f}] component out of range at {a}")
                if fib_src.src(d) != mf.obj(mg.obj(a)) or fib_src.dst(d) != mgf.obj(a):
                    raise CoherenceFailure(f"delta[{g},{f}] endpoint mismatch at {a}")
                if not fib_src.is_iso(d):
                    raise CoherenceFailure(f"delta[{g},{f}] not iso at {a}")
            for m in range(fib_top.n_morphisms()):
                a, b = fib_top.src(m), fib_top.dst(m)
                left = fib_src.comp(comps[b], mf.mor(mg.mor(m)))
                right = fib_src.comp(mgf.mor(m), comps[a])
                if left != right:
                    raise CoherenceFailure(f"delta[{g},{f}] not natural at {m}")
        if len(self.gamma) != base.n_objects():
            raise CoherenceFailure("one gamma per base object required")
        for x in range(base.n_objects()):
            fib = self.fibres[x]
            m1 = self.reindex[base.id_of(x)]
            comps = self.gamma[x]
            if len(comps) != fib.n_objects():
                raise CoherenceFailure(f"gamma[{x}] has wrong component count")
            for a in range(fib.n_objects()):
                gmp = comps[a]
                if not (0 <= gmp < fib.n_morphisms()):
                    raise CoherenceFailure(
                        f"gamma[{x}] component out of range at {a}")
                if fib.src(gmp) != a or fib.dst(gmp) != m1.obj(a):
                    raise CoherenceFailure(f"gamma[{x}] endpoint mismatch at {a}")
                if not fib.is_iso(gmp):
                    raise CoherenceFailure(f"gamma[{x}] not iso at {a}")
            for m in range(fib.n_morphisms()):
                a, b = fib.src(m), fib.dst(m)
                if fib.comp(comps[b], m) != fib.comp(m1.mor(m), comps[a]):
                    raise CoherenceFailure(f"gamma[{x}] not natural at {m}")
        # associativity coherence: for h∘g∘f,
        # δ^{gf,h} ∘ δ^{f,g}_{Mh A} = δ^{f,hg} ∘ Mf(δ^{g,h}_A)
        for h in range(base.n_morphisms()):
            for g in range(base.n_morphisms()):
                if base.dst(g) != base.src(h):
                    continue
                for f in range(base.n_morphisms()):
                    if base.dst(f) != base.src(g):
                        continue
                    gf, hg = base.comp(g, f), base.comp(h, g)
                    fib_src = self.fibres[base.src(f)]
                    fib_top = self.fibres[base.dst(h)]
                    mf = self.reindex[f]
                    mh = self.reindex[h]
                    for a in range(fib_top.n_objects()):
                        left = fib_src.comp(
                            self.delta[(h, gf)][a],
                            self.delta[(g, f)][mh.obj(a)],
                        )
                        right = fib_src.comp(
                            self.delta[(hg, f)][a],
                            mf.mor(self.delta[(h, g)][a]),
                        )
                        if left != right:
                            raise CoherenceFailure(
                                f"delta associativity fails at ({h},{g},{f},{a})"
                            )
        # unit coherence: δ^{1,f}∘γ_{MfA} = 1 and δ^{f,1}∘Mf(γ_A) = 1
        for f in range(base.n_morphisms()):
            x, y = base.src(f), base.dst(f)
            fib_src = self.fibres[x]
            fib_dst = self.fibres[y]
            mf = self.reindex[f]
            for a in range(fib_dst.n_objects()):
                left = fib_src.comp(
                    self.delta[(f, base.id_of(x))][a],
                    self.gamma[x][mf.obj(a)],
                )
                if left != fib_src.id_of(mf.obj(a)):
                    raise CoherenceFailure(f"unit coherence (id,f) fails at ({f},{a})")
                right = fib_src.comp(
                    self.delta[(base.id_of(y), f)][a],
                    mf.mor(self.gamma[y][a]),
                )
                if right != fib_src.id_of(mf.obj(a)):
                    raise CoherenceFailure(f"unit coherence (f,id) fails at ({f},{a})")


def thin_indexed(base: FinCategory, fibres, reindex) -> IndexedCategory:
    """Build coherence data for thin fibres: δ and γ components are the
    unique arrows with the right endpoints (they must exist and be iso,
    which the audit enforces).  Allows genuinely pseudo instances, e.g.
    M(1_X) an equivalence that is not the identity."""
    delta = {}
    for g, f in base.composable_pairs():
        gf = base.comp(g, f)
        fib_top = fibres[base.dst(g)]
        fib_src = fibres[base.src(f)]
        mf, mg, mgf = reindex[f], reindex[g], reindex[gf]
        comps = []
        for a in range(fib_top.n_objects()):
            hom = fib_src.hom(mf.obj(mg.obj(a)), mgf.obj(a))
            if len(hom) != 1:
                raise CoherenceFailure(
                    f"no unique delta component for pair ({g},{f}) at {a}"
                )
            comps.append(hom[0])
        delta[(g, f)] = tuple(comps)
    gamma = []
    for x in range(base.n_objects()):
        fib = fibres[x]
        m1 = reindex[base.id_of(x)]
        comps = []
        for a in range(fib.n_objects()):
            hom = fib.hom(a, m1.obj(a))
            if len(hom) != 1:
                raise CoherenceFailure(
                    f"no unique gamma component over {x} at {a}"
                )
            comps.append(hom[0])
        gamma.append(tuple(comps))
    return IndexedCategory(base, fibres, reindex, delta, gamma)


def strict_indexed(base: FinCategory, fibres, reindex) -> IndexedCategory:
    """Convenience constructor filling δ and γ with identities; the audit
    then enforces strict functoriality of the reindexing."""
    delta = {}
    for g, f in base.composable_pairs():
        fib_top = fibres[base.dst(g)]
        fib_src = fibres[base.src(f)]
        mf, mg = reindex[f], reindex[g]
        delta[(g, f)] = tuple(
            fib_src.id_of(mf.obj(mg.obj(a))) for a in range(fib_top.n_objects())
        )
    gamma = tuple(
        tuple(fibres[x].id_of(a) for a in range(fibres[x].n_objects()))
        for x in range(base.n_objects())
    )
    return IndexedCategory(base, fibres, reindex, delta, gamma)


@dataclass
class Fibration:
    """A cloven fibration: projection functor plus chosen cartesian lifts.

    ``cleavage[(b_obj, f)]`` is the chosen lift of total object b_obj along
    base morphism f (with the projection of b_obj equal to cod f).  The
    cleavage is normalized: lifts along identities are identities.
    """

    total: FinCategory
    base: FinCategory
    proj: FinFunctor
    cleavage: dict

    def fibre_objects(self, x: int):
        return [a for a in range(self.total.n_objects()) if self.proj.obj(a) == x]

    def is_vertical(self, m: int) -> bool:
        return self.proj.mor(m) == self.base.id_of(self.base.src(self.proj.mor(m)))

    def cart(self, f: int, b_obj: int) -> int:
        try:
            return self.cleavage[(b_obj, f)]
        except KeyError:
            raise ShapeMismatch(
                f"no cleavage entry for object {b_obj} along morphism {f}"
            )

    def reindex_obj(self, f: int, b_obj: int) -> int:
        return self.total.src(self.cart(f, b_obj))

    def reindex_mor(self, f: int, phi: int) -> int:
        """f*(φ) for vertical φ: B→B' over cod f: the unique vertical fill-in."""
        total = self.total
        b, b2 = total.src(phi), total.dst(phi)
        lift_b = self.cart(f, b)
        lift_b2 = self.cart(f, b2)
        theta = total.comp(phi, lift_b)
        candidates = [
            psi
            for psi in total.hom(total.src(lift_b), total.src(lift_b2))
            if self.is_vertical(psi) and total.comp(lift_b2, psi) == theta
        ]
        if len(candidates) != 1:
            raise EngineError(
                f"cartesian factorization not unique ({len(candidates)} found)"
            )
        return candidates[0]

    def factorize(self, theta: int) -> tuple[int, int]:
        """theta = Cart(Pθ, cod θ) ∘ ψ with ψ vertical; uniqueness asserted
        by enumeration."""
        total = self.total
        f = self.proj.mor(theta)
        cart = self.cart(f, total.dst(theta))
        candidates = [
            psi
            for psi in total.hom(total.src(theta), total.src(cart))
            if self.is_vertical(psi) and total.comp(cart, psi) == theta
        ]
        if len(candidates) != 1:
            raise EngineError(
                f"vertical-cartesian factorization not unique "
                f"({len(candidates)} candidates)"
            )
        return candidates[0], cart

    def audit_cleavage(self):
        """Every cleavage arrow projects to its morphism and is cartesian."""
        for (b_obj, f), lift in self.cleavage.items():
            if self.total.dst(lift) != b_obj:
                raise EngineError("cleavage arrow has wrong codomain")
            if self.proj.mor(lift) != f:
                raise EngineError("cleavage arrow lies over the wrong morphism")
            if not is_cartesian(self.proj, lift):
                raise EngineError(
                    f"cleavage arrow for ({b_obj},{f}) is not cartesian"
                )


def grothendieck(m: IndexedCategory, cap: int = TOTAL_MORPHISM_CAP) -> Fibration:
    """Total category of pairs: objects (A,X), morphisms (φ,f) with
    φ: A → (Mf)B; composition threads through δ and identities through γ.
    All cleavage arrows are checked cartesian before returning.

    The universal-property enumerations downstream are exhaustive, so the
    total is kept under a hard morphism cap."""
    base = m.base
    size = 0
    for f in range(base.n_morphisms()):
        mf = m.m(f)
        fib_x = m.fibre(base.src(f))
        for b in range(m.fibre(base.dst(f)).n_objects()):
            target = mf.obj(b)
            size += sum(
                len(fib_x.hom(a, target))
                for a in range(fib_x.n_objects())
            )
    if size > cap:
        raise EnumerationCapExceeded(size, cap)
    objects = []           # (fibre object, base object)
    obj_index = {}
    for x in range(base.n_objects()):
        for a in range(m.fibre(x).n_objects()):
            obj_index[(a, x)] = len(objects)
            objects.append((a, x))
    obj_names = tuple(
        f"({m.fibre(x).objects[a]},{base.objects[x]})" for a, x in objects
    )

    morphs = []
    mor_index = {}
    for f in range(base.n_morphisms()):
        x, y = base.src(f), base.dst(f)
        fib_x = m.fibre(x)
        mf = m.m(f)
        fib_y = m.fibre(y)
        for b in range(fib_y.n_objects()):
            target = mf.obj(b)
            for a in range(fib_x.n_objects()):
                for phi in fib_x.hom(a, target):
                    key = (phi, f, a, b)
                    mor_index[key] = len(morphs)
                    morphs.append(
                        Morph(
                            f"({fib_x.morphisms[phi].name},"
                            f"{base.morphisms[f].name},"
                            f"{fib_y.objects[b]})",
                            obj_index[(a, x)],
                            obj_index[(b, y)],
                        )
                    )

    def composite(key2, key1):
        phi2, g, b, c = key2   # (B,Y) → (C,Z)
        phi1, f, a, b1 = key1  # (A,X) → (B,Y)
        assert b1 == b
        gf = base.comp(g, f)
        fib_x = m.fibre(base.src(f))
        theta = fib_x.comp(
            m.delta[(g, f)][c],
            fib_x.comp(m.m(f).mor(phi2), phi1),
        )
        return (theta, gf, a, c)

    keys = list(mor_index)
    compose = {}
    for k2 in keys:
        for k1 in keys:
            _, g, b2, _ = k2
            _, f, _, b1 = k1
            if base.dst(f) != base.src(g) or b1 != b2:
                continue
            # composable in the total category iff endpoints match
            if morphs[mor_index[k1]].dst != morphs[mor_index[k2]].src:
                continue
            compose[(mor_index[k2], mor_index[k1])] = mor_index[composite(k2, k1)]

    identities = []
    for a, x in objects:
        identities.append(mor_index[(m.gamma[x][a], base.id_of(x), a, a)])

    total = FinCategory(obj_names, morphs, compose, identities)
    proj = FinFunctor(
        total,
        base,
        tuple(x for _, x in objects),
        tuple(key[1] for key in keys),
    )

    cleavage = {}
    for f in range(base.n_morphisms()):
        x, y = base.src(f), base.dst(f)
        for b in range(m.fibre(y).n_objects()):
            b_total = obj_index[(b, y)]
            if f == base.id_of(y):
                cleavage[(b_total, f)] = total.id_of(b_total)
            else:
                target = m.m(f).obj(b)
                lift = mor_index[(m.fibre(x).id_of(target), f, target, b)]
                cleavage[(b_total, f)] = lift

    fib = Fibration(total, base, proj, cleavage)
    fib.audit_cleavage()
    return fib


def indexed_of_fibration(p: Fibration) -> IndexedCategory:
    """Recover a pseudofunctor from a cloven fibration: fibres, reindexing
    along the cleavage, and δ/γ by unique vertical factorization."""
    base = p.base
    total = p.total

    fibre_objs = [p.fibre_objects(x) for x in range(base.n_objects())]
    fibre_cats = []
    vert_index = []  # per base object: {total morphism → local index}
    obj_local = []   # per base object: {total object → local index}
    for x in range(base.n_objects()):
        objs = fibre_objs[x]
        local = {o: i for i, o in enumerate(objs)}
        morphs = []
        mindex = {}
        for mi in range(total.n_morphisms()):
            if (
                total.src(mi) in local
                and total.dst(mi) in local
                and p.proj.mor(mi) == base.id_of(x)
            ):
                mindex[mi] = len(morphs)
                morphs.append(
                    Morph(total.morphisms[mi].name, local[total.src(mi)],
                          local[total.dst(mi)])
                )
        compose = {}
        for g in mindex:
            for f in mindex:
                if total.dst(f) == total.src(g):
                    compose[(mindex[g], mindex[f])] = mindex[total.comp(g, f)]
        identities = tuple(mindex[total.id_of(o)] for o in objs)
        fibre_cats.append(FinCategory(
            tuple(total.objects[o] for o in objs), morphs, compose, identities))
        vert_index.append(mindex)
        obj_local.append(local)

    reindex = []
    for f in range(base.n_morphisms()):
        x, y = base.src(f), base.dst(f)
        obj_map = tuple(
            obj_local[x][p.reindex_obj(f, b)] for b in fibre_objs[y]
        )
        mor_map = []
        for mi, _ in sorted(vert_index[y].items(), key=lambda kv: kv[1]):
            mor_map.append(vert_index[x][p.reindex_mor(f, mi)])
        reindex.append(FinFunctor(fibre_cats[y], fibre_cats[x], obj_map, mor_map))

    delta = {}
    for g, f in base.composable_pairs():
        x = base.src(f)
        comps = []
        for a in fibre_objs[base.dst(g)]:
            # factor Cart(g,A)∘Cart(f,g*A) through Cart(gf,A)
            theta = total.comp(p.cart(g, a), p.cart(f, p.reindex_obj(g, a)))
            psi, _ = p.factorize(theta)
            comps.append(vert_index[x][psi])
        delta[(g, f)] = tuple(comps)

    gamma = []
    for x in range(base.n_objects()):
        comps = []
        for a in fibre_objs[x]:
            # factor 1_A through Cart(1_X, A); normalized cleavage gives γ = id
            psi, _ = p.factorize(total.id_of(a))
            comps.append(vert_index[x][psi])
        gamma.append(tuple(comps))

    return IndexedCategory(base, fibre_cats, reindex, delta, gamma)


def roundtrip_isomorphism(p: Fibration) -> bool:
    """Build grothendieck(indexed_of_fibration(p)) and exhibit an explicit
    invertible fibred functor from p to it."""
    m = indexed_of_fibration(p)
    p2 = grothendieck(m)
    total, total2, base = p.total, p2.total, p.base

    fibre_objs = [p.fibre_objects(x) for x in range(base.n_objects())]
    obj_local = [
        {o: i for i, o in enumerate(objs)} for objs in fibre_objs
    ]

    # object bijection A ↦ (A, PA)
    obj_map = []
    for a in range(total.n_objects()):
        x = p.proj.obj(a)
        name = f"({total.objects[a]},{base.objects[x]})"
        obj_map.append(total2.object_index(name))
    if len(set(obj_map)) != total2.n_objects():
        return False

    # morphism bijection θ ↦ (vertical part, Pθ); the vertical part keeps
    # its total-category name inside the reconstructed fibre
    mor_map = []
    for t in range(total.n_morphisms()):
        f = p.proj.mor(t)
        psi, _ = p.factorize(t)
        name = (
            f"({total.morphisms[psi].name},"
            f"{base.morphisms[f].name},"
            f"{total.objects[total.dst(t)]})"
        )
        mor_map.append(total2.morphism_index(name))
    if len(set(mor_map)) != total2.n_morphisms():
        return False

    functor = FinFunctor(total, total2, obj_map, mor_map)  # audits functoriality
    # projection compatibility
    for a in range(total.n_objects()):
        if p2.proj.obj(functor.obj(a)) != p.proj.obj(a):
            return False
    for t in range(total.n_morphisms()):
        if p2.proj.mor(functor.mor(t)) != p.proj.mor(t):
            return False
    return True
