"""Mates across adjunctions, Beck-Chevalley style checks and
fibred-adjunction certification by enumeration."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import EngineError, MissingFibrewiseAdjoint, ShapeMismatch
from .fincat import FinAdjunction, FinFunctor, NatTrans, is_cartesian
from .indexed import Fibration


def mate_of_square(
    adj1: FinAdjunction,
    adj2: FinAdjunction,
    h: FinFunctor,
    k: FinFunctor,
    m: NatTrans,
) -> NatTrans:
    """The mate ν: hg ⇒ g'k of m: f'h ⇒ kf, via ν = (g'kε)·(g'mg)·(η'hg).

    adj1 is f ⊣ g with f: A→B; adj2 is f' ⊣ g' with f': A'→B';
    h: A→A', k: B→B'.
    """
    a_cat2 = adj2.f.src  # A'
    comps = []
    for b in range(adj1.f.dst.n_objects()):  # objects of B
        gb = adj1.g.obj(b)
        c1 = adj2.unit[h.obj(gb)]                      # η'_{hgb}
        c2 = adj2.g.mor(m.at(gb))                      # g'(m_{gb})
        c3 = adj2.g.mor(k.mor(adj1.counit[b]))         # g'k(ε_b)
        comps.append(a_cat2.comp(c3, a_cat2.comp(c2, c1)))
    return NatTrans(adj1.g.then(h), k.then(adj2.g), comps)


def mate_of_square_back(
    adj1: FinAdjunction,
    adj2: FinAdjunction,
    h: FinFunctor,
    k: FinFunctor,
    nu: NatTrans,
) -> NatTrans:
    """The inverse direction: μ: f'h ⇒ kf from ν: hg ⇒ g'k, via
    μ = (ε'kf)·(f'νf)·(f'hη)."""
    b_cat2 = adj2.f.dst  # B'
    comps = []
    for a in range(adj1.f.src.n_objects()):  # objects of A
        fa = adj1.f.obj(a)
        c1 = adj2.f.mor(h.mor(adj1.unit[a]))           # f'h(η_a)
        c2 = adj2.f.mor(nu.at(fa))                     # f'(ν_{fa})
        c3 = adj2.counit[k.obj(fa)]                    # ε'_{kfa}
        comps.append(b_cat2.comp(c3, b_cat2.comp(c2, c1)))
    return NatTrans(h.then(adj2.f), adj1.f.then(k), comps)


def is_map_of_adjunctions(
    adj1: FinAdjunction, adj2: FinAdjunction, h: FinFunctor, k: FinFunctor
) -> tuple[bool, bool]:
    """(hη = η'h, kε = ε'k); the two conditions are equivalent when the
    squares commute, and both are returned so tests can check the
    biconditional on enumerated data."""
    unit_ok = all(
        h.mor(adj1.unit[a]) == adj2.unit[h.obj(a)]
        for a in range(adj1.f.src.n_objects())
    )
    counit_ok = all(
        k.mor(adj1.counit[b]) == adj2.counit[k.obj(b)]
        for b in range(adj1.f.dst.n_objects())
    )
    return unit_ok, counit_ok


@dataclass
class FibrewiseAdjunction:
    """L_X ⊣ S_X for one fibre, expressed inside the total categories.

    ``left_obj``/``left_mor`` give L_X on the fibre of the P-total over X
    (total-category object and morphism indices); units live in the P-total
    (A → S L A) and counits in the Q-total (L S B → B), all vertical.
    """

    left_obj: dict
    left_mor: dict
    unit: dict
    counit: dict


@dataclass
class FibredAdjunctionReport:
    chi_invertible: dict = field(default_factory=dict)
    omega_invertible: dict = field(default_factory=dict)
    hom_bijection_ok: bool | None = None
    right_adjoint_preserves_cartesian: bool | None = None
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            all(self.chi_invertible.values())
            and all(self.omega_invertible.values())
            and self.hom_bijection_ok in (True, None)
            and self.right_adjoint_preserves_cartesian in (True, None)
            and not self.mismatches
        )

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "chi_invertible": {str(k): v for k, v in self.chi_invertible.items()},
            "omega_invertible": {str(k): v for k, v in self.omega_invertible.items()},
            "hom_bijection_ok": self.hom_bijection_ok,
            "right_adjoint_preserves_cartesian":
                self.right_adjoint_preserves_cartesian,
            "mismatches": self.mismatches,
        }


def thin_total_functor(src_fib: Fibration, dst_fib: Fibration, obj_map):
    """A functor between Grothendieck totals determined by its object map,
    when the target is thin over its base (at most one morphism per
    (src, dst, base arrow))."""
    total_s, total_d = src_fib.total, dst_fib.total
    mor_map = []
    for m in range(total_s.n_morphisms()):
        f = src_fib.proj.mor(m)
        cands = [
            m2 for m2 in total_d.hom(obj_map[total_s.src(m)],
                                     obj_map[total_s.dst(m)])
            if dst_fib.proj.mor(m2) == f
        ]
        if len(cands) != 1:
            raise EngineError(
                "object map does not determine a functor: target total is "
                "not thin over its base"
            )
        mor_map.append(cands[0])
    return FinFunctor(total_s, total_d, tuple(obj_map), tuple(mor_map))


def thin_fibrewise_adjunctions(
    p: Fibration, q: Fibration, s: FinFunctor, left_obj: dict
) -> dict[int, FibrewiseAdjunction]:
    """Package fibrewise L ⊣ S data from object assignments alone, for
    totals that are thin inside each fibre: morphism actions, units and
    counits are the unique vertical fill-ins (posetal Galois pairs)."""
    total_p, total_q = p.total, q.total

    def unique_vertical(fib, total, a, b):
        cands = [m for m in total.hom(a, b) if fib.is_vertical(m)]
        if len(cands) != 1:
            raise EngineError(
                f"no unique vertical arrow {total.objects[a]} → "
                f"{total.objects[b]}; the fibrewise data is not an adjunction"
            )
        return cands[0]

    out = {}
    for x in range(p.base.n_objects()):
        objs = p.fibre_objects(x)
        lx = {a: left_obj[a] for a in objs}
        left_mor = {}
        for m in range(total_p.n_morphisms()):
            if not p.is_vertical(m) or p.proj.obj(total_p.src(m)) != x:
                continue
            left_mor[m] = unique_vertical(
                q, total_q, lx[total_p.src(m)], lx[total_p.dst(m)]
            )
        unit = {
            a: unique_vertical(p, total_p, a, s.obj(lx[a])) for a in objs
        }
        counit = {
            b: unique_vertical(q, total_q, lx[s.obj(b)], b)
            for b in q.fibre_objects(x)
        }
        out[x] = FibrewiseAdjunction(lx, left_mor, unit, counit)
    return out


def _canonical_tau(p: Fibration, q: Fibration, s: FinFunctor, f: int, b_obj: int):
    """τ_B: f*(S B) → S(f* B), the unique vertical comparison through which
    S(Cart_Q(f,B)) factors; returned with its inverse (it must be iso)."""
    total_p = p.total
    image_lift = s.mor(q.cart(f, b_obj))
    # factor through Cart_P(f, S B)
    cart = p.cart(f, s.obj(b_obj))
    src = total_p.src(image_lift)
    inv = [
        psi for psi in total_p.hom(src, total_p.src(cart))
        if p.is_vertical(psi) and total_p.comp(cart, psi) == image_lift
    ]
    if len(inv) != 1:
        raise EngineError("canonical comparison does not factor uniquely")
    v = inv[0]  # S(f*B) → f*(S B)
    tau = [
        psi for psi in total_p.hom(total_p.src(cart), src)
        if p.is_vertical(psi)
        and total_p.comp(v, psi) == total_p.id_of(total_p.src(cart))
        and total_p.comp(psi, v) == total_p.id_of(src)
    ]
    if len(tau) != 1:
        raise EngineError("canonical comparison is not invertible")
    return tau[0], v


def check_fibred_adjunction(
    p: Fibration,
    q: Fibration,
    s: FinFunctor,
    fibrewise: dict[int, FibrewiseAdjunction],
) -> FibredAdjunctionReport:
    """Certify that the fibrewise left adjoints of the fibred functor
    S: q → p glue to a fibred left adjoint.

    Computes the Beck-Chevalley mates χ_A: L_X f*A → f* L_Y A for every
    base morphism f and object A over cod f, reports their invertibility,
    verifies the total hom-set bijection Hom(L A, B) ≅ Hom(A, S B) by
    enumeration, and asserts that the right adjoint S preserves cartesian
    arrows.
    """
    if s.src != q.total or s.dst != p.total:
        raise ShapeMismatch("S must map the Q-total to the P-total")
    base = p.base
    for x in range(base.n_objects()):
        if x not in fibrewise:
            raise MissingFibrewiseAdjoint(f"no adjunction for fibre over {x}")
    report = FibredAdjunctionReport()
    total_p, total_q = p.total, q.total

    def left_of(a_obj):
        x = p.proj.obj(a_obj)
        return fibrewise[x].left_obj[a_obj]

    # χ mates per (f, A over cod f)
    for f in range(base.n_morphisms()):
        x, y = base.src(f), base.dst(f)
        fw_x, fw_y = fibrewise[x], fibrewise[y]
        all_iso = True
        for a_obj in p.fibre_objects(y):
            la = fw_y.left_obj[a_obj]
            # step 1: f*^P(η_A): f*A → f*(S L A)
            eta = fw_y.unit[a_obj]
            step1 = p.reindex_mor(f, eta)
            # step 2: L_X(τ_{L A}): L f*(S L A) → L S f*^Q(L A)
            tau, _ = _canonical_tau(p, q, s, f, la)
            step2 = fw_x.left_mor[total_p.comp(tau, step1)]
            # step 3: ε at f*^Q(L A)
            eps = fw_x.counit[q.reindex_obj(f, la)]
            chi = total_q.comp(eps, step2)
            if not total_q.is_iso(chi):
                all_iso = False
                report.mismatches.append(
                    ("chi_not_iso", base.morphisms[f].name,
                     total_p.objects[a_obj])
                )
        report.chi_invertible[base.morphisms[f].name] = all_iso

    # total hom-set bijection by enumeration
    ok = True
    for a_obj in range(total_p.n_objects()):
        xa = p.proj.obj(a_obj)
        la = left_of(a_obj)
        for b_obj in range(total_q.n_objects()):
            lhs = [
                u for u in range(total_q.n_morphisms())
                if total_q.src(u) == la and total_q.dst(u) == b_obj
            ]
            rhs = [
                v for v in range(total_p.n_morphisms())
                if total_p.src(v) == a_obj and total_p.dst(v) == s.obj(b_obj)
            ]
            transposed = {
                total_p.comp(s.mor(u), fibrewise[xa].unit[a_obj]) for u in lhs
            }
            if len(transposed) != len(lhs) or transposed != set(rhs):
                ok = False
                report.mismatches.append(
                    ("hom_bijection", total_p.objects[a_obj],
                     total_q.objects[b_obj], len(lhs), len(rhs))
                )
    report.hom_bijection_ok = ok

    # right adjoints preserve cartesian arrows
    preserved = True
    for mq in range(total_q.n_morphisms()):
        if is_cartesian(q.proj, mq) and not is_cartesian(p.proj, s.mor(mq)):
            preserved = False
            report.mismatches.append(
                ("cartesian_not_preserved", total_q.morphisms[mq].name)
            )
    report.right_adjoint_preserves_cartesian = preserved
    return report


def check_opfibred_right_adjoints(
    p: Fibration,
    q: Fibration,
    s: FinFunctor,
    fibrewise_right: dict[int, FibrewiseAdjunction],
) -> FibredAdjunctionReport:
    """ω-direction: fibrewise right adjoints S_X ⊣ R_X of a fibred S: q→p,
    with mates ω_B: f*(R B) → R(f* B) required invertible.

    ``fibrewise_right`` reuses the FibrewiseAdjunction container with
    ``left_*`` holding R, ``unit`` per Q-total object (B → R S B, vertical
    in the Q-total) and ``counit`` per P-total object (S R A → A)."""
    if s.src != q.total or s.dst != p.total:
        raise ShapeMismatch("S must map the Q-total to the P-total")
    base = p.base
    for x in range(base.n_objects()):
        if x not in fibrewise_right:
            raise MissingFibrewiseAdjoint(f"no adjunction for fibre over {x}")
    report = FibredAdjunctionReport()
    total_p, total_q = p.total, q.total
    for f in range(base.n_morphisms()):
        x, y = base.src(f), base.dst(f)
        fw_x, fw_y = fibrewise_right[x], fibrewise_right[y]
        all_iso = True
        for a_obj in p.fibre_objects(y):
            ra = fw_y.left_obj[a_obj]
            # ω_A: f*^Q(R A) --η--> R S f*^Q(R A) --R τ^{-1}--> R f*^P(S R A)
            #      --R f*(ε_A)--> R f*^P A
            fra = q.reindex_obj(f, ra)
            step1 = fw_x.unit[fra]
            _, tau_inv = _canonical_tau(p, q, s, f, ra)
            step2 = fw_x.left_mor[
                total_p.comp(p.reindex_mor(f, fw_y.counit[a_obj]), tau_inv)
            ]
            omega = total_q.comp(step2, step1)
            if not total_q.is_iso(omega):
                all_iso = False
                report.mismatches.append(
                    ("omega_not_iso", base.morphisms[f].name,
                     total_p.objects[a_obj])
                )
        report.omega_invertible[base.morphisms[f].name] = all_iso
    return report
