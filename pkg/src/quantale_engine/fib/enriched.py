"""Enriched-(op)fibration audit over exported finite tables.

The audit consumes a packaged instance (total/base categories of both
fibrations, partial tensor tables, enrichment hom tables, designated
composition/identity arrows and a chosen cleavage) and checks the four
defining clauses:

  (i)   the candidate monoidal (op)fibration is strictly monoidal,
  (ii)  the enriched-hom square commutes, as table equality,
  (iii) composition and identities of the two enrichments are compatible,
  (iv)  the tensor preserves the chosen (co)cartesian liftings.

Clause (iii) is evaluated against projected totals, never against the
hom table of the base enrichment, so single-table corruptions flag
exactly the clause that owns the corrupted table.

`export_enriched_instance` packages the engine's own module/comodule
enrichment over a quantale as such an instance (finite fragments over a
universe of carrier sets; tensors and homs leaving the universe stay
undefined and are reported as skipped coverage).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

from ..base import Quantale
from ..enrichment import all_cocategories, sweedler_hom
from ..errors import EngineError
from ..modcomod import VModule, check_comodule, check_module, measuring_comodule
from ..structures import VCategory, VGraph, check_category, check_cofunctor, \
    check_functor
from ..vmat import FinFn, FinSet, FnSpace, VMat, fin_set
from .fincat import FinCategory, FinFunctor, Morph, is_cocartesian
from ..reporting import Certificate, PASS, failure


@dataclass
class EnrichedFibrationData:
    """Finite tables for one enriched-(op)fibration instance.

    Tensor and hom tables are partial: pairs outside the exported fragment
    are simply absent and counted as skipped."""

    v_total: FinCategory
    v_base: FinCategory
    t_proj: FinFunctor
    tensor_total_obj: dict
    tensor_total_mor: dict
    tensor_base_obj: dict
    tensor_base_mor: dict
    unit_total: int
    unit_base: int
    a_total: FinCategory
    x_base: FinCategory
    p_proj: FinFunctor
    hom_total: dict
    hom_base: dict
    comp_total: dict
    id_total: dict
    cleavage: dict

    def clone(self) -> "EnrichedFibrationData":
        return replace(
            self,
            tensor_total_obj=dict(self.tensor_total_obj),
            tensor_total_mor=dict(self.tensor_total_mor),
            tensor_base_obj=dict(self.tensor_base_obj),
            tensor_base_mor=dict(self.tensor_base_mor),
            hom_total=dict(self.hom_total),
            hom_base=dict(self.hom_base),
            comp_total=dict(self.comp_total),
            id_total=dict(self.id_total),
            cleavage=dict(self.cleavage),
        )


@dataclass
class EnrichedFibrationReport:
    clauses: dict = field(default_factory=dict)
    coverage: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.clauses.values())

    def failed_clauses(self):
        return sorted(k for k, c in self.clauses.items() if not c.ok)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "clauses": {k: c.to_dict() for k, c in sorted(self.clauses.items())},
            "coverage": dict(sorted(self.coverage.items())),
        }


def _check_strict_monoidality(d: EnrichedFibrationData, cov: dict) -> Certificate:
    vt, vb, t = d.v_total, d.v_base, d.t_proj
    if t.obj(d.unit_total) != d.unit_base:
        return failure("unit_not_preserved", (d.unit_total,))
    checked = 0
    for (x, y), xy in d.tensor_total_obj.items():
        px, py = t.obj(x), t.obj(y)
        if (px, py) not in d.tensor_base_obj:
            return failure("base_tensor_undefined_under_projection", (x, y))
        if t.obj(xy) != d.tensor_base_obj[(px, py)]:
            return failure("tensor_square", (x, y))
        checked += 1
    cov["tensor_pairs_total"] = checked
    for table, cat, tag in (
        (d.tensor_total_mor, vt, "total"),
        (d.tensor_base_mor, vb, "base"),
    ):
        obj_table = d.tensor_total_obj if tag == "total" else d.tensor_base_obj
        for (mname, nname), mn in table.items():
            m, n = mname, nname
            src_pair = (cat.src(m), cat.src(n))
            dst_pair = (cat.dst(m), cat.dst(n))
            if src_pair not in obj_table or dst_pair not in obj_table:
                return failure(f"{tag}_tensor_mor_outside_fragment", (m, n))
            if cat.src(mn) != obj_table[src_pair] or cat.dst(mn) != obj_table[dst_pair]:
                return failure(f"{tag}_tensor_mor_endpoints", (m, n))
    # projection compatibility on tensored morphisms
    for (m, n), mn in d.tensor_total_mor.items():
        key = (t.mor(m), t.mor(n))
        if key not in d.tensor_base_mor or t.mor(mn) != d.tensor_base_mor[key]:
            return failure("tensor_mor_square", (m, n))
    # identities tensor to identities
    for (x, y), xy in d.tensor_total_obj.items():
        key = (d.v_total.id_of(x), d.v_total.id_of(y))
        if key in d.tensor_total_mor and d.tensor_total_mor[key] != d.v_total.id_of(xy):
            return failure("tensor_of_identities", (x, y))
    # strict associativity and unit laws on objects, where defined
    assoc_checked = 0
    for (obj_table, tag) in ((d.tensor_total_obj, "total"), (d.tensor_base_obj, "base")):
        objs = {z for pair in obj_table for z in pair} | set(obj_table.values())
        for x, y, z in itertools.product(sorted(objs), repeat=3):
            if (x, y) in obj_table and (obj_table[(x, y)], z) in obj_table \
                    and (y, z) in obj_table and (x, obj_table[(y, z)]) in obj_table:
                left = obj_table[(obj_table[(x, y)], z)]
                right = obj_table[(x, obj_table[(y, z)])]
                if left != right:
                    return failure(f"{tag}_tensor_associativity", (x, y, z))
                assoc_checked += 1
        unit = d.unit_total if tag == "total" else d.unit_base
        for x in sorted(objs):
            if (unit, x) in obj_table and obj_table[(unit, x)] != x:
                return failure(f"{tag}_left_unit", (x,))
            if (x, unit) in obj_table and obj_table[(x, unit)] != x:
                return failure(f"{tag}_right_unit", (x,))
    cov["associativity_triples"] = assoc_checked
    return PASS


def _check_hom_square(d: EnrichedFibrationData, cov: dict) -> Certificate:
    checked = 0
    for (a, b), hom_obj in d.hom_total.items():
        pa, pb = d.p_proj.obj(a), d.p_proj.obj(b)
        if (pa, pb) not in d.hom_base:
            return failure("hom_base_undefined", (a, b))
        if d.t_proj.obj(hom_obj) != d.hom_base[(pa, pb)]:
            return failure("hom_square", (a, b))
        checked += 1
    cov["hom_pairs"] = checked
    return PASS


def _check_composition_identities(d: EnrichedFibrationData, cov: dict) -> Certificate:
    vt, vb = d.v_total, d.v_base
    checked = 0
    for (a, b, c), mm in d.comp_total.items():
        if (b, c) not in d.hom_total or (a, b) not in d.hom_total \
                or (a, c) not in d.hom_total:
            return failure("comp_hom_undefined", (a, b, c))
        hbc, hab, hac = d.hom_total[(b, c)], d.hom_total[(a, b)], d.hom_total[(a, c)]
        if (hbc, hab) not in d.tensor_total_obj:
            return failure("comp_tensor_undefined", (a, b, c))
        dom = d.tensor_total_obj[(hbc, hab)]
        if vt.src(mm) != dom or vt.dst(mm) != hac:
            return failure("comp_total_endpoints", (a, b, c))
        # compatibility: the projected arrow is the base composition arrow,
        # whose endpoints are the projected totals
        bb = d.t_proj.mor(mm)
        pbc, pab, pac = d.t_proj.obj(hbc), d.t_proj.obj(hab), d.t_proj.obj(hac)
        if (pbc, pab) not in d.tensor_base_obj:
            return failure("comp_base_tensor_undefined", (a, b, c))
        if vb.src(bb) != d.tensor_base_obj[(pbc, pab)] or vb.dst(bb) != pac:
            return failure("comp_projection", (a, b, c))
        checked += 1
    cov["composition_triples"] = checked
    for a, jj in d.id_total.items():
        if (a, a) not in d.hom_total:
            return failure("id_hom_undefined", (a,))
        haa = d.hom_total[(a, a)]
        if vt.src(jj) != d.unit_total or vt.dst(jj) != haa:
            return failure("id_total_endpoints", (a,))
        bj = d.t_proj.mor(jj)
        if vb.src(bj) != d.unit_base or vb.dst(bj) != d.t_proj.obj(haa):
            return failure("id_projection", (a,))
    cov["identity_objects"] = len(d.id_total)
    return PASS


def _check_tensor_cocartesian(d: EnrichedFibrationData, cov: dict) -> Certificate:
    vt = d.v_total
    lifts = list(d.cleavage.items())
    for (obj, f), lam in lifts:
        if vt.src(lam) != obj or d.t_proj.mor(lam) != f:
            return failure("cleavage_entry_malformed", (obj, f))
        if not is_cocartesian(d.t_proj, lam):
            return failure("cleavage_not_cocartesian", (obj, f))
    checked = 0
    probes = [lam for (_, lam) in lifts] + [
        vt.id_of(x) for x in range(vt.n_objects())
    ]
    for (_, lam) in lifts:
        for probe in probes:
            key = (lam, probe)
            if key in d.tensor_total_mor:
                if not is_cocartesian(d.t_proj, d.tensor_total_mor[key]):
                    return failure("tensor_breaks_cocartesian", key)
                checked += 1
            key = (probe, lam)
            if key in d.tensor_total_mor:
                if not is_cocartesian(d.t_proj, d.tensor_total_mor[key]):
                    return failure("tensor_breaks_cocartesian", key)
                checked += 1
    cov["cocartesian_tensor_checks"] = checked
    return PASS


def check_enriched_fibration(d: EnrichedFibrationData) -> EnrichedFibrationReport:
    report = EnrichedFibrationReport()
    report.clauses["i_strict_monoidality"] = _check_strict_monoidality(
        d, report.coverage
    )
    report.clauses["ii_hom_square"] = _check_hom_square(d, report.coverage)
    report.clauses["iii_composition_identities"] = _check_composition_identities(
        d, report.coverage
    )
    report.clauses["iv_tensor_cocartesian"] = _check_tensor_cocartesian(
        d, report.coverage
    )
    return report


# -- exporter ---------------------------------------------------------------


def _all_categories(q: Quantale, xs: FinSet):
    for entries in itertools.product(
        itertools.product(range(q.n), repeat=xs.size), repeat=xs.size
    ):
        g = VGraph(VMat(q, xs, xs, entries))
        if check_category(g).ok:
            yield VCategory(g)


def _all_module_columns(q: Quantale, cat: VCategory):
    for col in itertools.product(range(q.n), repeat=cat.objects.size):
        if check_module(cat, col).ok:
            yield col


def _all_comodule_columns(q: Quantale, cocat: VCocategory):
    for col in itertools.product(range(q.n), repeat=cocat.objects.size):
        if check_comodule(cocat, col).ok:
            yield col


class _FragmentBuilder:
    """Accumulates a finite category whose arrows carry function tables."""

    def __init__(self, obj_names):
        self.obj_names = list(obj_names)
        self.morphs = []
        self.index = {}  # (src, dst, table) -> morphism index

    def add(self, src, dst, table):
        key = (src, dst, tuple(table))
        if key not in self.index:
            self.index[key] = len(self.morphs)
            self.morphs.append(
                Morph(
                    f"[{','.join(map(str, table))}]:"
                    f"{self.obj_names[src]}->{self.obj_names[dst]}",
                    src,
                    dst,
                )
            )
        return self.index[key]

    def build(self, identity_tables) -> FinCategory:
        compose = {}
        by_index = {v: k for k, v in self.index.items()}
        for gi in range(len(self.morphs)):
            gsrc, gdst, gtab = by_index[gi]
            for fi in range(len(self.morphs)):
                fsrc, fdst, ftab = by_index[fi]
                if fdst != gsrc:
                    continue
                comp_tab = tuple(gtab[v] for v in ftab)
                key = (fsrc, gdst, comp_tab)
                if key not in self.index:
                    raise EngineError("fragment category is not closed")
                compose[(gi, fi)] = self.index[key]
        identities = tuple(
            self.index[(x, x, tuple(identity_tables[x]))]
            for x in range(len(self.obj_names))
        )
        return FinCategory(self.obj_names, self.morphs, compose, identities)


def export_enriched_instance(q: Quantale, sizes=(1,)) -> EnrichedFibrationData:
    """Package the module/comodule enrichment over ``q`` as finite tables.

    The universe contains one carrier set per requested size.  With
    sizes=(1,) this is the one-object picture: modules over monoid
    elements enriched in comodules over comonoid elements.
    """
    sizes = tuple(sorted(set(sizes)))
    if 1 not in sizes:
        raise ValueError("the singleton carrier must be in the universe")
    universe = {s: fin_set(tuple(f"u{i}" for i in range(s))) for s in sizes}

    def set_tensor(s1: int, s2: int):
        return s1 * s2 if s1 * s2 in universe else None

    # ---- base categories of the two fibrations -------------------------
    cocats = []  # (VCocategory, size)
    for s in sizes:
        for c in all_cocategories(q, universe[s]):
            cocats.append((c, s))
    cocat_index = {
        (s, tuple(c.carrier.entry(i, i) for i in range(s))): k
        for k, (c, s) in enumerate(cocats)
    }
    cocat_names = [
        f"Co{s}[{','.join(q.name(c.carrier.entry(i, i)) for i in range(s))}]"
        for c, s in cocats
    ]

    cats = []
    for s in sizes:
        for a in _all_categories(q, universe[s]):
            cats.append((a, s))
    cat_names = [
        "Cat%d[%s]" % (
            s,
            "|".join(
                ",".join(q.name(v) for v in row) for row in a.carrier.entries
            ),
        )
        for a, s in cats
    ]

    comods = []  # (column, cocat_idx)
    for ci, (c, s) in enumerate(cocats):
        for col in _all_comodule_columns(q, c):
            comods.append((col, ci))
    comod_index = {(col, ci): k for k, (col, ci) in enumerate(comods)}
    comod_names = [
        f"{cocat_names[ci]}|{','.join(q.name(v) for v in col)}"
        for col, ci in comods
    ]

    mods = []
    for ai, (a, s) in enumerate(cats):
        for col in _all_module_columns(q, a):
            mods.append((col, ai))
    mod_names = [
        f"{cat_names[ai]}//{','.join(q.name(v) for v in col)}"
        for col, ai in mods
    ]

    # ---- arrows ----------------------------------------------------------
    vb_builder = _FragmentBuilder(cocat_names)
    for si, (csrc, s1) in enumerate(cocats):
        for di, (cdst, s2) in enumerate(cocats):
            for table in itertools.product(range(s2), repeat=s1):
                f = FinFn(universe[s1], universe[s2], table)
                if check_cofunctor(csrc, cdst, f).ok:
                    vb_builder.add(si, di, table)
    v_base = vb_builder.build([tuple(range(s)) for _, s in cocats])

    vt_builder = _FragmentBuilder(comod_names)
    for si, (col1, ci1) in enumerate(comods):
        c1, s1 = cocats[ci1]
        for di, (col2, ci2) in enumerate(comods):
            c2, s2 = cocats[ci2]
            for table in itertools.product(range(s2), repeat=s1):
                f = FinFn(universe[s1], universe[s2], table)
                if not check_cofunctor(c1, c2, f).ok:
                    continue
                if all(q.leq(col1[x], col2[table[x]]) for x in range(s1)):
                    vt_builder.add(si, di, table)
    v_total = vt_builder.build([tuple(range(len(comods[k][0]))) for k in range(len(comods))])

    xb_builder = _FragmentBuilder(cat_names)
    for si, (a1, s1) in enumerate(cats):
        for di, (a2, s2) in enumerate(cats):
            for table in itertools.product(range(s2), repeat=s1):
                f = FinFn(universe[s1], universe[s2], table)
                if check_functor(a1, a2, f).ok:
                    xb_builder.add(si, di, table)
    x_base = xb_builder.build([tuple(range(s)) for _, s in cats])

    at_builder = _FragmentBuilder(mod_names)
    for si, (col1, ai1) in enumerate(mods):
        a1, s1 = cats[ai1]
        for di, (col2, ai2) in enumerate(mods):
            a2, s2 = cats[ai2]
            for table in itertools.product(range(s2), repeat=s1):
                f = FinFn(universe[s1], universe[s2], table)
                if not check_functor(a1, a2, f).ok:
                    continue
                if all(q.leq(col1[x], col2[table[x]]) for x in range(s1)):
                    at_builder.add(si, di, table)
    a_total = at_builder.build([tuple(range(len(mods[k][0]))) for k in range(len(mods))])

    # ---- projections ------------------------------------------------------
    def functor_from_builders(src_cat, dst_cat, src_builder, dst_builder, obj_proj):
        by_index = {v: k for k, v in src_builder.index.items()}
        mor_map = []
        for mi in range(src_cat.n_morphisms()):
            s, dgt, table = by_index[mi]
            mor_map.append(dst_builder.index[(obj_proj[s], obj_proj[dgt], table)])
        return FinFunctor(src_cat, dst_cat, tuple(obj_proj), tuple(mor_map))

    t_proj = functor_from_builders(
        v_total, v_base, vt_builder, vb_builder, [ci for _, ci in comods]
    )
    p_proj = functor_from_builders(
        a_total, x_base, at_builder, xb_builder, [ai for _, ai in mods]
    )

    # ---- tensors ----------------------------------------------------------
    tensor_base_obj = {}
    for i1, (c1, s1) in enumerate(cocats):
        for i2, (c2, s2) in enumerate(cocats):
            st = set_tensor(s1, s2)
            if st is None:
                continue
            diag = tuple(
                q.tensor(c1.carrier.entry(x, x), c2.carrier.entry(y, y))
                for x in range(s1)
                for y in range(s2)
            )
            tensor_base_obj[(i1, i2)] = cocat_index[(st, diag)]

    tensor_total_obj = {}
    for k1, (col1, ci1) in enumerate(comods):
        for k2, (col2, ci2) in enumerate(comods):
            if (ci1, ci2) not in tensor_base_obj:
                continue
            col = tuple(
                q.tensor(v1, v2) for v1 in col1 for v2 in col2
            )
            tensor_total_obj[(k1, k2)] = comod_index[
                (col, tensor_base_obj[(ci1, ci2)])
            ]

    def tensor_mor_table(builder, cat, obj_tensor, sizes_of):
        by_index = {v: k for k, v in builder.index.items()}
        table = {}
        for m1 in range(cat.n_morphisms()):
            s1, d1, t1 = by_index[m1]
            for m2 in range(cat.n_morphisms()):
                s2, d2, t2 = by_index[m2]
                if (s1, s2) not in obj_tensor or (d1, d2) not in obj_tensor:
                    continue
                n1, n2 = sizes_of[s2], sizes_of[d2]
                tt = tuple(
                    t1[x] * n2 + t2[y]
                    for x in range(sizes_of[s1])
                    for y in range(n1)
                )
                table[(m1, m2)] = builder.index[
                    (obj_tensor[(s1, s2)], obj_tensor[(d1, d2)], tt)
                ]
        return table

    cocat_sizes = [s for _, s in cocats]
    comod_sizes = [len(col) for col, _ in comods]
    tensor_base_mor = tensor_mor_table(vb_builder, v_base, tensor_base_obj, cocat_sizes)
    tensor_total_mor = tensor_mor_table(vt_builder, v_total, tensor_total_obj, comod_sizes)

    unit_base = cocat_index[(1, (q.unit,))]
    unit_total = comod_index[((q.unit,), unit_base)]

    # ---- enrichment hom tables ---------------------------------------------
    hom_base = {}
    hom_total = {}
    t_cache = {}
    for k1, (col1, ai1) in enumerate(mods):
        a1, s1 = cats[ai1]
        for k2, (col2, ai2) in enumerate(mods):
            a2, s2 = cats[ai2]
            if s2 ** s1 not in universe:
                continue
            if (ai1, ai2) not in t_cache:
                t = sweedler_hom(a1, a2)
                diag = tuple(
                    t.carrier.entry(i, i) for i in range(t.space.set.size)
                )
                t_cache[(ai1, ai2)] = (t, cocat_index[(s2 ** s1, diag)])
            t, tbase_idx = t_cache[(ai1, ai2)]
            hom_base[(ai1, ai2)] = tbase_idx
            psi = VModule(a1, col1)
            xi = VModule(a2, col2)
            phi, _ = measuring_comodule(psi, xi)
            hom_total[(k1, k2)] = comod_index[(phi.carrier, tbase_idx)]

    # ---- designated composition and identity arrows -------------------------
    comp_total = {}
    for k1 in range(len(mods)):
        for k2 in range(len(mods)):
            for k3 in range(len(mods)):
                if (k2, k3) not in hom_total or (k1, k2) not in hom_total \
                        or (k1, k3) not in hom_total:
                    continue
                hbc, hab = hom_total[(k2, k3)], hom_total[(k1, k2)]
                hac = hom_total[(k1, k3)]
                if (hbc, hab) not in tensor_total_obj:
                    continue
                dom = tensor_total_obj[(hbc, hab)]
                sa = len(mods[k1][0])
                sb = len(mods[k2][0])
                sc = len(mods[k3][0])
                gspace = FnSpace(universe[sb], universe[sc])
                fspace = FnSpace(universe[sa], universe[sb])
                cspace = FnSpace(universe[sa], universe[sc])
                table = tuple(
                    cspace.index_of(
                        tuple(gspace.graphs[g][fspace.graphs[f][x]]
                              for x in range(sa))
                    )
                    for g in range(gspace.set.size)
                    for f in range(fspace.set.size)
                )
                comp_total[(k1, k2, k3)] = vt_builder.index[(dom, hac, table)]

    id_total = {}
    for k in range(len(mods)):
        if (k, k) not in hom_total:
            continue
        sa = len(mods[k][0])
        space = FnSpace(universe[sa], universe[sa])
        idx = space.index_of(tuple(range(sa)))
        id_total[k] = vt_builder.index[(unit_total, hom_total[(k, k)], (idx,))]

    # ---- cleavage of the comodule opfibration -------------------------------
    cleavage = {}
    vb_by_index = {v: k for k, v in vb_builder.index.items()}
    for k, (col, ci) in enumerate(comods):
        c, s = cocats[ci]
        for fmor in range(v_base.n_morphisms()):
            fsrc, fdst, table = vb_by_index[fmor]
            if fsrc != ci:
                continue
            c2, s2 = cocats[fdst]
            pushed = tuple(
                q.join_all(col[x] for x in range(s) if table[x] == y)
                for y in range(s2)
            )
            cleavage[(k, fmor)] = vt_builder.index[
                (k, comod_index[(pushed, fdst)], tuple(table))
            ]

    return EnrichedFibrationData(
        v_total=v_total,
        v_base=v_base,
        t_proj=t_proj,
        tensor_total_obj=tensor_total_obj,
        tensor_total_mor=tensor_total_mor,
        tensor_base_obj=tensor_base_obj,
        tensor_base_mor=tensor_base_mor,
        unit_total=unit_total,
        unit_base=unit_base,
        a_total=a_total,
        x_base=x_base,
        p_proj=p_proj,
        hom_total=hom_total,
        hom_base=hom_base,
        comp_total=comp_total,
        id_total=id_total,
        cleavage=cleavage,
    )
