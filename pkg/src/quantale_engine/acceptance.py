"""Acceptance harness: eight oracle- and property-based criteria, each
with a hard wall-clock budget, runnable standalone or under pytest.

Every criterion re-derives its expected values through an independent
oracle (plain loops over raw tables) rather than trusting the code path
it certifies.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass

from .base import Quantale, boolean, tropical
from .enrichment import (
    sweedler_hom,
    verify_measuring_bijection,
    verify_sweedler_adjunction,
)
from .fib import (
    check_enriched_fibration,
    export_enriched_instance,
    grothendieck,
    is_cartesian,
    mate_of_square,
    mate_of_square_back,
    monotone_maps,
    poset_adjunctions,
    roundtrip_isomorphism,
)
from .fib.fincat import NatTrans, chain
from .linalg import (
    Measuring,
    all_algebras_f2,
    certify_universal_measuring,
    dual_coalgebra,
    ground_algebra,
    trivial_coalgebra,
    verify_measuring,
)
from .modcomod import VModule, check_comodule, check_module, measuring_comodule
from .randgen import (
    all_preorders,
    preorder_category,
    random_bool_graph,
    random_indexed,
    random_tropical_graph,
    random_tropical_metric,
)
from .structures import VGraph, free_category
from .vmat import VMat, fin_set


@dataclass
class CriterionResult:
    number: int
    name: str
    ok: bool
    seconds: float
    budget: float
    detail: str = ""

    @property
    def within_budget(self) -> bool:
        return self.seconds < self.budget

    def line(self) -> str:
        status = "PASS" if (self.ok and self.within_budget) else "FAIL"
        return (f"[{status}] criterion {self.number}: {self.name} "
                f"({self.seconds:.2f}s / budget {self.budget:.0f}s)"
                + (f" — {self.detail}" if self.detail else ""))


def _timed(number, name, budget, fn, seed) -> CriterionResult:
    start = time.perf_counter()
    ok, detail = fn(random.Random(seed))
    elapsed = time.perf_counter() - start
    return CriterionResult(number, name, ok, elapsed, budget, detail)


# -- criterion 1: quantale audit vs brute force --------------------------------


def _brute_force_laws(elements, leq, tensor, unit) -> bool:
    n = len(elements)
    rng = range(n)
    if not all(leq[a][a] for a in rng):
        return False
    if any(a != b and leq[a][b] and leq[b][a] for a in rng for b in rng):
        return False
    if any(leq[a][b] and leq[b][c] and not leq[a][c]
           for a in rng for b in rng for c in rng):
        return False

    def lub(sub):
        ubs = [c for c in rng if all(leq[x][c] for x in sub)]
        for c in ubs:
            if all(leq[c][u] for u in ubs):
                return c
        return None

    bot = lub([])
    if bot is None:
        return False
    join = [[lub([a, b]) for b in rng] for a in rng]
    if any(join[a][b] is None for a in rng for b in rng):
        return False
    for a in rng:
        if tensor[unit][a] != a or tensor[a][bot] != bot:
            return False
        for b in rng:
            if tensor[a][b] != tensor[b][a]:
                return False
            for c in rng:
                if tensor[tensor[a][b]][c] != tensor[a][tensor[b][c]]:
                    return False
                if tensor[a][join[b][c]] != join[tensor[a][b]][tensor[a][c]]:
                    return False
    for a in rng:
        for b in rng:
            lower = [c for c in rng if leq[tensor[c][a]][b]]
            h = lub(lower)
            if h is None or not leq[tensor[h][a]][b]:
                return False
    return True


def criterion_1(rng: random.Random):
    cases = 0
    for q in (boolean(), tropical(10)):
        if not q.report.ok or not _brute_force_laws(
            q.elements, q._leq, q._tensor, q.unit
        ):
            return False, "builtin disagreement"
        cases += 1
    for _ in range(20):
        n = 4
        leq = [[rng.random() < 0.6 or i == j for j in range(n)]
               for i in range(n)]
        tensor = [[rng.randrange(n) for _ in range(n)] for _ in range(n)]
        unit = rng.randrange(n)
        q = Quantale([str(i) for i in range(n)], leq, tensor, unit)
        if q.report.ok != _brute_force_laws(q.elements, leq, tensor, unit):
            return False, f"disagreement on random table {cases}"
        cases += 1
    return True, f"{cases} tables"


# -- criterion 2: closure oracles ------------------------------------------------


def _warshall(adj):
    n = len(adj)
    reach = [[bool(adj[i][j]) or i == j for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if reach[i][k] and reach[k][j]:
                    reach[i][j] = True
    return reach


def _floyd_warshall(weights, cap):
    n = len(weights)

    def sadd(a, b):
        if a is None or b is None:
            return None
        s = a + b
        return s if s <= cap else None

    def mn(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    dist = [[0 if i == j else weights[i][j] for j in range(n)]
            for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                dist[i][j] = mn(dist[i][j], sadd(dist[i][k], dist[k][j]))
    return dist


def criterion_2(rng: random.Random):
    q = boolean()
    for _ in range(200):
        n = rng.randint(1, 8)
        rows = random_bool_graph(rng, n)
        xs = fin_set(f"x{i}" for i in range(n))
        closed = free_category(VGraph(VMat(q, xs, xs, rows))).carrier
        oracle = _warshall(rows)
        for y in range(n):
            for x in range(n):
                if closed.entry(y, x) != int(oracle[y][x]):
                    return False, "boolean closure mismatch"
    cap = 31
    t = tropical(cap)
    for _ in range(200):
        n = rng.randint(1, 8)
        ids = random_tropical_graph(rng, n, cap)
        xs = fin_set(f"x{i}" for i in range(n))
        closed = free_category(VGraph(VMat(t, xs, xs, ids))).carrier
        weights = [[None if ids[y][x] == t.bottom else ids[y][x]
                    for x in range(n)] for y in range(n)]
        oracle = _floyd_warshall(weights, cap)
        for y in range(n):
            for x in range(n):
                want = t.bottom if oracle[y][x] is None else oracle[y][x]
                if closed.entry(y, x) != want:
                    return False, "tropical closure mismatch"
    return True, "400 graphs"


# -- criterion 3: Galois/adjunction suite ----------------------------------------


def criterion_3(rng: random.Random):
    q = boolean()
    pairs = probes = 0
    for na in (1, 2):
        for nb in (1, 2):
            for rel_a in all_preorders(na):
                for rel_b in all_preorders(nb):
                    a = preorder_category(q, rel_a)
                    b = preorder_category(q, rel_b)
                    rep = verify_sweedler_adjunction(a, b, bound=2)
                    if not rep.all_match:
                        return False, f"mismatch at sizes ({na},{nb})"
                    pairs += 1
                    probes += rep.total
    for base in (boolean(), tropical(3)):
        rep = verify_measuring_bijection(base)
        if not rep.all_match:
            return False, "one-object bijection failure"
        # the two sides form a bijection of finite sets pair by pair
        if any(m != c for (_, _, _, m, c) in rep.entries):
            return False, "bijection cardinality mismatch"
    return True, f"{pairs} (A,B) pairs, {probes} probes"


# -- criterion 4: functor-set oracle ----------------------------------------------


def criterion_4(rng: random.Random):
    q = boolean()
    from .randgen import random_preorder

    for _ in range(50):
        na, nb = rng.randint(1, 3), rng.randint(1, 3)
        rel_a, rel_b = random_preorder(rng, na), random_preorder(rng, nb)
        a = preorder_category(q, rel_a)
        b = preorder_category(q, rel_b)
        t = sweedler_hom(a, b)
        for s in range(t.space.set.size):
            monotone = all(
                not rel_a[x][x2]
                or rel_b[t.space.apply(s, x)][t.space.apply(s, x2)]
                for x in range(na) for x2 in range(na)
            )
            if (t.carrier.entry(s, s) != q.bottom) != monotone:
                return False, "monotone-map support mismatch"
    tq = tropical(9)
    for _ in range(50):
        na, nb = rng.randint(1, 3), rng.randint(1, 3)
        a = random_tropical_metric(rng, tq, na)
        b = random_tropical_metric(rng, tq, nb)
        t = sweedler_hom(a, b)
        for s in range(t.space.set.size):
            nonexpansive = all(
                tq.leq(a.carrier.entry(x2, x),
                       b.carrier.entry(t.space.apply(s, x2),
                                       t.space.apply(s, x)))
                for x in range(na) for x2 in range(na)
            )
            if (t.carrier.entry(s, s) != tq.bottom) != nonexpansive:
                return False, "nonexpansive-map support mismatch"
    return True, "100 pairs"


# -- criterion 5: measuring-comodule Galois property -------------------------------


def criterion_5(rng: random.Random):
    q = boolean()
    checked = 0
    for na in (1, 2):
        for nb in (1, 2):
            for rel_a in all_preorders(na):
                for rel_b in all_preorders(nb):
                    a = preorder_category(q, rel_a)
                    b = preorder_category(q, rel_b)
                    mods_a = [c for c in itertools.product((0, 1), repeat=na)
                              if check_module(a, c).ok]
                    mods_b = [c for c in itertools.product((0, 1), repeat=nb)
                              if check_module(b, c).ok]
                    for ca in mods_a:
                        for cb in mods_b:
                            psi, xi = VModule(a, ca), VModule(b, cb)
                            got, t = measuring_comodule(psi, xi)
                            n = t.space.set.size
                            best = [q.bottom] * n
                            for col in itertools.product((0, 1), repeat=n):
                                if not check_comodule(t.cocategory, col).ok:
                                    continue
                                if not all(
                                    q.leq(q.tensor(col[s], psi.carrier[x]),
                                          xi.carrier[t.space.apply(s, x)])
                                    for s in range(n) for x in range(na)
                                ):
                                    continue
                                best = [q.join(u, v)
                                        for u, v in zip(best, col)]
                            if got.carrier != tuple(best):
                                return False, "fixpoint below brute-force join"
                            checked += 1
    return True, f"{checked} module pairs"


# -- criterion 6: fibration kernel --------------------------------------------------


def criterion_6(rng: random.Random):
    built = {"strict": 0, "pseudo": 0}
    want = {"strict": 20, "pseudo": 10}
    while built["strict"] < want["strict"] or built["pseudo"] < want["pseudo"]:
        kind = "pseudo" if built["pseudo"] < want["pseudo"] and \
            (built["strict"] >= want["strict"] or rng.random() < 0.4) \
            else "strict"
        idx = random_indexed(rng, pseudo=(kind == "pseudo"))
        fib = grothendieck(idx)
        for (b_obj, f), lift in fib.cleavage.items():
            if not is_cartesian(fib.proj, lift):
                return False, f"non-cartesian cleavage in {kind} case"
        if not roundtrip_isomorphism(fib):
            return False, f"roundtrip failure in {kind} case"
        built[kind] += 1

    chains = [chain(1), chain(2), chain(3)]
    roundtrips = 0
    for a, b, a2, b2 in itertools.product(chains, repeat=4):
        for adj1 in poset_adjunctions(a, b):
            for adj2 in poset_adjunctions(a2, b2):
                for h in monotone_maps(a, a2):
                    for k in monotone_maps(b, b2):
                        fh = h.then(adj2.f)
                        kf = adj1.f.then(k)
                        cat = adj2.f.dst
                        comps = []
                        ok = True
                        for x in range(a.n_objects()):
                            hom = cat.hom(fh.obj(x), kf.obj(x))
                            if not hom:
                                ok = False
                                break
                            comps.append(hom[0])
                        if not ok:
                            continue
                        m = NatTrans(fh, kf, comps)
                        nu = mate_of_square(adj1, adj2, h, k, m)
                        back = mate_of_square_back(adj1, adj2, h, k, nu)
                        if back.components != m.components:
                            return False, "mate roundtrip not the identity"
                        roundtrips += 1
    return True, f"30 indexed categories, {roundtrips} mate squares"


# -- criterion 7: linear layer --------------------------------------------------------


def criterion_7(rng: random.Random):
    one, zero = 1, 0
    kx2 = None
    for a in all_algebras_f2(2):
        if a.mult == (((one, zero), (zero, one)), ((zero, one), (zero, zero))) \
                and a.unit == (one, zero):
            kx2 = a
    if kx2 is None:
        return False, "k[x]/(x²) not found in enumeration"
    dc = dual_coalgebra(kx2)
    if dc.comult != (((1, 0), (0, 0)), ((0, 1), (1, 0))) or dc.counit != (1, 0):
        return False, "dual coalgebra tables differ from the stated ones"

    k = ground_algebra("F2")
    certified = 0
    for dim in (1, 2):
        for a in all_algebras_f2(dim):
            dual = dual_coalgebra(a)
            sigma = tuple(
                tuple((1,) if c == x else (0,) for x in range(dim))
                for c in range(dim)
            )
            rho = Measuring(dual, a, k, sigma)
            if not verify_measuring(rho).ok:
                return False, "evaluation is not a measuring"
            report = certify_universal_measuring(dual, rho, a, k, search_dim=2)
            if not report.ok:
                return False, f"terminality fails at dim {dim}"
            certified += 1

    triv = trivial_coalgebra("F2")
    rho_bad = Measuring(triv, kx2, k, (((1,), (0,)),))
    marred = certify_universal_measuring(triv, rho_bad, kx2, k, search_dim=2)
    if marred.ok or not marred.failures:
        return False, "corrupted candidate not rejected"
    return True, f"{certified} algebras certified"


# -- criterion 8: enriched-fibration audit ---------------------------------------------


def criterion_8(rng: random.Random):
    data = export_enriched_instance(boolean(), (1,))
    report = check_enriched_fibration(data)
    if not report.ok:
        return False, f"clean instance fails {report.failed_clauses()}"

    expected = {}

    d1 = data.clone()
    pair = next(p for p in d1.tensor_base_obj
                if p == (p[0], p[0]) and p[0] != d1.unit_base)
    d1.tensor_base_obj[pair] = next(
        o for o in range(d1.v_base.n_objects())
        if o != d1.tensor_base_obj[pair])
    expected["i_strict_monoidality"] = d1

    d2 = data.clone()
    key2 = next(iter(d2.hom_base))
    d2.hom_base[key2] = next(
        o for o in range(d2.v_base.n_objects()) if o != d2.hom_base[key2])
    expected["ii_hom_square"] = d2

    d3 = data.clone()
    key3 = next(k for k in d3.hom_total if k[0] == k[1])
    old = d3.hom_total[key3]
    d3.hom_total[key3] = next(
        o for o in range(d3.v_total.n_objects())
        if o != old and d3.t_proj.obj(o) == d3.t_proj.obj(old))
    expected["iii_composition_identities"] = d3

    d4 = data.clone()
    mutated = False
    for (obj, f), lift in d4.cleavage.items():
        for cand in range(d4.v_total.n_morphisms()):
            if cand != lift and d4.v_total.src(cand) == obj \
                    and d4.t_proj.mor(cand) == f:
                d4.cleavage[(obj, f)] = cand
                mutated = True
                break
        if mutated:
            break
    if not mutated:
        return False, "no corruptible cleavage entry"
    expected["iv_tensor_cocartesian"] = d4

    for clause, mutated_data in expected.items():
        rep = check_enriched_fibration(mutated_data)
        if rep.failed_clauses() != [clause]:
            return False, (f"corruption of {clause} flagged "
                           f"{rep.failed_clauses()}")
    return True, "clean pass + 4 isolated corruptions"


CRITERIA = [
    (1, "quantale audit agrees with brute force", 1.0, criterion_1),
    (2, "closures equal Warshall / Floyd-Warshall", 5.0, criterion_2),
    (3, "Sweedler adjunction Galois suite", 30.0, criterion_3),
    (4, "hom supports are monotone/nonexpansive maps", 10.0, criterion_4),
    (5, "measuring comodule is the brute-force maximum", 10.0, criterion_5),
    (6, "fibration kernel and mates", 20.0, criterion_6),
    (7, "linear layer duals and terminality", 60.0, criterion_7),
    (8, "enriched-fibration audit and corruptions", 5.0, criterion_8),
]


def run_criterion(number: int, seed: int = 0) -> CriterionResult:
    num, name, budget, fn = CRITERIA[number - 1]
    return _timed(num, name, budget, fn, seed)


def run_all(seed: int = 0):
    return [run_criterion(num, seed) for num, _, _, _ in CRITERIA]
