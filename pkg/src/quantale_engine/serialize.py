"""JSON schemas, canonical output and content digests.

All CLI output is canonicalized (sorted keys, explicit element names) so
identical inputs and flags produce byte-identical bytes on stdout.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .base import Quantale, builtin
from .errors import EngineError
from .fib import FinCategory, IndexedCategory, Morph, strict_indexed
from .fib.fincat import FinFunctor
from .linalg import Algebra, Coalgebra, Measuring
from .modcomod import VComodule, VModule
from .structures import VCategory, VCocategory, VGraph
from .vmat import FinFn, FinSet, VMat, fin_set

ENGINE_VERSION = "0.1.0"


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


# -- quantales ---------------------------------------------------------------


def quantale_to_dict(q: Quantale) -> dict:
    return {
        "elements": list(q.elements),
        "leq": [[bool(v) for v in row] for row in q._leq],
        "tensor": [[q.name(v) for v in row] for row in q._tensor],
        "unit": q.name(q.unit),
    }


def quantale_from_dict(d: dict) -> Quantale:
    elements = list(d["elements"])
    index = {name: i for i, name in enumerate(elements)}
    return Quantale(
        elements=elements,
        leq=d["leq"],
        tensor=[[index[v] for v in row] for row in d["tensor"]],
        unit=index[d["unit"]],
    )


def resolve_base(ref) -> Quantale:
    """A base reference: a builtin name or an inline quantale object."""
    if isinstance(ref, str):
        return builtin(ref)
    if isinstance(ref, dict):
        return quantale_from_dict(ref)
    raise EngineError(f"cannot resolve base reference {ref!r}")


# -- matrices and (co)categories ----------------------------------------------


def vmat_to_dict(m: VMat, base_ref=None) -> dict:
    return {
        "base": base_ref if base_ref is not None else quantale_to_dict(m.base),
        "src": list(m.src.names),
        "dst": list(m.dst.names),
        "entries": [[m.base.name(v) for v in row] for row in m.entries],
    }


def vmat_from_dict(d: dict, base: Quantale | None = None) -> VMat:
    q = base if base is not None else resolve_base(d["base"])
    src = fin_set(d["src"])
    dst = fin_set(d["dst"])
    entries = [[q.index(v) for v in row] for row in d["entries"]]
    return VMat(q, src, dst, entries)


def graph_to_dict(g: VGraph, kind: str = "graph", base_ref=None) -> dict:
    d = vmat_to_dict(g.carrier, base_ref)
    d["kind"] = kind
    return d


def graph_from_dict(d: dict, base: Quantale | None = None) -> VGraph:
    return VGraph(vmat_from_dict(d, base))


def column_to_dict(over_dict: dict, carrier_names) -> dict:
    return {"over": over_dict, "carrier": list(carrier_names)}


def module_to_dict(m: VModule, base_ref=None) -> dict:
    return column_to_dict(
        graph_to_dict(m.over.graph, "category", base_ref),
        [m.base.name(v) for v in m.carrier],
    )


def module_from_dict(d: dict, base: Quantale | None = None) -> VModule:
    over = VCategory(graph_from_dict(d["over"], base))
    q = over.base
    return VModule(over, [q.index(v) for v in d["carrier"]])


def comodule_from_dict(d: dict, base: Quantale | None = None) -> VComodule:
    over = VCocategory(graph_from_dict(d["over"], base))
    q = over.base
    return VComodule(over, [q.index(v) for v in d["carrier"]])


def comodule_to_dict(m: VComodule, base_ref=None) -> dict:
    return column_to_dict(
        graph_to_dict(m.over.graph, "cocategory", base_ref),
        [m.base.name(v) for v in m.carrier],
    )


def fn_from_dict(d: dict, src: FinSet, dst: FinSet) -> FinFn:
    mapping = d["map"] if "map" in d else d
    return FinFn(
        src, dst, tuple(dst.index(mapping[name]) for name in src.names)
    )


# -- finite categories ---------------------------------------------------------


def fincat_to_dict(c: FinCategory) -> dict:
    return {
        "objects": list(c.objects),
        "morphisms": [
            {"name": m.name, "src": c.objects[m.src], "dst": c.objects[m.dst]}
            for m in c.morphisms
        ],
        "compose": {
            c.morphisms[g].name: {
                c.morphisms[f].name: c.morphisms[h].name
                for (g2, f), h in c.compose_table.items()
                if g2 == g
            }
            for g in range(c.n_morphisms())
        },
        "id": {c.objects[x]: c.morphisms[c.id_of(x)].name
               for x in range(c.n_objects())},
    }


def fincat_from_dict(d: dict) -> FinCategory:
    objects = list(d["objects"])
    obj_index = {name: i for i, name in enumerate(objects)}
    morphs = [
        Morph(m["name"], obj_index[m["src"]], obj_index[m["dst"]])
        for m in d["morphisms"]
    ]
    mor_index = {m.name: i for i, m in enumerate(morphs)}
    compose = {}
    for gname, row in d["compose"].items():
        for fname, hname in row.items():
            compose[(mor_index[gname], mor_index[fname])] = mor_index[hname]
    identities = [mor_index[d["id"][name]] for name in objects]
    return FinCategory(objects, morphs, compose, identities)


def finfunctor_from_dict(d: dict, src: FinCategory, dst: FinCategory) -> FinFunctor:
    obj_map = [dst.object_index(d["objects"][name]) for name in src.objects]
    if "morphisms" in d:
        mor_map = [
            dst.morphism_index(d["morphisms"][m.name]) for m in src.morphisms
        ]
    else:
        # thin target: the object map determines the morphism map
        mor_map = []
        for m in src.morphisms:
            hom = dst.hom(obj_map[m.src], obj_map[m.dst])
            if len(hom) != 1:
                raise EngineError(
                    f"functor needs an explicit morphism map at {m.name}"
                )
            mor_map.append(hom[0])
    return FinFunctor(src, dst, obj_map, mor_map)


def adjunction_from_dict(d: dict, a: FinCategory, b: FinCategory):
    from .fib.fincat import FinAdjunction

    f = finfunctor_from_dict(d["f"], a, b)
    g = finfunctor_from_dict(d["g"], b, a)
    unit = [a.morphism_index(d["unit"][name]) for name in a.objects]
    counit = [b.morphism_index(d["counit"][name]) for name in b.objects]
    return FinAdjunction(f, g, unit, counit)


def indexed_from_dict(d: dict) -> IndexedCategory:
    base = fincat_from_dict(d["base"])
    fibres = [fincat_from_dict(d["fibres"][name]) for name in base.objects]
    reindex = []
    for f in range(base.n_morphisms()):
        name = base.morphisms[f].name
        reindex.append(
            finfunctor_from_dict(
                d["reindex"][name], fibres[base.dst(f)], fibres[base.src(f)]
            )
        )
    if "delta" not in d and "gamma" not in d:
        return strict_indexed(base, fibres, reindex)
    delta = {}
    for key, comps in d.get("delta", {}).items():
        gname, fname = key.split("|")
        g = base.morphism_index(gname)
        f = base.morphism_index(fname)
        fib_top = fibres[base.dst(g)]
        fib_src = fibres[base.src(f)]
        delta[(g, f)] = tuple(
            fib_src.morphism_index(comps[fib_top.objects[a]])
            for a in range(fib_top.n_objects())
        )
    gamma = []
    for x in range(base.n_objects()):
        comps = d["gamma"][base.objects[x]]
        fib = fibres[x]
        gamma.append(
            tuple(
                fib.morphism_index(comps[fib.objects[a]])
                for a in range(fib.n_objects())
            )
        )
    return IndexedCategory(base, fibres, reindex, delta, gamma)


# -- linear layer ----------------------------------------------------------------


def _scalar_to_json(field: str, v):
    if field == "F2":
        return int(v)
    fr = Fraction(v)
    return str(fr.numerator) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"


def _scalar_from_json(field: str, v):
    if field == "F2":
        return int(v) % 2
    if isinstance(v, str):
        return Fraction(v)
    return Fraction(v)


def algebra_to_dict(a: Algebra) -> dict:
    return {
        "field": a.field,
        "dim": a.dim,
        "mult": [[[_scalar_to_json(a.field, v) for v in vec] for vec in row]
                 for row in a.mult],
        "unit": [_scalar_to_json(a.field, v) for v in a.unit],
    }


def algebra_from_dict(d: dict) -> Algebra:
    f = d["field"]
    return Algebra(
        f,
        int(d["dim"]),
        tuple(
            tuple(tuple(_scalar_from_json(f, v) for v in vec) for vec in row)
            for row in d["mult"]
        ),
        tuple(_scalar_from_json(f, v) for v in d["unit"]),
    )


def coalgebra_to_dict(c: Coalgebra) -> dict:
    return {
        "field": c.field,
        "dim": c.dim,
        "comult": [[[_scalar_to_json(c.field, v) for v in vec] for vec in row]
                   for row in c.comult],
        "counit": [_scalar_to_json(c.field, v) for v in c.counit],
    }


def coalgebra_from_dict(d: dict) -> Coalgebra:
    f = d["field"]
    return Coalgebra(
        f,
        int(d["dim"]),
        tuple(
            tuple(tuple(_scalar_from_json(f, v) for v in vec) for vec in row)
            for row in d["comult"]
        ),
        tuple(_scalar_from_json(f, v) for v in d["counit"]),
    )


def measuring_from_dict(d: dict) -> Measuring:
    c = coalgebra_from_dict(d["coalgebra"])
    a = algebra_from_dict(d["source"])
    b = algebra_from_dict(d["target"])
    f = c.field
    sigma = tuple(
        tuple(tuple(_scalar_from_json(f, v) for v in vec) for vec in row)
        for row in d["sigma"]
    )
    return Measuring(c, a, b, sigma)
