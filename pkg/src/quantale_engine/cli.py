"""Single batch-mode entry point: one verb per module, JSON in and out.

Exit codes: 0 = pass/success, 1 = certified failure (the output carries a
witness), 2 = usage or IO error.  Stdout is canonical JSON; the optional
run manifest (which includes wall time) goes to a separate file so stdout
stays byte-identical across runs.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import serialize as ser
from .base import audit_laws, builtin
from .enrichment import (
    k_functor,
    measuring_object,
    sweedler_hom,
    verify_sweedler_adjunction,
)
from .errors import EngineError
from .fib import check_enriched_fibration, export_enriched_instance, grothendieck
from .fib.indexed import roundtrip_isomorphism
from .linalg import (
    certify_universal_measuring,
    convolution_algebra,
    dual_algebra,
    dual_coalgebra,
    hom_module_structure,
    verify_measuring,
)
from .modcomod import (
    check_comodule,
    check_module,
    hom_module,
    measuring_comodule,
    restrict_module,
)
from .structures import (
    VCategory,
    VCocategory,
    VFunctor,
    check_category,
    check_cocategory,
    cofree_cocategory,
    corestrict,
    free_category,
    restrict,
)
from .vmat import EXPONENT_CAP, compose, hom_mat, tensor_mat


class CliError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise CliError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise CliError(
            f"malformed JSON in {path} at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}"
        )


def _emit(args, payload) -> None:
    if not args.quiet:
        sys.stdout.write(ser.canonical_dumps(payload))


def _input_paths(args) -> list[str]:
    paths = []
    for attr in ("file", "files", "map", "other"):
        val = getattr(args, attr, None)
        if isinstance(val, str) and val.endswith(".json"):
            paths.append(val)
        elif isinstance(val, list):
            paths.extend(v for v in val if isinstance(v, str))
    return paths


def _write_manifest(args, command: str, started: float) -> None:
    if not args.manifest:
        return
    inputs = {}
    for path in _input_paths(args):
        try:
            inputs[path] = ser.digest(ser.canonical_dumps(_load_json(path)))
        except CliError:
            inputs[path] = None
    manifest = {
        "command": command,
        "inputs": inputs,
        "engine_version": ser.ENGINE_VERSION,
        "caps": {"exponent_cap": args.cap},
        "seed": args.seed,
        "wall_time_s": time.monotonic() - started,
    }
    with open(args.manifest, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(manifest, sort_keys=True, indent=2) + "\n")


def _base_of(args, doc=None):
    if getattr(args, "base", None):
        if args.base.endswith(".json"):
            return ser.quantale_from_dict(_load_json(args.base))
        return builtin(args.base)
    if doc is not None and "base" in doc:
        return ser.resolve_base(doc["base"])
    raise CliError("no base quantale given; pass --base or embed one")


# -- verb handlers (each returns an exit code) --------------------------------


def _cmd_base(args):
    doc = _load_json(args.file)
    q = ser.quantale_from_dict(doc)
    if args.verb == "audit":
        report = audit_laws(q)
        _emit(args, report.to_dict())
        return 0 if report.ok else 1
    if args.verb == "hom":
        _emit(args, {"hom": q.name(q.hom(q.index(args.a), q.index(args.b)))})
        return 0
    raise CliError(f"unknown base verb {args.verb}")


def _cmd_vmat(args):
    docs = [_load_json(p) for p in args.files]
    base = _base_of(args, docs[0])
    mats = [ser.vmat_from_dict(d, base) for d in docs]
    if args.verb == "compose":
        out = compose(mats[0], mats[1])
    elif args.verb == "tensor":
        out = tensor_mat(mats[0], mats[1])
    elif args.verb == "hom":
        out = hom_mat(mats[0], mats[1], cap=args.cap)
    else:
        raise CliError(f"unknown vmat verb {args.verb}")
    _emit(args, ser.vmat_to_dict(out, args.base))
    return 0


def _cmd_cat(args):
    doc = _load_json(args.file)
    base = _base_of(args, doc)
    graph = ser.graph_from_dict(doc, base)
    if args.verb == "check":
        kind = args.kind or doc.get("kind", "category")
        cert = (
            check_cocategory(graph) if kind == "cocategory"
            else check_category(graph)
        )
        _emit(args, {"kind": kind, **cert.to_dict()})
        return 0 if cert.ok else 1
    if args.verb == "free":
        cat = free_category(graph)
        _emit(args, {
            **ser.graph_to_dict(cat.graph, "category", args.base),
            "iterations": cat.iterations,
        })
        return 0
    if args.verb == "cofree":
        cocat = cofree_cocategory(graph)
        _emit(args, {
            **ser.graph_to_dict(cocat.graph, "cocategory", args.base),
            "iterations": cocat.iterations,
        })
        return 0
    if args.verb in ("restrict", "corestrict"):
        if not args.map:
            raise CliError(f"cat {args.verb} needs --map FILE")
        map_doc = _load_json(args.map)
        from .vmat import fin_set

        if args.verb == "restrict":
            # map file: {"src": [names], "map": {x: y}} with y in the category
            cat = VCategory(graph)
            src = fin_set(map_doc.get("src", list(map_doc["map"])))
            fn = ser.fn_from_dict(map_doc, src, cat.objects)
            out = restrict(cat, fn)
            _emit(args, ser.graph_to_dict(out.graph, "category", args.base))
        else:
            # map file: {"dst": [names], "map": {x: y}} pushing the cocategory
            cocat = VCocategory(graph)
            dst = fin_set(map_doc["dst"])
            fn = ser.fn_from_dict(map_doc, cocat.objects, dst)
            out = corestrict(cocat, fn)
            _emit(args, ser.graph_to_dict(out.graph, "cocategory", args.base))
        return 0
    raise CliError(f"unknown cat verb {args.verb}")


def _cmd_enrich(args):
    if args.verb == "k":
        cdoc, bdoc = _load_json(args.files[0]), _load_json(args.files[1])
        base = _base_of(args, cdoc)
        c = VCocategory(ser.graph_from_dict(cdoc, base))
        b = VCategory(ser.graph_from_dict(bdoc, base))
        k = k_functor(c, b, cap=args.cap)
        _emit(args, ser.graph_to_dict(k.graph, "category", args.base))
        return 0
    if args.verb == "sweedler":
        adoc, bdoc = _load_json(args.files[0]), _load_json(args.files[1])
        base = _base_of(args, adoc)
        a = VCategory(ser.graph_from_dict(adoc, base))
        b = VCategory(ser.graph_from_dict(bdoc, base))
        t = sweedler_hom(a, b, cap=args.cap)
        _emit(args, {
            **ser.graph_to_dict(t.cocategory.graph, "cocategory", args.base),
            "support": t.support(),
        })
        return 0
    if args.verb == "verify-adjunction":
        adoc, bdoc = _load_json(args.files[0]), _load_json(args.files[1])
        base = _base_of(args, adoc)
        a = VCategory(ser.graph_from_dict(adoc, base))
        b = VCategory(ser.graph_from_dict(bdoc, base))
        report = verify_sweedler_adjunction(a, b, bound=args.bound, cap=args.cap)
        _emit(args, report.to_dict())
        return 0 if report.all_match else 1
    if args.verb == "measuring":
        if not args.a or not args.b:
            raise CliError("enrich measuring needs --a and --b element names")
        qdoc = _load_json(args.files[0])
        q = ser.quantale_from_dict(qdoc) if "elements" in qdoc else _base_of(args)
        p = measuring_object(q.index(args.a), q.index(args.b), q)
        _emit(args, {"measuring_object": q.name(p)})
        return 0
    raise CliError(f"unknown enrich verb {args.verb}")


def _cmd_mod(args):
    if args.verb == "check":
        doc = _load_json(args.files[0])
        base = _base_of(args, doc.get("over"))
        kind = doc["over"].get("kind", "category")
        if kind == "cocategory":
            over = VCocategory(ser.graph_from_dict(doc["over"], base))
            cert = check_comodule(over, [base.index(v) for v in doc["carrier"]])
        else:
            over = VCategory(ser.graph_from_dict(doc["over"], base))
            cert = check_module(over, [base.index(v) for v in doc["carrier"]])
        _emit(args, cert.to_dict())
        return 0 if cert.ok else 1
    if args.verb == "restrict":
        mdoc = _load_json(args.files[0])
        adoc = _load_json(args.files[1])
        map_doc = _load_json(args.files[2])
        base = _base_of(args, mdoc.get("over"))
        xi = ser.module_from_dict(mdoc, base)
        a = VCategory(ser.graph_from_dict(adoc, base))
        fn = ser.fn_from_dict(map_doc, a.objects, xi.over.objects)
        out = restrict_module(xi, VFunctor.certify(a, xi.over, fn))
        _emit(args, ser.module_to_dict(out, args.base))
        return 0
    if args.verb == "hom":
        phidoc = _load_json(args.files[0])
        psidoc = _load_json(args.files[1])
        base = _base_of(args, phidoc.get("over"))
        phi = ser.comodule_from_dict(phidoc, base)
        psi = ser.module_from_dict(psidoc, base)
        out, _space = hom_module(phi, psi, cap=args.cap)
        _emit(args, ser.module_to_dict(out, args.base))
        return 0
    if args.verb == "measuring":
        psidoc = _load_json(args.files[0])
        xidoc = _load_json(args.files[1])
        base = _base_of(args, psidoc.get("over"))
        psi = ser.module_from_dict(psidoc, base)
        xi = ser.module_from_dict(xidoc, base)
        out, _t = measuring_comodule(psi, xi, cap=args.cap)
        _emit(args, ser.comodule_to_dict(out, args.base))
        return 0
    raise CliError(f"unknown mod verb {args.verb}")


def _cmd_fib(args):
    if args.verb != "check-enriched" and not args.file:
        raise CliError(f"fib {args.verb} needs an input file")
    if args.verb in ("cartesian", "factorize") and not args.morphism:
        raise CliError(f"fib {args.verb} needs --morphism NAME")
    if args.verb == "groth":
        doc = _load_json(args.file)
        indexed = ser.indexed_from_dict(doc)
        fib = grothendieck(indexed)
        _emit(args, {
            "total": ser.fincat_to_dict(fib.total),
            "objects": fib.total.n_objects(),
            "morphisms": fib.total.n_morphisms(),
        })
        return 0
    if args.verb == "cartesian":
        doc = _load_json(args.file)
        indexed = ser.indexed_from_dict(doc)
        fib = grothendieck(indexed)
        from .fib import is_cartesian

        idx = fib.total.morphism_index(args.morphism)
        _emit(args, {"morphism": args.morphism,
                     "cartesian": is_cartesian(fib.proj, idx)})
        return 0
    if args.verb == "factorize":
        doc = _load_json(args.file)
        indexed = ser.indexed_from_dict(doc)
        fib = grothendieck(indexed)
        idx = fib.total.morphism_index(args.morphism)
        vert, cart = fib.factorize(idx)
        _emit(args, {
            "vertical": fib.total.morphisms[vert].name,
            "cartesian": fib.total.morphisms[cart].name,
        })
        return 0
    if args.verb == "roundtrip":
        doc = _load_json(args.file)
        fib = grothendieck(ser.indexed_from_dict(doc))
        ok = roundtrip_isomorphism(fib)
        _emit(args, {"roundtrip_isomorphism": ok})
        return 0 if ok else 1
    if args.verb == "check-enriched":
        q = builtin(args.base or "boolean")
        sizes = tuple(int(s) for s in (args.sizes or "1").split(","))
        data = export_enriched_instance(q, sizes)
        report = check_enriched_fibration(data)
        _emit(args, report.to_dict())
        return 0 if report.ok else 1
    if args.verb == "mate":
        # bundle: categories a,b,a2,b2; adjunctions adj1: a⊣b, adj2: a2⊣b2;
        # 1-cells h: a→a2, k: b→b2; square components m: f'h ⇒ kf per a-object
        from .fib import mate_of_square
        from .fib.fincat import NatTrans

        doc = _load_json(args.file)
        cats = {name: ser.fincat_from_dict(doc[name])
                for name in ("a", "b", "a2", "b2")}
        adj1 = ser.adjunction_from_dict(doc["adj1"], cats["a"], cats["b"])
        adj2 = ser.adjunction_from_dict(doc["adj2"], cats["a2"], cats["b2"])
        h = ser.finfunctor_from_dict(doc["h"], cats["a"], cats["a2"])
        k = ser.finfunctor_from_dict(doc["k"], cats["b"], cats["b2"])
        comps = [cats["b2"].morphism_index(doc["square"][name])
                 for name in cats["a"].objects]
        m = NatTrans(h.then(adj2.f), adj1.f.then(k), comps)
        nu = mate_of_square(adj1, adj2, h, k, m)
        _emit(args, {
            "mate": {
                cats["b"].objects[y]: cats["a2"].morphisms[nu.at(y)].name
                for y in range(cats["b"].n_objects())
            }
        })
        return 0
    if args.verb == "check-adjunction":
        # bundle: indexed categories p and q over the same base, fibrewise
        # object maps s (Q-fibre → P-fibre) and left (P-fibre → Q-fibre)
        from .fib import (
            check_fibred_adjunction,
            thin_fibrewise_adjunctions,
            thin_total_functor,
        )

        doc = _load_json(args.file)
        p = grothendieck(ser.indexed_from_dict(doc["p"]))
        q = grothendieck(ser.indexed_from_dict(doc["q"]))
        base = p.base

        def total_obj_map(fib_from, fib_to, table_key, invert=False):
            obj_map = [None] * fib_from.total.n_objects()
            for x in range(base.n_objects()):
                tbl = doc[table_key][base.objects[x]]
                from_objs = fib_from.fibre_objects(x)
                to_objs = fib_to.fibre_objects(x)
                from_names = [fib_from.total.objects[o] for o in from_objs]
                to_names = [fib_to.total.objects[o] for o in to_objs]
                for name, target in tbl.items():
                    src_local = from_names.index(f"({name},{base.objects[x]})")
                    dst_local = to_names.index(f"({target},{base.objects[x]})")
                    obj_map[from_objs[src_local]] = to_objs[dst_local]
            if any(v is None for v in obj_map):
                raise CliError(f"incomplete {table_key} object map")
            return obj_map

        s = thin_total_functor(q, p, total_obj_map(q, p, "s"))
        left_raw = total_obj_map(p, q, "left")
        left = {a: left_raw[a] for a in range(p.total.n_objects())}
        fibrewise = thin_fibrewise_adjunctions(p, q, s, left)
        report = check_fibred_adjunction(p, q, s, fibrewise)
        _emit(args, report.to_dict())
        return 0 if report.ok else 1
    raise CliError(f"unknown fib verb {args.verb}")


def _cmd_lin(args):
    if args.verb == "measure":
        m = ser.measuring_from_dict(_load_json(args.files[0]))
        cert = verify_measuring(m)
        _emit(args, cert.to_dict())
        return 0 if cert.ok else 1
    if args.verb == "convolve":
        c = ser.coalgebra_from_dict(_load_json(args.files[0]))
        a = ser.algebra_from_dict(_load_json(args.files[1]))
        _emit(args, ser.algebra_to_dict(convolution_algebra(c, a)))
        return 0
    if args.verb == "dual":
        doc = _load_json(args.files[0])
        if "mult" in doc:
            out = ser.coalgebra_to_dict(dual_coalgebra(ser.algebra_from_dict(doc)))
        else:
            out = ser.algebra_to_dict(dual_algebra(ser.coalgebra_from_dict(doc)))
        _emit(args, out)
        return 0
    if args.verb == "hom-module":
        from .linalg import LinComodule, LinModule

        xdoc = _load_json(args.files[0])
        mdoc = _load_json(args.files[1])
        c = ser.coalgebra_from_dict(xdoc["coalgebra"])
        x = LinComodule(c, int(xdoc["dim"]), tuple(
            tuple(tuple(ser._scalar_from_json(c.field, v) for v in vec)
                  for vec in row)
            for row in xdoc["coaction"]
        ))
        a = ser.algebra_from_dict(mdoc["algebra"])
        m = LinModule(a, int(mdoc["dim"]), tuple(
            tuple(tuple(ser._scalar_from_json(a.field, v) for v in vec)
                  for vec in row)
            for row in mdoc["action"]
        ))
        out = hom_module_structure(x, m)
        _emit(args, {
            "algebra": ser.algebra_to_dict(out.algebra),
            "dim": out.dim,
            "action": [[[ser._scalar_to_json(a.field, v) for v in vec]
                        for vec in row] for row in out.action],
        })
        return 0
    if args.verb == "certify":
        pdoc = _load_json(args.files[0])
        a = ser.algebra_from_dict(_load_json(args.files[1]))
        b = ser.algebra_from_dict(_load_json(args.files[2]))
        cand = ser.coalgebra_from_dict(pdoc["coalgebra"])
        f = cand.field
        sigma = tuple(
            tuple(tuple(ser._scalar_from_json(f, v) for v in vec) for vec in row)
            for row in pdoc["sigma"]
        )
        from .linalg import Measuring

        rho = Measuring(cand, a, b, sigma)
        report = certify_universal_measuring(
            cand, rho, a, b, search_dim=args.search_dim
        )
        _emit(args, report.to_dict())
        return 0 if report.ok else 1
    raise CliError(f"unknown lin verb {args.verb}")


def _add_global_flags(parser, toplevel: bool):
    # defaults live at the top level; subparser copies use SUPPRESS so a
    # flag after the subcommand overrides without clobbering earlier values
    kw = {} if toplevel else {"default": argparse.SUPPRESS}
    parser.add_argument("--cap", type=int,
                        **({"default": EXPONENT_CAP} if toplevel else kw),
                        help="cap on materialized function sets")
    parser.add_argument("--seed", type=int,
                        **({"default": 0} if toplevel else kw),
                        help="seed for randomized generation, where applicable")
    parser.add_argument("--format", choices=["json"],
                        **({"default": "json"} if toplevel else kw))
    parser.add_argument("--quiet", action="store_true",
                        **({} if toplevel else kw),
                        help="suppress stdout, keep exit codes")
    parser.add_argument("--manifest",
                        **({"default": None} if toplevel else kw),
                        help="write a run manifest to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qe", description="quantale enrichment and fibration engine"
    )
    _add_global_flags(parser, toplevel=True)
    sub = parser.add_subparsers(dest="module", required=True)

    p = sub.add_parser("base")
    _add_global_flags(p, toplevel=False)
    p.add_argument("verb", choices=["audit", "hom"])
    p.add_argument("file")
    p.add_argument("a", nargs="?")
    p.add_argument("b", nargs="?")
    p.set_defaults(func=_cmd_base)

    p = sub.add_parser("vmat")
    _add_global_flags(p, toplevel=False)
    p.add_argument("verb", choices=["compose", "tensor", "hom"])
    p.add_argument("files", nargs=2)
    p.add_argument("--base")
    p.set_defaults(func=_cmd_vmat)

    p = sub.add_parser("cat")
    _add_global_flags(p, toplevel=False)
    p.add_argument("verb",
                   choices=["check", "free", "cofree", "restrict", "corestrict"])
    p.add_argument("file")
    p.add_argument("other", nargs="?")
    p.add_argument("--map")
    p.add_argument("--base")
    p.add_argument("--kind", choices=["category", "cocategory"])
    p.set_defaults(func=_cmd_cat)

    p = sub.add_parser("enrich")
    _add_global_flags(p, toplevel=False)
    p.add_argument("verb",
                   choices=["k", "sweedler", "verify-adjunction", "measuring"])
    p.add_argument("files", nargs="+")
    p.add_argument("--base")
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--a", dest="a")
    p.add_argument("--b", dest="b")
    p.set_defaults(func=_cmd_enrich)

    p = sub.add_parser("mod")
    _add_global_flags(p, toplevel=False)
    p.add_argument("verb", choices=["check", "restrict", "hom", "measuring"])
    p.add_argument("files", nargs="+")
    p.add_argument("--base")
    p.set_defaults(func=_cmd_mod)

    p = sub.add_parser("fib")
    _add_global_flags(p, toplevel=False)
    p.add_argument("verb", choices=["groth", "cartesian", "factorize",
                                    "roundtrip", "mate", "check-adjunction",
                                    "check-enriched"])
    p.add_argument("file", nargs="?")
    p.add_argument("--morphism")
    p.add_argument("--base")
    p.add_argument("--sizes")
    p.set_defaults(func=_cmd_fib)

    p = sub.add_parser("lin")
    _add_global_flags(p, toplevel=False)
    p.add_argument("verb",
                   choices=["measure", "convolve", "dual", "hom-module",
                            "certify"])
    p.add_argument("files", nargs="+")
    p.add_argument("--search-dim", type=int, default=2, dest="search_dim")
    p.set_defaults(func=_cmd_lin)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    started = time.monotonic()
    try:
        code = args.func(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except EngineError as exc:
        sys.stderr.write(f"engine error: {exc}\n")
        return 2
    _write_manifest(args, " ".join(argv or sys.argv[1:]), started)
    return code


if __name__ == "__main__":
    sys.exit(main())
