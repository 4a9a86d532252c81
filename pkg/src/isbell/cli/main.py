"""``isbell`` command: parse definition files, run one operation, print a report.

Exit codes: 0 success, 1 bad command line, 2 syntax or duplicate name,
3 unresolved reference, 4 validator or operation failure.
"""

import argparse
import sys

from ..cfs import (Budget, check_axioms, colimit_cfs, covering_mono_cfs, iso_all,
                   all_iso, lift_ofs, limit_cfs, surj_inj)
from ..cylinder import compose_cylinder
from ..envelope import (IsbellEnvelope, canonical_cylinder, dual, envelope_cfs, in_e, in_m,
                        isbell_hom, lemma2_bijection, validate_morphism, validate_object, yoneda)
from ..errors import IsbellError
from ..fincat import opposite, validate_category, validate_functor
from ..ortho import is_orthogonal
from ..cylinder import restrict_cocone, restrict_cone
from ..sets import FINSET
from ..variants import arrow_category_check, array_factorise, source_factorise
from . import dsl
from .report import make_report, render, ser

SYSTEMS = ("limit", "colimit", "ofs", "covering", "envelope", "array", "source")
OFS_NAMES = ("surj-inj", "iso-all", "all-iso")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser():
    p = _Parser(prog="isbell", description="Finite Isbell envelopes and cylinder factorisation systems.")
    p.add_argument("-i", "--input", action="append", default=[], metavar="FILE",
                   help="definition file (repeatable)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--no-fixtures", action="store_true", help="do not preload the built-in categories")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    sub.add_parser("validate", help="validate every definition")
    s = sub.add_parser("show", help="print a definition in re-parseable form")
    s.add_argument("name")
    s = sub.add_parser("factorise", help="factorise a cylinder")
    s.add_argument("--system", choices=SYSTEMS, required=True)
    s.add_argument("--cylinder", required=True)
    s.add_argument("--ofs", choices=OFS_NAMES, default="surj-inj")
    s = sub.add_parser("orthogonal", help="decide orthogonality of a cocone and a cone")
    s.add_argument("--cocone", required=True)
    s.add_argument("--cone", required=True)
    s = sub.add_parser("isbell-hom", help="enumerate morphisms between envelope objects")
    s.add_argument("source")
    s.add_argument("target")
    s = sub.add_parser("yoneda", help="the Yoneda object of c")
    s.add_argument("category")
    s.add_argument("object")
    s = sub.add_parser("canonical-cylinder", help="canonical cocone and cone of an envelope object")
    s.add_argument("name")
    s = sub.add_parser("check-axioms", help="sample the factorisation system axioms")
    s.add_argument("--system", choices=("limit", "colimit", "ofs", "covering", "envelope"), required=True)
    s.add_argument("--category", help="ambient category (envelope base); finite sets when omitted")
    s.add_argument("--ofs", choices=OFS_NAMES, default="surj-inj")
    s.add_argument("--max-index", type=int, default=3)
    s.add_argument("--max-set", type=int, default=3)
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-boundaries", type=int, default=Budget.max_boundaries,
                   help="skip pairs with a larger boundary search space")
    s = sub.add_parser("arrow-check", help="arrow objects versus arrows and squares")
    s.add_argument("category")
    s = sub.add_parser("lemma1", help="orthogonality before and after restriction")
    s.add_argument("--final", required=True)
    s.add_argument("--initial", required=True)
    s.add_argument("--cocone", required=True)
    s.add_argument("--cone", required=True)
    s = sub.add_parser("lemma2", help="maps out of and into a Yoneda object")
    s.add_argument("name")
    s.add_argument("object")
    s = sub.add_parser("dualise", help="the dual object over the opposite category")
    s.add_argument("name")
    return p


def _get(ws, name, kinds):
    return ws.get(name, kinds)


def _ofs(name, ambient):
    if name == "surj-inj":
        if ambient != FINSET:
            raise IsbellError("surj-inj lives on finite sets")
        return surj_inj()
    return iso_all(ambient) if name == "iso-all" else all_iso(ambient)


def cmd_validate(ws, args):
    out = {}
    for name, d in ws.defs.items():
        v = d.value
        if d.kind == "category":
            rep = validate_category(v)
        elif d.kind in ("functor", "setfunctor", "diagram"):
            rep = validate_functor(v)
        elif d.kind == "isbell":
            rep = validate_object(v)
        elif d.kind == "isbell-morphism":
            rep = validate_morphism(v)
        else:
            rep = None  # sets, functions and (co)cones are checked on construction
        ok = rep is None or rep.ok
        out[name] = {"kind": d.kind, "status": "pass" if ok else f"fail: {rep.message}"}
    bad = [n for n, e in out.items() if e["status"] != "pass"]
    return {"definitions": out, "count": len(out), "failures": len(bad)}, (4 if bad else 0)


def _name_base(pr, ws, c):
    """Print the category behind ``c`` (or behind its opposite) under its workspace name."""
    for cat in (c, opposite(c)):
        name = ws.name_of(cat, "category")
        if name is not None:
            pr.category(cat, name)
            return


def cmd_show(ws, args):
    d = ws.defs.get(args.name)
    if d is None:
        raise dsl.DslError(dsl.UNRESOLVED, f"undefined name {args.name!r}")
    pr = dsl.Printer(dsl.Workspace())
    if d.kind == "category":
        text = dsl.print_category(args.name, d.value)
    elif d.kind == "setfunctor":
        _name_base(pr, ws, d.value.source)
        pr.setfunctor(d.value, args.name)
        text = pr.text().rstrip("\n")
    elif d.kind == "isbell":
        _name_base(pr, ws, d.value.base)
        pr.isbell(d.value, args.name)
        text = pr.text().rstrip("\n")
    else:
        raise IsbellError(f"cannot print a {d.kind} in definition form")
    return {"name": args.name, "kind": d.kind, "definition": text + "\n"}, 0


def cmd_factorise(ws, args):
    r = _get(ws, args.cylinder, ["cylinder"])
    amb = r.ambient
    if args.system == "array":
        p, q = array_factorise(r)
        return _fact_report(args, r, p, q, None), 0
    if args.system == "source":
        e, cone = source_factorise(r)
        return {"system": "source", "map": ser(e), "cone": ser(cone)}, 0
    if args.system == "limit":
        spec = limit_cfs(amb)
    elif args.system == "colimit":
        spec = colimit_cfs(amb)
    elif args.system == "ofs":
        spec = lift_ofs(_ofs(args.ofs, amb))
    elif args.system == "covering":
        if amb != FINSET:
            raise IsbellError("the covering system lives on finite sets")
        spec = covering_mono_cfs()
    else:
        if not isinstance(amb, IsbellEnvelope):
            raise IsbellError("the envelope system needs a cylinder of envelope objects")
        spec = envelope_cfs(amb.base)
    p, q = spec.factorise(r)
    return _fact_report(args, r, p, q, spec), 0


def _fact_report(args, r, p, q, spec):
    out = {"system": args.system, "middle": ser(p.vertex), "cocone": ser(p.legs), "cone": ser(q.legs),
           "recomposes": compose_cylinder(q, p) == r}
    if spec is not None:
        out["cocone_in_left_class"] = bool(spec.e_member(p))
        out["cone_in_right_class"] = bool(spec.m_member(q))
    return out


def cmd_orthogonal(ws, args):
    p = _get(ws, args.cocone, ["cocone"])
    q = _get(ws, args.cone, ["cone"])
    cert = is_orthogonal(p, q)
    out = {"orthogonal": cert.orthogonal, "boundaries": cert.boundaries, "maps": cert.maps}
    if cert.orthogonal:
        fillers = list(p.ambient.hom(p.vertex, q.vertex))
        if len(fillers) == 1:
            out["filler"] = ser(fillers[0])
        else:
            out["fillers"] = [ser(j) for j in fillers]
    else:
        h, k, n = cert.witness
        out["witness"] = {"h": ser(h.legs), "k": ser(k.legs), "fillers": n}
    return out, 0


def cmd_isbell_hom(ws, args):
    x = _get(ws, args.source, ["isbell"])
    y = _get(ws, args.target, ["isbell"])
    homs = isbell_hom(x, y)
    return {"count": len(homs), "morphisms": [ser(f) for f in homs]}, 0


def cmd_yoneda(ws, args):
    c = _get(ws, args.category, ["category"])
    if args.object not in c.objects:
        raise dsl.DslError(dsl.UNRESOLVED, f"{args.object!r} is not an object of {args.category}")
    return {"category": args.category, "object": args.object, "value": ser(yoneda(c, args.object))}, 0


def cmd_canonical(ws, args):
    x = _get(ws, args.name, ["isbell"])
    p, q = canonical_cylinder(x)
    return {"cocone_index": list(p.diagram.source.objects), "cone_index": list(q.diagram.source.objects),
            "cocone_in_left_class": in_e(p), "cone_in_right_class": in_m(q),
            "cocone": ser(p.legs), "cone": ser(q.legs)}, 0


def cmd_check_axioms(ws, args):
    budget = Budget(args.max_index, args.max_set, args.samples, args.seed, args.max_boundaries)
    amb = _get(ws, args.category, ["category"]) if args.category else FINSET
    if args.system == "envelope":
        if not args.category:
            raise IsbellError("the envelope system needs --category")
        spec = envelope_cfs(amb)
    elif args.system == "covering":
        if args.category:
            raise IsbellError("the covering system lives on finite sets")
        spec = covering_mono_cfs()
    elif args.system == "limit":
        spec = limit_cfs(amb)
    elif args.system == "colimit":
        spec = colimit_cfs(amb)
    else:
        spec = lift_ofs(_ofs(args.ofs, amb))
    rep = check_axioms(spec, budget)
    out = {"system": spec.name, "ok": rep.ok, "budget": {"max_index": args.max_index, "max_set": args.max_set,
                                                        "samples": args.samples, "seed": args.seed,
                                                        "max_boundaries": args.max_boundaries},
           "counts": dict(sorted(rep.counts.items()))}
    if not rep.ok:
        out.update(axiom=rep.axiom, message=rep.message, witness=[repr(w) for w in rep.witness])
    return out, (0 if rep.ok else 4)


def cmd_arrow_check(ws, args):
    c = _get(ws, args.category, ["category"])
    cert = arrow_category_check(c)
    return {"ok": cert.ok, "objects": cert.objects, "arrows": cert.arrows,
            "pairs": cert.pairs, "squares": cert.squares}, 0


def cmd_lemma1(ws, args):
    h = _get(ws, args.final, ["functor"])
    k = _get(ws, args.initial, ["functor"])
    p = _get(ws, args.cocone, ["cocone"])
    q = _get(ws, args.cone, ["cone"])
    if h.target != p.diagram.source or k.target != q.diagram.source:
        raise IsbellError("restriction functors must land in the index categories")
    whole = is_orthogonal(p, q)
    part = is_orthogonal(restrict_cocone(p, h), restrict_cone(q, k))
    from ..ortho import lemma1_transfer
    agree = lemma1_transfer(p, q, h, k)
    return {"orthogonal": whole.orthogonal, "restricted_orthogonal": part.orthogonal, "agree": agree}, 0


def cmd_lemma2(ws, args):
    x = _get(ws, args.name, ["isbell"])
    if args.object not in x.base.objects:
        raise dsl.DslError(dsl.UNRESOLVED, f"{args.object!r} is not an object of the base")
    cert = lemma2_bijection(x, args.object)
    return {"object": args.object, "maps_in": cert.plus_maps, "maps_out": cert.minus_maps,
            "bijective": cert.ok}, 0


def cmd_dualise(ws, args):
    x = _get(ws, args.name, ["isbell"])
    d = dual(x)
    pr = dsl.Printer(ws)
    name = f"{args.name}_dual"
    pr.isbell(d, name)
    return {"name": name, "definition": pr.text(), "value": ser(d)}, 0


COMMANDS = {
    "validate": cmd_validate, "show": cmd_show, "factorise": cmd_factorise,
    "orthogonal": cmd_orthogonal, "isbell-hom": cmd_isbell_hom, "yoneda": cmd_yoneda,
    "canonical-cylinder": cmd_canonical, "check-axioms": cmd_check_axioms,
    "arrow-check": cmd_arrow_check, "lemma1": cmd_lemma1, "lemma2": cmd_lemma2,
    "dualise": cmd_dualise,
}


def run(argv, out=None, err=None):
    """Run one command; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=err)
        return 1
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else 1
    try:
        ws = dsl.Workspace()
        if not args.no_fixtures:
            dsl.load_fixtures(ws)
        dsl.parse_files(args.input, ws)
        result, code = COMMANDS[args.command](ws, args)
    except dsl.DslError as exc:
        print(f"error: {exc}", file=err)
        return exc.code
    except IsbellError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 4
    out.write(render(make_report(args.command, result), args.format))
    return code


def main(argv=None):
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
