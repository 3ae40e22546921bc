"""Command-line front end: jjalg {check, construct, cohomology, search, verify-family}.

Exit status 0 means the property holds, 1 that it fails (the report names a
witness) and 2 a usage, parse or precondition error.
"""
import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import deformations as dfm
from .algebras import (FDAlgebra, check_structure, sub_adjacent, tensor_product_jj)
from .cohomology import ComplexContext, cohomology_report
from .errors import Check, JJError, ParseError, PreconditionError
from .fileformat import AlgebraFile, load, serialize
from .fields import GF
from .linalg import coerce
from .relative_rb import RelRBContext, induced_structures, is_relative_rb
from .representations import (bicrossed_product, bicrossed_structure, is_matched_pair,
                              is_valid, semidirect_product)
from .search import SearchSpec, enumerate_solutions, verify_family

SCHEMA = "jjalg.report/1"
KIND = {"jj": "jacobi_jordan", "prejj-left": "left_prejj", "prejj-right": "right_prejj"}


class UsageError(Exception):
    pass


_SECTION_OF = {"rep": "representation", "operators": "operator", "maps": "map",
               "elements": "element", "families": "family"}


def _need(af, what, attr, key=None):
    val = getattr(af, attr)
    if key is not None:
        val = val.get(key)
    if val is None:
        section = " ".join(filter(None, (_SECTION_OF.get(attr, attr), key)))
        raise UsageError(f"{what} needs a [{section}] section in the file")
    return val


def _ctx(af, op="T"):
    rep = _need(af, "this command", "rep")
    t = af.operators.get(op)
    if t is None:
        raise UsageError(f"the file has no [operator {op}] section")
    return RelRBContext(af.alg, rep, t)


def _v_labels(af):
    if af.rep_regular:
        return af.alg.labels
    return tuple(f"v{i + 1}" for i in range(af.rep.v_dim))


def _fmt_matrix(m):
    return [[str(a) for a in row] for row in np.asarray(m, dtype=object)]


def _fmt_tensor(c):
    return [[[str(a) for a in r] for r in m] for m in np.asarray(c, dtype=object)]


def _witness_text(chk, labels):
    if chk.ok:
        return "holds"
    w = tuple(labels[i] if labels and isinstance(i, int) and i < len(labels) else i
              for i in chk.witness)
    return f"{chk.condition} fails at ({', '.join(map(str, w))}) -> {chk.value}"


# -- commands ----------------------------------------------------------------------------------

def cmd_check(af, args):
    what = args.what
    labels = af.alg.labels
    if what == "structure":
        if af.species == "plain":
            chk = Check(True, "no identity required")
        else:
            chk = check_structure(af.alg, KIND[af.species])
        report = {"structure": af.species}
    elif what == "rep":
        chk = is_valid(_need(af, "check --what rep", "rep"))
        report = {"v_dim": af.rep.v_dim}
    elif what == "rbo":
        ctx = _ctx(af, args.operator)
        chk = is_relative_rb(ctx)
        labels = _v_labels(af)
        report = {"operator": args.operator}
    elif what == "nijenhuis":
        n = af.maps.get(args.map)
        if n is None:
            raise UsageError(f"the file has no [map {args.map}] section")
        nc = dfm.NijenhuisCandidate(af.alg, n)
        chk = dfm.is_nijenhuis_operator(nc)
        report = {"map": args.map, "weight_minus_one_rota_baxter": bool(dfm.is_weight_rb_minus_one(nc))}
    elif what == "matched-pair":
        if af.partner is None:
            raise UsageError("matched-pair needs [partner] and [actions]")
        mp = af.matched_pair()
        chk = is_matched_pair(mp)
        report = {"bicrossed_structure": bool(bicrossed_structure(mp))}
        labels = None
    elif what == "deformation-generator":
        ctx = _ctx(af, args.operator)
        z = af.operators.get("Z")
        if z is None:
            raise UsageError("the file has no [operator Z] section")
        chk = dfm.generates_rb_deformation(dfm.DeformationGenerator(ctx, z))
        labels = _v_labels(af)
        report = {"operator": args.operator, "generator": "Z"}
    elif what == "nijenhuis-element":
        ctx = _ctx(af, args.operator)
        x = af.elements.get(args.element)
        if x is None:
            raise UsageError(f"the file has no [element {args.element}] section")
        chk = dfm.is_nijenhuis_element(ctx, x)
        report = {"element": af.alg.fmt(x)}
    else:
        raise UsageError(f"unknown check {what!r}")
    report.update({"what": what, "ok": bool(chk), "check": chk.to_json(labels)})
    text = f"{what}: {'PASS' if chk else 'FAIL'}"
    if not chk:
        text += f"  {_witness_text(chk, labels)}"
    return (0 if chk else 1), report, text


def _algebra_report(alg):
    return {"dim": alg.dim, "field": repr(alg.field), "labels": list(alg.labels),
            "structure_constants": _fmt_tensor(alg.c)}


def _as_file(alg, species):
    return serialize(AlgebraFile(alg, species))


def cmd_construct(af, args):
    what = args.what
    species = af.species
    if what == "semidirect":
        alg = semidirect_product(af.alg, _need(af, "semidirect", "rep"))
        out = {"algebra": _algebra_report(alg)}
        text = _as_file(alg, species)
    elif what == "bicrossed":
        if af.partner is None:
            raise UsageError("bicrossed needs [partner] and [actions]")
        alg = bicrossed_product(af.matched_pair())
        out = {"algebra": _algebra_report(alg)}
        text = _as_file(alg, species)
    elif what == "tensor":
        if not args.with_file:
            raise UsageError("tensor needs --with <commutative associative algebra file>")
        other = load(args.with_file, args.allow_small_char)
        alg = tensor_product_jj(af.alg, other.alg)
        out = {"algebra": _algebra_report(alg)}
        text = _as_file(alg, "jj")
    elif what == "subadjacent":
        alg = sub_adjacent(af.alg)
        out = {"algebra": _algebra_report(alg)}
        text = _as_file(alg, "jj")
    elif what == "induced":
        ind = induced_structures(_ctx(af, args.operator))
        out = {"algebra": _algebra_report(ind.v_alg), "rho_T": _fmt_tensor(ind.a_rep.rho)}
        if ind.species == "prejj":
            out["mu_T"] = _fmt_tensor(ind.a_rep.mu)
        text = _as_file(ind.v_alg, "jj" if ind.species == "jj" else "prejj-left")
    elif what == "AN":
        n = af.maps.get(args.map)
        if n is None:
            raise UsageError(f"the file has no [map {args.map}] section")
        rs = af.rep_species
        if rs is None:
            raise UsageError("AN needs species jj or prejj-left")
        alg = dfm.deformed_algebra(dfm.NijenhuisCandidate(af.alg, n), rs)
        out = {"algebra": _algebra_report(alg)}
        text = _as_file(alg, species)
    elif what == "NT":
        ctx = RelRBContext(af.alg, _need(af, "NT", "rep"), _need(af, "NT", "operators", args.operator),
                           validate=False)
        lam = Fraction(args.lam)
        nt = dfm.build_NT(ctx, lam)
        chk = dfm.nt_is_nijenhuis(ctx, lam)
        out = {"matrix": _fmt_matrix(nt), "lambda": str(lam), "nijenhuis": bool(chk)}
        text = "\n".join(" ".join(r) for r in _fmt_matrix(nt)) + f"\nNijenhuis: {bool(chk)}\n"
    elif what == "trivial-deformation":
        ctx = _ctx(af, args.operator)
        x = af.elements.get(args.element)
        if x is None:
            raise UsageError(f"the file has no [element {args.element}] section")
        tt = dfm.trivial_deformation(ctx, x, Fraction(args.t) if ctx.field.p is None else args.t)
        out = {"matrix": _fmt_matrix(tt), "t": args.t}
        text = "\n".join(" ".join(r) for r in _fmt_matrix(tt)) + "\n"
    else:
        raise UsageError(f"unknown construction {what!r}")
    out["what"] = what
    return 0, out, text.rstrip("\n")


def cmd_cohomology(af, args):
    cx = ComplexContext(_ctx(af, args.operator), degree_cap=max(4, args.degree))
    rep = cohomology_report(cx, args.degree)
    text = (f"H^{rep['degree']} ({rep['species']}): dim C = {rep['dim_C']}, "
            f"dim Z = {rep['dim_Z']}, dim B = {rep['dim_B']}, dim H = {rep['dim_H']}")
    return 0, rep, text


def _over(af, p, allow_small):
    """The file's data reduced into F_p (identity if already over F_p)."""
    f = GF(p, allow_small)
    if af.field == f:
        return af
    try:
        alg = FDAlgebra(af.alg.dim, f, coerce(af.alg.c, f), labels=af.alg.labels, name=af.alg.name)
        out = AlgebraFile(alg, af.species)
        if af.rep is not None:
            rep = af.rep
            out.rep = (type(rep)(alg, coerce(rep.rho, f), rep.v_dim) if rep.species == "jj"
                       else type(rep)(alg, coerce(rep.rho, f), coerce(rep.mu, f), rep.v_dim))
        out.operators = {k: coerce(v, f) for k, v in af.operators.items()}
        return out
    except ZeroDivisionError as exc:
        raise UsageError(f"cannot reduce the file mod {p}: {exc}") from None


def cmd_search(af, args):
    red = _over(af, args.field, args.allow_small_char)
    what = args.what
    if what == "rbo":
        spec = SearchSpec("relative_rb", (red.alg, _need(red, "search --what rbo", "rep")),
                          p=args.field, workers=args.workers, budget=args.budget,
                          subsample=args.subsample, seed=args.seed)
    elif what == "nijenhuis":
        spec = SearchSpec("nijenhuis_operator", red.alg, p=args.field, workers=args.workers,
                          budget=args.budget, subsample=args.subsample, seed=args.seed)
    elif what == "nijenhuis-elements":
        spec = SearchSpec("nijenhuis_element", _ctx(red, args.operator), p=args.field,
                          workers=args.workers, budget=args.budget)
    else:
        raise UsageError(f"unknown search {what!r}")
    res = enumerate_solutions(spec)
    report = {"what": what, "field": f"F{args.field}", "shape": list(spec.shape),
              "examined": res.examined, "exhaustive": res.exhaustive, "count": res.count,
              "solutions": [list(s) for s in res.solutions]}
    text = (f"{what} over F{args.field}: {res.count} solutions among {res.examined} "
            f"{'(exhaustive)' if res.exhaustive else '(random sample)'}")
    shown = res.solutions[:args.show]
    if shown:
        text += "\n" + "\n".join(" ".join(map(str, s)) for s in shown)
        if res.count > len(shown):
            text += f"\n... {res.count - len(shown)} more"
    return 0, report, text


def cmd_verify_family(af, args):
    fam = af.families.get(args.family)
    if fam is None:
        raise UsageError(f"the file has no [family {args.family}] section")
    grid = args.grid or af.grid
    if not grid:
        raise UsageError("give --grid or a [grid] section")
    rep = _need(af, "verify-family", "rep")
    pred = lambda m: is_relative_rb(RelRBContext(af.alg, rep, m, validate=False))
    try:
        rpt = verify_family(fam, pred, grid, af.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    points = [{"params": {k: str(v) for k, v in pt.items()}, "ok": bool(chk),
               "check": chk.to_json()} for pt, chk in rpt.points]
    text = rpt.summary()
    for pt, chk in rpt.failures[:args.show]:
        text += "\n  fails at " + ", ".join(f"{k}={v}" for k, v in pt.items()) + f": {chk.describe()}"
    return (0 if rpt.all_pass else 1), {"grid": grid, "all_pass": rpt.all_pass, "points": points}, text


COMMANDS = {"check": cmd_check, "construct": cmd_construct, "cohomology": cmd_cohomology,
            "search": cmd_search, "verify-family": cmd_verify_family}


def build_parser():
    ap = argparse.ArgumentParser(prog="jjalg", description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    ap.add_argument("--allow-small-char", action="store_true",
                    help="accept fields of characteristic 2 or 3")
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--allow-small-char", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--operator", default="T", help="operator section name (default T)")

    p = sub.add_parser("check", parents=[common], help="test one property")
    p.add_argument("--what", required=True,
                   choices=["structure", "rep", "rbo", "nijenhuis", "matched-pair",
                            "deformation-generator", "nijenhuis-element"])
    p.add_argument("--map", default="N")
    p.add_argument("--element", default="x")

    p = sub.add_parser("construct", parents=[common], help="build a derived object")
    p.add_argument("--what", required=True,
                   choices=["semidirect", "bicrossed", "tensor", "subadjacent", "induced", "AN",
                            "NT", "trivial-deformation"])
    p.add_argument("--t", default="1")
    p.add_argument("--lambda", dest="lam", default="0")
    p.add_argument("--with", dest="with_file")
    p.add_argument("--map", default="N")
    p.add_argument("--element", default="x")

    p = sub.add_parser("cohomology", parents=[common], help="dimension of H^k")
    p.add_argument("--degree", type=int, required=True)

    p = sub.add_parser("search", parents=[common], help="exhaustive search over F_p")
    p.add_argument("--what", required=True, choices=["rbo", "nijenhuis", "nijenhuis-elements"])
    p.add_argument("--field", type=int, default=5)
    p.add_argument("--budget", type=int, default=10 ** 7)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--subsample", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--show", type=int, default=20)

    p = sub.add_parser("verify-family", parents=[common], help="check a parametric family")
    p.add_argument("--grid")
    p.add_argument("--family", default="T")
    p.add_argument("--show", type=int, default=10)
    return ap


def _emit(args, code, report, text, out):
    if getattr(args, "json", False):
        report = dict(report)
        report.update({"schema": SCHEMA, "command": args.command, "file": args.file,
                       "exit_code": code})
        json.dump(report, out, indent=2, sort_keys=True)
        out.write("\n")
    else:
        out.write(text + "\n")


def main(argv=None, out=None):
    out = out or sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        af = load(args.file, args.allow_small_char)
        code, report, text = COMMANDS[args.command](af, args)
    except (UsageError, ParseError, PreconditionError, OSError, ValueError) as exc:
        msg = f"{args.file}: {exc}" if isinstance(exc, ParseError) else str(exc)
        if getattr(args, "json", False):
            json.dump({"schema": SCHEMA, "command": args.command, "file": args.file,
                       "exit_code": 2, "error": msg, "error_type": type(exc).__name__},
                      out, indent=2, sort_keys=True)
            out.write("\n")
        else:
            print(f"jjalg: error: {msg}", file=sys.stderr)
        return 2
    except JJError as exc:
        print(f"jjalg: error: {exc}", file=sys.stderr)
        return 2
    _emit(args, code, report, text, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
