"""Command-line front end: ``roughdm {info,rs,dm,check,dot,mine}``.

Exit codes: 0 all checks pass, 1 a checked property or theorem fails,
2 usage or parse error, 3 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

import numpy as np

from . import bz, kleene
from .approximation import ApproxSpace
from .completion import DM_CAP, build_dm, dm_membership
from .documents import (
    ParseError, RelationDocument, ReportDocument, dumps, encode_pair, load_relation,
    render_text,
)
from .dot import hasse_dot, lattice_dot
from .completion import pair_order
from .errors import CapExceeded, PreconditionError, RoughDMError
from .harness import FILTERS, mine, run_theorem_suite, summarize
from .relations import Partition, Relation, Universe, classify, equivalence_classes, equivalence_closure
from .rough import RoughPair, build_rs, exact_family, rs_is_lattice

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

PROPERTIES = ("pseudo-kleene", "paraorthomodular", "sharp", "central", "chajda", "bz", "pbz",
              "pbz-star", "stone", "antiortholattice", "suite")


# -- specs ----------------------------------------------------------------------------

def parse_labels(text: str, u: Universe) -> int:
    """``ab`` or ``a,b`` (commas needed for multi-character labels); ``∅`` is empty."""
    text = text.strip()
    if text in ("", "∅", "{}"):
        return 0
    if "," in text:
        names = [t.strip() for t in text.split(",")]
    elif text in u.labels:
        names = [text]
    else:
        names = list(text)
    try:
        return u.mask(names)
    except (PreconditionError, KeyError, ValueError) as exc:
        raise ParseError(str(exc), text) from None


def parse_partition(text: str, u: Universe) -> Partition:
    body = text.strip().strip("{}")
    try:
        return Partition(u, tuple(parse_labels(b, u) for b in body.split("|")))
    except PreconditionError as exc:
        raise ParseError(str(exc), text) from None


def parse_elements(text: str, u: Universe) -> list[RoughPair]:
    """``lower/upper;lower/upper;...`` e.g. ``a/ab;c/bc``."""
    out = []
    for item in filter(None, (s.strip() for s in text.split(";"))):
        if item.count("/") != 1:
            raise ParseError("expected lower/upper", item)
        lo, hi = item.split("/")
        out.append(RoughPair(parse_labels(lo, u), parse_labels(hi, u)))
    return out


def build_neg(lat, spec: Optional[str]) -> bz.NegOperator:
    """Resolve a ``--neg`` spec; the default uses the equivalence closure."""
    space = lat.space
    u = space.universe
    if spec is None:
        return bz.neg_from_equivalence(lat, equivalence_closure(space.relation))
    kind, _, arg = spec.partition(":")
    if kind == "from-equivalence":
        return bz.neg_from_equivalence(lat, parse_partition(arg, u).relation())
    if kind == "from-subortholattice":
        members = {lat.bottom, lat.top}
        for p in parse_elements(arg, u):
            if p not in lat.index:
                raise ParseError("not an element of the completion", p.format(u))
            members.add(lat.index[p])
        return bz.neg_from_subortholattice(lat, lat.inv.map, members)
    if kind == "trivial":
        return bz.trivial_neg(lat)
    raise ParseError("unknown negation constructor", spec)


# -- report sections -------------------------------------------------------------------

def _elements(lat, idx) -> list:
    u = lat.space.universe
    return [encode_pair(lat.elements[int(k)], u) for k in idx]


def base_report(doc: RelationDocument, r: Relation) -> ReportDocument:
    return ReportDocument(input=doc.to_dict(), flags=classify(r).as_dict(), sizes={})


def section_info(rep: ReportDocument, r: Relation, cap):
    space = ApproxSpace(r)
    u = r.universe
    rs = build_rs(space, cap=cap)
    rep.sizes["rs"] = len(rs)
    if rep.flags["reflexive"]:
        lat = build_dm(space, cap=cap)
        rep.sizes["dm"] = lat.size
        rep.sizes["added"] = len(lat.added)
    rep.sections["info"] = {
        "singletons": u.members(space.singletons()),
        "closure_classes": [u.members(b) for b in equivalence_classes(equivalence_closure(r)).blocks],
        "lower_definable": len(space.lower_definable()),
        "upper_definable": len(space.upper_definable()),
    }


def section_rs(rep: ReportDocument, r: Relation, cap):
    u = r.universe
    rs = build_rs(ApproxSpace(r), cap=cap)
    check = rs_is_lattice(rs)
    witness = None
    if check.witness:
        w = check.witness
        witness = {"kind": w["kind"], "pair": [encode_pair(p, u) for p in w["pair"]],
                   "bounds": [encode_pair(p, u) for p in w["bounds"]]}
    rep.sizes["rs"] = len(rs)
    rep.sections["rs"] = {"elements": [encode_pair(p, u) for p in rs.pairs],
                          "is_lattice": check.is_lattice, "witness": witness}


def section_dm(rep: ReportDocument, r: Relation, cap):
    space = ApproxSpace(r)
    lat = build_dm(space, cap=cap)
    u = r.universe
    s = space.singletons()
    rows = []
    for k, p in enumerate(lat.elements):
        a, b = p
        rows.append({
            "pair": encode_pair(p, u),
            "rough_set": bool(lat.in_rs[k]),
            "completion_added": not lat.in_rs[k],
            "membership": {
                "lower_definable": space.low(space.iup(a)) == a,
                "upper_definable": space.up(space.ilow(b)) == b,
                "closure_inclusion": space.up(space.iup(a)) & ~b == 0,
                "singleton_agreement": a & s == b & s,
                "holds": dm_membership(space, a, b),
            },
        })
    rep.sizes["dm"] = lat.size
    rep.sizes["added"] = len(lat.added)
    rep.sections["dm"] = {"elements": rows,
                          "covers": [[i, j] for i in range(lat.size) for j in lat.covers[i]]}


def _neg_table(lat, neg) -> list:
    u = lat.space.universe
    return [[encode_pair(p, u), encode_pair(lat.elements[neg(k)], u)] for k, p in enumerate(lat.elements)]


def section_check(rep: ReportDocument, r: Relation, prop: str, neg_spec, cap) -> str:
    """Run one property; returns the status ``pass``, ``fail`` or ``info``."""
    if prop == "suite":
        res = run_theorem_suite(r)
        rep.sizes.update(res.sizes)
        rep.sections["suite"] = res.to_dict()
        status = "pass" if res.ok else "fail"
        rep.sections["check"] = {"property": prop, "status": status}
        return status
    if not classify(r).reflexive:
        raise PreconditionError("checks need a reflexive relation (use closures.reflexive)")
    space = ApproxSpace(r)
    lat = build_dm(space, cap=cap)
    inv = lat.inv.map
    fmt = lambda k: lat.elements[int(k)].format(r.universe)
    rep.sizes["dm"] = lat.size
    out: dict = {"property": prop}
    if prop == "pseudo-kleene":
        w = kleene.pseudo_kleene_witness(lat, inv)
        out.update(status="pass" if w is None else "fail", witness=w and [fmt(k) for k in w])
    elif prop == "paraorthomodular":
        w = kleene.paraorthomodular_witness(lat, inv)
        out.update(status="pass" if w is None else "fail", witness=w and [fmt(k) for k in w])
    elif prop == "sharp":
        sharp = np.flatnonzero(kleene.sharp_mask(lat, inv))
        comp = np.flatnonzero(kleene.complemented_mask(lat))
        crit = [k for k, p in enumerate(lat.elements) if kleene.sharp_criterion(space, p)]
        agree = list(sharp) == list(comp) == crit
        out.update(status="pass" if agree else "fail", sharp=_elements(lat, sharp),
                   complemented=_elements(lat, comp), criterion=_elements(lat, crit))
    elif prop == "central":
        cen = kleene.center(lat)
        out.update(status="pass", central=_elements(lat, cen),
                   exact=[encode_pair(p, r.universe) for p in exact_family(space, cap=None)])
    elif prop == "chajda":
        ok, w = kleene.check_chajda_identity(lat, inv)
        out.update(status="info", holds=ok, witness=w and {k: fmt(v) for k, v in w.items()})
    elif prop == "stone":
        st = bz.stone_analysis(lat, space)
        out.update(status="pass" if st.is_stone else "fail", stone=dict(vars(st)))
    else:
        neg = build_neg(lat, neg_spec)
        bzr = bz.check_bz_axioms(lat, inv, neg)
        flag = {"bz": bzr.bz, "pbz": bzr.pbz, "pbz-star": bzr.pbz_star,
                "antiortholattice": bzr.antiortholattice}[prop]
        out.update(status="pass" if flag else "fail", negation=neg_spec or "from-equivalence:closure",
                   axioms=bzr.axioms,
                   witnesses={k: (None if v is None else
                                  [fmt(x) for x in (v if isinstance(v, tuple) else (v,))])
                              for k, v in bzr.witnesses.items()},
                   bz=bzr.bz, pbz=bzr.pbz, bz_star=bzr.bz_star, pbz_star=bzr.pbz_star,
                   antiortholattice=bzr.antiortholattice,
                   clopen=_elements(lat, bzr.clopen), table=_neg_table(lat, neg))
    rep.sections["check"] = out
    return out["status"]


def dot_text(r: Relation, target: str, neg_spec, cap) -> str:
    space = ApproxSpace(r)
    u = r.universe
    if target == "rs":
        rs = build_rs(space, cap=cap)
        return hasse_dot(rs.pairs, pair_order(rs.pairs), u, name="rs")
    lat = build_dm(space, cap=cap)
    if target == "dm":
        return lattice_dot(lat, u, name="dm")
    if target == "center":
        return lattice_dot(lat, u, name="center", highlighted=kleene.center(lat))
    if target == "clopen":
        neg = build_neg(lat, neg_spec)
        return lattice_dot(lat, u, name="clopen", highlighted=neg.image())
    raise ParseError("unknown target", target)


# -- argument handling -------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="roughdm", description="Rough sets of a reflexive relation and their completion.",
        epilog="exit codes: 0 ok, 1 property fails, 2 usage or parse error, 3 size cap exceeded")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DM_CAP, help="largest universe to enumerate")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="verb", required=True)
    helps = {"info": "relation flags, closure classes and sizes",
             "rs": "list the rough sets in canonical order",
             "dm": "list the completion, marking added elements"}
    for verb in ("info", "rs", "dm"):
        sp = sub.add_parser(verb, parents=[common], help=helps[verb])
        sp.add_argument("file")
    sp = sub.add_parser("check", parents=[common], help="run one named property check")
    sp.add_argument("file")
    sp.add_argument("property", choices=PROPERTIES)
    sp.add_argument("--neg", help="from-equivalence:ab|c, from-subortholattice:a/ab;c/bc or trivial")
    sp = sub.add_parser("dot", parents=[common], help="Hasse diagram in Graphviz DOT")
    sp.add_argument("file")
    sp.add_argument("--target", choices=("rs", "dm", "center", "clopen"), default="dm")
    sp.add_argument("--neg")
    sp = sub.add_parser("mine", parents=[common], help="run the theorem suite over many relations")
    sp.add_argument("--n", type=int, required=True)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--sample", type=int, metavar="COUNT")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--filter", choices=[k for k in FILTERS if k], default="all")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--full", action="store_true", help="include every check of every instance")
    return p


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _mine_report(args) -> tuple[dict, int]:
    if args.sample is not None:
        reports = mine(args.n, "sample", args.sample, args.seed, args.filter, args.workers)
        mode = {"mode": "sample", "count": args.sample, "seed": args.seed}
    else:
        reports = mine(args.n, "exhaustive", filter=args.filter, workers=args.workers)
        mode = {"mode": "exhaustive"}
    summary = summarize(reports)
    if args.full:
        instances = [r.to_dict() for r in reports]
    else:
        instances = [{"relation": r.relation["neighborhoods"], "sizes": r.sizes,
                      "failures": [c.name for c in r.failures]} for r in reports]
    doc = {"tool": ReportDocument({}, {}, {}).tool, "n": args.n, "filter": args.filter, **mode,
           "summary": summary, "instances": instances}
    return doc, EXIT_VIOLATION if summary["violations"] else EXIT_OK


def run(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.verb == "mine":
            if args.sample is None and args.n > 4:
                raise PreconditionError("exhaustive mining needs --n ≤ 4; use --sample")
            data, code = _mine_report(args)
        else:
            doc, r = load_relation(args.file)
            if args.verb == "dot":
                _emit(dot_text(r, args.target, args.neg, args.cap), args.out)
                return EXIT_OK
            rep = base_report(doc, r)
            code = EXIT_OK
            if args.verb == "info":
                section_info(rep, r, args.cap)
            elif args.verb == "rs":
                section_rs(rep, r, args.cap)
            elif args.verb == "dm":
                section_dm(rep, r, args.cap)
            else:
                if section_check(rep, r, args.property, args.neg, args.cap) == "fail":
                    code = EXIT_VIOLATION
            data = rep.to_dict()
        _emit(dumps(data) if args.format == "json" else render_text(data) + "\n", args.out)
        return code
    except BrokenPipeError:
        raise
    except CapExceeded as exc:
        print(f"roughdm: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParseError, PreconditionError, OSError) as exc:
        print(f"roughdm: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RoughDMError as exc:
        print(f"roughdm: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


def main():
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); not an error for us
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
