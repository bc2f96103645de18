"""Theorem suite over concrete relations, exhaustive enumeration and seeded mining.

Every check is registered in :data:`CHECKS` under a descriptive name.  A check
returns a :class:`CheckResult`; a ``fail`` always carries a witness expressed
with universe labels so that it can be replayed through the library.
"""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Callable, Iterator, Optional

import numpy as np

from . import bz, kleene
from .approximation import ApproxSpace
from .completion import (
    DMLattice, build_dm, dm_matches_oracle, kleene_neg, order_bounds,
)
from .errors import PreconditionError, RoughDMError, TheoremViolation
from .relations import (
    Relation, Universe, classify, equivalence_classes, equivalence_closure,
    is_irredundant_covering_tolerance, relation_inverse,
)
from .rough import (
    RoughPair, build_a_family, build_rs, exact_family, in_a_family, is_exact,
    quasiorder_rs_criterion, rs_is_lattice,
)

PASS, FAIL, SKIP, INFO = "pass", "fail", "skip", "info"
EXHAUSTIVE_MAX = 4
TRANSFER_ORBIT_CAP = 8


@dataclass
class CheckResult:
    name: str
    status: str
    witness: object = None
    note: str = ""


@dataclass
class TheoremSuiteReport:
    relation: dict
    flags: dict
    sizes: dict
    checks: list[CheckResult]
    seconds: float = 0.0

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def status_of(self, name: str) -> str:
        for c in self.checks:
            if c.name == name:
                return c.status
        raise KeyError(name)

    def to_dict(self, timing: bool = False) -> dict:
        d = {"relation": self.relation, "flags": self.flags, "sizes": self.sizes,
             "checks": [asdict(c) for c in self.checks]}
        if timing:
            d["seconds"] = self.seconds
        return d


def describe_relation(r: Relation) -> dict:
    u = r.universe
    return {"universe": list(u.labels),
            "neighborhoods": {u.labels[i]: u.members(row) for i, row in enumerate(r.rows)}}


# -- shared per-instance data ---------------------------------------------------

class Instance:
    """Lazily computed structures for one relation."""

    def __init__(self, relation: Relation):
        self.relation = relation
        self.space = ApproxSpace(relation)
        self.universe: Universe = relation.universe
        self.flags = classify(relation)
        self.n = relation.size
        self.full = self.universe.full

    def fmt(self, k) -> str:
        return self.lat.elements[int(k)].format(self.universe)

    def fset(self, x: int) -> str:
        return self.universe.format(x)

    @cached_property
    def lat(self) -> DMLattice:
        return build_dm(self.space, cap=None)

    @cached_property
    def inv(self) -> np.ndarray:
        return self.lat.inv.map

    @cached_property
    def rs(self):
        return build_rs(self.space, cap=None)

    @cached_property
    def sharp(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(kleene.sharp_mask(self.lat, self.inv))]

    @cached_property
    def center(self) -> list[int]:
        return kleene.center(self.lat)

    @cached_property
    def closure(self) -> Relation:
        return equivalence_closure(self.relation)

    @cached_property
    def exact(self) -> list[RoughPair]:
        return exact_family(self.space, cap=None)

    @cached_property
    def extending(self) -> list[Relation]:
        return bz.extending_equivalences(self.space, cap=None)

    @cached_property
    def equivalence_negs(self) -> list[bz.NegOperator]:
        return [bz.neg_from_equivalence(self.lat, e) for e in self.extending]

    @cached_property
    def structures(self) -> list[bz.PBZStructure]:
        return bz.enumerate_pbz_structures(self.lat, self.inv, cap=None)

    @cached_property
    def special_class(self) -> bool:
        """Quasiorder or tolerance induced by an irredundant covering."""
        return self.flags.quasiorder or is_irredundant_covering_tolerance(self.relation)


# -- registry ---------------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    kind: str          # "theorem" or "finding"
    claim: str
    run: Callable[[Instance], CheckResult]


CHECKS: list[Check] = []


def check(name: str, claim: str, kind: str = "theorem"):
    def deco(fn):
        def run(inst: Instance) -> CheckResult:
            out = fn(inst)
            if isinstance(out, CheckResult):
                return out
            status, witness, note = (out + (None, ""))[:3] if isinstance(out, tuple) else (out, None, "")
            return CheckResult(name, status, witness, note or "")
        CHECKS.append(Check(name, kind, claim, run))
        return fn
    return deco


def _verdict(witness, note: str = ""):
    return (PASS, None, note) if witness is None else (FAIL, witness, note)


# -- completion -------------------------------------------------------------------

@check("completion-matches-cut-oracle",
       "the closed-form completion is isomorphic to the normal-cut completion, fixing rough sets")
def _oracle(inst):
    ok, _ = dm_matches_oracle(inst.lat)
    return _verdict(None if ok else {"dm_size": inst.lat.size})


@check("tables-are-least-bounds", "join/meet formulas give least upper and greatest lower bounds")
def _tables(inst):
    lat = inst.lat
    for table, upper, kind in ((lat.join, True, "join"), (lat.meet, False, "meet")):
        ref = order_bounds(lat.leq, upper=upper)
        bad = np.argwhere(ref != table)
        if len(bad):
            i, j = map(int, bad[0])
            return _verdict({"kind": kind, "x": inst.fmt(i), "y": inst.fmt(j)})
    return _verdict(None)


@check("involution-on-completion", "∼ maps the completion into itself and reverses order")
def _involution(inst):
    lat = inst.lat
    for p in lat.elements:
        if kleene_neg(p, inst.full) not in lat.index:
            return _verdict({"x": p.format(inst.universe)})
    s = inst.inv
    bad = np.argwhere(lat.leq & ~lat.leq[np.ix_(s, s)].T)
    return _verdict({"x": inst.fmt(bad[0][0]), "y": inst.fmt(bad[0][1])} if len(bad) else None)


@check("pseudo-kleene-law", "a∧∼a ≤ b∨∼b on the completion")
def _pk(inst):
    w = kleene.pseudo_kleene_witness(inst.lat, inst.inv)
    return _verdict(w and {"a": inst.fmt(w[0]), "b": inst.fmt(w[1])})


@check("pseudo-kleene-poset-on-rough-sets", "p ≤ ∼p and ∼q ≤ q imply p ≤ q among rough sets")
def _pk_poset(inst):
    ps = inst.rs.pairs
    full = inst.full
    low = [p for p in ps if p.leq(kleene_neg(p, full))]
    high = [q for q in ps if kleene_neg(q, full).leq(q)]
    for p in low:
        for q in high:
            if not p.leq(q):
                return _verdict({"p": p.format(inst.universe), "q": q.format(inst.universe)})
    return _verdict(None)


@check("paraorthomodular", "a ≤ b and ∼a∧b = 0 imply a = b")
def _pom(inst):
    w = kleene.paraorthomodular_witness(inst.lat, inst.inv)
    return _verdict(w and {"a": inst.fmt(w[0]), "b": inst.fmt(w[1])})


# -- sharp / complemented -------------------------------------------------------

@check("sharp-complemented-criterion", "sharp ⟺ complemented ⟺ B^▽ = A^△")
def _sharp3(inst):
    lat, space = inst.lat, inst.space
    sharp = kleene.sharp_mask(lat, inst.inv)
    comp = kleene.complemented_mask(lat)
    for k, p in enumerate(lat.elements):
        crit = kleene.sharp_criterion(space, p)
        if not (crit == bool(sharp[k]) == bool(comp[k])):
            return _verdict({"x": inst.fmt(k), "criterion": crit, "sharp": bool(sharp[k]),
                             "complemented": bool(comp[k])})
    return _verdict(None)


@check("complements-unique", "a complement, when it exists, is ∼x")
def _unique(inst):
    cm = kleene.complement_matrix(inst.lat)
    for k in range(inst.lat.size):
        comps = np.flatnonzero(cm[k])
        if len(comps) and (len(comps) != 1 or comps[0] != inst.inv[k]):
            return _verdict({"x": inst.fmt(k), "complements": [inst.fmt(c) for c in comps]})
    return _verdict(None)


@check("sharp-elements-basic", "sharp elements are rough sets, include the bounds, are ∼-closed")
def _sharp_basic(inst):
    lat = inst.lat
    sharp = set(inst.sharp)
    for k in sharp:
        if not lat.in_rs[k]:
            return _verdict({"not_rough_set": inst.fmt(k)})
        if int(inst.inv[k]) not in sharp:
            return _verdict({"not_closed": inst.fmt(k)})
    if lat.bottom not in sharp or lat.top not in sharp:
        return _verdict({"bounds": "missing"})
    return _verdict(None)


@check("bifixed-family", "bi-fixed sets: bounded, closed under complement, pseudo-Kleene poset")
def _afam(inst):
    fam = build_a_family(inst.space, cap=None)
    sets = set(fam.sets)
    full = inst.full
    if 0 not in sets or full not in sets:
        return _verdict({"bounds": "missing"})
    for z in fam.sets:
        if full & ~z not in sets:
            return _verdict({"Z": inst.fset(z)})
        if inst.space.iup(inst.space.low(z)) != z or inst.space.ilow(inst.space.up(z)) != z:
            return _verdict({"not_fixed": inst.fset(z)})
    # pseudo-Kleene poset law with set complement
    low = [z for z in sets if z & ~(full & ~z) == 0]
    high = [z for z in sets if (full & ~z) & ~z == 0]
    for a in low:
        for b in high:
            if a & ~b:
                return _verdict({"Z1": inst.fset(a), "Z2": inst.fset(b)})
    return _verdict(None)


@check("phi-psi-isomorphism", "φ and ψ are inverse order isomorphisms commuting with complements")
def _phipsi(inst):
    space, lat = inst.space, inst.lat
    fam = build_a_family(space, cap=None).sets
    imgs = {}
    for k in inst.sharp:
        p = lat.elements[k]
        z = kleene.phi(space, p)
        if not in_a_family(space, z) or kleene.psi(space, z) != p:
            return _verdict({"x": inst.fmt(k)})
        if kleene.phi(space, lat.elements[inst.inv[k]]) != inst.full & ~z:
            return _verdict({"complement": inst.fmt(k)})
        imgs[k] = z
    if sorted(imgs.values()) != sorted(fam):
        return _verdict({"image": [inst.fset(z) for z in sorted(imgs.values())]})
    for a in inst.sharp:
        for b in inst.sharp:
            if bool(lat.leq[a, b]) != (imgs[a] & ~imgs[b] == 0):
                return _verdict({"x": inst.fmt(a), "y": inst.fmt(b)})
    return _verdict(None)


@check("bifixed-statement-form",
       "sharp elements have the form (Z^▲, Z^▼) as literally stated", kind="finding")
def _stmt_form(inst):
    space = inst.space
    fam = build_a_family(space, cap=None).sets
    literal = sorted(RoughPair(space.up(z), space.low(z)) for z in fam)
    proof = sorted(RoughPair(space.low(z), space.up(z)) for z in fam)
    sharp = sorted(inst.lat.elements[k] for k in inst.sharp)
    return CheckResult("bifixed-statement-form", INFO,
                       {"literal_form_matches": literal == sharp,
                        "proof_form_matches": proof == sharp})


def _closed_families(inst) -> Iterator[list[int]]:
    """Nonempty ∼-closed families of sharp elements, as unions of ∼-orbits."""
    orbits = sorted({tuple(sorted((k, int(inst.inv[k])))) for k in inst.sharp})
    if len(orbits) > TRANSFER_ORBIT_CAP:
        rng = random.Random(len(orbits))
        sels = sorted({rng.randrange(1, 1 << len(orbits)) for _ in range(256)})
    else:
        sels = range(1, 1 << len(orbits))
    for sel in sels:
        fam = []
        for i, o in enumerate(orbits):
            if sel >> i & 1:
                fam.extend(o)
        yield sorted(set(fam))


@check("complete-sublattice-transfer",
       "a ∼-closed family of sharp elements is a complete sublattice iff its φ-image is one; "
       "such sublattices are Boolean")
def _transfer(inst):
    lat = inst.lat
    for fam in _closed_families(inst):
        t = kleene.transfer_check(lat, fam)
        if not t["agree"]:
            return _verdict({"family": [inst.fmt(k) for k in fam]})
        if lat.is_sublattice(fam) and not kleene.is_boolean_sublattice(lat, fam):
            return _verdict({"not_boolean": [inst.fmt(k) for k in fam]})
    return _verdict(None)


@check("sharp-family-sublattice", "whether the sharp elements form a sublattice", kind="finding")
def _csub(inst):
    rep = kleene.c_family_analysis(inst.lat)
    w = {"sublattice": rep.is_sublattice, "boolean": rep.is_boolean,
         "n5": rep.n5 and [inst.fmt(k) for k in rep.n5]}
    if rep.is_sublattice and not rep.is_boolean:
        return CheckResult("sharp-family-sublattice", FAIL, w, "sublattice but not Boolean")
    return CheckResult("sharp-family-sublattice", INFO, w)


@check("chajda-identity", "x∧(∼x∨y) = (x∧∼x)∨(x∧y)", kind="finding")
def _chajda(inst):
    ok, w = kleene.check_chajda_identity(inst.lat, inst.inv)
    if w:
        w = {k: inst.fmt(v) for k, v in w.items()}
    return CheckResult("chajda-identity", INFO, {"holds": ok, "witness": w})


@check("rough-sets-form-lattice", "whether the rough sets are a lattice", kind="finding")
def _rs_lat(inst):
    res = rs_is_lattice(inst.rs)
    return CheckResult("rough-sets-form-lattice", INFO, {"lattice": res.is_lattice,
                                                         "added": len(inst.lat.added)})


# -- exact / central --------------------------------------------------------------

@check("exact-pair-equivalences", "(A,A) rough set ⟺ A^▼=A^▲ ⟺ A^▽=A^△ ⟺ A^▲=A^△=A ⟺ A^▼=A^▽=A")
def _exact5(inst):
    sp = inst.space
    rs = set(inst.rs.pairs)
    for a in range(1 << inst.n):
        c = (RoughPair(a, a) in rs, sp.low(a) == sp.up(a), sp.ilow(a) == sp.iup(a),
             sp.up(a) == sp.iup(a) == a, sp.low(a) == sp.ilow(a) == a)
        if len(set(c)) != 1:
            return _verdict({"A": inst.fset(a), "clauses": list(c)})
    return _verdict(None)


@check("fixpoint-transfer", "A^▲=A ⟺ A^▽=A and A^△=A ⟺ A^▼=A")
def _fix(inst):
    sp = inst.space
    for a in range(1 << inst.n):
        if (sp.up(a) == a) != (sp.ilow(a) == a) or (sp.iup(a) == a) != (sp.low(a) == a):
            return _verdict({"A": inst.fset(a)})
    return _verdict(None)


@check("exact-is-saturated", "(A,A) is exact iff A is a union of closure classes")
def _sat(inst):
    try:
        inst.exact
    except AssertionError as exc:
        return _verdict({"error": str(exc)})
    return _verdict(None)


@check("exact-same-for-inverse-and-closure", "R, R⁻¹ and Rᵉ have the same exact rough sets")
def _exact_inv(inst):
    fams = [inst.exact]
    for rel in (relation_inverse(inst.relation), inst.closure):
        fams.append(exact_family(ApproxSpace(rel), cap=None))
    if not (fams[0] == fams[1] == fams[2]):
        return _verdict({"sizes": [len(f) for f in fams]})
    return _verdict(None)


@check("central-characterisations-agree",
       "central by definition = sharp splitting decomposition = set condition over lower-definable sets")
def _center(inst):
    try:
        inst.center
    except TheoremViolation as exc:
        return _verdict({k: [inst.fmt(i) for i in v] for k, v in exc.witness.items()})
    return _verdict(None)


@check("decomposition-forms-agree", "for sharp a: meet-side and join-side decompositions agree")
def _decomp(inst):
    lat = inst.lat
    idx = np.arange(lat.size)
    for a in inst.sharp:
        b = int(inst.inv[a])
        meet_side = (lat.join[lat.meet[idx, a], lat.meet[idx, b]] == idx).all()
        join_side = (lat.meet[lat.join[idx, a], lat.join[idx, b]] == idx).all()
        if meet_side != join_side:
            return _verdict({"a": inst.fmt(a)})
    return _verdict(None)


@check("exact-is-central", "every exact rough set is central")
def _exact_central(inst):
    cen = set(inst.center)
    for p in inst.exact:
        if inst.lat.index[p] not in cen:
            return _verdict({"x": p.format(inst.universe)})
    return _verdict(None)


@check("central-lower-is-lower-of-upper", "central (A,B) has A = B^▼")
def _cent_low(inst):
    for k in inst.center:
        a, b = inst.lat.elements[k]
        if inst.space.low(b) != a:
            return _verdict({"x": inst.fmt(k)})
    return _verdict(None)


@check("exact-is-common-center", "exact = Cen(L(R)) ∩ Cen(L(R⁻¹))")
def _common(inst):
    other = build_dm(ApproxSpace(relation_inverse(inst.relation)), cap=None)
    mine = {inst.lat.elements[k] for k in inst.center}
    theirs = {other.elements[k] for k in kleene.center(other)}
    if mine & theirs != set(inst.exact):
        return _verdict({"common": sorted(p.format(inst.universe) for p in mine & theirs)})
    return _verdict(None)


@check("tolerance-center-is-exact", "for tolerances the center is the exact family")
def _tol(inst):
    if not inst.flags.tolerance:
        return SKIP
    got = sorted(inst.lat.elements[k] for k in inst.center)
    return _verdict(None if got == sorted(inst.exact) else {"center": [p.format(inst.universe) for p in got]})


@check("special-class-sharp-central-exact",
       "quasiorders and irredundant-covering tolerances: completion equals rough sets, "
       "which are distributive, and sharp = complemented = central = exact")
def _special(inst):
    if not inst.special_class:
        return SKIP
    lat = inst.lat
    if not lat.in_rs.all():
        return _verdict({"added": [inst.fmt(k) for k in lat.added]})
    if not lat.is_distributive():
        return _verdict({"distributive": False})
    comp = [int(i) for i in np.flatnonzero(kleene.complemented_mask(lat))]
    exact = sorted(lat.index[p] for p in inst.exact)
    if not (inst.sharp == comp == inst.center == exact):
        return _verdict({"sharp": [inst.fmt(k) for k in inst.sharp],
                         "central": [inst.fmt(k) for k in inst.center]})
    return _verdict(None)


@check("quasiorder-membership-criterion",
       "quasiorder: (A,B) is a rough set iff A ⊆ B and singletons lie in A ∪ Bᶜ")
def _qo_crit(inst):
    if not inst.flags.quasiorder:
        return SKIP
    sp = inst.space
    rs = set(inst.rs.pairs)
    for a in sp.lower_definable():
        for b in sp.upper_definable():
            if quasiorder_rs_criterion(sp, a, b) != (RoughPair(a, b) in rs):
                return _verdict({"A": inst.fset(a), "B": inst.fset(b)})
    return _verdict(None)


# -- Brouwer–Zadeh -------------------------------------------------------------------

def _neg_checks(inst, neg: bz.NegOperator, label: str):
    lat, inv = inst.lat, inst.inv
    rep = bz.check_bz_axioms(lat, inv, neg)
    if not rep.pbz:
        bad = [k for k in ("BZ1", "BZ2", "BZ3", "BZ4") if not rep.axioms[k]]
        return {"negation": label, "not_pbz": bad or "paraorthomodular"}
    if rep.violations:
        return {"negation": label, "derived": rep.violations}
    laws = bz.modal_law_failures(lat, inv, neg)
    if laws:
        return {"negation": label, "modal": laws}
    try:
        clopen = bz.clopen_family(lat, inv, neg)
    except TheoremViolation as exc:
        return {"negation": label, "clopen": str(exc)}
    problem = bz.check_subortholattice(lat, inv, clopen)
    if problem:
        return {"negation": label, "subortholattice": problem}
    if not lat.is_complete_sublattice(clopen):
        return {"negation": label, "clopen_not_complete": True}
    if bz.neg_from_subortholattice(lat, inv, clopen) != neg:
        return {"negation": label, "not_recovered": True}
    closure = bz.closure_law_failures(lat, neg)
    if closure:
        return {"negation": label, "closure": closure}
    if sorted(rep.brouwer_sharp) != clopen:
        return {"negation": label, "brouwer_sharp": [inst.fmt(k) for k in rep.brouwer_sharp]}
    return None


@check("extending-equivalence-lemma", "for E ⊇ R: X^{↑▲} = X^{↑▼} = X^↑ and X^{↓▲} = X^{↓▼} = X^↓")
def _elemma(inst):
    sp = inst.space
    for e in inst.extending:
        es = ApproxSpace(e)
        for x in range(1 << inst.n):
            for y in (es.up(x), es.low(x)):
                if not (sp.up(y) == sp.low(y) == y):
                    return _verdict({"E": equivalence_classes(e).format(), "X": inst.fset(x)})
    return _verdict(None)


@check("equivalence-negations-are-pbz",
       "each extending equivalence gives a PBZ negation obeying the modal and clopen laws")
def _eq_negs(inst):
    try:
        negs = inst.equivalence_negs
    except TheoremViolation as exc:
        return _verdict({"ill_defined": str(exc)})
    for e, neg in zip(inst.extending, negs):
        w = _neg_checks(inst, neg, equivalence_classes(e).format())
        if w:
            return _verdict(w)
    return _verdict(None)


@check("pbz-structures-bijection",
       "PBZ negations correspond bijectively to ∼-closed atomistic Boolean sublattices of sharp elements")
def _bij(inst):
    try:
        found = inst.structures
    except TheoremViolation as exc:
        return _verdict({"roundtrip": str(exc)})
    negs = [s.neg for s in found]
    if len(set(negs)) != len(negs):
        return _verdict({"duplicate_negations": True})
    if len({tuple(s.members) for s in found}) != len(found):
        return _verdict({"duplicate_sublattices": True})
    for s in found:
        w = _neg_checks(inst, s.neg, "+".join(inst.fmt(a) for a in s.atoms))
        if w:
            return _verdict(w)
    brute = bz.all_bz_negations(inst.lat, inst.inv)
    if set(brute) != set(negs):
        return _verdict({"brute_force": len(brute), "enumerated": len(negs)})
    return (PASS, None, f"{len(negs)} structures")


@check("special-class-negations-from-equivalences",
       "quasiorders and irredundant-covering tolerances: PBZ negations are exactly those of extending equivalences")
def _thm_char(inst):
    if not inst.special_class:
        return SKIP
    if not inst.lat.in_rs.all():
        return _verdict({"completion_differs": True})
    eq = inst.equivalence_negs
    if len(set(eq)) != len(eq):
        return _verdict({"two_equivalences_same_negation": True})
    if set(eq) != {s.neg for s in inst.structures}:
        return _verdict({"equivalences": len(eq), "structures": len(inst.structures)})
    return _verdict(None)


@check("quasiorder-bz8-iff-closure",
       "quasiorder: BZ8 holds for the negation of E iff E is the closure; otherwise the constructed pair breaks it")
def _thm_star(inst):
    if not inst.flags.quasiorder:
        return SKIP
    lat, inv = inst.lat, inst.inv
    closure_rows = inst.closure.rows
    for e, neg in zip(inst.extending, inst.equivalence_negs):
        ok, wit = bz.pbz_star_check(lat, inv, neg, e)
        label = equivalence_classes(e).format()
        if ok != (e.rows == closure_rows):
            return _verdict({"E": label, "bz8": ok, "witness": wit and inst.fmt(wit)})
        if e.rows != closure_rows:
            pair = bz.bz8_counterexample(inst.space, e)
            if pair not in lat.index or not lat.in_rs[lat.index[pair]]:
                return _verdict({"E": label, "construction_not_rough_set": pair.format(inst.universe)})
            k = lat.index[pair]
            n = neg.map
            if lat.leq[n[lat.meet[k, inv[k]]], lat.join[n[k], n[inv[k]]]]:
                return _verdict({"E": label, "construction_satisfies_bz8": pair.format(inst.universe)})
    if not lat.is_distributive():
        return _verdict({"distributive": False})
    return _verdict(None)


@check("antiortholattice-iff-total-closure",
       "quasiorders and irredundant-covering tolerances: an antiortholattice exists iff Rᵉ = U×U, "
       "with the trivial negation")
def _anti(inst):
    if not inst.special_class:
        return SKIP
    lat, inv = inst.lat, inst.inv
    antis = [s.neg for s in inst.structures if bz.is_antiortholattice(lat, inv, s.neg)]
    total = all(r == inst.full for r in inst.closure.rows)
    if total != bool(antis):
        return _verdict({"total": total, "antiortholattices": len(antis)})
    if total and antis != [bz.trivial_neg(lat)]:
        return _verdict({"not_trivial": True})
    return _verdict(None)


@check("kleene-stone-gives-pbz-star",
       "a Kleene–Stone algebra whose complemented and sharp elements coincide is PBZ* under *")
def _ks(inst):
    lat, inv = inst.lat, inst.inv
    if not bz.kleene_stone_premise(lat, inv):
        return SKIP
    rep = bz.check_bz_axioms(lat, inv, bz.star_neg(lat))
    return _verdict(None if rep.pbz_star else {"axioms": rep.axioms})


@check("equivalence-stone-pbz-star",
       "equivalences: pseudocomplements exist, (A,B)* = (Bᶜ,Bᶜ), Stone identity, and * is PBZ*")
def _eqstone(inst):
    if not inst.flags.equivalence:
        return SKIP
    lat = inst.lat
    st = bz.stone_analysis(lat, inst.space)
    if not (st.pseudocomplemented and st.formula_matches and st.stone_identity and st.is_stone):
        return _verdict({"stone": asdict(st)})
    rep = bz.check_bz_axioms(lat, inst.inv, bz.star_neg(lat))
    if not (rep.pbz_star and all(rep.axioms.values())):
        return _verdict({"axioms": rep.axioms})
    return _verdict(None)


@check("stone-and-composites",
       "quasiorder: Stone-ness compared with R⁻¹∘R = Rᵉ and with R∘R⁻¹ = Rᵉ", kind="finding")
def _stone_comp(inst):
    if not inst.flags.quasiorder:
        return CheckResult("stone-and-composites", SKIP)
    st = bz.stone_analysis(inst.lat, inst.space)
    closure_neg = inst.equivalence_negs[0]
    star = bz.star_neg(inst.lat)
    return CheckResult("stone-and-composites", INFO, {
        "stone": st.is_stone, **st.composites,
        "closure_negation_is_pseudocomplement": star is not None and star == closure_neg})


# -- running --------------------------------------------------------------------------

def run_theorem_suite(relation: Relation) -> TheoremSuiteReport:
    if not classify(relation).reflexive:
        raise PreconditionError("the theorem suite needs a reflexive relation")
    start = time.perf_counter()
    inst = Instance(relation)
    results = []
    for c in CHECKS:
        try:
            res = c.run(inst)
        except (RoughDMError, AssertionError) as exc:
            res = CheckResult(c.name, FAIL, {"error": f"{type(exc).__name__}: {exc}",
                                             "witness": _plain(getattr(exc, "witness", None))})
        results.append(res)
    sizes = {}
    for key, get in (("rs", lambda: len(inst.rs)), ("dm", lambda: inst.lat.size),
                     ("added", lambda: len(inst.lat.added)), ("sharp", lambda: len(inst.sharp)),
                     ("central", lambda: len(inst.center)), ("exact", lambda: len(inst.exact)),
                     ("extending_equivalences", lambda: len(inst.extending)),
                     ("pbz_structures", lambda: len(inst.structures))):
        try:
            sizes[key] = get()
        except (RoughDMError, AssertionError):
            sizes[key] = None   # the failing check already carries the witness
    return TheoremSuiteReport(describe_relation(relation), classify(relation).as_dict(), sizes,
                              results, time.perf_counter() - start)


def _plain(x):
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return repr(x)


FILTERS = {
    None: lambda f: True,
    "all": lambda f: True,
    "tolerance": lambda f: f.tolerance,
    "quasiorder": lambda f: f.quasiorder,
    "equivalence": lambda f: f.equivalence,
}


def _relation_from_bits(u: Universe, code: int) -> Relation:
    n = u.size
    rows = [1 << i for i in range(n)]
    k = 0
    for i in range(n):
        for j in range(n):
            if i != j:
                if code >> k & 1:
                    rows[i] |= 1 << j
                k += 1
    return Relation(u, tuple(rows))


def enumerate_reflexive_relations(n: int, filter: Optional[str] = None) -> Iterator[Relation]:
    """All reflexive relations on ``n`` points, ordered by their off-diagonal bit code."""
    if n > EXHAUSTIVE_MAX:
        raise PreconditionError(f"exhaustive enumeration is limited to n ≤ {EXHAUSTIVE_MAX}")
    if n < 1:
        raise PreconditionError("n must be positive")
    keep = FILTERS[filter]
    u = Universe.of_size(n)
    for code in range(1 << (n * n - n)):
        r = _relation_from_bits(u, code)
        if keep(classify(r)):
            yield r


def sample_reflexive_relations(n: int, count: int, seed: int,
                               filter: Optional[str] = None) -> Iterator[Relation]:
    """``count`` seeded uniform samples, rejecting those outside ``filter``."""
    rng = random.Random(seed)
    keep = FILTERS[filter]
    u = Universe.of_size(n)
    made = 0
    while made < count:
        r = _relation_from_bits(u, rng.getrandbits(n * n - n))
        if keep(classify(r)):
            made += 1
            yield r


def _suite_worker(rows_and_labels):
    labels, rows = rows_and_labels
    return run_theorem_suite(Relation(Universe(labels), rows))


def mine(n: int, mode: str = "exhaustive", count: int = 0, seed: int = 0,
         filter: Optional[str] = None, workers: int = 1) -> list[TheoremSuiteReport]:
    """Run the suite over a relation stream; results come back in stream order."""
    if mode == "exhaustive":
        stream = enumerate_reflexive_relations(n, filter)
    elif mode == "sample":
        stream = sample_reflexive_relations(n, count, seed, filter)
    else:
        raise PreconditionError(f"unknown mode {mode!r}")
    if workers <= 1:
        return [run_theorem_suite(r) for r in stream]
    from concurrent.futures import ProcessPoolExecutor
    jobs = [(r.universe.labels, r.rows) for r in stream]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_suite_worker, jobs, chunksize=16))


def summarize(reports: list[TheoremSuiteReport]) -> dict:
    violations = []
    for i, rep in enumerate(reports):
        for c in rep.failures:
            violations.append({"instance": i, "check": c.name, "witness": _plain(c.witness)})
    return {"instances": len(reports), "violations": len(violations), "details": violations}


def self_audit() -> list[str]:
    """Registered theorem checks lacking a claim description (should be empty)."""
    return [c.name for c in CHECKS if not c.claim]
