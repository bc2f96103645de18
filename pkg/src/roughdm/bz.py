"""Brouwer–Zadeh negations on the completion.

A negation is always an explicit table (:class:`NegOperator`), whichever way it
was constructed, so that every construction goes through the same axiom scan.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .approximation import ApproxSpace
from .completion import DMLattice, FiniteLattice, Involution
from .errors import CapExceeded, NotAnEquivalence, PreconditionError, TheoremViolation
from .kleene import (
    _map, complement_matrix, is_boolean_sublattice, paraorthomodular_witness,
    pseudo_kleene_witness, sharp_mask,
)
from .relations import (
    Partition, Relation, bits, equivalence_classes, equivalence_closure, is_equivalence,
    relation_compose, relation_inverse, set_partitions,
)
from .rough import RoughPair, check_cap

EQUIV_CAP = 10
PBZ_CAP = 512


class NegOperator:
    """A total map on the elements of a lattice, given by index."""

    def __init__(self, lattice: FiniteLattice, mapping, name: str = ""):
        self.lattice = lattice
        self.map = np.asarray(mapping, dtype=np.intp)
        self.name = name
        if self.map.shape != (lattice.size,):
            raise PreconditionError("negation table has the wrong length")
        if len(self.map) and (self.map.min() < 0 or self.map.max() >= lattice.size):
            raise PreconditionError("negation table points outside the lattice")

    def __call__(self, i: int) -> int:
        return int(self.map[i])

    def __eq__(self, other) -> bool:
        return isinstance(other, NegOperator) and bool((self.map == other.map).all())

    def __hash__(self):
        return hash(self.map.tobytes())

    def __repr__(self):
        return f"NegOperator({self.name or list(self.map)})"

    def image(self) -> list[int]:
        return sorted(set(map(int, self.map)))


def trivial_neg(lat: FiniteLattice) -> NegOperator:
    """Bottom goes to top, everything else to bottom."""
    m = np.full(lat.size, lat.bottom, dtype=np.intp)
    m[lat.bottom] = lat.top
    return NegOperator(lat, m, "trivial")


# -- axiom scan -----------------------------------------------------------------

def _first(mask: np.ndarray):
    hit = np.argwhere(mask)
    if not len(hit):
        return None
    w = tuple(int(v) for v in hit[0])
    return w[0] if len(w) == 1 else w


@dataclass
class BZReport:
    axioms: dict[str, bool]
    witnesses: dict[str, object]
    pseudo_kleene: bool
    paraorthomodular: bool
    bz: bool
    pbz: bool
    bz_star: bool
    pbz_star: bool
    antiortholattice: bool
    clopen: list[int]
    brouwer_sharp: list[int]
    violations: list[str] = field(default_factory=list)


def check_bz_axioms(lat: FiniteLattice, inv, neg: NegOperator) -> BZReport:
    s = _map(inv)
    n = neg.map
    idx = np.arange(lat.size)
    leq, j, m = lat.leq, lat.join, lat.meet
    bot, top = lat.bottom, lat.top
    nn = n[n]
    fails = {
        "BZ1": m[idx, n] != bot,
        "BZ2": ~leq[idx, nn],
        "BZ3": leq & ~leq[np.ix_(n, n)].T,
        "BZ4": s[n] != nn,
        "BZ5": ~leq[n, s],
        "BZ6": n[nn] != n,
        "BZ7": (m[n, s[n]] != bot) | (j[n, s[n]] != top),
        "BZ8": ~leq[n[m[idx, s]], j[n, n[s]]],
    }
    witnesses = {k: _first(v) for k, v in fails.items()}
    axioms = {k: w is None for k, w in witnesses.items()}
    pk = pseudo_kleene_witness(lat, s)
    pom = paraorthomodular_witness(lat, s)
    witnesses["pseudo_kleene"], witnesses["paraorthomodular"] = pk, pom
    bz = pk is None and all(axioms[k] for k in ("BZ1", "BZ2", "BZ3", "BZ4"))
    pbz = bz and pom is None
    bz_star = bz and axioms["BZ8"]
    pbz_star = pbz and axioms["BZ8"]
    sharp = sharp_mask(lat, s)
    anti = pbz_star and int(sharp.sum()) == (1 if lat.size == 1 else 2)
    violations = []
    if bz:
        for k in ("BZ5", "BZ6", "BZ7"):
            if not axioms[k]:
                violations.append(f"{k} fails although BZ1-BZ4 hold (at {witnesses[k]})")
    clopen = sorted(set(map(int, n))) if bz else []
    bsharp = [int(i) for i in np.flatnonzero(j[idx, n] == top)]
    return BZReport(axioms, witnesses, pk is None, pom is None, bz, pbz, bz_star,
                    pbz_star, anti, clopen, bsharp, violations)


def diamond(lat: FiniteLattice, inv, neg: NegOperator, x: int) -> int:
    """``◇x = ¬¬x``."""
    return int(neg.map[neg.map[x]])


def box(lat: FiniteLattice, inv, neg: NegOperator, x: int) -> int:
    """``◻x = ¬∼x``."""
    return int(neg.map[_map(inv)[x]])


def modal_law_failures(lat: FiniteLattice, inv, neg: NegOperator) -> list[str]:
    """Interior/closure laws of ``◻`` and ``◇``; empty when all hold."""
    s = _map(inv)
    n = neg.map
    dia = n[n]
    bx = n[s]
    idx = np.arange(lat.size)
    leq = lat.leq
    out = []
    if not (leq[bx, idx].all() and leq[idx, dia].all()):
        out.append("box below identity below diamond")
    mono = leq & ~(leq[np.ix_(bx, bx)] & leq[np.ix_(dia, dia)])
    if mono.any():
        out.append("monotone")
    if not ((bx[bx] == bx).all() and (dia[dia] == dia).all()):
        out.append("idempotent")
    if not ((bx[dia] == dia).all() and (dia[bx] == bx).all()):
        out.append("box of diamond and diamond of box")
    if not ((s[dia] == bx[s]).all() and (s[bx] == dia[s]).all()):
        out.append("involution swaps box and diamond")
    if not ((bx == s[dia[s]]).all() and (dia == s[bx[s]]).all()):
        out.append("interdefinability")
    return out


def clopen_family(lat: FiniteLattice, inv, neg: NegOperator) -> list[int]:
    """The image of ``¬``, cross-checked against the ◇-closed and ◻-open elements."""
    s = _map(inv)
    n = neg.map
    image = sorted(set(map(int, n)))
    closed = [int(i) for i in np.flatnonzero(n[n] == np.arange(lat.size))]
    opened = [int(i) for i in np.flatnonzero(n[s] == np.arange(lat.size))]
    if not (image == closed == opened):
        raise TheoremViolation("image, closed and open descriptions differ",
                               witness={"image": image, "closed": closed, "open": opened})
    return image


def closure_law_failures(lat: FiniteLattice, neg: NegOperator) -> list[str]:
    """Closure-operator facts for ``◇`` against its closed family."""
    n = neg.map
    dia = n[n]
    closed = sorted(set(map(int, dia)))
    closed_set = set(closed)
    out = []
    if sorted(int(i) for i in np.flatnonzero(dia == np.arange(lat.size))) != closed:
        out.append("closed elements are the image")
    for x in range(lat.size):
        above = [a for a in closed if lat.leq[x, a]]
        if lat.meet_all(above) != dia[x]:
            out.append(f"closure is meet of closed elements above ({x})")
            break
    for a in closed:
        for b in closed:
            if int(dia[lat.join[a, b]]) not in closed_set or int(lat.meet[a, b]) not in closed_set:
                out.append(f"closed family join/meet ({a},{b})")
                return out
    return out


# -- negation constructions ---------------------------------------------------

def _e_lower(e: Relation):
    rows = e.rows

    def low(x: int) -> int:
        out = 0
        for i, r in enumerate(rows):
            if r & ~x == 0:
                out |= 1 << i
        return out
    return low


def _require_extension(space: ApproxSpace, e: Relation):
    if e.universe != space.universe:
        raise PreconditionError("equivalence lives on another universe")
    if not is_equivalence(e):
        raise NotAnEquivalence("E is not an equivalence")
    if not space.relation.issubset(e):
        raise PreconditionError("E does not contain R")


def neg_from_equivalence(lat: DMLattice, e: Relation) -> NegOperator:
    """``¬(A, B) = (Bᶜ↓, Bᶜ↓)`` with ``↓`` the lower approximation of ``e``."""
    space = lat.space
    _require_extension(space, e)
    low = _e_lower(e)
    full = space.full
    out = []
    for p in lat.elements:
        c = low(full & ~p.upper)
        try:
            out.append(lat.index[RoughPair(c, c)])
        except KeyError:
            raise TheoremViolation("negation value is not in the completion",
                                   witness={"element": p, "value": c}) from None
    return NegOperator(lat, out, f"equivalence {equivalence_classes(e).format()}")


def extending_equivalences(space: ApproxSpace, cap: Optional[int] = EQUIV_CAP) -> list[Relation]:
    """All equivalences containing the relation, finest first."""
    check_cap(space.n, cap)
    base = equivalence_classes(equivalence_closure(space.relation))
    out = []
    for blocks in set_partitions(list(base.blocks)):
        merged = tuple(_union(b) for b in blocks)
        out.append(Partition(space.universe, merged))
    out.sort(key=lambda p: -len(p.blocks))
    return [p.relation() for p in out]


def _union(masks) -> int:
    acc = 0
    for x in masks:
        acc |= x
    return acc


def check_subortholattice(lat: FiniteLattice, inv, members: Iterable[int]) -> Optional[str]:
    """Name the first failed condition, or None for a complete subortholattice."""
    s = _map(inv)
    members = sorted(set(members))
    mset = set(members)
    if lat.bottom not in mset or lat.top not in mset:
        return "must contain bottom and top"
    if not lat.is_sublattice(members):
        return "not closed under join and meet"
    if any(int(s[k]) not in mset for k in members):
        return "not closed under the involution"
    sharp = sharp_mask(lat, s)
    if not all(sharp[k] for k in members):
        return "has a member that is not sharp"
    return None


def neg_from_subortholattice(lat: FiniteLattice, inv, members: Iterable[int]) -> NegOperator:
    """``¬x`` is the join of the members below ``∼x``."""
    members = sorted(set(members))
    problem = check_subortholattice(lat, inv, members)
    if problem:
        raise PreconditionError(f"not a complete subortholattice: {problem}")
    s = _map(inv)
    sub = np.asarray(members, dtype=np.intp)
    out = [lat.join_all(sub[lat.leq[sub, s[x]]]) for x in range(lat.size)]
    return NegOperator(lat, out, "subortholattice")


def neg_from_subortholattice_sets(lat: DMLattice, members: Iterable[int]) -> NegOperator:
    """Same construction, selecting members ``(X, Y)`` with ``X∩B = ∅`` and ``Y∩A = ∅``."""
    pairs = [(k, lat.elements[k]) for k in sorted(set(members))]
    out = []
    for a, b in lat.elements:
        out.append(lat.join_all(k for k, (x, y) in pairs if not x & b and not y & a))
    return NegOperator(lat, out, "subortholattice")


# -- enumeration of all PBZ structures -----------------------------------------

@dataclass
class PBZStructure:
    atoms: list[int]
    members: list[int]
    neg: NegOperator


def _atom_sets(lat: FiniteLattice, candidates: list[int]):
    """Sets of pairwise disjoint candidates whose join is top, in lexicographic order."""
    m, j = lat.meet, lat.join
    bot, top = lat.bottom, lat.top

    def rec(start, chosen, acc):
        if acc == top:
            yield list(chosen)
            return
        for k in range(start, len(candidates)):
            c = candidates[k]
            if all(m[c, d] == bot for d in chosen):
                chosen.append(c)
                yield from rec(k + 1, chosen, int(j[acc, c]))
                chosen.pop()
    yield from rec(0, [], bot)


def _generated(lat: FiniteLattice, atoms: list[int]) -> Optional[list[int]]:
    """Joins of all subsets of ``atoms``; None if two subsets collide."""
    seen = {}
    for sel in range(1 << len(atoms)):
        v = lat.join_all(atoms[i] for i in bits(sel))
        if v in seen:
            return None
        seen[v] = sel
    return sorted(seen)


def enumerate_pbz_structures(lat: FiniteLattice, inv, cap: Optional[int] = PBZ_CAP) -> list[PBZStructure]:
    """Every ∼-closed atomistic Boolean sublattice of sharp elements, with its negation.

    Both round trips (members → negation → clopen family, and back) are checked.
    """
    if cap is not None and lat.size > cap:
        raise CapExceeded("pbz enumeration", cap, lat.size)
    s = _map(inv)
    sharp = sharp_mask(lat, s)
    cands = [int(i) for i in np.flatnonzero(sharp) if i != lat.bottom]
    out = []
    if lat.size == 1:
        cands = []
    for atoms in _atom_sets(lat, cands):
        members = _generated(lat, atoms)
        if members is None or check_subortholattice(lat, s, members) is not None:
            continue
        if not is_boolean_sublattice(lat, members):
            continue
        neg = neg_from_subortholattice(lat, s, members)
        if clopen_family(lat, s, neg) != members:
            raise TheoremViolation("clopen family differs from the generating sublattice",
                                   witness={"atoms": atoms})
        again = neg_from_subortholattice(lat, s, neg.image())
        if again != neg:
            raise TheoremViolation("negation is not recovered from its clopen family",
                                   witness={"atoms": atoms})
        out.append(PBZStructure(atoms, members, neg))
    return out


def all_bz_negations(lat: FiniteLattice, inv, limit: int = 200_000) -> list[NegOperator]:
    """Brute-force search for every map satisfying BZ1–BZ4.

    Independent of any sublattice theory: a backtracking search over tables
    with antitonicity, ``a ∧ ¬a = 0`` and ``∼¬a = ¬¬a`` enforced as soon as the
    values involved are known.  ``limit`` bounds the number of search nodes.
    """
    s = _map(inv)
    size = lat.size
    leq, m = lat.leq, lat.meet
    bot = lat.bottom
    table = [-1] * size
    order = sorted(range(size), key=lambda i: (-int(leq[i].sum()), i))
    found = []
    nodes = 0

    def ok(a, y):
        if m[a, y] != bot:
            return False
        for b in range(size):
            nb = table[b]
            if nb < 0:
                continue
            if leq[a, b] and not leq[nb, y]:
                return False
            if leq[b, a] and not leq[y, nb]:
                return False
        return True

    def assign(a, y, trail):
        # place ¬a = y and the values forced by ∼¬a = ¬¬a
        stack = [(a, y)]
        while stack:
            u, v = stack.pop()
            if table[u] >= 0:
                if table[u] != v:
                    return False
                continue
            if not ok(u, v):
                return False
            table[u] = v
            trail.append(u)
            stack.append((v, int(s[v])))
        return True

    def rec(k):
        nonlocal nodes
        nodes += 1
        if nodes > limit:
            raise CapExceeded("bz search nodes", limit, nodes)
        while k < size and table[order[k]] >= 0:
            k += 1
        if k == size:
            t = np.asarray(table, dtype=np.intp)
            if leq[np.arange(size), t[t]].all():
                found.append(NegOperator(lat, t.copy()))
            return
        a = order[k]
        for y in range(size):
            trail = []
            if assign(a, y, trail):
                rec(k + 1)
            for u in trail:
                table[u] = -1

    rec(0)
    found.sort(key=lambda g: tuple(g.map))
    return found


# -- BZ8 on quasiorders --------------------------------------------------------

def bz8_set_condition(lat: DMLattice, e: Relation):
    """First rough set with ``(A ∪ Bᶜ)↓ ⊄ A↓ ∪ Bᶜ↓``, or None."""
    low = _e_lower(e)
    full = lat.space.full
    for k, (a, b) in enumerate(lat.elements):
        if not lat.in_rs[k]:
            continue
        bc = full & ~b
        if low(a | bc) & ~(low(a) | low(bc)):
            return k
    return None


def pbz_star_check(lat: FiniteLattice, inv, neg: NegOperator, e: Optional[Relation] = None):
    """Exhaustive BZ8 scan, returning ``(holds, witness)``.

    When the lattice comes from a quasiorder and ``e`` generated ``neg``, the
    set-level condition is evaluated as well and must agree with the scan.
    """
    rep = check_bz_axioms(lat, inv, neg)
    ok, wit = rep.axioms["BZ8"], rep.witnesses["BZ8"]
    if e is not None and isinstance(lat, DMLattice):
        from .relations import classify
        if classify(lat.space.relation).quasiorder:
            set_wit = bz8_set_condition(lat, e)
            if (set_wit is None) != ok:
                raise TheoremViolation("BZ8 scan and set condition disagree",
                                       witness={"scan": wit, "set": set_wit})
    return ok, wit


def bz8_counterexample(space: ApproxSpace, e: Relation) -> Optional[RoughPair]:
    """For ``e`` strictly coarser than the equivalence closure, the rough set
    ``(x/Rᵉ ∪ K, x/Rᵉ ∪ Hᶜ)`` breaking BZ8; None when ``e`` equals the closure."""
    _require_extension(space, e)
    closure = equivalence_closure(space.relation)
    if e.rows == closure.rows:
        return None
    full = space.full
    h = next(e.rows[i] for i in range(space.n) if e.rows[i] != closure.rows[i])
    x = (h & -h).bit_length() - 1
    sing = space.singletons()
    k = 0
    for z in bits(sing & ~h):
        k |= closure.rows[z]
    cls = closure.rows[x]
    return RoughPair(cls | k, cls | (full & ~h))


def is_antiortholattice(lat: FiniteLattice, inv, neg: NegOperator) -> bool:
    return check_bz_axioms(lat, inv, neg).antiortholattice


# -- pseudocomplements and Stone algebras ---------------------------------------

def pseudocomplement(lat: FiniteLattice, x: int) -> Optional[int]:
    """The largest ``y`` with ``x ∧ y = 0``, or None when there is no largest."""
    ann = np.flatnonzero(lat.meet[x] == lat.bottom)
    top = ann[lat.leq[np.ix_(ann, ann)].all(axis=0)]
    return int(top[0]) if len(top) else None


def pseudocomplement_table(lat: FiniteLattice) -> Optional[np.ndarray]:
    vals = [pseudocomplement(lat, x) for x in range(lat.size)]
    if any(v is None for v in vals):
        return None
    return np.asarray(vals, dtype=np.intp)


@dataclass
class StoneReport:
    pseudocomplemented: bool
    distributive: bool
    stone_identity: Optional[bool]
    meet_law: Optional[bool]
    skeleton_boolean: Optional[bool]
    is_stone: bool
    formula_matches: Optional[bool] = None
    composites: dict = field(default_factory=dict)


def _composite_flags(rel: Relation) -> dict:
    inv = relation_inverse(rel)
    closure = equivalence_closure(rel).rows
    return {"inverse_then_relation": relation_compose(inv, rel).rows == closure,
            "relation_then_inverse": relation_compose(rel, inv).rows == closure}


def stone_analysis(lat: FiniteLattice, space: Optional[ApproxSpace] = None) -> StoneReport:
    star = pseudocomplement_table(lat)
    dist = lat.is_distributive()
    rep = StoneReport(pseudocomplemented=star is not None, distributive=dist,
                      stone_identity=None, meet_law=None, skeleton_boolean=None,
                      is_stone=False)
    if star is not None:
        rep.stone_identity = bool((lat.join[star, star[star]] == lat.top).all())
        rep.meet_law = bool((star[lat.meet] == lat.join[star[:, None], star[None, :]]).all())
        skel = sorted(set(map(int, star)))
        rep.skeleton_boolean = is_boolean_sublattice(lat, skel)
        rep.is_stone = dist and rep.stone_identity
    if space is not None:
        rel = space.relation
        if is_equivalence(rel) and star is not None:
            full = space.full
            want = [lat.index.get(RoughPair(full & ~b, full & ~b)) for _, b in lat.elements]
            rep.formula_matches = want == list(map(int, star))
        rep.composites = _composite_flags(rel)
    return rep


def star_neg(lat: FiniteLattice) -> Optional[NegOperator]:
    star = pseudocomplement_table(lat)
    return None if star is None else NegOperator(lat, star, "pseudocomplement")


def kleene_stone_premise(lat: FiniteLattice, inv) -> bool:
    """Distributive, Stone, and complemented elements are exactly the sharp ones."""
    star = pseudocomplement_table(lat)
    if star is None or not lat.is_distributive():
        return False
    if not (lat.join[star, star[star]] == lat.top).all():
        return False
    comp = complement_matrix(lat).any(axis=1)
    return bool((comp == sharp_mask(lat, inv)).all())
