"""Sharp, complemented, neutral and central elements of the completion.

Elements are referred to by their index in a :class:`~roughdm.completion.FiniteLattice`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .approximation import ApproxSpace
from .completion import DMLattice, FiniteLattice, Involution, dm_membership
from .errors import PreconditionError, TheoremViolation
from .rough import RoughPair, in_a_family


def _map(inv) -> np.ndarray:
    return inv.map if isinstance(inv, Involution) else np.asarray(inv, dtype=np.intp)


# -- sharp / complemented -----------------------------------------------------

def sharp_mask(lat: FiniteLattice, inv) -> np.ndarray:
    s = _map(inv)
    return lat.meet[np.arange(lat.size), s] == lat.bottom


def is_sharp(lat: FiniteLattice, inv, x: int) -> bool:
    return int(lat.meet[x, _map(inv)[x]]) == lat.bottom


def sharp_criterion(space: ApproxSpace, pair: RoughPair) -> bool:
    """``B^▽ = A^△`` for a member of the completion."""
    a, b = pair
    if not dm_membership(space, a, b):
        raise PreconditionError(f"{pair} is not an element of the completion")
    return space.ilow(b) == space.iup(a)


def complement_matrix(lat: FiniteLattice) -> np.ndarray:
    return (lat.meet == lat.bottom) & (lat.join == lat.top)


def complements_of(lat: FiniteLattice, x: int) -> list[int]:
    row = (lat.meet[x] == lat.bottom) & (lat.join[x] == lat.top)
    return [int(i) for i in np.flatnonzero(row)]


def complemented_mask(lat: FiniteLattice) -> np.ndarray:
    return complement_matrix(lat).any(axis=1)


# -- neutral / central --------------------------------------------------------

def _median_sides(lat: FiniteLattice, a: int):
    j, m = lat.join, lat.meet
    ax, ya = m[a], m[:, a]
    lhs = j[j[ax[:, None], m], ya[None, :]]
    ax, ya = j[a], j[:, a]
    rhs = m[m[ax[:, None], j], ya[None, :]]
    return lhs, rhs


def is_neutral(lat: FiniteLattice, a: int) -> bool:
    """``(a∧x)∨(x∧y)∨(y∧a) = (a∨x)∧(x∨y)∧(y∨a)`` for every ``x, y``."""
    lhs, rhs = _median_sides(lat, a)
    return bool((lhs == rhs).all())


def neutral_witness(lat: FiniteLattice, a: int) -> Optional[tuple[int, int]]:
    lhs, rhs = _median_sides(lat, a)
    bad = np.argwhere(lhs != rhs)
    return tuple(map(int, bad[0])) if len(bad) else None


def _decomposes(lat: FiniteLattice, a: int, b: int) -> bool:
    """``x = (x∧a)∨(x∧b)`` and ``x = (x∨a)∧(x∨b)`` for every ``x``."""
    idx = np.arange(lat.size)
    j, m = lat.join, lat.meet
    meet_side = j[m[idx, a], m[idx, b]]
    join_side = m[j[idx, a], j[idx, b]]
    return bool((meet_side == idx).all() and (join_side == idx).all())


def center_by_definition(lat: FiniteLattice) -> list[int]:
    comp = complemented_mask(lat)
    return [a for a in range(lat.size) if comp[a] and is_neutral(lat, a)]


def center_by_decomposition(lat: FiniteLattice, inv) -> list[int]:
    """Sharp ``a`` splitting every element along ``a`` and ``∼a``."""
    s = _map(inv)
    sharp = sharp_mask(lat, s)
    return [a for a in range(lat.size) if sharp[a] and _decomposes(lat, a, int(s[a]))]


def center_by_sets(lat: DMLattice) -> list[int]:
    """Sharp ``(A, B)`` with ``X = ((X∩A) ∪ (X∩Bᶜ))^{△▼}`` for every lower-definable ``X``."""
    space = lat.space
    lowers = space.lower_definable()
    out = []
    sharp = sharp_mask(lat, lat.inv)
    for k, (a, b) in enumerate(lat.elements):
        if not sharp[k]:
            continue
        bc = space.complement(b)
        if all(space.low(space.iup((x & a) | (x & bc))) == x for x in lowers):
            out.append(k)
    return out


def center(lat: DMLattice, inv=None) -> list[int]:
    """Central elements, computed three independent ways and cross-checked."""
    inv = lat.inv if inv is None else inv
    by_def = center_by_definition(lat)
    by_dec = center_by_decomposition(lat, inv)
    by_sets = center_by_sets(lat)
    if not (by_def == by_dec == by_sets):
        raise TheoremViolation("central-element characterisations disagree",
                               witness={"definition": by_def, "decomposition": by_dec,
                                        "sets": by_sets})
    return by_def


# -- the sharp family and the bi-fixed sets ----------------------------------

def phi(space: ApproxSpace, pair: RoughPair) -> int:
    """Sharp pair ↦ ``A^△``."""
    if not sharp_criterion(space, pair):
        raise PreconditionError(f"{pair} is not sharp")
    return space.iup(pair.lower)


def psi(space: ApproxSpace, z: int) -> RoughPair:
    """Bi-fixed set ↦ its rough set ``(Z^▼, Z^▲)``."""
    if not in_a_family(space, z):
        raise PreconditionError(f"{z:#x} is not in the bi-fixed family")
    return RoughPair(space.low(z), space.up(z))


# -- identities ---------------------------------------------------------------

def chajda_sides(lat: FiniteLattice, inv, x: int, y: int) -> tuple[int, int]:
    """``(x ∧ (∼x ∨ y), (x ∧ ∼x) ∨ (x ∧ y))``."""
    s = _map(inv)
    j, m = lat.join, lat.meet
    lhs = int(m[x, j[s[x], y]])
    rhs = int(j[m[x, s[x]], m[x, y]])
    return lhs, rhs


def check_chajda_identity(lat: FiniteLattice, inv):
    """Scan all pairs; returns ``(True, None)`` or ``(False, witness)`` for the first failure."""
    s = _map(inv)
    j, m = lat.join, lat.meet
    idx = np.arange(lat.size)
    lhs = m[idx[:, None], j[s[:, None], idx[None, :]]]
    rhs = j[m[idx, s][:, None], m]
    bad = np.argwhere(lhs != rhs)
    if not len(bad):
        return True, None
    x, y = map(int, bad[0])
    return False, {"x": x, "y": y, "lhs": int(lhs[x, y]), "rhs": int(rhs[x, y])}


def pseudo_kleene_witness(lat: FiniteLattice, inv) -> Optional[tuple[int, int]]:
    """First ``(a, b)`` with ``a∧∼a ≰ b∨∼b``, or None."""
    s = _map(inv)
    idx = np.arange(lat.size)
    lo = lat.meet[idx, s]
    hi = lat.join[idx, s]
    bad = np.argwhere(~lat.leq[np.ix_(lo, hi)])
    return tuple(map(int, bad[0])) if len(bad) else None


def paraorthomodular_witness(lat: FiniteLattice, inv) -> Optional[tuple[int, int]]:
    """First ``a < b`` with ``∼a ∧ b = 0``, or None."""
    s = _map(inv)
    prem = lat.leq & (lat.meet[s, :] == lat.bottom)
    np.fill_diagonal(prem, False)
    bad = np.argwhere(prem)
    return tuple(map(int, bad[0])) if len(bad) else None


# -- structure of the sharp family -------------------------------------------

def find_n5(lat: FiniteLattice, within: Iterable[int]):
    """A pentagon ``(o, a, c, b, i)`` with ``o<a<c<i``, ``b`` beside the chain, or None."""
    w = sorted(within)
    leq, j, m = lat.leq, lat.join, lat.meet
    for a in w:
        for c in w:
            if a == c or not leq[a, c]:
                continue
            for b in w:
                if leq[a, b] or leq[b, a] or leq[c, b] or leq[b, c]:
                    continue
                if m[a, b] == m[c, b] and j[a, b] == j[c, b]:
                    return int(m[a, b]), a, c, b, int(j[a, b])
    return None


def find_m3(lat: FiniteLattice, within: Iterable[int]):
    """A diamond ``(o, a, b, c, i)`` of three pairwise incomparable atoms, or None."""
    w = sorted(within)
    leq, j, m = lat.leq, lat.join, lat.meet
    for x, a in enumerate(w):
        for y, b in enumerate(w[x + 1:], x + 1):
            if leq[a, b] or leq[b, a]:
                continue
            for c in w[y + 1:]:
                if leq[a, c] or leq[c, a] or leq[b, c] or leq[c, b]:
                    continue
                if m[a, b] == m[a, c] == m[b, c] and j[a, b] == j[a, c] == j[b, c]:
                    return int(m[a, b]), a, b, c, int(j[a, b])
    return None


def _induced(lat: FiniteLattice, members: list[int]) -> Optional[FiniteLattice]:
    from .completion import NotALattice
    sub = lat.leq[np.ix_(members, members)]
    try:
        return FiniteLattice.from_order(members, sub)
    except NotALattice:
        return None


@dataclass
class CFamilyReport:
    sharp: list[int]
    is_sublattice: bool
    is_boolean: Optional[bool]
    induced_is_lattice: bool
    n5: Optional[tuple] = None
    m3: Optional[tuple] = None
    uniquely_complemented: Optional[bool] = None
    transfer: list[dict] = field(default_factory=list)


def is_boolean_sublattice(lat: FiniteLattice, members: list[int]) -> bool:
    """Sublattice that is distributive and complemented in its own right."""
    if not lat.is_sublattice(members):
        return False
    ind = _induced(lat, members)
    if ind is None or not ind.is_distributive():
        return False
    return bool(complemented_mask(ind).all())


def phi_image(space: ApproxSpace, lat: DMLattice, members: Iterable[int]) -> list[int]:
    return sorted({space.iup(lat.elements[k].lower) for k in members})


def is_complete_set_sublattice(sets: Iterable[int], full: int) -> bool:
    """Contains ∅ and U and is closed under union and intersection."""
    s = set(sets)
    if 0 not in s or full not in s:
        return False
    return all((x | y) in s and (x & y) in s for x in s for y in s)


def transfer_check(lat: DMLattice, members: Iterable[int]) -> dict:
    """For a ∼-closed family of sharp elements, compare completeness as a
    sublattice of the completion with completeness of its image in the power set."""
    members = sorted(set(members))
    left = lat.is_complete_sublattice(members)
    right = is_complete_set_sublattice(phi_image(lat.space, lat, members), lat.space.full)
    return {"family": members, "sublattice": left, "image_sublattice": right,
            "agree": left == right}


def c_family_analysis(lat: DMLattice, inv=None, families: Iterable[Iterable[int]] = ()) -> CFamilyReport:
    inv = lat.inv if inv is None else inv
    s = _map(inv)
    sharp = [int(i) for i in np.flatnonzero(sharp_mask(lat, s))]
    sub = lat.is_sublattice(sharp)
    rep = CFamilyReport(sharp=sharp, is_sublattice=sub,
                        is_boolean=is_boolean_sublattice(lat, sharp) if sub else None,
                        induced_is_lattice=False)
    ind = _induced(lat, sharp)
    if ind is not None:
        rep.induced_is_lattice = True
        n5 = find_n5(ind, range(ind.size))
        m3 = find_m3(ind, range(ind.size))
        rep.n5 = tuple(sharp[k] for k in n5) if n5 else None
        rep.m3 = tuple(sharp[k] for k in m3) if m3 else None
        cm = complement_matrix(ind)
        rep.uniquely_complemented = bool((cm.sum(axis=1) == 1).all())
    for fam in families:
        fam = sorted(set(fam))
        if any(int(s[k]) not in fam for k in fam) or not set(fam) <= set(sharp):
            raise PreconditionError("family must be a ∼-closed set of sharp elements")
        rep.transfer.append(transfer_check(lat, fam))
    return rep


@dataclass
class ElementAnalysis:
    index: int
    sharp: bool
    complemented: bool
    neutral: bool
    central: bool
    exact: bool
    complements: list[int]


def analyse_elements(lat: DMLattice, inv=None) -> list[ElementAnalysis]:
    inv = lat.inv if inv is None else inv
    sharp = sharp_mask(lat, inv)
    cm = complement_matrix(lat)
    cen = set(center(lat, inv))
    out = []
    for k, p in enumerate(lat.elements):
        comps = [int(i) for i in np.flatnonzero(cm[k])]
        out.append(ElementAnalysis(
            index=k, sharp=bool(sharp[k]), complemented=bool(comps),
            neutral=is_neutral(lat, k), central=k in cen,
            exact=bool(lat.in_rs[k]) and p.lower == p.upper, complements=comps))
    return out
