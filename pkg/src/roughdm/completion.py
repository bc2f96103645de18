"""Finite lattices, the completion of rough sets, and an independent cut-based oracle.

Two routes build the completion of the rough-set poset:

* :func:`build_dm` uses the closed-form description of its elements
  (lower-definable ``A``, upper-definable ``B``, ``A^{△▲} ⊆ B`` and agreement on
  singleton points) and the closed-form join/meet formulas.
* :func:`macneille_oracle` knows nothing about rough sets; it computes the normal
  cuts of an arbitrary finite poset.

:func:`lattice_isomorphic` compares the two.
"""

from __future__ import annotations

from typing import Hashable, Mapping, Optional, Sequence

import numpy as np

from .approximation import ApproxSpace, is_definable
from .errors import CapExceeded, PreconditionError, RoughDMError
from .rough import RoughPair, build_rs, canonical_sort, check_cap

DM_CAP = 10
ORACLE_CAP = 4096


class NotALattice(RoughDMError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FiniteLattice:
    """A finite lattice given by an element list, order matrix and operation tables.

    ``leq[i, j]`` is True iff element ``i`` is below element ``j``; ``join`` and
    ``meet`` hold element indices.
    """

    def __init__(self, elements: Sequence[Hashable], leq, join, meet):
        self.elements = list(elements)
        self.size = len(self.elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.leq = np.asarray(leq, dtype=bool)
        self.join = np.asarray(join, dtype=np.intp)
        self.meet = np.asarray(meet, dtype=np.intp)
        n = self.size
        if self.leq.shape != (n, n) or self.join.shape != (n, n) or self.meet.shape != (n, n):
            raise PreconditionError("table shapes do not match the element count")
        bottoms = np.flatnonzero(self.leq.all(axis=1))
        tops = np.flatnonzero(self.leq.all(axis=0))
        if len(bottoms) != 1 or len(tops) != 1:
            raise NotALattice("no unique bottom/top element")
        self.bottom = int(bottoms[0])
        self.top = int(tops[0])
        strict = self.leq & ~np.eye(n, dtype=bool)
        si = strict.astype(np.int32)
        cover = strict & ~((si @ si) > 0)
        self.cover_matrix = cover
        self.covers = [list(map(int, np.flatnonzero(cover[i]))) for i in range(n)]

    @classmethod
    def from_order(cls, elements: Sequence[Hashable], leq) -> "FiniteLattice":
        """Build the join/meet tables order-theoretically from ``leq``.

        Raises :class:`NotALattice` if some pair lacks a least upper or greatest
        lower bound.
        """
        leq = np.asarray(leq, dtype=bool)
        join = order_bounds(leq, upper=True)
        meet = order_bounds(leq, upper=False)
        for table, kind in ((join, "join"), (meet, "meet")):
            bad = np.argwhere(table < 0)
            if len(bad):
                i, j = map(int, bad[0])
                raise NotALattice(f"elements {i} and {j} have no {kind}",
                                  witness=(kind, i, j))
        return cls(elements, leq, join, meet)

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"{type(self).__name__}(size={self.size})"

    def heights(self) -> np.ndarray:
        """Length of the longest chain from bottom to each element."""
        order = np.argsort(self.leq.sum(axis=0), kind="stable")  # by number of elements below
        h = np.zeros(self.size, dtype=np.intp)
        for j in order:
            below = np.flatnonzero(self.cover_matrix[:, j])
            if len(below):
                h[j] = h[below].max() + 1
        return h

    def is_distributive(self) -> bool:
        j, m = self.join, self.meet
        # a ∧ (b ∨ c) == (a ∧ b) ∨ (a ∧ c) for all a, b, c
        lhs = m[np.arange(self.size)[:, None, None], j[None, :, :]]
        rhs = j[m[:, :, None], m[:, None, :]]
        return bool((lhs == rhs).all())

    def is_sublattice(self, subset) -> bool:
        s = np.asarray(sorted(subset), dtype=np.intp)
        mask = np.zeros(self.size, dtype=bool)
        mask[s] = True
        return bool(mask[self.join[np.ix_(s, s)]].all() and mask[self.meet[np.ix_(s, s)]].all())

    def is_complete_sublattice(self, subset) -> bool:
        """Closed under binary joins/meets and containing both bounds (finite case)."""
        sub = set(subset)
        return self.bottom in sub and self.top in sub and self.is_sublattice(sub)

    def join_all(self, items) -> int:
        acc = self.bottom
        for i in items:
            acc = int(self.join[acc, i])
        return acc

    def meet_all(self, items) -> int:
        acc = self.top
        for i in items:
            acc = int(self.meet[acc, i])
        return acc


def order_bounds(leq: np.ndarray, upper: bool = True) -> np.ndarray:
    """Least upper bounds (or greatest lower bounds) of all pairs; -1 where absent.

    The bound of ``{i, j}`` is the common bound ``k`` whose own up-set (down-set)
    is exactly the set of common bounds.
    """
    rel = leq if upper else leq.T
    n = rel.shape[0]
    ups = rel.sum(axis=1)                   # |{m : k ≤ m}|
    out = np.full((n, n), -1, dtype=np.intp)
    for i in range(n):
        common = rel[i][None, :] & rel      # common[j, k]: k is a bound of {i, j}
        cnt = common.sum(axis=1)
        cand = common & (ups[None, :] == cnt[:, None])
        has = cand.any(axis=1)
        out[i, has] = cand[has].argmax(axis=1)
    return out


class Involution:
    """An order-reversing involution on a finite lattice, given as an index map."""

    def __init__(self, lattice: FiniteLattice, mapping):
        self.lattice = lattice
        self.map = np.asarray(mapping, dtype=np.intp)
        n = lattice.size
        if self.map.shape != (n,):
            raise PreconditionError("involution map has the wrong length")
        if not (self.map[self.map] == np.arange(n)).all():
            raise PreconditionError("map is not an involution")
        flipped = lattice.leq[np.ix_(self.map, self.map)]
        if not (~lattice.leq | flipped.T).all():
            raise PreconditionError("map is not order-reversing")

    def __call__(self, i: int) -> int:
        return int(self.map[i])


class DMLattice(FiniteLattice):
    """The completion of the rough sets of a relation, with its Kleene involution."""

    space: ApproxSpace
    in_rs: np.ndarray
    inv: Involution

    @property
    def pairs(self) -> list[RoughPair]:
        return self.elements

    @property
    def added(self) -> list[int]:
        """Indices of elements that are not rough sets themselves."""
        return [int(i) for i in np.flatnonzero(~self.in_rs)]


def kleene_neg(pair: RoughPair, full) -> RoughPair:
    """``∼(A, B) = (Bᶜ, Aᶜ)``; ``full`` is the universe mask or a Universe."""
    if not isinstance(full, int):
        full = full.full
    return RoughPair(full & ~pair.upper, full & ~pair.lower)


def dm_membership(space: ApproxSpace, a: int, b: int) -> bool:
    s = space.singletons()
    return (is_definable(space, a, "lower")
            and is_definable(space, b, "upper")
            and space.up(space.iup(a)) & ~b == 0
            and a & s == b & s)


def _mask_array(values) -> np.ndarray:
    values = list(values)
    if values and max(values).bit_length() >= 63:
        return np.array(values, dtype=object)
    return np.array(values, dtype=np.int64)


def pair_order(pairs: Sequence[RoughPair]) -> np.ndarray:
    lo = _mask_array(p.lower for p in pairs)
    hi = _mask_array(p.upper for p in pairs)
    return ((lo[:, None] & ~lo[None, :]) == 0) & ((hi[:, None] & ~hi[None, :]) == 0)


def build_dm(space: ApproxSpace, cap: Optional[int] = DM_CAP) -> DMLattice:
    """Enumerate the completion and tabulate its operations by the closed-form formulas.

    join = ((A₁ ∪ A₂)^{△▼}, B₁ ∪ B₂),  meet = (A₁ ∩ A₂, (B₁ ∩ B₂)^{▽▲}).
    """
    check_cap(space.n, cap)
    s = space.singletons()
    lowers = space.lower_definable()
    uppers = space.upper_definable()
    elems = canonical_sort(
        RoughPair(a, b) for a in lowers for b in uppers
        if a & s == b & s and space.up(space.iup(a)) & ~b == 0)
    index = {p: i for i, p in enumerate(elems)}
    n = len(elems)
    join = np.empty((n, n), dtype=np.intp)
    meet = np.empty((n, n), dtype=np.intp)
    low, iup, up, ilow = space.low, space.iup, space.up, space.ilow
    try:
        for i, (a1, b1) in enumerate(elems):
            for j in range(i, n):
                a2, b2 = elems[j]
                join[i, j] = join[j, i] = index[RoughPair(low(iup(a1 | a2)), b1 | b2)]
                meet[i, j] = meet[j, i] = index[RoughPair(a1 & a2, up(ilow(b1 & b2)))]
    except KeyError as exc:
        raise AssertionError(f"join/meet formula left the completion: {exc}") from None
    lat = DMLattice(elems, pair_order(elems), join, meet)
    lat.space = space
    rs = {RoughPair(low(x), up(x)) for x in range(1 << space.n)}
    lat.in_rs = np.array([p in rs for p in elems], dtype=bool)
    full = space.full
    lat.inv = Involution(lat, [index[kleene_neg(p, full)] for p in elems])
    return lat


class CutLattice(FiniteLattice):
    """Normal cuts of a poset; ``principal[i]`` is the cut index of ``↓i``."""

    cuts: list[int]
    principal: list[int]


def macneille_oracle(elements: Sequence[Hashable], leq, cap: Optional[int] = ORACLE_CAP) -> CutLattice:
    """Dedekind–MacNeille completion of a finite poset via normal cuts.

    Cuts are bit masks over the poset indices.  They are generated as
    intersections of principal ideals, then each is checked against the
    definition ``A = (A^u)^l``.
    """
    leq = np.asarray(leq, dtype=bool)
    n = len(elements)
    if cap is not None and n > cap:
        raise CapExceeded("oracle", cap, n)
    down = [sum(1 << int(k) for k in np.flatnonzero(leq[:, p])) for p in range(n)]
    up = [sum(1 << int(k) for k in np.flatnonzero(leq[p, :])) for p in range(n)]
    everything = (1 << n) - 1
    cuts = {everything}
    for d in down:
        cuts |= {c & d for c in cuts}
        if cap is not None and len(cuts) > cap:
            raise CapExceeded("oracle", cap, len(cuts))

    def upper_bounds(a):
        acc = everything
        for k in range(n):
            if a >> k & 1:
                acc &= up[k]
        return acc

    def lower_bounds(a):
        acc = everything
        for k in range(n):
            if a >> k & 1:
                acc &= down[k]
        return acc

    for c in cuts:
        if lower_bounds(upper_bounds(c)) != c:
            raise AssertionError("generated set is not a normal cut")
    ordered = sorted(cuts, key=lambda c: (c.bit_count(), c))
    arr = np.array(ordered, dtype=object)
    inc = np.vectorize(lambda x, y: x & ~y == 0, otypes=[bool])(arr[:, None], arr[None, :])
    out = CutLattice.from_order(ordered, inc)
    out.cuts = ordered
    pos = {c: i for i, c in enumerate(ordered)}
    out.principal = [pos[d] for d in down]
    return out


def rs_oracle(space: ApproxSpace, cap: Optional[int] = ORACLE_CAP) -> CutLattice:
    rs = build_rs(space)
    return macneille_oracle(rs.pairs, pair_order(rs.pairs), cap=cap)


def _profiles(lat: FiniteLattice):
    h = lat.heights()
    up_c = lat.cover_matrix.sum(axis=1)
    down_c = lat.cover_matrix.sum(axis=0)
    below = lat.leq.sum(axis=0)
    above = lat.leq.sum(axis=1)
    return [(int(h[i]), int(up_c[i]), int(down_c[i]), int(below[i]), int(above[i]))
            for i in range(lat.size)]


def lattice_isomorphic(l1: FiniteLattice, l2: FiniteLattice,
                       fixed: Optional[Mapping[int, int]] = None):
    """Search for an order isomorphism ``l1 → l2``.

    Returns ``(True, mapping)`` with ``mapping[i]`` the image of element ``i``,
    or ``(False, None)``.  ``fixed`` pins some images in advance.
    """
    if l1.size != l2.size:
        return False, None
    p1, p2 = _profiles(l1), _profiles(l2)
    if sorted(p1) != sorted(p2):
        return False, None
    n = l1.size
    by_profile: dict = {}
    for j, p in enumerate(p2):
        by_profile.setdefault(p, []).append(j)
    mapping = [-1] * n
    used = [False] * n
    fixed = dict(fixed or {})
    for i, j in fixed.items():
        if p1[i] != p2[j] or used[j]:
            return False, None
        mapping[i] = j
        used[j] = True
    a1, a2 = l1.leq, l2.leq
    assigned = [i for i in range(n) if mapping[i] >= 0]
    for x in assigned:
        for u in assigned:
            if a1[x, u] != a2[mapping[x], mapping[u]]:
                return False, None
    todo = sorted((i for i in range(n) if mapping[i] < 0), key=lambda i: p1[i])

    def consistent(x, y):
        for u in assigned:
            v = mapping[u]
            if a1[x, u] != a2[y, v] or a1[u, x] != a2[v, y]:
                return False
        return True

    def rec(k):
        if k == len(todo):
            return True
        x = todo[k]
        for y in by_profile[p1[x]]:
            if used[y] or not consistent(x, y):
                continue
            mapping[x] = y
            used[y] = True
            assigned.append(x)
            if rec(k + 1):
                return True
            assigned.pop()
            used[y] = False
            mapping[x] = -1
        return False

    if rec(0):
        return True, list(mapping)
    return False, None


def dm_matches_oracle(lat: DMLattice, oracle: Optional[CutLattice] = None):
    """Isomorphism between the completion and the cut oracle fixing rough sets pointwise."""
    rs = build_rs(lat.space, cap=None)
    if oracle is None:
        oracle = macneille_oracle(rs.pairs, pair_order(rs.pairs))
    fixed = {lat.index[p]: oracle.principal[k] for k, p in enumerate(rs.pairs)}
    return lattice_isomorphic(lat, oracle, fixed=fixed)
