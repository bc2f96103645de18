"""Rough sets of a relation, exact rough sets and the family of bi-fixed sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .approximation import ApproxSpace, is_definable, singletons
from .errors import CapExceeded, PreconditionError
from .relations import equivalence_classes, equivalence_closure, is_reflexive

RS_CAP = 16


class RoughPair(NamedTuple):
    lower: int
    upper: int

    def leq(self, other: "RoughPair") -> bool:
        return self.lower & ~other.lower == 0 and self.upper & ~other.upper == 0

    def format(self, universe) -> str:
        return f"({universe.format(self.lower)},{universe.format(self.upper)})"


def canonical_key(p: RoughPair):
    """Sort key giving the canonical element order: (|upper|, upper, lower)."""
    return (p.upper.bit_count(), p.upper, p.lower)


def canonical_sort(pairs) -> list[RoughPair]:
    return sorted(pairs, key=canonical_key)


def check_cap(n: int, cap: Optional[int], name: str = "universe"):
    if cap is not None and n > cap:
        raise CapExceeded(name, cap, n)


@dataclass
class RSFamily:
    space: ApproxSpace
    pairs: list[RoughPair]
    index: dict[RoughPair, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.index = {p: i for i, p in enumerate(self.pairs)}

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, p) -> bool:
        return p in self.index

    def __iter__(self):
        return iter(self.pairs)

    def leq(self, i: int, j: int) -> bool:
        return self.pairs[i].leq(self.pairs[j])

    def leq_matrix(self) -> list[list[bool]]:
        ps = self.pairs
        return [[p.leq(q) for q in ps] for p in ps]


@dataclass
class AFamily:
    space: ApproxSpace
    sets: list[int]

    def __contains__(self, z: int) -> bool:
        return z in set(self.sets)

    def __len__(self):
        return len(self.sets)


def rough_pair(space: ApproxSpace, x: int) -> RoughPair:
    return RoughPair(space.low(x), space.up(x))


def build_rs(space: ApproxSpace, cap: Optional[int] = RS_CAP) -> RSFamily:
    check_cap(space.n, cap)
    seen = {rough_pair(space, x) for x in range(1 << space.n)}
    return RSFamily(space, canonical_sort(seen))


class LatticeCheck(NamedTuple):
    is_lattice: bool
    witness: Optional[dict]


def _minimal(elems: list[RoughPair], dual: bool = False) -> list[RoughPair]:
    if dual:
        return [p for p in elems if not any(q != p and p.leq(q) for q in elems)]
    return [p for p in elems if not any(q != p and q.leq(p) for q in elems)]


def rs_is_lattice(rs: RSFamily) -> LatticeCheck:
    """Whether every pair of rough sets has a join and a meet inside ``rs``.

    On failure the witness names the pair and its minimal upper bounds (or
    maximal lower bounds when joins all exist but a meet does not).
    """
    ps = rs.pairs
    for i, p in enumerate(ps):
        for q in ps[i + 1:]:
            ub = [r for r in ps if p.leq(r) and q.leq(r)]
            mub = _minimal(ub)
            if len(mub) != 1:
                return LatticeCheck(False, {"kind": "join", "pair": (p, q),
                                            "bounds": canonical_sort(mub)})
    for i, p in enumerate(ps):
        for q in ps[i + 1:]:
            lb = [r for r in ps if r.leq(p) and r.leq(q)]
            mlb = _minimal(lb, dual=True)
            if len(mlb) != 1:
                return LatticeCheck(False, {"kind": "meet", "pair": (p, q),
                                            "bounds": canonical_sort(mlb)})
    return LatticeCheck(True, None)


def is_exact(pair: RoughPair) -> bool:
    return pair.lower == pair.upper


def _require_reflexive(space: ApproxSpace):
    if not is_reflexive(space.relation):
        raise PreconditionError("relation must be reflexive")


def exact_family(space: ApproxSpace, cap: Optional[int] = RS_CAP) -> list[RoughPair]:
    """Exact rough sets, generated as the saturated sets of the equivalence closure.

    The result is cross-checked against the exact members of the enumerated
    rough-set family when the universe is within ``cap``.
    """
    _require_reflexive(space)
    classes = equivalence_classes(equivalence_closure(space.relation))
    out = canonical_sort(RoughPair(a, a) for a in classes.saturated_sets())
    if cap is None or space.n <= cap:
        direct = [p for p in build_rs(space, cap=None) if is_exact(p)]
        if direct != out:
            raise AssertionError("saturated sets disagree with exact rough sets")
    return out


def in_a_family(space: ApproxSpace, z: int) -> bool:
    """``Z^{▼△} = Z^{▲▽}`` (both sides then equal ``Z``)."""
    return space.iup(space.low(z)) == space.ilow(space.up(z))


def build_a_family(space: ApproxSpace, cap: Optional[int] = RS_CAP) -> AFamily:
    check_cap(space.n, cap)
    sets = [z for z in range(1 << space.n) if in_a_family(space, z)]
    return AFamily(space, sets)


def quasiorder_rs_criterion(space: ApproxSpace, a: int, b: int) -> bool:
    """Membership test for rough sets of a quasiorder without enumerating subsets.

    ``(A, B)`` with ``A`` lower-definable and ``B`` upper-definable is a rough
    set iff ``A ⊆ B`` and every singleton point lies in ``A ∪ Bᶜ``.
    """
    if not (is_definable(space, a, "lower") and is_definable(space, b, "upper")):
        return False
    s = singletons(space)
    return a & ~b == 0 and s & ~(a | space.complement(b)) == 0
