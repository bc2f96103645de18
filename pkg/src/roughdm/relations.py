"""Finite universes, subsets as bit masks, binary relations and partitions.

Subsets of a universe with ``n`` elements are plain Python ints used as bit
vectors: bit ``i`` is set iff the ``i``-th label is a member.  Python ints are
arbitrary precision, so universes wider than a machine word need no special
casing.  A relation stores one such mask per element (its row, ``R(x)``).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import NotAnEquivalence, PreconditionError, UniverseMismatch


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Universe:
    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        if not labels:
            raise PreconditionError("a universe needs at least one element")
        if len(set(labels)) != len(labels):
            raise PreconditionError(f"duplicate labels in {labels!r}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(labels)})

    @classmethod
    def of_size(cls, n: int) -> "Universe":
        return cls(tuple(str(i) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        """Mask of the whole universe."""
        return (1 << len(self.labels)) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise PreconditionError(f"unknown label {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for x in labels:
            m |= 1 << self.index(x)
        return m

    def members(self, mask: int) -> list[str]:
        self.check(mask)
        return [self.labels[i] for i in bits(mask)]

    def complement(self, mask: int) -> int:
        return self.full & ~mask

    def check(self, mask: int) -> int:
        if mask < 0 or mask >> self.size:
            raise UniverseMismatch(
                f"mask {mask:#x} does not fit a universe of size {self.size}")
        return mask

    def subsets(self) -> range:
        """All subsets, as masks, in ascending numeric order."""
        return range(1 << self.size)

    def format(self, mask: int) -> str:
        """Compact set notation: labels juxtaposed, ``∅`` for the empty set."""
        if not mask:
            return "∅"
        names = self.members(mask)
        sep = "" if all(len(x) == 1 for x in self.labels) else ","
        return sep.join(names)


@dataclass(frozen=True)
class PropertyFlags:
    reflexive: bool
    symmetric: bool
    transitive: bool
    left_total: bool
    right_total: bool

    @property
    def equivalence(self) -> bool:
        return self.reflexive and self.symmetric and self.transitive

    @property
    def quasiorder(self) -> bool:
        return self.reflexive and self.transitive

    @property
    def tolerance(self) -> bool:
        return self.reflexive and self.symmetric

    def as_dict(self) -> dict[str, bool]:
        return {
            "reflexive": self.reflexive,
            "symmetric": self.symmetric,
            "transitive": self.transitive,
            "left_total": self.left_total,
            "right_total": self.right_total,
            "equivalence": self.equivalence,
            "quasiorder": self.quasiorder,
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True)
class Relation:
    """A binary relation given by its rows: ``rows[i]`` is the mask of R(x_i)."""

    universe: Universe
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        if len(rows) != self.universe.size:
            raise UniverseMismatch(
                f"{len(rows)} rows for a universe of size {self.universe.size}")
        for r in rows:
            self.universe.check(r)
        object.__setattr__(self, "rows", rows)

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_pairs(cls, universe: Universe, pairs: Iterable[tuple[str, str]]) -> "Relation":
        rows = [0] * universe.size
        for x, y in pairs:
            rows[universe.index(x)] |= 1 << universe.index(y)
        return cls(universe, tuple(rows))

    @classmethod
    def from_neighborhoods(cls, universe: Universe,
                           neighborhoods: Mapping[str, Iterable[str]]) -> "Relation":
        rows = [0] * universe.size
        for x, ys in neighborhoods.items():
            rows[universe.index(x)] |= universe.mask(ys)
        return cls(universe, tuple(rows))

    @classmethod
    def from_matrix(cls, universe: Universe, matrix: Sequence[Sequence[bool]]) -> "Relation":
        rows = []
        for row in matrix:
            m = 0
            for j, v in enumerate(row):
                if v:
                    m |= 1 << j
            rows.append(m)
        return cls(universe, tuple(rows))

    @classmethod
    def identity(cls, universe: Universe) -> "Relation":
        return cls(universe, tuple(1 << i for i in range(universe.size)))

    @classmethod
    def universal(cls, universe: Universe) -> "Relation":
        return cls(universe, (universe.full,) * universe.size)

    @classmethod
    def empty(cls, universe: Universe) -> "Relation":
        return cls(universe, (0,) * universe.size)

    # -- views --------------------------------------------------------------
    @property
    def size(self) -> int:
        return self.universe.size

    def __contains__(self, pair) -> bool:
        i, j = pair
        return bool(self.rows[i] >> j & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.rows) for j in bits(r)]

    def labelled_pairs(self) -> list[tuple[str, str]]:
        lab = self.universe.labels
        return [(lab[i], lab[j]) for i, j in self.pairs()]

    def matrix(self) -> list[list[bool]]:
        n = self.size
        return [[bool(r >> j & 1) for j in range(n)] for r in self.rows]

    def neighborhood(self, i: int) -> int:
        return self.rows[i]

    def issubset(self, other: "Relation") -> bool:
        _same_universe(self, other)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def union(self, other: "Relation") -> "Relation":
        _same_universe(self, other)
        return Relation(self.universe, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def with_diagonal(self) -> "Relation":
        return Relation(self.universe, tuple(r | 1 << i for i, r in enumerate(self.rows)))

    def __repr__(self):
        lab = self.universe.labels
        body = ", ".join(f"{lab[i]}:{self.universe.format(r)}" for i, r in enumerate(self.rows))
        return f"Relation({body})"


def _same_universe(r: Relation, s: Relation):
    if r.universe != s.universe:
        raise UniverseMismatch("relations are defined on different universes")


def relation_inverse(r: Relation) -> Relation:
    cols = [0] * r.size
    for i, row in enumerate(r.rows):
        for j in bits(row):
            cols[j] |= 1 << i
    return Relation(r.universe, tuple(cols))


def relation_compose(r: Relation, s: Relation) -> Relation:
    """``(x, z)`` is in the result iff ``x R y`` and ``y S z`` for some ``y``.

    With this reading ``compose(R, R^i)`` is the ordinary ``i+1``-step
    reachability relation.
    """
    _same_universe(r, s)
    out = []
    for row in r.rows:
        acc = 0
        for y in bits(row):
            acc |= s.rows[y]
        out.append(acc)
    return Relation(r.universe, tuple(out))


def transitive_closure(r: Relation) -> Relation:
    """Least transitive superset, by repeated squaring to a fixpoint."""
    t = r
    while True:
        nxt = t.union(relation_compose(t, t))
        if nxt.rows == t.rows:
            return t
        t = nxt


def equivalence_closure(r: Relation) -> Relation:
    """``(R ∪ R⁻¹)⁺``; warns when ``r`` is not reflexive."""
    if not is_reflexive(r):
        warnings.warn("equivalence_closure called on a non-reflexive relation; "
                      "the result need not be reflexive", stacklevel=2)
    return transitive_closure(r.union(relation_inverse(r)))


def is_reflexive(r: Relation) -> bool:
    return all(row >> i & 1 for i, row in enumerate(r.rows))


def is_symmetric(r: Relation) -> bool:
    return r.rows == relation_inverse(r).rows


def is_transitive(r: Relation) -> bool:
    return relation_compose(r, r).issubset(r)


def is_equivalence(r: Relation) -> bool:
    return is_reflexive(r) and is_symmetric(r) and is_transitive(r)


def classify(r: Relation) -> PropertyFlags:
    return PropertyFlags(
        reflexive=is_reflexive(r),
        symmetric=is_symmetric(r),
        transitive=is_transitive(r),
        left_total=all(r.rows),
        right_total=all(relation_inverse(r).rows),
    )


@dataclass(frozen=True)
class Partition:
    universe: Universe
    blocks: tuple[int, ...]

    def __post_init__(self):
        seen = 0
        for b in self.blocks:
            if not b:
                raise PreconditionError("partition blocks must be nonempty")
            if b & seen:
                raise PreconditionError("partition blocks overlap")
            seen |= b
        if seen != self.universe.full:
            raise PreconditionError("partition blocks do not cover the universe")
        # canonical order: by lowest member
        object.__setattr__(self, "blocks",
                           tuple(sorted(self.blocks, key=lambda b: b & -b)))

    def block_of(self, i: int) -> int:
        for b in self.blocks:
            if b >> i & 1:
                return b
        raise IndexError(i)

    def relation(self) -> Relation:
        return Relation(self.universe, tuple(self.block_of(i) for i in range(self.universe.size)))

    def saturated_sets(self) -> list[int]:
        """All unions of blocks, ascending by mask."""
        out = []
        k = len(self.blocks)
        for sel in range(1 << k):
            m = 0
            for j in bits(sel):
                m |= self.blocks[j]
            out.append(m)
        return sorted(out)

    def format(self) -> str:
        return "|".join(self.universe.format(b) for b in self.blocks)


def equivalence_classes(e: Relation) -> Partition:
    if not is_equivalence(e):
        raise NotAnEquivalence("relation is not an equivalence")
    return Partition(e.universe, tuple(sorted(set(e.rows))))


def is_saturated(e: Relation, x: int) -> bool:
    """True iff ``x`` is a union of ``e``-classes."""
    if not is_equivalence(e):
        raise NotAnEquivalence("relation is not an equivalence")
    e.universe.check(x)
    return all(e.rows[i] & ~x == 0 for i in bits(x))


def is_block(r: Relation, s: int) -> bool:
    """Elements of ``s`` are pairwise related."""
    return all(r.rows[i] & s == s for i in bits(s))


def is_irredundant_covering_tolerance(r: Relation) -> bool:
    """A tolerance in which each related pair lies in some neighbourhood that is a block."""
    if not (is_reflexive(r) and is_symmetric(r)):
        return False
    block_rows = [row for row in r.rows if is_block(r, row)]
    for i, row in enumerate(r.rows):
        for j in bits(row):
            pair = 1 << i | 1 << j
            if not any(b & pair == pair for b in block_rows):
                return False
    return True


def set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    """All set partitions of ``items`` in a deterministic (restricted growth) order."""
    items = list(items)
    if not items:
        yield []
        return
    n = len(items)
    labels = [0] * n

    def rec(i: int, nblocks: int):
        if i == n:
            blocks: list[list[int]] = [[] for _ in range(nblocks)]
            for it, lab in zip(items, labels):
                blocks[lab].append(it)
            yield blocks
            return
        for lab in range(nblocks + 1):
            labels[i] = lab
            yield from rec(i + 1, max(nblocks, lab + 1))

    labels[0] = 0
    yield from rec(1, 1)
