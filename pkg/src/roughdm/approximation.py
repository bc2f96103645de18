"""Lower and upper approximation operators of a relation and of its inverse."""

from __future__ import annotations

import enum

from .errors import UniverseMismatch
from .relations import Relation, Universe, relation_inverse


class Direction(enum.Enum):
    FORWARD = "forward"   # neighbourhoods R(x)
    INVERSE = "inverse"   # neighbourhoods R⁻¹(x)


FORWARD = Direction.FORWARD
INVERSE = Direction.INVERSE


class ApproxSpace:
    """A relation together with its inverse and cached neighbourhoods.

    Operator results are memoised per argument; nothing is tabulated up front.
    The four operators are exposed under short names as well:

    ``low``  X ↦ {x : R(x) ⊆ X}         ``up``  X ↦ {x : R(x) ∩ X ≠ ∅}
    ``ilow`` X ↦ {x : R⁻¹(x) ⊆ X}       ``iup`` X ↦ {x : R⁻¹(x) ∩ X ≠ ∅}
    """

    def __init__(self, relation: Relation):
        self.relation = relation
        self.inverse = relation_inverse(relation)
        self.universe: Universe = relation.universe
        self.n = relation.size
        self.full = self.universe.full
        self._nbhd = {FORWARD: relation.rows, INVERSE: self.inverse.rows}
        self._memo = {(k, d): {} for k in ("low", "up") for d in Direction}

    def __repr__(self):
        return f"ApproxSpace({self.relation!r})"

    def neighborhoods(self, direction: Direction = FORWARD) -> tuple[int, ...]:
        return self._nbhd[direction]

    def _check(self, x: int):
        if x < 0 or x >> self.n:
            raise UniverseMismatch(f"subset {x:#x} is not over a universe of size {self.n}")

    def lower(self, x: int, direction: Direction = FORWARD) -> int:
        memo = self._memo["low", direction]
        try:
            return memo[x]
        except KeyError:
            pass
        self._check(x)
        out = 0
        for i, nb in enumerate(self._nbhd[direction]):
            if nb & ~x == 0:
                out |= 1 << i
        memo[x] = out
        return out

    def upper(self, x: int, direction: Direction = FORWARD) -> int:
        memo = self._memo["up", direction]
        try:
            return memo[x]
        except KeyError:
            pass
        self._check(x)
        out = 0
        for i, nb in enumerate(self._nbhd[direction]):
            if nb & x:
                out |= 1 << i
        memo[x] = out
        return out

    def low(self, x: int) -> int:
        return self.lower(x, FORWARD)

    def up(self, x: int) -> int:
        return self.upper(x, FORWARD)

    def ilow(self, x: int) -> int:
        return self.lower(x, INVERSE)

    def iup(self, x: int) -> int:
        return self.upper(x, INVERSE)

    def complement(self, x: int) -> int:
        return self.full & ~x

    # derived families -------------------------------------------------------
    def singletons(self) -> int:
        return singletons(self)

    def lower_definable(self) -> list[int]:
        """The image of the forward lower approximation, ascending."""
        return sorted({self.low(x) for x in range(1 << self.n)})

    def upper_definable(self) -> list[int]:
        """The image of the forward upper approximation, ascending."""
        return sorted({self.up(x) for x in range(1 << self.n)})


def lower(space: ApproxSpace, x: int, direction: Direction = FORWARD) -> int:
    return space.lower(x, direction)


def upper(space: ApproxSpace, x: int, direction: Direction = FORWARD) -> int:
    return space.upper(x, direction)


def singletons(space: ApproxSpace) -> int:
    """Elements whose neighbourhood has exactly one member."""
    out = 0
    for i, nb in enumerate(space.neighborhoods(FORWARD)):
        if nb.bit_count() == 1:
            out |= 1 << i
    return out


def is_definable(space: ApproxSpace, x: int, family: str) -> bool:
    """Membership in the image of the lower (``"lower"``) or upper (``"upper"``) operator.

    Tested through the round trips ``X = X^{△▼}`` and ``X = X^{▽▲}``.
    """
    if family in ("lower", "lowerDef"):
        return space.low(space.iup(x)) == x
    if family in ("upper", "upperDef"):
        return space.up(space.ilow(x)) == x
    raise ValueError(f"unknown family {family!r}")
