"""Named example relations used across tests, docs and the CLI."""

from .relations import Relation, Universe

_ABC = Universe(("a", "b", "c"))


def fix1() -> Relation:
    """Non-transitive relation whose rough sets violate the Chajda identity."""
    return Relation.from_neighborhoods(_ABC, {"a": "ab", "b": "bc", "c": "c"})


def fix2() -> Relation:
    """Path-shaped tolerance on five points; its rough sets are not a lattice."""
    u = Universe(("1", "2", "3", "4", "5"))
    return Relation.from_neighborhoods(u, {
        "1": ["1", "2"],
        "2": ["1", "2", "3"],
        "3": ["2", "3", "4"],
        "4": ["3", "4", "5"],
        "5": ["4", "5"],
    })


def fix3() -> Relation:
    """Quasiorder ``a ≤ b`` with ``c`` isolated."""
    return Relation.from_neighborhoods(_ABC, {"a": "ab", "b": "b", "c": "c"})


def fix4() -> Relation:
    """Equivalence with classes ``{a, b}`` and ``{c}``."""
    return Relation.from_neighborhoods(_ABC, {"a": "ab", "b": "ab", "c": "c"})


FIXTURES = {"fix1": fix1, "fix2": fix2, "fix3": fix3, "fix4": fix4}
