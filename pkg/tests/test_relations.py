import itertools
import warnings

import pytest
from hypothesis import given

from conftest import relations, reflexive_relations
from roughdm.errors import NotAnEquivalence, PreconditionError, UniverseMismatch
from roughdm.fixtures import fix1, fix2, fix3, fix4
from roughdm.relations import (
    Partition, Relation, Universe, bits, classify, equivalence_classes, equivalence_closure,
    is_block, is_irredundant_covering_tolerance, is_saturated, relation_compose,
    relation_inverse, set_partitions, transitive_closure,
)

ABC = Universe(("a", "b", "c"))


def naive_pairs(r):
    return {(i, j) for i in range(r.size) for j in range(r.size) if r.rows[i] >> j & 1}


def test_universe_masks_round_trip():
    assert ABC.mask("ac") == 0b101
    assert ABC.members(0b101) == ["a", "c"]
    assert ABC.format(0) == "∅"
    assert ABC.format(0b011) == "ab"
    assert Universe(("x1", "x2")).format(0b11) == "x1,x2"


def test_universe_rejects_bad_input():
    with pytest.raises(PreconditionError):
        Universe(())
    with pytest.raises(PreconditionError):
        Universe(("a", "a"))
    with pytest.raises(PreconditionError):
        ABC.index("z")
    with pytest.raises(UniverseMismatch):
        ABC.check(0b1000)


def test_relation_constructors_agree():
    by_nb = Relation.from_neighborhoods(ABC, {"a": "ab", "b": "bc", "c": "c"})
    by_pairs = Relation.from_pairs(ABC, [("a", "a"), ("a", "b"), ("b", "b"), ("b", "c"),
                                         ("c", "c"), ("a", "b")])
    by_matrix = Relation.from_matrix(ABC, by_nb.matrix())
    assert by_nb == by_pairs == by_matrix == fix1()


def test_wrong_row_count():
    with pytest.raises(UniverseMismatch):
        Relation(ABC, (1, 2))


@given(relations())
def test_inverse_is_pair_swap(r):
    assert naive_pairs(relation_inverse(r)) == {(j, i) for i, j in naive_pairs(r)}
    assert relation_inverse(relation_inverse(r)) == r


@given(relations(max_size=3), relations(max_size=3))
def test_compose_matches_definition(r, s):
    if r.universe != s.universe:
        with pytest.raises(UniverseMismatch):
            relation_compose(r, s)
        return
    rp, sp = naive_pairs(r), naive_pairs(s)
    want = {(x, z) for x, y in rp for y2, z in sp if y == y2}
    assert naive_pairs(relation_compose(r, s)) == want


@given(relations())
def test_transitive_closure_is_least(r):
    t = transitive_closure(r)
    assert classify(t).transitive and r.issubset(t)
    # Warshall oracle
    n = r.size
    m = [[bool(r.rows[i] >> j & 1) for j in range(n)] for i in range(n)]
    for k, i, j in itertools.product(range(n), repeat=3):
        m[i][j] = m[i][j] or (m[i][k] and m[k][j])
    assert t.matrix() == m


@given(reflexive_relations())
def test_equivalence_closure_is_equivalence(r):
    e = equivalence_closure(r)
    assert classify(e).equivalence and r.issubset(e)


def test_equivalence_closure_warns_on_irreflexive():
    with pytest.warns(UserWarning):
        equivalence_closure(Relation.empty(ABC))


def test_fixture_classification():
    assert classify(fix1()).as_dict()["reflexive"] and not classify(fix1()).transitive
    assert classify(fix2()).tolerance and not classify(fix2()).transitive
    assert classify(fix3()).quasiorder and not classify(fix3()).symmetric
    assert classify(fix4()).equivalence


def test_equivalence_classes_and_saturation():
    e = fix4()
    p = equivalence_classes(e)
    assert p.format() == "ab|c"
    assert is_saturated(e, ABC.mask("ab"))
    assert not is_saturated(e, ABC.mask("a"))
    assert is_saturated(e, 0)
    with pytest.raises(NotAnEquivalence):
        equivalence_classes(fix3())
    assert sorted(p.saturated_sets()) == [0, 0b011, 0b100, 0b111]


def test_partition_validation():
    with pytest.raises(PreconditionError):
        Partition(ABC, (0b011, 0b110))
    with pytest.raises(PreconditionError):
        Partition(ABC, (0b011,))
    assert Partition(ABC, (0b100, 0b011)).blocks == (0b011, 0b100)


def _bell_by_brute_force(n):
    u = Universe.of_size(n)
    count = 0
    for rows in itertools.product(range(1 << n), repeat=n):
        if classify(Relation(u, rows)).equivalence:
            count += 1
    return count


@pytest.mark.parametrize("n", [1, 2, 3])
def test_set_partitions_counts(n):
    parts = list(set_partitions(list(range(n))))
    assert len(parts) == _bell_by_brute_force(n)
    assert len({tuple(map(tuple, p)) for p in parts}) == len(parts)


def test_blocks_and_irredundant_coverings():
    r = fix2()
    u = r.universe
    assert is_block(r, u.mask("12"))
    assert not is_block(r, u.mask("123"))
    assert is_irredundant_covering_tolerance(fix4())
    assert not is_irredundant_covering_tolerance(fix3())
    # 2 and 3 are related but no neighbourhood containing both is a block
    assert not is_irredundant_covering_tolerance(fix2())


@given(reflexive_relations())
def test_irredundant_check_matches_definition(r):
    n = r.size
    want = classify(r).tolerance and all(
        any(r.rows[c] >> a & 1 and r.rows[c] >> b & 1 and is_block(r, r.rows[c]) for c in range(n))
        for a in range(n) for b in bits(r.rows[a]))
    assert is_irredundant_covering_tolerance(r) == want


@given(reflexive_relations())
def test_equivalences_are_irredundant(r):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert is_irredundant_covering_tolerance(equivalence_closure(r))
