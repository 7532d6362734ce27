import math

from hypothesis import given, strategies as st
import pytest

from ambientkit.combinatorics import (
    Composition,
    bump,
    cardinality,
    enumerate_compositions,
    multinomial,
    unit,
)
from ambientkit.exceptions import DegreeMismatch, NotInIndexSet, SlotOutOfRange


degrees = st.integers(min_value=0, max_value=8)
slot_counts = st.integers(min_value=1, max_value=5)


def test_enumerate_order():
    index_set = enumerate_compositions(2, 3)
    assert [alpha.parts for alpha in index_set] == [
        (2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2),
    ]


@pytest.mark.parametrize('s,slots,expected', [
    (0, 5, 1),
    (3, 1, 1),
    (2, 3, 6),
    (4, 5, 70),
    (-1, 3, 0),
])
def test_cardinality(s, slots, expected):
    assert cardinality(s, slots) == expected
    assert len(enumerate_compositions(s, slots)) == expected


@given(degrees, slot_counts)
def test_enumerate_matches_cardinality(s, slots):
    index_set = enumerate_compositions(s, slots)
    assert len(index_set) == math.comb(s + slots - 1, slots - 1)
    assert len(set(index_set)) == len(index_set)
    assert all(alpha.degree == s and alpha.slots == slots for alpha in index_set)


@given(degrees, slot_counts, st.data())
def test_rank_unrank(s, slots, data):
    index_set = enumerate_compositions(s, slots)
    ordinal = data.draw(st.integers(min_value=0, max_value=len(index_set) - 1))
    alpha = index_set.unrank(ordinal)
    assert index_set.rank(alpha) == ordinal


def test_descending_lexicographic():
    parts = [alpha.parts for alpha in enumerate_compositions(4, 4)]
    assert parts == sorted(parts, reverse=True)


def test_negative_degree_is_empty():
    index_set = enumerate_compositions(-2, 5)
    assert len(index_set) == 0
    assert list(index_set) == []


def test_rank_errors():
    index_set = enumerate_compositions(2, 3)
    with pytest.raises(NotInIndexSet):
        index_set.rank(Composition.of(1, 1))
    with pytest.raises(NotInIndexSet):
        index_set.rank(Composition.of(1, 1, 1))
    with pytest.raises(NotInIndexSet):
        index_set.unrank(len(index_set))
    with pytest.raises(NotInIndexSet):
        index_set.unrank(-1)


def test_composition_rejects_negative_parts():
    with pytest.raises(ValueError):
        Composition.of(1, -1)


def test_composition_permuted():
    alpha = Composition.of(1, 2, 3, 4, 5)
    assert alpha.permuted((2, 1, 0, 4, 3)).parts == (3, 2, 1, 5, 4)


@pytest.mark.parametrize('k,parts,expected', [
    (0, (0, 0, 0), 1),
    (3, (3, 0), 1),
    (3, (1, 1, 1), 6),
    (4, (2, 1, 1, 0, 0), 12),
])
def test_multinomial(k, parts, expected):
    assert multinomial(k, Composition(parts)) == expected


@given(st.integers(min_value=0, max_value=6), st.integers(min_value=1, max_value=4))
def test_multinomials_sum_to_power(k, slots):
    total = sum(multinomial(k, alpha) for alpha in enumerate_compositions(k, slots))
    assert total == slots ** k


def test_multinomial_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        multinomial(3, Composition.of(1, 1))


def test_bump_and_unit():
    alpha = Composition.of(0, 2, 1)
    assert bump(alpha, 1).parts == (1, 2, 1)
    assert bump(alpha, 3).parts == (0, 2, 2)
    assert unit(5, 4, 3).parts == (0, 0, 0, 3, 0)


@pytest.mark.parametrize('j', [0, 4, -1])
def test_slot_out_of_range(j):
    with pytest.raises(SlotOutOfRange):
        bump(Composition.of(0, 0, 0), j)
    with pytest.raises(SlotOutOfRange):
        unit(3, j)
