from fractions import Fraction

import pytest

from ambientkit.exceptions import HypothesisViolation, InvalidSpec
from ambientkit.operators import Family, OperatorSpec, WeightAssignment


@pytest.mark.parametrize('family,slots,arity,top_level', [
    (Family.TRI, 5, 3, 3),
    (Family.LIN, 3, 1, 1),
    (Family.OR_OUTER, 3, 2, 2),
    (Family.OR_INNER, 4, 2, 2),
    (Family.OR_INNER2, 4, 2, 2),
])
def test_family_shapes(family, slots, arity, top_level):
    assert family.slots == slots
    assert family.arity == arity
    assert family.top_level == top_level


def test_family_from_string():
    spec = OperatorSpec('OR_INNER', 5, 2, l=1)
    assert spec.family is Family.OR_INNER
    assert spec.top_degree == 1
    assert str(spec.family) == 'OR_INNER'


def test_lin_invariant_weight():
    spec = OperatorSpec(Family.LIN, 5, 4, l1=1, l2=2)
    assert spec.invariant_weight == 3
    assert spec.top_degree == 1
    assert spec.describe() == {'family': 'LIN', 'n': 5, 'k': 4, 'l1': 1, 'l2': 2}


@pytest.mark.parametrize('kwargs', [
    dict(family=Family.TRI, n=2, k=1),
    dict(family=Family.TRI, n=5, k=-1),
    dict(family=Family.TRI, n=5, k=2, l=1),
    dict(family=Family.OR_OUTER, n=5, k=2, l=3),
    dict(family=Family.OR_OUTER, n=5, k=2, l1=1),
    dict(family=Family.LIN, n=5, k=2, l=1),
    dict(family=Family.LIN, n=5, k=2, l1=-1),
    dict(family=Family.TRI, n=4, k=3),
])
def test_invalid_spec(kwargs):
    with pytest.raises(InvalidSpec):
        OperatorSpec(**kwargs)


def test_odd_n_has_no_hypothesis():
    spec = OperatorSpec(Family.TRI, 3, 5)
    assert not spec.hypothesis_violated


def test_hypothesis_violation_warns():
    with pytest.warns(HypothesisViolation):
        spec = OperatorSpec(Family.TRI, 4, 3, allow_hypothesis_violation=True)
    assert spec.hypothesis_violated


def test_weight_assignment():
    spec = OperatorSpec(Family.TRI, 5, 2)
    w = WeightAssignment.for_spec(spec, [Fraction(1, 3), 1, '-2/5'])
    assert w.total == Fraction(1, 3) + 1 - Fraction(2, 5)
    assert w.as_strings() == ['1/3', '1', '-2/5']
    assert not w.is_generic()
    with pytest.raises(InvalidSpec):
        WeightAssignment.for_spec(spec, [1, 2])


def test_is_generic():
    assert WeightAssignment((Fraction(1, 3), Fraction(2, 5), Fraction(1, 7))).is_generic()
    assert not WeightAssignment((Fraction(1, 3), Fraction(1, 2), Fraction(1, 7))).is_generic()
