from fractions import Fraction
import math

import pytest

from ambientkit.exceptions import PreconditionViolated, ZeroDenominator
from ambientkit.families import CoefficientFamily
from ambientkit.families.solver import fsa_weights, solve_family
from ambientkit.families.symmetry import (
    CYCLIC_ORDERINGS,
    SymmetrizedOperator,
    check_two_slot_symmetry,
    permutation_symmetries,
    symmetrize_family,
    verify_fsa_symmetries,
)
from ambientkit.operators import Family, OperatorSpec, WeightAssignment


@pytest.mark.parametrize('n,k', [
    (3, 1),
    (5, 2),
    (7, 2),
    (7, 3),
    (9, 3),
])
def test_tri_fsa_symmetries(n, k):
    spec = OperatorSpec(Family.TRI, n, k)
    basis = solve_family(spec, fsa_weights(spec))
    assert len(basis) >= k + 1
    for member in basis:
        report = verify_fsa_symmetries(member)
        assert set(report.holds) == {'swap34', 'swap15', 'prime'}
        assert report.passed, report.as_dict()


@pytest.mark.parametrize('spec,names', [
    (OperatorSpec(Family.OR_OUTER, 7, 2), {'swap12', 'swap13'}),
    (OperatorSpec(Family.OR_OUTER, 9, 3), {'swap12', 'swap13'}),
    (OperatorSpec(Family.OR_INNER2, 7, 2), {'swap34'}),
    (OperatorSpec(Family.OR_INNER2, 9, 3, l=1), {'swap34'}),
])
def test_bidifferential_fsa_symmetries(spec, names):
    for member in solve_family(spec, fsa_weights(spec)):
        report = verify_fsa_symmetries(member)
        assert set(report.holds) == names
        assert report.passed


def test_symmetries_fail_off_fsa_weights():
    spec = OperatorSpec(Family.TRI, 5, 1)
    w = WeightAssignment((Fraction(1, 3), Fraction(2, 5), Fraction(1, 7)))
    reports = [verify_fsa_symmetries(member, require_fsa=False) for member in solve_family(spec, w)]
    assert not all(report.holds['swap34'] for report in reports)


def test_requires_fsa_weights():
    spec = OperatorSpec(Family.TRI, 7, 2)
    member = solve_family(spec, WeightAssignment((Fraction(1, 3),) * 3))[0]
    with pytest.raises(PreconditionViolated):
        verify_fsa_symmetries(member)


def test_requires_n_above_2k():
    spec = OperatorSpec(Family.TRI, 5, 3)
    member = solve_family(spec, fsa_weights(spec))[0]
    with pytest.raises(PreconditionViolated):
        verify_fsa_symmetries(member)


def test_requires_recurrences():
    spec = OperatorSpec(Family.TRI, 7, 2)
    member = solve_family(spec, fsa_weights(spec))[0]
    alpha = member.index_set.unrank(0)
    with pytest.raises(PreconditionViolated):
        verify_fsa_symmetries(member.replaced(alpha, member[alpha] + 1))


def test_permutation_symmetries_other_families():
    spec = OperatorSpec(Family.OR_INNER, 7, 2)
    member = solve_family(spec, fsa_weights(spec))[0]
    report = permutation_symmetries(member)
    assert report.holds == {}
    assert report.passed


def test_symmetrize():
    spec = OperatorSpec(Family.TRI, 7, 2)
    member = solve_family(spec, fsa_weights(spec))[0]
    operator = symmetrize_family(member)
    assert isinstance(operator, SymmetrizedOperator)
    assert operator.orderings == CYCLIC_ORDERINGS
    assert operator.spec == spec
    assert operator.as_dict()['terms'][1] == {
        'family': 'TRI', 'index_order': [0, 1, 2, 3, 4], 'inputs': [1, 2, 0],
    }
    assert operator.term_family(operator.terms[2]) == member


def test_symmetrize_linear_reverses_invariants():
    spec = OperatorSpec(Family.LIN, 7, 3, l1=1)
    member = solve_family(spec, fsa_weights(spec))[0]
    operator = symmetrize_family(member)
    assert [term.spec.l1 for term in operator.terms] == [1, 0]
    assert [term.spec.l2 for term in operator.terms] == [0, 1]
    reversed_family = operator.term_family(operator.terms[1])
    assert all(reversed_family[alpha.permuted((2, 1, 0))] == value for alpha, value in member)


def test_symmetrize_preconditions():
    spec = OperatorSpec(Family.TRI, 7, 2)
    member = solve_family(spec, WeightAssignment((Fraction(1, 3),) * 3))[0]
    with pytest.raises(PreconditionViolated):
        symmetrize_family(member)
    assert symmetrize_family(member, require_fsa=False).family == member
    spec = OperatorSpec(Family.OR_INNER, 7, 2)
    with pytest.raises(PreconditionViolated):
        symmetrize_family(solve_family(spec, fsa_weights(spec))[0])
    spec = OperatorSpec(Family.OR_OUTER, 5, 1)
    unequal = CoefficientFamily(spec, WeightAssignment((Fraction(1, 3), Fraction(2, 5))), {})
    with pytest.raises(PreconditionViolated):
        symmetrize_family(unequal, require_fsa=False)


def _factorial_table(degree):
    return {
        (i, degree - i): Fraction(1, math.factorial(i) * math.factorial(degree - i))
        for i in range(degree + 1)
    }


@pytest.mark.parametrize('degree', [0, 1, 3, 5])
def test_two_slot_symmetry(degree):
    assert check_two_slot_symmetry(_factorial_table(degree), lambda x: Fraction(x)) is True


def test_two_slot_hypothesis_fails():
    values = _factorial_table(3)
    values[(3, 0)] += 1
    with pytest.raises(PreconditionViolated):
        check_two_slot_symmetry(values, lambda x: Fraction(x))


def test_two_slot_zero_denominator():
    with pytest.raises(ZeroDenominator):
        check_two_slot_symmetry(_factorial_table(3), lambda x: Fraction(x - 2))


def test_two_slot_missing_values():
    values = _factorial_table(3)
    del values[(1, 2)]
    with pytest.raises(PreconditionViolated):
        check_two_slot_symmetry(values, lambda x: Fraction(x))
