from fractions import Fraction

from hypothesis import given, settings, strategies as st
import pytest

from ambientkit.combinatorics import enumerate_compositions
from ambientkit.exceptions import IndexMismatch
from ambientkit.families import CoefficientFamily
from ambientkit.families.recurrences import fsa_recurrence_residuals, verify_recurrences
from ambientkit.families.solver import fsa_weights, solve_family
from ambientkit.operators import Family, OperatorSpec, WeightAssignment
from ambientkit.operators.shifts import build_differential

from tests.helpers import rationals, weight_assignments


SPECS = [
    OperatorSpec(Family.TRI, 5, 2),
    OperatorSpec(Family.LIN, 5, 3, l1=1),
    OperatorSpec(Family.OR_OUTER, 7, 2),
    OperatorSpec(Family.OR_INNER, 5, 3, l=1),
    OperatorSpec(Family.OR_INNER2, 7, 2),
]


@pytest.mark.parametrize('spec', SPECS, ids=lambda s: s.family.value)
@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_residuals_match_first_differential(spec, data):
    """
    The pointwise residuals, read block by block, are the entries of d_1 A.
    """
    w = data.draw(weight_assignments(spec.family.arity))
    size = len(enumerate_compositions(spec.top_degree, spec.slots))
    family = CoefficientFamily.from_vector(spec, w, [data.draw(rationals) for _ in range(size)])
    report = verify_recurrences(spec, w, family)
    flat = [value for table in report.residuals.values() for value in table.values()]
    assert flat == build_differential(spec, 1, w).apply(family.vector())
    assert report.passed == (not any(flat))


@pytest.mark.parametrize('spec', SPECS, ids=lambda s: s.family.value)
def test_kernel_members_pass(spec):
    w = WeightAssignment((Fraction(1, 3), Fraction(2, 5), Fraction(1, 7))[:spec.family.arity])
    for member in solve_family(spec, w):
        report = verify_recurrences(spec, w, member)
        assert report.passed
        assert report.as_dict() == {'passed': True, 'nonzero': []}


def test_mutation_is_caught():
    spec = OperatorSpec(Family.TRI, 5, 2)
    w = WeightAssignment((Fraction(1, 3),) * 3)
    member = solve_family(spec, w)[0]
    alpha = member.index_set.unrank(0)
    mutated = member.replaced(alpha, member[alpha] + 1)
    report = verify_recurrences(spec, w, mutated)
    assert not report.passed
    names = {name for name, _, _ in report.nonzero()}
    assert names <= {'B1', 'B2', 'B3'}
    assert report.as_dict()['nonzero']


def test_index_mismatch():
    family = CoefficientFamily(OperatorSpec(Family.TRI, 5, 2), WeightAssignment((0, 0, 0)), {})
    with pytest.raises(IndexMismatch):
        verify_recurrences(OperatorSpec(Family.TRI, 5, 3), WeightAssignment((0, 0, 0)), family)


def test_degree_zero_has_nothing_to_check():
    spec = OperatorSpec(Family.OR_OUTER, 5, 1, l=1)
    w = WeightAssignment((1, 1))
    family = CoefficientFamily(spec, w, {(0, 0, 0): 5})
    assert verify_recurrences(spec, w, family).passed


@pytest.mark.parametrize('spec', [
    OperatorSpec(Family.TRI, 7, 2),
    OperatorSpec(Family.TRI, 9, 3),
    OperatorSpec(Family.OR_OUTER, 7, 2),
    OperatorSpec(Family.OR_INNER2, 9, 2, l=1),
    OperatorSpec(Family.LIN, 7, 3, l1=1),
], ids=lambda s: f"{s.family.value}-{s.n}-{s.k}")
def test_fsa_residuals_vanish_on_kernel(spec):
    w = fsa_weights(spec)
    basis = solve_family(spec, w)
    assert len(basis) > 0
    for member in basis:
        assert fsa_recurrence_residuals(member).passed


def test_fsa_residual_names():
    spec = OperatorSpec(Family.TRI, 7, 2)
    member = solve_family(spec, fsa_weights(spec))[0]
    assert set(fsa_recurrence_residuals(member).residuals) == {'swap34', 'swap15', 'mixed'}


def test_fsa_residuals_empty_for_inner():
    spec = OperatorSpec(Family.OR_INNER, 7, 2)
    member = solve_family(spec, fsa_weights(spec))[0]
    report = fsa_recurrence_residuals(member)
    assert report.residuals == {}
    assert report.passed


def test_inner2_fsa_names():
    spec = OperatorSpec(Family.OR_INNER2, 7, 2)
    member = solve_family(spec, fsa_weights(spec))[0]
    assert set(fsa_recurrence_residuals(member).residuals) == {'swap34', 'mixed'}


def test_inner2_mixed_relation_is_checked():
    # symmetric in slots 3 and 4 but outside the kernel
    spec = OperatorSpec(Family.OR_INNER2, 7, 1)
    family = CoefficientFamily(spec, fsa_weights(spec), {(0, 0, 1, 0): 1, (0, 0, 0, 1): 1})
    report = fsa_recurrence_residuals(family)
    assert not any(report.residuals['swap34'].values())
    assert [(name, value) for name, _, value in report.nonzero()] == [('mixed', Fraction(5, 6))]
    assert not verify_recurrences(spec, family.weights, family).passed
