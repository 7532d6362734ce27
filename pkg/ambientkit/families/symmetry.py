"""
Index-permutation symmetries of coefficient families at the formally
self-adjoint weights, the symmetrised operators built from them, and the
two-slot induction that drives the symmetry arguments.
"""
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Tuple

from ambientkit.combinatorics import Composition, bump, enumerate_compositions
from ambientkit.exceptions import PreconditionViolated, ZeroDenominator
from ambientkit.families import CoefficientFamily
from ambientkit.families.recurrences import (
    RecurrenceReport,
    fsa_recurrence_residuals,
    verify_recurrences,
)
from ambientkit.families.solver import fsa_weights
from ambientkit.operators import Family, OperatorSpec


logger = logging.getLogger(__name__)


# name -> 0-based slot order; A_alpha must equal A_{alpha.permuted(order)}
_PERMUTATIONS: Dict[Family, Dict[str, Tuple[int, ...]]] = {
    Family.TRI: {
        'swap34': (0, 1, 3, 2, 4),
        'swap15': (4, 1, 2, 3, 0),
        'prime': (2, 1, 0, 4, 3),
    },
    Family.OR_OUTER: {
        'swap12': (1, 0, 2),
        'swap13': (2, 1, 0),
    },
    Family.OR_INNER2: {
        'swap34': (0, 1, 3, 2),
    },
}

CYCLIC_ORDERINGS = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


@dataclass(frozen=True)
class SymmetryReport:
    holds: Dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.holds.values())

    def as_dict(self):
        return dict(self.holds)


def permutation_symmetries(family: CoefficientFamily) -> SymmetryReport:
    """Test each of the family's permutation symmetries at every alpha."""
    permutations = _PERMUTATIONS.get(family.spec.family, {})
    return SymmetryReport({
        name: all(family[alpha] == family[alpha.permuted(order)] for alpha, _ in family)
        for name, order in permutations.items()
    })


def verify_fsa_symmetries(family: CoefficientFamily, require_fsa: bool = True) -> SymmetryReport:
    """
    Check the permutation symmetries a kernel member at the formally
    self-adjoint weights must have (TRI: swap 3<->4, swap 1<->5 and
    alpha -> (a3, a2, a1, a5, a4); OR_OUTER: full symmetry; OR_INNER2:
    swap 3<->4).

    With `require_fsa` the preconditions are enforced first: n > 2k,
    weights equal to fsa_weights, and the specialised recurrences hold.
    Without it the symmetries are simply evaluated.
    """
    spec = family.spec
    if require_fsa:
        if spec.n <= 2 * spec.k:
            raise PreconditionViolated(f"symmetries need n > 2k, got n={spec.n}, k={spec.k}")
        expected = fsa_weights(spec)
        if family.weights != expected:
            raise PreconditionViolated(
                f"weights {family.weights.as_strings()} are not the formally "
                f"self-adjoint weights {expected.as_strings()}"
            )
        residuals = fsa_recurrence_residuals(family)
        if not residuals.passed:
            name, alpha, value = residuals.nonzero()[0]
            raise PreconditionViolated(
                f"recurrence {name} fails at {list(alpha.parts)} (residual {value})"
            )
    report = permutation_symmetries(family)
    logger.debug(f"{spec.family} symmetries: {report.holds}")
    return report


@dataclass(frozen=True)
class SymmetrizedTerm:
    """
    One summand of a symmetrised operator: the operator of `spec`'s family
    with coefficients B_beta = A_{beta.permuted(index_order)}, applied to
    the inputs taken in `inputs` order.
    """
    spec: OperatorSpec
    index_order: Tuple[int, ...]
    inputs: Tuple[int, ...]

    def as_dict(self):
        return {
            'family': self.spec.family.value,
            'index_order': list(self.index_order),
            'inputs': list(self.inputs),
        }


@dataclass(frozen=True)
class SymmetrizedOperator:
    """
    Sum of `terms`, all built from the coefficients of `family`. For TRI
    these are the cyclic input orderings of D itself.
    """
    family: CoefficientFamily
    terms: Tuple[SymmetrizedTerm, ...]

    @property
    def spec(self):
        return self.family.spec

    @property
    def orderings(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(term.inputs for term in self.terms)

    def term_family(self, term: SymmetrizedTerm) -> CoefficientFamily:
        return CoefficientFamily(term.spec, self.family.weights, {
            beta: self.family[beta.permuted(term.index_order)]
            for beta in enumerate_compositions(term.spec.top_degree, term.spec.slots)
        })

    def as_dict(self):
        return {'terms': [term.as_dict() for term in self.terms]}


def _terms(spec: OperatorSpec) -> Tuple[SymmetrizedTerm, ...]:
    identity = tuple(range(spec.slots))
    if spec.family is Family.TRI:
        return tuple(SymmetrizedTerm(spec, identity, order) for order in CYCLIC_ORDERINGS)
    if spec.family is Family.LIN:
        # the adjoint nests the invariants in reverse
        return (
            SymmetrizedTerm(spec, identity, (0,)),
            SymmetrizedTerm(replace(spec, l1=spec.l2, l2=spec.l1), (2, 1, 0), (0,)),
        )
    if spec.family is Family.OR_OUTER:
        return (SymmetrizedTerm(spec, identity, (0, 1)),)
    if spec.family is Family.OR_INNER2:
        # Lap^a3((Lap^a4 u) Lap^a2(I Lap^a1 v)) is OR_INNER at (a3, a4, a2, a1)
        inner = replace(spec, family=Family.OR_INNER)
        return (
            SymmetrizedTerm(spec, identity, (0, 1)),
            SymmetrizedTerm(inner, (3, 2, 0, 1), (0, 1)),
            SymmetrizedTerm(inner, (3, 2, 0, 1), (1, 0)),
        )
    raise PreconditionViolated(f"{spec.family} has no formally self-adjoint symmetrisation")


def symmetrize_family(family: CoefficientFamily, require_fsa: bool = True) -> SymmetrizedOperator:
    """
    The symmetrised operator of a TRI, LIN, OR_OUTER or OR_INNER2 family.

    With `require_fsa` the weights must be the formally self-adjoint
    weights; without it the inputs only have to share one weight.
    """
    spec = family.spec
    terms = _terms(spec)
    weights = family.weights.weights
    if require_fsa and family.weights != fsa_weights(spec):
        raise PreconditionViolated(
            f"weights {family.weights.as_strings()} are not the formally self-adjoint weights"
        )
    if len(set(weights)) > 1:
        raise PreconditionViolated(f"symmetrisation needs equal weights, got {family.weights.as_strings()}")
    return SymmetrizedOperator(family, terms)


def symmetrized_term_recurrences(operator: SymmetrizedOperator) -> List[RecurrenceReport]:
    """
    The recurrences of each term's own family, at the operator's weights.
    Every term passes exactly when each summand is tangential.
    """
    return [
        verify_recurrences(term.spec, operator.family.weights, operator.term_family(term))
        for term in operator.terms
    ]


def check_two_slot_symmetry(values: Mapping, f: Callable[[int], Fraction]) -> bool:
    """
    Given A on I_{k+1}^2 and f nonzero on 1..k+1 with

        f(a1 + 1) A_{a1+1, a2} = f(a2 + 1) A_{a1, a2+1}    for all a in I_k^2,

    report whether A is symmetric (which the hypothesis forces).

    Raises:
        ZeroDenominator: f vanishes somewhere on 1..k+1
        PreconditionViolated: the hypothesis relation fails
    """
    table = {
        (alpha if isinstance(alpha, Composition) else Composition(tuple(alpha))): Fraction(v)
        for alpha, v in values.items()
    }
    degree = next(iter(table)).degree if table else 0
    index_set = enumerate_compositions(degree, 2)
    missing = [alpha for alpha in index_set if alpha not in table]
    if missing or len(table) != len(index_set):
        raise PreconditionViolated(f"values must cover exactly I_{degree}^2")
    for i in range(1, degree + 1):
        if not f(i):
            raise ZeroDenominator(f"f({i}) = 0")
    for alpha in enumerate_compositions(degree - 1, 2):
        left = f(alpha[0] + 1) * table[bump(alpha, 1)]
        right = f(alpha[1] + 1) * table[bump(alpha, 2)]
        if left != right:
            raise PreconditionViolated(
                f"hypothesis fails at {list(alpha.parts)}: {left} != {right}"
            )
    return all(table[alpha] == table[alpha.permuted((1, 0))] for alpha in index_set)
