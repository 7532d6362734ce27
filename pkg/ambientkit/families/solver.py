"""
Coefficient families as kernels of the first differential d_1, together
with the dimension counts that bound them.
"""
import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from ambientkit.combinatorics import cardinality, enumerate_compositions, unit
from ambientkit.exceptions import NotGeneric
from ambientkit.families import CoefficientFamily, FamilyBasis
from ambientkit.linalg import ExactMatrix, ExactnessReport, certify_exactness, kernel_basis, rank, stack
from ambientkit.operators import Family, OperatorSpec, WeightAssignment
from ambientkit.operators.shifts import build_differential, differentials
from ambientkit.utils import debug


logger = logging.getLogger(__name__)


# slots whose pure powers m*e_j must agree at n = 2k
_BOUNDARY_SLOTS = {
    Family.TRI: (1, 3, 4, 5),
    Family.LIN: (),
    Family.OR_OUTER: (1, 2, 3),
    Family.OR_INNER: (3, 4),
    Family.OR_INNER2: (3, 4),
}


def lower_bound(spec: OperatorSpec) -> int:
    """Guaranteed dimension of ker d_1 at every weight."""
    if spec.family is Family.OR_OUTER:
        return 1
    return spec.top_degree + 1


def euler_characteristic(family, m: int) -> int:
    """
    Alternating sum of the cardinalities in the family's chain complex with
    top degree m: k + 1 for TRI, 1 for OR_OUTER, m + 1 otherwise.
    """
    family = Family(family)
    return sum(
        (-1) ** i * multiplicity * cardinality(m - i, family.slots)
        for i, multiplicity in enumerate(family.complex_multiplicities)
    )


def fsa_weights(spec: OperatorSpec) -> WeightAssignment:
    """
    The equal input weights -(n - 2k)/r at which a symmetric operator can be
    formally self-adjoint, r being the number of arguments of its Dirichlet
    form (the inputs plus one): -(n-2k)/4 for TRI, -(n-2k)/3 for the
    bidifferential families and -(n-2k)/2 for LIN.
    """
    arity = spec.family.arity
    value = Fraction(-(spec.n - 2 * spec.k), arity + 1)
    return WeightAssignment((value,) * arity)


def boundary_constraints(spec: OperatorSpec) -> ExactMatrix:
    """
    Rows A_{m e_i} - A_{m e_j} = 0 for consecutive slots of the family's
    boundary set, over the top index set.
    """
    m = spec.top_degree
    index_set = enumerate_compositions(m, spec.slots)
    slots = _BOUNDARY_SLOTS[spec.family]
    rows = {}
    for r, (i, j) in enumerate(zip(slots, slots[1:])):
        left = index_set.rank(unit(spec.slots, i, m))
        right = index_set.rank(unit(spec.slots, j, m))
        if left != right:
            rows[r] = {left: Fraction(1), right: Fraction(-1)}
    return ExactMatrix.from_rows(max(len(slots) - 1, 0), len(index_set), rows)


@debug('solve_family')
def solve_family(spec: OperatorSpec, w: WeightAssignment,
                 boundary: bool = False) -> FamilyBasis:
    """
    Basis of ker d_1 at weights `w`, in echelon-normalised form.

    Args:
        boundary: also impose the equalities among pure powers that the
            n = 2k case needs
    """
    w.check(spec)
    d1 = build_differential(spec, 1, w)
    if boundary:
        d1 = stack([d1, boundary_constraints(spec)])
    kernel = kernel_basis(d1)
    members = tuple(CoefficientFamily.from_vector(spec, w, v) for v in kernel)
    generic = w.is_generic() if spec.family is Family.TRI else None
    logger.debug(f"{spec.describe()} weights={w.as_strings()}: dim ker d_1 = {len(members)}")
    return FamilyBasis(spec, w, members, generic)


@dataclass(frozen=True)
class GenericExactnessReport:
    spec: OperatorSpec
    weights: WeightAssignment
    generic: Optional[bool]
    junctions: Tuple[ExactnessReport, ...]
    surjective: bool
    kernel_dimension: int
    euler_characteristic: int
    warnings: Tuple[str, ...] = field(default=())

    @property
    def exact(self) -> bool:
        return all(j.exact for j in self.junctions) and self.surjective

    @property
    def dimension_matches(self) -> bool:
        return self.kernel_dimension == self.euler_characteristic

    def as_dict(self):
        return {
            'generic': self.generic,
            'junctions': [j.as_dict() for j in self.junctions],
            'surjective': self.surjective,
            'exact': self.exact,
            'kernel_dimension': self.kernel_dimension,
            'euler_characteristic': self.euler_characteristic,
            'dimension_matches': self.dimension_matches,
            'warnings': list(self.warnings),
        }


@debug('certify_generic_exactness')
def certify_generic_exactness(spec: OperatorSpec, w: WeightAssignment) -> GenericExactnessReport:
    """
    Exactness of the family's complex at every interior term and
    surjectivity of its last map, plus dim ker d_1 against the Euler
    characteristic.

    Non-generic TRI weights only warn (NotGeneric): the checks still run
    and report which conditions fail.
    """
    w.check(spec)
    notes: List[str] = []
    generic = w.is_generic() if spec.family is Family.TRI else None
    if generic is False:
        message = f"weights {w.as_strings()} are not generic (some 2w_i is an integer)"
        warnings.warn(message, NotGeneric)
        notes.append(message)
    ds = differentials(spec, w)
    junctions = tuple(
        certify_exactness(incoming, outgoing) for incoming, outgoing in zip(ds, ds[1:])
    )
    last = ds[-1]
    surjective = rank(last) == last.rows
    kernel_dimension = ds[0].cols - rank(ds[0])
    return GenericExactnessReport(
        spec=spec,
        weights=w,
        generic=generic,
        junctions=junctions,
        surjective=surjective,
        kernel_dimension=kernel_dimension,
        euler_characteristic=euler_characteristic(spec.family, spec.top_degree),
        warnings=tuple(notes),
    )
