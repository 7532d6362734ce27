"""
The recurrence relations of each family evaluated pointwise.

For every alpha in I_{m-1} the residuals below are the coefficients of the
commutator [D, Q]_j written out term by term; a family is tangential
exactly when all of them vanish. They are encoded here independently of
the shift matrices so the two encodings can check one another.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from ambientkit.combinatorics import Composition, bump, enumerate_compositions
from ambientkit.exceptions import IndexMismatch
from ambientkit.families import CoefficientFamily
from ambientkit.operators import Family, OperatorSpec, WeightAssignment


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RecurrenceReport:
    residuals: Dict[str, Dict[Composition, Fraction]]

    @property
    def passed(self) -> bool:
        return not any(value for table in self.residuals.values() for value in table.values())

    def nonzero(self) -> List[Tuple[str, Composition, Fraction]]:
        return [
            (name, alpha, value)
            for name, table in self.residuals.items()
            for alpha, value in table.items()
            if value
        ]

    def as_dict(self):
        return {
            'passed': self.passed,
            'nonzero': [
                {'residual': name, 'alpha': list(alpha.parts), 'value': str(value)}
                for name, alpha, value in self.nonzero()
            ],
        }


class _Point:
    """Values A_{alpha + e_j} and alpha's parts at one alpha in I_{m-1}."""

    def __init__(self, family: CoefficientFamily, alpha: Composition):
        self._family = family
        self._alpha = alpha
        self.a = (None,) + alpha.parts

    def __call__(self, j) -> Fraction:
        return self._family[bump(self._alpha, j)]


def _tri(n, k, spec, w, p):
    h = Fraction(n, 2)
    a = p.a
    first = (h + w.total - 2 * k + a[1] + 1) * p(1)
    second = (h + w[0] + w[1] - a[2] - 2 * a[3] - 2 * a[4] - 1) * p(2)
    return {
        'B1': (h + w[0] - a[3] - 1) * p(3) + first + second,
        'B2': (h + w[1] - a[4] - 1) * p(4) + first + second,
        'B3': (h + w[2] - a[5] - 1) * p(5) + first,
    }


def _lin(n, k, spec, w, p):
    h = Fraction(n, 2)
    a = p.a
    return {
        'B': (h + w[0] - 2 * k + a[1] + 1) * p(1)
        + (h + w[0] - 2 * spec.l2 - a[2] - 2 * a[3] - 1) * p(2)
        + (h + w[0] - a[3] - 1) * p(3),
    }


def _or_outer(n, k, spec, w, p):
    h = Fraction(n, 2)
    a = p.a
    first = (h + w.total - 2 * k + a[1] + 1) * p(1)
    return {
        'B1': first + (h + w[0] - a[2] - 1) * p(2),
        'B2': first + (h + w[1] - a[3] - 1) * p(3),
    }


def _or_inner(n, k, spec, w, p):
    h = Fraction(n, 2)
    a = p.a
    first = (h + w.total - 2 * k + a[1] + 1) * p(1)
    return {
        'B1': first + (h + w[0] - a[2] - 1) * p(2),
        'B2': first
        + (h + w[1] - 2 * spec.l - a[3] - 2 * a[4] - 1) * p(3)
        + (h + w[1] - a[4] - 1) * p(4),
    }


def _or_inner2(n, k, spec, w, p):
    h = Fraction(n, 2)
    a = p.a
    shared = (
        (h + w.total - 2 * k + a[1] + 1) * p(1)
        + (h + w.total - a[2] - 2 * a[3] - 2 * a[4] - 1) * p(2)
    )
    return {
        'B1': shared + (h + w[0] - a[3] - 1) * p(3),
        'B2': shared + (h + w[1] - a[4] - 1) * p(4),
    }


_RESIDUALS: Dict[Family, Callable] = {
    Family.TRI: _tri,
    Family.LIN: _lin,
    Family.OR_OUTER: _or_outer,
    Family.OR_INNER: _or_inner,
    Family.OR_INNER2: _or_inner2,
}


def _check_indexing(spec: OperatorSpec, family: CoefficientFamily):
    theirs = family.index_set
    if theirs.slots != spec.slots or theirs.degree != spec.top_degree:
        raise IndexMismatch(
            f"family indexed by I_{theirs.degree}^{theirs.slots}, "
            f"{spec.family} needs I_{spec.top_degree}^{spec.slots}"
        )


def _collect(spec, family, evaluate) -> RecurrenceReport:
    residuals: Dict[str, Dict[Composition, Fraction]] = {}
    for alpha in enumerate_compositions(spec.top_degree - 1, spec.slots):
        for name, value in evaluate(_Point(family, alpha)).items():
            residuals.setdefault(name, {})[alpha] = Fraction(value)
    report = RecurrenceReport(residuals)
    logger.debug(f"{spec.family}: {len(report.nonzero())} nonzero residuals")
    return report


def verify_recurrences(spec: OperatorSpec, w: WeightAssignment,
                       family: CoefficientFamily) -> RecurrenceReport:
    """
    Residual families B^(j) on I_{m-1}. All of them vanish exactly when
    `family` is annihilated by d_1; for m = 0 there is nothing to check.
    """
    _check_indexing(spec, family)
    w.check(spec)
    rule = _RESIDUALS[spec.family]
    return _collect(spec, family, lambda p: rule(spec.n, spec.k, spec, w, p))


def _tri_fsa(n, k, spec, p):
    a = p.a

    def c(i):
        return n + 2 * k - 4 * a[i] - 4

    return {
        'swap34': c(3) * p(3) - c(4) * p(4),
        'swap15': c(5) * p(5) - c(1) * p(1),
        'mixed': c(3) * p(3) - c(1) * p(1) + 4 * (a[1] - a[3] - a[4] + a[5]) * p(2),
    }


def _or_fsa_factor(n, k):
    return Fraction(n + 4 * k, 6)


def _or_outer_fsa(n, k, spec, p):
    c = _or_fsa_factor(n, k)
    a = p.a
    return {
        'swap12': (c - a[1] - 1) * p(1) - (c - a[2] - 1) * p(2),
        'swap13': (c - a[1] - 1) * p(1) - (c - a[3] - 1) * p(3),
    }


def _or_inner2_fsa(n, k, spec, p):
    c = _or_fsa_factor(n, k)
    a = p.a
    return {
        'swap34': (c - a[3] - 1) * p(3) - (c - a[4] - 1) * p(4),
        # B1 with h + W = (8k - n)/6
        'mixed': (c - a[3] - 1) * p(3)
        - (c - a[1] - 1) * p(1)
        + (Fraction(8 * k - n, 6) - a[2] - 2 * a[3] - 2 * a[4] - 1) * p(2),
    }


def _lin_fsa(n, k, spec, p):
    a = p.a
    return {
        'B': (k - a[3] - 1) * p(3)
        - (k - a[1] - 1) * p(1)
        + (spec.l1 - spec.l2 + a[1] - a[3]) * p(2),
    }


_FSA_RESIDUALS = {
    Family.TRI: _tri_fsa,
    Family.LIN: _lin_fsa,
    Family.OR_OUTER: _or_outer_fsa,
    Family.OR_INNER2: _or_inner2_fsa,
}


def fsa_recurrence_residuals(family: CoefficientFamily) -> RecurrenceReport:
    """
    The recurrences specialised to the formally self-adjoint weights,
    rearranged into the forms the symmetry arguments use. Every kernel
    member at those weights satisfies them. OR_INNER has no formally
    self-adjoint specialisation and gives an empty report.
    """
    spec = family.spec
    rule = _FSA_RESIDUALS.get(spec.family)
    if rule is None:
        return RecurrenceReport({})
    return _collect(spec, family, lambda p: rule(spec.n, spec.k, spec, p))
