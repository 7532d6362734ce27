"""
Weighted shift operators F_{j,w} : F_s -> F_{s-1},

    F_{j,w}(A)_alpha = c_j(alpha) * A_{alpha + e_j},

with an affine coefficient c_j per family, and the differentials of each
family's chain complex assembled from them as block matrices.

Coefficients always use the full order k (not the top degree k - l).
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from ambientkit.combinatorics import Composition, bump, enumerate_compositions
from ambientkit.exceptions import (
    DegenerateWeight,
    IndexMismatch,
    LevelUnavailable,
    VariantUnavailable,
)
from ambientkit.linalg import ExactMatrix, compose
from ambientkit.operators import Family, OperatorSpec, WeightAssignment


logger = logging.getLogger(__name__)


class Variant(str, Enum):
    F1 = 'F1'
    F2 = 'F2'
    F2P = "F2'"
    F3 = 'F3'
    F4 = 'F4'
    F5 = 'F5'

    @property
    def slot(self) -> int:
        """The index slot this shift raises (1-based)."""
        return 2 if self is Variant.F2P else int(self.value[1])

    def __str__(self):
        return self.value


F1, F2, F2P, F3, F4, F5 = Variant

# coefficient rules: (n/2, k, spec, alpha parts (0-based), weights) -> value
Rule = Callable[[Fraction, int, OperatorSpec, Tuple[int, ...], WeightAssignment], Fraction]


def _f1(h, k, spec, a, w):
    return h + w.total - 2 * k + a[0] + 1


_RULES: Dict[Family, Dict[Variant, Rule]] = {
    Family.TRI: {
        F1: _f1,
        F2: lambda h, k, spec, a, w: h + w[0] + w[1] - a[1] - 2 * a[2] - 2 * a[3] - 1,
        F2P: lambda h, k, spec, a, w: h + w[0] + w[1] - a[1] - 2 * a[2] - 2 * a[3] - 3,
        F3: lambda h, k, spec, a, w: h + w[0] - a[2] - 1,
        F4: lambda h, k, spec, a, w: h + w[1] - a[3] - 1,
        F5: lambda h, k, spec, a, w: h + w[2] - a[4] - 1,
    },
    Family.LIN: {
        F1: _f1,
        F2: lambda h, k, spec, a, w: h + w[0] - 2 * spec.l2 - a[1] - 2 * a[2] - 1,
        F2P: lambda h, k, spec, a, w: h + w[0] - 2 * spec.l2 - a[1] - 2 * a[2] - 3,
        F3: lambda h, k, spec, a, w: h + w[0] - a[2] - 1,
    },
    Family.OR_OUTER: {
        F1: _f1,
        F2: lambda h, k, spec, a, w: h + w[0] - a[1] - 1,
        F3: lambda h, k, spec, a, w: h + w[1] - a[2] - 1,
    },
    Family.OR_INNER: {
        F1: _f1,
        F2: lambda h, k, spec, a, w: h + w[0] - a[1] - 1,
        F3: lambda h, k, spec, a, w: h + w[1] - 2 * spec.l - a[2] - 2 * a[3] - 1,
        F4: lambda h, k, spec, a, w: h + w[1] - a[3] - 1,
    },
    Family.OR_INNER2: {
        F1: _f1,
        F2: lambda h, k, spec, a, w: h + w.total - a[1] - 2 * a[2] - 2 * a[3] - 1,
        F2P: lambda h, k, spec, a, w: h + w.total - a[1] - 2 * a[2] - 2 * a[3] - 3,
        F3: lambda h, k, spec, a, w: h + w[0] - a[2] - 1,
        F4: lambda h, k, spec, a, w: h + w[1] - a[3] - 1,
    },
}


def variants(family: Family) -> Tuple[Variant, ...]:
    return tuple(_RULES[Family(family)])


def _rule(spec: OperatorSpec, variant) -> Rule:
    variant = Variant(variant)
    try:
        return _RULES[spec.family][variant]
    except KeyError:
        raise VariantUnavailable(f"{variant} is not defined for {spec.family}")


def shift_coefficient(spec: OperatorSpec, variant, alpha: Composition,
                      w: WeightAssignment) -> Fraction:
    rule = _rule(spec, variant)
    if alpha.slots != spec.slots:
        raise IndexMismatch(f"{alpha} has {alpha.slots} slots, {spec.family} needs {spec.slots}")
    w.check(spec)
    return Fraction(rule(Fraction(spec.n, 2), spec.k, spec, alpha.parts, w))


def build_shift_matrix(spec: OperatorSpec, variant, s: int,
                       w: WeightAssignment) -> ExactMatrix:
    """
    Matrix of F_{j,w} : F_s -> F_{s-1} in the ordered bases of I_s and
    I_{s-1}. Row alpha has its single entry in column alpha + e_j.
    """
    variant = Variant(variant)
    rule = _rule(spec, variant)
    w.check(spec)
    source = enumerate_compositions(s, spec.slots)
    target = enumerate_compositions(s - 1, spec.slots)
    half = Fraction(spec.n, 2)
    rows = {}
    for i, alpha in enumerate(target):
        value = Fraction(rule(half, spec.k, spec, alpha.parts, w))
        if value:
            rows[i] = {source.rank(bump(alpha, variant.slot)): value}
    return ExactMatrix.from_rows(len(target), len(source), rows)


def _plus(*vs):
    return tuple((1, v) for v in vs)


def _minus(*vs):
    return tuple((-1, v) for v in vs)


ZERO = ()

# d_level as rows of blocks; each block is a signed sum of shifts
_LAYOUTS = {
    Family.TRI: {
        1: [
            [_plus(F1, F2, F3)],
            [_plus(F1, F2, F4)],
            [_plus(F1, F5)],
        ],
        2: [
            [_minus(F1, F5), _plus(F1, F5), _plus(F3) + _minus(F4)],
            [_plus(F1, F5), ZERO, _minus(F1, F2, F3)],
            [_minus(F1, F2P, F4), _plus(F1, F2P, F3), ZERO],
        ],
        3: [
            [_plus(F1, F2P, F3), _plus(F3) + _minus(F4), _minus(F1, F5)],
        ],
    },
    Family.LIN: {
        1: [[_plus(F1, F2, F3)]],
    },
    Family.OR_OUTER: {
        1: [[_plus(F1, F2)], [_plus(F1, F3)]],
        2: [[_plus(F1, F3), _minus(F1, F2)]],
    },
    Family.OR_INNER: {
        1: [[_plus(F1, F2)], [_plus(F1, F3, F4)]],
        2: [[_plus(F1, F3, F4), _minus(F1, F2)]],
    },
    Family.OR_INNER2: {
        1: [[_plus(F1, F2, F3)], [_plus(F1, F2, F4)]],
        2: [[_plus(F1, F2P, F4), _minus(F1, F2P, F3)]],
    },
}


def shift_sum(spec: OperatorSpec, terms, s: int, w: WeightAssignment) -> ExactMatrix:
    """Signed sum of shifts F_s -> F_{s-1}; the empty sum is the zero map."""
    result = ExactMatrix.zero(
        len(enumerate_compositions(s - 1, spec.slots)),
        len(enumerate_compositions(s, spec.slots)),
    )
    for sign, variant in terms:
        term = build_shift_matrix(spec, variant, s, w)
        result = result + term if sign > 0 else result - term
    return result


def build_differential(spec: OperatorSpec, level: int, w: WeightAssignment) -> ExactMatrix:
    """
    d_level : (F_{m-level+1})^a -> (F_{m-level})^b for m the top degree,
    with stacked copies ordered as the block rows/columns of the family's
    complex. Index sets of negative degree make 0-sized blocks.
    """
    layout = _LAYOUTS[spec.family].get(level)
    if layout is None:
        raise LevelUnavailable(
            f"{spec.family} has differentials d_1..d_{spec.family.top_level}, not d_{level}"
        )
    source_degree = spec.top_degree - level + 1
    blocks = [
        [shift_sum(spec, terms, source_degree, w) for terms in block_row]
        for block_row in layout
    ]
    matrix = ExactMatrix.block(blocks)
    logger.debug(f"{spec.family} d_{level}: {matrix.rows}x{matrix.cols}")
    return matrix


def differentials(spec: OperatorSpec, w: WeightAssignment) -> List[ExactMatrix]:
    """[d_1, ..., d_top] for the family."""
    return [build_differential(spec, level, w) for level in range(1, spec.family.top_level + 1)]


# ('commute', i, j): F_i F_j = F_j F_i
# ('twisted', i, j): F_i F_j = F_j' F_i, with F_j' the primed variant
_RELATIONS = {
    Family.TRI: (
        [('commute', a, b) for a, b in ((F1, F3), (F1, F4), (F1, F5), (F3, F4), (F3, F5), (F4, F5))]
        + [('commute', F1, F2), ('commute', F5, F2)]
        + [('twisted', F3, F2), ('twisted', F4, F2)]
    ),
    Family.LIN: [('commute', F1, F2), ('commute', F1, F3), ('twisted', F3, F2)],
    Family.OR_OUTER: [('commute', F1, F2), ('commute', F1, F3), ('commute', F2, F3)],
    Family.OR_INNER: [
        ('commute', F1, F2), ('commute', F1, F3), ('commute', F1, F4),
        ('commute', F2, F3), ('commute', F2, F4),
    ],
    Family.OR_INNER2: [
        ('commute', F1, F2), ('commute', F1, F3), ('commute', F1, F4),
        ('commute', F3, F4), ('twisted', F3, F2), ('twisted', F4, F2),
    ],
}


def _relation_name(kind, i, j, symbol='F'):
    i, j = f"{symbol}{i.slot}", f"{symbol}{j.slot}"
    if kind == 'commute':
        return f"[{i},{j}]=0"
    return f"{i}{j}={j}'{i}"


@dataclass(frozen=True)
class RelationCheck:
    name: str
    holds: bool


@dataclass(frozen=True)
class RelationReport:
    family: Family
    degree: int
    checks: Tuple[RelationCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.holds for check in self.checks)

    def as_dict(self):
        return {check.name: check.holds for check in self.checks}


def commutator(spec: OperatorSpec, a, b, s: int, w: WeightAssignment) -> ExactMatrix:
    """F_a F_b - F_b F_a : F_s -> F_{s-2}"""
    return (
        compose(build_shift_matrix(spec, a, s - 1, w), build_shift_matrix(spec, b, s, w))
        - compose(build_shift_matrix(spec, b, s - 1, w), build_shift_matrix(spec, a, s, w))
    )


def _primed(variant):
    if variant is not F2:
        raise VariantUnavailable(f"no primed companion for {variant}")
    return F2P


def verify_commutation_relations(spec: OperatorSpec, w: WeightAssignment,
                                 s: int) -> RelationReport:
    """
    Build both sides of every stated shift relation as matrices F_s ->
    F_{s-2} (outer factor at degree s-1) and compare exactly.
    """
    checks = []
    for kind, i, j in _RELATIONS[spec.family]:
        if kind == 'commute':
            holds = commutator(spec, i, j, s, w).is_zero()
        else:
            left = compose(build_shift_matrix(spec, i, s - 1, w), build_shift_matrix(spec, j, s, w))
            right = compose(
                build_shift_matrix(spec, _primed(j), s - 1, w), build_shift_matrix(spec, i, s, w)
            )
            holds = left == right
        checks.append(RelationCheck(_relation_name(kind, i, j), holds))
    return RelationReport(spec.family, s, tuple(checks))


def right_inverse_matrix(spec: OperatorSpec, variant, s: int,
                         w: WeightAssignment) -> ExactMatrix:
    """
    The right inverse G_j : F_{s-1} -> F_s of F_{j,w} at source degree s
    with (G_j A)_beta = 0 whenever beta_j = 0.
    """
    variant = Variant(variant)
    rule = _rule(spec, variant)
    w.check(spec)
    source = enumerate_compositions(s - 1, spec.slots)
    target = enumerate_compositions(s, spec.slots)
    half = Fraction(spec.n, 2)
    rows = {}
    for i, alpha in enumerate(source):
        value = Fraction(rule(half, spec.k, spec, alpha.parts, w))
        if not value:
            raise DegenerateWeight(
                f"{variant} coefficient vanishes at {list(alpha.parts)}", alpha=alpha
            )
        rows[target.rank(bump(alpha, variant.slot))] = {i: 1 / value}
    return ExactMatrix.from_rows(len(target), len(source), rows)


def verify_right_inverses(spec: OperatorSpec, w: WeightAssignment, s: int) -> RelationReport:
    """
    F_j G_j = I on F_{s-1} for every variant, and the companion relations
    among the G's: [G_i, G_j] = 0 where F_i, F_j commute, G_i G_2' = G_2 G_i
    where F_i F_2 = F_2' F_i. Raises DegenerateWeight if some G does not
    exist at these weights.
    """
    checks = []
    identity = ExactMatrix.identity(len(enumerate_compositions(s - 1, spec.slots)))
    for variant in variants(spec.family):
        product = compose(
            build_shift_matrix(spec, variant, s, w), right_inverse_matrix(spec, variant, s, w)
        )
        checks.append(RelationCheck(f"{variant}G{variant.value[1:]}=I", product == identity))
    if s >= 2:
        def g(variant, degree):
            return right_inverse_matrix(spec, variant, degree, w)

        for kind, i, j in _RELATIONS[spec.family]:
            if kind == 'commute':
                holds = compose(g(i, s), g(j, s - 1)) == compose(g(j, s), g(i, s - 1))
            else:
                holds = compose(g(i, s), g(_primed(j), s - 1)) == compose(g(j, s), g(i, s - 1))
            name = (
                _relation_name(kind, i, j, 'G') if kind == 'commute'
                else f"G{i.slot}G2'=G2G{i.slot}"
            )
            checks.append(RelationCheck(name, holds))
    return RelationReport(spec.family, s, tuple(checks))
