"""
Evaluation of ambient operators on polynomials of the flat model, and the
end-to-end checks built on it: tangentiality probes and the span of
symmetrised tridifferential operators.
"""
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ambientkit.ambient.calculus import FlatModel, laplacian_power, quadratic_form, remainder_mod_Q
from ambientkit.ambient.polynomial import GradedPolynomial, random_homogeneous
from ambientkit.combinatorics import multinomial
from ambientkit.exceptions import (
    InvalidInput,
    InvalidSpec,
    InvariantModeUnsupported,
    PreconditionViolated,
)
from ambientkit.families import CoefficientFamily
from ambientkit.families.recurrences import verify_recurrences
from ambientkit.families.symmetry import SymmetrizedOperator, symmetrize_family
from ambientkit.linalg import ExactMatrix, rank
from ambientkit.operators import Family, OperatorSpec, WeightAssignment
from ambientkit.utils import debug


logger = logging.getLogger(__name__)


Operator = Union[CoefficientFamily, SymmetrizedOperator]


def _check_inputs(model: FlatModel, spec: OperatorSpec, inputs: Sequence[GradedPolynomial]):
    if model.n != spec.n:
        raise InvalidInput(f"flat model has n={model.n}, the operator needs n={spec.n}")
    if spec.invariant_weight:
        raise InvariantModeUnsupported(
            f"flat model evaluates only invariant-free operators, got weight {spec.invariant_weight}"
        )
    if len(inputs) != spec.family.arity:
        raise InvalidSpec(f"{spec.family} takes {spec.family.arity} inputs, got {len(inputs)}")
    for p in inputs:
        model.check(p)
        p.homogeneous_degree()


class _Powers:
    """Lap^a of one input, computed on demand and kept."""

    def __init__(self, model, p):
        self._model = model
        self._powers = [p]

    def __getitem__(self, a):
        while len(self._powers) <= a:
            self._powers.append(laplacian_power(self._model, self._powers[-1], 1))
        return self._powers[a]


def _evaluate(model: FlatModel, family: CoefficientFamily,
              inputs: Sequence[GradedPolynomial]) -> GradedPolynomial:
    spec = family.spec
    k = spec.k
    powers = [_Powers(model, p) for p in inputs]

    def lap(p, a):
        return laplacian_power(model, p, a)

    @lru_cache(maxsize=None)
    def pair(a2, a3, a4):
        # Lap^a2((Lap^a3 u)(Lap^a4 v)) shared by TRI and OR_INNER2
        return lap(powers[0][a3] * powers[1][a4], a2)

    result = GradedPolynomial.zero(model.nvars)
    for alpha, value in family:
        if not value:
            continue
        a = alpha.parts
        if spec.family is Family.TRI:
            term = lap(pair(a[1], a[2], a[3]) * powers[2][a[4]], a[0])
        elif spec.family is Family.LIN:
            term = lap(lap(powers[0][a[2]], a[1]), a[0])
        elif spec.family is Family.OR_OUTER:
            term = lap(powers[0][a[1]] * powers[1][a[2]], a[0])
        elif spec.family is Family.OR_INNER:
            term = lap(powers[0][a[1]] * lap(powers[1][a[3]], a[2]), a[0])
        else:
            term = lap(pair(a[1], a[2], a[3]), a[0])
        result = result + term.scaled(multinomial(k, alpha) * value)
    return result


def apply_operator(model: FlatModel, spec: OperatorSpec, operator: Operator,
                   inputs: Sequence[GradedPolynomial]) -> GradedPolynomial:
    """
    Evaluate the operator with coefficients A on homogeneous inputs, e.g.
    for TRI

        sum_alpha binom(k, alpha) A_alpha
            Lap^a1( Lap^a2( (Lap^a3 u)(Lap^a4 v) ) * Lap^a5 w ).

    A SymmetrizedOperator is evaluated as the sum of its terms, each with
    its own family shape, reindexed coefficients and input order.
    The result is homogeneous of degree (sum of input degrees) - 2k.
    """
    _check_inputs(model, spec, inputs)
    if isinstance(operator, SymmetrizedOperator):
        result = GradedPolynomial.zero(model.nvars)
        for term in operator.terms:
            family = operator.term_family(term)
            result = result + _evaluate(model, family, [inputs[i] for i in term.inputs])
        return result
    return _evaluate(model, operator, inputs)


@dataclass(frozen=True)
class ProbeTrial:
    slot: int
    trial: int
    remainder_zero: bool
    commutator_zero: bool
    inputs: Tuple[GradedPolynomial, ...] = field(default=(), compare=False)

    @property
    def passed(self) -> bool:
        return self.remainder_zero and self.commutator_zero

    def as_dict(self, elide_inputs=False):
        out = {
            'slot': self.slot,
            'trial': self.trial,
            'remainder_zero': self.remainder_zero,
            'commutator_zero': self.commutator_zero,
        }
        if not elide_inputs:
            out['inputs'] = [p.to_terms() for p in self.inputs]
        return out


@dataclass(frozen=True)
class ProbeReport:
    seed: int
    weights: Tuple[int, ...]
    trials: Tuple[ProbeTrial, ...]

    @property
    def passed(self) -> bool:
        return all(t.passed for t in self.trials)

    def first_failure(self) -> Optional[ProbeTrial]:
        return next((t for t in self.trials if not t.passed), None)

    def as_dict(self, elide_inputs=False):
        return {
            'seed': self.seed,
            'weights': list(self.weights),
            'passed': self.passed,
            'trials': [t.as_dict(elide_inputs) for t in self.trials],
        }


def trial_rng(seed: int, slot: int, trial: int) -> random.Random:
    """Independent generator per (seed, slot, trial)."""
    return random.Random(f"{seed}/{slot}/{trial}")


@debug('tangentiality_probe')
def tangentiality_probe(model: FlatModel, family: Operator,
                        integer_weights: Sequence[int],
                        slot: Optional[int] = None,
                        trials: int = 25,
                        seed: int = 0,
                        require_kernel: bool = True) -> ProbeReport:
    """
    Substitute Q * v (v random of degree w_j - 2) into slot j, random
    homogeneous inputs of degree w_i elsewhere, and check that the output
    lies in the ideal of Q. The commutator [D, Q]_j is checked to vanish
    identically on the same inputs.

    Args:
        slot: 1-based input slot to probe; every slot when None
        require_kernel: refuse families that fail the recurrences at
            `integer_weights`. Mutation tests switch this off to watch the
            probe catch them. A SymmetrizedOperator is checked through
            the family it was built from.

    Raises:
        InvalidInput: the model dimension is not the operator's n
    """
    spec = family.spec
    if model.n != spec.n:
        raise InvalidInput(f"flat model has n={model.n}, the operator needs n={spec.n}")
    arity = spec.family.arity
    if len(integer_weights) != arity or any(Fraction(w).denominator != 1 for w in integer_weights):
        raise PreconditionViolated(f"need {arity} integer weights, got {list(integer_weights)}")
    degrees = tuple(int(w) for w in integer_weights)
    slots = range(1, arity + 1) if slot is None else (slot,)
    for j in slots:
        if not 1 <= j <= arity:
            raise PreconditionViolated(f"slot {j} not in 1..{arity}")
        if degrees[j - 1] < 2:
            raise PreconditionViolated(f"weight {degrees[j - 1]} in slot {j} must be at least 2")
    if spec.invariant_weight:
        raise InvariantModeUnsupported("tangentiality probes need l = 0")
    if require_kernel:
        base = family.family if isinstance(family, SymmetrizedOperator) else family
        report = verify_recurrences(spec, WeightAssignment(degrees), base)
        if not report.passed:
            raise PreconditionViolated(
                f"family is not in ker d_1 at weights {list(degrees)}"
            )

    q = quadratic_form(model)
    results = []
    for j in slots:
        for trial in range(trials):
            rng = trial_rng(seed, j, trial)
            inputs = [
                random_homogeneous(model.nvars, d - 2 if i == j else d, rng)
                for i, d in enumerate(degrees, start=1)
            ]
            substituted = list(inputs)
            substituted[j - 1] = q * inputs[j - 1]
            output = apply_operator(model, spec, family, substituted)
            remainder_zero = remainder_mod_Q(model, output).is_zero()
            commutator = output - q * apply_operator(model, spec, family, inputs)
            results.append(ProbeTrial(
                slot=j,
                trial=trial,
                remainder_zero=remainder_zero,
                commutator_zero=commutator.is_zero(),
                inputs=tuple(inputs),
            ))
    report = ProbeReport(seed, degrees, tuple(results))
    logger.debug(f"probe seed={seed}: {sum(t.passed for t in results)}/{len(results)} passed")
    return report


def polynomial_battery(model: FlatModel, count: int, seed: int,
                       max_degree: int = 3) -> List[Tuple[GradedPolynomial, ...]]:
    """`count` reproducible triples of random homogeneous polynomials."""
    rng = random.Random(f"battery/{seed}")
    return [
        tuple(
            random_homogeneous(model.nvars, rng.randint(1, max_degree), rng)
            for _ in range(3)
        )
        for _ in range(count)
    ]


@debug('symmetrized_span_dimension')
def symmetrized_span_dimension(model: FlatModel, members: Sequence[CoefficientFamily],
                               triples: Sequence[Tuple[GradedPolynomial, ...]]) -> int:
    """
    Dimension of the span of the cyclically symmetrised operators of
    `members`, measured by their outputs on `triples`.
    """
    if not members:
        return 0
    outputs: List[Dict[int, Fraction]] = []
    columns: Dict[Tuple[int, Tuple[int, ...]], int] = {}
    for member in members:
        operator = symmetrize_family(member)
        row = {}
        for t, triple in enumerate(triples):
            for exps, coef in apply_operator(model, member.spec, operator, triple).terms():
                column = columns.setdefault((t, exps), len(columns))
                row[column] = coef
        outputs.append(row)
    matrix = ExactMatrix(len(outputs), len(columns), {
        (i, j): value for i, row in enumerate(outputs) for j, value in row.items()
    })
    return rank(matrix)
