"""
Operator families and their parameters.

TRI is the tridifferential family; LIN the linear family with two scalar
invariants of weights -2*l1 and -2*l2; OR_OUTER, OR_INNER and OR_INNER2
the three bidifferential families with one invariant of weight -2*l.
"""
import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence, Tuple

from ambientkit.exceptions import HypothesisViolation, InvalidSpec
from ambientkit.utils import format_rational, is_half_integer_multiple


class Family(str, Enum):
    TRI = 'TRI'
    LIN = 'LIN'
    OR_OUTER = 'OR_OUTER'
    OR_INNER = 'OR_INNER'
    OR_INNER2 = 'OR_INNER2'

    @property
    def slots(self) -> int:
        return _SLOTS[self]

    @property
    def arity(self) -> int:
        """Number of operator inputs (and of weights)."""
        return _ARITY[self]

    @property
    def complex_multiplicities(self) -> Tuple[int, ...]:
        """Copies of F_{m-i} in the i-th term of the family's chain complex."""
        return _COMPLEX[self]

    @property
    def top_level(self) -> int:
        """Highest differential d_level the family's complex has."""
        return len(self.complex_multiplicities) - 1

    def __str__(self):
        return self.value


_SLOTS = {
    Family.TRI: 5,
    Family.LIN: 3,
    Family.OR_OUTER: 3,
    Family.OR_INNER: 4,
    Family.OR_INNER2: 4,
}

_ARITY = {
    Family.TRI: 3,
    Family.LIN: 1,
    Family.OR_OUTER: 2,
    Family.OR_INNER: 2,
    Family.OR_INNER2: 2,
}

_COMPLEX = {
    Family.TRI: (1, 3, 3, 1),
    Family.LIN: (1, 1),
    Family.OR_OUTER: (1, 2, 1),
    Family.OR_INNER: (1, 2, 1),
    Family.OR_INNER2: (1, 2, 1),
}


@dataclass(frozen=True)
class OperatorSpec:
    family: Family
    n: int
    k: int
    l: int = 0  # noqa: E741
    l1: int = 0
    l2: int = 0
    allow_hypothesis_violation: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'family', Family(self.family))
        if self.n < 3:
            raise InvalidSpec(f"n must be at least 3, got {self.n}")
        if self.k < 0:
            raise InvalidSpec(f"k must be nonnegative, got {self.k}")
        if min(self.l, self.l1, self.l2) < 0:
            raise InvalidSpec("invariant weights must be nonnegative")
        if self.family is Family.LIN:
            if self.l:
                raise InvalidSpec("LIN takes --l1/--l2, not --l")
        elif self.l1 or self.l2:
            raise InvalidSpec(f"{self.family} does not take l1/l2")
        if self.family is Family.TRI and self.l:
            raise InvalidSpec("TRI has no invariant weight")
        if self.top_degree < 0:
            raise InvalidSpec(
                f"invariant weight {self.invariant_weight} exceeds k={self.k}"
            )
        if self.hypothesis_violated:
            if not self.allow_hypothesis_violation:
                raise InvalidSpec(
                    f"n={self.n} is even, so n >= 2k is required (k={self.k})"
                )
            warnings.warn(
                f"n={self.n} even with n < 2k={2 * self.k}; "
                f"the dimension bounds are not guaranteed",
                HypothesisViolation,
            )

    @property
    def slots(self) -> int:
        return self.family.slots

    @property
    def invariant_weight(self) -> int:
        if self.family is Family.LIN:
            return self.l1 + self.l2
        return self.l

    @property
    def top_degree(self) -> int:
        return self.k - self.invariant_weight

    @property
    def hypothesis_violated(self) -> bool:
        return self.n % 2 == 0 and self.n < 2 * self.k

    def describe(self) -> dict:
        out = {'family': self.family.value, 'n': self.n, 'k': self.k}
        if self.family is Family.LIN:
            out.update(l1=self.l1, l2=self.l2)
        elif self.family is not Family.TRI:
            out['l'] = self.l
        return out


@dataclass(frozen=True)
class WeightAssignment:
    weights: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, 'weights', tuple(Fraction(w) for w in self.weights)
        )

    @classmethod
    def for_spec(cls, spec: OperatorSpec, values: Sequence) -> "WeightAssignment":
        assignment = cls(tuple(values))
        assignment.check(spec)
        return assignment

    def check(self, spec: OperatorSpec):
        if len(self.weights) != spec.family.arity:
            raise InvalidSpec(
                f"{spec.family} takes {spec.family.arity} weight(s), "
                f"got {len(self.weights)}"
            )

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, index) -> Fraction:
        return self.weights[index]

    def is_generic(self) -> bool:
        """2 w_i is not an integer for every weight."""
        return not any(is_half_integer_multiple(w) for w in self.weights)

    def as_strings(self):
        return [format_rational(w) for w in self.weights]
