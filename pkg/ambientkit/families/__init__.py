"""
Coefficient families: exact rational functions on the top index set of an
operator family. Each one is the data of a single ambient operator.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Optional, Sequence, Tuple

from ambientkit.combinatorics import Composition, IndexSet, enumerate_compositions
from ambientkit.exceptions import IndexMismatch
from ambientkit.operators import OperatorSpec, WeightAssignment


def _as_composition(alpha) -> Composition:
    return alpha if isinstance(alpha, Composition) else Composition(tuple(alpha))


@dataclass(frozen=True)
class CoefficientFamily:
    spec: OperatorSpec
    weights: WeightAssignment
    values: Dict[Composition, Fraction]

    def __post_init__(self):
        index_set = self.index_set
        values = {}
        for alpha, value in self.values.items():
            alpha = _as_composition(alpha)
            if alpha not in index_set:
                raise IndexMismatch(
                    f"{alpha} is not in I_{index_set.degree}^{index_set.slots}"
                )
            values[alpha] = Fraction(value)
        # every composition gets an entry, zeros included
        object.__setattr__(
            self, 'values', {alpha: values.get(alpha, Fraction(0)) for alpha in index_set}
        )

    @classmethod
    def from_vector(cls, spec: OperatorSpec, weights: WeightAssignment,
                    vector: Sequence) -> "CoefficientFamily":
        index_set = enumerate_compositions(spec.top_degree, spec.slots)
        if len(vector) != len(index_set):
            raise IndexMismatch(
                f"{len(vector)} values for an index set of size {len(index_set)}"
            )
        return cls(spec, weights, dict(zip(index_set, vector)))

    @property
    def index_set(self) -> IndexSet:
        return enumerate_compositions(self.spec.top_degree, self.spec.slots)

    def __getitem__(self, alpha) -> Fraction:
        alpha = _as_composition(alpha)
        try:
            return self.values[alpha]
        except KeyError:
            raise IndexMismatch(f"{alpha} is not an index of this family")

    def __iter__(self) -> Iterator[Tuple[Composition, Fraction]]:
        for alpha in self.index_set:
            yield alpha, self.values[alpha]

    def __len__(self):
        return len(self.values)

    def vector(self) -> Tuple[Fraction, ...]:
        """Values in index-set order."""
        return tuple(self.values[alpha] for alpha in self.index_set)

    def is_zero(self) -> bool:
        return not any(self.values.values())

    def replaced(self, alpha, value) -> "CoefficientFamily":
        values = dict(self.values)
        values[_as_composition(alpha)] = Fraction(value)
        return CoefficientFamily(self.spec, self.weights, values)


@dataclass(frozen=True)
class FamilyBasis:
    spec: OperatorSpec
    weights: WeightAssignment
    members: Tuple[CoefficientFamily, ...]
    # None where no generic set is defined for the family
    generic: Optional[bool] = None

    def __len__(self):
        return len(self.members)

    def __iter__(self) -> Iterator[CoefficientFamily]:
        return iter(self.members)

    def __getitem__(self, index) -> CoefficientFamily:
        return self.members[index]

    @property
    def dimension(self) -> int:
        return len(self.members)
