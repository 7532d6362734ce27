"""
Composition index sets I_s^l: all l-tuples of nonnegative integers summing
to s. Every coefficient family is a function on one of these sets.
"""
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, Tuple

from ambientkit.exceptions import DegreeMismatch, NotInIndexSet, SlotOutOfRange


@dataclass(frozen=True)
class Composition:
    parts: Tuple[int, ...]
    degree: int = field(init=False, compare=False)

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise DegreeMismatch(f"negative part in {parts}")
        object.__setattr__(self, 'parts', parts)
        object.__setattr__(self, 'degree', sum(parts))

    @classmethod
    def of(cls, *parts):
        return cls(tuple(parts))

    @property
    def slots(self):
        return len(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, index):
        return self.parts[index]

    def __repr__(self):
        return f"Composition{self.parts}"

    def permuted(self, order):
        """
        New composition whose i-th part is this one's `order[i]`-th part
        (0-based).
        """
        return Composition(tuple(self.parts[i] for i in order))


@dataclass(frozen=True)
class IndexSet:
    degree: int
    slots: int
    elements: Tuple[Composition, ...]
    position: Dict[Composition, int] = field(compare=False, repr=False)

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator[Composition]:
        return iter(self.elements)

    def __contains__(self, alpha):
        return alpha in self.position

    def rank(self, alpha: Composition) -> int:
        if alpha.slots != self.slots or alpha.degree != self.degree:
            raise NotInIndexSet(
                f"{alpha} is not in I_{self.degree}^{self.slots}"
            )
        return self.position[alpha]

    def unrank(self, ordinal: int) -> Composition:
        if not 0 <= ordinal < len(self.elements):
            raise NotInIndexSet(
                f"ordinal {ordinal} out of range for "
                f"I_{self.degree}^{self.slots} (size {len(self.elements)})"
            )
        return self.elements[ordinal]


def _descending(s, slots):
    if slots == 1:
        yield (s,)
        return
    for first in range(s, -1, -1):
        for rest in _descending(s - first, slots - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_compositions(s: int, slots: int) -> IndexSet:
    """
    The index set I_s^slots in lexicographically descending order, so
    (s, 0, ..., 0) comes first.

    A negative degree gives the empty set: those are the vanishing tail
    terms of truncated chain complexes.
    """
    if slots < 1:
        raise SlotOutOfRange(f"slots must be positive, got {slots}")
    if s < 0:
        elements = ()
    else:
        elements = tuple(Composition(p) for p in _descending(s, slots))
    position = {alpha: i for i, alpha in enumerate(elements)}
    return IndexSet(s, slots, elements, position)


def cardinality(s: int, slots: int) -> int:
    """|I_s^slots| = C(s + slots - 1, slots - 1), zero for negative s."""
    if s < 0:
        return 0
    return math.comb(s + slots - 1, slots - 1)


def multinomial(k: int, alpha: Composition) -> int:
    """k! / (alpha_1! ... alpha_l!)"""
    if alpha.degree != k:
        raise DegreeMismatch(f"{alpha} has degree {alpha.degree}, not {k}")
    result = math.factorial(k)
    for part in alpha:
        result //= math.factorial(part)
    return result


def bump(alpha: Composition, j: int) -> Composition:
    """alpha + e_j, with `j` 1-based as in the recurrences."""
    if not 1 <= j <= alpha.slots:
        raise SlotOutOfRange(f"slot {j} not in 1..{alpha.slots}")
    parts = list(alpha.parts)
    parts[j - 1] += 1
    return Composition(tuple(parts))


def unit(slots: int, j: int, scale: int = 1) -> Composition:
    """scale * e_j"""
    if not 1 <= j <= slots:
        raise SlotOutOfRange(f"slot {j} not in 1..{slots}")
    parts = [0] * slots
    parts[j - 1] = scale
    return Composition(tuple(parts))
