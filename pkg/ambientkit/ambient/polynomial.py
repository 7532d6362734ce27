"""
Polynomials with exact rational coefficients in a fixed number of
variables x0, x1, ..., graded by total degree.
"""
import random
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from ambientkit.combinatorics import enumerate_compositions
from ambientkit.exceptions import NonHomogeneousInput, ShapeMismatch
from ambientkit.parsing.lexer import polynomial_terms
from ambientkit.utils import format_rational


Exponents = Tuple[int, ...]

COEFFICIENT_RANGE = 3


class GradedPolynomial:
    __slots__ = ('nvars', '_terms')

    def __init__(self, nvars: int, terms: Optional[Dict[Exponents, Fraction]] = None):
        self.nvars = nvars
        self._terms: Dict[Exponents, Fraction] = {}
        for exps, coef in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ShapeMismatch(f"{exps} does not have {nvars} exponents")
            coef = Fraction(coef)
            if coef:
                self._terms[exps] = coef

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, value=1):
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars, index):
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def parse(cls, text: str, nvars: int) -> "GradedPolynomial":
        """
        Read a literal such as "x0^2 - 3/2*x1*x2 + 4".

        Raises:
            parsy.ParseError: malformed literal
            ShapeMismatch: a variable index beyond nvars - 1
        """
        terms: Dict[Exponents, Fraction] = {}
        for coef, factors in polynomial_terms.parse(text):
            exps = [0] * nvars
            for index, power in factors:
                if index >= nvars:
                    raise ShapeMismatch(f"x{index} used with only {nvars} variables")
                exps[index] += power
            key = tuple(exps)
            terms[key] = terms.get(key, 0) + coef
        return cls(nvars, terms)

    @classmethod
    def from_terms(cls, nvars: int, entries: Iterable[dict]) -> "GradedPolynomial":
        """Inverse of `to_terms`."""
        terms: Dict[Exponents, Fraction] = {}
        for entry in entries:
            key = tuple(entry['exps'])
            terms[key] = terms.get(key, 0) + Fraction(entry['coef'])
        return cls(nvars, terms)

    def to_terms(self) -> List[dict]:
        """[{"exps": [...], "coef": "p/q"}, ...] in descending exponent order."""
        return [
            {'exps': list(exps), 'coef': format_rational(coef)}
            for exps, coef in sorted(self._terms.items(), reverse=True)
        ]

    def terms(self) -> Iterator[Tuple[Exponents, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, exps) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPolynomial.constant(self.nvars, other)
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __repr__(self):
        return f"GradedPolynomial({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exps, coef in sorted(self._terms.items(), reverse=True):
            factors = [
                f"x{i}" if e == 1 else f"x{i}^{e}"
                for i, e in enumerate(exps) if e
            ]
            magnitude = abs(coef)
            if not factors:
                body = format_rational(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([format_rational(magnitude)] + factors)
            parts.append(("-" if coef < 0 else "+", body))
        sign, body = parts[0]
        out = body if sign == "+" else f"-{body}"
        return out + "".join(f" {s} {b}" for s, b in parts[1:])

    # degrees

    def degrees(self) -> Tuple[int, ...]:
        """Total degrees of the nonzero graded components, ascending."""
        return tuple(sorted({sum(exps) for exps in self._terms}))

    def component(self, degree: int) -> "GradedPolynomial":
        return GradedPolynomial(
            self.nvars, {e: c for e, c in self._terms.items() if sum(e) == degree}
        )

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        """The zero polynomial is homogeneous of every degree."""
        found = self.degrees()
        if not found:
            return True
        return len(found) == 1 and (degree is None or found[0] == degree)

    def homogeneous_degree(self) -> Optional[int]:
        """
        The single degree of a homogeneous polynomial; None for zero.

        Raises:
            NonHomogeneousInput: several graded components are present
        """
        found = self.degrees()
        if len(found) > 1:
            raise NonHomogeneousInput(f"components of degrees {list(found)}")
        return found[0] if found else None

    # arithmetic

    def _coerce(self, other) -> "GradedPolynomial":
        if isinstance(other, GradedPolynomial):
            if other.nvars != self.nvars:
                raise ShapeMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other
        return GradedPolynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for exps, coef in other._terms.items():
            terms[exps] = terms.get(exps, 0) + coef
        return GradedPolynomial(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scaled(self, factor) -> "GradedPolynomial":
        factor = Fraction(factor)
        return GradedPolynomial(self.nvars, {e: factor * c for e, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GradedPolynomial):
            return self.scaled(other)
        other = self._coerce(other)
        terms: Dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, 0) + c1 * c2
        return GradedPolynomial(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, power: int):
        result = GradedPolynomial.constant(self.nvars)
        for _ in range(power):
            result = result * self
        return result

    def derivative(self, index: int, times: int = 1) -> "GradedPolynomial":
        """d^times / dx_index^times"""
        terms: Dict[Exponents, Fraction] = {}
        for exps, coef in self._terms.items():
            e = exps[index]
            if e < times:
                continue
            factor = 1
            for j in range(times):
                factor *= e - j
            lowered = list(exps)
            lowered[index] -= times
            key = tuple(lowered)
            terms[key] = terms.get(key, 0) + factor * coef
        return GradedPolynomial(self.nvars, terms)

    def substitute_power(self, index: int, replacement: "GradedPolynomial") -> "GradedPolynomial":
        """Replace every x_index^2 by `replacement`, leaving x_index-degree <= 1."""
        result = GradedPolynomial.zero(self.nvars)
        for exps, coef in self._terms.items():
            e = exps[index]
            kept = list(exps)
            kept[index] = e % 2
            monomial = GradedPolynomial(self.nvars, {tuple(kept): coef})
            result = result + monomial * replacement ** (e // 2)
        return result


def random_homogeneous(nvars: int, degree: int, rng: random.Random,
                       max_terms: int = 4) -> GradedPolynomial:
    """
    A nonzero homogeneous polynomial of the given degree with up to
    `max_terms` monomials and coefficients in -3..3, reproducible from
    the state of `rng`.
    """
    monomials = enumerate_compositions(degree, nvars).elements
    while True:
        chosen = rng.sample(monomials, min(max_terms, len(monomials)))
        terms = {
            alpha.parts: rng.randint(-COEFFICIENT_RANGE, COEFFICIENT_RANGE)
            for alpha in chosen
        }
        poly = GradedPolynomial(nvars, terms)
        if poly:
            return poly
