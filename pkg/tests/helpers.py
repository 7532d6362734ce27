from fractions import Fraction
import itertools

from hypothesis import assume, strategies as st
import parsy

from ambientkit.ambient.polynomial import GradedPolynomial
from ambientkit.combinatorics import enumerate_compositions
from ambientkit.linalg import ExactMatrix
from ambientkit.operators import WeightAssignment
from ambientkit.utils import is_half_integer_multiple


def prs_(p):
    """
    Run `p` forcing it to consume all input, like `parse (p <* eof) ""`.
    """
    return (p << parsy.eof).parse


rationals = st.fractions(min_value=-6, max_value=6, max_denominator=12)

small_ints = st.integers(min_value=-5, max_value=5)


@st.composite
def generic_weights(draw, arity=3):
    """
    Weights in W with denominators free to repeat; no sum of two or more
    of them has 2w in Z either.
    """
    weights = []
    for _ in range(arity):
        q = draw(st.integers(min_value=3, max_value=13))
        numerator = draw(
            st.integers(min_value=-2 * q, max_value=2 * q).filter(lambda a, q=q: (2 * a) % q)
        )
        weights.append(Fraction(numerator, q))
    assume(not any(
        is_half_integer_multiple(sum(subset))
        for size in range(2, arity + 1)
        for subset in itertools.combinations(weights, size)
    ))
    return WeightAssignment(tuple(weights))


@st.composite
def weight_assignments(draw, arity=3):
    return WeightAssignment(tuple(draw(rationals) for _ in range(arity)))


@st.composite
def homogeneous_polynomials(draw, nvars, degree=None, max_degree=3):
    if degree is None:
        degree = draw(st.integers(min_value=0, max_value=max_degree))
    monomials = st.sampled_from(enumerate_compositions(degree, nvars).elements)
    terms = draw(st.dictionaries(
        monomials.map(lambda alpha: alpha.parts),
        st.integers(min_value=-3, max_value=3),
        max_size=4,
    ))
    return GradedPolynomial(nvars, terms)


@st.composite
def dense_matrices(draw, max_rows=5, max_cols=5):
    rows = draw(st.integers(min_value=0, max_value=max_rows))
    cols = draw(st.integers(min_value=1, max_value=max_cols))
    entries = st.one_of(st.just(Fraction(0)), rationals)
    data = [[draw(entries) for _ in range(cols)] for _ in range(rows)]
    return ExactMatrix(rows, cols, {
        (i, j): v for i, row in enumerate(data) for j, v in enumerate(row) if v
    })
