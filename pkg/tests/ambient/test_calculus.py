from hypothesis import given, settings, strategies as st
import pytest

from ambientkit.ambient.calculus import (
    FlatModel,
    commutator_with_q,
    euler_operator,
    gradient_pairing,
    laplacian,
    laplacian_power,
    quadratic_form,
    remainder_mod_Q,
    verify_sl2_commutator,
    verify_triple_product_identity,
)
from ambientkit.ambient.polynomial import GradedPolynomial
from ambientkit.exceptions import InvalidSpec, ShapeMismatch

from tests.helpers import homogeneous_polynomials


MODEL = FlatModel(3)


def test_model():
    assert MODEL.nvars == 5
    assert MODEL.signature == (-1, 1, 1, 1, 1)
    with pytest.raises(InvalidSpec):
        FlatModel(0)
    with pytest.raises(ShapeMismatch):
        MODEL.check(GradedPolynomial.zero(3))


def test_laplacian_sign():
    assert laplacian(MODEL, MODEL.parse("x0^2")) == 2
    assert laplacian(MODEL, MODEL.parse("x1^2")) == -2
    assert laplacian(MODEL, quadratic_form(MODEL)) == -2 * (MODEL.n + 2)


def test_quadratic_form():
    assert quadratic_form(MODEL) == MODEL.parse("-x0^2 + x1^2 + x2^2 + x3^2 + x4^2")


def test_laplacian_power():
    p = MODEL.parse("x1^4")
    assert laplacian_power(MODEL, p, 0) == p
    assert laplacian_power(MODEL, p, 1) == MODEL.parse("-12*x1^2")
    assert laplacian_power(MODEL, p, 2) == 24
    assert laplacian_power(MODEL, p, 3).is_zero()


def test_euler_operator():
    p = MODEL.parse("x0^2*x1 - x3 + 2")
    assert euler_operator(p) == MODEL.parse("3*x0^2*x1 - x3")


def test_gradient_pairing():
    assert gradient_pairing(MODEL, MODEL.parse("x0"), MODEL.parse("x0")) == -1
    assert gradient_pairing(MODEL, MODEL.parse("x1"), MODEL.parse("x1")) == 1
    q = quadratic_form(MODEL)
    assert gradient_pairing(MODEL, q, q) == q.scaled(4)


@settings(max_examples=40)
@given(homogeneous_polynomials(5), homogeneous_polynomials(5))
def test_product_rule(p, q):
    left = laplacian(MODEL, p * q)
    right = laplacian(MODEL, p) * q + p * laplacian(MODEL, q) - gradient_pairing(MODEL, p, q).scaled(2)
    assert left == right


def test_sl2_at_constant():
    for n in range(1, 6):
        model = FlatModel(n)
        assert commutator_with_q(model, 1, model.constant()) == -2 * (n + 2)
        assert verify_sl2_commutator(model, 1, model.constant())


@settings(max_examples=40, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=4),
    k=st.integers(min_value=1, max_value=3),
    data=st.data(),
)
def test_sl2_commutator(n, k, data):
    model = FlatModel(n)
    p = data.draw(homogeneous_polynomials(model.nvars, max_degree=4))
    assert verify_sl2_commutator(model, k, p)


def test_sl2_needs_positive_k():
    with pytest.raises(InvalidSpec):
        verify_sl2_commutator(MODEL, 0, MODEL.constant())


def test_remainder_mod_q():
    q = quadratic_form(MODEL)
    p = MODEL.parse("x0^3 + x1*x2 - 5")
    assert remainder_mod_Q(MODEL, q * p).is_zero()
    assert remainder_mod_Q(MODEL, MODEL.parse("x0*x1")) == MODEL.parse("x0*x1")
    assert remainder_mod_Q(MODEL, MODEL.parse("x0^2")) == MODEL.parse("x1^2 + x2^2 + x3^2 + x4^2")


@given(homogeneous_polynomials(5), homogeneous_polynomials(5))
def test_remainder_of_multiple_vanishes(p, q):
    assert remainder_mod_Q(MODEL, quadratic_form(MODEL) * p + q) == remainder_mod_Q(MODEL, q)


@settings(max_examples=30, deadline=None)
@given(
    homogeneous_polynomials(5, max_degree=2),
    homogeneous_polynomials(5, max_degree=2),
    homogeneous_polynomials(5, max_degree=2),
)
def test_triple_product_identity(u1, u2, u3):
    assert verify_triple_product_identity(u1, u2, u3)
    assert verify_triple_product_identity(u1, u2, u3, model=MODEL)
