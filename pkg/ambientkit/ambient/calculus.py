"""
Calculus on the flat ambient model: R^{n+2} with coordinates x0, ..., x_{n+1}
and metric diag(-1, +1, ..., +1).

The Laplacian follows the sign convention that makes it nonnegative in
Riemannian signature, so here

    Lap = d0^2 - (d1^2 + ... + d_{n+1}^2).
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from ambientkit.ambient.polynomial import GradedPolynomial
from ambientkit.exceptions import InvalidSpec, ShapeMismatch


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FlatModel:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSpec(f"base dimension must be positive, got {self.n}")

    @property
    def nvars(self) -> int:
        return self.n + 2

    @property
    def signature(self) -> Tuple[int, ...]:
        return (-1,) + (1,) * (self.n + 1)

    def check(self, p: GradedPolynomial):
        if p.nvars != self.nvars:
            raise ShapeMismatch(f"polynomial in {p.nvars} variables, model has {self.nvars}")

    def constant(self, value=1) -> GradedPolynomial:
        return GradedPolynomial.constant(self.nvars, value)

    def parse(self, text: str) -> GradedPolynomial:
        return GradedPolynomial.parse(text, self.nvars)


def laplacian(model: FlatModel, p: GradedPolynomial) -> GradedPolynomial:
    model.check(p)
    result = GradedPolynomial.zero(model.nvars)
    for i, sign in enumerate(model.signature):
        result = result - p.derivative(i, 2).scaled(sign)
    return result


def laplacian_power(model: FlatModel, p: GradedPolynomial, k: int) -> GradedPolynomial:
    for _ in range(k):
        if not p:
            break
        p = laplacian(model, p)
    return p


def quadratic_form(model: FlatModel) -> GradedPolynomial:
    """Q = -x0^2 + x1^2 + ... + x_{n+1}^2"""
    return GradedPolynomial(model.nvars, {
        tuple(2 if j == i else 0 for j in range(model.nvars)): sign
        for i, sign in enumerate(model.signature)
    })


def euler_operator(p: GradedPolynomial) -> GradedPolynomial:
    """X p = sum x_i d_i p, i.e. each monomial scaled by its degree."""
    return GradedPolynomial(p.nvars, {exps: sum(exps) * coef for exps, coef in p.terms()})


def gradient_pairing(model: FlatModel, p: GradedPolynomial, q: GradedPolynomial) -> GradedPolynomial:
    """<grad p, grad q> in the ambient metric."""
    model.check(p)
    model.check(q)
    result = GradedPolynomial.zero(model.nvars)
    for i, sign in enumerate(model.signature):
        result = result + (p.derivative(i) * q.derivative(i)).scaled(sign)
    return result


def commutator_with_q(model: FlatModel, k: int, p: GradedPolynomial) -> GradedPolynomial:
    """[Lap^k, Q] p"""
    q = quadratic_form(model)
    return laplacian_power(model, q * p, k) - q * laplacian_power(model, p, k)


def verify_sl2_commutator(model: FlatModel, k: int, p: GradedPolynomial) -> bool:
    """
    [Lap^k, Q] p == -2k Lap^{k-1} (2X + n + 4 - 2k) p, exactly.
    """
    if k < 1:
        raise InvalidSpec(f"k must be at least 1, got {k}")
    left = commutator_with_q(model, k, p)
    inner = euler_operator(p).scaled(2) + p.scaled(model.n + 4 - 2 * k)
    right = laplacian_power(model, inner, k - 1).scaled(-2 * k)
    holds = left == right
    if not holds:
        logger.debug(f"sl2 commutator fails for k={k}, p={p}")
    return holds


def remainder_mod_Q(model: FlatModel, p: GradedPolynomial) -> GradedPolynomial:
    """
    Remainder of p on division by Q as a quadratic in x0: every x0^2 is
    replaced by x1^2 + ... + x_{n+1}^2, leaving x0-degree at most 1. Zero
    exactly when Q divides p.
    """
    model.check(p)
    spatial = quadratic_form(model) + GradedPolynomial.variable(model.nvars, 0) ** 2
    return p.substitute_power(0, spatial)


def verify_triple_product_identity(u1: GradedPolynomial, u2: GradedPolynomial,
                                   u3: GradedPolynomial,
                                   model: Optional[FlatModel] = None) -> bool:
    """
    Lap(u1 u2 u3) + u2 u3 Lap u1 + u1 u3 Lap u2 + u1 u2 Lap u3
        == u1 Lap(u2 u3) + u2 Lap(u1 u3) + u3 Lap(u1 u2)
    """
    if model is None:
        model = FlatModel(u1.nvars - 2)

    def lap(p):
        return laplacian(model, p)

    left = lap(u1 * u2 * u3) + u2 * u3 * lap(u1) + u1 * u3 * lap(u2) + u1 * u2 * lap(u3)
    right = u1 * lap(u2 * u3) + u2 * lap(u1 * u3) + u3 * lap(u1 * u2)
    return left == right
