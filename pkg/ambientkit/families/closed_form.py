from fractions import Fraction

from ambientkit.combinatorics import enumerate_compositions
from ambientkit.exceptions import PreconditionViolated
from ambientkit.families import CoefficientFamily
from ambientkit.families.solver import fsa_weights
from ambientkit.operators import Family, OperatorSpec


def rising(x: Fraction, m: int) -> Fraction:
    """Pochhammer product x (x + 1) ... (x + m - 1); 1 for m = 0."""
    result = Fraction(1)
    for i in range(m):
        result *= x + i
    return result


def or_closed_form(n: int, k: int) -> CoefficientFamily:
    """
    Coefficients of the formally self-adjoint outer bidifferential operator
    with l = 0 in closed form,

        A_alpha = prod_i (a)_{k - alpha_i} / ((a)_k)^2,    a = (n - 2k)/6,

    the Gamma quotients reduced to rising products so the values stay
    rational. Normalised so that A_{(k,0,0)} = 1.
    """
    if n <= 2 * k:
        raise PreconditionViolated(f"closed form needs n > 2k, got n={n}, k={k}")
    spec = OperatorSpec(Family.OR_OUTER, n, k)
    a = Fraction(n - 2 * k, 6)
    scale = rising(a, k) ** 2
    values = {}
    for alpha in enumerate_compositions(k, spec.slots):
        numerator = Fraction(1)
        for part in alpha:
            numerator *= rising(a, k - part)
        values[alpha] = numerator / scale
    return CoefficientFamily(spec, fsa_weights(spec), values)
