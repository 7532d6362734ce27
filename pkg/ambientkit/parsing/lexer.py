"""
Parsers for the exact literals ambientkit accepts on its command line and
in re-read reports: rationals, weight lists, compositions and polynomials.

Every parser here is whitespace-tolerant around separators and, used via
`.parse()`, must consume the whole input.
"""
from fractions import Fraction

import parsy

from ambientkit import parsing
from ambientkit.exceptions import ZeroDenominator


def lexeme(p_lexeme, p_space=parsing.space):
    """
    Wrap a token parser so it also consumes trailing whitespace.

    Args:
        p_lexeme: parser that matches a single lexeme
        p_space: space parser, i.e. delimiting end of lexeme
    """
    return p_lexeme << p_space


def symbol(text, p_space=parsing.space):
    return lexeme(parsy.string(text), p_space=p_space)


def between(p_open, p_close, p):
    """
    Parses `p_open`, followed by `p` and `p_close`, returning the value of
    `p`.
    """
    return p_open >> p << p_close


def _to_fraction(numerator, denominator):
    if denominator == 0:
        raise ZeroDenominator(f"zero denominator in {numerator}/0")
    return Fraction(numerator, denominator)


@parsy.generate('unsigned rational')
def unsigned_rational():
    numerator = yield parsing.digits
    denominator = yield (parsy.string('/') >> parsing.digits).optional()
    return _to_fraction(numerator, 1 if denominator is None else denominator)


@parsy.generate('rational')
def rational():
    """
    `p/q` or an integer literal, optionally signed. Decimal input is
    rejected (it leaves unconsumed input).
    """
    sign = yield parsing.sign.optional()
    value = yield unsigned_rational
    return -value if sign == '-' else value


weights = (
    parsing.space >> lexeme(rational).sep_by(symbol(','), min=1)
).desc('comma separated rationals')


_naturals = lexeme(parsing.digits).sep_by(symbol(','))

composition = parsing.space >> (
    between(symbol('['), symbol(']'), _naturals)
    | between(symbol('('), symbol(')'), _naturals)
).map(tuple).desc('composition')


@parsy.generate('variable power')
def _factor():
    index = yield parsy.string('x') >> lexeme(parsing.digits)
    exponent = yield (symbol('^') >> lexeme(parsing.digits)).optional()
    return index, 1 if exponent is None else exponent


_monomial = _factor.sep_by(symbol('*'), min=1)


@parsy.generate('term')
def _term():
    coefficient = yield lexeme(unsigned_rational).optional()
    if coefficient is None:
        factors = yield _monomial
        return Fraction(1), factors
    factors = yield (symbol('*') >> _monomial).optional()
    return coefficient, factors or []


@parsy.generate('polynomial')
def polynomial_terms():
    """
    Returns:
        List[Tuple[Fraction, List[Tuple[int, int]]]]: signed coefficient
        and (variable index, exponent) factors for every term
    """
    yield parsing.space
    leading = yield lexeme(parsing.sign).optional()
    coefficient, factors = yield _term
    terms = [(-coefficient if leading == '-' else coefficient, factors)]
    while True:
        sign = yield lexeme(parsing.sign).optional()
        if sign is None:
            return terms
        coefficient, factors = yield _term
        terms.append((-coefficient if sign == '-' else coefficient, factors))
