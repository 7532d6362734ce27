"""
The reproduce-everything suite behind `ambientkit report`.

Each check returns a CheckResult; keyword arguments default to the full
sweep sizes and can be shrunk for quick runs. All randomness comes from
generators seeded with the run's seed and the check's name.
"""
import itertools
import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Sequence, Tuple

from ambientkit.ambient.calculus import FlatModel, verify_sl2_commutator, verify_triple_product_identity
from ambientkit.ambient.oracle import polynomial_battery, symmetrized_span_dimension, tangentiality_probe
from ambientkit.ambient.polynomial import GradedPolynomial, random_homogeneous
from ambientkit.combinatorics import enumerate_compositions
from ambientkit.families.closed_form import or_closed_form
from ambientkit.families.recurrences import fsa_recurrence_residuals, verify_recurrences
from ambientkit.families.solver import (
    certify_generic_exactness,
    euler_characteristic,
    fsa_weights,
    lower_bound,
    solve_family,
)
from ambientkit.families.symmetry import verify_fsa_symmetries
from ambientkit.linalg import compose
from ambientkit.operators import Family, OperatorSpec, WeightAssignment
from ambientkit.operators.shifts import differentials, verify_commutation_relations, verify_right_inverses
from ambientkit.utils import is_half_integer_multiple


logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    counterexample: Any = None
    elapsed_ms: float = 0.0

    def as_dict(self):
        out = {'passed': self.passed, 'details': self.details}
        if self.counterexample is not None:
            out['counterexample'] = self.counterexample
        return out


def _generic_weight(rng: random.Random) -> Fraction:
    q = rng.randint(3, 13)
    return Fraction(rng.choice([a for a in range(-2 * q, 2 * q + 1) if (2 * a) % q]), q)


def generic_weights(rng: random.Random, arity: int) -> WeightAssignment:
    """
    Weights in W (no 2w_i an integer), denominators free to repeat. No sum
    of two or more weights is a multiple of 1/2 either; shift coefficients
    vanish there.
    """
    while True:
        weights = tuple(_generic_weight(rng) for _ in range(arity))
        sums = (
            sum(subset)
            for size in range(2, arity + 1)
            for subset in itertools.combinations(weights, size)
        )
        if not any(is_half_integer_multiple(s) for s in sums):
            return WeightAssignment(weights)


def random_weights(rng: random.Random, arity: int) -> WeightAssignment:
    """Arbitrary rationals: integers, half-integers and small fractions."""
    def one():
        kind = rng.randrange(3)
        if kind == 0:
            return Fraction(rng.randint(-4, 4))
        if kind == 1:
            return Fraction(rng.randint(-9, 9), 2)
        return Fraction(rng.randint(-12, 12), rng.randint(1, 6))

    return WeightAssignment(tuple(one() for _ in range(arity)))


def _rng(seed, name):
    return random.Random(f"{seed}/{name}")


def dimension_theorem(seed=0, dims=((3, 6), (5, 6), (7, 6), (6, 3)),
                      samples=20) -> CheckResult:
    """dim ker d_1 == k + 1 at generic weights and >= k + 1 everywhere (TRI)."""
    rng = _rng(seed, 'dimension')
    observed = {}
    for n, max_k in dims:
        for k in range(max_k + 1):
            spec = OperatorSpec(Family.TRI, n, k)
            specials = [fsa_weights(spec), WeightAssignment((0, 0, 0))]
            arbitrary = specials + [random_weights(rng, 3) for _ in range(samples - len(specials))]
            for w in (generic_weights(rng, 3) for _ in range(samples)):
                dim = len(solve_family(spec, w))
                if dim != k + 1:
                    return CheckResult('dimension_theorem', False, counterexample={
                        'n': n, 'k': k, 'weights': w.as_strings(), 'dimension': dim,
                    })
            minimum = min(len(solve_family(spec, w)) for w in arbitrary[:samples])
            if minimum < k + 1:
                return CheckResult('dimension_theorem', False, counterexample={
                    'n': n, 'k': k, 'minimum_dimension': minimum,
                })
            observed[f"n={n},k={k}"] = k + 1
    return CheckResult('dimension_theorem', True, {'generic_dimensions': observed})


_DIMENSIONS = (3, 4, 5, 6, 7, 8, 9)


def random_spec(rng: random.Random, family: Family, max_k: int) -> OperatorSpec:
    """
    A random admissible spec: n from _DIMENSIONS with n >= 2k when n is
    even, and invariant weights anywhere in 0..k.
    """
    while True:
        n, k = rng.choice(_DIMENSIONS), rng.randint(0, max_k)
        if n % 2 == 0 and n < 2 * k:
            continue
        if family is Family.TRI:
            return OperatorSpec(family, n, k)
        if family is Family.LIN:
            l1 = rng.randint(0, k)
            return OperatorSpec(family, n, k, l1=l1, l2=rng.randint(0, k - l1))
        return OperatorSpec(family, n, k, l=rng.randint(0, k))


def chain_complex(seed=0, samples=100, max_k=5) -> CheckResult:
    """d_{i+1} d_i == 0 on `samples` random (n, k, l, w) for every family."""
    rng = _rng(seed, 'complex')
    checked = 0
    with_invariants = 0
    for family in Family:
        for _ in range(samples):
            spec = random_spec(rng, family, max_k)
            w = random_weights(rng, family.arity)
            ds = differentials(spec, w)
            for level, (inner, outer) in enumerate(zip(ds, ds[1:]), start=1):
                if not compose(outer, inner).is_zero():
                    return CheckResult('chain_complex', False, counterexample={
                        **spec.describe(), 'weights': w.as_strings(), 'level': level,
                    })
                checked += 1
            with_invariants += bool(spec.invariant_weight)
    return CheckResult('chain_complex', True, {
        'samples': samples * len(Family),
        'with_invariants': with_invariants,
        'compositions_checked': checked,
    })


def euler_characteristics(max_k=50) -> CheckResult:
    for m in range(max_k + 1):
        expected = {
            Family.TRI: m + 1,
            Family.LIN: m + 1,
            Family.OR_OUTER: 1,
            Family.OR_INNER: m + 1,
            Family.OR_INNER2: m + 1,
        }
        for family, value in expected.items():
            got = euler_characteristic(family, m)
            if got != value:
                return CheckResult('euler_characteristic', False, counterexample={
                    'family': family.value, 'm': m, 'value': got,
                })
    return CheckResult('euler_characteristic', True, {'max_degree': max_k})


def generic_exactness(seed=0, ns=(3, 5, 7), max_k=4, samples=10) -> CheckResult:
    rng = _rng(seed, 'exactness')
    for n in ns:
        for k in range(max_k + 1):
            spec = OperatorSpec(Family.TRI, n, k)
            for _ in range(samples):
                w = generic_weights(rng, 3)
                report = certify_generic_exactness(spec, w)
                if not (report.exact and report.dimension_matches):
                    return CheckResult('generic_exactness', False, counterexample={
                        'n': n, 'k': k, 'weights': w.as_strings(), **report.as_dict(),
                    })
    return CheckResult('generic_exactness', True, {'ns': list(ns), 'max_k': max_k})


def commutation_algebra(seed=0, max_degree=5) -> CheckResult:
    rng = _rng(seed, 'commutation')
    specs = [
        OperatorSpec(Family.TRI, 5, 3),
        OperatorSpec(Family.LIN, 5, 3, l1=1, l2=1),
        OperatorSpec(Family.OR_OUTER, 5, 3, l=1),
        OperatorSpec(Family.OR_INNER, 5, 3, l=1),
        OperatorSpec(Family.OR_INNER2, 5, 3, l=1),
    ]
    checked = 0
    for spec in specs:
        w = generic_weights(rng, spec.family.arity)
        for s in range(1, max_degree + 1):
            reports = [verify_right_inverses(spec, w, s)]
            if s >= 2:
                reports.append(verify_commutation_relations(spec, w, s))
            for report in reports:
                checked += len(report.checks)
                if not report.passed:
                    return CheckResult('commutation_algebra', False, counterexample={
                        **spec.describe(), 'weights': w.as_strings(), 'degree': s,
                        'relations': report.as_dict(),
                    })
    return CheckResult('commutation_algebra', True, {'relations_checked': checked})


def fsa_symmetries(max_n=9, max_k=3) -> CheckResult:
    checked = 0
    for n in range(3, max_n + 1):
        for k in range(max_k + 1):
            if n <= 2 * k:
                continue
            spec = OperatorSpec(Family.TRI, n, k)
            for member in solve_family(spec, fsa_weights(spec)):
                report = verify_fsa_symmetries(member)
                checked += 1
                if not report.passed:
                    return CheckResult('fsa_symmetries', False, counterexample={
                        'n': n, 'k': k, 'symmetries': report.as_dict(),
                    })
    return CheckResult('fsa_symmetries', True, {'members_checked': checked})


def closed_form(ns=(5, 7, 9, 11), max_k=4) -> CheckResult:
    checked = []
    for n in ns:
        for k in range(max_k + 1):
            if n <= 2 * k:
                continue
            family = or_closed_form(n, k)
            ok = (
                family[(k, 0, 0)] == 1
                and fsa_recurrence_residuals(family).passed
                and verify_recurrences(family.spec, family.weights, family).passed
            )
            if not ok:
                return CheckResult('closed_form', False, counterexample={'n': n, 'k': k})
            checked.append(f"n={n},k={k}")
    return CheckResult('closed_form', True, {'cases': checked})


def sl2_commutator(seed=0, max_k=3, max_n=4, max_degree=5, samples=50) -> CheckResult:
    rng = _rng(seed, 'sl2')
    checked = 0
    for n in range(1, max_n + 1):
        model = FlatModel(n)
        if not verify_sl2_commutator(model, 1, model.constant()):
            return CheckResult('sl2_commutator', False, counterexample={'n': n, 'k': 1, 'p': '1'})
        battery: List[GradedPolynomial] = [
            GradedPolynomial(model.nvars, {alpha.parts: 1})
            for d in range(max_degree + 1)
            for alpha in enumerate_compositions(d, model.nvars)
        ]
        battery += [
            random_homogeneous(model.nvars, rng.randint(0, max_degree), rng)
            for _ in range(samples)
        ]
        for k in range(1, max_k + 1):
            for p in battery:
                checked += 1
                if not verify_sl2_commutator(model, k, p):
                    return CheckResult('sl2_commutator', False, counterexample={
                        'n': n, 'k': k, 'p': p.to_terms(),
                    })
    return CheckResult('sl2_commutator', True, {'polynomials_checked': checked})


def tangentiality(seed=0, ks=(1, 2), trials=25) -> CheckResult:
    model = FlatModel(3)
    weights = (2, 2, 2)
    probes = 0
    for k in ks:
        spec = OperatorSpec(Family.TRI, 3, k)
        basis = solve_family(spec, WeightAssignment(weights))
        for member in basis:
            report = tangentiality_probe(model, member, weights, trials=trials, seed=seed)
            probes += len(report.trials)
            if not report.passed:
                failure = report.first_failure()
                return CheckResult('tangentiality', False, counterexample={
                    'k': k, **failure.as_dict(),
                })
    # mutation control: one changed entry must be caught
    spec = OperatorSpec(Family.TRI, 3, 1)
    member = solve_family(spec, WeightAssignment(weights))[0]
    alpha = member.index_set.unrank(0)
    mutated = member.replaced(alpha, member[alpha] + 1)
    control = tangentiality_probe(model, mutated, weights, trials=3, seed=seed, require_kernel=False)
    return CheckResult('tangentiality', not control.passed, {
        'trials': probes,
        'mutation_detected': not control.passed,
    })


def triple_product(seed=0, samples=100, max_n=3, max_degree=4) -> CheckResult:
    rng = _rng(seed, 'triple')
    for i in range(samples):
        model = FlatModel(rng.randint(1, max_n))
        u = [random_homogeneous(model.nvars, rng.randint(0, max_degree), rng) for _ in range(3)]
        if not verify_triple_product_identity(*u, model=model):
            return CheckResult('triple_product', False, counterexample={
                'n': model.n, 'inputs': [p.to_terms() for p in u],
            })
    return CheckResult('triple_product', True, {'triples': samples})


def _invariant_specs(family, n, k):
    for l in range(k + 1):  # noqa: E741
        if family is Family.LIN:
            yield OperatorSpec(family, n, k, l1=l // 2, l2=l - l // 2)
        else:
            yield OperatorSpec(family, n, k, l=l)


def lower_bounds(seed=0, ns=(3, 5, 7), max_k=4, samples=10) -> CheckResult:
    rng = _rng(seed, 'bounds')
    observed = {}
    for family in (Family.LIN, Family.OR_OUTER, Family.OR_INNER, Family.OR_INNER2):
        for n in ns:
            for k in range(max_k + 1):
                for spec in _invariant_specs(family, n, k):
                    bound = lower_bound(spec)
                    for _ in range(samples):
                        w = random_weights(rng, family.arity)
                        dim = len(solve_family(spec, w))
                        if dim < bound:
                            return CheckResult('lower_bounds', False, counterexample={
                                **spec.describe(), 'weights': w.as_strings(),
                                'dimension': dim, 'bound': bound,
                            })
                    w = generic_weights(rng, family.arity)
                    key = ",".join(f"{a}={b}" for a, b in sorted(spec.describe().items()))
                    observed[key] = len(solve_family(spec, w))
    return CheckResult('lower_bounds', True, {'generic_dimensions': observed})


def symmetrized_span(seed=0, n=5, ks=(1, 2), battery_size=30) -> CheckResult:
    model = FlatModel(n)
    battery = polynomial_battery(model, battery_size, seed)
    measured = {}
    ok = True
    for k in ks:
        spec = OperatorSpec(Family.TRI, n, k)
        basis = solve_family(spec, fsa_weights(spec))
        dim = symmetrized_span_dimension(model, basis.members, battery)
        measured[f"k={k}"] = {'dimension': dim, 'kernel_dimension': len(basis), 'conjectured': k}
        ok = ok and dim <= k + 1
    return CheckResult('symmetrized_span', ok, {'n': n, 'measurements': measured})


CHECKS: Sequence[Tuple[str, Callable[..., CheckResult], bool]] = (
    # name, function, takes a seed
    ('dimension_theorem', dimension_theorem, True),
    ('chain_complex', chain_complex, True),
    ('euler_characteristic', euler_characteristics, False),
    ('generic_exactness', generic_exactness, True),
    ('commutation_algebra', commutation_algebra, True),
    ('fsa_symmetries', fsa_symmetries, False),
    ('closed_form', closed_form, False),
    ('sl2_commutator', sl2_commutator, True),
    ('tangentiality', tangentiality, True),
    ('triple_product', triple_product, True),
    ('lower_bounds', lower_bounds, True),
    ('symmetrized_span', symmetrized_span, True),
)


def run_acceptance(seed: int = 0, only: Sequence[str] = ()) -> List[CheckResult]:
    """Run the checks in their fixed order; `only` restricts by name."""
    results = []
    for name, check, seeded in CHECKS:
        if only and name not in only:
            continue
        started = time.perf_counter()
        result = check(seed=seed) if seeded else check()
        result.elapsed_ms = (time.perf_counter() - started) * 1000
        logger.info(f"{name}: {'pass' if result.passed else 'FAIL'} ({result.elapsed_ms:.0f}ms)")
        results.append(result)
    return results
