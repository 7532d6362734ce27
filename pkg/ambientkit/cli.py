"""
Command-line front end.

    ambientkit <command> [--family F] [--n N] [--k K] [--l L | --l1 L1 --l2 L2]
               [--weights=w1,w2,w3] [--fsa] [--seed S] [--trials T]
               [--format json|csv] [--out PATH]

Exit status: 0 when every verdict passes, 1 when a mathematical verdict
fails, 2 for usage and configuration errors.

Negative weights must be attached with '=' (`--weights=-1/4,-1/4,-1/4`)
so they are not read as options.
"""
import argparse
import logging
import os
import random
import sys
import time
import warnings
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

import parsy

from ambientkit.__about__ import __version__
from ambientkit.acceptance import run_acceptance
from ambientkit.ambient.calculus import FlatModel, verify_sl2_commutator
from ambientkit.ambient.oracle import tangentiality_probe
from ambientkit.ambient.polynomial import GradedPolynomial, random_homogeneous
from ambientkit.combinatorics import cardinality, enumerate_compositions
from ambientkit.exceptions import AmbientKitError, DegenerateWeight
from ambientkit.families import FamilyBasis
from ambientkit.families.closed_form import or_closed_form
from ambientkit.families.recurrences import fsa_recurrence_residuals, verify_recurrences
from ambientkit.families.solver import (
    certify_generic_exactness,
    euler_characteristic,
    fsa_weights,
    lower_bound,
    solve_family,
)
from ambientkit.families.symmetry import permutation_symmetries, verify_fsa_symmetries
from ambientkit.linalg import compose
from ambientkit.operators import Family, OperatorSpec, WeightAssignment
from ambientkit.operators.shifts import (
    build_differential,
    differentials,
    verify_commutation_relations,
    verify_right_inverses,
)
from ambientkit.parsing import lexer
from ambientkit.serialize import RunReport, emit_report, load_family
from ambientkit.utils import format_rational, from_maybe


logger = logging.getLogger(__name__)

SEED_ENV = 'AMBIENTKIT_SEED'
LOG_LEVEL_ENV = 'AMBIENTKIT_LOG_LEVEL'

COMMANDS = (
    'dims', 'solve', 'verify-complex', 'exactness', 'verify-symmetry',
    'verify-or', 'oracle-commutator', 'oracle-tangential', 'report',
)

SYMMETRIC_FAMILIES = (Family.TRI, Family.OR_OUTER, Family.OR_INNER2)


class UsageError(AmbientKitError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    family: Family = Family.TRI
    n: Optional[int] = None
    k: Optional[int] = None
    l: int = 0  # noqa: E741
    l1: int = 0
    l2: int = 0
    weights: Optional[Tuple[Fraction, ...]] = None
    fsa: bool = False
    seed: int = 0
    trials: int = 25
    format: str = 'json'
    out: Optional[str] = None
    slot: Optional[int] = None
    boundary: bool = False
    allow_hypothesis_violation: bool = False
    elide_inputs: bool = False
    input: Optional[str] = None

    @classmethod
    def from_args(cls, args: argparse.Namespace, environ: Mapping[str, str]) -> "RunConfig":
        seed = args.seed
        if seed is None:
            raw = environ.get(SEED_ENV, '0')
            if not raw.isdigit():
                raise UsageError(f"{SEED_ENV} must be an unsigned integer, got {raw!r}")
            seed = int(raw)
        if seed < 0:
            raise UsageError(f"seed must be unsigned, got {seed}")
        if args.trials < 1:
            raise UsageError(f"trials must be positive, got {args.trials}")
        weights = None
        if args.weights is not None:
            weights = tuple(lexer.weights.parse(args.weights))
        return cls(
            command=args.command,
            family=Family(args.family),
            n=args.n,
            k=args.k,
            l=args.l,
            l1=args.l1,
            l2=args.l2,
            weights=weights,
            fsa=args.fsa,
            seed=seed,
            trials=args.trials,
            format=args.format,
            out=args.out,
            slot=args.slot,
            boundary=args.boundary,
            allow_hypothesis_violation=args.no_hypothesis_check,
            elide_inputs=args.elide_inputs,
            input=args.input,
        )

    def echo(self) -> dict:
        out = asdict(self)
        out['family'] = self.family.value
        out['weights'] = None if self.weights is None else [format_rational(w) for w in self.weights]
        return out

    def spec(self) -> OperatorSpec:
        if self.n is None or self.k is None:
            raise UsageError(f"{self.command} needs --n and --k")
        return OperatorSpec(
            self.family, self.n, self.k,
            l=self.l, l1=self.l1, l2=self.l2,
            allow_hypothesis_violation=self.allow_hypothesis_violation,
        )

    def weight_assignment(self, spec: OperatorSpec, required=True) -> Optional[WeightAssignment]:
        if self.fsa:
            return fsa_weights(spec)
        if self.weights is None:
            if required:
                raise UsageError(f"{self.command} needs --weights or --fsa")
            return None
        return WeightAssignment.for_spec(spec, self.weights)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='ambientkit',
        description="Coefficient families of conformally covariant ambient operators.",
    )
    parser.add_argument('command', choices=COMMANDS)
    parser.add_argument('--family', choices=[f.value for f in Family], default='TRI')
    parser.add_argument('--n', type=int)
    parser.add_argument('--k', type=int)
    parser.add_argument('--l', type=int, default=0, help="invariant weight (OR families)")
    parser.add_argument('--l1', type=int, default=0, help="first invariant weight (LIN)")
    parser.add_argument('--l2', type=int, default=0, help="second invariant weight (LIN)")
    parser.add_argument('--weights', help="comma separated exact rationals, e.g. 1/3,1/3,1/3")
    parser.add_argument('--fsa', action='store_true',
                        help="use the formally self-adjoint weights -(n-2k)/(inputs + 1)")
    parser.add_argument('--seed', type=int, help=f"default: ${SEED_ENV} or 0")
    parser.add_argument('--trials', type=int, default=25)
    parser.add_argument('--format', choices=('json', 'csv'), default='json')
    parser.add_argument('--out', help="output path (default: standard output)")
    parser.add_argument('--slot', type=int, help="probe one input slot only")
    parser.add_argument('--boundary', action='store_true',
                        help="impose the n = 2k boundary constraints")
    parser.add_argument('--no-hypothesis-check', action='store_true',
                        help="allow even n < 2k (results carry a warning)")
    parser.add_argument('--elide-inputs', action='store_true',
                        help="omit trial polynomials from probe reports")
    parser.add_argument('--input', help="family JSON to verify instead of solving")
    return parser


def _new_report(config: RunConfig) -> RunReport:
    return RunReport(
        command=config.command,
        config=config.echo(),
        version=__version__,
        seed=config.seed,
    )


def _family_or_solve(config: RunConfig, spec: OperatorSpec, w: WeightAssignment) -> FamilyBasis:
    if config.input:
        with open(config.input, encoding='utf-8') as f:
            basis = load_family(f.read())
        if basis.spec != spec:
            raise UsageError(f"{config.input} holds {basis.spec.describe()}, not {spec.describe()}")
        if basis.weights != w:
            raise UsageError(f"{config.input} has weights {basis.weights.as_strings()}, not {w.as_strings()}")
        return basis
    return solve_family(spec, w, boundary=config.boundary)


def _genericity(spec: OperatorSpec, w: WeightAssignment) -> dict:
    generic = w.is_generic() if spec.family is Family.TRI else None
    return {'weights': w.as_strings(), 'generic': generic}


def _residual_counterexample(member: int, report) -> dict:
    name, alpha, value = report.nonzero()[0]
    return {
        'member': member,
        'recurrence': name,
        'alpha': list(alpha.parts),
        'residual': format_rational(value),
    }


def _symmetry_verdicts(report: RunReport, basis: FamilyBasis):
    for i, member in enumerate(basis):
        residuals = fsa_recurrence_residuals(member)
        report.verdicts['fsa_recurrences'] = report.verdicts.get('fsa_recurrences', True) and residuals.passed
        if not residuals.passed:
            report.details.setdefault('counterexample', _residual_counterexample(i, residuals))
        for name, holds in verify_fsa_symmetries(member, require_fsa=False).holds.items():
            report.verdicts[f"symmetry.{name}"] = report.verdicts.get(f"symmetry.{name}", True) and holds
            if not holds:
                report.details.setdefault('counterexample', {'member': i, 'symmetry': name})


def run_dims(config: RunConfig) -> RunReport:
    spec = config.spec()
    report = _new_report(config)
    m = spec.top_degree
    report.dimensions.update({
        'top_degree': m,
        'euler_characteristic': euler_characteristic(spec.family, m),
        'lower_bound': lower_bound(spec),
        'complex': [
            multiplicity * cardinality(m - i, spec.slots)
            for i, multiplicity in enumerate(spec.family.complex_multiplicities)
        ],
    })
    w = config.weight_assignment(spec, required=False)
    if w is not None:
        d1 = build_differential(spec, 1, w)
        basis = solve_family(spec, w, boundary=config.boundary)
        report.dimensions['kernel_dimension'] = len(basis)
        report.dimensions['d1_shape'] = list(d1.shape)
        report.genericity = _genericity(spec, w)
        report.verdicts['lower_bound'] = len(basis) >= lower_bound(spec)
    return report


def run_solve(config: RunConfig) -> RunReport:
    spec = config.spec()
    w = config.weight_assignment(spec)
    report = _new_report(config)
    basis = solve_family(spec, w, boundary=config.boundary)
    report.family = basis
    report.genericity = _genericity(spec, w)
    report.dimensions.update({
        'kernel_dimension': len(basis),
        'lower_bound': lower_bound(spec),
        'euler_characteristic': euler_characteristic(spec.family, spec.top_degree),
    })
    report.verdicts['lower_bound'] = len(basis) >= lower_bound(spec)
    report.verdicts['recurrences'] = all(
        verify_recurrences(spec, w, member).passed for member in basis
    )
    if config.fsa and spec.n > 2 * spec.k and spec.family in SYMMETRIC_FAMILIES:
        _symmetry_verdicts(report, basis)
    return report


def run_verify_complex(config: RunConfig) -> RunReport:
    spec = config.spec()
    w = config.weight_assignment(spec)
    report = _new_report(config)
    report.genericity = _genericity(spec, w)
    ds = differentials(spec, w)
    report.dimensions['shapes'] = [list(d.shape) for d in ds]
    for level, (inner, outer) in enumerate(zip(ds, ds[1:]), start=1):
        report.verdicts[f"d{level + 1}d{level}=0"] = compose(outer, inner).is_zero()
    for s in range(2, spec.top_degree + 1):
        relations = verify_commutation_relations(spec, w, s)
        for name, holds in relations.as_dict().items():
            report.verdicts[f"s={s}:{name}"] = holds
    for s in range(1, spec.top_degree + 1):
        try:
            inverses = verify_right_inverses(spec, w, s)
        except DegenerateWeight as e:
            report.warnings.append(f"s={s}: right inverses skipped: {e}")
            continue
        for name, holds in inverses.as_dict().items():
            report.verdicts[f"s={s}:{name}"] = holds
    return report


def run_exactness(config: RunConfig) -> RunReport:
    spec = config.spec()
    w = config.weight_assignment(spec)
    report = _new_report(config)
    result = certify_generic_exactness(spec, w)
    report.genericity = _genericity(spec, w)
    report.details['exactness'] = result.as_dict()
    report.dimensions.update({
        'kernel_dimension': result.kernel_dimension,
        'euler_characteristic': result.euler_characteristic,
    })
    report.verdicts['lower_bound'] = result.kernel_dimension >= lower_bound(spec)
    if result.generic:
        for level, junction in enumerate(result.junctions, start=1):
            report.verdicts[f"junction_{level}"] = junction.exact
        report.verdicts['surjective'] = result.surjective
        report.verdicts['dimension_matches'] = result.dimension_matches
    report.warnings.extend(result.warnings)
    return report


def run_verify_symmetry(config: RunConfig) -> RunReport:
    spec = config.spec()
    if spec.family not in SYMMETRIC_FAMILIES:
        raise UsageError(f"{spec.family} has no permutation symmetries to verify")
    if spec.n <= 2 * spec.k:
        raise UsageError(f"symmetries need n > 2k, got n={spec.n}, k={spec.k}")
    w = fsa_weights(spec)
    report = _new_report(config)
    basis = _family_or_solve(config, spec, w)
    report.genericity = _genericity(spec, w)
    report.dimensions['kernel_dimension'] = len(basis)
    _symmetry_verdicts(report, basis)
    return report


def run_verify_or(config: RunConfig) -> RunReport:
    if config.n is None or config.k is None:
        raise UsageError("verify-or needs --n and --k")
    family = or_closed_form(config.n, config.k)
    spec = family.spec
    report = _new_report(config)
    d1 = build_differential(spec, 1, family.weights)
    report.verdicts.update({
        'normalised': family[(config.k, 0, 0)] == 1,
        'fsa_recurrences': fsa_recurrence_residuals(family).passed,
        'recurrences': verify_recurrences(spec, family.weights, family).passed,
        'in_kernel': not any(d1.apply(family.vector())),
        'symmetric': permutation_symmetries(family).passed,
    })
    report.details['entries'] = [
        {'alpha': list(alpha.parts), 'value': format_rational(value)} for alpha, value in family
    ]
    return report


def run_oracle_commutator(config: RunConfig) -> RunReport:
    if config.n is None or config.k is None:
        raise UsageError("oracle-commutator needs --n and --k")
    model = FlatModel(config.n)
    report = _new_report(config)
    rng = random.Random(f"{config.seed}/commutator")
    battery = [
        GradedPolynomial(model.nvars, {alpha.parts: 1})
        for d in range(6)
        for alpha in enumerate_compositions(d, model.nvars)
    ]
    battery += [random_homogeneous(model.nvars, rng.randint(0, 6), rng) for _ in range(config.trials)]
    failures = [p for p in battery if not verify_sl2_commutator(model, config.k, p)]
    report.verdicts['gate'] = verify_sl2_commutator(model, 1, model.constant())
    report.verdicts['commutator'] = not failures
    report.dimensions['polynomials'] = len(battery)
    if failures:
        report.details['counterexample'] = failures[0].to_terms()
    return report


def run_oracle_tangential(config: RunConfig) -> RunReport:
    spec = config.spec()
    w = config.weight_assignment(spec)
    if any(v.denominator != 1 for v in w.weights):
        raise UsageError("the flat-model oracle needs integer weights")
    report = _new_report(config)
    basis = _family_or_solve(config, spec, w)
    model = FlatModel(spec.n)
    probes = []
    for i, member in enumerate(basis):
        kernel = verify_recurrences(spec, w, member)
        report.verdicts[f"recurrences.member_{i}"] = kernel.passed
        if not kernel.passed:
            report.details.setdefault('counterexample', _residual_counterexample(i, kernel))
        # kernel checked above; the oracle still runs on a failing family
        probe = tangentiality_probe(
            model, member, [int(v) for v in w.weights],
            slot=config.slot, trials=config.trials, seed=config.seed, require_kernel=False,
        )
        probes.append(probe.as_dict(elide_inputs=config.elide_inputs))
        report.verdicts[f"member_{i}"] = probe.passed
        if not probe.passed:
            report.details.setdefault('counterexample', {'member': i, **probe.first_failure().as_dict()})
    report.details['probes'] = probes
    report.dimensions['kernel_dimension'] = len(basis)
    return report


def run_report(config: RunConfig) -> RunReport:
    report = _new_report(config)
    for result in run_acceptance(config.seed):
        report.verdicts[result.name] = result.passed
        report.details[result.name] = result.as_dict()
        report.timings_ms[result.name] = result.elapsed_ms
    return report


RUNNERS: Dict[str, Callable[[RunConfig], RunReport]] = {
    'dims': run_dims,
    'solve': run_solve,
    'verify-complex': run_verify_complex,
    'exactness': run_exactness,
    'verify-symmetry': run_verify_symmetry,
    'verify-or': run_verify_or,
    'oracle-commutator': run_oracle_commutator,
    'oracle-tangential': run_oracle_tangential,
    'report': run_report,
}


def _configure_logging(environ: Mapping[str, str]):
    level = from_maybe('WARNING', environ.get(LOG_LEVEL_ENV)).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        stream=sys.stderr,
        format='%(asctime)s %(name)s %(levelname)s %(message)s',
    )


def dispatch(argv: Sequence[str], environ: Optional[Mapping[str, str]] = None) -> int:
    environ = os.environ if environ is None else environ
    _configure_logging(environ)
    try:
        args = build_parser().parse_args(list(argv))
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    try:
        config = RunConfig.from_args(args, environ)
    except (parsy.ParseError, AmbientKitError, ValueError) as e:
        print(f"ambientkit: {e}", file=sys.stderr)
        return 2

    started = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always')
        try:
            report = RUNNERS[config.command](config)
        except (parsy.ParseError, AmbientKitError, OSError) as e:
            print(f"ambientkit: {e}", file=sys.stderr)
            return 2
    report.timings_ms['total'] = (time.perf_counter() - started) * 1000
    for warning in caught:
        message = str(warning.message)
        if message not in report.warnings:
            report.warnings.append(message)

    try:
        emit_report(report, config.format, config.out)
    except OSError as e:
        print(f"ambientkit: cannot write report: {e}", file=sys.stderr)
        return 2
    if not report.passed:
        logger.warning(f"failed verdicts: {', '.join(report.failed_verdicts())}")
        return 1
    return 0


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == '__main__':
    main()
