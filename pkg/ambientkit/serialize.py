"""
Reading and writing coefficient families and run reports.

JSON output has sorted keys and rationals as "p/q" strings, so a fixed
input always serialises to the same bytes. CSV output quotes every
rational.
"""
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ambientkit.combinatorics import Composition
from ambientkit.exceptions import InvalidSpec
from ambientkit.families import CoefficientFamily, FamilyBasis
from ambientkit.operators import Family, OperatorSpec, WeightAssignment
from ambientkit.parsing import lexer
from ambientkit.utils import format_rational


logger = logging.getLogger(__name__)


def family_to_dict(basis: FamilyBasis) -> Dict[str, Any]:
    out = dict(basis.spec.describe())
    out.update({
        'weights': basis.weights.as_strings(),
        'generic': basis.generic,
        'basis': [
            {
                'entries': [
                    {'alpha': list(alpha.parts), 'value': format_rational(value)}
                    for alpha, value in member
                ]
            }
            for member in basis
        ],
    })
    return out


def family_rows(basis: FamilyBasis) -> List[list]:
    """One row per (member, alpha)."""
    return [
        [index, "[" + ",".join(str(p) for p in alpha.parts) + "]", format_rational(value)]
        for index, member in enumerate(basis)
        for alpha, value in member
    ]


def dumps_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def dumps_csv(header: List[str], rows: List[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _spec_from_dict(data: dict) -> OperatorSpec:
    try:
        return OperatorSpec(
            Family(data['family']),
            int(data['n']),
            int(data['k']),
            l=int(data.get('l', 0)),
            l1=int(data.get('l1', 0)),
            l2=int(data.get('l2', 0)),
        )
    except (KeyError, ValueError) as e:
        raise InvalidSpec(f"malformed family header: {e}") from e


def load_family(text: str) -> FamilyBasis:
    """
    Parse a family document written by `family_to_dict`, or a report that
    embeds one, back into a FamilyBasis.

    Raises:
        InvalidSpec: missing or invalid header fields
        parsy.ParseError: a malformed rational
    """
    data = json.loads(text)
    if isinstance(data.get('family'), dict):
        # a full `solve` report
        data = data['family']
    spec = _spec_from_dict(data)
    weights = WeightAssignment.for_spec(
        spec, [lexer.rational.parse(w) for w in data['weights']]
    )
    members = tuple(
        CoefficientFamily(spec, weights, {
            Composition(tuple(entry['alpha'])): lexer.rational.parse(entry['value'])
            for entry in member['entries']
        })
        for member in data['basis']
    )
    return FamilyBasis(spec, weights, members, data.get('generic'))


def flatten(data, prefix="") -> List[list]:
    """[dotted.key, value] rows for nested dicts and lists."""
    rows = []
    if isinstance(data, dict):
        for key in sorted(data):
            rows.extend(flatten(data[key], f"{prefix}.{key}" if prefix else str(key)))
    elif isinstance(data, list):
        for i, item in enumerate(data):
            rows.extend(flatten(item, f"{prefix}[{i}]"))
    else:
        value = data
        if isinstance(value, bool) or value is None:
            value = json.dumps(value)
        rows.append([prefix, value])
    return rows


@dataclass
class RunReport:
    """
    Outcome of one CLI command. Everything except `timings_ms` is a
    function of the configuration and seed.
    """
    command: str
    config: Dict[str, Any]
    version: str
    seed: int
    verdicts: Dict[str, bool] = field(default_factory=dict)
    dimensions: Dict[str, Any] = field(default_factory=dict)
    genericity: Dict[str, Any] = field(default_factory=dict)
    details: Dict[str, Any] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)
    timings_ms: Dict[str, float] = field(default_factory=dict)
    family: Optional[FamilyBasis] = None

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def failed_verdicts(self) -> List[str]:
        return sorted(name for name, ok in self.verdicts.items() if not ok)

    def as_dict(self, timings=True) -> Dict[str, Any]:
        out = {
            'command': self.command,
            'config': self.config,
            'version': self.version,
            'seed': self.seed,
            'passed': self.passed,
            'verdicts': self.verdicts,
            'dimensions': self.dimensions,
            'genericity': self.genericity,
            'details': self.details,
            'warnings': self.warnings,
        }
        if self.family is not None:
            out['family'] = family_to_dict(self.family)
        if timings:
            out['timings_ms'] = {key: round(value, 3) for key, value in self.timings_ms.items()}
        return out


def render_report(report: RunReport, fmt: str = 'json', timings: bool = True) -> str:
    if fmt == 'json':
        return dumps_json(report.as_dict(timings))
    if fmt == 'csv':
        if report.family is not None:
            return dumps_csv(['member', 'alpha', 'value'], family_rows(report.family))
        return dumps_csv(['key', 'value'], flatten(report.as_dict(timings)))
    raise InvalidSpec(f"unknown format {fmt!r}")


def emit_report(report: RunReport, fmt: str = 'json', path: Optional[str] = None,
                timings: bool = True):
    """
    Write the report to `path`, or to standard output when path is None
    or "-".

    Raises:
        OSError: the path cannot be written
    """
    text = render_report(report, fmt, timings)
    if path in (None, '-'):
        sys.stdout.write(text)
        return
    with open(path, 'w', encoding='utf-8', newline='') as f:
        f.write(text)
    logger.debug(f"wrote {fmt} report to {path}")
