"""
Exact elimination: reduced row echelon form, rank, kernel bases and
exactness certificates for pairs of composable maps.

Rows are first scaled to integers. Small matrices go through dense
Bareiss elimination; larger ones through a sparse fraction-free
reduction that keeps every row primitive (content 1). Both end with the
same normalisation pass to the unique reduced row echelon form, so the
result never depends on the path taken.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from ambientkit.exceptions import ShapeMismatch
from ambientkit.linalg.matrix import ExactMatrix, compose
from ambientkit.utils import debug


logger = logging.getLogger(__name__)

DENSE_LIMIT = 64


@dataclass(frozen=True)
class EchelonForm:
    matrix: ExactMatrix
    rank: int
    pivots: Tuple[int, ...]


@dataclass(frozen=True)
class KernelBasis:
    dimension: int
    vectors: Tuple[Tuple[Fraction, ...], ...]

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


@dataclass(frozen=True)
class ExactnessReport:
    is_complex: bool
    rank_in: int
    nullity_out: int
    exact: bool

    def as_dict(self):
        return {
            'is_complex': self.is_complex,
            'rank_in': self.rank_in,
            'nullity_out': self.nullity_out,
            'exact': self.exact,
        }


def _integer_row(row: Dict[int, Fraction]) -> Dict[int, int]:
    scale = math.lcm(*(v.denominator for v in row.values()))
    return {j: int(v * scale) for j, v in row.items()}


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    content = math.gcd(*row.values())
    if row[min(row)] < 0:
        content = -content
    if content == 1:
        return row
    return {j: v // content for j, v in row.items()}


def _bareiss_echelon(matrix: ExactMatrix):
    cols = matrix.cols
    rows = []
    for _, entries in matrix.row_items():
        dense = [0] * cols
        for j, v in _integer_row(entries).items():
            dense[j] = v
        rows.append(dense)

    pivots = []
    r = 0
    previous = 1
    for c in range(cols):
        if r == len(rows):
            break
        found = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if found is None:
            continue
        rows[r], rows[found] = rows[found], rows[r]
        pivot_row = rows[r]
        pivot = pivot_row[c]
        for i in range(r + 1, len(rows)):
            row = rows[i]
            factor = row[c]
            for j in range(c + 1, cols):
                quotient, remainder = divmod(
                    pivot * row[j] - factor * pivot_row[j], previous
                )
                if remainder:
                    raise ArithmeticError("inexact Bareiss division")
                row[j] = quotient
            row[c] = 0
        previous = pivot
        pivots.append(c)
        r += 1

    echelon = [{j: v for j, v in enumerate(row) if v} for row in rows[:r]]
    return echelon, pivots


def _sparse_echelon(matrix: ExactMatrix):
    pivot_rows: Dict[int, Dict[int, int]] = {}
    for _, entries in matrix.row_items():
        row = _primitive(_integer_row(entries))
        while row:
            lead = min(row)
            pivot_row = pivot_rows.get(lead)
            if pivot_row is None:
                pivot_rows[lead] = row
                break
            a, b = pivot_row[lead], row[lead]
            g = math.gcd(a, b)
            a, b = a // g, b // g
            combined = {j: a * v for j, v in row.items()}
            for j, v in pivot_row.items():
                combined[j] = combined.get(j, 0) - b * v
            row = {j: v for j, v in combined.items() if v}
            if row:
                row = _primitive(row)
    pivots = sorted(pivot_rows)
    return [pivot_rows[c] for c in pivots], pivots


def _normalise(echelon, pivots) -> List[Dict[int, Fraction]]:
    reduced: List[Dict[int, Fraction]] = [None] * len(pivots)
    for idx in range(len(pivots) - 1, -1, -1):
        lead = pivots[idx]
        row = {j: Fraction(v) for j, v in echelon[idx].items()}
        head = row[lead]
        row = {j: v / head for j, v in row.items()}
        for below in range(idx + 1, len(pivots)):
            factor = row.get(pivots[below])
            if not factor:
                continue
            for j, v in reduced[below].items():
                value = row.get(j, 0) - factor * v
                if value:
                    row[j] = value
                else:
                    row.pop(j, None)
        reduced[idx] = row
    return reduced


@debug('reduced_row_echelon')
def reduced_row_echelon(matrix: ExactMatrix) -> EchelonForm:
    """
    Exact reduced row echelon form. Pivots are the leftmost nonzero
    columns; the reduced form is unique, so it is reproducible whatever
    elimination path produced it.
    """
    if matrix.rows < DENSE_LIMIT and matrix.cols < DENSE_LIMIT:
        echelon, pivots = _bareiss_echelon(matrix)
    else:
        echelon, pivots = _sparse_echelon(matrix)
    reduced = _normalise(echelon, pivots)
    logger.debug(
        f"rref {matrix.rows}x{matrix.cols} nnz={matrix.nnz()} -> rank {len(pivots)}"
    )
    result = ExactMatrix.from_rows(
        matrix.rows, matrix.cols, {i: row for i, row in enumerate(reduced)}
    )
    return EchelonForm(result, len(pivots), tuple(pivots))


def rank(matrix: ExactMatrix) -> int:
    return reduced_row_echelon(matrix).rank


@debug('kernel_basis')
def kernel_basis(matrix: ExactMatrix) -> KernelBasis:
    """
    One vector per free column, in column order, each scaled so its first
    nonzero entry is 1.
    """
    echelon = reduced_row_echelon(matrix)
    pivot_rows = [(p, echelon.matrix.row(i)) for i, p in enumerate(echelon.pivots)]
    pivot_set = set(echelon.pivots)
    vectors = []
    for free in range(matrix.cols):
        if free in pivot_set:
            continue
        vector = [Fraction(0)] * matrix.cols
        vector[free] = Fraction(1)
        for p, row in pivot_rows:
            vector[p] = -row.get(free, Fraction(0))
        head = next(v for v in vector if v)
        vectors.append(tuple(v / head for v in vector))
    return KernelBasis(matrix.cols, tuple(vectors))


def certify_exactness(incoming: ExactMatrix, outgoing: ExactMatrix) -> ExactnessReport:
    """
    Decide whether `incoming` then `outgoing` is a complex, and whether it
    is exact at the middle term: rank(incoming) == nullity(outgoing).
    """
    if outgoing.cols != incoming.rows:
        raise ShapeMismatch(
            f"outgoing has {outgoing.cols} columns, incoming has {incoming.rows} rows"
        )
    is_complex = compose(outgoing, incoming).is_zero()
    rank_in = rank(incoming)
    nullity_out = outgoing.cols - rank(outgoing)
    return ExactnessReport(
        is_complex=is_complex,
        rank_in=rank_in,
        nullity_out=nullity_out,
        exact=is_complex and rank_in == nullity_out,
    )
