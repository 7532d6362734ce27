from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from ambientkit.exceptions import ShapeMismatch
from ambientkit.utils import format_rational


class ExactMatrix:
    """
    Sparse matrix of exact rationals.

    Stored row-wise as {row: {col: value}}; zero entries are never stored
    and rows without entries are absent.
    """

    __slots__ = ('rows', 'cols', '_data')

    def __init__(self, rows: int, cols: int, data=None):
        if rows < 0 or cols < 0:
            raise ShapeMismatch(f"negative shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self._data: Dict[int, Dict[int, Fraction]] = {}
        if data:
            for (i, j), value in data.items():
                self[i, j] = value

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, size):
        return cls(size, size, {(i, i): 1 for i in range(size)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]):
        rows = [list(row) for row in rows]
        width = len(rows[0]) if rows else 0
        if any(len(row) != width for row in rows):
            raise ShapeMismatch("ragged rows")
        return cls(len(rows), width, {
            (i, j): value
            for i, row in enumerate(rows)
            for j, value in enumerate(row)
            if value
        })

    @classmethod
    def from_rows(cls, rows: int, cols: int, row_maps: Dict[int, Dict[int, Fraction]]):
        """Adopt already-clean row dictionaries (no zeros, in bounds)."""
        matrix = cls(rows, cols)
        matrix._data = {i: dict(row) for i, row in row_maps.items() if row}
        return matrix

    @classmethod
    def block(cls, blocks: Sequence[Sequence["ExactMatrix"]]):
        """
        Assemble a block matrix. Every block row must share a height and
        every block column a width; 0-sized blocks are allowed.
        """
        heights = [row[0].rows for row in blocks]
        widths = [b.cols for b in blocks[0]] if blocks else []
        for r, row in enumerate(blocks):
            if len(row) != len(widths):
                raise ShapeMismatch(f"block row {r} has {len(row)} blocks")
            for c, b in enumerate(row):
                if b.rows != heights[r] or b.cols != widths[c]:
                    raise ShapeMismatch(
                        f"block ({r},{c}) is {b.rows}x{b.cols}, "
                        f"expected {heights[r]}x{widths[c]}"
                    )
        result = cls(sum(heights), sum(widths))
        row_offset = 0
        for r, row in enumerate(blocks):
            col_offset = 0
            for c, b in enumerate(row):
                for i, entries in b._data.items():
                    target = result._data.setdefault(row_offset + i, {})
                    for j, value in entries.items():
                        target[col_offset + j] = value
                col_offset += widths[c]
            row_offset += heights[r]
        return result

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index) -> Fraction:
        i, j = index
        self._check(i, j)
        return self._data.get(i, {}).get(j, Fraction(0))

    def __setitem__(self, index, value):
        i, j = index
        self._check(i, j)
        value = Fraction(value)
        if value:
            self._data.setdefault(i, {})[j] = value
        else:
            row = self._data.get(i)
            if row is not None:
                row.pop(j, None)
                if not row:
                    del self._data[i]

    def _check(self, i, j):
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) outside {self.rows}x{self.cols}")

    def row(self, i) -> Dict[int, Fraction]:
        return dict(self._data.get(i, {}))

    def row_items(self) -> Iterator[Tuple[int, Dict[int, Fraction]]]:
        for i in sorted(self._data):
            yield i, self._data[i]

    def nonzeros(self) -> Iterator[Tuple[int, int, Fraction]]:
        for i, row in self.row_items():
            for j in sorted(row):
                yield i, j, row[j]

    def nnz(self) -> int:
        return sum(len(row) for row in self._data.values())

    def is_zero(self) -> bool:
        return not self._data

    def to_dense(self) -> List[List[Fraction]]:
        dense = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for i, j, value in self.nonzeros():
            dense[i][j] = value
        return dense

    def transpose(self) -> "ExactMatrix":
        result = ExactMatrix(self.cols, self.rows)
        for i, j, value in self.nonzeros():
            result._data.setdefault(j, {})[i] = value
        return result

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    def _combine(self, other, scale):
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")
        result = ExactMatrix.from_rows(self.rows, self.cols, self._data)
        for i, row in other._data.items():
            target = result._data.setdefault(i, {})
            for j, value in row.items():
                total = target.get(j, 0) + scale * value
                if total:
                    target[j] = total
                else:
                    target.pop(j, None)
            if not target:
                del result._data[i]
        return result

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, factor) -> "ExactMatrix":
        factor = Fraction(factor)
        if not factor:
            return ExactMatrix(self.rows, self.cols)
        return ExactMatrix.from_rows(self.rows, self.cols, {
            i: {j: factor * v for j, v in row.items()}
            for i, row in self._data.items()
        })

    def __matmul__(self, other):
        return compose(self, other)

    def apply(self, vector: Sequence) -> List[Fraction]:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise ShapeMismatch(f"vector of length {len(vector)} for {self.cols} columns")
        out = [Fraction(0)] * self.rows
        for i, row in self._data.items():
            out[i] = sum((value * vector[j] for j, value in row.items()), Fraction(0))
        return out

    def triplets(self) -> List[list]:
        """[row, col, "p/q"] for every stored entry, row-major."""
        return [[i, j, format_rational(v)] for i, j, v in self.nonzeros()]


def compose(outer: ExactMatrix, inner: ExactMatrix) -> ExactMatrix:
    """Exact product outer · inner."""
    if outer.cols != inner.rows:
        raise ShapeMismatch(
            f"cannot compose {outer.rows}x{outer.cols} with "
            f"{inner.rows}x{inner.cols}"
        )
    result = {}
    for i, row in outer._data.items():
        accumulated = {}
        for m, a in row.items():
            inner_row = inner._data.get(m)
            if not inner_row:
                continue
            for j, b in inner_row.items():
                accumulated[j] = accumulated.get(j, 0) + a * b
        accumulated = {j: v for j, v in accumulated.items() if v}
        if accumulated:
            result[i] = accumulated
    return ExactMatrix.from_rows(outer.rows, inner.cols, result)


def stack(matrices: Iterable[ExactMatrix]) -> ExactMatrix:
    """Vertical concatenation."""
    return ExactMatrix.block([[m] for m in matrices])
