"""Dense immutable matrices over an exact field."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..errors import DimensionError, FieldMismatchError, SingularMatrixError
from ..field import Field, Scalar

Vector = tuple  # tuple of scalars


class Matrix:
    """A ``rows x cols`` matrix with entries in ``field``.

    Rows and columns are indexed from 0. Instances are immutable and hashable;
    every operation returns a new matrix.
    """

    __slots__ = ("field", "nrows", "ncols", "_rows", "_hash")

    def __init__(self, field: Field, rows: Iterable[Iterable], *, ncols: int | None = None):
        data = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise DimensionError("ragged rows")
        self.field = field
        self.nrows = len(data)
        self.ncols = ncols
        self._rows = data
        self._hash = None

    @classmethod
    def _trusted(cls, field: Field, rows, ncols: int) -> Matrix:
        # rows already hold field elements
        m = object.__new__(cls)
        m.field = field
        m._rows = tuple(tuple(r) for r in rows)
        m.nrows = len(m._rows)
        m.ncols = ncols
        m._hash = None
        return m

    # construction helpers

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls._trusted(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int | None = None) -> Matrix:
        ncols = nrows if ncols is None else ncols
        z = field.zero
        return cls._trusted(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def diagonal(cls, field: Field, entries: Sequence) -> Matrix:
        n = len(entries)
        z = field.zero
        vals = [field(x) for x in entries]
        return cls._trusted(field, [[vals[i] if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int | None = None) -> Matrix:
        cols = [tuple(field(x) for x in c) for c in columns]
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        if any(len(c) != nrows for c in cols):
            raise DimensionError("columns of unequal length")
        return cls._trusted(field, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    # accessors

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple[tuple[Scalar, ...], ...]:
        return self._rows

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> Vector:
        return self._rows[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[Vector]:
        return [tuple(c) for c in zip(*self._rows)] if self.nrows else [() for _ in range(self.ncols)]

    def entries(self) -> Iterable[Scalar]:
        for r in self._rows:
            yield from r

    # arithmetic

    def _check_same(self, other: Matrix) -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if self.shape != other.shape:
            raise DimensionError(f"shape {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix._trusted(
            self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ncols
        )

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix._trusted(
            self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ncols
        )

    def __neg__(self) -> Matrix:
        return Matrix._trusted(self.field, [[-a for a in r] for r in self._rows], self.ncols)

    def scale(self, c) -> Matrix:
        c = self.field(c)
        return Matrix._trusted(self.field, [[c * a for a in r] for r in self._rows], self.ncols)

    def __mul__(self, c) -> Matrix:
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return mat_mul(self, other)
        if isinstance(other, tuple):
            return self.apply(other)
        return NotImplemented

    def apply(self, v: Sequence) -> Vector:
        """Matrix-vector product."""
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        z = self.field.zero
        out = []
        for r in self._rows:
            s = z
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return tuple(out)

    def shift(self, c) -> Matrix:
        """Return ``self - c I``."""
        if not self.is_square:
            raise DimensionError("shift of a non-square matrix")
        c = self.field(c)
        return Matrix._trusted(
            self.field,
            [[a - c if i == j else a for j, a in enumerate(r)] for i, r in enumerate(self._rows)],
            self.ncols,
        )

    def transpose(self) -> Matrix:
        return Matrix._trusted(self.field, list(zip(*self._rows)) if self.nrows else [], self.nrows)

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def trace(self) -> Scalar:
        if not self.is_square:
            raise DimensionError("trace of a non-square matrix")
        s = self.field.zero
        for i in range(self.nrows):
            s = s + self._rows[i][i]
        return s

    def is_zero(self) -> bool:
        return not any(a for r in self._rows for a in r)

    def is_identity(self) -> bool:
        return self.is_square and all(
            (a == 1) if i == j else (not a) for i, r in enumerate(self._rows) for j, a in enumerate(r)
        )

    def inverse(self) -> Matrix:
        return mat_inverse(self)

    def rank(self) -> int:
        from .echelon import rref

        return len(rref(self._rows, self.ncols)[1])

    def power(self, k: int) -> Matrix:
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix._trusted(self.field, [[self._rows[i][j] for j in cols] for i in rows], len(cols))

    # comparison, display

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.shape, self._rows))
        return self._hash

    def to_strings(self) -> list[list[str]]:
        fmt = self.field.format
        return [[fmt(a) for a in r] for r in self._rows]

    def __repr__(self) -> str:
        return f"Matrix({self.field!r}, {self.to_strings()})"

    def __str__(self) -> str:
        cells = self.to_strings()
        if not cells:
            return "[]"
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Exact matrix product ``a @ b``."""
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} vs {b.field}")
    if a.ncols != b.nrows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    if a.nrows == 0 or b.ncols == 0:
        return Matrix.zeros(a.field, a.nrows, b.ncols)
    if a.ncols == 0:
        return Matrix.zeros(a.field, a.nrows, b.ncols)
    return Matrix._trusted(a.field, a.field.matmul(a._rows, b._rows), b.ncols)


def _pivot_size(x) -> int:
    # smaller height -> smaller intermediate growth over Q
    num = getattr(x, "numerator", None)
    if num is None:
        return 0
    return abs(num).bit_length() + x.denominator.bit_length()


def mat_inverse(a: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination.

    The pivot in each column is the nonzero candidate of smallest height, which
    keeps rational entry growth down. Raises :class:`SingularMatrixError`.
    """
    if not a.is_square:
        raise DimensionError(f"inverse of non-square {a.shape} matrix")
    n = a.nrows
    f = a.field
    z, o = f.zero, f.one
    work = [list(r) + [o if i == j else z for j in range(n)] for i, r in enumerate(a._rows)]
    for col in range(n):
        best = None
        for r in range(col, n):
            x = work[r][col]
            if x and (best is None or _pivot_size(x) < _pivot_size(work[best][col])):
                best = r
        if best is None:
            raise SingularMatrixError("matrix is singular")
        work[col], work[best] = work[best], work[col]
        prow = work[col]
        inv = o / prow[col]
        prow = [x * inv if x else x for x in prow]
        work[col] = prow
        for r in range(n):
            if r == col:
                continue
            factor = work[r][col]
            if factor:
                row = work[r]
                work[r] = [x - factor * y if y else x for x, y in zip(row, prow)]
    return Matrix._trusted(f, [row[n:] for row in work], n)
