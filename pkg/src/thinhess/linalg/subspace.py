"""Subspaces of K^n in canonical form, and structural shape tests for matrices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import DimensionError, FieldMismatchError
from ..field import Field
from .echelon import nullspace, rref
from .matrix import Matrix, Vector


class Subspace:
    """A subspace of ``field^ambient_dim``.

    The spanning set is kept in reduced column echelon form (the columns of
    ``basis`` are the rows of the RREF of any spanning set), so two subspaces
    are equal exactly when their stored bases are equal entrywise.
    """

    __slots__ = ("field", "ambient_dim", "_vectors")

    def __init__(self, field: Field, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vecs = [[field(x) for x in v] for v in vectors]
        if any(len(v) != ambient_dim for v in vecs):
            raise DimensionError("spanning vector of wrong length")
        reduced, _ = rref(vecs, ambient_dim)
        self.field = field
        self.ambient_dim = ambient_dim
        self._vectors = tuple(tuple(v) for v in reduced)

    @classmethod
    def zero(cls, field: Field, n: int) -> Subspace:
        return cls(field, n)

    @classmethod
    def whole(cls, field: Field, n: int) -> Subspace:
        return cls.column_space(Matrix.identity(field, n))

    @classmethod
    def column_space(cls, m: Matrix) -> Subspace:
        return cls(m.field, m.nrows, m.columns())

    @classmethod
    def kernel(cls, m: Matrix) -> Subspace:
        return cls(m.field, m.ncols, nullspace(m.rows, m.ncols, m.field.zero, m.field.one))

    @property
    def dim(self) -> int:
        return len(self._vectors)

    @property
    def vectors(self) -> tuple[Vector, ...]:
        return self._vectors

    @property
    def basis(self) -> Matrix:
        """Spanning columns in reduced column echelon form (``ambient x dim``)."""
        return Matrix.from_columns(self.field, self._vectors, nrows=self.ambient_dim)

    def _check(self, other: Subspace) -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(f"ambient {self.ambient_dim} vs {other.ambient_dim}")

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace(self.field, self.ambient_dim, self._vectors + other._vectors)

    def __and__(self, other: Subspace) -> Subspace:
        return self.intersect(other)

    def intersect(self, other: Subspace) -> Subspace:
        """``X cap Y`` from the kernel of ``[X | -Y]``."""
        self._check(other)
        if not self._vectors or not other._vectors:
            return Subspace(self.field, self.ambient_dim)
        k, n = self.dim, self.ambient_dim
        rows = [
            [x[i] for x in self._vectors] + [-y[i] for y in other._vectors] for i in range(n)
        ]
        z = self.field.zero
        sols = nullspace(rows, k + other.dim, z, self.field.one)
        vecs = []
        for s in sols:
            v = [z] * n
            for c, x in zip(s[:k], self._vectors):
                if c:
                    v = [a + c * b for a, b in zip(v, x)]
            vecs.append(v)
        return Subspace(self.field, n, vecs)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionError("vector of wrong length")
        return Subspace(self.field, self.ambient_dim, self._vectors + (tuple(v),)).dim == self.dim

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubset(self, other: Subspace) -> bool:
        self._check(other)
        return (self + other).dim == other.dim

    def image(self, m: Matrix) -> Subspace:
        """``m`` applied to the subspace."""
        if m.ncols != self.ambient_dim:
            raise DimensionError("matrix does not act on this space")
        return Subspace(self.field, m.nrows, [m.apply(v) for v in self._vectors])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self._vectors == other._vectors
        )

    def __hash__(self) -> int:
        return hash((self.field, self.ambient_dim, self._vectors))

    def __repr__(self) -> str:
        fmt = self.field.format
        return f"Subspace(dim={self.dim}, basis={[[fmt(x) for x in v] for v in self._vectors]})"


def span(field: Field, vectors: Sequence[Sequence]) -> Subspace:
    vectors = list(vectors)
    if not vectors:
        raise ValueError("span of no vectors needs an ambient dimension; use Subspace.zero")
    return Subspace(field, len(vectors[0]), vectors)


def subspace_ops(x: Subspace, y: Subspace, op: str):
    """``op`` is one of ``sum``, ``intersect``, ``equal``."""
    x._check(y)
    if op == "sum":
        return x + y
    if op == "intersect":
        return x.intersect(y)
    if op == "equal":
        return x == y
    raise ValueError(f"unknown subspace operation {op!r}")


# shape predicates


def _square(a: Matrix) -> None:
    if not a.is_square:
        raise DimensionError(f"shape predicate on non-square {a.shape} matrix")


def is_upper_triangular(a: Matrix) -> bool:
    _square(a)
    return all(not a[i, j] for i in range(a.nrows) for j in range(i))


def is_diagonal(a: Matrix) -> bool:
    _square(a)
    return all(not a[i, j] for i in range(a.nrows) for j in range(a.ncols) if i != j)


def is_hessenberg(a: Matrix) -> bool:
    """Zero below the subdiagonal and every subdiagonal entry nonzero."""
    _square(a)
    n = a.nrows
    if any(a[i, j] for i in range(n) for j in range(i - 1)):
        return False
    return all(a[i + 1, i] for i in range(n - 1))


def is_lower_bidiagonal(a: Matrix) -> bool:
    """Nonzero entries only on the diagonal and subdiagonal, subdiagonal all nonzero."""
    _square(a)
    n = a.nrows
    if any(a[i, j] for i in range(n) for j in range(n) if j != i and j != i - 1):
        return False
    return all(a[i + 1, i] for i in range(n - 1))


def is_upper_bidiagonal(a: Matrix) -> bool:
    return is_lower_bidiagonal(a.transpose())


@dataclass(frozen=True)
class Shape:
    hessenberg: bool
    lower_bidiagonal: bool
    upper_bidiagonal: bool
    diagonal: bool
    upper_triangular: bool


def shape_predicates(a: Matrix) -> Shape:
    return Shape(
        hessenberg=is_hessenberg(a),
        lower_bidiagonal=is_lower_bidiagonal(a),
        upper_bidiagonal=is_upper_bidiagonal(a),
        diagonal=is_diagonal(a),
        upper_triangular=is_upper_triangular(a),
    )


def has_constant_row_sum(a: Matrix, value) -> bool:
    value = a.field(value)
    z = a.field.zero
    return all(sum(r, z) == value for r in a.rows)
