"""Row reduction primitives shared by inverses, kernels, subspaces and Krylov searches."""

from __future__ import annotations

from typing import Sequence

from ..field import Scalar


def rref(rows: Sequence[Sequence[Scalar]], ncols: int) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form.

    Returns the nonzero rows of the RREF (each pivot equal to 1, pivot columns
    cleared elsewhere) and the list of pivot columns. The result depends only
    on the row space, so it is a canonical form.
    """
    work = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(work)) if work[r][col]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        inv = 1 / prow[col]
        prow = [x * inv if x else x for x in prow]
        work[rank] = prow
        for r in range(len(work)):
            if r != rank:
                factor = work[r][col]
                if factor:
                    work[r] = [x - factor * y if y else x for x, y in zip(work[r], prow)]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return work[:rank], pivots


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int, zero: Scalar, one: Scalar) -> list[list[Scalar]]:
    """Basis of ``{x : M x = 0}`` for the matrix with the given rows."""
    reduced, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][fc]
        basis.append(v)
    return basis


class IncrementalReducer:
    """Maintains a growing set of reduced vectors and detects linear dependence.

    Each inserted vector is reduced against the stored ones while tracking the
    combination of inserted vectors it equals; :meth:`insert` returns ``None``
    when the vector is independent, otherwise the coefficients ``c`` with
    ``v = sum(c[k] * inserted[k])``.
    """

    def __init__(self, dim: int, zero: Scalar, one: Scalar):
        self.dim = dim
        self.zero = zero
        self.one = one
        # (pivot column, normalized vector, combination over inserted vectors)
        self._basis: list[tuple[int, list[Scalar], list[Scalar]]] = []
        self._count = 0

    @property
    def rank(self) -> int:
        return len(self._basis)

    def reduce(self, v: Sequence[Scalar]) -> tuple[list[Scalar], list[Scalar]]:
        """Return ``(residual, combo)`` with ``v = residual + sum(combo[k] * inserted[k])``."""
        v = list(v)
        combo = [self.zero] * self._count
        for pc, bvec, bcomb in self._basis:
            c = v[pc]
            if c:
                v = [x - c * y if y else x for x, y in zip(v, bvec)]
                for k, y in enumerate(bcomb):
                    if y:
                        combo[k] = combo[k] + c * y
        return v, combo

    def contains(self, v: Sequence[Scalar]) -> bool:
        residual, _ = self.reduce(v)
        return not any(residual)

    def insert(self, v: Sequence[Scalar]):
        residual, combo = self.reduce(v)
        pc = next((i for i, x in enumerate(residual) if x), None)
        idx = self._count
        self._count += 1
        for _, _, bcomb in self._basis:
            bcomb.append(self.zero)
        if pc is None:
            return combo
        inv = self.one / residual[pc]
        bvec = [x * inv if x else x for x in residual]
        # bvec = inv * (v - sum combo[k] inserted[k])
        bcomb = [-(c * inv) if c else c for c in combo] + [inv]
        self._basis.append((pc, bvec, bcomb))
        return None
