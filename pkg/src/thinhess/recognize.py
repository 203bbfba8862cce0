"""Recognition of TH pairs, enumeration of their TH systems, and isomorphism witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bases import BasisKind, make_basis, split_sequence
from .errors import DimensionError, FieldMismatchError, PreconditionError, StructuralInconsistency
from .field import Field, Scalar
from .linalg import Matrix, Subspace, is_hessenberg, is_upper_triangular, min_poly, roots_in_field
from .thcore import (
    ParameterArray,
    THSystem,
    hessenberg_condition_failures,
    primitive_idempotents,
    validate_parameter_array,
)


@dataclass(frozen=True)
class MatrixPair:
    A: Matrix
    A_star: Matrix

    def __post_init__(self):
        if self.A.field != self.A_star.field:
            raise FieldMismatchError(f"A over {self.A.field}, A_star over {self.A_star.field}")
        if not self.A.is_square or self.A.shape != self.A_star.shape:
            raise DimensionError(f"A is {self.A.shape} and A_star is {self.A_star.shape}; need equal square shapes")

    @property
    def field(self) -> Field:
        return self.A.field

    @property
    def d(self) -> int:
        return self.A.nrows - 1

    def swapped(self) -> MatrixPair:
        return MatrixPair(self.A_star, self.A)


#: failure codes a recognition report can carry
NOT_SPLIT = "not_split"
NOT_DIAGONALIZABLE = "not_diagonalizable"
REPEATED_EIGENVALUE = "repeated_eigenvalue"
NO_ORDERING = "no_ordering"


@dataclass(frozen=True)
class FailureReason:
    code: str
    matrix: str  # "A" or "A_star"
    message: str

    def to_json(self) -> dict:
        return {"code": self.code, "matrix": self.matrix, "message": self.message}


@dataclass(frozen=True)
class MultiplicityFree:
    """Outcome of :func:`is_multiplicity_free`; truthy iff multiplicity-free."""

    ok: bool
    eigenvalues: tuple
    code: str | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_multiplicity_free(a: Matrix) -> MultiplicityFree:
    """Decide multiplicity-freeness from the minimal polynomial.

    The minimal polynomial must split over the field, have distinct roots and
    have degree equal to the size of ``a``. The roots found are returned in
    every case, sorted canonically.
    """
    if not a.is_square:
        raise DimensionError("multiplicity-free test on a non-square matrix")
    mp = min_poly(a)
    roots = roots_in_field(mp)
    vals = roots.values
    if not roots.splits:
        return MultiplicityFree(False, vals, NOT_SPLIT, f"minimal polynomial {mp} does not split over {a.field}")
    if not roots.squarefree:
        return MultiplicityFree(False, vals, NOT_DIAGONALIZABLE, f"minimal polynomial {mp} has a repeated root")
    if mp.degree != a.nrows:
        return MultiplicityFree(
            False,
            vals,
            REPEATED_EIGENVALUE,
            f"minimal polynomial has degree {mp.degree} < {a.nrows}, so some eigenspace is not a line",
        )
    return MultiplicityFree(True, vals)


class _Spectrum:
    """Eigenvalues, idempotents and eigenlines of one multiplicity-free matrix."""

    def __init__(self, a: Matrix, eigenvalues: Sequence[Scalar]):
        self.a = a
        self.eigenvalues = tuple(eigenvalues)
        idem = primitive_idempotents(a, self.eigenvalues, check=True)
        self.E = dict(zip(self.eigenvalues, idem))
        self.lines = {t: Subspace.column_space(e) for t, e in self.E.items()}


def _orderings(spec: _Spectrum, other: Matrix) -> list[tuple]:
    # flag construction: W_0 = an eigenline, W_i = W_{i-1} + other W_{i-1}
    n = spec.a.nrows
    found = []
    for first in spec.eigenvalues:
        order = [first]
        W = spec.lines[first]
        ok = True
        for i in range(1, n):
            W = W + W.image(other)
            if W.dim != i + 1:
                ok = False
                break
            fresh = [t for t in spec.eigenvalues if t not in order and spec.lines[t].issubset(W)]
            if len(fresh) != 1:
                ok = False
                break
            order.append(fresh[0])
        if not ok:
            continue
        E = [spec.E[t] for t in order]
        if not hessenberg_condition_failures(E, other, "ordering"):
            found.append(tuple(order))
    return found


def th_orderings(pair: MatrixPair, eigenvalues: Sequence[Scalar] | None = None) -> list[tuple]:
    """Orderings of the eigenvalues of ``pair.A`` compatible with ``pair.A_star``.

    One flag is grown per candidate first eigenvalue, so at most ``d + 1``
    orderings are returned. Each one is re-verified entrywise: with
    ``E_i`` ordered accordingly, ``E_i A* E_j`` vanishes for ``i - j > 1`` and
    is nonzero for ``i - j = 1``.
    """
    if eigenvalues is None:
        mf = is_multiplicity_free(pair.A)
        if not mf:
            raise PreconditionError(f"A is not multiplicity-free: {mf.message}")
        eigenvalues = mf.eigenvalues
    return _orderings(_Spectrum(pair.A, eigenvalues), pair.A_star)


@dataclass(frozen=True)
class RecognitionReport:
    is_th_pair: bool
    systems: tuple  # of (THSystem, ParameterArray)
    failure_reason: FailureReason | None = None

    @property
    def parameter_arrays(self) -> list[ParameterArray]:
        return [p for _, p in self.systems]

    def to_json(self) -> dict:
        out = {
            "is_th_pair": self.is_th_pair,
            "systems": [p.to_json() for _, p in self.systems],
        }
        if self.failure_reason is not None:
            out["failure_reason"] = self.failure_reason.to_json()
        return out


def _sort_key(field: Field, p: ParameterArray):
    k = field.sort_key
    return (tuple(k(x) for x in p.theta), tuple(k(x) for x in p.theta_star))


def recognize_th_pair(pair: MatrixPair) -> RecognitionReport:
    """Find every TH system whose underlying pair is ``(A, A*)``.

    Both matrices must be multiplicity-free. Every verified ordering for ``A``
    is combined with every verified ordering for ``A*``; each combination is
    re-checked and its parameter array extracted. Systems are sorted by
    ``(theta, theta_star)`` under the field's canonical scalar order.
    """
    specs = {}
    for label, m in (("A", pair.A), ("A_star", pair.A_star)):
        mf = is_multiplicity_free(m)
        if not mf:
            return RecognitionReport(False, (), FailureReason(mf.code, label, mf.message))
        specs[label] = _Spectrum(m, mf.eigenvalues)

    ords = _orderings(specs["A"], pair.A_star)
    if not ords:
        return RecognitionReport(
            False, (), FailureReason(NO_ORDERING, "A", "no ordering of the eigenvalues of A meets the subdiagonal conditions")
        )
    ords_star = _orderings(specs["A_star"], pair.A)
    if not ords_star:
        return RecognitionReport(
            False,
            (),
            FailureReason(NO_ORDERING, "A_star", "no ordering of the eigenvalues of A_star meets the subdiagonal conditions"),
        )

    found = []
    for th in ords:
        E = tuple(specs["A"].E[t] for t in th)
        for ths in ords_star:
            Es = tuple(specs["A_star"].E[t] for t in ths)
            s = THSystem(pair.A, pair.A_star, E, Es, th, ths)
            bad = hessenberg_condition_failures(E, pair.A_star, "E_i A* E_j")
            bad += hessenberg_condition_failures(Es, pair.A, "E*_i A E*_j")
            if bad:
                raise StructuralInconsistency("assembled system fails: " + "; ".join(bad))
            found.append((s, extract_parameter_array(s)))
    found.sort(key=lambda sp: _sort_key(pair.field, sp[1]))
    return RecognitionReport(True, tuple(found))


def extract_parameter_array(s: THSystem) -> ParameterArray:
    """``(theta, theta*, phi)`` with ``phi`` read off the split-basis representation of ``A``."""
    p = ParameterArray(s.field, s.theta, s.theta_star, split_sequence(s))
    v = validate_parameter_array(p)
    if not v:
        raise StructuralInconsistency(f"extracted parameter array is invalid: {v.message}")
    return p


def dual_eigenvalues_from_triangular(pair: MatrixPair) -> tuple:
    """Diagonal of an upper triangular ``A*`` paired with a Hessenberg ``A``, certified.

    The diagonal is accepted only if it is the dual eigenvalue sequence of a
    system found by :func:`recognize_th_pair`.
    """
    if not is_hessenberg(pair.A):
        raise PreconditionError("A is not Hessenberg")
    if not is_upper_triangular(pair.A_star):
        raise PreconditionError("A_star is not upper triangular")
    diag = tuple(pair.A_star[i, i] for i in range(pair.A_star.nrows))
    report = recognize_th_pair(pair)
    if not report.is_th_pair:
        raise PreconditionError("the pair is not a TH pair")
    if not any(s.theta_star == diag for s, _ in report.systems):
        raise StructuralInconsistency("diagonal of A_star is not a dual eigenvalue sequence")
    return diag


@dataclass(frozen=True)
class IsomorphismWitness:
    gamma: Matrix


def intertwining_failures(gamma: Matrix, s1: THSystem, s2: THSystem) -> list[str]:
    out = []
    if gamma @ s1.A != s2.A @ gamma:
        out.append("gamma A != A' gamma")
    if gamma @ s1.A_star != s2.A_star @ gamma:
        out.append("gamma A* != A*' gamma")
    for i, (e1, e2) in enumerate(zip(s1.E, s2.E)):
        if gamma @ e1 != e2 @ gamma:
            out.append(f"gamma E_{i} != E'_{i} gamma")
    for i, (e1, e2) in enumerate(zip(s1.E_star, s2.E_star)):
        if gamma @ e1 != e2 @ gamma:
            out.append(f"gamma E*_{i} != E*'_{i} gamma")
    return out


def isomorphic(s1: THSystem, s2: THSystem) -> IsomorphismWitness | None:
    """An isomorphism from ``s1`` to ``s2`` sending a split basis to a split basis, or ``None``.

    Isomorphic systems are exactly those with equal parameter arrays. The
    returned ``gamma`` has been checked against both operators and every
    idempotent.
    """
    if s1.field != s2.field:
        raise FieldMismatchError(f"{s1.field} vs {s2.field}")
    if s1.n != s2.n:
        raise DimensionError(f"dimension {s1.n} vs {s2.n}")
    if extract_parameter_array(s1) != extract_parameter_array(s2):
        return None
    M1 = make_basis(s1, BasisKind.PHI_SPLIT).columns
    M2 = make_basis(s2, BasisKind.PHI_SPLIT).columns
    gamma = M2 @ M1.inverse()
    bad = intertwining_failures(gamma, s1, s2)
    if bad:
        raise StructuralInconsistency("equal parameter arrays but witness fails: " + "; ".join(bad))
    return IsomorphismWitness(gamma)
