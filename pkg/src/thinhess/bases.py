"""The six distinguished bases, their representing matrices, and transition matrices.

A basis is stored as an invertible matrix whose columns are the basis vectors.
The matrix representing an operator ``X`` with respect to basis columns ``M``
is ``M^{-1} X M``, so column ``j`` holds the coordinates of ``X v_j``.

For two bases ``u`` and ``v``, the transition matrix from ``u`` to ``v`` is the
``S`` with ``v_j = sum_i S_ij u_i``, that is ``cols(v) = cols(u) S``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionError, PreconditionError, SingularMatrixError, StructuralInconsistency
from .field import Scalar
from .linalg import (
    Matrix,
    Subspace,
    Vector,
    has_constant_row_sum,
    is_diagonal,
    is_hessenberg,
    is_lower_bidiagonal,
    is_upper_bidiagonal,
)
from .thcore import ParameterArray, THSystem, dual_parameter_array, nu_from_parameters, require_valid


class BasisKind(str, enum.Enum):
    PHI_SPLIT = "phi_split"
    PHI_STAR_SPLIT = "phi_star_split"
    INV_PHI_SPLIT = "inv_phi_split"
    INV_PHI_STAR_SPLIT = "inv_phi_star_split"
    PHI_STANDARD = "phi_standard"
    PHI_STAR_STANDARD = "phi_star_standard"

    @property
    def cli_name(self) -> str:
        return self.value.replace("_", "-")

    @property
    def seeded_by_eta0(self) -> bool:
        """True if the seed lies in ``E_0 V`` rather than ``E*_0 V``."""
        return self in (BasisKind.PHI_SPLIT, BasisKind.INV_PHI_SPLIT, BasisKind.PHI_STANDARD)

    @classmethod
    def parse(cls, name: str) -> BasisKind:
        key = name.strip().replace("-", "_")
        try:
            return cls(key)
        except ValueError:
            names = ", ".join(k.cli_name for k in cls)
            raise ValueError(f"unknown basis kind {name!r}; expected one of {names}") from None


@dataclass(frozen=True)
class BasisMatrix:
    kind: BasisKind
    columns: Matrix
    seed: Vector

    def vector(self, i: int) -> Vector:
        return self.columns.column(i)


@dataclass(frozen=True)
class RepresentationPair:
    B: Matrix
    B_star: Matrix
    basis_kind: BasisKind | None = None

    def same_matrices(self, other: RepresentationPair) -> bool:
        return self.B == other.B and self.B_star == other.B_star


@dataclass(frozen=True)
class SplitDecomposition:
    subspaces: tuple

    def __len__(self) -> int:
        return len(self.subspaces)

    def __getitem__(self, i: int) -> Subspace:
        return self.subspaces[i]


def _scaled(v: Sequence, c) -> tuple:
    return tuple(c * x for x in v)


def _in_eigenspace(m: Matrix, value, v: Sequence) -> bool:
    return m.apply(v) == _scaled(v, value)


def split_decomposition(s: THSystem) -> SplitDecomposition:
    """``U_i = (E*_0V + .. + E*_iV) cap (E_0V + .. + E_{d-i}V)``, checked against the raise and lower laws."""
    d, f, n = s.d, s.field, s.n
    star_sums = []
    acc = Subspace.zero(f, n)
    for i in range(d + 1):
        acc = acc + s.dual_eigenspace(i)
        star_sums.append(acc)
    sums = []
    acc = Subspace.zero(f, n)
    for i in range(d + 1):
        acc = acc + s.eigenspace(i)
        sums.append(acc)
    U = tuple(star_sums[i].intersect(sums[d - i]) for i in range(d + 1))
    for i, u in enumerate(U):
        if u.dim != 1:
            raise StructuralInconsistency(f"U_{i} has dimension {u.dim}")
    if sum(U[1:], U[0]).dim != n:
        raise StructuralInconsistency("the U_i do not span the whole space")
    zero = Subspace.zero(f, n)
    for i in range(d + 1):
        up = U[i + 1] if i < d else zero
        down = U[i - 1] if i > 0 else zero
        if U[i].image(s.A.shift(s.theta[d - i])) != up:
            raise StructuralInconsistency(f"raising law fails at U_{i}")
        if U[i].image(s.A_star.shift(s.theta_star[i])) != down:
            raise StructuralInconsistency(f"lowering law fails at U_{i}")
    return SplitDecomposition(U)


def make_basis(s: THSystem, kind: BasisKind | str, seed: Sequence | None = None) -> BasisMatrix:
    """Build the basis of ``kind`` from ``seed`` by its defining formula.

    The seed must be a nonzero vector of ``E_0 V`` for the kinds seeded by
    ``eta_0`` and of ``E*_0 V`` for the others. If omitted, the echelon basis
    vector of that eigenspace is used.
    """
    kind = BasisKind(kind) if not isinstance(kind, BasisKind) else kind
    f, d = s.field, s.d
    A, As, th, ths = s.A, s.A_star, s.theta, s.theta_star
    if seed is None:
        seed = s.eta0() if kind.seeded_by_eta0 else s.eta0_star()
    seed = tuple(f(x) for x in seed)
    if len(seed) != s.n:
        raise DimensionError(f"seed of length {len(seed)} for a {s.n}-dimensional space")
    if not any(seed):
        raise PreconditionError("seed must be nonzero")
    host, value, label = (A, th[0], "E_0 V") if kind.seeded_by_eta0 else (As, ths[0], "E*_0 V")
    if not _in_eigenspace(host, value, seed):
        raise PreconditionError(f"seed does not lie in {label}")

    cols: list = [None] * (d + 1)
    if kind is BasisKind.PHI_SPLIT:
        cols[d] = seed
        for i in range(d - 1, -1, -1):
            cols[i] = As.shift(ths[i + 1]).apply(cols[i + 1])
    elif kind is BasisKind.PHI_STAR_SPLIT:
        cols[d] = seed
        for i in range(d - 1, -1, -1):
            cols[i] = A.shift(th[i + 1]).apply(cols[i + 1])
    elif kind is BasisKind.INV_PHI_SPLIT:
        cols[0] = seed
        for i in range(1, d + 1):
            cols[i] = As.shift(ths[d - i + 1]).apply(cols[i - 1])
    elif kind is BasisKind.INV_PHI_STAR_SPLIT:
        cols[0] = seed
        for i in range(1, d + 1):
            cols[i] = A.shift(th[d - i + 1]).apply(cols[i - 1])
    elif kind is BasisKind.PHI_STANDARD:
        cols = [e.apply(seed) for e in s.E_star]
    else:
        cols = [e.apply(seed) for e in s.E]
    M = Matrix.from_columns(f, cols, nrows=s.n)
    if M.rank() != s.n:
        raise StructuralInconsistency(f"{kind.value} vectors are not a basis")
    return BasisMatrix(kind, M, seed)


def represent(s: THSystem, b: BasisMatrix | Matrix) -> RepresentationPair:
    """``(M^{-1} A M, M^{-1} A* M)`` for basis columns ``M``."""
    M = b.columns if isinstance(b, BasisMatrix) else b
    if M.shape != s.A.shape:
        raise DimensionError(f"basis of shape {M.shape} for operators of shape {s.A.shape}")
    Mi = M.inverse()
    kind = b.kind if isinstance(b, BasisMatrix) else None
    return RepresentationPair(Mi @ s.A @ M, Mi @ s.A_star @ M, kind)


# closed forms


def _prod(f, factors) -> Scalar:
    out = f.one
    for x in factors:
        out = out * x
    return out


def _bidiagonal(f, diag, sub=None, sup=None) -> Matrix:
    n = len(diag)
    z = f.zero
    rows = [[z] * n for _ in range(n)]
    for i, x in enumerate(diag):
        rows[i][i] = x
    for i, x in enumerate(sub or ()):
        rows[i + 1][i] = x
    for i, x in enumerate(sup or ()):
        rows[i][i + 1] = x
    return Matrix._trusted(f, rows, n)


def _hessenberg_entries(f, th, ths, phi_of) -> Matrix:
    """Double-sum entry formula for the Hessenberg matrix of a standard basis.

    ``th`` supplies the numerator eigenvalues ``theta_{d-h}``, ``ths`` the
    dual sequence appearing in every product, and ``phi_of(h)`` the split
    scalar attached to summation index ``h`` in the second sum. The second
    sum starts at ``i - 1`` (or 0 when ``i = 0``) and stops at ``j`` (or
    ``d - 1`` when ``j = d``).
    """
    d = len(th) - 1
    z = f.zero
    # den[h][j] = prod_{k=h..d, k != j} (ths_j - ths_k), needed for h <= j
    den = [[None] * (d + 1) for _ in range(d + 1)]
    for j in range(d + 1):
        acc = f.one
        for h in range(d, -1, -1):
            if h != j:
                acc = acc * (ths[j] - ths[h])
            den[h][j] = acc
    # tail[i][m] = prod_{k=m..d} (ths_i - ths_k)
    tail = [[None] * (d + 2) for _ in range(d + 1)]
    for i in range(d + 1):
        acc = f.one
        tail[i][d + 1] = acc
        for m in range(d, -1, -1):
            acc = acc * (ths[i] - ths[m])
            tail[i][m] = acc
    rows = [[z] * (d + 1) for _ in range(d + 1)]
    for i in range(d + 1):
        for j in range(max(i - 1, 0), d + 1):
            total = z
            for h in range(i, j + 1):
                total = total + tail[i][h + 1] * th[d - h] / den[h][j]
            for h in range(max(i - 1, 0), min(j, d - 1) + 1):
                total = total + tail[i][min(h + 2, d + 1)] * phi_of(h) / den[h][j]
            rows[i][j] = total
    return Matrix._trusted(f, rows, d + 1)


def hessenberg_H(p: ParameterArray) -> Matrix:
    """The matrix representing ``A`` in a standard basis, entry by entry."""
    return _hessenberg_entries(p.field, p.theta, p.theta_star, lambda h: p.phi[h])


def hessenberg_H_star(p: ParameterArray) -> Matrix:
    """The matrix representing ``A*`` in a dual standard basis."""
    d = p.d
    return _hessenberg_entries(p.field, p.theta_star, p.theta, lambda h: p.phi[d - h - 1])


def closed_form_representation(p: ParameterArray, kind: BasisKind | str) -> RepresentationPair:
    """The displayed pair of matrices for each basis kind, built from the parameter array alone."""
    require_valid(p)
    kind = BasisKind(kind) if not isinstance(kind, BasisKind) else kind
    f, d = p.field, p.d
    th, ths, phi = p.theta, p.theta_star, p.phi
    ones = [f.one] * d
    rev_th, rev_ths = list(reversed(th)), list(reversed(ths))
    if kind is BasisKind.PHI_SPLIT:
        B = _bidiagonal(f, rev_th, sub=phi)
        Bs = _bidiagonal(f, ths, sup=ones)
    elif kind is BasisKind.PHI_STAR_SPLIT:
        B = _bidiagonal(f, th, sup=ones)
        Bs = _bidiagonal(f, rev_ths, sub=list(reversed(phi)))
    elif kind is BasisKind.INV_PHI_SPLIT:
        B = _bidiagonal(f, th, sup=list(reversed(phi)))
        Bs = _bidiagonal(f, rev_ths, sub=ones)
    elif kind is BasisKind.INV_PHI_STAR_SPLIT:
        B = _bidiagonal(f, rev_th, sub=ones)
        Bs = _bidiagonal(f, ths, sup=phi)
    elif kind is BasisKind.PHI_STANDARD:
        B = hessenberg_H(p)
        Bs = Matrix.diagonal(f, ths)
    else:
        B = Matrix.diagonal(f, th)
        Bs = hessenberg_H_star(p)
    return RepresentationPair(B, Bs, kind)


# transition matrices


def _T_pair(f, ths) -> tuple[Matrix, Matrix]:
    d = len(ths) - 1
    z = f.zero
    T = [[z] * (d + 1) for _ in range(d + 1)]
    Ti = [[z] * (d + 1) for _ in range(d + 1)]
    for i in range(d + 1):
        for j in range(i, d + 1):
            T[i][j] = _prod(f, (ths[i] - ths[k] for k in range(j + 1, d + 1)))
            Ti[i][j] = 1 / _prod(f, (ths[j] - ths[k] for k in range(i, d + 1) if k != j))
    T, Ti = Matrix._trusted(f, T, d + 1), Matrix._trusted(f, Ti, d + 1)
    if not (T @ Ti).is_identity():
        raise StructuralInconsistency("entry formulas for T and its inverse disagree")
    return T, Ti


def transition_T(p: ParameterArray) -> tuple[Matrix, Matrix]:
    """``(T, T^{-1})``: T is the transition from the standard basis to the split basis.

    ``T_ij = (theta*_i - theta*_{j+1}) .. (theta*_i - theta*_d)`` for ``i <= j``
    and ``T^{-1}_ij = 1 / prod_{k=i..d, k != j} (theta*_j - theta*_k)``; both
    are upper triangular and built from these formulas rather than by inversion.
    """
    require_valid(p)
    return _T_pair(p.field, p.theta_star)


def transition_T_star(p: ParameterArray) -> tuple[Matrix, Matrix]:
    """``(T*, T*^{-1})``, the same formulas applied to the dual array."""
    return transition_T(dual_parameter_array(p))


def _antidiagonal(f, values) -> Matrix:
    n = len(values)
    z = f.zero
    rows = [[z] * n for _ in range(n)]
    for i, x in enumerate(values):
        rows[i][n - 1 - i] = x
    return Matrix._trusted(f, rows, n)


def transition_Z(p: ParameterArray) -> Matrix:
    """Transition from the split basis to the dual split basis (seeds linked by ``eta_0 = E_0 eta*_0``)."""
    require_valid(p)
    f, d, th, phi = p.field, p.d, p.theta, p.phi
    num = _prod(f, (th[0] - th[k] for k in range(1, d + 1)))
    return _antidiagonal(f, [num / _prod(f, phi[i:]) for i in range(d + 1)])


def transition_Z_star(p: ParameterArray) -> Matrix:
    """Transition from the dual split basis to the split basis (seeds linked by ``eta*_0 = E*_0 eta_0``)."""
    require_valid(p)
    f, d, ths, phi = p.field, p.d, p.theta_star, p.phi
    num = _prod(f, (ths[0] - ths[k] for k in range(1, d + 1)))
    return _antidiagonal(f, [num / _prod(f, phi[: d - i]) for i in range(d + 1)])


def _P_entries(f, th, ths, phi_prefix) -> Matrix:
    # phi_prefix[h] is the product of the first h split scalars in the relevant order
    d = len(th) - 1
    lead = _prod(f, (ths[0] - ths[k] for k in range(1, d + 1)))
    rows = []
    for i in range(d + 1):
        row = []
        for j in range(d + 1):
            scale = lead / _prod(f, (ths[j] - ths[k] for k in range(d + 1) if k != j))
            total = f.zero
            a = f.one  # (th_i - th_d) .. (th_i - th_{d-h+1})
            b = f.one  # (ths_j - ths_0) .. (ths_j - ths_{h-1})
            for h in range(d + 1):
                if h:
                    a = a * (th[i] - th[d - h + 1])
                    b = b * (ths[j] - ths[h - 1])
                if not a or not b:
                    # further terms contain the same vanishing factor
                    break
                total = total + a * b / phi_prefix[h]
            row.append(scale * total)
        rows.append(row)
    return Matrix._trusted(f, rows, d + 1)


def _prefix_products(f, seq) -> list:
    out = [f.one]
    for x in seq:
        out.append(out[-1] * x)
    return out


def transition_P_closed_form(p: ParameterArray) -> Matrix:
    return _P_entries(p.field, p.theta, p.theta_star, _prefix_products(p.field, p.phi))


def transition_P_star_closed_form(p: ParameterArray) -> Matrix:
    return _P_entries(p.field, p.theta_star, p.theta, _prefix_products(p.field, reversed(p.phi)))


def transition_P(p: ParameterArray) -> Matrix:
    """Transition from the dual standard basis to the standard basis (``eta*_0 = E*_0 eta_0``).

    Computed as the product ``T* Z* T^{-1}`` and by the double-sum closed form;
    the two must agree and the first column must be all ones.
    """
    require_valid(p)
    _, Ti = transition_T(p)
    Ts, _ = transition_T_star(p)
    prod = Ts @ transition_Z_star(p) @ Ti
    closed = transition_P_closed_form(p)
    _check_P(prod, closed, "P")
    return prod


def transition_P_star(p: ParameterArray) -> Matrix:
    """Transition from the standard basis to the dual standard basis (``eta_0 = E_0 eta*_0``); ``T Z T*^{-1}``."""
    require_valid(p)
    T, _ = transition_T(p)
    _, Tsi = transition_T_star(p)
    prod = T @ transition_Z(p) @ Tsi
    closed = transition_P_star_closed_form(p)
    _check_P(prod, closed, "P*")
    return prod


def _check_P(prod: Matrix, closed: Matrix, label: str) -> None:
    if prod != closed:
        raise StructuralInconsistency(f"{label} by product differs from {label} by closed form")
    if any(prod[i, 0] != 1 for i in range(prod.nrows)):
        raise StructuralInconsistency(f"first column of {label} is not all ones")


#: (from, to) -> how to obtain the transition matrix from the parameter array
_TRANSITIONS = {
    (BasisKind.PHI_STANDARD, BasisKind.PHI_SPLIT): lambda p: transition_T(p)[0],
    (BasisKind.PHI_SPLIT, BasisKind.PHI_STANDARD): lambda p: transition_T(p)[1],
    (BasisKind.PHI_STAR_STANDARD, BasisKind.PHI_STAR_SPLIT): lambda p: transition_T_star(p)[0],
    (BasisKind.PHI_STAR_SPLIT, BasisKind.PHI_STAR_STANDARD): lambda p: transition_T_star(p)[1],
    (BasisKind.PHI_SPLIT, BasisKind.PHI_STAR_SPLIT): transition_Z,
    (BasisKind.PHI_STAR_SPLIT, BasisKind.PHI_SPLIT): transition_Z_star,
    (BasisKind.PHI_STAR_STANDARD, BasisKind.PHI_STANDARD): transition_P,
    (BasisKind.PHI_STANDARD, BasisKind.PHI_STAR_STANDARD): transition_P_star,
}

TRANSITION_PAIRS = tuple(_TRANSITIONS)


def transition_matrix(p: ParameterArray, source: BasisKind | str, target: BasisKind | str) -> Matrix:
    """One of the named transition matrices, selected by its source and target basis kinds."""
    src = BasisKind.parse(source) if isinstance(source, str) else source
    dst = BasisKind.parse(target) if isinstance(target, str) else target
    try:
        fn = _TRANSITIONS[(src, dst)]
    except KeyError:
        raise ValueError(f"no named transition matrix from {src.cli_name} to {dst.cli_name}") from None
    return fn(p)


def nu_identity_holds(p: ParameterArray, X: Matrix, Y: Matrix) -> bool:
    """``X Y = Y X = nu I``."""
    nuI = Matrix.identity(p.field, p.d + 1).scale(nu_from_parameters(p))
    return X @ Y == nuI and Y @ X == nuI


# characterizations


def split_sequence(s: THSystem) -> tuple:
    """``phi_1 .. phi_d``: the subdiagonal of the matrix representing ``A`` in a split basis."""
    key = "phi"
    if key not in s._cache:
        B = represent(s, make_basis(s, BasisKind.PHI_SPLIT)).B
        s._cache[key] = tuple(B[i + 1, i] for i in range(s.d))
    return s._cache[key]


def _as_columns(candidate: BasisMatrix | Matrix) -> Matrix:
    return candidate.columns if isinstance(candidate, BasisMatrix) else candidate


def _representation_or_none(s: THSystem, M: Matrix) -> RepresentationPair | None:
    try:
        return represent(s, M)
    except SingularMatrixError:
        return None


def is_split_basis(s: THSystem, candidate: BasisMatrix | Matrix) -> bool:
    """Split-basis test through the represented pair ``(C, C*)``.

    Requires ``C`` lower bidiagonal, ``C*`` upper bidiagonal with unit
    superdiagonal, ``C_dd = theta_0`` and ``C*_00 = theta*_0``.
    """
    rep = _representation_or_none(s, _as_columns(candidate))
    if rep is None:
        return False
    C, Cs, d = rep.B, rep.B_star, s.d
    if not (is_lower_bidiagonal(C) and is_upper_bidiagonal(Cs)):
        return False
    if any(Cs[i - 1, i] != 1 for i in range(1, d + 1)):
        return False
    return C[d, d] == s.theta[0] and Cs[0, 0] == s.theta_star[0]


def is_split_basis_by_lowering(s: THSystem, candidate: BasisMatrix | Matrix) -> bool:
    """``v_d`` lies in ``E_0 V`` and ``A* v_i = theta*_i v_i + v_{i-1}`` for ``1 <= i <= d``."""
    M = _as_columns(candidate)
    v = M.columns()
    d = s.d
    if not any(x for col in v for x in col):
        return False
    if not _in_eigenspace(s.A, s.theta[0], v[d]):
        return False
    for i in range(1, d + 1):
        lhs = s.A_star.apply(v[i])
        rhs = tuple(a * s.theta_star[i] + b for a, b in zip(v[i], v[i - 1]))
        if lhs != rhs:
            return False
    return True


def is_split_basis_by_raising(s: THSystem, candidate: BasisMatrix | Matrix) -> bool:
    """``v_0`` lies in ``E*_0 V`` and ``A v_i = theta_{d-i} v_i + phi_{i+1} v_{i+1}`` for ``i < d``."""
    M = _as_columns(candidate)
    v = M.columns()
    d = s.d
    if not any(x for col in v for x in col):
        return False
    if not _in_eigenspace(s.A_star, s.theta_star[0], v[0]):
        return False
    phi = split_sequence(s)
    for i in range(d):
        lhs = s.A.apply(v[i])
        rhs = tuple(a * s.theta[d - i] + phi[i] * b for a, b in zip(v[i], v[i + 1]))
        if lhs != rhs:
            return False
    return True


def is_standard_basis(s: THSystem, candidate: BasisMatrix | Matrix) -> bool:
    """Standard-basis test by eigenspace membership.

    Each ``v_i`` must lie in ``E*_i V``, their sum in ``E_0 V``, and the
    vectors must not all vanish.
    """
    v = _as_columns(candidate).columns()
    if not any(x for col in v for x in col):
        return False
    for i, vi in enumerate(v):
        if not _in_eigenspace(s.A_star, s.theta_star[i], vi):
            return False
    total = tuple(sum(xs, s.field.zero) for xs in zip(*v))
    return _in_eigenspace(s.A, s.theta[0], total)


def is_standard_basis_by_row_sum(s: THSystem, candidate: BasisMatrix | Matrix) -> bool:
    """``C`` has constant row sum ``theta_0`` and ``C* = diag(theta*_0, .., theta*_d)``."""
    rep = _representation_or_none(s, _as_columns(candidate))
    if rep is None:
        return False
    return has_constant_row_sum(rep.B, s.theta[0]) and rep.B_star == Matrix.diagonal(s.field, s.theta_star)


def is_standard_basis_by_shape(s: THSystem, candidate: BasisMatrix | Matrix) -> bool:
    """``C`` Hessenberg with constant row sum ``theta_0``; ``C*`` diagonal with ``C*_00 = theta*_0``."""
    rep = _representation_or_none(s, _as_columns(candidate))
    if rep is None:
        return False
    C, Cs = rep.B, rep.B_star
    return (
        is_hessenberg(C)
        and has_constant_row_sum(C, s.theta[0])
        and is_diagonal(Cs)
        and Cs[0, 0] == s.theta_star[0]
    )
