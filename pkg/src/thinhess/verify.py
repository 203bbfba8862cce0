"""The identity suite run by ``thinhess verify``.

Each check has a fixed name and a one-line statement of the identity it
tests. :func:`verify_parameter_array` builds the canonical system for the
array and evaluates every check on it, returning one :class:`CheckResult`
per check in the order of :data:`CHECKS`.
"""

from __future__ import annotations

import traceback
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

from . import bases as bs
from .bases import BasisKind
from .linalg import (
    IncrementalReducer,
    Matrix,
    has_constant_row_sum,
    is_hessenberg,
    is_lower_bidiagonal,
    is_upper_bidiagonal,
)
from .recognize import MatrixPair, extract_parameter_array, recognize_th_pair
from .thcore import (
    ParameterArray,
    build_canonical_system,
    dual_parameter_array,
    dual_system,
    hessenberg_condition_failures,
    nu_from_idempotents,
    nu_from_parameters,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    description: str

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail, "description": self.description}


class _Ctx:
    """Shared, lazily computed data for one run of the suite."""

    def __init__(self, p: ParameterArray):
        self.p = p
        self.f = p.field
        self.d = p.d
        self.s = build_canonical_system(p, check=False)
        self.I = Matrix.identity(self.f, self.d + 1)
        self.nu = nu_from_parameters(p)

    # computed on first use so that a failure is charged to the check that needs it

    @cached_property
    def T(self):
        return bs.transition_T(self.p)[0]

    @cached_property
    def Ti(self):
        return bs.transition_T(self.p)[1]

    @cached_property
    def Ts(self):
        return bs.transition_T_star(self.p)[0]

    @cached_property
    def Tsi(self):
        return bs.transition_T_star(self.p)[1]

    @cached_property
    def Z(self):
        return bs.transition_Z(self.p)

    @cached_property
    def Zs(self):
        return bs.transition_Z_star(self.p)

    @cached_property
    def P(self):
        return bs.transition_P(self.p)

    @cached_property
    def Ps(self):
        return bs.transition_P_star(self.p)

    @cached_property
    def closed(self):
        return {k: bs.closed_form_representation(self.p, k) for k in BasisKind}

    def basis(self, kind: BasisKind, seed=None) -> Matrix:
        return bs.make_basis(self.s, kind, seed).columns

    def scalar(self):
        # a fixed nonzero scalar other than the default, where the field allows one
        c = self.f(3)
        return c if c else self.f(2)


Check = Callable[[_Ctx], list]  # returns a list of failure messages


def _sum(mats, start):
    for m in mats:
        start = start + m
    return start


def _idempotent_sum(c: _Ctx) -> list:
    out = []
    z = Matrix.zeros(c.f, c.d + 1)
    if _sum(c.s.E, z) != c.I:
        out.append("sum of E_i is not I")
    if _sum(c.s.E_star, z) != c.I:
        out.append("sum of E*_i is not I")
    return out


def _orthogonality(c: _Ctx) -> list:
    out = []
    for label, E in (("E", c.s.E), ("E*", c.s.E_star)):
        for i, a in enumerate(E):
            for j, b in enumerate(E):
                prod = a @ b
                if (i == j and prod != a) or (i != j and not prod.is_zero()):
                    out.append(f"{label}_{i} {label}_{j} wrong")
    return out


def _spectral(c: _Ctx) -> list:
    out = []
    z = Matrix.zeros(c.f, c.d + 1)
    if _sum((e.scale(t) for t, e in zip(c.s.theta, c.s.E)), z) != c.s.A:
        out.append("A != sum theta_i E_i")
    if _sum((e.scale(t) for t, e in zip(c.s.theta_star, c.s.E_star)), z) != c.s.A_star:
        out.append("A* != sum theta*_i E*_i")
    return out


def _annihilating(c: _Ctx) -> list:
    out = []
    for label, M, ev in (("A", c.s.A, c.s.theta), ("A*", c.s.A_star, c.s.theta_star)):
        prod = c.I
        for t in ev:
            prod = prod @ M.shift(t)
        if not prod.is_zero():
            out.append(f"product of ({label} - eigenvalue I) is nonzero")
    return out


def _rank_one(c: _Ctx) -> list:
    return [
        f"{label}_{i} has rank {e.rank()}"
        for label, E in (("E", c.s.E), ("E*", c.s.E_star))
        for i, e in enumerate(E)
        if e.rank() != 1
    ]


def _subdiag_A_star(c: _Ctx) -> list:
    return hessenberg_condition_failures(c.s.E, c.s.A_star, "E_i A* E_j")


def _subdiag_A(c: _Ctx) -> list:
    return hessenberg_condition_failures(c.s.E_star, c.s.A, "E*_i A E*_j")


def _split_decomposition(c: _Ctx) -> list:
    U = bs.split_decomposition(c.s)  # raises on a failed law
    out = []
    basis = c.basis(BasisKind.PHI_SPLIT)
    for i in range(c.d + 1):
        if not U[i].contains(basis.column(i)):
            out.append(f"U_{i} does not contain the split basis vector v_{i}")
    return out


def _split_sequence_eigen(c: _Ctx) -> list:
    U = bs.split_decomposition(c.s)
    s, d, out = c.s, c.d, []
    for i in range(1, d + 1):
        phi = c.p.phi[i - 1]
        up = s.A.shift(s.theta[d - i + 1])
        down = s.A_star.shift(s.theta_star[i])
        u = U[i].vectors[0]
        if (up @ down).apply(u) != tuple(phi * x for x in u):
            out.append(f"phi_{i} is not the eigenvalue on U_{i}")
        w = U[i - 1].vectors[0]
        if (down @ up).apply(w) != tuple(phi * x for x in w):
            out.append(f"phi_{i} is not the eigenvalue on U_{i - 1}")
    return out


def _representations(c: _Ctx) -> list:
    out = []
    k = c.scalar()
    for kind in BasisKind:
        base = c.s.eta0() if kind.seeded_by_eta0 else c.s.eta0_star()
        for seed in (base, tuple(k * x for x in base)):
            rep = bs.represent(c.s, bs.make_basis(c.s, kind, seed))
            if not rep.same_matrices(c.closed[kind]):
                out.append(f"{kind.cli_name}: conjugated pair differs from closed form")
    return out


def _split_shapes(c: _Ctx) -> list:
    out = []
    ones = lambda M, sup: all(  # noqa: E731
        (M[i, i + 1] if sup else M[i + 1, i]) == 1 for i in range(c.d)
    )
    r = c.closed
    checks = {
        BasisKind.PHI_SPLIT: is_lower_bidiagonal(r[BasisKind.PHI_SPLIT].B)
        and is_upper_bidiagonal(r[BasisKind.PHI_SPLIT].B_star)
        and ones(r[BasisKind.PHI_SPLIT].B_star, True),
        BasisKind.PHI_STAR_SPLIT: is_upper_bidiagonal(r[BasisKind.PHI_STAR_SPLIT].B)
        and ones(r[BasisKind.PHI_STAR_SPLIT].B, True)
        and is_lower_bidiagonal(r[BasisKind.PHI_STAR_SPLIT].B_star),
        BasisKind.INV_PHI_SPLIT: is_upper_bidiagonal(r[BasisKind.INV_PHI_SPLIT].B)
        and is_lower_bidiagonal(r[BasisKind.INV_PHI_SPLIT].B_star)
        and ones(r[BasisKind.INV_PHI_SPLIT].B_star, False),
        BasisKind.INV_PHI_STAR_SPLIT: is_lower_bidiagonal(r[BasisKind.INV_PHI_STAR_SPLIT].B)
        and ones(r[BasisKind.INV_PHI_STAR_SPLIT].B, False)
        and is_upper_bidiagonal(r[BasisKind.INV_PHI_STAR_SPLIT].B_star),
    }
    for kind, ok in checks.items():
        if not ok:
            out.append(f"{kind.cli_name} pair has the wrong shape")
    B = r[BasisKind.PHI_SPLIT].B
    if tuple(B[i + 1, i] for i in range(c.d)) != c.p.phi:
        out.append("subdiagonal of the split representation of A is not phi")
    return out


def _standard_shapes(c: _Ctx) -> list:
    out = []
    H, Ds = c.closed[BasisKind.PHI_STANDARD].B, c.closed[BasisKind.PHI_STANDARD].B_star
    D, Hs = c.closed[BasisKind.PHI_STAR_STANDARD].B, c.closed[BasisKind.PHI_STAR_STANDARD].B_star
    if not (is_hessenberg(H) and has_constant_row_sum(H, c.p.theta[0])):
        out.append("H is not Hessenberg with row sum theta_0")
    if not (is_hessenberg(Hs) and has_constant_row_sum(Hs, c.p.theta_star[0])):
        out.append("H* is not Hessenberg with row sum theta*_0")
    if Ds != Matrix.diagonal(c.f, c.p.theta_star) or D != Matrix.diagonal(c.f, c.p.theta):
        out.append("D or D* is not the diagonal of eigenvalues")
    for j in range(c.d):
        ths = c.p.theta_star
        num = bs._prod(c.f, (ths[j + 1] - ths[k] for k in range(j + 2, c.d + 1))) * c.p.phi[j]
        den = bs._prod(c.f, (ths[j] - ths[k] for k in range(j + 1, c.d + 1)))
        if H[j + 1, j] != num / den:
            out.append(f"H subdiagonal entry {j + 1},{j} differs from its product formula")
    return out


def _transition_T(c: _Ctx) -> list:
    out = []
    split = c.closed[BasisKind.PHI_SPLIT]
    Ds = Matrix.diagonal(c.f, c.p.theta_star)
    if c.T @ c.Ti != c.I or c.Ti @ c.T != c.I:
        out.append("T T^-1 != I")
    if c.Ti != c.T.inverse():
        out.append("closed-form T^-1 differs from the inverse of T")
    if Ds @ c.T != c.T @ split.B_star:
        out.append("D* T != T B*")
    if any(c.T[i, c.d] != 1 for i in range(c.d + 1)):
        out.append("last column of T is not all ones")
    if c.T @ split.B @ c.Ti != c.closed[BasisKind.PHI_STANDARD].B:
        out.append("T B T^-1 != H")
    eta = c.s.eta0()
    if c.basis(BasisKind.PHI_STANDARD, eta) @ c.T != c.basis(BasisKind.PHI_SPLIT, eta):
        out.append("standard basis times T is not the split basis")
    return out


def _transition_T_star(c: _Ctx) -> list:
    out = []
    if (c.Ts, c.Tsi) != bs.transition_T(dual_parameter_array(c.p)):
        out.append("T* differs from T of the dual array")
    if c.Ts @ c.Tsi != c.I:
        out.append("T* T*^-1 != I")
    eta = c.s.eta0_star()
    if c.basis(BasisKind.PHI_STAR_STANDARD, eta) @ c.Ts != c.basis(BasisKind.PHI_STAR_SPLIT, eta):
        out.append("dual standard basis times T* is not the dual split basis")
    D = Matrix.diagonal(c.f, c.p.theta)
    if D @ c.Ts != c.Ts @ c.closed[BasisKind.PHI_STAR_SPLIT].B:
        out.append("D T* != T* B")
    return out


def _transition_Z(c: _Ctx) -> list:
    out = []
    if not bs.nu_identity_holds(c.p, c.Z, c.Zs):
        out.append("Z Z* or Z* Z is not nu I")
    eta_s = c.s.eta0_star()
    linked = c.s.E[0].apply(eta_s)
    if c.basis(BasisKind.PHI_SPLIT, linked) @ c.Z != c.basis(BasisKind.PHI_STAR_SPLIT, eta_s):
        out.append("split basis (seed E_0 eta*_0) times Z is not the dual split basis")
    eta = c.s.eta0()
    linked = c.s.E_star[0].apply(eta)
    if c.basis(BasisKind.PHI_STAR_SPLIT, linked) @ c.Zs != c.basis(BasisKind.PHI_SPLIT, eta):
        out.append("dual split basis (seed E*_0 eta_0) times Z* is not the split basis")
    return out


def _transition_P(c: _Ctx) -> list:
    out = []
    if c.P != bs.transition_P_closed_form(c.p) or c.Ps != bs.transition_P_star_closed_form(c.p):
        out.append("product and closed form of P or P* disagree")
    if any(c.P[i, 0] != 1 or c.Ps[i, 0] != 1 for i in range(c.d + 1)):
        out.append("first column of P or P* is not all ones")
    if not bs.nu_identity_holds(c.p, c.P, c.Ps):
        out.append("P P* or P* P is not nu I")
    eta = c.s.eta0()
    linked = c.s.E_star[0].apply(eta)
    if c.basis(BasisKind.PHI_STAR_STANDARD, linked) @ c.P != c.basis(BasisKind.PHI_STANDARD, eta):
        out.append("dual standard basis (seed E*_0 eta_0) times P is not the standard basis")
    eta_s = c.s.eta0_star()
    linked = c.s.E[0].apply(eta_s)
    if c.basis(BasisKind.PHI_STANDARD, linked) @ c.Ps != c.basis(BasisKind.PHI_STAR_STANDARD, eta_s):
        out.append("standard basis (seed E_0 eta*_0) times P* is not the dual standard basis")
    return out


def _P_conjugation(c: _Ctx) -> list:
    out = []
    H = c.closed[BasisKind.PHI_STANDARD].B
    Hs = c.closed[BasisKind.PHI_STAR_STANDARD].B_star
    D = Matrix.diagonal(c.f, c.p.theta)
    Ds = Matrix.diagonal(c.f, c.p.theta_star)
    if c.P.inverse() @ D @ c.P != H:
        out.append("P^-1 D P != H")
    if c.Ps.inverse() @ Ds @ c.Ps != Hs:
        out.append("P*^-1 D* P* != H*")
    return out


def _nu_triple(c: _Ctx) -> list:
    out = []
    E0, Es0 = c.s.E[0], c.s.E_star[0]
    if (E0 @ Es0 @ E0).scale(c.nu) != E0:
        out.append("nu E_0 E*_0 E_0 != E_0")
    if (Es0 @ E0 @ Es0).scale(c.nu) != Es0:
        out.append("nu E*_0 E_0 E*_0 != E*_0")
    return out


def _nu_trace(c: _Ctx) -> list:
    if nu_from_idempotents(c.s) != c.nu:
        return ["1 / tr(E_0 E*_0) differs from the closed form of nu"]
    return []


def _independent(M: Matrix, v, count: int, f) -> bool:
    red = IncrementalReducer(len(v), f.zero, f.one)
    for _ in range(count):
        if red.insert(v) is not None:
            return False
        v = M.apply(v)
    return True


def _krylov(c: _Ctx) -> list:
    out = []
    n = c.d + 1
    if not _independent(c.s.A, c.s.eta0_star(), n, c.f):
        out.append("A^k eta*_0 (k = 0..d) are dependent")
    if not _independent(c.s.A_star, c.s.eta0(), n, c.f):
        out.append("A*^k eta_0 (k = 0..d) are dependent")
    return out


def _characterizations(c: _Ctx) -> list:
    out = []
    s = c.s
    split = c.basis(BasisKind.PHI_SPLIT)
    std = c.basis(BasisKind.PHI_STANDARD)
    split_tests = (bs.is_split_basis, bs.is_split_basis_by_lowering, bs.is_split_basis_by_raising)
    std_tests = (bs.is_standard_basis, bs.is_standard_basis_by_row_sum, bs.is_standard_basis_by_shape)
    k = c.scalar()
    for M in (split, split.scale(k)):
        if not all(t(s, M) for t in split_tests):
            out.append("a split basis was rejected")
    for M in (std, std.scale(k)):
        if not all(t(s, M) for t in std_tests):
            out.append("a standard basis was rejected")
    if c.d >= 1:
        rev = Matrix.from_columns(c.f, list(reversed(split.columns())))
        if any(t(s, rev) for t in split_tests):
            out.append("reversed split basis was accepted as split")
        if any(t(s, split) for t in std_tests):
            out.append("split basis was accepted as standard")
    return out


def _round_trip(c: _Ctx) -> list:
    report = recognize_th_pair(MatrixPair(c.s.A, c.s.A_star))
    if c.p not in report.parameter_arrays:
        return ["recognizing the canonical pair does not recover the array"]
    return []


def _dual_round_trip(c: _Ctx) -> list:
    out = []
    dp = dual_parameter_array(c.p)
    if dual_parameter_array(dp) != c.p:
        out.append("dual of the dual array is not the array")
    if extract_parameter_array(dual_system(c.s)) != dp:
        out.append("array of the dual system is not the dual array")
    return out


#: (name, statement, implementation)
CHECKS: tuple[tuple[str, str, Check], ...] = (
    ("idempotent_sum", "the primitive idempotents of A, and those of A*, each sum to the identity", _idempotent_sum),
    ("idempotent_orthogonality", "E_i E_j equals E_i when i = j and vanishes otherwise, for both families", _orthogonality),
    ("idempotent_rank", "every primitive idempotent has rank one", _rank_one),
    ("spectral_decomposition", "A is the sum of theta_i E_i and A* is the sum of theta*_i E*_i", _spectral),
    ("annihilating_product", "the product of the shifts A - theta_i I vanishes, and likewise for A*", _annihilating),
    (
        "subdiagonal_condition_A_star",
        "E_i A* E_j vanishes when i - j > 1 and is nonzero when i - j = 1",
        _subdiag_A_star,
    ),
    ("subdiagonal_condition_A", "E*_i A E*_j vanishes when i - j > 1 and is nonzero when i - j = 1", _subdiag_A),
    (
        "split_decomposition",
        "the intersections U_i are lines forming a decomposition raised by A and lowered by A*",
        _split_decomposition,
    ),
    (
        "split_sequence_eigenvalues",
        "phi_i is the eigenvalue of the raise-lower product on U_i and of the lower-raise product on U_(i-1)",
        _split_sequence_eigen,
    ),
    (
        "representations_match_closed_forms",
        "for every basis kind and two seeds the conjugated pair equals its closed form",
        _representations,
    ),
    ("split_shapes", "the four split-type pairs have their bidiagonal shapes with unit off-diagonals", _split_shapes),
    (
        "standard_shapes",
        "H and H* are Hessenberg with constant row sums theta_0 and theta*_0, and D, D* are diagonal",
        _standard_shapes,
    ),
    (
        "transition_T",
        "T is inverted by its closed-form inverse, satisfies D* T = T B*, and maps the standard basis to the split basis",
        _transition_T,
    ),
    (
        "transition_T_star",
        "T* is T of the dual array and maps the dual standard basis to the dual split basis",
        _transition_T_star,
    ),
    ("transition_Z", "Z Z* = Z* Z = nu I and Z, Z* link the two split bases", _transition_Z),
    (
        "transition_P",
        "P and P* agree with their closed forms, have first column all ones, satisfy P P* = P* P = nu I and link the standard bases",
        _transition_P,
    ),
    ("P_conjugation", "H = P^-1 D P and H* = P*^-1 D* P*", _P_conjugation),
    ("nu_triple_products", "nu E_0 E*_0 E_0 = E_0 and nu E*_0 E_0 E*_0 = E*_0", _nu_triple),
    ("nu_trace", "the reciprocal of tr(E_0 E*_0) equals the closed form of nu", _nu_trace),
    ("krylov_bijection", "A^k eta*_0 and A*^k eta_0 for k = 0..d are bases", _krylov),
    (
        "basis_characterizations",
        "all three split-basis tests and all three standard-basis tests accept true bases and reject impostors",
        _characterizations,
    ),
    ("round_trip_recognition", "recognizing the canonical pair recovers the parameter array", _round_trip),
    ("dual_round_trip", "duality is an involution and the dual system has the dual array", _dual_round_trip),
)

CHECK_NAMES = tuple(name for name, _, _ in CHECKS)


def verify_parameter_array(p: ParameterArray) -> list[CheckResult]:
    """Run every check on the canonical system of ``p`` (which must be valid)."""
    ctx = _Ctx(p)
    results = []
    for name, statement, fn in CHECKS:
        try:
            fails = fn(ctx)
        except Exception as exc:  # a raised inconsistency is a failed check, not a crash
            fails = [traceback.format_exception_only(type(exc), exc)[-1].strip()]
        results.append(CheckResult(name, not fails, "; ".join(fails) if fails else "ok", statement))
    return results
