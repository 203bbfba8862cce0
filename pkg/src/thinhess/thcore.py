"""Parameter arrays, canonical TH systems, primitive idempotents, duality and nu."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import (
    DimensionError,
    InvalidParameterArrayError,
    PreconditionError,
    StructuralInconsistency,
)
from .field import Field, Scalar
from .linalg import Matrix, Subspace, Vector


@dataclass(frozen=True)
class ParameterArray:
    """The triple of eigenvalue sequence, dual eigenvalue sequence and split sequence.

    ``phi`` holds ``phi_1 .. phi_d`` (so ``phi[i - 1]`` is ``phi_i``). Entries
    are coerced into ``field`` on construction; the distinctness and
    nonvanishing conditions are checked by :func:`validate_parameter_array`,
    not here, so that invalid arrays can still be represented and diagnosed.
    """

    field: Field
    theta: tuple
    theta_star: tuple
    phi: tuple

    def __post_init__(self):
        f = self.field
        object.__setattr__(self, "theta", tuple(f(x) for x in self.theta))
        object.__setattr__(self, "theta_star", tuple(f(x) for x in self.theta_star))
        object.__setattr__(self, "phi", tuple(f(x) for x in self.phi))
        n = len(self.theta)
        if n == 0:
            raise DimensionError("theta must have at least one entry")
        if len(self.theta_star) != n or len(self.phi) != n - 1:
            raise DimensionError(
                f"lengths must be d+1, d+1, d; got {n}, {len(self.theta_star)}, {len(self.phi)}"
            )

    @property
    def d(self) -> int:
        return len(self.theta) - 1

    def phi_at(self, i: int) -> Scalar:
        """``phi_i`` with the boundary convention ``phi_0 = phi_{d+1} = 0``."""
        if 1 <= i <= self.d:
            return self.phi[i - 1]
        return self.field.zero

    def to_json(self) -> dict:
        fmt = self.field.format
        return {
            "field": self.field.name,
            "theta": [fmt(x) for x in self.theta],
            "theta_star": [fmt(x) for x in self.theta_star],
            "phi": [fmt(x) for x in self.phi],
        }

    def __str__(self) -> str:
        j = self.to_json()
        return f"theta={j['theta']} theta_star={j['theta_star']} phi={j['phi']} over {j['field']}"


@dataclass(frozen=True)
class Validation:
    """Result of :func:`validate_parameter_array`; truthy iff valid."""

    valid: bool
    condition: str | None = None
    indices: tuple[int, ...] = ()
    message: str = "valid"

    def __bool__(self) -> bool:
        return self.valid


def _first_repeat(seq: Sequence) -> tuple[int, int] | None:
    seen: dict = {}
    for j, x in enumerate(seq):
        if x in seen:
            return seen[x], j
        seen[x] = j
    return None


def validate_parameter_array(p: ParameterArray) -> Validation:
    """Check distinct eigenvalues, distinct dual eigenvalues and nonzero split scalars.

    Never raises. The first violated condition is reported with its indices.
    """
    rep = _first_repeat(p.theta)
    if rep is not None:
        return Validation(
            False, "i", rep, f"condition (i) violated at indices {rep[0]},{rep[1]}: theta values must be distinct"
        )
    rep = _first_repeat(p.theta_star)
    if rep is not None:
        return Validation(
            False,
            "ii",
            rep,
            f"condition (ii) violated at indices {rep[0]},{rep[1]}: theta_star values must be distinct",
        )
    for i, x in enumerate(p.phi, start=1):
        if not x:
            return Validation(False, "iii", (i,), f"condition (iii) violated at i={i}: phi_{i} must be nonzero")
    return Validation(True)


def require_valid(p: ParameterArray) -> None:
    v = validate_parameter_array(p)
    if not v:
        raise InvalidParameterArrayError(v.message)


def dual_parameter_array(p: ParameterArray) -> ParameterArray:
    """Swap the two eigenvalue sequences and reverse the split sequence."""
    return ParameterArray(p.field, p.theta_star, p.theta, tuple(reversed(p.phi)))


@dataclass(frozen=True)
class THSystem:
    """A TH system ``(A; E_0..E_d; A*; E*_0..E*_d)`` with its eigenvalue sequences.

    ``E[i]`` is the primitive idempotent of ``A`` for ``theta[i]`` and
    ``E_star[i]`` that of ``A_star`` for ``theta_star[i]``.
    """

    A: Matrix
    A_star: Matrix
    E: tuple
    E_star: tuple
    theta: tuple
    theta_star: tuple
    _cache: dict = dc_field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def field(self) -> Field:
        return self.A.field

    @property
    def d(self) -> int:
        return self.A.nrows - 1

    @property
    def n(self) -> int:
        return self.A.nrows

    def eigenspace(self, i: int) -> Subspace:
        """``E_i V``."""
        key = ("E", i)
        if key not in self._cache:
            self._cache[key] = Subspace.column_space(self.E[i])
        return self._cache[key]

    def dual_eigenspace(self, i: int) -> Subspace:
        """``E*_i V``."""
        key = ("Es", i)
        if key not in self._cache:
            self._cache[key] = Subspace.column_space(self.E_star[i])
        return self._cache[key]

    def eta0(self) -> Vector:
        """Default seed in ``E_0 V``: its echelon basis vector, leading entry 1."""
        return self.eigenspace(0).vectors[0]

    def eta0_star(self) -> Vector:
        """Default seed in ``E*_0 V``."""
        return self.dual_eigenspace(0).vectors[0]

    def dual(self) -> THSystem:
        return dual_system(self)

    def invariant_failures(self) -> list[str]:
        return system_invariant_failures(self)

    def check(self) -> THSystem:
        bad = self.invariant_failures()
        if bad:
            raise StructuralInconsistency("; ".join(bad))
        return self


def idempotent_failures(a: Matrix, eigenvalues: Sequence[Scalar], E: Sequence[Matrix]) -> list[str]:
    """Failures of the spectral identities for ``a`` and the idempotents ``E``."""
    f = a.field
    n = a.nrows
    out = []
    total = Matrix.zeros(f, n)
    spectral = Matrix.zeros(f, n)
    for th, e in zip(eigenvalues, E):
        total = total + e
        spectral = spectral + e.scale(th)
    if total != Matrix.identity(f, n):
        out.append("idempotents do not sum to I")
    if spectral != a:
        out.append("A is not sum of theta_i E_i")
    for i, ei in enumerate(E):
        for j, ej in enumerate(E):
            prod = ei @ ej
            if i == j and prod != ei:
                out.append(f"E_{i} is not idempotent")
            elif i != j and not prod.is_zero():
                out.append(f"E_{i} E_{j} is nonzero")
        if ei.rank() != 1:
            out.append(f"E_{i} does not have rank 1")
    return out


def primitive_idempotents(a: Matrix, eigenvalues: Sequence, *, check: bool = True) -> tuple[Matrix, ...]:
    """``E_i = prod_{j != i} (a - theta_j I) / (theta_i - theta_j)``.

    The shifts commute, so each product is assembled from prefix and suffix
    products. With ``check`` set, every postcondition is verified and a
    :class:`PreconditionError` raised if any fail (for instance when the
    eigenvalues are repeated or do not belong to ``a``).
    """
    if not a.is_square:
        raise DimensionError("primitive idempotents of a non-square matrix")
    f = a.field
    ths = [f(x) for x in eigenvalues]
    n = a.nrows
    if len(ths) != n:
        raise PreconditionError(f"expected {n} eigenvalues, got {len(ths)}")
    shifts = [a.shift(t) for t in ths]
    prefix = [Matrix.identity(f, n)]
    for s in shifts[:-1]:
        prefix.append(prefix[-1] @ s)
    suffix = [Matrix.identity(f, n)]
    for s in reversed(shifts[1:]):
        suffix.append(s @ suffix[-1])
    suffix.reverse()
    E = []
    for i, ti in enumerate(ths):
        den = f.one
        for j, tj in enumerate(ths):
            if j != i:
                den = den * (ti - tj)
        if not den:
            raise PreconditionError(f"eigenvalue {f.format(ti)} is repeated")
        E.append((prefix[i] @ suffix[i]).scale(1 / den))
    E = tuple(E)
    if check:
        bad = idempotent_failures(a, ths, E)
        if bad:
            raise PreconditionError("idempotent postconditions failed: " + "; ".join(bad))
    return E


def hessenberg_condition_failures(E: Sequence[Matrix], other: Matrix, label: str) -> list[str]:
    """Check ``E_i X E_j = 0`` for ``i - j > 1`` and ``!= 0`` for ``i - j = 1``."""
    out = []
    left = [e @ other for e in E]
    for i in range(len(E)):
        for j in range(i):
            prod = left[i] @ E[j]
            if i - j > 1 and not prod.is_zero():
                out.append(f"{label}: product at ({i},{j}) should vanish")
            elif i - j == 1 and prod.is_zero():
                out.append(f"{label}: product at ({i},{j}) should be nonzero")
    return out


def system_invariant_failures(s: THSystem) -> list[str]:
    out = []
    if s.A.shape != s.A_star.shape or not s.A.is_square:
        return ["A and A_star must be square of equal size"]
    if len(s.E) != s.n or len(s.E_star) != s.n:
        return ["wrong number of idempotents"]
    out += idempotent_failures(s.A, s.theta, s.E)
    out += [f"star: {m}" for m in idempotent_failures(s.A_star, s.theta_star, s.E_star)]
    out += hessenberg_condition_failures(s.E, s.A_star, "E_i A* E_j")
    out += hessenberg_condition_failures(s.E_star, s.A, "E*_i A E*_j")
    return out


def canonical_matrices(p: ParameterArray) -> tuple[Matrix, Matrix]:
    """The lower bidiagonal ``B`` and upper bidiagonal ``B*`` of the classification.

    ``B`` has diagonal ``theta_d, .., theta_0`` and subdiagonal
    ``phi_1, .., phi_d``; ``B*`` has diagonal ``theta*_0, .., theta*_d`` and
    superdiagonal all ones.
    """
    f, d = p.field, p.d
    z, o = f.zero, f.one
    B = [[z] * (d + 1) for _ in range(d + 1)]
    Bs = [[z] * (d + 1) for _ in range(d + 1)]
    for i in range(d + 1):
        B[i][i] = p.theta[d - i]
        Bs[i][i] = p.theta_star[i]
        if i < d:
            B[i + 1][i] = p.phi[i]
            Bs[i][i + 1] = o
    return Matrix._trusted(f, B, d + 1), Matrix._trusted(f, Bs, d + 1)


def build_canonical_system(p: ParameterArray, *, check: bool = True) -> THSystem:
    """The TH system on ``K^{d+1}`` whose standard basis is split.

    Raises :class:`InvalidParameterArrayError` for an invalid array. With
    ``check`` the full invariant list is verified before returning.
    """
    require_valid(p)
    A, As = canonical_matrices(p)
    E = primitive_idempotents(A, p.theta, check=False)
    Es = primitive_idempotents(As, p.theta_star, check=False)
    s = THSystem(A, As, E, Es, p.theta, p.theta_star)
    if check:
        s.check()
    return s


def dual_system(s: THSystem) -> THSystem:
    """``(A*; E*_i; A; E_i)``: the same matrices with roles exchanged."""
    return THSystem(s.A_star, s.A, s.E_star, s.E, s.theta_star, s.theta)


def nu_from_parameters(p: ParameterArray) -> Scalar:
    """``prod (theta_0 - theta_k) prod (theta*_0 - theta*_k) / prod phi_i``."""
    require_valid(p)
    f = p.field
    num = f.one
    for k in range(1, p.d + 1):
        num = num * (p.theta[0] - p.theta[k]) * (p.theta_star[0] - p.theta_star[k])
    den = f.one
    for x in p.phi:
        den = den * x
    return num / den


def nu_from_idempotents(s: THSystem) -> Scalar:
    """``1 / tr(E_0 E*_0)``."""
    tr = (s.E[0] @ s.E_star[0]).trace()
    if not tr:
        raise StructuralInconsistency("tr(E_0 E*_0) vanishes")
    return 1 / tr


def conjugate_system(s: THSystem, g: Matrix) -> THSystem:
    """The system transported by ``g``: every matrix ``X`` becomes ``g X g^{-1}``."""
    gi = g.inverse()

    def c(x: Matrix) -> Matrix:
        return g @ x @ gi

    return THSystem(
        c(s.A), c(s.A_star), tuple(c(e) for e in s.E), tuple(c(e) for e in s.E_star), s.theta, s.theta_star
    )
