"""Univariate polynomials over an exact field, characteristic and minimal
polynomials of matrices, and extraction of roots lying in the base field."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import DimensionError, FieldMismatchError, UnsupportedFieldError
from ..field import Field, PrimeField, Scalar
from .echelon import IncrementalReducer
from .matrix import Matrix

MAX_SCAN_PRIME = 10**6


class Polynomial:
    """Polynomial with coefficients stored low degree first.

    Trailing zero coefficients are stripped, so the zero polynomial has an
    empty coefficient tuple and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, field: Field) -> Polynomial:
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, field: Field, c) -> Polynomial:
        return cls(field, [c])

    @classmethod
    def from_roots(cls, field: Field, roots: Sequence) -> Polynomial:
        p = cls(field, [1])
        for r in roots:
            p = p * cls(field, [-field(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> Polynomial:
        if not self.coeffs:
            return self
        inv = 1 / self.coeffs[-1]
        return Polynomial(self.field, [c * inv for c in self.coeffs])

    def __call__(self, x: Scalar) -> Scalar:
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, m: Matrix) -> Matrix:
        """Horner evaluation at a square matrix."""
        if m.field != self.field:
            raise FieldMismatchError(f"{m.field} vs {self.field}")
        n = m.nrows
        acc = Matrix.zeros(self.field, n)
        for c in reversed(self.coeffs):
            acc = (acc @ m).shift(-c)
        return acc

    def _check(self, other: Polynomial) -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = other.coeffs + (z,) * (n - len(other.coeffs))
        return Polynomial(self.field, [x + y for x, y in zip(a, b)])

    def __neg__(self) -> Polynomial:
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            c = self.field(other)
            return Polynomial(self.field, [c * a for a in self.coeffs])
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial(self.field, [])
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Polynomial(self.field, out)

    __rmul__ = __mul__

    def __divmod__(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = 1 / other.leading
        quot = [self.field.zero] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            if c:
                quot[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] = rem[k - dq + j] - c * b
        return Polynomial(self.field, quot), Polynomial(self.field, rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[1]

    def derivative(self) -> Polynomial:
        return Polynomial(self.field, [c * k for k, c in enumerate(self.coeffs)][1:])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        return f"Polynomial({self.field!r}, {[self.field.format(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            s = self.field.format(c)
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and s == "1":
                s = ""
            elif mono and s == "-1":
                s = "-"
            terms.append(s + mono)
        out = " + ".join(terms)
        return out.replace("+ -", "- ")


def char_poly(a: Matrix) -> Polynomial:
    """Monic ``det(xI - a)`` by the Berkowitz algorithm (no divisions).

    Works from the trailing principal submatrix outwards: with
    ``a_k = [[a_kk, R], [C, A1]]`` the coefficient vector of ``a_k`` is a
    lower-triangular Toeplitz matrix built from ``1, -a_kk, -R C, -R A1 C, ...``
    applied to the coefficient vector of ``A1``.
    """
    if not a.is_square:
        raise DimensionError("characteristic polynomial of a non-square matrix")
    f = a.field
    n = a.nrows
    rows = a.rows
    z = f.zero
    # coefficients high degree first
    p = [f.one]
    for k in range(n - 1, -1, -1):
        m = n - k - 1
        R = rows[k][k + 1 :]
        C = [rows[i][k] for i in range(k + 1, n)]
        col = [f.one, -rows[k][k]]
        v = C
        for _ in range(m):
            col.append(-sum((r * x for r, x in zip(R, v) if r and x), z))
            v = [sum((rows[k + 1 + i][k + 1 + j] * v[j] for j in range(m) if v[j]), z) for i in range(m)]
        # col has length m + 2; Toeplitz (m+2) x (m+1) times p (length m+1)
        newp = []
        for i in range(m + 2):
            s = z
            for j in range(min(i, m) + 1):
                c = col[i - j]
                if c and p[j]:
                    s = s + c * p[j]
            newp.append(s)
        p = newp
    return Polynomial(f, list(reversed(p)))


def min_poly(a: Matrix) -> Polynomial:
    """Monic minimal polynomial: the first linear dependence among I, a, a^2, ..."""
    if not a.is_square:
        raise DimensionError("minimal polynomial of a non-square matrix")
    f = a.field
    n = a.nrows
    red = IncrementalReducer(n * n, f.zero, f.one)
    power = Matrix.identity(f, n)
    for k in range(n + 1):
        combo = red.insert(list(power.entries()))
        if combo is not None:
            # a^k = sum combo[i] a^i
            return Polynomial(f, [-c for c in combo] + [f.one])
        power = power @ a
    raise AssertionError("Cayley-Hamilton violated")  # pragma: no cover


@dataclass(frozen=True)
class FieldRoots:
    """Roots of a polynomial lying in its field, with multiplicities."""

    roots: tuple[tuple[Scalar, int], ...]
    splits: bool

    @property
    def values(self) -> tuple[Scalar, ...]:
        return tuple(r for r, _ in self.roots)

    @property
    def squarefree(self) -> bool:
        return all(m == 1 for _, m in self.roots)


def roots_in_field(p: Polynomial) -> FieldRoots:
    """All roots of ``p`` in its field, sorted canonically, and whether ``p`` splits.

    Over GF(p) every residue is tried (refused when ``p > 10**6``). Over Q the
    polynomial is cleared to a primitive integer polynomial and deflated root
    by root; candidates come from floating-point approximations and are
    accepted only after exact verification, and whatever remains is settled by
    exhaustive rational-root enumeration (numerator | constant term,
    denominator | leading coefficient).
    """
    if p.is_zero():
        raise ValueError("roots of the zero polynomial")
    f = p.field
    if isinstance(f, PrimeField):
        found = _roots_mod_p(p)
    else:
        found = _roots_rational(p)
    total = sum(m for _, m in found)
    found.sort(key=lambda rm: f.sort_key(rm[0]))
    return FieldRoots(tuple(found), total == p.degree)


def _deflate(p: Polynomial, r: Scalar) -> tuple[Polynomial, int]:
    lin = Polynomial(p.field, [-r, 1])
    mult = 0
    while p.degree >= 1:
        q, rem = divmod(p, lin)
        if not rem.is_zero():
            break
        p = q
        mult += 1
    return p, mult


def _roots_mod_p(p: Polynomial) -> list[tuple[Scalar, int]]:
    f = p.field
    if p.degree <= 1:
        return [] if p.degree < 1 else [(-p.coeffs[0] / p.coeffs[1], 1)]
    if f.p > MAX_SCAN_PRIME:
        raise UnsupportedFieldError(f"root scan over GF({f.p}) unsupported (p > {MAX_SCAN_PRIME})")
    import numpy as np

    prime = f.p
    xs = np.arange(prime, dtype=np.int64)
    acc = np.zeros(prime, dtype=np.int64)
    for c in reversed(p.coeffs):
        acc = (acc * xs + c.value) % prime
    found = []
    rest = p
    for v in np.flatnonzero(acc == 0):
        r = f(int(v))
        rest, mult = _deflate(rest, r)
        found.append((r, mult))
    return found


def _integer_primitive(coeffs: Sequence[Fraction]) -> list[int]:
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = math.gcd(*ints)
    return [c // g for c in ints]


def _int_eval(coeffs: Sequence[int], num: int, den: int) -> int:
    # den^n * p(num/den), exact
    n = len(coeffs) - 1
    acc = 0
    for k in range(n, -1, -1):
        acc = acc * num + coeffs[k] * den ** (n - k)
    return acc


def _int_divide_root(coeffs: list[int], num: int, den: int) -> list[int]:
    # divide primitive integer poly by (den x - num); exact by Gauss's lemma
    n = len(coeffs) - 1
    out = [0] * n
    carry = 0
    for k in range(n, 0, -1):
        c = coeffs[k] + carry
        q, rem = divmod(c, den)
        assert rem == 0
        out[k - 1] = q
        carry = q * num
    return out


def _roots_rational(p: Polynomial) -> list[tuple[Scalar, int]]:
    coeffs = _integer_primitive(p.coeffs)
    found: dict[Fraction, int] = {}

    def take(r: Fraction) -> None:
        nonlocal coeffs
        while len(coeffs) > 1 and _int_eval(coeffs, r.numerator, r.denominator) == 0:
            coeffs = _int_divide_root(coeffs, r.numerator, r.denominator)
            found[r] = found.get(r, 0) + 1

    if coeffs[0] == 0:
        take(Fraction(0))
    for r in _numeric_candidates(coeffs):
        take(r)
    if len(coeffs) > 1:
        for r in _enumerate_candidates(coeffs):
            take(r)
            if len(coeffs) == 1:
                break
    return list(found.items())


def _numeric_candidates(coeffs: list[int]) -> list[Fraction]:
    if len(coeffs) <= 1:
        return []
    if len(coeffs) == 2:
        return [Fraction(-coeffs[0], coeffs[1])]
    import numpy as np

    lead = abs(coeffs[-1])
    try:
        approx = np.roots([float(c) for c in reversed(coeffs)])
    except (OverflowError, ValueError, np.linalg.LinAlgError):
        return []
    out = []
    for z in approx:
        if not np.isfinite(z) or abs(z.imag) > 1e-6 * max(1.0, abs(z.real)):
            continue
        x = float(z.real)
        out.append(Fraction(x).limit_denominator(max(lead, 1)))
        out.append(Fraction(round(x * lead), lead))
    return out


def _enumerate_candidates(coeffs: list[int]):
    """Every p/q in lowest terms with p | a_0 and q | a_n, pre-filtered by
    the divisibility tests (p - q) | f(1) and (p + q) | f(-1)."""
    from sympy import divisors

    a0, an = coeffs[0], coeffs[-1]
    f1 = sum(coeffs)
    fm1 = sum(c if k % 2 == 0 else -c for k, c in enumerate(coeffs))
    for q in divisors(abs(an)):
        for pnum in divisors(abs(a0)):
            if math.gcd(pnum, q) != 1:
                continue
            for num in (pnum, -pnum):
                if f1 and (num - q) and f1 % (num - q):
                    continue
                if fm1 and (num + q) and fm1 % (num + q):
                    continue
                yield Fraction(num, q)
