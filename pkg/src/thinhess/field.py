"""Exact scalar fields: the rationals and prime fields GF(p).

Rational scalars are :class:`fractions.Fraction` (always in lowest terms with
a positive denominator). Prime-field scalars are :class:`Residue` values in
``[0, p)``. Both support the usual arithmetic operators, so formulas can be
written once and evaluated over either field.

Fields are identified by spec strings: ``"rational"`` or ``"gf:<p>"``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from operator import mul
from typing import Iterator, Sequence, Union

from .errors import FieldError, FieldMismatchError

MAX_PRIME = 2**31

_SCALAR_RE = re.compile(r"\s*([+-]?\d+)(?:/(\d+))?\s*")


class Residue:
    """An element of GF(p), stored as its representative in ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    @classmethod
    def _raw(cls, value: int, p: int) -> Residue:
        # value already reduced
        r = object.__new__(cls)
        r.value = value
        r.p = p
        return r

    @property
    def field(self) -> PrimeField:
        return GF(self.p)

    def _other(self, other) -> int:
        if isinstance(other, Residue):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            raise FieldMismatchError(f"cannot combine GF({self.p}) with a rational")
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue._raw((self.value + o) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue._raw((self.value - o) % self.p, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue._raw((o - self.value) % self.p, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue._raw(self.value * o % self.p, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Residue._raw(self.value * pow(o, -1, self.p) % self.p, self.p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.value == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Residue._raw(o * pow(self.value, -1, self.p) % self.p, self.p)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if self.value == 0:
                raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
            return Residue._raw(pow(pow(self.value, -1, self.p), -n, self.p), self.p)
        return Residue._raw(pow(self.value, n, self.p), self.p)

    def __neg__(self):
        return Residue._raw(-self.value % self.p, self.p)

    def __pos__(self):
        return self

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __eq__(self, other) -> bool:
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (other - self.value) % self.p == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __repr__(self) -> str:
        return f"Residue({self.value}, {self.p})"

    def __str__(self) -> str:
        return str(self.value)


Scalar = Union[Fraction, Residue]


class Field:
    """Common interface of :class:`RationalField` and :class:`PrimeField`."""

    name: str
    order: int | None

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def __call__(self, value) -> Scalar:
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def parse(self, text: str) -> Scalar:
        if not isinstance(text, str):
            raise FieldError(f"scalar must be a string, got {type(text).__name__}")
        m = _SCALAR_RE.fullmatch(text)
        if m is None:
            raise FieldError(f"malformed scalar {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise FieldError(f"zero denominator in {text!r}")
        return self._from_ratio(num, den)

    def _from_ratio(self, num: int, den: int) -> Scalar:
        raise NotImplementedError

    def format(self, x: Scalar) -> str:
        return str(self(x))

    def sort_key(self, x: Scalar):
        """Canonical total order: rationals numerically, residues by representative."""
        raise NotImplementedError

    def matmul(self, a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class RationalField(Field):
    """The field of rational numbers with arbitrary-precision entries."""

    @property
    def name(self) -> str:
        return "rational"

    @property
    def order(self) -> None:
        return None

    def __call__(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Residue):
            raise FieldMismatchError("cannot coerce a prime-field residue to a rational")
        raise FieldError(f"cannot coerce {type(value).__name__} to a rational scalar")

    def contains(self, x) -> bool:
        return isinstance(x, Fraction)

    def _from_ratio(self, num: int, den: int) -> Fraction:
        return Fraction(num, den)

    def sort_key(self, x: Fraction) -> Fraction:
        return x

    def matmul(self, a, b):
        # Clear denominators once per operand so the inner loop is integer-only.
        da = math.lcm(*(x.denominator for row in a for x in row)) if a and a[0] else 1
        db = math.lcm(*(x.denominator for row in b for x in row)) if b and b[0] else 1
        ai = [[x.numerator * (da // x.denominator) for x in row] for row in a]
        bt = [[x.numerator * (db // x.denominator) for x in col] for col in zip(*b)]
        den = da * db
        return [[Fraction(sum(map(mul, row, col)), den) for col in bt] for row in ai]

    def __repr__(self) -> str:
        return "QQ"


@dataclass(frozen=True)
class PrimeField(Field):
    """GF(p) for a prime ``2 <= p <= 2**31``."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise FieldError("prime must be an integer")
        if not 2 <= self.p <= MAX_PRIME:
            raise FieldError(f"prime {self.p} out of range [2, 2^31]")
        if not _is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")

    @property
    def name(self) -> str:
        return f"gf:{self.p}"

    @property
    def order(self) -> int:
        return self.p

    def __call__(self, value) -> Residue:
        if isinstance(value, Residue):
            if value.p != self.p:
                raise FieldMismatchError(f"GF({value.p}) element given to GF({self.p})")
            return value
        if isinstance(value, int):
            return Residue(value, self.p)
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            return self._from_ratio(value.numerator, value.denominator)
        raise FieldError(f"cannot coerce {type(value).__name__} to GF({self.p})")

    def contains(self, x) -> bool:
        return isinstance(x, Residue) and x.p == self.p

    def _from_ratio(self, num: int, den: int) -> Residue:
        if den % self.p == 0:
            raise FieldError(f"denominator {den} is zero in GF({self.p})")
        return Residue(num * pow(den, -1, self.p), self.p)

    def sort_key(self, x: Residue) -> int:
        return x.value

    def elements(self) -> Iterator[Residue]:
        for v in range(self.p):
            yield Residue._raw(v, self.p)

    def matmul(self, a, b):
        p = self.p
        ai = [[x.value for x in row] for row in a]
        bt = [[x.value for x in col] for col in zip(*b)]
        raw = Residue._raw
        return [[raw(sum(map(mul, row, col)) % p, p) for col in bt] for row in ai]

    def __repr__(self) -> str:
        return f"GF({self.p})"


def _is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    """Return the (cached) prime field of order ``p``."""
    return PrimeField(p)


FieldSpec = Field


def parse_field_spec(text: str) -> Field:
    """Parse ``"rational"`` or ``"gf:<p>"``."""
    if not isinstance(text, str):
        raise FieldError("field spec must be a string")
    t = text.strip()
    if t == "rational":
        return QQ
    m = re.fullmatch(r"gf:(\d+)", t)
    if m is None:
        raise FieldError(f"malformed field spec {text!r}; expected 'rational' or 'gf:<p>'")
    return GF(int(m.group(1)))


def field_of(x) -> Field:
    if isinstance(x, Fraction):
        return QQ
    if isinstance(x, Residue):
        return GF(x.p)
    raise FieldError(f"{x!r} is not a field scalar")


def format_scalar(x: Scalar) -> str:
    return field_of(x).format(x)


_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def scalar_arithmetic(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Apply ``op`` in {add, sub, mul, div} to two scalars of the same field."""
    fa, fb = field_of(a), field_of(b)
    if fa != fb:
        raise FieldMismatchError(f"{fa} vs {fb}")
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(a, b)
