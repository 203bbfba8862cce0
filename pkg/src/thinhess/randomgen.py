"""Deterministic pseudo-random parameter arrays.

The generator is a 64-bit linear congruential generator

    state <- (6364136223846793005 * state + 1442695040888963407) mod 2**64

whose output is the high 32 bits of the new state. A draw from an integer
range ``[lo, hi]`` is ``lo + out % (hi - lo + 1)``. The initial state is the
seed reduced mod ``2**64``. Everything is integer arithmetic, so the stream
is the same on every platform and easy to reproduce in another language.

Sampling order for one array: ``theta_0 .. theta_d``, then
``theta*_0 .. theta*_d``, then ``phi_1 .. phi_d``. A rational element is
``n / m`` with ``n`` drawn from ``[-9, 9]`` and then ``m`` from ``[1, 4]``;
a residue mod ``p`` is ``out % p``. Duplicates within a sequence and zero
split scalars are rejected and redrawn.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError
from .field import Field, PrimeField
from .thcore import ParameterArray

LCG_A = 6364136223846793005
LCG_C = 1442695040888963407
MASK64 = (1 << 64) - 1


class Lcg64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next32(self) -> int:
        self.state = (LCG_A * self.state + LCG_C) & MASK64
        return self.state >> 32

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.next32() % (hi - lo + 1)


def _element(rng: Lcg64, field: Field):
    if isinstance(field, PrimeField):
        return field(rng.next32() % field.p)
    n = rng.randint(-9, 9)
    m = rng.randint(1, 4)
    return field(Fraction(n, m))


def _distinct(rng: Lcg64, field: Field, count: int) -> list:
    out: list = []
    while len(out) < count:
        x = _element(rng, field)
        if x not in out:
            out.append(x)
    return out


def random_parameter_array(d: int, field: Field, seed: int) -> ParameterArray:
    """A valid parameter array of diameter ``d`` determined by ``seed``."""
    if d < 0:
        raise PreconditionError("d must be nonnegative")
    if isinstance(field, PrimeField) and field.p < d + 1:
        raise PreconditionError(f"GF({field.p}) has fewer than {d + 1} elements; no distinct eigenvalues exist")
    rng = Lcg64(seed)
    theta = _distinct(rng, field, d + 1)
    theta_star = _distinct(rng, field, d + 1)
    phi = []
    while len(phi) < d:
        x = _element(rng, field)
        if x:
            phi.append(x)
    return ParameterArray(field, theta, theta_star, phi)
