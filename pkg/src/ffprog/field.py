"""Prime field arithmetic.

The whole package works over F_p for a prime 3 <= p < 2**31.  Residues are
plain machine integers in [0, p); the wrapper types below exist for clarity
at API boundaries while the numeric kernels operate on raw ints and numpy
arrays.  All products fit comfortably in 64-bit intermediates because
p < 2**31.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BadCharacteristic, DivisionByZero, NotPrime, OutOfRange

MIN_P = 3
MAX_P = 2**31

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p.  Construction validates primality and range."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or self.p < MIN_P or self.p >= MAX_P:
            raise OutOfRange(f"modulus must lie in [{MIN_P}, 2**31): got {self.p}")
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")

    def __call__(self, value: int) -> "FieldElem":
        return FieldElem(value % self.p, self)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        """Inverse of a nonzero residue, via Fermat: a**(p-2) mod p."""
        a %= self.p
        if a == 0:
            raise DivisionByZero(f"0 has no inverse mod {self.p}")
        return pow(a, self.p - 2, self.p)

    def reduce_fraction(self, c: Fraction) -> int:
        """Reduce an exact rational mod p; the denominator must be a unit."""
        den = c.denominator
        if den % self.p == 0:
            raise BadCharacteristic(
                f"denominator {den} vanishes mod {self.p}"
            )
        return c.numerator % self.p * self.inv(den % self.p) % self.p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


@dataclass(frozen=True)
class FieldElem:
    value: int
    field: PrimeField

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field.p != self.field.p:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem((self.value + v) % self.field.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem((self.value - v) % self.field.p, self.field)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem((v - self.value) % self.field.p, self.field)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.value * v % self.field.p, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem((-self.value) % self.field.p, self.field)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElem(self.value * self.field.inv(v) % self.field.p, self.field)

    def __pow__(self, k: int):
        return FieldElem(pow(self.value, k, self.field.p), self.field)

    def inv(self) -> "FieldElem":
        return FieldElem(self.field.inv(self.value), self.field)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.field.p})"


def field_new(p: int) -> PrimeField:
    """Build F_p, rejecting composite or out-of-range moduli."""
    return PrimeField(p)


def inv(a: FieldElem) -> FieldElem:
    return a.inv()


def reduce_coeffs(poly, field: PrimeField) -> list[int]:
    """Reduce every coefficient of a rational polynomial mod p.

    ``poly`` is anything with a ``coeffs`` tuple of Fractions (index =
    degree), or a bare sequence of Fractions.  Raises BadCharacteristic if p
    divides any denominator, even one in a coefficient that would not matter
    for a particular evaluation.
    """
    coeffs = getattr(poly, "coeffs", poly)
    return [field.reduce_fraction(Fraction(c)) for c in coeffs]


def eval_poly(poly, x: FieldElem) -> FieldElem:
    """Horner evaluation of a rational polynomial at a field element."""
    field = x.field
    acc = 0
    for c in reversed(reduce_coeffs(poly, field)):
        acc = (acc * x.value + c) % field.p
    return FieldElem(acc, field)


def value_table(poly, field: PrimeField) -> np.ndarray:
    """P(x) mod p for every residue x, as an int64 array of length p.

    This is the workhorse behind counting and enumeration; intermediates
    stay below 2**62 because p < 2**31.
    """
    coeffs = reduce_coeffs(poly, field)
    xs = np.arange(field.p, dtype=np.int64)
    acc = np.zeros(field.p, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + c) % field.p
    return acc
