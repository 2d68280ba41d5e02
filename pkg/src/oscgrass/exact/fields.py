"""Exact scalar fields: the rationals and prime fields F_p.

Elements are plain Python objects (``Fraction`` for Q, ``int`` in ``[0, p)``
for F_p) so that arithmetic stays cheap; a field object only knows how to
coerce, reduce, invert and sample them.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

#: 2**31 - 1 is prime; products of two residues fit in a signed 64-bit word.
DEFAULT_PRIME = 2_147_483_647


def _is_probable_prime(p: int) -> bool:
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class RationalField:
    """The field Q, elements are ``fractions.Fraction``."""

    name = "qq"
    characteristic = 0

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def reduce(self, x):
        return x

    def inv(self, x) -> Fraction:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(x)

    def div(self, a, b) -> Fraction:
        return Fraction(a) * self.inv(b)

    def random(self, rng: np.random.Generator, bound: int = 50) -> Fraction:
        """Uniform integer in ``[-bound, bound]``."""
        return Fraction(int(rng.integers(-bound, bound + 1)))

    def describe(self) -> str:
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("qq")

    def __repr__(self):
        return "RationalField()"


class PrimeField:
    """The prime field F_p, elements are ints in ``[0, p)``."""

    name = "fp"

    def __init__(self, p: int = DEFAULT_PRIME):
        if not _is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= 2**31:
            raise ValueError("prime must be below 2**31 for int64 elimination")
        self.p = p
        self.characteristic = p

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            return x.numerator % self.p * self.inv(x.denominator % self.p) % self.p
        return int(x) % self.p

    def reduce(self, x) -> int:
        return x % self.p

    def inv(self, x) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return pow(x, -1, self.p)

    def div(self, a, b) -> int:
        return a * self.inv(b) % self.p

    def random(self, rng: np.random.Generator, low: int = 0) -> int:
        """Uniform element of ``[low, p - 1]``."""
        return int(rng.integers(low, self.p))

    def random_nonspecial(self, rng: np.random.Generator) -> int:
        """Uniform element of ``[2, p - 2]`` (avoids 0, 1 and -1)."""
        return int(rng.integers(2, self.p - 1))

    def describe(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


QQ = RationalField()


def get_field(name: str, prime: int | None = None):
    """Field from its CLI name (``"fp"`` or ``"qq"``)."""
    if name == "qq":
        return QQ
    if name == "fp":
        return PrimeField(prime or DEFAULT_PRIME)
    raise ValueError(f"unknown field {name!r}; expected 'fp' or 'qq'")
