"""Univariate polynomials in ``t`` over an exact field."""

from __future__ import annotations

from fractions import Fraction

from .fields import QQ


class PolyT:
    """Dense polynomial ``c[0] + c[1] t + ...`` with trailing zeros trimmed.

    The zero polynomial has an empty coefficient list.
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs=(), field=QQ):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs
        self.field = field

    @classmethod
    def _raw(cls, coeffs, field):
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = coeffs
        obj.field = field
        return obj

    @classmethod
    def monomial(cls, c, k: int, field=QQ) -> "PolyT":
        """``c * t**k``."""
        return cls._raw([field(0)] * k + [field(c)], field)

    @classmethod
    def const(cls, c, field=QQ) -> "PolyT":
        return cls._raw([field(c)], field)

    # -- queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def valuation(self) -> int | None:
        """Order of vanishing at ``t = 0``; ``None`` for zero."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field(0)

    def __call__(self, t):
        acc = self.field(0)
        for c in reversed(self.coeffs):
            acc = self.field.reduce(acc * t + c)
        return acc

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "PolyT":
        if isinstance(other, PolyT):
            return other
        return PolyT.const(other, self.field)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        red = self.field.reduce
        out = list(a)
        for i, c in enumerate(b):
            out[i] = red(out[i] + c)
        return PolyT._raw(out, self.field)

    __radd__ = __add__

    def __neg__(self):
        red = self.field.reduce
        return PolyT._raw([red(-c) for c in self.coeffs], self.field)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyT._raw([], self.field)
        red = self.field.reduce
        out = [self.field(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = red(out[i + j] + x * y)
        return PolyT._raw(out, self.field)

    __rmul__ = __mul__

    def divmod(self, other: "PolyT"):
        """Euclidean division ``self = q * other + rem``."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        db = other.degree
        lead_inv = f.inv(other.coeffs[-1])
        q = [f(0)] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = f.reduce(rem[k + db] * lead_inv)
            if c == 0:
                continue
            q[k] = c
            for i, y in enumerate(other.coeffs):
                rem[k + i] = f.reduce(rem[k + i] - c * y)
        return PolyT._raw(q, f), PolyT._raw(rem, f)

    def exact_div(self, other: "PolyT") -> "PolyT":
        q, rem = self.divmod(other)
        if not rem.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def __eq__(self, other):
        if not isinstance(other, PolyT):
            other = self._coerce(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = str(c)
            terms.append(cs if k == 0 else f"{cs}*t" if k == 1 else f"{cs}*t^{k}")
        return " + ".join(terms)

    def to_pairs(self):
        """JSON-friendly ``[[power, num, den], ...]``."""
        out = []
        for k, c in enumerate(self.coeffs):
            if c != 0:
                c = Fraction(c)
                out.append([k, c.numerator, c.denominator])
        return out
