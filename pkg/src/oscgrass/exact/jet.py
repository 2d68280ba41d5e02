"""Truncated multivariate Taylor polynomials (jets).

A jet of order ``s`` stores the coefficients of all monomials of total degree
``<= s`` in a finite set of variables, around a fixed base point. The
coefficient of ``x_{i_1} ... x_{i_m}`` equals the mixed partial derivative
divided by the product of factorials of the multiplicities, so reading off
coefficients gives the osculating frame without symbolic differentiation.

Monomials are sorted tuples of variable indices (repeats allowed).
"""

from __future__ import annotations

from .fields import QQ


def _merge(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


class Jet:
    __slots__ = ("terms", "order", "field")

    def __init__(self, terms=None, order: int = 1, field=QQ):
        self.terms = {} if terms is None else terms
        self.order = order
        self.field = field

    @classmethod
    def const(cls, c, order: int, field=QQ) -> "Jet":
        c = field(c)
        return cls({(): c} if c != 0 else {}, order, field)

    @classmethod
    def variable(cls, index: int, base, order: int, field=QQ) -> "Jet":
        """The jet of ``base + x_index``."""
        terms = {}
        base = field(base)
        if base != 0:
            terms[()] = base
        if order >= 1:
            terms[(index,)] = field(1)
        return cls(terms, order, field)

    def coeff(self, mono: tuple):
        return self.terms.get(tuple(sorted(mono)), self.field(0))

    def constant(self):
        return self.terms.get((), self.field(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Jet") -> "Jet":
        red = self.field.reduce
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = red(out.get(m, 0) + c)
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
        return Jet(out, min(self.order, other.order), self.field)

    def __neg__(self) -> "Jet":
        red = self.field.reduce
        return Jet({m: red(-c) for m, c in self.terms.items()}, self.order, self.field)

    def __sub__(self, other: "Jet") -> "Jet":
        return self + (-other)

    def scale(self, c) -> "Jet":
        red = self.field.reduce
        c = self.field(c)
        if c == 0:
            return Jet({}, self.order, self.field)
        return Jet({m: red(v * c) for m, v in self.terms.items()}, self.order, self.field)

    def __mul__(self, other: "Jet") -> "Jet":
        order = min(self.order, other.order)
        red = self.field.reduce
        out: dict = {}
        for ma, ca in self.terms.items():
            da = len(ma)
            for mb, cb in other.terms.items():
                if da + len(mb) > order:
                    continue
                m = _merge(ma, mb)
                v = red(out.get(m, 0) + ca * cb)
                if v == 0:
                    out.pop(m, None)
                else:
                    out[m] = v
        return Jet(out, order, self.field)

    def __pow__(self, k: int) -> "Jet":
        result = Jet.const(1, self.order, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self):
        return f"Jet(order={self.order}, terms={self.terms})"
