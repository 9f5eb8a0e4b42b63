"""Rational functions num/den over a field, reduced with monic denominator."""
from __future__ import annotations

from typing import Sequence

from .poly import Poly, poly_gcd


class RatFunField:
    """The field base(vars); also serves as a coefficient domain for Poly."""

    def __init__(self, base, vars: Sequence[str] = ("t",)):
        self.base_field = base
        self.vars = tuple(vars)
        self.char = base.char

    def __eq__(self, other):
        return isinstance(other, RatFunField) and other.base_field == self.base_field and other.vars == self.vars

    def __hash__(self):
        return hash((self.base_field, self.vars))

    def __repr__(self):
        return f"RatFunField({self.base_field!r}, {self.vars})"

    def poly(self, x) -> Poly:
        if isinstance(x, Poly):
            return x
        return Poly.const(self.base_field, self.vars, x)

    @property
    def zero(self):
        return RationalFunction(self, self.poly(0), self.poly(1), normalized=True)

    @property
    def one(self):
        return RationalFunction(self, self.poly(1), self.poly(1), normalized=True)

    def gens(self):
        return [RationalFunction(self, g, self.poly(1), normalized=True)
                for g in Poly.gens(self.base_field, self.vars)]

    def gen(self, i: int = 0):
        return self.gens()[i]

    def __call__(self, x, den=None) -> "RationalFunction":
        if isinstance(x, RationalFunction) and den is None:
            if x.parent == self:
                return x
            raise ValueError("rational function from another field")
        num = self.poly(x)
        d = self.poly(1) if den is None else self.poly(den)
        return ratfun_normalize(num, d, self)


def ratfun_normalize(num: Poly, den: Poly, parent: RatFunField | None = None) -> "RationalFunction":
    if not den:
        raise ZeroDivisionError("zero denominator")
    if parent is None:
        parent = RatFunField(num.ring, num.vars)
    if not num:
        return RationalFunction(parent, num.zero_like(), num.one_like(), normalized=True)
    if not den.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num, den = num.exact_div(g), den.exact_div(g)
    c = den.lc()
    if c != parent.base_field.one:
        inv = parent.base_field.one / c
        num, den = num.scale(inv), den.scale(inv)
    return RationalFunction(parent, num, den, normalized=True)


class RationalFunction:
    __slots__ = ("parent", "num", "den")

    def __init__(self, parent: RatFunField, num: Poly, den: Poly, normalized: bool = False):
        if not normalized:
            r = ratfun_normalize(num, den, parent)
            num, den = r.num, r.den
        self.parent = parent
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.parent

    def _co(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction(self.parent, other, other.one_like(), normalized=True)
        return RationalFunction(self.parent, self.parent.poly(other), self.parent.poly(1), normalized=True)

    def __add__(self, other):
        o = self._co(other)
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return ratfun_normalize(self.num + o.num, self.den, self.parent)
        if self.den.is_constant() and o.den.is_constant():
            return ratfun_normalize(self.num + o.num, self.den, self.parent)
        return ratfun_normalize(self.num * o.den + o.num * self.den, self.den * o.den, self.parent)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.parent, -self.num, self.den, normalized=True)

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        o = self._co(other)
        if not self.num or not o.num:
            return self.parent.zero
        if o.den.is_constant() and o.num.is_constant():
            c = o.num.constant_value()
            return RationalFunction(self.parent, self.num.scale(c), self.den, normalized=True)
        # cross-cancel before multiplying
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n1 = self.num if g1.is_constant() else self.num.exact_div(g1)
        d2 = o.den if g1.is_constant() else o.den.exact_div(g1)
        n2 = o.num if g2.is_constant() else o.num.exact_div(g2)
        d1 = self.den if g2.is_constant() else self.den.exact_div(g2)
        num, den = n1 * n2, d1 * d2
        c = den.lc()
        if c != self.parent.base_field.one:
            inv = self.parent.base_field.one / c
            num, den = num.scale(inv), den.scale(inv)
        return RationalFunction(self.parent, num, den, normalized=True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return ratfun_normalize(self.den, self.num, self.parent)

    def __truediv__(self, other):
        return self * self._co(other).inverse()

    def __rtruediv__(self, other):
        return self._co(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.parent, self.num ** n, self.den ** n, normalized=True)

    def __eq__(self, other):
        try:
            o = self._co(other)
        except Exception:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self):
        return self.den.is_constant()

    def map_coeffs(self, f):
        return ratfun_normalize(self.num.map_coeffs(f), self.den.map_coeffs(f), self.parent)

    def evaluate(self, vals):
        n = self.num.evaluate(vals)
        d = self.den.evaluate(vals)
        return n / d

    def __call__(self, *vals):
        return self.evaluate(vals)

    def degree(self) -> int:
        """Height-style degree max(deg num, deg den)."""
        return max(self.num.total_degree(), self.den.total_degree())

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __repr__(self):
        if self.den.is_constant():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"
