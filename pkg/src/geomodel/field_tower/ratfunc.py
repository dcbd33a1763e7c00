"""The rational function field Q(t1..tr) with canonical normal forms.

A RatFunc is num/den with gcd(num, den) = 1 and den monic under grevlex.
"""

from fractions import Fraction
from numbers import Rational

from ..errors import ZeroDivision
from ..exact_poly.multigcd import exact_div, mpoly_gcd
from ..exact_poly.multipoly import MultiPoly

__all__ = ["RatFunc", "RatFuncField"]


class RatFunc:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _normalized=False):
        if den is None:
            den = MultiPoly.const(num.vars, 1)
        if not den:
            raise ZeroDivision("rational function with zero denominator")
        if not _normalized:
            if not num:
                den = MultiPoly.const(num.vars, 1)
            elif not den.is_constant():
                g = mpoly_gcd(num, den)
                if not g.is_constant():
                    num, den = exact_div(num, g), exact_div(den, g)
            lc = den.leading_coeff("grevlex")
            if lc != 1:
                num, den = num * (1 / lc), den * (1 / lc)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def vars(self):
        return self.num.vars

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MultiPoly):
            return RatFunc(other)
        if isinstance(other, (int, Rational)):
            return RatFunc(MultiPoly.const(self.vars, other), _normalized=True)
        return None

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self):
        return self.den.is_constant()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, RatFunc):
            c = Fraction(other)
            return RatFunc(self.num * c, self.den, _normalized=True) if c else RatFunc(self.num * 0)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivision("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _normalized=True)

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        n = str(self.num)
        if len(self.num.terms) > 1:
            n = f"({n})"
        d = str(self.den)
        if len(self.den.terms) > 1 or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({self})"


class RatFuncField:
    """Q(t1..tr); elements are RatFunc over the fixed variable tuple."""

    def __init__(self, variables):
        self.vars = tuple(variables)
        self.zero = RatFunc(MultiPoly.zero(self.vars), _normalized=True)
        self.one = RatFunc(MultiPoly.const(self.vars, 1), _normalized=True)

    def coerce(self, x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, MultiPoly):
            return RatFunc(x.reorder(self.vars) if x.vars != self.vars else x)
        if isinstance(x, (int, Rational)):
            return RatFunc(MultiPoly.const(self.vars, x), _normalized=True)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    def gen(self, name):
        return RatFunc(MultiPoly.var(self.vars, name), _normalized=True)

    def __eq__(self, other):
        return isinstance(other, RatFuncField) and other.vars == self.vars

    def __hash__(self):
        return hash(("RatFuncField", self.vars))

    def __repr__(self):
        return f"QQ({', '.join(self.vars)})"
