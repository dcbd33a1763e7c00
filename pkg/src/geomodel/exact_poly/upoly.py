"""Dense univariate polynomials over an exact field.

Coefficients are any field elements supporting ``+ - * /`` and truthiness
(Fraction, RatFunc, FieldElement). The owning field supplies ``zero``,
``one`` and ``coerce``.
"""

from fractions import Fraction

from ..errors import ZeroDivision

__all__ = ["QQ", "UPoly", "poly_divmod", "resultant", "interpolate"]


class _Rationals:
    """The field Q with Fraction elements."""

    zero = Fraction(0)
    one = Fraction(1)
    name = "QQ"

    def coerce(self, x):
        return Fraction(x)

    def __repr__(self):
        return "QQ"


QQ = _Rationals()


class UPoly:
    __slots__ = ("field", "c", "var")

    def __init__(self, field, coeffs, var="x"):
        self.field = field
        cs = [field.coerce(x) for x in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.c = tuple(cs)
        self.var = var

    @classmethod
    def _raw(cls, field, cs, var):
        cs = list(cs)
        while cs and not cs[-1]:
            cs.pop()
        p = cls.__new__(cls)
        p.field = field
        p.c = tuple(cs)
        p.var = var
        return p

    @classmethod
    def x(cls, field, var="x"):
        return cls._raw(field, (field.zero, field.one), var)

    @classmethod
    def const(cls, field, a, var="x"):
        return cls._raw(field, (field.coerce(a),), var)

    @property
    def degree(self):
        return len(self.c) - 1

    def lc(self):
        return self.c[-1] if self.c else self.field.zero

    def __bool__(self):
        return bool(self.c)

    def __len__(self):
        return len(self.c)

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else self.field.zero

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def _wrap(self, other):
        if isinstance(other, UPoly):
            return other
        return UPoly._raw(self.field, (self.field.coerce(other),), self.var)

    def __add__(self, other):
        o = self._wrap(other)
        n = max(len(self.c), len(o.c))
        return UPoly._raw(self.field, [self[i] + o[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UPoly._raw(self.field, [-a for a in self.c], self.var)

    def __sub__(self, other):
        o = self._wrap(other)
        n = max(len(self.c), len(o.c))
        return UPoly._raw(self.field, [self[i] - o[i] for i in range(n)], self.var)

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            a = self.field.coerce(other)
            return UPoly._raw(self.field, [x * a for x in self.c], self.var)
        if not self.c or not other.c:
            return UPoly._raw(self.field, (), self.var)
        out = [self.field.zero] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(other.c):
                if b:
                    out[i + j] = out[i + j] + a * b
        return UPoly._raw(self.field, out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = UPoly.const(self.field, 1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return poly_divmod(self, other)[0]

    def __mod__(self, other):
        return poly_divmod(self, other)[1]

    def monic(self):
        if not self.c:
            return self
        inv = self.field.one / self.c[-1]
        return UPoly._raw(self.field, [a * inv for a in self.c], self.var)

    def derivative(self):
        return UPoly._raw(self.field, [a * i for i, a in enumerate(self.c)][1:], self.var)

    def __call__(self, x):
        acc = self.field.zero if not self.c else self.c[-1]
        for a in reversed(self.c[:-1]):
            acc = acc * x + a
        return acc

    def compose(self, q):
        """Return self(q) for a polynomial q."""
        acc = UPoly._raw(self.field, (), self.var)
        for a in reversed(self.c):
            acc = acc * q + a
        return acc

    def map_coeffs(self, fn, field=None):
        field = field or self.field
        return UPoly(field, [fn(a) for a in self.c], self.var)

    def gcd(self, other):
        a, b = self, other
        while b:
            a, b = b, poly_divmod(a, b)[1]
        return a.monic()

    def xgcd(self, other):
        """Return (g, s, t) with s*self + t*other = g monic."""
        one = UPoly.const(self.field, 1, self.var)
        zero = UPoly._raw(self.field, (), self.var)
        r0, r1, s0, s1, t0, t1 = self, other, one, zero, zero, one
        while r1:
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if not r0:
            return r0, s0, t0
        inv = self.field.one / r0.lc()
        return r0 * inv, s0 * inv, t0 * inv

    def squarefree_part(self):
        if self.degree < 1:
            return self.monic()
        g = self.gcd(self.derivative())
        return poly_divmod(self, g)[0].monic()

    def is_squarefree(self):
        return self.degree < 1 or self.gcd(self.derivative()).degree == 0

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            s = str(a)
            neg = s.startswith("-") and not any(ch in s[1:] for ch in "+- ")
            if neg:
                s = s[1:]
            elif any(ch in s[1:] for ch in "+- ") and (i > 0 or parts):
                s = f"({s})"
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if not mono:
                body = s
            elif s == "1":
                body = mono
            else:
                body = f"{s}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"UPoly({self})"


def poly_divmod(f, g):
    """Euclidean division f = q*g + r with deg r < deg g, exactly."""
    if not g:
        raise ZeroDivision("polynomial division by zero")
    field = f.field
    r = list(f.c)
    dg = g.degree
    inv = field.one / g.c[-1]
    if len(r) <= dg:
        return UPoly._raw(field, (), f.var), f
    q = [field.zero] * (len(r) - dg)
    for k in range(len(r) - 1 - dg, -1, -1):
        c = r[k + dg]
        if not c:
            continue
        c = c * inv
        q[k] = c
        for j in range(dg + 1):
            if g.c[j]:
                r[k + j] = r[k + j] - c * g.c[j]
    return UPoly._raw(field, q, f.var), UPoly._raw(field, r[:dg], f.var)


def resultant(f, g):
    """Res(f, g) over a field via the Euclidean remainder sequence."""
    field = f.field
    if not f or not g:
        return field.zero
    res = field.one
    a, b = f, g
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return res * b.c[0] ** da
        q, r = poly_divmod(a, b)
        if not r:
            return field.zero
        dr = r.degree
        if (da * db) % 2:
            res = -res
        res = res * b.lc() ** (da - dr)
        a, b = b, r


def interpolate(field, points, values, var="x"):
    """Newton interpolation through (points[i], values[i])."""
    n = len(points)
    coef = list(values)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / field.coerce(points[i] - points[i - j])
    p = UPoly.const(field, coef[-1], var)
    xv = UPoly.x(field, var)
    for i in range(n - 2, -1, -1):
        p = p * (xv - points[i]) + coef[i]
    return p
