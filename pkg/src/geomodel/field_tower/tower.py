"""Field towers Q(t1..tr)(a1)...(ah) with exact element arithmetic.

Each algebraic level is a simple extension M(a) = M[x]/(m) of the level
below; an element is the tuple of its coefficients on 1, a, ..., a^(d-1).
"""

from numbers import Rational

from ..errors import InputError, ReducibleMinimalPolynomial, UnknownSymbolError, ZeroDivision
from ..exact_poly.upoly import QQ, UPoly
from ..expr import evaluate, parse_expr, symbols_in
from .ratfunc import RatFunc, RatFuncField

__all__ = ["SimpleExtension", "FieldElement", "FieldTower", "base_field", "tower_build"]


def base_field(transcendentals):
    return RatFuncField(transcendentals) if transcendentals else QQ


def _height(field):
    return getattr(field, "height", 0)


def _is_scalar(x):
    return isinstance(x, (int, Rational, RatFunc))


class SimpleExtension:
    """The field parent[x]/(minpoly) with generator `name`."""

    def __init__(self, parent, name, minpoly):
        if minpoly.degree < 1:
            raise InputError(f"minimal polynomial of {name} must have positive degree")
        self.parent = parent
        self.name = name
        self.minpoly = minpoly.monic()
        self.degree = self.minpoly.degree
        self.height = _height(parent) + 1
        pz = parent.zero
        self.zero = FieldElement(self, (pz,) * self.degree)
        self.one = self.coerce(1)
        self._neg_tail = tuple(-c for c in self.minpoly.c[:-1])

    def ancestors(self):
        f = self
        out = []
        while _height(f) > 0:
            out.append(f)
            f = f.parent
        out.append(f)
        return out

    def base(self):
        return self.ancestors()[-1]

    def gen(self):
        pz, po = self.parent.zero, self.parent.one
        if self.degree == 1:
            return FieldElement(self, (-self.minpoly.c[0],))
        return FieldElement(self, (pz, po) + (pz,) * (self.degree - 2))

    def coerce(self, x):
        if isinstance(x, FieldElement):
            if x.field is self:
                return x
            h = _height(x.field)
            if h > self.height:
                raise TypeError(f"cannot coerce element of {x.field} into {self}")
        c0 = self.parent.coerce(x)
        return FieldElement(self, (c0,) + (self.parent.zero,) * (self.degree - 1))

    def restrict(self, x, level_field):
        """Return x as an element of the subfield `level_field` (ancestor), if it lies there."""
        x = self.coerce(x)
        f = self
        while f is not level_field:
            if any(x.c[1:]):
                return None
            x = x.c[0]
            f = f.parent
            if _height(f) == 0 and f is not level_field:
                return None
        return x

    def __repr__(self):
        return f"{self.parent!r}({self.name})"


class FieldElement:
    __slots__ = ("field", "c", "_hash")

    def __init__(self, field, coeffs):
        self.field = field
        self.c = tuple(coeffs)
        self._hash = None

    # helpers ----------------------------------------------------------
    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field is self.field:
                return other
            if _height(other.field) > _height(self.field):
                return None
            return self.field.coerce(other)
        if _is_scalar(other):
            return self.field.coerce(other)
        return None

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, FieldElement):
                return other == self
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        if self._hash is None:
            v = self.c[0]
            self._hash = hash(v) if not any(self.c[1:]) else hash(self.c)
        return self._hash

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) or (
            isinstance(other, FieldElement) and _height(other.field) < _height(self.field)
        ) or isinstance(other, RatFunc):
            s = self.field.parent.coerce(other)
            return FieldElement(self.field, tuple(a * s for a in self.c))
        o = self._other(other)
        if o is None:
            return NotImplemented
        F = self.field
        d = F.degree
        zero = F.parent.zero
        prod = [zero] * (2 * d - 1)
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(o.c):
                if b:
                    prod[i + j] = prod[i + j] + a * b
        tail = F._neg_tail
        for k in range(2 * d - 2, d - 1, -1):
            ck = prod[k]
            if not ck:
                continue
            base = k - d
            for j in range(d):
                if tail[j]:
                    prod[base + j] = prod[base + j] + ck * tail[j]
        return FieldElement(F, prod[:d])

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivision("inverse of zero field element")
        F = self.field
        if F.degree == 1:
            return FieldElement(F, (F.parent.one / self.c[0],))
        p = UPoly(F.parent, self.c)
        g, s, _ = p.xgcd(F.minpoly)
        if g.degree != 0:
            raise ZeroDivision("element is a zero divisor (minimal polynomial not irreducible)")
        cs = list(s.c) + [F.parent.zero] * (F.degree - len(s.c))
        return FieldElement(F, cs)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, FieldElement):
                return other.field.coerce(self) / other
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # views ------------------------------------------------------------
    def coordinates(self, stop=None):
        """Flat map exponent-tuple -> coefficient in the subfield `stop`.

        Exponents list the generators from the lowest level above `stop` to
        the top. With stop=None the coefficients are base scalars.
        """
        F = self.field
        if stop is F:
            return {(): self}
        out = {}
        for i, a in enumerate(self.c):
            if not a:
                continue
            if _height(F.parent) == 0 or F.parent is stop:
                out[(i,)] = a
            else:
                for e, v in a.coordinates(stop).items():
                    out[e + (i,)] = v
        return out

    def is_scalar_multiple_of_one(self):
        return not any(self.c[1:]) and (
            not isinstance(self.c[0], FieldElement) or self.c[0].is_scalar_multiple_of_one()
        )

    def scalar(self):
        x = self.c[0]
        return x.scalar() if isinstance(x, FieldElement) else x

    def __str__(self):
        names = [f.name for f in reversed(self.field.ancestors()[:-1])]
        coords = self.coordinates()
        if not coords:
            return "0"
        items = sorted(coords.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
        parts = []
        for e, v in items:
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            s = str(v)
            neg = s.startswith("-") and not isinstance(v, RatFunc) or (
                isinstance(v, RatFunc) and len(v.num.terms) == 1 and s.startswith("-")
            )
            body = s[1:] if neg else s
            if mono:
                if isinstance(v, RatFunc) and (len(v.num.terms) > 1 or not v.is_polynomial()):
                    body = f"({body})*{mono}"
                elif body == "1":
                    body = mono
                else:
                    body = f"{body}*{mono}"
            elif isinstance(v, RatFunc) and len(v.num.terms) > 1 and len(items) > 1:
                body = f"({body})"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"FieldElement({self})"


class FieldTower:
    """K = Q(t)(a_1..a_base_mark) and L = K(a_{base_mark+1}..a_h)."""

    def __init__(self, transcendentals, levels, base_mark):
        self.transcendentals = tuple(transcendentals)
        # share the base object with the levels so identity checks hold
        self.base = levels[0].base() if levels else base_field(self.transcendentals)
        self.levels = [self.base] + list(levels)
        self.base_mark = base_mark
        if not 0 <= base_mark <= len(levels):
            raise InputError("base_mark out of range")

    @property
    def algebraics(self):
        return [(f.name, f.minpoly) for f in self.levels[1:]]

    @property
    def K(self):
        return self.levels[self.base_mark]

    @property
    def L(self):
        return self.levels[-1]

    def level_of(self, name):
        for i, f in enumerate(self.levels[1:], 1):
            if f.name == name:
                return i
        return 0 if name in self.transcendentals else None

    def symbols(self, upto=None):
        """Map every symbol name to its generator, embedded in level `upto` (default top)."""
        upto = len(self.levels) - 1 if upto is None else upto
        top = self.levels[upto]
        env = {}
        for t in self.transcendentals:
            g = self.base.gen(t)
            env[t] = top.coerce(g) if upto else g
        for i in range(1, upto + 1):
            env[self.levels[i].name] = top.coerce(self.levels[i].gen())
        return env

    def k_symbols(self):
        return list(self.transcendentals) + [f.name for f in self.levels[1:self.base_mark + 1]]

    def l_symbols(self):
        return [f.name for f in self.levels[self.base_mark + 1:]]

    def degree_over_k(self):
        d = 1
        for f in self.levels[self.base_mark + 1:]:
            d *= f.degree
        return d

    def degree_over_base(self):
        d = 1
        for f in self.levels[1:]:
            d *= f.degree
        return d

    def embed(self, x, level=None):
        f = self.levels[-1 if level is None else level]
        return f.coerce(x) if _height(f) else x

    def nf(self, expression, where=None):
        """Parse and normalize an expression over the tower's symbols into L."""
        node = parse_expr(expression, where) if isinstance(expression, str) else expression
        env = self.symbols()
        return evaluate(node, env, lambda q: self.embed(q), where)

    def in_K(self, x):
        x = self.embed(x)
        if self.base_mark == len(self.levels) - 1:
            return True
        return self.L.restrict(x, self.K) is not None if _height(self.L) else True

    def to_K(self, x):
        """The K-level element equal to x (x must lie in K)."""
        if _height(self.L) == 0:
            return x
        r = self.L.restrict(self.embed(x), self.K)
        if r is None:
            raise ValueError(f"{x} does not lie in K")
        return r

    def k_basis(self):
        """Exponent tuples of the power basis of L over K (lowest L-level first)."""
        basis = [()]
        for f in self.levels[self.base_mark + 1:]:
            basis = [e + (i,) for i in range(f.degree) for e in basis]
        return basis

    def k_coordinates(self, x):
        """Coordinates of x on k_basis(), as K-elements."""
        x = self.embed(x)
        if self.base_mark == len(self.levels) - 1:
            return [x]
        coords = x.coordinates(self.K) if isinstance(x, FieldElement) else {(0,): x}
        zero = self.K.zero
        return [coords.get(e, zero) for e in self.k_basis()]

    def from_k_coordinates(self, coords):
        L = self.L
        env = self.symbols()
        names = self.l_symbols()
        total = L.zero if _height(L) else self.base.zero
        for e, c in zip(self.k_basis(), coords):
            if not c:
                continue
            term = self.embed(c)
            for n, k in zip(names, e):
                if k:
                    term = term * env[n] ** k
            total = total + term
        return total

    def describe(self):
        return {
            "transcendentals": list(self.transcendentals),
            "algebraics": [
                {"name": f.name, "min_poly": upoly_to_text(f.minpoly, f.name)}
                for f in self.levels[1:]
            ],
            "base_mark": self.base_mark,
        }

    def __repr__(self):
        return f"FieldTower({self.levels[-1]!r}, base_mark={self.base_mark})"


def upoly_to_text(p, var):
    """Render a UPoly with tower coefficients in the expression grammar."""
    parts = []
    for i in range(p.degree, -1, -1):
        a = p.c[i]
        if not a:
            continue
        s = str(a)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        compound = any(ch in s[1:] for ch in "+-/") or " " in s
        if not mono:
            body = s if not compound else f"({s})"
        elif s == "1":
            body = mono
        elif s == "-1":
            body = f"-{mono}"
        else:
            body = f"({s})*{mono}" if compound else f"{s}*{mono}"
        parts.append(body)
    text = " + ".join(parts) if parts else "0"
    return text.replace("+ -", "- ")


def _poly_over(field, node, var, where, env):
    """Evaluate `node` as a polynomial in `var` with coefficients in `field`."""
    penv = {k: UPoly.const(field, field.coerce(v), var) for k, v in env.items()}
    penv[var] = UPoly.x(field, var)

    def const(q):
        return UPoly.const(field, field.coerce(q), var)

    def _ev(n):
        kind = n[0]
        if kind == "div":
            a, b = _ev(n[1]), _ev(n[2])
            if b.degree > 0:
                raise InputError(f"minimal polynomial of {var} divides by a polynomial in {var} ({where})")
            if not b:
                raise ZeroDivision(f"division by zero in {where} at column {n[3]}")
            return a * (field.one / b.c[0])
        if kind == "num":
            return const(n[1])
        if kind == "sym":
            if n[1] not in penv:
                raise UnknownSymbolError(f"unknown symbol {n[1]!r} in {where} at column {n[2]}")
            return penv[n[1]]
        if kind == "neg":
            return -_ev(n[1])
        if kind == "pow":
            return _ev(n[1]) ** n[2]
        a, b = _ev(n[1]), _ev(n[2])
        return {"add": a + b, "sub": a - b, "mul": a * b}[kind]

    return _ev(node)


def tower_build(transcendentals, algebraics, base_mark, check_irreducible=True):
    """Build and validate a tower.

    `algebraics` is a list of (name, min_poly) with min_poly an expression in
    the new symbol whose coefficients use earlier symbols only. Each minimal
    polynomial is made monic and certified irreducible over the level below;
    a reducible one raises ReducibleMinimalPolynomial with a factor witness.
    """
    from ..exact_poly.roots import factor_over

    seen = set()
    for t in transcendentals:
        if t in seen:
            raise InputError(f"duplicate symbol {t!r}")
        seen.add(t)
    field = base_field(transcendentals)
    levels = []
    env = {t: field.gen(t) for t in transcendentals}
    for i, (name, mp) in enumerate(algebraics):
        if name in seen:
            raise InputError(f"duplicate symbol {name!r}")
        where = f"min_poly of {name}"
        node = parse_expr(mp, where) if isinstance(mp, str) else mp
        unknown = symbols_in(node) - set(env) - {name}
        if unknown:
            raise UnknownSymbolError(f"unknown symbol(s) {sorted(unknown)} in {where}")
        poly = _poly_over(field, node, name, where, env)
        if poly.degree < 1:
            raise InputError(f"{where} must have positive degree in {name}")
        poly = poly.monic()
        if check_irreducible and poly.degree > 1:
            factors = factor_over(field, poly)
            if len(factors) > 1 or factors[0][1] > 1:
                raise ReducibleMinimalPolynomial(name, upoly_to_text(factors[0][0], name))
        ext = SimpleExtension(field, name, poly)
        levels.append(ext)
        env = {k: ext.coerce(v) for k, v in env.items()}
        env[name] = ext.gen()
        field = ext
        seen.add(name)
    return FieldTower(transcendentals, levels, base_mark)
