"""Sparse multivariate polynomials with exact rational coefficients."""

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = ["MultiPoly", "monomial_key", "ORDERS"]

ORDERS = ("lex", "grevlex")


@lru_cache(maxsize=None)
def _key_factory(order, nvars, block):
    if order == "lex":
        return lambda e: e
    if order == "grevlex":
        return lambda e: (sum(e), tuple(-x for x in reversed(e)))
    if order == "elim":
        # first `block` variables are eliminated; grevlex inside each block
        def key(e):
            a, b = e[:block], e[block:]
            return (sum(a), tuple(-x for x in reversed(a)),
                    sum(b), tuple(-x for x in reversed(b)))
        return key
    raise ValueError(f"unknown monomial order {order!r}")


def monomial_key(order, nvars, block=0):
    """Sort key on exponent tuples; larger key means larger monomial."""
    return _key_factory(order, nvars, block)


def _coerce_coeff(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


class MultiPoly:
    """Polynomial over Q in an ordered list of variables.

    ``terms`` maps exponent tuples to nonzero Fractions. Instances are treated
    as immutable; every operation returns a new polynomial.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        n = len(self.vars)
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {n} variables")
                c = _coerce_coeff(c)
                if c:
                    clean[e] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables, terms):
        p = cls.__new__(cls)
        p.vars = variables
        p.terms = terms
        p._hash = None
        return p

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, variables):
        return cls._raw(tuple(variables), {})

    @classmethod
    def const(cls, variables, c):
        variables = tuple(variables)
        c = _coerce_coeff(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def var(cls, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls._raw(variables, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, variables, exps, c=1):
        return cls(variables, {tuple(exps): c})

    # basic queries ----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coeff(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, name):
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def used_vars(self):
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def leading_term(self, order="grevlex", block=0):
        """Return (exponent, coefficient) of the leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = monomial_key(order, len(self.vars), block)
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def leading_coeff(self, order="grevlex", block=0):
        return self.leading_term(order, block)[1]

    def monic(self, order="grevlex", block=0):
        if not self.terms:
            return self
        return self * (1 / self.leading_coeff(order, block))

    def sorted_terms(self, order="grevlex"):
        key = monomial_key(order, len(self.vars))
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    # ring operations --------------------------------------------------
    def _check(self, other):
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Rational)):
            return MultiPoly.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return MultiPoly._raw(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, MultiPoly):
            c = _coerce_coeff(other)
            if not c:
                return MultiPoly.zero(self.vars)
            return MultiPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()})
        other = self._check(other)
        if other is NotImplemented:
            return other
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e, 0) + c1 * c2
                if s:
                    t[e] = s
                else:
                    del t[e]
        return MultiPoly._raw(self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_term(self, exps, c):
        return MultiPoly._raw(
            self.vars,
            {tuple(a + b for a, b in zip(e, exps)): v * c for e, v in self.terms.items()},
        )

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.terms == MultiPoly.const(self.vars, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # substitution -----------------------------------------------------
    def evaluate(self, values):
        """Evaluate at a mapping name -> value; values may be any ring elements."""
        vals = [values[v] for v in self.vars]
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term = term * v ** k
            total = total + term
        return total

    def reorder(self, variables):
        """Re-express over a new variable list (missing variables must be unused)."""
        variables = tuple(variables)
        idx = []
        for v in variables:
            idx.append(self.vars.index(v) if v in self.vars else None)
        for i, v in enumerate(self.vars):
            if v not in variables and any(e[i] for e in self.terms):
                raise ValueError(f"variable {v} is used and cannot be dropped")
        t = {}
        for e, c in self.terms.items():
            t[tuple(e[i] if i is not None else 0 for i in idx)] = c
        return MultiPoly._raw(variables, t)

    def diff(self, name):
        i = self.vars.index(name)
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                t[tuple(f)] = c * e[i]
        return MultiPoly._raw(self.vars, t)

    def coeffs_in(self, name):
        """Split as a polynomial in `name`: {power: MultiPoly in the same variables}."""
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            f = list(e)
            k = f[i]
            f[i] = 0
            out.setdefault(k, {})[tuple(f)] = c
        return {k: MultiPoly._raw(self.vars, t) for k, t in out.items()}

    def content_lcm(self):
        """Return the lcm of coefficient denominators."""
        from math import lcm
        d = 1
        for c in self.terms.values():
            d = lcm(d, c.denominator)
        return d

    # printing ---------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms("grevlex"):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.vars}, {str(self)!r})"
