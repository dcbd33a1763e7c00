"""Factorization of univariate polynomials over Q (Zassenhaus).

Squarefree decomposition (Yun), factorization modulo a small prime by
distinct-degree plus Cantor-Zassenhaus splitting, quadratic Hensel lifting
along a factor tree, then subset recombination with trial division.
"""

import random
from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt, lcm
from typing import NamedTuple

from .. import limits as _limits
from ..errors import DegreeBoundExceeded
from .multipoly import MultiPoly
from .upoly import QQ, UPoly, poly_divmod

__all__ = ["Factorization", "factor_univariate_q", "squarefree_decomposition", "is_irreducible_q"]


class Factorization(NamedTuple):
    content: Fraction
    factors: list

    def expand(self):
        out = None
        for g, m in self.factors:
            out = g ** m if out is None else out * g ** m
        if out is None:
            return self.content
        return out * self.content


# ---------------------------------------------------------------- mod p
def _trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _pmod(a, p):
    return _trim([x % p for x in a])


def _padd(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _psub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([x % p for x in out])


def _pdivmod(a, b, p):
    """Division by b whose leading coefficient is a unit mod p (p need not be prime)."""
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(a) <= db:
        return [], _trim(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] % p
        if not c:
            continue
        c = c * inv % p
        q[k] = c
        for j in range(db + 1):
            a[k + j] = (a[k + j] - c * b[j]) % p
    return _trim(q), _trim([x % p for x in a[:db]])


def _pmonic(a, p):
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def _pgcd(a, b, p):
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return _pmonic(a, p) if a else a


def _pxgcd(a, b, p):
    r0, r1, s0, s1, t0, t1 = a, b, [1], [], [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        t0, t1 = t1, _psub(t0, _pmul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return [x * inv % p for x in r0], [x * inv % p for x in s0], [x * inv % p for x in t0]


def _ppowmod(a, e, f, p):
    result = [1]
    a = _pdivmod(a, f, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, a, p), f, p)[1]
        e >>= 1
        if e:
            a = _pdivmod(_pmul(a, a, p), f, p)[1]
    return result


def _pderiv(a, p):
    return _trim([i * x % p for i, x in enumerate(a)][1:])


def _distinct_degree(f, p):
    out = []
    h = [0, 1]
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = _ppowmod(h, p, f, p)
        g = _pgcd(_psub(h, [0, 1], p), f, p)
        if len(g) > 1:
            out.append((g, i))
            f = _pdivmod(f, g, p)[0]
            h = _pdivmod(h, f, p)[1]
    if len(f) > 1:
        out.append((_pmonic(f, p), len(f) - 1))
    return out


def _equal_degree(f, d, p, rng):
    n = len(f) - 1
    if n == d:
        return [f]
    e = (p ** d - 1) // 2
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        g = _pgcd(a, f, p)
        if 1 < len(g) < len(f):
            break
        b = _psub(_ppowmod(a, e, f, p), [1], p)
        g = _pgcd(b, f, p)
        if 1 < len(g) < len(f):
            break
    h = _pdivmod(f, g, p)[0]
    return _equal_degree(g, d, p, rng) + _equal_degree(_pmonic(h, p), d, p, rng)


def _factor_mod_p(f, p, seed):
    """Monic irreducible factors of squarefree f modulo odd prime p."""
    f = _pmonic(_pmod(f, p), p)
    rng = random.Random(seed * 1_000_003 + p)
    out = []
    for g, d in _distinct_degree(f, p):
        out.extend(_equal_degree(g, d, p, rng))
    out.sort()
    return out


# ---------------------------------------------------------------- Hensel
def _hensel_step(m, f, g, h, s, t):
    m2 = m * m
    e = _psub(f, _pmul(g, h, m2), m2)
    q, r = _pdivmod(_pmul(s, e, m2), h, m2)
    g1 = _padd(g, _padd(_pmul(t, e, m2), _pmul(q, g, m2), m2), m2)
    h1 = _padd(h, r, m2)
    b = _psub(_padd(_pmul(s, g1, m2), _pmul(t, h1, m2), m2), [1], m2)
    c, d = _pdivmod(_pmul(s, b, m2), h1, m2)
    s1 = _psub(s, d, m2)
    t1 = _psub(t, _padd(_pmul(t, b, m2), _pmul(c, g1, m2), m2), m2)
    return g1, h1, s1, t1


def _multifactor_lift(f, factors, p, k):
    """Lift monic factors of f mod p to monic factors mod p**k."""
    pk = p ** k
    if len(factors) == 1:
        return [_pmonic(_pmod(f, pk), pk)]
    half = len(factors) // 2
    lc = f[-1] % p
    g = [lc]
    for u in factors[:half]:
        g = _pmul(g, u, p)
    h = [1]
    for u in factors[half:]:
        h = _pmul(h, u, p)
    _, s, t = _pxgcd(g, h, p)
    m = p
    while m < pk:
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    g, h = _pmod(g, pk), _pmod(h, pk)
    return _multifactor_lift(g, factors[:half], p, k) + _multifactor_lift(h, factors[half:], p, k)


# ---------------------------------------------------------------- over Z
_PRIMES = [p for p in range(3, 2000) if all(p % q for q in range(2, isqrt(p) + 1))]


def _symmetric(a, m):
    half = m // 2
    return [x - m if x > half else x for x in a]


def _zcontent(a):
    g = 0
    for x in a:
        g = gcd(g, x)
    return g


def _zprimitive(a):
    g = _zcontent(a)
    if a[-1] < 0:
        g = -g
    return [x // g for x in a]


def _zdivides(a, b):
    """Return b / a over Z if exact, else None."""
    qa, ra = poly_divmod(_to_upoly(b), _to_upoly(a))
    if ra:
        return None
    if any(c.denominator != 1 for c in qa.c):
        return None
    return [int(c) for c in qa.c]


def _to_upoly(a, var="x"):
    return UPoly(QQ, a, var)


def _zassenhaus(f, seed):
    """Irreducible factors over Z of primitive squarefree f with f[-1] > 0."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    b = f[-1]
    best = None
    good = 0
    for p in _PRIMES:
        if b % p == 0:
            continue
        fp = _pmonic(_pmod(f, p), p)
        if len(fp) - 1 != n or len(_pgcd(fp, _pderiv(fp, p), p)) > 1:
            continue
        facs = _factor_mod_p(f, p, seed)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        good += 1
        if len(facs) == 1 or good >= 5:
            break
    p, facs = best
    if len(facs) == 1:
        return [f]
    norm2 = isqrt(sum(x * x for x in f)) + 1
    bound = abs(b) * (2 ** n) * norm2
    k = 1
    while p ** k <= 2 * bound:
        k += 1
    pk = p ** k
    lifted = _multifactor_lift(f, facs, p, k)

    result = []
    remaining = list(range(len(lifted)))
    fstar = f
    s = 1
    while 2 * s <= len(remaining):
        found = False
        for sub in combinations(remaining, s):
            g = [fstar[-1]]
            for i in sub:
                g = _pmul(g, lifted[i], pk)
            g = _zprimitive(_trim(_symmetric(g, pk)))
            q = _zdivides(g, fstar)
            if q is not None:
                result.append(g)
                fstar = _zprimitive(q)
                remaining = [i for i in remaining if i not in sub]
                found = True
                break
        if not found:
            s += 1
    result.append(fstar)
    return result


def squarefree_decomposition(f):
    """Yun's algorithm over Q: list of (monic squarefree factor, multiplicity)."""
    f = f.monic()
    out = []
    if f.degree < 1:
        return out
    fp = f.derivative()
    a = f.gcd(fp)
    b = poly_divmod(f, a)[0]
    c = poly_divmod(fp, a)[0]
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = b.gcd(d)
        if a.degree > 0:
            out.append((a, i))
        b = poly_divmod(b, a)[0]
        c = poly_divmod(d, a)[0]
        d = c - b.derivative()
        i += 1
    return out


def _as_upoly(f):
    if isinstance(f, UPoly):
        return f, None
    if isinstance(f, MultiPoly):
        used = f.used_vars()
        if len(used) > 1:
            raise ValueError(f"expected a univariate polynomial, got variables {used}")
        name = used[0] if used else (f.vars[0] if f.vars else "x")
        cs = {}
        i = f.vars.index(name) if f.vars else None
        for e, c in f.terms.items():
            cs[e[i] if i is not None else 0] = c
        deg = max(cs) if cs else -1
        return UPoly(QQ, [cs.get(j, 0) for j in range(deg + 1)], name), f
    raise TypeError(f"cannot factor {type(f).__name__}")


def _back(g, template):
    if template is None:
        return g
    name = g.var
    vs = template.vars
    i = vs.index(name) if vs else None
    terms = {}
    for j, c in enumerate(g.c):
        e = [0] * len(vs)
        if i is not None:
            e[i] = j
        terms[tuple(e)] = c
    return MultiPoly(vs, terms)


def factor_univariate_q(f, cap=None, seed=None):
    """Factor a nonzero univariate polynomial over Q.

    Returns Factorization(content, [(monic irreducible, multiplicity), ...])
    with content * prod(g**m) == f. Factors are sorted by (degree, coefficients).
    """
    up, template = _as_upoly(f)
    if not up:
        raise ValueError("cannot factor the zero polynomial")
    lim = _limits.current()
    cap = lim.factor_degree_cap if cap is None else cap
    seed = lim.seed if seed is None else seed
    if up.degree > cap:
        raise DegreeBoundExceeded("factorization degree cap", cap)
    content = up.lc()
    factors = []
    for sq, mult in squarefree_decomposition(up):
        den = 1
        for c in sq.c:
            den = lcm(den, c.denominator)
        zi = _zprimitive([int(c * den) for c in sq.c])
        for g in _zassenhaus(zi, seed):
            factors.append((UPoly(QQ, g, up.var).monic(), mult))
    factors.sort(key=lambda gm: (gm[0].degree, gm[0].c, gm[1]))
    return Factorization(content, [(_back(g, template), m) for g, m in factors])


def is_irreducible_q(f):
    fac = factor_univariate_q(f)
    return len(fac.factors) == 1 and fac.factors[0][1] == 1
