"""Factorization and root extraction over a field tower.

Over Q we use Zassenhaus; over Q(t1..tr) the cleared numerator is factored
as a multivariate polynomial; over an algebraic level M(a) we use Trager's
norm method: shift until the norm over M is squarefree, factor the norm over
M (recursively) and take gcds back in M(a)[x].
"""

from fractions import Fraction

import sympy

from .. import limits as _limits
from ..errors import InternalInvariantError
from .factor import factor_univariate_q, squarefree_decomposition
from .multigcd import exact_div, mpoly_gcd
from .multipoly import MultiPoly
from .upoly import QQ, UPoly, interpolate, poly_divmod, resultant

__all__ = ["factor_over", "roots_in_tower", "norm_poly", "element_norm", "sort_key"]


def _height(field):
    return getattr(field, "height", 0)


def sort_key(x):
    """Deterministic total order on tower elements (by flat coordinates)."""
    from ..field_tower.ratfunc import RatFunc

    def skey(v):
        if isinstance(v, RatFunc):
            return (1, str(v.num), str(v.den))
        return (0, v)

    if hasattr(x, "coordinates"):
        return tuple(sorted((e, skey(v)) for e, v in x.coordinates().items()))
    return (((), skey(x)),) if x else ()


def element_norm(z):
    """N_{M(a)/M}(z) as an element of M."""
    F = z.field
    return resultant(F.minpoly, UPoly(F.parent, z.c))


def norm_poly(g):
    """Norm of g in M(a)[x] down to M[x], via evaluation and interpolation."""
    F = g.field
    n = g.degree * F.degree
    pts = list(range(n + 1))
    vals = [element_norm(g(F.coerce(p))) for p in pts]
    return interpolate(F.parent, pts, vals, g.var)


def _to_sympy(p, syms):
    expr = 0
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            if k:
                term *= s ** k
        expr += term
    return expr


def _factor_ratfunc(field, g):
    """Irreducible factors of squarefree monic g over Q(t1..tr)."""
    tv = field.vars
    den = MultiPoly.const(tv, 1)
    for c in g.c:
        if not c.den.is_constant():
            den = exact_div(den * c.den, mpoly_gcd(den, c.den))
    allv = tv + ("_x",)
    big = MultiPoly.zero(allv)
    for i, c in enumerate(g.c):
        num = c.num * exact_div(den, c.den)
        for e, v in num.terms.items():
            big = big + MultiPoly(allv, {e + (i,): v})
    syms = sympy.symbols(" ".join(allv), seq=True)
    _, facs = sympy.factor_list(_to_sympy(big, syms), *syms)
    out = []
    for fe, _m in facs:
        P = sympy.Poly(fe, *syms)
        if P.degree(syms[-1]) < 1:
            continue
        coeffs = {}
        for mono, c in P.terms():
            coeffs.setdefault(mono[-1], {})[mono[:-1]] = sympy.Rational(c)
        d = max(coeffs)
        cs = []
        for i in range(d + 1):
            t = {e: Fraction(int(v.p), int(v.q)) for e, v in coeffs.get(i, {}).items()}
            cs.append(field.coerce(MultiPoly(tv, t)))
        out.append(UPoly(field, cs, g.var).monic())
    return out


def _trager(field, g):
    """Irreducible factors of squarefree monic g over the simple extension `field`."""
    a = field.gen()
    x = UPoly.x(field, g.var)
    s = 0
    tries = 0
    while True:
        gs = g.compose(x - a * s) if s else g
        N = norm_poly(gs)
        if N.is_squarefree():
            break
        tries += 1
        s = (tries + 1) // 2 * (1 if tries % 2 else -1)
    out = []
    for Nj in _factor_squarefree(field.parent, N.monic()):
        lifted = UPoly(field, [field.coerce(c) for c in Nj.c], g.var)
        h = gs.gcd(lifted)
        if h.degree >= 1:
            out.append(h.compose(x + a * s).monic() if s else h.monic())
    return out


def _factor_squarefree(field, g):
    if g.degree <= 1:
        return [g.monic()]
    if field is QQ:
        fac = factor_univariate_q(g, cap=_limits.current().factor_degree_cap)
        return [h for h, _ in fac.factors]
    if _height(field) == 0:
        return _factor_ratfunc(field, g)
    return _trager(field, g)


def factor_over(field, f):
    """Factor f (UPoly over `field`) into monic irreducibles with multiplicities."""
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    out = []
    for sq, m in squarefree_decomposition(f):
        for h in _factor_squarefree(field, sq):
            out.append((h, m))
    out.sort(key=lambda hm: (hm[0].degree, tuple(sort_key(c) for c in hm[0].c), hm[1]))
    return out


def roots_in_tower(f, tower, hints=()):
    """All roots of f in the tower's top field L, each verified by substitution.

    `hints` are candidate roots tried first; each confirmed one is divided
    out before the remaining factor is split over L.
    """
    L = tower.L
    if not isinstance(f, UPoly) or f.field is not L:
        f = UPoly(L, [tower.embed(c) for c in (f.c if isinstance(f, UPoly) else f)])
    if not f:
        raise ValueError("roots of the zero polynomial are not a finite set")
    g = f.squarefree_part() if f.degree > 0 else f
    found = []
    x = UPoly.x(L, g.var)
    for h in hints:
        if g.degree < 1:
            break
        h = tower.embed(h)
        if not g(h):
            found.append(h)
            g = poly_divmod(g, x - h)[0]
    if g.degree >= 1:
        for h in _factor_squarefree(L, g.monic()):
            if h.degree == 1:
                found.append(-h.c[0] / h.c[1])
    uniq = {}
    for r in found:
        if f(r):
            raise InternalInvariantError(f"root {r} failed substitution check")
        uniq.setdefault(sort_key(r), r)
    if len(uniq) > f.degree:
        raise InternalInvariantError("more roots than the degree")
    return [uniq[k] for k in sorted(uniq)]
