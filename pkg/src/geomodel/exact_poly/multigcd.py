"""Exact division and gcd in Q[x1..xn] (recursive primitive PRS)."""

from .multipoly import MultiPoly
from .upoly import QQ, UPoly

__all__ = ["exact_div", "mpoly_gcd", "normalize_monic"]


def normalize_monic(p):
    return p.monic("grevlex") if p else p


def _divrem_lex(f, g):
    lm_g, lc_g = g.leading_term("lex")
    q = {}
    r = dict(f.terms)
    rem = {}
    from .multipoly import monomial_key
    key = monomial_key("lex", len(f.vars))
    while r:
        e = max(r, key=key)
        c = r[e]
        if all(a >= b for a, b in zip(e, lm_g)):
            shift = tuple(a - b for a, b in zip(e, lm_g))
            k = c / lc_g
            q[shift] = q.get(shift, 0) + k
            for ge, gc in g.terms.items():
                t = tuple(a + b for a, b in zip(ge, shift))
                v = r.get(t, 0) - k * gc
                if v:
                    r[t] = v
                else:
                    r.pop(t, None)
        else:
            rem[e] = c
            del r[e]
    return MultiPoly(f.vars, q), MultiPoly(f.vars, rem)


def exact_div(f, g):
    """Return f / g, raising ValueError if g does not divide f."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    if g.is_constant():
        return f * (1 / g.constant_coeff())
    q, r = _divrem_lex(f, g)
    if r:
        raise ValueError("inexact polynomial division")
    return q


def _univariate_gcd(f, g, name):
    i = f.vars.index(name)

    def up(p):
        cs = {}
        for e, c in p.terms.items():
            cs[e[i]] = c
        d = max(cs) if cs else -1
        return UPoly(QQ, [cs.get(j, 0) for j in range(d + 1)])

    h = up(f).gcd(up(g))
    terms = {}
    for j, c in enumerate(h.c):
        e = [0] * len(f.vars)
        e[i] = j
        terms[tuple(e)] = c
    return MultiPoly(f.vars, terms)


def _prem(a, b, v):
    db = b.degree(v)
    lc_b = b.coeffs_in(v)[db]
    r = a
    while r and r.degree(v) >= db:
        dr = r.degree(v)
        lc_r = r.coeffs_in(v)[dr]
        e = [0] * len(a.vars)
        e[a.vars.index(v)] = dr - db
        r = lc_b * r - lc_r * b.mul_term(tuple(e), 1)
    return r


def _content(p, v):
    g = None
    for c in p.coeffs_in(v).values():
        g = c if g is None else mpoly_gcd(g, c)
        if g.is_constant():
            return MultiPoly.const(p.vars, 1)
    return g


def mpoly_gcd(f, g):
    """Monic (grevlex) gcd of two polynomials over the same variables."""
    if not f:
        return normalize_monic(g)
    if not g:
        return normalize_monic(f)
    if f.is_constant() or g.is_constant():
        return MultiPoly.const(f.vars, 1)
    used = sorted(set(f.used_vars()) | set(g.used_vars()), key=f.vars.index)
    if len(used) == 1:
        return normalize_monic(_univariate_gcd(f, g, used[0]))
    v = used[-1]
    if f.degree(v) == 0 or g.degree(v) == 0:
        # v occurs in only one argument: gcd divides all of its v-coefficients
        h = g if f.degree(v) == 0 else f
        other = f if h is g else g
        return mpoly_gcd(other, _content(h, v))
    cf, cg = _content(f, v), _content(g, v)
    c = mpoly_gcd(cf, cg)
    a, b = exact_div(f, cf), exact_div(g, cg)
    if a.degree(v) < b.degree(v):
        a, b = b, a
    while b and b.degree(v) > 0:
        r = _prem(a, b, v)
        if not r:
            break
        a, b = b, exact_div(r, _content(r, v))
    else:
        if b:
            # b is free of v: primitive parts are coprime in v
            return normalize_monic(c)
    h = exact_div(b, _content(b, v))
    return normalize_monic(c * h)
