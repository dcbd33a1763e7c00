"""Buchberger's algorithm with Gebauer-Moeller pair pruning over Q."""

from dataclasses import dataclass, field

from ..errors import BudgetExceeded, InternalInvariantError
from .. import limits as _limits
from .multipoly import MultiPoly, monomial_key

__all__ = [
    "GroebnerBasis", "Membership", "gb_compute", "reduce", "normal_form",
    "ideal_member", "s_polynomial", "is_groebner", "is_autoreduced",
]


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis; ``block`` > 0 only for elimination orders."""

    vars: tuple
    order: str
    polys: tuple
    block: int = 0
    pairs_used: int = field(default=0, compare=False)

    @property
    def key(self):
        return monomial_key(self.order, len(self.vars), self.block)

    def leading_monomials(self):
        return [p.leading_term(self.order, self.block)[0] for p in self.polys]

    def is_unit(self):
        return any(p.is_constant() and p for p in self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)


@dataclass(frozen=True)
class Membership:
    member: bool
    remainder: MultiPoly
    cofactors: tuple = ()


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


class _Ctx:
    """Memoized monomial keys for one computation."""

    def __init__(self, order, n, block):
        self.raw = monomial_key(order, n, block)
        self.memo = {}

    def key(self, e):
        k = self.memo.get(e)
        if k is None:
            k = self.memo[e] = self.raw(e)
        return k

    def lead(self, terms):
        return max(terms, key=self.key)


def _reduce_terms(p, basis, lms, ctx, quotients=None):
    """Fully reduce dict `p` by monic dicts `basis`; returns remainder dict."""
    p = dict(p)
    rem = {}
    while p:
        e = ctx.lead(p)
        c = p[e]
        for i, lm in enumerate(lms):
            if _divides(lm, e):
                shift = _sub(e, lm)
                if quotients is not None:
                    quotients[i][shift] = quotients[i].get(shift, 0) + c
                for ge, gc in basis[i].items():
                    t = tuple(a + b for a, b in zip(ge, shift))
                    v = p.get(t, 0) - c * gc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            rem[e] = c
            del p[e]
    return rem


def _monic(terms, ctx):
    e = ctx.lead(terms)
    c = terms[e]
    if c == 1:
        return terms
    inv = 1 / c
    return {k: v * inv for k, v in terms.items()}


def _spoly(f, g, lf, lg):
    m = _lcm(lf, lg)
    sf, sg = _sub(m, lf), _sub(m, lg)
    out = {}
    for e, c in f.items():
        out[tuple(a + b for a, b in zip(e, sf))] = c
    for e, c in g.items():
        t = tuple(a + b for a, b in zip(e, sg))
        v = out.get(t, 0) - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def gb_compute(generators, order="grevlex", variables=None, block=0, budget=None):
    """Reduced Groebner basis of the ideal generated by `generators`.

    Pairs are selected by the normal strategy (smallest lcm first, ties broken
    by insertion index), so the run is deterministic. Raises BudgetExceeded
    after `budget` S-pair reductions (default from the active limits).
    """
    generators = list(generators)
    if variables is None:
        if not generators:
            raise ValueError("need variables or at least one generator")
        variables = generators[0].vars
    variables = tuple(variables)
    n = len(variables)
    if budget is None:
        budget = _limits.current().gb_budget
    ctx = _Ctx(order, n, block)

    polys, lms = [], []
    active = []
    pairs = []
    used = 0

    def update(h):
        nonlocal pairs, active
        lh = lms[h]
        cand = []
        for g in active:
            cand.append((g, _lcm(lms[g], lh)))
        kept = []
        for i, (g, m) in enumerate(cand):
            coprime = m == tuple(a + b for a, b in zip(lms[g], lh))
            if coprime:
                kept.append((g, m, True))
                continue
            redundant = any(
                _divides(m2, m) and (m2 != m or j < i)
                for j, (g2, m2) in enumerate(cand) if j != i
            )
            if not redundant:
                kept.append((g, m, False))
        new_pairs = [(ctx.key(m), g, h, m) for g, m, cop in kept if not cop]
        old = []
        for pr in pairs:
            _, a, b, m = pr
            if _divides(lh, m) and _lcm(lms[a], lh) != m and _lcm(lms[b], lh) != m:
                continue
            old.append(pr)
        pairs = old + new_pairs
        active = [g for g in active if not _divides(lh, lms[g])] + [h]

    def add(terms):
        terms = _monic(terms, ctx)
        polys.append(terms)
        lms.append(ctx.lead(terms))
        update(len(polys) - 1)

    # seed with interreduced generators, in input order
    for g in generators:
        if g.vars != variables:
            g = g.reorder(variables)
        if not g.terms:
            continue
        r = _reduce_terms(g.terms, [polys[i] for i in active], [lms[i] for i in active], ctx)
        if r:
            add(r)
            if not any(r.keys() - {(0,) * n}):
                pairs = []
                break

    while pairs:
        best = min(range(len(pairs)), key=lambda i: (pairs[i][0], pairs[i][1], pairs[i][2]))
        _, a, b, _m = pairs.pop(best)
        used += 1
        if used > budget:
            raise BudgetExceeded("Groebner S-pair budget", budget)
        s = _spoly(polys[a], polys[b], lms[a], lms[b])
        r = _reduce_terms(s, [polys[i] for i in active], [lms[i] for i in active], ctx)
        if r:
            add(r)
            if set(r) == {(0,) * n}:
                break

    # minimal then reduced basis
    basis = [polys[i] for i in active]
    blms = [lms[i] for i in active]
    if any(all(x == 0 for x in lm) for lm in blms):
        out = [MultiPoly.const(variables, 1)]
        return GroebnerBasis(variables, order, tuple(out), block, used)
    keep = []
    for i, lm in enumerate(blms):
        if any(_divides(blms[j], lm) and (blms[j] != lm or j < i) for j in range(len(blms)) if j != i):
            continue
        keep.append(i)
    basis = [basis[i] for i in keep]
    blms = [blms[i] for i in keep]
    reduced = []
    for i, g in enumerate(basis):
        lead = {blms[i]: g[blms[i]]}
        tail = {e: c for e, c in g.items() if e != blms[i]}
        others = [basis[j] for j in range(len(basis)) if j != i]
        olms = [blms[j] for j in range(len(basis)) if j != i]
        tail = _reduce_terms(tail, others, olms, ctx)
        lead.update(tail)
        reduced.append(lead)
    order_idx = sorted(range(len(reduced)), key=lambda i: ctx.key(blms[i]))
    out = tuple(MultiPoly(variables, reduced[i]) for i in order_idx)
    return GroebnerBasis(variables, order, out, block, used)


def reduce(f, polys, order="grevlex", block=0):
    """Multivariate division of f by monic-izable `polys`.

    Returns (quotients, remainder) with f = sum(q_i * g_i) + remainder.
    """
    polys = list(polys)
    ctx = _Ctx(order, len(f.vars), block)
    basis, lms, scale = [], [], []
    for g in polys:
        e = ctx.lead(g.terms)
        c = g.terms[e]
        basis.append({k: v / c for k, v in g.terms.items()})
        lms.append(e)
        scale.append(c)
    quots = [dict() for _ in polys]
    rem = _reduce_terms(f.terms, basis, lms, ctx, quots)
    quotients = [MultiPoly(f.vars, {e: c / s for e, c in q.items()}) for q, s in zip(quots, scale)]
    return quotients, MultiPoly(f.vars, rem)


def normal_form(f, gb):
    if f.vars != gb.vars:
        f = f.reorder(gb.vars)
    return reduce(f, gb.polys, gb.order, gb.block)[1]


def ideal_member(f, gb):
    """Decide f in <gb>; on success the cofactors re-expand to f exactly."""
    if f.vars != gb.vars:
        f = f.reorder(gb.vars)
    quotients, rem = reduce(f, gb.polys, gb.order, gb.block)
    if rem:
        return Membership(False, rem)
    check = MultiPoly.zero(f.vars)
    for q, g in zip(quotients, gb.polys):
        check = check + q * g
    if check != f:
        raise InternalInvariantError("cofactor certificate failed to re-expand")
    return Membership(True, rem, tuple(quotients))


def s_polynomial(f, g, order="grevlex", block=0):
    lf, cf = f.leading_term(order, block)
    lg, cg = g.leading_term(order, block)
    fm = {e: c / cf for e, c in f.terms.items()}
    gm = {e: c / cg for e, c in g.terms.items()}
    return MultiPoly(f.vars, _spoly(fm, gm, lf, lg))


def is_groebner(gb):
    """Buchberger criterion: every S-polynomial reduces to zero."""
    polys = gb.polys
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            s = s_polynomial(polys[i], polys[j], gb.order, gb.block)
            if reduce(s, polys, gb.order, gb.block)[1]:
                return False
    return True


def is_autoreduced(gb):
    lms = gb.leading_monomials()
    for i, p in enumerate(gb.polys):
        if p.leading_coeff(gb.order, gb.block) != 1:
            return False
        for j, m in enumerate(lms):
            if i != j and any(_divides(m, e) for e in p.terms):
                return False
    return True
