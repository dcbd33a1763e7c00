"""Finitely generated subrings of L: kernels, membership, fraction fields.

A ring Z[g_1..g_m] inside L is handled through the Q-algebra
A0 = Q[t, 1/D][a_1..a_h] / (minimal polynomials), which is a domain sitting
inside L. D clears every denominator in the tower and in the generators, and
an extra variable y stands for 1/D. With an elimination order putting the
tower variables (and y) above fresh variables z_i, a reduced Groebner basis of

    (minimal polynomials, y*D - 1, z_i - g_i)

gives both the kernel of Q[z] -> L (its part free of tower variables) and a
decision procedure for x in Q[g]: the normal form of x lies in Q[z].
Integrality over Z is settled afterwards (see `RingPresentation.member`).
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd, lcm

from ..errors import InternalInvariantError
from ..exact_poly.groebner import gb_compute, normal_form
from ..exact_poly.linalg import Echelon, IntLattice
from ..exact_poly.multigcd import exact_div, mpoly_gcd
from ..exact_poly.multipoly import MultiPoly
from ..exact_poly.roots import sort_key
from ..field_tower.ratfunc import RatFunc
from ..field_tower.tower import FieldElement
from .. import limits as _limits

__all__ = [
    "RingPresentation", "MembershipResult", "FractionCertificate",
    "ring_from_elements", "element_dens", "poly_lcm", "monomials",
]


def _coords(tower, x):
    """Flat coordinates of x: exponent tuple over all algebraic levels -> base scalar."""
    x = tower.embed(x)
    if isinstance(x, FieldElement):
        return x.coordinates()
    return {(): x} if x else {}


def element_dens(tower, x):
    """Nonconstant denominators of the flat coordinates of x."""
    out = []
    for v in _coords(tower, x).values():
        if isinstance(v, RatFunc) and not v.den.is_constant():
            out.append(v.den)
    return out


def poly_lcm(tvars, polys):
    m = MultiPoly.const(tvars, 1)
    for p in polys:
        g = mpoly_gcd(m, p)
        m = exact_div(m * p, g)
    return m


def _top_level(tower, x):
    top = 0
    for e in _coords(tower, x):
        for i, k in enumerate(e):
            if k:
                top = max(top, i + 1)
    return top


def monomials(m, d):
    """Exponent tuples of total degree <= d in m variables, by degree then lex."""
    out = []
    for k in range(d + 1):
        for combo in combinations_with_replacement(range(m), k):
            e = [0] * m
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def _qflat(tower, x, mult):
    """Q-coordinates of mult*x, keyed by (algebraic exponent, t exponent)."""
    out = {}
    y = tower.embed(x) * tower.embed(mult) if mult is not None else tower.embed(x)
    for e, v in _coords(tower, y).items():
        if isinstance(v, RatFunc):
            if not v.den.is_constant():
                raise InternalInvariantError("denominator survived clearing")
            dc = v.den.constant_coeff()
            for te, c in v.num.terms.items():
                out[(e, te)] = c / dc
        else:
            out[(e, ())] = Fraction(v)
    return out


def _common_multiplier(tower, values):
    if not tower.transcendentals:
        return None
    dens = [d for v in values for d in element_dens(tower, v)]
    if not dens:
        return None
    return RatFunc(poly_lcm(tower.transcendentals, dens))


@dataclass
class MembershipResult:
    """status is 'member', 'non-member' or 'inconclusive'."""

    status: str
    certificate: object = None  # MultiPoly in the ring's z variables with P(g) = x
    reason: str = ""

    @property
    def member(self):
        return self.status == "member"


@dataclass
class FractionCertificate:
    target: str
    numerator: object  # MultiPoly over Z in z variables
    denominator: object

    def as_dict(self):
        return {"element": self.target, "numerator": str(self.numerator),
                "denominator": str(self.denominator)}


class _Ambient:
    """Polynomial images of tower elements for one ring."""

    def __init__(self, tower, top, dens):
        self.tower = tower
        self.top = top
        tv = tower.transcendentals
        self.tnames = tuple(tv)
        self.D = poly_lcm(tv, dens) if tv else None
        self.has_y = self.D is not None and not self.D.is_constant()
        self.anames = tuple(f"_{tower.levels[i].name}" for i in range(top, 0, -1))
        self.names = self.anames + tuple(f"_{t}" for t in tv) + (("_y",) if self.has_y else ())

    def _power_for(self, den):
        deg = den.total_degree()
        p = MultiPoly.const(self.D.vars, 1)
        for k in range(0, deg + 1):
            try:
                return k, exact_div(p, den)
            except ValueError:
                p = p * self.D
        return None

    def to_poly(self, x, variables):
        """x as a polynomial in `variables` (ambient names first), or None if outside A0."""
        n = len(variables)
        h = self.top
        nt = len(self.tnames)
        terms = {}
        for e, v in _coords(self.tower, x).items():
            if any(e[h:]):
                return None
            aexp = tuple(reversed(e[:h]))
            if isinstance(v, RatFunc):
                if v.den.is_constant():
                    k, num = 0, v.num * (1 / v.den.constant_coeff())
                else:
                    hit = self._power_for(v.den) if self.has_y else None
                    if hit is None:
                        return None
                    k, q = hit
                    num = v.num * q
                for te, c in num.terms.items():
                    ex = aexp + te + ((k,) if self.has_y else ()) + (0,) * (n - len(self.names))
                    terms[ex] = terms.get(ex, 0) + c
            else:
                ex = aexp + (0,) * nt + ((0,) if self.has_y else ()) + (0,) * (n - len(self.names))
                terms[ex] = terms.get(ex, 0) + Fraction(v)
        return MultiPoly(variables, {e: c for e, c in terms.items() if c})

    def relations(self, variables):
        out = []
        tower = self.tower
        for lvl in range(1, self.top + 1):
            F = tower.levels[lvl]
            p = MultiPoly.var(variables, f"_{F.name}") ** F.degree
            xa = MultiPoly.var(variables, f"_{F.name}")
            for i, c in enumerate(F.minpoly.c[:-1]):
                cp = self.to_poly(tower.embed(c), variables)
                if cp is None:
                    raise InternalInvariantError("minimal polynomial coefficient outside A0")
                p = p + cp * xa ** i
            out.append(p)
        if self.has_y:
            y = MultiPoly.var(variables, "_y")
            out.append(y * _lift(self.D, variables) - 1)
        return out


def _lift(p, variables):
    idx = [variables.index(f"_{v}") for v in p.vars]
    n = len(variables)
    terms = {}
    for e, c in p.terms.items():
        ex = [0] * n
        for i, k in zip(idx, e):
            ex[i] = k
        terms[tuple(ex)] = c
    return MultiPoly(variables, terms)


class RingPresentation:
    """The subring Z[g_1..g_m] of L named by generator symbols z1..zm.

    `ambient` is 'K' or 'L'; relations (the kernel of Q[z] -> L as a reduced
    Groebner basis) are computed lazily.
    """

    def __init__(self, tower, generators, ambient="L", labels=None):
        self.tower = tower
        gens, keys = [], set()
        for g in generators:
            g = tower.embed(g)
            k = sort_key(g)
            if k in keys:
                continue
            keys.add(k)
            gens.append(g)
        self.generators = gens
        self.names = tuple(f"z{i + 1}" for i in range(len(gens)))
        self.labels = [str(g) for g in gens] if labels is None else list(labels)
        self.ambient = ambient
        self._gb = None
        self._amb = None

    # --- basic views ----------------------------------------------------
    def __len__(self):
        return len(self.generators)

    def generator_keys(self):
        return sorted(sort_key(g) for g in self.generators)

    def same_generators(self, other):
        return self.generator_keys() == other.generator_keys()

    def zvars(self):
        """Kernel variable order: the last generator is the highest."""
        return tuple(reversed(self.names))

    def evaluate(self, poly):
        env = dict(zip(self.names, self.generators))
        acc = self.tower.embed(0)
        for e, c in poly.terms.items():
            term = self.tower.embed(c)
            for v, k in zip(poly.vars, e):
                if k:
                    term = term * env[v] ** k
            acc = acc + term
        return acc

    def image(self, sigma):
        return RingPresentation(self.tower, [sigma(g) for g in self.generators], self.ambient)

    def describe(self):
        return {
            "generators": {n: str(g) for n, g in zip(self.names, self.generators)},
            "relations": [str(p) for p in self.relations()],
            "ambient": self.ambient,
        }

    # --- Groebner machinery --------------------------------------------
    def _ensure(self, extra=()):
        if self._gb is not None:
            return
        tower = self.tower
        top = max([_top_level(tower, g) for g in self.generators] + [0])
        dens = []
        for lvl in range(1, top + 1):
            for c in tower.levels[lvl].minpoly.c:
                dens.extend(element_dens(tower, tower.embed(c)))
        for g in self.generators:
            dens.extend(element_dens(tower, g))
        amb = _Ambient(tower, top, dens)
        variables = amb.names + self.zvars()
        polys = amb.relations(variables)
        for name, g in zip(self.names, self.generators):
            gp = amb.to_poly(g, variables)
            if gp is None:
                raise InternalInvariantError(f"generator {g} outside its own ambient algebra")
            polys.append(MultiPoly.var(variables, name) - gp)
        self._amb = amb
        self._vars = variables
        self._gb = gb_compute(polys, order="elim", variables=variables, block=len(amb.names),
                              budget=_limits.current().gb_budget)

    def relations(self):
        """Kernel generators in Q[z] (reduced Groebner basis, z-block of the elimination)."""
        if not self.generators:
            return []
        self._ensure()
        nb = len(self._amb.names)
        zv = self.zvars()
        out = []
        for p in self._gb.polys:
            if all(not any(e[:nb]) for e in p.terms):
                out.append(MultiPoly(zv, {e[nb:]: c for e, c in p.terms.items()}))
        for r in out:
            if self.evaluate(r):
                raise InternalInvariantError(f"relation {r} does not vanish on the generators")
        return out

    def _q_member(self, x):
        """(P in Q[z] with P(g) = x) or None, deciding x in Q[g]."""
        tower = self.tower
        x = tower.embed(x)
        if not self.generators:
            if tower.in_K(x) and _is_rational(tower, x):
                return MultiPoly.const((), _rational_value(tower, x))
            return None
        self._ensure()
        xp = self._amb.to_poly(x, self._vars)
        if xp is None:
            return None
        nf = normal_form(xp, self._gb)
        nb = len(self._amb.names)
        if any(any(e[:nb]) for e in nf.terms):
            return None
        P = MultiPoly(self.zvars(), {e[nb:]: c for e, c in nf.terms.items()})
        if self.evaluate(P) != x:
            raise InternalInvariantError("membership certificate does not evaluate back")
        return P

    def member(self, x, bound=None):
        """Tri-state membership of x in the Z-algebra generated by the generators."""
        bound = _limits.current().degree_bound if bound is None else bound
        P = self._q_member(x)
        if P is None:
            return MembershipResult("non-member", None, "not in the Q-algebra")
        if all(c.denominator == 1 for c in P.terms.values()):
            return MembershipResult("member", P, "integral normal form")
        if not self.relations():
            return MembershipResult("non-member", None,
                                    "unique representative has non-integral coefficients")
        return self._lattice_member(x, bound)

    def _lattice_member(self, x, bound):
        tower = self.tower
        m = len(self.generators)
        monos = monomials(m, bound + 1)
        vals = [self._mono_value(e) for e in monos]
        mult = _common_multiplier(tower, vals + [tower.embed(x)])
        flat = [_qflat(tower, v, mult) for v in vals]
        fx = _qflat(tower, x, mult)
        N = lcm(*([c.denominator for f in flat for c in f.values()] +
                  [c.denominator for c in fx.values()] + [1]))
        keys = {}

        def ivec(f):
            out = {}
            for k, c in f.items():
                idx = keys.setdefault(k, len(keys))
                out[idx] = int(c * N)
            return out

        ints = [ivec(f) for f in flat]
        ix = ivec(fx)
        # order coordinates consistently so the lattice pivots are stable
        lat = IntLattice()
        prev = None
        i = 0
        for d in range(bound + 2):
            while i < len(monos) and sum(monos[i]) == d:
                lat.insert(ints[i], i)
                i += 1
            combo = lat.find(ix)
            if combo is not None and d <= bound:
                P = MultiPoly.zero(self.zvars())
                for lab, c in combo.items():
                    P = P + MultiPoly(self.zvars(), {tuple(reversed(monos[lab])): c})
                if self.evaluate(P) != tower.embed(x):
                    raise InternalInvariantError("lattice certificate does not evaluate back")
                return MembershipResult("member", P, f"integral combination found at degree {d}")
            sig = lat.basis_signature()
            if prev is not None and sig == prev:
                return MembershipResult("non-member", None,
                                        f"Z-module of the ring stabilized at degree {d - 1}")
            prev = sig
        return MembershipResult("inconclusive", None, f"no integral certificate up to degree {bound}")

    def _mono_value(self, e):
        acc = self.tower.embed(1)
        for g, k in zip(self.generators, e):
            if k:
                acc = acc * g ** k
        return acc

    def contains(self, other, bound=None):
        """Tri-state containment other <= self with per-generator results."""
        results = {}
        for name, g in zip(other.names, other.generators):
            results[name] = self.member(g, bound)
        statuses = {r.status for r in results.values()}
        if statuses <= {"member"}:
            return "member", results
        if "non-member" in statuses:
            return "non-member", results
        return "inconclusive", results

    def fraction_field_certificates(self, targets, bound=None):
        """Write each target as p(g)/q(g) with p, q integral; None for a target when the
        bounded search finds nothing."""
        bound = _limits.current().degree_bound if bound is None else bound
        out = {}
        for label, x in targets:
            out[label] = self._fraction_of(label, self.tower.embed(x), bound)
        return out

    def _fraction_of(self, label, x, bound):
        tower = self.tower
        m = len(self.generators)
        if x == tower.embed(0):
            return FractionCertificate(label, MultiPoly.zero(self.zvars()),
                                       MultiPoly.const(self.zvars(), 1))
        for d in range(bound + 1):
            monos = monomials(m, d)
            vals = [self._mono_value(e) for e in monos]
            shifted = [x * v for v in vals]
            mult = _common_multiplier(tower, vals + shifted)
            ech = Echelon(Fraction(1))
            basis = []
            for e, v in zip(monos, vals):
                if ech.add(_qflat(tower, v, mult), ("p", e)) is None:
                    basis.append(e)
            vmap = dict(zip(monos, vals))
            for e in basis:
                dep = ech.add(_qflat(tower, x * vmap[e], mult), ("q", e))
                if dep is None:
                    continue
                q = {e: Fraction(1)}
                p = {}
                for (kind, f), c in dep.items():
                    if kind == "q":
                        q[f] = q.get(f, 0) - c
                    else:
                        p[f] = p.get(f, 0) + c
                return self._scaled_certificate(label, x, p, q)
        return None

    def _scaled_certificate(self, label, x, p, q):
        zv = self.zvars()
        den = lcm(*[c.denominator for c in list(p.values()) + list(q.values())])
        P = MultiPoly(zv, {tuple(reversed(e)): c * den for e, c in p.items()})
        Q = MultiPoly(zv, {tuple(reversed(e)): c * den for e, c in q.items()})
        g = 0
        for c in list(P.terms.values()) + list(Q.terms.values()):
            g = _gcd_frac(g, c)
        if g:
            P, Q = P * (1 / g), Q * (1 / g)
        qv = self.evaluate(Q)
        if not qv or x * qv != self.evaluate(P):
            raise InternalInvariantError(f"fraction certificate for {label} failed")
        return FractionCertificate(label, P, Q)


def _gcd_frac(a, b):
    return Fraction(gcd(int(a), int(b)))


def _is_rational(tower, x):
    c = _coords(tower, x)
    if not c:
        return True
    if len(c) != 1 or any(next(iter(c))):
        return False
    v = next(iter(c.values()))
    return not isinstance(v, RatFunc) or v.is_constant()


def _rational_value(tower, x):
    c = _coords(tower, x)
    if not c:
        return Fraction(0)
    v = next(iter(c.values()))
    if isinstance(v, RatFunc):
        return v.num.constant_coeff() / v.den.constant_coeff()
    return Fraction(v)


def ring_from_elements(tower, elements, ambient="L"):
    return RingPresentation(tower, elements, ambient)
