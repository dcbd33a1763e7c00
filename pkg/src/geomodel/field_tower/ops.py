"""Minimal polynomials, nice-basis validation and the quasi-galois check."""

from dataclasses import dataclass, field

from ..errors import CandidateError
from ..exact_poly.linalg import Echelon
from ..exact_poly.roots import roots_in_tower
from ..exact_poly.upoly import UPoly, interpolate
from .tower import FieldElement, upoly_to_text

__all__ = [
    "min_poly", "char_poly", "inv", "kvec", "k_span_closure",
    "NiceBasisReport", "validate_nice_basis", "QuasiGaloisVerdict", "quasi_galois_check",
]


def inv(x):
    """Multiplicative inverse (raises ZeroDivision on zero)."""
    if isinstance(x, FieldElement):
        return x.inverse()
    return 1 / x


def kvec(tower, x):
    """Coordinates of x over K as a sparse dict index -> K element."""
    return {i: c for i, c in enumerate(tower.k_coordinates(x)) if c}


def min_poly(tower, x, var="x"):
    """Monic minimal polynomial of x over K, as a UPoly over the K field.

    Found as the first K-linear dependency among 1, x, x^2, ...
    """
    x = tower.embed(x)
    K = tower.K
    ech = Echelon(K.one)
    power = tower.embed(1)
    k = 0
    while True:
        dep = ech.add(kvec(tower, power), k)
        if dep is not None:
            cs = [K.zero] * (k + 1)
            for i, c in dep.items():
                cs[i] = -c
            cs[k] = K.one
            return UPoly(K, cs, var)
        power = power * x
        k += 1


def char_poly(tower, x, var="x"):
    """Characteristic polynomial of multiplication by x on L over K."""
    n = tower.degree_over_k()
    K = tower.K
    basis_vals = [tower.from_k_coordinates([K.one if j == i else K.zero for j in range(n)])
                  for i in range(n)]
    x = tower.embed(x)

    def det_at(x0):
        # det(x0*I - M_x) by Gaussian elimination over K
        rows = []
        for b in basis_vals:
            img = tower.k_coordinates(b * x)
            rows.append(img)
        m = [[(K.one * x0 if i == j else K.zero) - rows[j][i] for j in range(n)] for i in range(n)]
        det = K.one
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col]), None)
            if piv is None:
                return K.zero
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            det = det * m[col][col]
            inv_p = K.one / m[col][col]
            for r in range(col + 1, n):
                f = m[r][col] * inv_p
                if f:
                    for c in range(col, n):
                        m[r][c] = m[r][c] - f * m[col][c]
        return det

    pts = list(range(n + 1))
    return interpolate(K, pts, [det_at(p) for p in pts], var)


def k_span_closure(tower, elements):
    """K-basis of the K-algebra generated by `elements` (closure under products).

    Returns (echelon, basis) where basis is a list of (element, word) with
    word the tuple of element indices whose product gives it.
    """
    K = tower.K
    ech = Echelon(K.one)
    one = tower.embed(1)
    basis = [(one, ())]
    ech.add(kvec(tower, one), ())
    frontier = [(one, ())]
    seen = {()}
    while frontier:
        nxt = []
        for val, word in frontier:
            for i, e in enumerate(elements):
                w = tuple(sorted(word + (i,)))
                if w in seen:
                    continue
                seen.add(w)
                v = val * e
                if ech.add(kvec(tower, v), w) is None:
                    basis.append((v, w))
                    nxt.append((v, w))
        frontier = nxt
    return ech, basis


@dataclass
class NiceBasisReport:
    passed: bool
    r: int
    n: int
    clauses: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)


def validate_nice_basis(tower, candidates):
    """Check conditions (i)-(iii) of a nice basis of L over K.

    Only finite L/K is supported, so the transcendental prefix is empty
    (r = 0) and condition (iii) is linear independence over K.
    """
    cands = []
    for c in candidates:
        if isinstance(c, str):
            c = tower.nf(c)
        try:
            cands.append(tower.embed(c))
        except TypeError as exc:
            raise CandidateError(f"candidate {c} is not an element of L") from exc
    n = len(cands)
    d = tower.degree_over_k()
    clauses, wit = {}, {}
    in_k = [str(c) for c in cands if tower.in_K(c)]
    clauses["outside_K"] = not in_k
    if in_k:
        wit["in_K"] = in_k
    # (i) L = K(candidates)
    if d == 1:
        clauses["i"] = True
    else:
        ech, basis = k_span_closure(tower, cands)
        clauses["i"] = ech.rank == d
        if clauses["i"]:
            certs = {}
            for name in tower.l_symbols():
                g = tower.symbols()[name]
                combo = ech.contains(kvec(tower, g))
                certs[name] = {"+".join(map(str, w)) or "1": str(v) for w, v in sorted(combo.items())}
            wit["generator_certificates"] = certs
        else:
            wit["span_dimension"] = ech.rank
            wit["degree"] = d
    # (ii) transcendence part: L/K algebraic forces r = 0
    clauses["ii"] = True
    wit["r"] = 0
    # (iii) linear independence over K(t_1..t_r) = K
    ech = Echelon(tower.K.one)
    dep = None
    for i, c in enumerate(cands):
        dep = ech.add(kvec(tower, c), i)
        if dep is not None:
            wit["dependency"] = {"index": i, "combination": {str(k): str(v) for k, v in dep.items()}}
            break
    clauses["iii"] = dep is None
    return NiceBasisReport(all(clauses.values()), 0, n, clauses, wit)


@dataclass
class QuasiGaloisVerdict:
    verdict: bool
    scope: str
    per_generator: dict


def quasi_galois_check(tower):
    """Does every L-level generator's minimal polynomial over K split in L?

    This checks the generators only ("certified-on-generators").
    """
    per = {}
    env = tower.symbols()
    for name in tower.l_symbols():
        g = env[name]
        m = min_poly(tower, g)
        roots = roots_in_tower(m, tower, hints=[g])
        per[name] = {
            "min_poly": upoly_to_text(m, "x"),
            "degree": m.degree,
            "roots_in_L": len(roots),
            "splits": len(roots) == m.degree,
        }
    return QuasiGaloisVerdict(all(v["splits"] for v in per.values()), "certified-on-generators", per)
