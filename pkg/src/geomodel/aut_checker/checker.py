"""Aut(X/Y) as a chart stabilizer, the isomorphism check and the QGC verdict."""

from dataclasses import dataclass, field

from .. import limits as _limits
from ..errors import InternalInvariantError
from ..exact_poly.roots import sort_key
from ..scheme_builder.model import compare_rings, conjugate_charts

__all__ = [
    "AutGroup", "IsoReport", "QgcVerdict", "EssentialEqualityVerdict",
    "compute_aut", "iso_check", "qgc_check", "essentially_equal_probe",
]


@dataclass
class AutGroup:
    elements: list  # indices into the Galois group
    table: list  # induced composition table (indices into `elements`)
    undecided: list = field(default_factory=list)  # Galois indices with an inconclusive comparison
    rejected: dict = field(default_factory=dict)  # Galois index -> (chart, reason)

    @property
    def order(self):
        return len(self.elements)

    @property
    def conclusive(self):
        return not self.undecided


def compute_aut(model, bound=None):
    """sigma is in Aut(X/Y) iff sigma(A_V) = A_V for every X-chart."""
    bound = _limits.current().degree_bound if bound is None else bound
    G = model.group
    keep, undecided, rejected = [], [], {}
    charts = model.cover_x.all_charts()
    for i, s in enumerate(G.elements):
        verdict = "same"
        for c in charts:
            v, why = compare_rings(c.ring, c.ring.image(s), bound)
            if v == "different":
                verdict = "different"
                rejected[i] = (c.name, why)
                break
            if v == "inconclusive":
                verdict = "inconclusive"
        if verdict == "same":
            keep.append(i)
        elif verdict == "inconclusive":
            undecided.append(i)
    pos = {g: k for k, g in enumerate(keep)}
    table = []
    for a in keep:
        row = []
        for b in keep:
            c = G.table[a][b]
            if c not in pos:
                raise InternalInvariantError("chart stabilizer is not closed under composition")
            row.append(pos[c])
        table.append(row)
    if keep and keep[0] != 0:
        raise InternalInvariantError("identity does not stabilize the charts")
    return AutGroup(keep, table, undecided, rejected)


@dataclass
class IsoReport:
    passed: bool
    aut_order: int
    gal_order: int
    bijection: list  # (Aut index, Gal index)
    homomorphism: bool
    surjective: bool


def iso_check(aut, gal):
    """The inclusion Aut(X/Y) -> Gal(L/K) is a bijective homomorphism."""
    hom = all(
        aut.elements[aut.table[i][j]] == gal.table[a][b]
        for i, a in enumerate(aut.elements) for j, b in enumerate(aut.elements)
    )
    surj = aut.order == gal.order and not aut.undecided
    return IsoReport(hom and surj, aut.order, gal.order,
                     list(enumerate(aut.elements)), hom, surj)


@dataclass
class QgcVerdict:
    verdict: str  # "true", "refuted" or "inconclusive"
    conjugates: dict  # chart -> number of distinct conjugates found
    witnesses: dict = field(default_factory=dict)


def qgc_check(model, gal=None, bound=None):
    """Every X-chart has exactly one conjugate under Gal(L/K)."""
    bound = _limits.current().degree_bound if bound is None else bound
    gal = gal or model.group
    counts, wit = {}, {}
    verdict = "true"
    for c in model.cover_x.all_charts():
        cs = conjugate_charts(c.ring, gal, bound)
        counts[c.name] = len(cs.rings)
        if len(cs.rings) > 1 and set(cs.witnesses):
            j = min(cs.witnesses)
            sigma = cs.assignment.index(j)
            wit[c.name] = {
                "conjugate": [str(g) for g in cs.rings[j].generators],
                "sigma": gal.elements[sigma].describe(),
                "reason": cs.witnesses[j],
                "all_conjugates": [[str(g) for g in r.generators] for r in cs.rings],
            }
            verdict = "refuted"
        elif cs.inconclusive and verdict == "true":
            verdict = "inconclusive"
            wit[c.name] = {"undecided_sigma": cs.inconclusive}
    return QgcVerdict(verdict, counts, wit)


@dataclass
class EssentialEqualityVerdict:
    verdict: str  # "equal", "pass-on-probes", "refuted" or "inconclusive"
    table: list  # one row per probe
    witness: dict = None
    fraction_fields: str = "certified"


def _and(a, b):
    if a is False or b is False:
        return False
    if a is None or b is None:
        return None
    return True


def _not(a):
    return None if a is None else not a


def _tri(res):
    return {"member": True, "non-member": False}.get(res.status)


def essentially_equal_probe(d1, d2, probes=None, bound=None):
    """Probe the essential-equality condition on finitely many elements.

    For each probe x != 0 the condition is: x in D1 and D2, or
    (x in D1 minus D2) iff (1/x in D2 minus D1). This is a semidecision.
    """
    bound = _limits.current().degree_bound if bound is None else bound
    tower = d1.tower
    if d1.same_generators(d2):
        return EssentialEqualityVerdict("equal", [], None)
    ff = "certified"
    for a, b in ((d1, d2), (d2, d1)):
        certs = a.fraction_field_certificates(list(zip(b.labels, b.generators)), bound)
        if any(v is None for v in certs.values()):
            ff = "not-certified"
    if probes is None:
        base = list(d1.generators) + list(d2.generators)
        probes = list(base) + [g.inverse() if hasattr(g, "inverse") else 1 / g for g in base if g]
        probes += [x * y for i, x in enumerate(base) for y in base[i:]]
    seen, rows = set(), []
    verdict, witness = "pass-on-probes", None
    for x in probes:
        x = tower.embed(x)
        if not x or sort_key(x) in seen:
            continue
        seen.add(sort_key(x))
        xi = x.inverse() if hasattr(x, "inverse") else 1 / x
        m = {
            "x_in_D1": _tri(d1.member(x, bound)), "x_in_D2": _tri(d2.member(x, bound)),
            "inv_in_D1": _tri(d1.member(xi, bound)), "inv_in_D2": _tri(d2.member(xi, bound)),
        }
        both = _and(m["x_in_D1"], m["x_in_D2"])
        left = _and(m["x_in_D1"], _not(m["x_in_D2"]))
        right = _and(m["inv_in_D2"], _not(m["inv_in_D1"]))
        iff = None if left is None or right is None else left == right
        ok = True if (both or iff) else (None if both is None or iff is None else False)
        row = {"x": str(x), **{k: _show(v) for k, v in m.items()}, "holds": _show(ok)}
        rows.append(row)
        if ok is False and verdict != "refuted":
            verdict, witness = "refuted", row
        elif ok is None and verdict == "pass-on-probes":
            verdict = "inconclusive"
    if ff != "certified" and verdict == "pass-on-probes":
        verdict = "inconclusive"
    return EssentialEqualityVerdict(verdict, rows, witness, ff)


def _show(v):
    return {True: "yes", False: "no", None: "unknown"}[v]
