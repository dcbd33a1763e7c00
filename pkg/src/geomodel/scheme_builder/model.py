"""Chart covers of Y and X and the chart-wise construction of X over Y."""

from dataclasses import dataclass, field

from .. import limits as _limits
from ..errors import Inconclusive, InputError, InternalInvariantError, NotReducedError
from ..exact_poly.roots import sort_key
from ..galois_engine.galois import orbit
from .rings import RingPresentation, monomials

__all__ = [
    "Chart", "Overlap", "CoverComplex", "ModelX", "CoverReport", "ConjugateSet", "ProbeVerdict",
    "make_y_cover", "make_x_cover", "validate_cover", "build_delta", "build_chart_ring",
    "build_model", "conjugate_charts", "invariant_subring_probe", "compare_rings",
]


@dataclass
class Chart:
    name: str
    ring: RingPresentation
    side: str  # "Y" or "X"
    fraction_field: dict = field(default_factory=dict)  # label -> FractionCertificate
    fraction_field_missing: list = field(default_factory=list)

    def describe(self):
        out = {"name": self.name, "side": self.side}
        out.update(self.ring.describe())
        out["fraction_field"] = [c.as_dict() for _, c in sorted(self.fraction_field.items())]
        if self.fraction_field_missing:
            out["fraction_field_missing"] = list(self.fraction_field_missing)
        return out


@dataclass
class Overlap:
    pair: tuple
    chart: Chart
    inclusions: dict = field(default_factory=dict)  # chart name -> {generator: certificate}


@dataclass
class CoverComplex:
    charts: list
    overlaps: list = field(default_factory=list)

    def all_charts(self):
        return list(self.charts) + [o.chart for o in self.overlaps]

    def chart(self, name):
        for c in self.all_charts():
            if c.name == name:
                return c
        raise KeyError(name)

    def reduced_witness(self):
        """First pair of main charts with the same name or generator set, else None."""
        for i, a in enumerate(self.charts):
            for b in self.charts[i + 1:]:
                if a.name == b.name or a.ring.same_generators(b.ring):
                    return (a.name, b.name)
        return None


@dataclass
class ModelX:
    cover_x: CoverComplex
    chart_map: dict  # X-chart name -> Y-chart name
    delta: list
    group: object
    constructed: bool = True
    inclusions: dict = field(default_factory=dict)  # X-chart -> certificate of B_V in A_V

    def affine_shape(self):
        """f is affine chart-wise: each Y-chart has exactly one X-chart over it."""
        counts = {}
        for y in self.chart_map.values():
            counts[y] = counts.get(y, 0) + 1
        return counts


def _ring(tower, texts, ambient):
    return RingPresentation(tower, [tower.nf(t) for t in texts], ambient)


def make_y_cover(spec, tower):
    charts = [Chart(n, _ring(tower, g, "K"), "Y") for n, g in spec.charts]
    overlaps = [Overlap(pair, Chart(n, _ring(tower, g, "K"), "Y")) for pair, n, g in spec.overlaps]
    return CoverComplex(charts, overlaps)


@dataclass
class CoverReport:
    reduced: bool
    fraction_field: dict  # chart -> {generator: certificate}
    overlaps: dict  # overlap chart -> {chart: status}

    def as_dict(self):
        return {
            "reduced": self.reduced,
            "fraction_field": {
                c: [cert.as_dict() for _, cert in sorted(v.items())]
                for c, v in sorted(self.fraction_field.items())
            },
            "overlaps": {k: dict(sorted(v.items())) for k, v in sorted(self.overlaps.items())},
        }


def _generator_targets(tower, upto_k):
    names = tower.k_symbols() if upto_k else tower.k_symbols() + tower.l_symbols()
    env = tower.symbols()
    return [(n, env[n]) for n in names]


def _certify_fraction_field(chart, tower, upto_k, bound, strict=True):
    targets = _generator_targets(tower, upto_k)
    certs = chart.ring.fraction_field_certificates(targets, bound)
    missing = [k for k, v in certs.items() if v is None]
    if missing and not strict:
        chart.fraction_field = {k: v for k, v in certs.items() if v is not None}
        chart.fraction_field_missing = missing
        return None
    if missing:
        field_name = "K" if upto_k else "L"
        raise Inconclusive(
            f"fraction field of chart {chart.name} too small: no certificate for "
            f"{', '.join(missing)} in Fr = {field_name} within degree bound {bound}",
            witness={"chart": chart.name, "generators": missing},
        )
    chart.fraction_field = certs
    return certs


def _inclusion(big, small, bound):
    """Per-generator certificates that `small` lies in `big`."""
    status, results = big.ring.contains(small.ring, bound)
    return status, {n: r for n, r in results.items()}


def validate_cover(cover, tower, bound=None):
    """Reducedness, generators in K, Fr(B_V) = K and overlap containment."""
    bound = _limits.current().degree_bound if bound is None else bound
    wit = cover.reduced_witness()
    if wit:
        raise NotReducedError(*wit)
    for c in cover.all_charts():
        for g in c.ring.generators:
            if not tower.in_K(g):
                raise InputError(f"generator {g} of chart {c.name} does not lie in K")
    ff = {}
    for c in cover.all_charts():
        ff[c.name] = _certify_fraction_field(c, tower, True, bound)
    ov = {}
    for o in cover.overlaps:
        ov[o.chart.name] = {}
        for name in o.pair:
            status, results = _inclusion(o.chart, cover.chart(name), bound)
            if status == "non-member":
                bad = [n for n, r in results.items() if r.status == "non-member"]
                raise InputError(f"overlap chart {o.chart.name} does not contain chart {name} "
                                 f"(generator {bad[0]})")
            if status == "inconclusive":
                raise Inconclusive(f"containment of chart {name} in overlap {o.chart.name} "
                                   f"undecided within degree bound {bound}")
            o.inclusions[name] = {n: str(r.certificate) for n, r in results.items()}
            ov[o.chart.name][name] = status
    return CoverReport(True, ff, ov)


def build_delta(nice_basis, group):
    """Delta = Galois orbit of the nice basis; Delta' drops the (empty) transcendental part."""
    delta = orbit(group, nice_basis) if nice_basis else []
    return delta, list(delta)


def build_chart_ring(base, delta, bound=None):
    """A_V = B_V[Delta] with its kernel relations and Fr(A_V) = L certificates."""
    bound = _limits.current().degree_bound if bound is None else bound
    tower = base.tower
    ring = RingPresentation(tower, list(base.generators) + list(delta), "L")
    ring.relations()
    chart = Chart("", ring, "X")
    _certify_fraction_field(chart, tower, False, bound)
    return ring, chart.fraction_field


def _x_name(name):
    return f"U_{name}"


def build_model(cover_y, tower, group, nice_basis, bound=None):
    """One X-chart per Y-chart and per overlap chart, each B_V[Delta]."""
    bound = _limits.current().degree_bound if bound is None else bound
    delta, _ = build_delta(nice_basis, group)
    xcharts, chart_map, incl = [], {}, {}
    made = {}
    for yc in cover_y.all_charts():
        ring, ff = build_chart_ring(yc.ring, delta, bound)
        xc = Chart(_x_name(yc.name), ring, "X", ff)
        made[yc.name] = xc
        chart_map[xc.name] = yc.name
        # B_V sits in A_V generator-for-generator
        idx = {sort_key(g): n for n, g in zip(ring.names, ring.generators)}
        incl[xc.name] = {n: idx[sort_key(g)] for n, g in zip(yc.ring.names, yc.ring.generators)}
    xcharts = [made[c.name] for c in cover_y.charts]
    xover = []
    for o in cover_y.overlaps:
        ox = Overlap(tuple(_x_name(n) for n in o.pair), made[o.chart.name])
        for n in o.pair:
            # overlap inclusion of X-charts is inherited: same Delta on both sides
            ox.inclusions[_x_name(n)] = dict(o.inclusions.get(n, {}))
        xover.append(ox)
    cover_x = CoverComplex(xcharts, xover)
    model = ModelX(cover_x, chart_map, delta, group, True, incl)
    _check_model(model, cover_y)
    return model


def _check_model(model, cover_y):
    if model.cover_x.reduced_witness():
        raise InternalInvariantError("constructed X-cover is not reduced")
    if len(model.cover_x.all_charts()) != len(cover_y.all_charts()):
        raise InternalInvariantError("X-chart count differs from Y-chart count")
    keys = {sort_key(d) for d in model.delta}
    for s in model.group.elements:
        if {sort_key(s(d)) for d in model.delta} != keys:
            raise InternalInvariantError("Delta is not stable under the Galois group")
    for xc in model.cover_x.all_charts():
        yc = cover_y.chart(model.chart_map[xc.name])
        if yc.ring.generators and xc.ring.contains(yc.ring)[0] != "member":
            raise InternalInvariantError(f"X-chart {xc.name} does not contain its Y-chart ring")


def make_x_cover(spec, tower, group, cover_y, bound=None):
    """A hand-assembled X from the input's x_cover section (no construction)."""
    bound = _limits.current().degree_bound if bound is None else bound
    charts, chart_map, incl = [], {}, {}
    for name, gens, over in spec.x_charts:
        ring = _ring(tower, gens, "L")
        chart = Chart(name, ring, "X")
        yc = cover_y.chart(over)
        status, results = ring.contains(yc.ring, bound)
        if status != "member":
            raise InputError(f"x_cover chart {name} does not contain the ring of {over} ({status})")
        incl[name] = {n: str(r.certificate) for n, r in results.items()}
        # a hand-assembled chart need not have Fr = L; record instead of halting
        _certify_fraction_field(chart, tower, False, bound, strict=False)
        charts.append(chart)
        chart_map[name] = over
    cover_x = CoverComplex(charts, [])
    wit = cover_x.reduced_witness()
    if wit:
        raise NotReducedError(*wit)
    nb = [tower.nf(t) for t in spec.nice_basis_texts()]
    delta, _ = build_delta(nb, group)
    return ModelX(cover_x, chart_map, delta, group, False, incl)


@dataclass
class ConjugateSet:
    rings: list  # distinct conjugates, the chart itself first
    assignment: list  # group element index -> index into rings
    inconclusive: list  # group element indices whose comparison was undecided
    witnesses: dict = field(default_factory=dict)  # ring index -> reason it differs

    @property
    def singleton(self):
        return len(self.rings) == 1 and not self.inconclusive


def compare_rings(a, b, bound=None):
    """'same', 'different' or 'inconclusive' for two rings, with a reason."""
    bound = _limits.current().degree_bound if bound is None else bound
    if a.same_generators(b):
        return "same", "generator multisets agree"
    s1, r1 = a.contains(b, bound)
    if s1 == "non-member":
        bad = next(n for n, r in r1.items() if r.status == "non-member")
        g = b.generators[b.names.index(bad)]
        return "different", f"{g} lies outside the other ring"
    s2, r2 = b.contains(a, bound)
    if s2 == "non-member":
        bad = next(n for n, r in r2.items() if r.status == "non-member")
        g = a.generators[a.names.index(bad)]
        return "different", f"{g} lies outside the conjugate ring"
    if s1 == s2 == "member":
        return "same", "mutual membership certificates"
    return "inconclusive", "membership undecided within the degree bound"


def conjugate_charts(ring, group, bound=None):
    """{sigma(A) : sigma in G}, deduplicated."""
    bound = _limits.current().degree_bound if bound is None else bound
    rings = [ring]
    assignment, undecided, wit = [], [], {}
    for i, s in enumerate(group.elements):
        img = ring if i == 0 else ring.image(s)
        hit = None
        pending = False
        reason = ""
        for j, r in enumerate(rings):
            verdict, why = compare_rings(r, img, bound)
            if verdict == "same":
                hit = j
                break
            if verdict == "inconclusive":
                pending = True
            elif j == 0:
                reason = why
        if hit is None:
            if pending:
                undecided.append(i)
            rings.append(img)
            hit = len(rings) - 1
            if not pending:
                wit[hit] = reason
        assignment.append(hit)
    return ConjugateSet(rings, assignment, undecided, wit)


@dataclass
class ProbeVerdict:
    status: str  # "certified-to-degree-d", "refuted" or "inconclusive"
    bound: int
    probes: list  # (kind, monomial, value text, membership status)
    witness: dict = None


def invariant_subring_probe(ring, group, base, bound=None, delta=None):
    """Orbit sums and products of Delta-monomials up to `bound` must lie in B_V."""
    bound = _limits.current().degree_bound if bound is None else bound
    tower = ring.tower
    if delta is None:
        bkeys = {sort_key(g) for g in base.generators}
        delta = [g for g in ring.generators if sort_key(g) not in bkeys]
    if not delta:
        return ProbeVerdict(f"certified-to-degree-{bound}", bound, [], None)
    m = len(delta)
    probes, seen = [], set()
    status = f"certified-to-degree-{bound}"
    witness = None
    for e in monomials(m, bound)[1:]:
        mono = tower.embed(1)
        for d, k in zip(delta, e):
            if k:
                mono = mono * d ** k
        imgs = [s(mono) for s in group.elements]
        total = imgs[0]
        prod = imgs[0]
        for y in imgs[1:]:
            total = total + y
            prod = prod * y
        for kind, val in (("orbit-sum", total), ("orbit-product", prod)):
            k = sort_key(val)
            if k in seen:
                continue
            seen.add(k)
            r = base.member(val, bound)
            probes.append((kind, e, str(val), r.status))
            if r.status != "member" and witness is None:
                witness = {"kind": kind, "monomial": list(e), "value": str(val), "membership": r.status,
                           "reason": r.reason}
                status = "refuted" if r.status == "non-member" else "inconclusive"
    return ProbeVerdict(status, bound, probes, witness)
