"""Construction reports: JSON-safe dicts and their text rendering."""

import json

from .. import __version__
from .. import limits as _limits

__all__ = ["Report", "render_json", "render_text"]


def _gal_section(p):
    G = p.group
    fixed = p.fixed_field
    pair = G.noncommuting_pair()
    return {
        "order": G.order,
        "degree": p.tower.degree_over_k(),
        "elements": [{"index": i, "images": s.describe()} for i, s in enumerate(G.elements)],
        "table": G.table,
        "abelian": G.is_abelian(),
        "cyclic": G.is_cyclic(),
        "noncommuting_pair": list(pair) if pair else None,
        "element_orders": [G.element_order(i) for i in range(G.order)],
        "fixed_field": {"dimension": fixed.fixed_dimension, "is_galois": fixed.is_galois},
    }


def _field_section(p):
    t = p.tower
    out = t.describe()
    out["K_symbols"] = t.k_symbols()
    out["L_symbols"] = t.l_symbols()
    out["degree_over_K"] = t.degree_over_k()
    return out


def _quasi_galois_section(p):
    q = p.quasi_galois
    return {"verdict": q.verdict, "scope": q.scope, "per_generator": q.per_generator}


def _nice_basis_section(p):
    rep = p.nice_basis_report
    return {
        "elements": [str(x) for x in p.nice_basis],
        "passed": rep.passed, "r": rep.r, "n": rep.n,
        "clauses": rep.clauses, "witnesses": rep.witnesses,
    }


def _cover_y_section(p):
    cov = p.cover_y
    rep = p.cover_report
    return {
        "charts": [c.describe() for c in cov.charts],
        "overlaps": [
            {"charts": list(o.pair), "chart": o.chart.describe(), "inclusions": o.inclusions}
            for o in cov.overlaps
        ],
        "validation": rep.as_dict(),
    }


def _model_section(p):
    m = p.model
    shape = m.affine_shape()
    y_names = [c.name for c in p.cover_y.all_charts()]
    over = {y: shape.get(y, 0) for y in y_names}
    # f is affine chart-wise when each Y-chart has exactly one X-chart over it
    affine = all(v == 1 for v in over.values())
    charts = m.cover_x.all_charts()
    kx = all(not c.fraction_field_missing for c in charts)
    return {
        "constructed": m.constructed,
        "delta": [str(d) for d in m.delta],
        "delta_prime": [str(d) for d in m.delta],
        "charts": [dict(c.describe(), over=m.chart_map[c.name]) for c in m.cover_x.charts],
        "overlaps": [
            {"charts": list(o.pair), "chart": dict(o.chart.describe(), over=m.chart_map[o.chart.name])}
            for o in m.cover_x.overlaps
        ],
        "chart_map": m.chart_map,
        "base_inclusions": m.inclusions,
        "f_affine": {"x_charts_over_each_y_chart": over, "verdict": affine},
        "k_X_equals_L": {
            "verdict": kx,
            "charts_missing_certificates": {
                c.name: c.fraction_field_missing for c in charts if c.fraction_field_missing
            },
        },
    }


def _aut_section(p):
    a = p.aut
    iso = p.iso
    return {
        "order": a.order,
        "galois_indices": a.elements,
        "table": a.table,
        "undecided": a.undecided,
        "rejected": {str(i): {"chart": c, "reason": r} for i, (c, r) in sorted(a.rejected.items())},
        "iso": {
            "passed": iso.passed, "aut_order": iso.aut_order, "gal_order": iso.gal_order,
            "bijection": [list(x) for x in iso.bijection],
            "homomorphism": iso.homomorphism, "surjective": iso.surjective,
        },
    }


def _qgc_section(p):
    q = p.qgc
    return {"verdict": q.verdict, "conjugates": q.conjugates, "witnesses": q.witnesses,
            "criterion": "single conjugate per chart"}


def _probe_section(p):
    inv = {
        name: {
            "status": v.status, "bound": v.bound, "witness": v.witness,
            "probes": [{"kind": k, "monomial": list(e), "value": val, "membership": st}
                       for k, e, val, st in v.probes],
        }
        for name, v in p.invariant_probes.items()
    }
    ess = {
        name: [{"verdict": e.verdict, "fraction_fields": e.fraction_fields,
                "witness": e.witness, "table": e.table} for e in vs]
        for name, vs in p.essential_probes.items()
    }
    return {"invariant_subring": inv, "essential_equality": ess}


def _worst(statuses, order):
    for s in order:
        if s in statuses:
            return s
    return order[-1]


SECTIONS = {
    "field": _field_section,
    "galois": _gal_section,
    "quasi_galois": _quasi_galois_section,
    "nice_basis": _nice_basis_section,
    "cover_y": _cover_y_section,
    "model": _model_section,
    "aut": _aut_section,
    "qgc": _qgc_section,
    "probes": _probe_section,
}


class Report:
    """Accumulates sections for one command; an error stops accumulation."""

    def __init__(self, command, pipeline, timings=False):
        self.command = command
        self.p = pipeline
        self.timings = timings
        self.data = {}
        self.error = None

    def add(self, *names):
        for n in names:
            self.data[n] = SECTIONS[n](self.p)

    def fail(self, exc):
        self.error = {"type": type(exc).__name__, "message": str(exc),
                      "exit_code": getattr(exc, "exit_code", 5)}
        for attr in ("fixed_dimension", "witness", "pair"):
            v = getattr(exc, attr, None)
            if v is not None:
                self.error[attr] = list(v) if isinstance(v, tuple) else v

    def verdicts(self):
        d = self.data
        out = {}
        if "galois" in d:
            out["is_galois"] = d["galois"]["fixed_field"]["is_galois"]
            out["galois_order"] = d["galois"]["order"]
        if "quasi_galois" in d:
            out["quasi_galois"] = d["quasi_galois"]["verdict"]
        if "nice_basis" in d:
            out["nice_basis"] = d["nice_basis"]["passed"]
        if "cover_y" in d:
            out["fraction_field_Y"] = True
        if "model" in d:
            out["f_affine"] = d["model"]["f_affine"]["verdict"]
            out["k_X_equals_L"] = d["model"]["k_X_equals_L"]["verdict"]
        if "aut" in d:
            out["aut_order"] = d["aut"]["order"]
            out["aut_iso"] = d["aut"]["iso"]["passed"]
        if "qgc" in d:
            out["qgc"] = d["qgc"]["verdict"]
        if "probes" in d:
            inv = {v["status"] for v in d["probes"]["invariant_subring"].values()}
            out["invariant_subring"] = _worst(inv, ["refuted", "inconclusive"] + sorted(inv))
            ess = {e["verdict"] for vs in d["probes"]["essential_equality"].values() for e in vs}
            out["essential_equality"] = _worst(
                ess, ["refuted", "inconclusive", "pass-on-probes", "equal"])
        return out

    def as_dict(self):
        lim = _limits.current()
        out = {
            "tool": {"name": "geomodel", "version": __version__},
            "command": self.command,
            "seed": lim.seed,
            "limits": {"degree_bound": lim.degree_bound, "gb_budget": lim.gb_budget,
                       "factor_degree_cap": lim.factor_degree_cap},
            "input": self.p.spec.to_dict(),
            "verdicts": self.verdicts(),
        }
        out.update(self.data)
        if self.error:
            out["error"] = self.error
        if self.timings:
            out["timings_ms"] = dict(self.p.timings)
        return out


def render_json(report):
    return json.dumps(report.as_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    return str(v)


def render_text(report):
    d = report.as_dict()
    lines = [f"geomodel {d['tool']['version']}  command: {d['command']}  seed: {d['seed']}"]

    def head(t):
        lines.append("")
        lines.append(f"== {t} ==")

    if "field" in d:
        f = d["field"]
        head("Field")
        lines.append("transcendentals: " + (", ".join(f["transcendentals"]) or "none"))
        for a in f["algebraics"]:
            side = "K" if a["name"] in f["K_symbols"] else "L"
            lines.append(f"{a['name']} ({side}): {a['min_poly']} = 0")
        lines.append(f"[L:K] = {f['degree_over_K']}")
    if "galois" in d:
        g = d["galois"]
        head("Galois group")
        kind = "abelian" if g["abelian"] else "nonabelian"
        lines.append(f"order {g['order']}, {kind}" + (", cyclic" if g["cyclic"] else ""))
        for e in g["elements"]:
            imgs = ", ".join(f"{k} -> {v}" for k, v in e["images"].items()) or "identity on K"
            lines.append(f"  g{e['index']}: {imgs}")
        lines.append("table (row i, column j holds gi*gj):")
        for row in g["table"]:
            lines.append("  " + " ".join(str(x) for x in row))
        if g["noncommuting_pair"]:
            i, j = g["noncommuting_pair"]
            lines.append(f"noncommuting pair: g{i}, g{j}")
        lines.append(f"fixed subspace dimension {g['fixed_field']['dimension']}")
    if "quasi_galois" in d:
        q = d["quasi_galois"]
        head("Quasi-galois check")
        for n, info in q["per_generator"].items():
            lines.append(f"{n}: min poly {info['min_poly']}, {info['roots_in_L']} of "
                         f"{info['degree']} roots in L")
    if "nice_basis" in d:
        nb = d["nice_basis"]
        head("Nice basis")
        lines.append("elements: " + (", ".join(nb["elements"]) or "none"))
        lines.append("clauses: " + ", ".join(f"{k}={_fmt(v)}" for k, v in nb["clauses"].items()))
    if "cover_y" in d:
        head("Y cover")
        for c in d["cover_y"]["charts"]:
            _chart_lines(lines, c)
        for o in d["cover_y"]["overlaps"]:
            lines.append(f"overlap of {o['charts'][0]} and {o['charts'][1]}:")
            _chart_lines(lines, o["chart"])
    if "model" in d:
        m = d["model"]
        head("X model")
        lines.append("constructed: " + _fmt(m["constructed"]))
        lines.append("Delta: " + (", ".join(m["delta"]) or "empty"))
        for c in m["charts"]:
            _chart_lines(lines, c)
        for o in m["overlaps"]:
            lines.append(f"overlap of {o['charts'][0]} and {o['charts'][1]}:")
            _chart_lines(lines, o["chart"])
    if "aut" in d:
        a = d["aut"]
        head("Aut(X/Y)")
        lines.append(f"order {a['order']} (Galois indices {a['galois_indices']})")
        for k, v in sorted(a["rejected"].items()):
            lines.append(f"  g{k} moves chart {v['chart']}: {v['reason']}")
    if "qgc" in d:
        q = d["qgc"]
        head("Quasi-galois closedness")
        for c, n in q["conjugates"].items():
            lines.append(f"{c}: {n} distinct conjugate(s)")
        for c, w in q["witnesses"].items():
            if "conjugate" in w:
                lines.append(f"  witness for {c}: Z[{', '.join(w['conjugate'])}] ({w['reason']})")
    if "probes" in d:
        pr = d["probes"]
        head("Probes")
        for c, v in pr["invariant_subring"].items():
            lines.append(f"invariant subring {c}: {v['status']} ({len(v['probes'])} probes)")
        for c, vs in pr["essential_equality"].items():
            lines.append(f"essential equality {c}: " + ", ".join(e["verdict"] for e in vs))
    if "error" in d:
        head("Error")
        lines.append(f"{d['error']['type']}: {d['error']['message']}")
    if "timings_ms" in d:
        head("Timings (ms, inclusive)")
        for k, v in d["timings_ms"].items():
            lines.append(f"{k}: {v}")
    head("Verdicts")
    for k, v in sorted(d["verdicts"].items()):
        lines.append(f"{k}: {_fmt(v)}")
    return "\n".join(lines) + "\n"


def _chart_lines(lines, c):
    over = f" over {c['over']}" if "over" in c else ""
    gens = ", ".join(f"{k} = {v}" for k, v in c["generators"].items()) or "none (the ring Z)"
    lines.append(f"chart {c['name']}{over}: {gens}")
    if c["relations"]:
        lines.append("  relations: " + "; ".join(c["relations"]))
