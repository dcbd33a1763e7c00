"""Input parsing, ring presentations, covers and the construction of X."""

import json

import pytest
from hypothesis import given, settings, strategies as st

from geomodel import samples
from geomodel.errors import Inconclusive, InputError, NotReducedError, ParseError, UnknownSymbolError
from geomodel.pipeline import Pipeline
from geomodel.scheme_builder.inputs import parse_model_input, serialize_model_spec
from geomodel.scheme_builder.model import (
    build_chart_ring, build_delta, compare_rings, conjugate_charts, invariant_subring_probe,
)
from geomodel.scheme_builder.rings import ring_from_elements


def _sample(name):
    return json.loads(samples.text(name))


def _parse_error(data):
    with pytest.raises(InputError) as info:
        parse_model_input(json.dumps(data, indent=2))
    return info.value


# ------------------------------------------------------------------- inputs
def test_unbalanced_min_poly_reports_line_and_column():
    d = _sample("elliptic")
    d["extension"]["algebraics"][0]["min_poly"] = "s^2 - (t^3 - t"
    err = _parse_error(d)
    assert isinstance(err, ParseError)
    assert err.column == 15 and err.line is not None
    assert "extension.algebraics[0].min_poly" in str(err)
    assert "opened at column 7" in str(err)


def test_duplicate_chart_name():
    d = _sample("elliptic")
    d["cover"]["charts"][1]["name"] = "V1"
    assert "duplicate chart name 'V1'" in str(_parse_error(d))


def test_unknown_symbol_in_chart():
    d = _sample("elliptic")
    d["cover"]["charts"][1]["generators"] = ["q"]
    assert isinstance(_parse_error(d), UnknownSymbolError)


def test_extension_transcendentals_rejected():
    d = _sample("elliptic")
    d["extension"]["transcendentals"] = ["u"]
    assert "infinite" in str(_parse_error(d))


def test_invalid_json():
    with pytest.raises(ParseError) as info:
        parse_model_input("{not json")
    assert info.value.line == 1 and info.value.column == 2


@pytest.mark.parametrize("name", samples.NAMES)
def test_serialize_round_trip(name):
    spec = parse_model_input(samples.text(name))
    again = parse_model_input(serialize_model_spec(spec))
    assert again == spec
    assert serialize_model_spec(again) == serialize_model_spec(spec)


_gen_texts = st.sampled_from(["t", "1/t", "t^2 + 1", "(t - 1)/(t + 2)", "2*t", "-t^3"])


@given(st.lists(st.lists(_gen_texts, max_size=3), min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_round_trip_random_covers(chart_gens):
    d = _sample("elliptic")
    d["cover"] = {"charts": [{"name": f"V{i}", "generators": g} for i, g in enumerate(chart_gens)],
                  "overlaps": []}
    spec = parse_model_input(json.dumps(d))
    assert parse_model_input(serialize_model_spec(spec)) == spec


# -------------------------------------------------------------------- rings
def test_sqrt2_kernel(towers):
    T = towers["sqrt2"]
    ring = ring_from_elements(T, [T.nf("a"), T.nf("-a")])
    assert [str(p) for p in ring.relations()] == ["z2 + z1", "z1^2 - 2"]


def test_membership_tri_state(towers):
    T = towers["sqrt2"]
    za = ring_from_elements(T, [T.nf("a")])
    assert za.member(T.nf("a^3 + 1")).member
    assert za.member(T.nf("a/2")).status == "non-member"
    half = ring_from_elements(T, [T.nf("a/2")])
    for text in ("a", "1/2", "1/a", "2/a"):
        r = half.member(T.nf(text))
        assert r.member
        assert half.evaluate(r.certificate) == T.nf(text)
    E = towers["elliptic"]
    big = ring_from_elements(E, [E.nf("t"), E.nf("1/t"), E.nf("s")])
    assert big.member(E.nf("s/2")).status == "inconclusive"


def test_s3_membership(towers):
    T = towers["s3"]
    zc = ring_from_elements(T, [T.nf("c")])
    assert zc.member(T.nf("c*w")).status == "non-member"
    assert zc.member(T.nf("c^4 - 3*c")).member


def test_fraction_field_certificates(towers):
    E = towers["elliptic"]
    inv = ring_from_elements(E, [E.nf("1/t")], "K")
    certs = inv.fraction_field_certificates([("t", E.nf("t"))])
    cert = certs["t"]
    assert cert is not None
    assert inv.evaluate(cert.numerator) == E.nf("t") * inv.evaluate(cert.denominator)
    sq = ring_from_elements(E, [E.nf("t^2")], "K")
    assert sq.fraction_field_certificates([("t", E.nf("t"))])["t"] is None


def test_relations_vanish(towers):
    E = towers["elliptic"]
    ring = ring_from_elements(E, [E.nf("t"), E.nf("1/t"), E.nf("s"), E.nf("-s")])
    rels = ring.relations()
    assert rels
    for p in rels:
        assert not ring.evaluate(p)


def test_compare_rings(towers):
    T = towers["sqrt2"]
    a = ring_from_elements(T, [T.nf("a")])
    b = ring_from_elements(T, [T.nf("-a")])
    c = ring_from_elements(T, [T.nf("a/2")])
    assert compare_rings(a, b)[0] == "same"
    verdict, reason = compare_rings(a, c)
    assert verdict == "different" and "a" in reason


# ------------------------------------------------------------------- covers
def test_cover_not_reduced():
    d = _sample("elliptic")
    d["cover"]["charts"][1]["generators"] = ["t"]
    d["cover"]["overlaps"] = []
    with pytest.raises(NotReducedError) as info:
        Pipeline.from_text(json.dumps(d)).cover_report
    assert info.value.pair == ("V1", "V2")


def test_fraction_field_too_small():
    d = _sample("elliptic")
    d["cover"] = {"charts": [{"name": "V", "generators": ["t^2"]}], "overlaps": []}
    with pytest.raises(Inconclusive, match="fraction field of chart V"):
        Pipeline.from_text(json.dumps(d)).cover_report


def test_delta_and_chart_ring(pipeline):
    p = pipeline("s3")
    delta, delta_prime = build_delta(p.nice_basis, p.group)
    assert [str(x) for x in delta] == ["c", "-c*w - c", "c*w", "w", "-w - 1"]
    assert delta_prime == delta
    base = p.cover_y.charts[0].ring
    ring, ff = build_chart_ring(base, delta)
    for g in delta:
        assert ring.member(g).member
    assert ff


def test_elliptic_model_shape(pipeline):
    p = pipeline("elliptic")
    m = p.model
    assert m.constructed
    assert m.affine_shape() == {"V1": 1, "V2": 1, "V12": 1}
    assert m.chart_map == {"U_V1": "V1", "U_V2": "V2", "U_V12": "V12"}
    for c in m.cover_x.all_charts():
        assert not c.fraction_field_missing


def test_degenerate_model(pipeline):
    p = pipeline("degenerate")
    assert p.group.order == 1
    assert p.qgc.verdict == "true" and p.iso.passed


def test_conjugates(pipeline):
    p = pipeline("s3_zc")
    ring = p.model.cover_x.charts[0].ring
    cs = conjugate_charts(ring, p.group)
    assert len(cs.rings) == 3 and not cs.singleton
    assert sorted(cs.assignment) == [0, 0, 1, 1, 2, 2]
    q = pipeline("s3")
    for c in q.model.cover_x.all_charts():
        assert conjugate_charts(c.ring, q.group).singleton


def test_invariant_probe_refutes_non_integral_delta():
    p = Pipeline.from_text(samples.text("sqrt2"))
    T = p.tower
    base = p.cover_y.charts[0].ring
    ring = ring_from_elements(T, [T.nf("a/2"), T.nf("-a/2")])
    v = invariant_subring_probe(ring, p.group, base, bound=2)
    assert v.status == "refuted"
    assert v.witness["kind"] == "orbit-product"
    assert v.witness["value"] == "-1/2"
