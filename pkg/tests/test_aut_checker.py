"""Aut(X/Y), the isomorphism with Gal(L/K), QGC and essential equality."""

import pytest
from hypothesis import given, settings, strategies as st

from geomodel import samples
from geomodel.aut_checker.checker import compute_aut, essentially_equal_probe, iso_check, qgc_check
from geomodel.pipeline import Pipeline
from geomodel.scheme_builder.rings import ring_from_elements

MODELS = ["sqrt2", "s3", "cyclotomic5", "elliptic", "degenerate", "s3_zc"]


@pytest.fixture(scope="module")
def pipes():
    return {n: Pipeline.from_text(samples.text(n)) for n in MODELS}


@pytest.mark.parametrize("name", ["sqrt2", "s3", "cyclotomic5", "elliptic", "degenerate"])
def test_constructed_models_satisfy_theorem(pipes, name):
    p = pipes[name]
    aut = compute_aut(p.model)
    rep = iso_check(aut, p.group)
    assert rep.passed and rep.homomorphism and rep.surjective
    assert aut.order == p.group.order and aut.conclusive
    assert qgc_check(p.model).verdict == "true"


def test_hand_assembled_chart_has_smaller_aut(pipes):
    p = pipes["s3_zc"]
    aut = compute_aut(p.model)
    assert aut.order == 2 and aut.elements[0] == 0
    rep = iso_check(aut, p.group)
    assert rep.homomorphism and not rep.surjective and not rep.passed
    # the stabilizer of Z[c] is the subgroup fixing c
    c = p.tower.nf("c")
    for i in aut.elements:
        assert p.group.elements[i](c) == c
    for i, (chart, reason) in aut.rejected.items():
        assert chart == "U" and "outside" in reason


@given(st.sampled_from(["s3_zc", "elliptic", "sqrt2"]))
@settings(max_examples=6, deadline=None)
def test_qgc_monotone_in_bound(name):
    p = Pipeline.from_text(samples.text(name))
    verdicts = [qgc_check(p.model, bound=b).verdict for b in range(1, 7)]
    decided = [v for v in verdicts if v != "inconclusive"]
    # once decided, a larger bound never changes or withdraws the verdict
    assert len(set(decided)) <= 1
    first = next((i for i, v in enumerate(verdicts) if v != "inconclusive"), len(verdicts))
    assert all(v != "inconclusive" for v in verdicts[first:])


def test_qgc_witness_is_a_conjugate(pipes):
    v = qgc_check(pipes["s3_zc"].model)
    assert v.verdict == "refuted" and v.conjugates == {"U": 3}
    w = v.witnesses["U"]
    assert w["conjugate"] in w["all_conjugates"] and w["conjugate"] != ["c"]


def test_essential_equality_half_lattice(towers):
    T = towers["sqrt2"]
    d1 = ring_from_elements(T, [T.nf("a")])
    d2 = ring_from_elements(T, [T.nf("a/2")])
    v = essentially_equal_probe(d1, d2)
    assert v.verdict == "pass-on-probes" and v.fraction_fields == "certified"
    assert all(row["holds"] == "yes" for row in v.table)


def test_essential_equality_t_and_inverse(towers):
    E = towers["elliptic"]
    d1 = ring_from_elements(E, [E.nf("t")], "K")
    d2 = ring_from_elements(E, [E.nf("1/t")], "K")
    v = essentially_equal_probe(d1, d2)
    assert v.verdict == "pass-on-probes"
    row = next(r for r in v.table if r["x"] == "t")
    assert (row["x_in_D1"], row["x_in_D2"], row["inv_in_D1"], row["inv_in_D2"]) == ("yes", "no", "no", "yes")


def test_essential_equality_identical_and_refuted(pipes):
    p = pipes["s3_zc"]
    ring = p.model.cover_x.charts[0].ring
    assert essentially_equal_probe(ring, ring).verdict == "equal"
    verdicts = [e.verdict for e in p.essential_probes["U"]]
    assert verdicts[0] == "equal" and "refuted" in verdicts[1:]
    refuted = next(e for e in p.essential_probes["U"] if e.verdict == "refuted")
    assert refuted.witness["holds"] == "no"
