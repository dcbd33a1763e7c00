"""Galois group enumeration, its table, the fixed-field certificate and orbits."""

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from geomodel.galois_engine.galois import enumerate_gal, fixed_field_certify, orbit
from oracles import random_tower_text

NAMES = ["sqrt2", "s3", "cyclotomic5", "elliptic"]


@pytest.fixture(scope="module")
def groups(towers):
    return {n: enumerate_gal(towers[n]) for n in NAMES + ["cuberoot"]}


@pytest.mark.parametrize("name,order", [("sqrt2", 2), ("s3", 6), ("cyclotomic5", 4),
                                        ("elliptic", 2), ("cuberoot", 1)])
def test_orders(groups, name, order):
    assert groups[name].order == order
    assert groups[name].elements[0].is_identity()


@pytest.mark.parametrize("name", NAMES)
def test_automorphisms_preserve_sum_and_product(towers, groups, name):
    T, G = towers[name], groups[name]
    rng = random.Random(name)
    for _ in range(200 // len(NAMES)):
        x = T.nf(random_tower_text(rng, T))
        y = T.nf(random_tower_text(rng, T))
        for s in G.elements:
            assert s(x + y) == s(x) + s(y)
            assert s(x * y) == s(x) * s(y)


@pytest.mark.parametrize("name", NAMES)
def test_automorphisms_fix_K_and_respect_min_polys(towers, groups, name):
    T, G = towers[name], groups[name]
    k_texts = ["3/7", "-2"] + [f"({t}^2 - 3)/(2*{t} + 1)" for t in T.k_symbols()]
    for s in G.elements:
        for text in k_texts:
            k = T.nf(text)
            assert T.in_K(k) and s(k) == k
        for n in T.l_symbols():
            g = T.symbols()[n]
            level = T.levels[T.level_of(n)]
            img = s(g)
            acc = T.embed(0)
            for i, c in enumerate(level.minpoly.c):
                acc = acc + s(T.embed(c)) * img ** i
            assert not acc


@pytest.mark.parametrize("name", NAMES)
def test_table_is_a_group(groups, name):
    G = groups[name]
    n = G.order
    for a, b, c in itertools.product(range(n), repeat=3):
        assert G.table[G.table[a][b]][c] == G.table[a][G.table[b][c]]
    for a in range(n):
        assert G.table[0][a] == a == G.table[a][0]
        assert G.table[a][G.inverse(a)] == 0
        assert sorted(G.table[a]) == list(range(n))


def test_table_entries_are_compositions(towers, groups):
    T, G = towers["s3"], groups["s3"]
    gens = [T.nf(n) for n in T.l_symbols()]
    for i, j in itertools.product(range(G.order), repeat=2):
        k = G.table[i][j]
        for g in gens:
            assert G.elements[k](g) == G.elements[i](G.elements[j](g))


def test_shapes(groups):
    assert not groups["s3"].is_abelian() and groups["s3"].noncommuting_pair() is not None
    assert groups["cyclotomic5"].is_cyclic()
    assert sorted(groups["s3"].element_order(i) for i in range(6)) == [1, 2, 2, 2, 3, 3]


def test_fixed_field(towers, groups):
    v = fixed_field_certify(groups["s3"], towers["s3"])
    assert v.is_galois and v.fixed_dimension == 1
    v = fixed_field_certify(groups["cuberoot"], towers["cuberoot"])
    assert not v.is_galois and v.fixed_dimension == 3 and v.degree == 3


@given(st.integers(0, 10 ** 6), st.sampled_from(NAMES))
@settings(max_examples=40, deadline=None)
def test_orbit_is_stable(towers, groups, seed, name):
    T, G = towers[name], groups[name]
    rng = random.Random(seed)
    xs = [T.nf(random_tower_text(rng, T)) for _ in range(2)]
    orb = orbit(G, xs)
    keys = {str(o) for o in orb}
    assert len(keys) == len(orb)
    for s in G.elements:
        assert {str(s(o)) for o in orb} == keys
    for x in xs:
        assert str(x) in keys or not x


def test_s3_orbit_of_generators(towers, groups):
    T = towers["s3"]
    orb = orbit(groups["s3"], [T.nf("c"), T.nf("w")])
    assert [str(x) for x in orb] == ["c", "-c*w - c", "c*w", "w", "-w - 1"]
