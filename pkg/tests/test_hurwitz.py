import pytest

from braidhom.braided import (
    ConjClassSet,
    PermGroup,
    Rack,
    conjugation_rack,
    cycle_type,
    identity_perm,
    parse_cycles,
)
from braidhom.exactla import QQ
from braidhom.hurwitz import (
    filtered_module,
    hurwitz_orbits,
    monodromy_group,
    nielsen_components,
    orbit_count_bound,
    orbit_ring_module,
    rack_orbits,
    restricted_ring_module,
    signed_orbit_count,
    stabilization_thresholds,
    subgroup_lattice,
)
from tests.test_braided import S3, transpositions


def test_orbit_basics():
    G = S3()
    c = transpositions(G)
    assert len(hurwitz_orbits(G, c, 0)) == 1
    assert len(hurwitz_orbits(G, c, 1)) == 3
    t2 = hurwitz_orbits(G, c, 2)
    assert len(t2) == 5
    sizes = sorted(rec.size for rec in t2.orbits)
    assert sizes == [1, 1, 1, 3, 3]
    assert sum(rec.size for rec in t2.orbits) == 9


def test_orbit_product_invariant():
    # the product of the letters, up to conjugacy, is constant on each orbit
    from braidhom.braided import pmul

    G = S3()
    c = transpositions(G)
    t2 = hurwitz_orbits(G, c, 2)
    for rec in t2.orbits:
        rep_prod = pmul(c.elements[rec.rep[0]], c.elements[rec.rep[1]])
        for w, oi in t2.orbit_of.items():
            if oi is not t2.index(rec.rep):
                continue
            prod = pmul(c.elements[w[0]], c.elements[w[1]])
            assert cycle_type(prod) == cycle_type(rep_prod)


def test_diagonal_orbits_have_small_monodromy():
    G = S3()
    c = transpositions(G)
    t2 = hurwitz_orbits(G, c, 2)
    for rec in t2.orbits:
        if rec.size == 1:
            assert len(rec.monodromy) == 2
        else:
            assert len(rec.monodromy) == 6


def test_monodromy_examples():
    G = S3()
    assert monodromy_group([], G) == frozenset({identity_perm(3)})
    g12 = parse_cycles("(1 2)", 3)
    g13 = parse_cycles("(1 3)", 3)
    assert len(monodromy_group([g12, g12], G)) == 2
    assert len(monodromy_group([g12, g13], G)) == 6


def test_subgroup_lattice():
    G = S3()
    lat = subgroup_lattice(G, transpositions(G))
    assert [len(h) for h in lat] == [2, 2, 2, 6]
    c_all = ConjClassSet(G, [g for g in G.elements if g != identity_perm(3)])
    lat2 = subgroup_lattice(G, c_all)
    assert [len(h) for h in lat2] == [2, 2, 2, 3, 6]
    G2 = PermGroup(2, [parse_cycles("(1 2)", 2)], name="S2")
    lat3 = subgroup_lattice(G2, ConjClassSet(G2, [parse_cycles("(1 2)", 2)]))
    assert [len(h) for h in lat3] == [2]


def test_filtered_module_strata():
    G = S3()
    c = transpositions(G)
    full = frozenset(G.elements)
    fm = filtered_module(G, c, full, 3)
    assert [fm.dim(q) for q in range(4)] == [0, 0, 2, 3]
    g12 = parse_cycles("(1 2)", 3)
    h = G.subgroup_closure([g12])
    fm2 = filtered_module(G, c, h, 3)
    assert [fm2.dim(q) for q in range(4)] == [0, 1, 1, 1]
    with pytest.raises(ValueError):
        filtered_module(G, c, frozenset({identity_perm(3)}), 2)


def test_stratification_partitions_orbits():
    G = S3()
    c = transpositions(G)
    lat = subgroup_lattice(G, c)
    mods = [filtered_module(G, c, h, 5) for h in lat]
    for n in range(1, 6):
        assert sum(m.dim(n) for m in mods) == len(hurwitz_orbits(G, c, n))


def test_left_mult_stays_in_stratum():
    G = S3()
    c = transpositions(G)
    full = frozenset(G.elements)
    fm = filtered_module(G, c, full, 4)
    for q in (2, 3):
        for v in fm.letters:
            images = fm.left_mult(v, q)
            assert all(i is not None for i in images)


def test_orbit_bound():
    G = S3()
    c = transpositions(G)
    for n in range(9):
        assert len(hurwitz_orbits(G, c, n)) <= orbit_count_bound(n, 3)
    assert orbit_count_bound(2, 3) == 6


def test_state_cap():
    G = S3()
    c = transpositions(G)
    with pytest.raises(ValueError):
        hurwitz_orbits(G, c, 4, cap=10)


def test_signed_orbit_count():
    G = S3()
    c = transpositions(G)
    rack = conjugation_rack(G, c)
    assert [signed_orbit_count(rack, n) for n in range(4)] == [1, 3, 0, 0]
    assert signed_orbit_count(rack, 2, sign_value=1) == 5


def test_nielsen_components():
    G = S3()
    c = transpositions(G)
    assert nielsen_components(G, c, 1, QQ)[0] == 0  # no single transposition generates
    comps, betti = nielsen_components(G, c, 2, QQ)
    assert comps == 1
    assert betti[0] == comps
    comps3, betti3 = nielsen_components(G, c, 3, QQ)
    assert comps3 == 1 and betti3[0] == 1
    # a cyclic group: one generator suffices
    Z3 = PermGroup(3, [parse_cycles("(1 2 3)", 3)], name="Z3")
    cz = ConjClassSet(Z3, [g for g in Z3.elements if g != identity_perm(3)])
    assert nielsen_components(Z3, cz, 1, QQ)[0] == 2


def test_nielsen_h0_equals_components():
    G = S3()
    c = transpositions(G)
    for n in (2, 3, 4):
        comps, betti = nielsen_components(G, c, n, QQ)
        assert betti[0] == comps, n


def test_stabilization_s3():
    G = S3()
    c = transpositions(G)
    rep = stabilization_thresholds(G, c, 0, 6)
    assert rep.stabilized
    assert rep.observed == 3
    # all letters in one class see the same threshold
    assert len(set(rep.thresholds.values())) == 1


def test_stabilization_central_involution():
    Z2 = PermGroup(2, [parse_cycles("(1 2)", 2)], name="Z2")
    cz = ConjClassSet(Z2, [parse_cycles("(1 2)", 2)])
    rep = stabilization_thresholds(Z2, cz, 0, 5)
    assert rep.stabilized and rep.observed <= 1


def test_stabilization_two_classes():
    G = S3()
    c_all = ConjClassSet(G, [g for g in G.elements if g != identity_perm(3)])
    rep = stabilization_thresholds(G, c_all, 0, {0: 3, 1: 2})
    assert rep.window == (3, 2)
    assert rep.thresholds


def test_restricted_ring_module():
    G = S3()
    c = transpositions(G)
    g12 = parse_cycles("(1 2)", 3)
    h = G.subgroup_closure([g12])
    mod, embed = restricted_ring_module(G, c, h, 4)
    assert [mod.dim(q) for q in range(5)] == [1, 1, 1, 1, 1]
    assert embed == [c.elements.index(g12)]


def test_rack_orbits_free_rack():
    # one-element rack: a single orbit in every degree
    triv = Rack(["*"], {("*", "*"): "*"})
    assert [len(rack_orbits(triv, n)) for n in range(5)] == [1, 1, 1, 1, 1]


def test_orbit_ring_module_multiplication():
    G = S3()
    c = transpositions(G)
    rack = conjugation_rack(G, c)
    mod = orbit_ring_module(rack, 3)
    # left multiplication is defined everywhere on the full ring
    for q in (0, 1, 2):
        for v in range(rack.size):
            assert all(i is not None for i in mod.left_mult(v, q))
