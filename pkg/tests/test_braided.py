import json

import pytest

from braidhom.braided import (
    BraidedVectorSpace,
    Cocycle,
    ConjClassSet,
    PermGroup,
    Rack,
    braid_word_action,
    braided_space,
    check_braided,
    conj,
    conjugation_rack,
    cycle_notation,
    cycle_type,
    dual_space,
    identity_perm,
    load_group,
    load_rack,
    parse_cycles,
    rank_one_space,
    sign_twist,
)
from braidhom.exactla import SparseMatrix


def S3():
    return PermGroup(3, [parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)], name="S3")


def transpositions(G):
    return ConjClassSet(G, [g for g in G.elements if cycle_type(g) == (2,)])


def s3_transposition_space(cocycle=1, epsilon=False):
    G = S3()
    c = transpositions(G)
    rack = conjugation_rack(G, c)
    return braided_space(rack, Cocycle.constant(rack, cocycle), epsilon=epsilon, group=G)


def test_parse_and_print_cycles():
    g = parse_cycles("(1 2)(3 4 5)", 5)
    assert cycle_notation(g) == "(1 2)(3 4 5)"
    assert parse_cycles("()", 3) == identity_perm(3)


def test_group_enumeration_and_cap():
    G = S3()
    assert G.order == 6
    with pytest.raises(ValueError):
        PermGroup(5, [parse_cycles("(1 2)", 5), parse_cycles("(1 2 3 4 5)", 5)], cap=10)


def test_group_file_roundtrip():
    text = "degree 4\n(1 2)\n(1 2 3 4)\n"
    G = load_group(text, name="S4")
    assert G.order == 24


def test_conj_class_set():
    G = S3()
    c = transpositions(G)
    assert len(c) == 3 and len(c.classes) == 1
    assert c.rational and c.generates_parent()
    with pytest.raises(ValueError):
        ConjClassSet(G, [parse_cycles("(1 2)", 3)])  # not conjugation closed
    with pytest.raises(ValueError):
        ConjClassSet(G, [identity_perm(3)])


def test_conjugation_rack_s2():
    G = PermGroup(2, [parse_cycles("(1 2)", 2)], name="S2")
    c = ConjClassSet(G, [parse_cycles("(1 2)", 2)])
    r = conjugation_rack(G, c)
    assert r.size == 1 and r.quandle


def test_conjugation_rack_s3_values():
    G = S3()
    c = transpositions(G)
    r = conjugation_rack(G, c)
    assert r.quandle
    g12, g13, g23 = parse_cycles("(1 2)", 3), parse_cycles("(1 3)", 3), parse_cycles("(2 3)", 3)
    i = {g: c.elements.index(g) for g in (g12, g13, g23)}
    assert r.act[i[g12]][i[g13]] == i[g23]
    assert conj(g12, g13) == g23


def test_three_cycle_rack_acts_trivially():
    G = S3()
    c = ConjClassSet(G, [g for g in G.elements if cycle_type(g) == (3,)])
    r = conjugation_rack(G, c)
    assert r.size == 2
    assert all(r.act[a][b] == a for a in range(2) for b in range(2))


def test_rack_validation():
    with pytest.raises(ValueError):
        Rack(["a", "b"], {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "a", ("b", "b"): "b"})


def test_cocycle_condition():
    G = S3()
    r = conjugation_rack(G, transpositions(G))
    Cocycle.constant(r, -1).check(r)
    bad = [[1] * 3 for _ in range(3)]
    bad[0][1] = -1
    with pytest.raises(ValueError):
        Cocycle(tuple(tuple(row) for row in bad)).check(r)


def test_rack_json_loader():
    obj = {
        "elements": ["a", "b"],
        "action": {"a": {"a": "a", "b": "a"}, "b": {"a": "b", "b": "b"}},
        "cocycle": -1,
    }
    rack, x = load_rack(json.dumps(obj))
    assert rack.size == 2 and x.value(0, 1) == -1


def test_rank_one_spaces():
    triv = rank_one_space(1)
    assert braid_word_action(triv, 2, [1]) == SparseMatrix.identity(1)
    eps = rank_one_space(-1)
    assert braid_word_action(eps, 2, [1]).entries == {(0, 0): -1}
    # scalar of [1,2,1] on three strands is (-1)^3
    assert braid_word_action(eps, 3, [1, 2, 1]).entries == {(0, 0): -1}


def test_sign_twist_of_rank_one():
    eps = sign_twist(rank_one_space(1))
    assert eps.sigma[(0, 0)][0][1] == -1


def test_braid_word_action_basics():
    V = s3_transposition_space(epsilon=True)
    n = 3
    assert braid_word_action(V, n, []) == SparseMatrix.identity(27)
    assert braid_word_action(V, n, [1, -1]) == SparseMatrix.identity(27)
    with pytest.raises(ValueError):
        braid_word_action(V, 3, [3])


def test_signed_permutation_shape():
    V = s3_transposition_space(epsilon=True)
    M = braid_word_action(V, 2, [1])
    assert M.rows == 9
    for j in range(9):
        col = M.column(j)
        assert len(col) == 1 and list(col.values())[0] in (1, -1)


@pytest.mark.parametrize("n,i", [(3, 1), (4, 1), (4, 2)])
def test_braid_relations(n, i):
    V = s3_transposition_space()
    lhs = braid_word_action(V, n, [i, i + 1, i])
    rhs = braid_word_action(V, n, [i + 1, i, i + 1])
    assert lhs == rhs


def test_far_commutation():
    V = s3_transposition_space(epsilon=True)
    assert braid_word_action(V, 4, [1, 3]) == braid_word_action(V, 4, [3, 1])


def test_multidegree_preserved():
    # counts of letters per conjugacy class are braid invariants
    G = S3()
    c = ConjClassSet(G, [g for g in G.elements if g != identity_perm(3)])
    rack = conjugation_rack(G, c)
    V = braided_space(rack, Cocycle.constant(rack, 1), group=G)
    class_of = [c.class_index(g) for g in c.elements]
    from braidhom.braided import apply_moves_to_word, index_word

    for idx in range(V.rank**3):
        w = index_word(idx, V.rank, 3)
        for moves in ([1], [2], [-1], [1, 2, -1]):
            _, w2 = apply_moves_to_word(V, 3, moves, w)
            assert sorted(class_of[a] for a in w) == sorted(class_of[a] for a in w2)


def test_check_braided_passes():
    assert check_braided(rank_one_space(-1)).ok
    for eps in (False, True):
        rep = check_braided(s3_transposition_space(epsilon=eps))
        assert rep.ok, rep.failures


def test_check_braided_negative_control():
    V = s3_transposition_space()
    # corrupt one braiding image so the braid equation fails
    bad_sigma = dict(V.sigma)
    ((c0, d0), coeff) = bad_sigma[(0, 1)][0]
    bad_sigma[(0, 1)] = (((c0, (d0 + 1) % 3), coeff),)
    W = BraidedVectorSpace(V.labels, bad_sigma, grading=V.grading, group=V.group, rack=V.rack)
    rep = check_braided(W)
    assert not rep.ok and rep.failures


def test_dual_space_braided():
    V = s3_transposition_space(epsilon=True)
    assert check_braided(dual_space(V)).ok
    # dual braiding matrix is the transpose
    assert dual_space(V).sigma_matrix() == V.sigma_matrix().transpose()


def test_yd_grading():
    V = s3_transposition_space()
    w = (0, 1)
    g = V.word_degree(w)
    from braidhom.braided import pmul

    assert g == pmul(V.labels[0], V.labels[1])
