from fractions import Fraction

import pytest

from dgk import chains
from dgk.barks import (
    bark_chain,
    bark_fork,
    bark_one_sided,
    chain_bark_square,
    decompose_exceptional,
    eshape_catalog,
    fork_invariants,
    group_order,
    is_admissible_fork,
    is_platonic_triple,
)
from dgk.graphs import Fork, WeightedTree, parse_chain


def F(n, d=1):
    return Fraction(n, d)


def test_one_sided_examples():
    bk = bark_one_sided((2, 2))
    assert bk.coefficients == (F(2, 3), F(1, 3))
    assert bk.bk_square == F(-2, 3)
    bk = bark_one_sided((3,))
    assert bk.coefficients == (F(1, 3),)
    assert bk.bk_square == F(-1, 3)
    bk = bark_one_sided((2, 3))
    assert bk.coefficients == (F(3, 5), F(1, 5))
    assert bk.bk_square == F(-3, 5)


def test_chain_bark_examples():
    for n in range(1, 8):
        bk = bark_chain((2,) * n)
        assert all(c == 1 for c in bk.coefficients)
        assert bk.bk_square == -2
    bk = bark_chain((3,))
    assert bk.coefficients == (F(2, 3),)
    assert bk.bk_square == F(-4, 3)
    assert bark_chain((2, 3)).bk_square == F(-7, 5)


def test_bark_errors():
    with pytest.raises(ValueError):
        bark_chain((1, 2))
    with pytest.raises(ValueError):
        bark_one_sided(())


def test_chain_barks_cross_validate_d50():
    # linear solve vs closed forms (asserted inside), additivity of the two
    # one-sided barks, and the -2 bound with its equality case
    for ws in chains.all_admissible_chains_up_to(50):
        full = bark_chain(ws)
        left = bark_one_sided(ws)
        right = bark_one_sided(ws[::-1])
        summed = tuple(
            a + b for a, b in zip(left.coefficients, right.coefficients[::-1])
        )
        assert summed == full.coefficients
        assert full.bk_square == chain_bark_square(ws)
        assert full.bk_square >= -2
        assert (full.bk_square == -2) == all(w == 2 for w in ws)
        assert all(0 < m <= 1 for m in full.coefficients)
        assert all(0 < m < 1 for m in left.coefficients)
        if any(m == 1 for m in full.coefficients):
            assert all(w == 2 for w in ws)


def test_fork_anchors():
    e8 = Fork(2, ((2,), (2, 2), (2, 2, 2, 2)))
    bk = bark_fork(e8)
    assert all(c == 1 for c in bk.coefficients)
    assert bk.bk_square == -2
    d, dl, _, _ = fork_invariants(e8)
    assert d == 1 and dl == F(31, 30)

    fk = Fork(2, ((2,), (2,), (3,)))
    assert bark_fork(fk).bk_square == F(-3, 2)
    assert group_order(fk) == 24
    assert fork_invariants(fk)[0] == 8

    quat = Fork(2, ((2,), (2,), (2,)))
    assert bark_fork(quat).bk_square == -2
    assert group_order(quat) == 8
    assert fork_invariants(quat)[0] == 4


def test_binary_polyhedral_orders():
    # the three (-2)-forks carry the binary polyhedral groups
    e6 = Fork(2, ((2,), (2, 2), (2, 2)))
    e7 = Fork(2, ((2,), (2, 2), (2, 2, 2)))
    e8 = Fork(2, ((2,), (2, 2), (2, 2, 2, 2)))
    assert [group_order(f) for f in (e6, e7, e8)] == [24, 48, 120]
    # binary dihedral series on (2,2,n)
    for n in range(2, 8):
        dyn = Fork(2, ((2,), (2,), (2,) * (n - 1)))
        assert group_order(dyn) == 4 * n


def test_group_order_chain():
    assert group_order((5,)) == 5
    assert group_order(parse_chain("[2,3,4]")) == 18
    with pytest.raises(ValueError):
        group_order((1,))


def test_platonic_gate():
    assert is_platonic_triple((2, 3, 5))
    assert is_platonic_triple((2, 2, 9))
    assert not is_platonic_triple((3, 3, 3))
    bad = Fork(2, ((3,), (3,), (3,)))
    assert not is_admissible_fork(bad)
    with pytest.raises(ValueError):
        bark_fork(bad)
    with pytest.raises(ValueError):
        group_order(bad)


def test_admissible_graphs_are_negative_definite():
    for ws in chains.all_admissible_chains_up_to(50):
        assert WeightedTree.from_chain(ws).is_negative_definite()
    for shape in eshape_catalog(10):
        if shape.is_fork:
            assert WeightedTree.from_fork(shape.graph).is_negative_definite()


def test_fork_closed_form_vs_determinant():
    # fork_invariants asserts the closed form against the determinant oracle
    for shape in eshape_catalog(12):
        if shape.is_fork:
            d, dl, e, et = fork_invariants(shape.graph)
            assert d == shape.d
            assert 1 < dl <= et < 2 <= shape.graph.b
            assert bark_fork(shape.graph).bk_square < -e < -1
            assert -bark_fork(shape.graph).bk_square <= 2


def test_decompose():
    e, delta = decompose_exceptional(parse_chain("[2,2,3,2]"))
    assert e == (3,)
    assert sorted(delta) == [(2,), (2, 2)]
    e, delta = decompose_exceptional((4,))
    assert e == (4,) and delta == []
    for r in range(0, 4):
        for x in range(0, 4):
            e, _ = decompose_exceptional((2,) * r + (3,) + (2,) * x)
            assert e == (3,)
    # an all-(-2) graph strips to nothing
    e, delta = decompose_exceptional((2, 2, 2))
    assert e == () and delta == [(2, 2, 2)]


def test_catalog_families():
    cat = eshape_catalog(12)
    by_key = {}
    for s in cat:
        by_key.setdefault(s.key(), []).append(s)
    assert [s.epsilon for s in by_key["[5]"]] == [0, 1]
    assert [s.epsilon for s in by_key["[6]"]] == [0]
    assert [s.epsilon for s in by_key["[7]"]] == [0]
    assert sorted(s.epsilon for s in by_key["[4]"]) == [1, 2]
    assert [s.epsilon for s in by_key["[3]"]] == [2]
    # the six chains with two external curves
    c4 = [s for s in cat if "c4" in s.families]
    assert len(c4) == 6
    assert all(s.epsilon == 1 for s in c4)
    assert {s.key() for s in c4} == {
        "[2,4,2]", "[2,5,2]", "[2,3,3,2]", "[2,3,4,2]", "[(2),4,2]", "[(2),5,2]",
    }
    # epsilon 0 shapes have K.E in 3..5, epsilon 1 in 2..3, epsilon 2 gives 1
    for s in cat:
        if s.epsilon == 0:
            assert s.ke in (3, 4, 5)
        elif s.epsilon == 1:
            assert s.ke in (2, 3)
        else:
            assert s.ke == 1 or s.key() == "[4]"
        exceptional = s.key() == "[4]" and s.epsilon == 2
        assert s.ke + 2 * s.epsilon <= 5 or exceptional
    # every fork strips to E = [3]
    for s in cat:
        if s.is_fork:
            assert s.e_weights == (3,)
            assert s.epsilon == 2


def test_all_minus_two_shape_rejected():
    from dgk.barks import _make_shape

    with pytest.raises(ValueError):
        _make_shape((2, 2, 2), 2, "b3")


def test_small_dihedral_fork_discriminant():
    # the (2,2,3) fork with a [3]-twig: abelianization order 8, group order 24
    fk = Fork(2, ((2,), (2,), (3,)))
    assert WeightedTree.from_fork(fk).discriminant() == 8
    assert group_order(fk) == 24
