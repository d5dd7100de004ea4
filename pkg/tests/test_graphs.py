from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dgk.graphs import (
    ChainParseError,
    Fork,
    WeightedTree,
    canonical_chain,
    format_chain,
    parse_chain,
    parse_fork,
    reverse_chain,
)


def test_parse_basic():
    assert parse_chain("[3,(2)]") == (3, 2, 2)
    assert parse_chain("[(0)]") == ()
    assert parse_chain("[]") == ()
    assert parse_chain("[2,3,4,2]") == (2, 3, 4, 2)
    assert parse_chain("[(3)]") == (2, 2, 2)
    assert parse_chain("[ 4 , (2) ]") == (4, 2, 2)


@pytest.mark.parametrize(
    "bad", ["", "3,2", "[3,,2]", "[3 2]", "[-1]", "[0]", "[3,]", "[,3]", "[3", "[x]"]
)
def test_parse_errors(bad):
    with pytest.raises(ChainParseError):
        parse_chain(bad)


def test_format_compresses_runs():
    assert format_chain((3, 2, 2)) == "[3,(2)]"
    assert format_chain((2,)) == "[2]"
    assert format_chain((2, 3, 2)) == "[2,3,2]"
    assert format_chain((2, 2, 3, 2, 2)) == "[(2),3,(2)]"
    assert format_chain(()) == "[]"


chains_strategy = st.lists(st.integers(1, 9), max_size=12).map(tuple)


@given(chains_strategy)
def test_parse_format_roundtrip(ws):
    assert parse_chain(format_chain(ws)) == ws


@given(chains_strategy)
def test_format_parse_is_canonical_text(ws):
    text = format_chain(ws)
    assert format_chain(parse_chain(text)) == text


@given(chains_strategy)
def test_reverse_involution(ws):
    assert reverse_chain(reverse_chain(ws)) == ws


def test_canonical_chain():
    assert canonical_chain((3, 2)) == (2, 3)
    assert canonical_chain((2, 3, 2)) == (2, 3, 2)


def test_intersection_matrix_chain():
    assert WeightedTree.from_chain((2,)).intersection_matrix() == [[-2]]
    assert WeightedTree.from_chain((3, 2)).intersection_matrix() == [
        [-3, 1],
        [1, -2],
    ]


def test_intersection_matrix_fork():
    fork = Fork(2, ((2,), (2,), (2,)))
    m = WeightedTree.from_fork(fork).intersection_matrix()
    assert m[0] == [-2, 1, 1, 1]
    assert [m[i][i] for i in range(4)] == [-2, -2, -2, -2]


def test_negative_definite():
    assert WeightedTree.from_chain((2, 2)).is_negative_definite()
    assert not WeightedTree.from_chain((0,)).is_negative_definite()
    e8 = Fork(2, ((2,), (2, 2), (2, 2, 2, 2)))
    assert WeightedTree.from_fork(e8).is_negative_definite()


def test_discriminant_against_bareiss():
    from dgk.graphs import _int_det

    for ws in [(2,), (3, 2), (2, 3, 2), (5, 3, 1, 2, 3, 2, 2, 2)]:
        t = WeightedTree.from_chain(ws)
        assert t.discriminant() == _int_det(t.minus_intersection_matrix())
    fork = Fork(2, ((2,), (2,), (3,)))
    t = WeightedTree.from_fork(fork)
    assert t.discriminant() == _int_det(t.minus_intersection_matrix()) == 8


def test_fork_json_roundtrip():
    fork = Fork(2, ((2,), (2, 2), (2, 2, 2, 2)))
    assert parse_fork(fork.to_json()) == fork
