import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import permutations_of, rgraphs
from turan.constructions import graph
from turan.core import (
    RGraph,
    complete,
    edge_type_set,
    level_graph,
    lubell,
    parse,
    parse_shorthand,
    serialize,
    shift_types,
    shorthand,
)
from turan.errors import CardinalityExceedsN, InvariantViolation, LoopsNotAllowed, ParseError

H5 = '{"n":5,"edges":[[2],[3],[1,2,4],[1,3,5],[1,4,5]]}'
HA = '{"n":2,"edges":[[1],[1,2,2],[2,2,2]],"loops":true}'


def test_lubell_complete_13():
    assert lubell(complete((1, 3), 5), 5) == 2


def test_lubell_small_example():
    G = RGraph(3, ((1,), (1, 2, 3)))
    assert lubell(G, 3) == Fraction(4, 3)


def test_lubell_ga_shape():
    # one black vertex x=1; triples meeting Y in >= 2 vertices
    edges = [(1,)] + [e for e in complete((3,), 6).edges if sum(v != 1 for v in e) >= 2]
    G = RGraph(6, tuple(edges))
    assert len(G) == 21
    assert lubell(G, 6) == Fraction(7, 6)


def test_lubell_errors():
    with pytest.raises(LoopsNotAllowed):
        lubell(graph("HA"), 3)
    with pytest.raises(CardinalityExceedsN):
        lubell(RGraph(3, ((1, 2, 3),)), 2)


def test_edge_type_set():
    assert edge_type_set(graph("H5_13")) == (1, 3)
    assert edge_type_set(RGraph(4)) == ()
    assert edge_type_set(graph("C13")) == (1, 3)
    assert shift_types((1, 3), 2) == (3, 5)


def test_level_graph():
    assert level_graph(graph("H5_13"), 1).edges == ((2,), (3,))
    assert len(level_graph(graph("H5_13"), 2)) == 0
    triples = level_graph(graph("H6_13"), 3).edges
    assert sorted(triples) == sorted([(1, 2, 4), (1, 4, 5), (1, 3, 5), (2, 3, 6), (2, 4, 6),
                                      (3, 5, 6), (4, 5, 6)])


def test_complete():
    assert len(complete((1, 3), 4)) == 8
    assert len(complete((2,), 3)) == 3
    assert complete((1, 3), 3) == graph("K3_bbb")
    with pytest.raises(CardinalityExceedsN):
        complete((5,), 4)


def test_parse_documents():
    assert parse(H5) == graph("H5_13")
    assert parse(HA) == graph("HA")
    assert serialize(parse(H5)) == H5
    assert serialize(parse(HA)) == HA


def test_parse_errors():
    with pytest.raises(ParseError) as err:
        parse('{"n": 3,\n "edges": [[1,]]}')
    assert err.value.line == 2
    with pytest.raises(InvariantViolation):
        parse('{"n":2,"edges":[[1,3]]}')
    with pytest.raises(InvariantViolation):
        parse('{"n":3,"edges":[[1,2],[2,1]]}')
    with pytest.raises(InvariantViolation):
        parse('{"n":3,"edges":[[1,1,2]]}')
    with pytest.raises(ParseError):
        parse('{"edges":[]}')


def test_shorthand_round_trip():
    G = parse_shorthand("2;3;124;135;145")
    assert G == graph("H5_13")
    assert shorthand(G) == "2;3;124;135;145"
    with pytest.raises(ParseError):
        parse_shorthand("1;;23")


@given(rgraphs())
def test_round_trip(G):
    assert parse(serialize(G)) == G
    assert serialize(parse(serialize(G))) == serialize(G)


@given(rgraphs())
def test_lubell_bounds(G):
    R = edge_type_set(G)
    h = lubell(G, G.n)
    assert 0 <= h <= len(R)
    assert (h == len(R)) == (G == complete(R, G.n))


@given(rgraphs(), st.integers(0, 3))
def test_lubell_additive(G, extra):
    n = G.n + extra
    G = RGraph(n, G.edges)
    assert lubell(G, n) == sum(lubell(level_graph(G, r), n) for r in edge_type_set(G))


@given(rgraphs(), st.integers(1, 4))
def test_level_types(G, r):
    assert set(edge_type_set(level_graph(G, r))) <= {r}


@given(st.data())
def test_relabel_preserves_lubell(data):
    G = data.draw(rgraphs())
    perm = data.draw(permutations_of(G.n))
    assert lubell(G.relabel(perm), G.n) == lubell(G, G.n)


def test_document_is_canonical_order():
    doc = json.loads(serialize(graph("H6_13")))
    keys = [(len(e), e) for e in doc["edges"]]
    assert keys == sorted(keys)
