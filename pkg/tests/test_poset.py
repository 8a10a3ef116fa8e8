import random

import networkx as nx
import numpy as np
import pytest

from dayfour.bounds import load_fixture
from dayfour.enumeration import Poset
from dayfour.notation import to_text
from dayfour.poset import (ChainDivision, ChainDivisionFailure, InvariantViolation, LayerGraph,
                           Matching, chain_division, check_symmetry, has_augmenting_path,
                           layer_matching, maximum_matching, stratify, width_certificate)


def test_day2_layers(arena, strat2):
    assert strat2.sizes == [1, 2, 3, 3, 4, 3, 3, 2, 1]
    assert [to_text(arena, x) for x in strat2.layer(1)] == ["2"]
    assert sorted(to_text(arena, x) for x in strat2.layer(5)) == ["*", "*2", "+-1", "0"]


def test_day3_layers_match_fixture(strat3):
    assert strat3.sizes == load_fixture("table1.json")["layer_sizes"]
    assert len(strat3) == 45
    assert strat3.middle == 23 and len(strat3.layer(23)) == 86


def test_layers_are_antichains_and_maximal(strat3):
    poset = strat3.poset
    for layer in strat3.layers:
        assert poset.is_antichain(layer)
    where = strat3.layer_of()
    less = poset.less
    for i, j in zip(*np.nonzero(less)):
        assert where[poset.elements[i]] > where[poset.elements[j]]


def test_symmetry(strat2, strat3):
    assert check_symmetry(strat2)
    assert check_symmetry(strat3)


def test_symmetry_needs_games():
    with pytest.raises(TypeError):
        check_symmetry(stratify(Poset([0], np.ones((1, 1), dtype=bool))))


@pytest.mark.parametrize("day", ["strat2", "strat3"])
def test_matching_sizes(request, day):
    strat = request.getfixturevalue(day)
    sizes = strat.sizes
    for i in range(1, len(strat)):
        match = layer_matching(strat, i)
        match.validate()
        graph = match.graph
        assert match.size == min(sizes[i - 1], sizes[i])
        assert not has_augmenting_path(graph.upper, graph.edges, match.pairs)
        g = nx.Graph()
        g.add_nodes_from(("u", u) for u in graph.upper)
        g.add_nodes_from(("l", v) for v in graph.lower)
        g.add_edges_from((("u", u), ("l", v)) for u, vs in graph.edges.items() for v in vs)
        oracle = nx.bipartite.hopcroft_karp_matching(g, [("u", u) for u in graph.upper])
        assert match.size == len(oracle) // 2


def test_augmenting_path_detected():
    adj = {"a": ["x", "y"], "b": ["x"]}
    assert has_augmenting_path(["a", "b"], adj, {"a": "x"})
    assert maximum_matching(["a", "b"], adj) == {"a": "y", "b": "x"}


def test_matching_validate_rejects(strat2):
    graph = LayerGraph.between(strat2, 1)
    u = graph.upper[0]
    with pytest.raises(InvariantViolation):
        Matching(graph, {u: graph.upper[0]}).validate()
    with pytest.raises(IndexError):
        LayerGraph.between(strat2, 9)


@pytest.mark.parametrize("day, lengths", [("strat2", [1, 5, 7, 9])])
def test_day2_chains(request, day, lengths):
    strat = request.getfixturevalue(day)
    division = chain_division(strat)
    division.validate(strat.poset)
    assert sorted(division.lengths) == lengths


def test_day3_chains(strat3, division3):
    division3.validate(strat3.poset)
    assert len(division3) == 86
    assert sum(division3.lengths) == 1474
    width, antichain, _ = width_certificate(strat3.poset, strat3, division3)
    assert width == 86 and len(antichain) == 86
    mids = set(strat3.layer(23))
    assert all(len(set(c) & mids) == 1 for c in division3.chains)


def test_fixture_chains_have_published_lengths():
    lengths = load_fixture("table2.json")["chain_lengths"]
    assert len(lengths) == 86 and sum(lengths) == 1474


def test_chain_validate_rejects(day2, strat2):
    division = chain_division(strat2)
    with pytest.raises(InvariantViolation, match="cover"):
        ChainDivision(division.chains[1:]).validate(day2)
    bad = [tuple(reversed(division.chains[-1]))] + division.chains[:-1]
    with pytest.raises(InvariantViolation, match="not below"):
        ChainDivision(bad).validate(day2)


def _linear(k):
    return Poset(range(k), np.array([[i <= j for j in range(k)] for i in range(k)]))


def test_trivial_posets():
    strat = stratify(_linear(5))
    assert strat.sizes == [1] * 5
    assert chain_division(strat).lengths == [5]
    flat = Poset(range(4), np.eye(4, dtype=bool))
    strat = stratify(flat)
    assert strat.sizes == [4]
    assert width_certificate(flat, strat, chain_division(strat))[0] == 4


def test_permutation_invariance(day2, strat2):
    rng = random.Random(5)
    for _ in range(5):
        perm = list(range(len(day2)))
        rng.shuffle(perm)
        shuffled = Poset([day2.elements[i] for i in perm], day2.leq[np.ix_(perm, perm)])
        strat = stratify(shuffled)
        assert [set(u) for u in strat.layers] == [set(u) for u in strat2.layers]
        division = chain_division(strat)
        division.validate(shuffled)
        assert len(division) == 4


def test_non_saturating_poset_fails():
    # the widest layer is the bottom one, so both top games need their own
    # partner in the single-game layer between them
    names = ["a", "b", "c", "d", "e", "f"]
    below = {("c", "a"), ("c", "b"), ("d", "c"), ("e", "c"), ("f", "c"),
             ("d", "a"), ("d", "b"), ("e", "a"), ("e", "b"), ("f", "a"), ("f", "b")}
    leq = np.array([[x == y or (x, y) in below for y in names] for x in names])
    strat = stratify(Poset(names, leq))
    assert strat.sizes == [2, 1, 3]
    with pytest.raises(ChainDivisionFailure) as info:
        chain_division(strat)
    assert (info.value.layer, info.value.size, info.value.needed) == (1, 1, 2)
