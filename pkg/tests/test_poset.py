import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from higherlim.catalog import circle, circle_with_top, labelling_figure
from higherlim.errors import CycleDetected, DuplicateElement, NotACover, SNotBelowP, UnknownElement
from higherlim.poset import (Poset, chain, closes_circuit, is_filtered_tree, labelling, maximal_tree,
                             strict_down_set, to_dot)
from higherlim.randgen import random_poset, random_tree_poset

FIG_LABELS = {"p0": 0, "p1": 1, "p2": 1, "p3": 1, "p4": 1, "p5": 1, "p6": 1, "p7": 2, "p8": 2}


def all_degree_sets(P):
    """Degree sets of every spanning forest, by brute-force enumeration of cover subsets."""
    g = P.hasse_graph()
    keep = len(P) - nx.number_connected_components(g)
    found = set()
    for kept in itertools.combinations(P.covers, keep):
        h = nx.Graph()
        h.add_nodes_from(P.elements)
        h.add_edges_from(kept)
        if nx.is_forest(h) and nx.number_connected_components(h) == nx.number_connected_components(g):
            found.add(frozenset(P.degree[b] for a, b in P.covers if (a, b) not in kept))
    return found


def test_single_point():
    P = Poset(["a"], [])
    assert P.degree == {"a": 0}
    assert P.length == 0


def test_circle_degrees():
    P = circle()
    assert P.degree == {"v1": 0, "v2": 0, "e1": 1, "e2": 1}
    assert P.length == 1


def test_figure_degrees():
    P = labelling_figure()
    assert P.degree["p7"] == 3
    assert P.degree["p8"] == 4
    assert P.length == 4


def test_empty_poset():
    P = Poset([], [])
    assert P.length is None
    assert labelling(P).sup_label == 0


def test_rejects_duplicates():
    with pytest.raises(DuplicateElement):
        Poset(["a", "a"], [])


def test_rejects_unknown_endpoint():
    with pytest.raises(UnknownElement):
        Poset(["a"], [("a", "b")])


def test_rejects_cycles():
    with pytest.raises(CycleDetected):
        Poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
    with pytest.raises(CycleDetected):
        Poset(["a"], [("a", "a")])


def test_rejects_non_covers():
    with pytest.raises(NotACover):
        Poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])


def test_strict_down_sets():
    assert set(strict_down_set(circle(), "e1").elements) == {"v1", "v2"}
    assert strict_down_set(circle(), "e1").covers == ()
    D = strict_down_set(chain(3), "2")
    assert D.elements == ("0", "1") and D.covers == (("0", "1"),)
    assert set(strict_down_set(labelling_figure(), "p8").elements) == {f"p{i}" for i in range(8)}


def test_closes_circuit_examples():
    assert not closes_circuit(chain(3), "2", {"0", "1"})
    assert closes_circuit(circle_with_top(), "t", {"v1", "v2", "e1", "e2"})
    assert not closes_circuit(labelling_figure(), "p8", {f"p{i}" for i in range(1, 8)})


def test_closes_circuit_requires_elements_below():
    with pytest.raises(SNotBelowP):
        closes_circuit(chain(3), "1", {"2"})


def test_figure_labelling():
    lab = labelling(labelling_figure())
    assert lab.label == FIG_LABELS
    assert lab.sup_label == 2


@pytest.mark.parametrize("n", [1, 2, 5])
def test_chain_labelling(n):
    assert [labelling(chain(n))[str(i)] for i in range(n)] == [0] + [1] * (n - 1)


def test_circle_with_top_labelling():
    lab = labelling(circle_with_top())
    assert lab.label == {"v1": 0, "v2": 0, "e1": 1, "e2": 1, "t": 2}
    assert lab.sup_label == 2


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_labelling_ignores_element_order(seed):
    rng = random.Random(seed)
    P = random_poset(rng, 9)
    names = list(P.elements)
    rng.shuffle(names)
    covers = list(P.covers)
    rng.shuffle(covers)
    assert labelling(Poset(names, covers)).label == labelling(P).label


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_labels_are_monotone_and_below_degree(seed):
    P = random_poset(random.Random(seed), 10)
    lab = labelling(P)
    for a, b in P.covers:
        assert lab[a] <= lab[b]
    for p in P.elements:
        assert lab[p] <= P.degree[p]


def test_tree_of_filtered_tree():
    T = maximal_tree(chain(4))
    assert T.removed_covers == () and T.degree_set == frozenset()
    assert T.bound == 1


def test_tree_of_circle():
    T = maximal_tree(circle())
    assert len(T.removed_covers) == 1
    assert T.degree_set == {1}


def test_tree_of_circle_with_top():
    P = circle_with_top()
    sets = all_degree_sets(P)
    # enumeration: a removed pair either stays among the edges or reaches the top
    assert sets == {frozenset({1}), frozenset({1, 2})}
    T = maximal_tree(P)
    assert len(T.removed_covers) == 2
    assert T.degree_set == {1, 2}
    S = maximal_tree(P, seed=0, trials=16)
    assert S.degree_set in sets
    assert S.degree_set == {1}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 6))
def test_sampled_tree_is_a_spanning_forest(seed, trials):
    P = random_poset(random.Random(seed), 8)
    T = maximal_tree(P, seed=seed, trials=trials)
    h = nx.Graph()
    h.add_nodes_from(P.elements)
    h.add_edges_from(T.tree_covers)
    assert nx.is_forest(h)
    assert nx.number_connected_components(h) == P.n_components()
    assert set(T.tree_covers) | set(T.removed_covers) == set(P.covers)
    assert T.degree_set in all_degree_sets(P)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_sup_label_within_tree_bound(seed):
    P = random_poset(random.Random(seed), 10)
    assert labelling(P).sup_label <= maximal_tree(P).bound


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_filtered_trees_have_labels_at_most_one(seed):
    P = random_tree_poset(random.Random(seed), 10)
    assert is_filtered_tree(P)
    assert labelling(P).sup_label <= 1


def test_is_filtered_tree_examples():
    assert is_filtered_tree(chain(5))
    assert not is_filtered_tree(circle())
    assert not is_filtered_tree(labelling_figure())


def test_dot_output():
    P = circle()
    dot = to_dot(P, labelling(P), maximal_tree(P))
    assert dot.startswith("digraph hasse {")
    assert '"e1" [label="e1 (d=1, B=1)"];' in dot
    assert dot.count("style=dashed") == 1
    assert dot.count("->") == 4
