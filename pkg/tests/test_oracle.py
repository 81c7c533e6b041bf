import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from higherlim.catalog import circle, constant, labelling_figure, zero_chain
from higherlim.complex import cohomology_dims
from higherlim.diagram import ModuleDiagram, higher_limits, limit_dim
from higherlim.exactla import GF, QQ
from higherlim.oracle import oracle_higher_limits, order_cochain, strict_chains
from higherlim.poset import Poset, is_filtered_tree
from higherlim.randgen import indicator_sum, random_instance, random_tree_instance, random_tree_poset


def test_single_point():
    F = constant(Poset(["x"], []))
    assert order_cochain(F).dims == (1,)
    assert oracle_higher_limits(F) == [1]


def test_circle():
    F = constant(circle())
    C = order_cochain(F)
    assert C.dims == (4, 4)
    assert cohomology_dims(C) == [1, 1]


def test_two_chain_with_zero_map():
    C = order_cochain(zero_chain(2))
    assert C.dims == (2, 1)
    assert cohomology_dims(C) == [1]


def test_empty_poset():
    assert oracle_higher_limits(constant(Poset([], []))) == []


def test_strict_chains_of_circle():
    chains = strict_chains(constant(circle()))
    assert [len(c) for c in chains] == [4, 4]
    assert ("v1", "e1") in chains[1]


def test_figure_below_top_agrees_with_replacement():
    F = constant(labelling_figure())
    assert oracle_higher_limits(F, at="p8") == higher_limits(F, at="p8")


def test_indicator_of_whole_poset_is_constant():
    P = circle()
    dims, maps = indicator_sum(P, QQ, [set(P.elements)])
    assert ModuleDiagram(P, QQ, dims, maps) == constant(P)


cases = st.tuples(st.integers(0, 10**6), st.sampled_from([QQ, GF(2), GF(5)]))


@settings(max_examples=60, deadline=None)
@given(cases)
def test_order_cochain_squares_to_zero(case):
    seed, field = case
    C = order_cochain(random_instance(seed, max_elements=7, field=field))
    C.check()


@settings(max_examples=60, deadline=None)
@given(cases)
def test_degree_zero_is_the_limit(case):
    seed, field = case
    F = random_instance(seed, max_elements=8, field=field)
    h = oracle_higher_limits(F)
    assert (h[0] if h else 0) == limit_dim(F)


@settings(max_examples=40, deadline=None)
@given(cases)
def test_trees_vanish_above_one(case):
    seed, field = case
    assert len(oracle_higher_limits(random_tree_instance(seed, field=field))) <= 2


@pytest.mark.parametrize("seed", range(10))
def test_oracle_matches_replacement(seed):
    F = random_instance(seed, max_elements=9, field=[QQ, GF(2), GF(5)][seed % 3])
    assert oracle_higher_limits(F) == higher_limits(F)
    p = random.Random(seed).choice(F.poset.elements)
    assert oracle_higher_limits(F, at=p) == higher_limits(F, at=p)


def test_tree_poset_is_tree():
    assert all(is_filtered_tree(random_tree_poset(random.Random(s), 10)) for s in range(20))
