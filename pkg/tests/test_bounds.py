import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from higherlim.bounds import inductive_check, vanishing_bounds
from higherlim.catalog import circle_with_top, constant, diamond, hollow_square, labelling_figure, square_with_cells
from higherlim.diagram import fibrant_replacement, higher_limits
from higherlim.errors import InputError
from higherlim.exactla import GF, QQ
from higherlim.poset import chain
from higherlim.randgen import random_instance, random_poset, random_tree_poset


def test_filtered_tree_bounds():
    rep = vanishing_bounds(random_tree_poset(random.Random(4), 9))
    assert rep.sup_B <= 1
    assert rep.tree_bound == 1
    assert rep.tree.degree_set == frozenset()


def test_circle_with_top_bounds():
    P = circle_with_top()
    deterministic = vanishing_bounds(P, tree_trials=0)
    assert deterministic.sup_B == 2
    assert deterministic.tree.degree_set == {1, 2}
    assert deterministic.tree_bound == 5
    # sampling finds a tree whose removed covers all end at edges
    sampled = vanishing_bounds(P, tree_trials=16)
    assert sampled.tree.degree_set == {1}
    assert sampled.tree_bound == 3


def test_figure_bounds():
    rep = vanishing_bounds(labelling_figure())
    assert rep.sup_B == 2
    assert rep.max_degree == 4


def test_realized_height_reported():
    P = circle_with_top()
    rep = vanishing_bounds(P, constant(P))
    assert rep.realized_height == 2
    assert rep.per_element_heights == {"v1": 0, "v2": 0, "e1": 1, "e2": 1, "t": 2}
    assert rep.vanishing_degree == 2


def test_functor_on_other_poset_rejected():
    with pytest.raises(InputError):
        vanishing_bounds(chain(2), constant(chain(3)))


def test_inductive_with_initial_object():
    res = inductive_check(constant(diamond()), 1, verify=True)
    assert res.conditions == (True, True, True)
    assert res.global_limits == [1]


def test_inductive_on_hollow_square():
    F = constant(hollow_square())
    res = inductive_check(F, 1, verify=True)
    assert res.conditions == (True, True, True)
    assert all(len(h) <= 1 for h in res.local_limits.values())
    assert res.global_limits == [1, 1]


def test_inductive_on_circle_with_top_fails_at_one():
    res = inductive_check(constant(circle_with_top()), 1, verify=True)
    assert res.conditions == (False, False, False)
    assert res.local_limits["t"] == [1, 1]


@pytest.mark.parametrize("cells,limits", [(1, [1]), (2, [1, 0, 1])])
def test_cell_boundaries(cells, limits):
    P = square_with_cells(cells)
    F = constant(P)
    R = fibrant_replacement(F)
    res = inductive_check(F, 2, replacement=R, verify=True)
    assert res.holds
    # the boundary of each cell has no rational cohomology from its own dimension on
    for p, h in res.local_limits.items():
        assert not any(h[P.degree[p]:])
    assert higher_limits(F, replacement=R) == limits
    assert not inductive_check(F, 1, replacement=R).holds


def test_inductive_requires_positive_n():
    with pytest.raises(InputError):
        inductive_check(constant(diamond()), 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_tree_bound_monotone_in_trials(seed):
    P = random_poset(random.Random(seed), 10)
    bounds = [vanishing_bounds(P, tree_trials=t, seed=seed).tree_bound for t in (0, 1, 4, 16)]
    assert bounds == sorted(bounds, reverse=True)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([QQ, GF(2), GF(5)]))
def test_limits_vanish_above_every_bound(seed, field):
    F = random_instance(seed, max_elements=9, field=field)
    rep = vanishing_bounds(F.poset, F, tree_trials=4, seed=seed)
    h = higher_limits(F)
    for bound in (rep.sup_B, rep.max_degree, rep.tree_bound, rep.realized_height):
        assert not any(h[int(bound) + 1:]) if bound >= 0 else not h
    assert rep.realized_height <= min(rep.sup_B, rep.max_degree)
    assert rep.sup_B <= rep.tree_bound
