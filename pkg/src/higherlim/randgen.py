"""Random posets and functors for differential testing."""

from __future__ import annotations

import random

import networkx as nx

from .diagram import ModuleDiagram
from .errors import InputError
from .exactla import Field, Matrix, QQ, compose, inverse, random_invertible, random_matrix
from .poset import Poset


def random_poset(rng: random.Random, max_elements: int) -> Poset:
    """Layered DAG reduced to its covers; edges may skip layers."""
    n = rng.randint((max_elements + 1) // 2, max_elements)
    n_layers = rng.randint(min(2, n), min(n, 5))
    layer = list(range(n_layers)) + [rng.randrange(n_layers) for _ in range(n - n_layers)]
    layer.sort()
    names = [f"p{i}" for i in range(n)]
    g = nx.DiGraph()
    g.add_nodes_from(names)
    dense = rng.uniform(0.3, 0.8)
    for i in range(n):
        for j in range(n):
            gap = layer[j] - layer[i]
            if gap == 1 and rng.random() < dense:
                g.add_edge(names[i], names[j])
            elif gap > 1 and rng.random() < 0.15:
                g.add_edge(names[i], names[j])
    red = nx.transitive_reduction(g)
    covers = [(a, b) for a in names for b in names if red.has_edge(a, b)]
    return Poset(names, covers)


def random_tree_poset(rng: random.Random, max_elements: int) -> Poset:
    """Random forest with random edge orientations; it is its own Hasse diagram."""
    n = rng.randint(1, max_elements)
    names = [f"t{i}" for i in range(n)]
    covers = []
    for i in range(1, n):
        if rng.random() < 0.85:
            j = rng.randrange(i)
            covers.append((names[j], names[i]) if rng.random() < 0.5 else (names[i], names[j]))
    return Poset(names, covers)


def _random_convex_set(rng: random.Random, P: Poset) -> set[str]:
    gens = [e for e in P.elements if rng.random() < 0.3] or [rng.choice(P.elements)]
    if rng.random() < 0.5:
        return set(gens).union(*(P.above[e] for e in gens))
    return set(gens).union(*(P.below[e] for e in gens))


def indicator_sum(P: Poset, field: Field, atoms: list[set[str]]) -> tuple[dict, dict]:
    """Dims and cover matrices of the direct sum of indicator functors of convex sets."""
    member = {p: [a for a, S in enumerate(atoms) if p in S] for p in P.elements}
    dims = {p: len(member[p]) for p in P.elements}
    maps = {}
    for a, b in P.covers:
        rows = [[1 if x == y else 0 for y in member[b]] for x in member[a]]
        maps[(a, b)] = Matrix._raw(field, rows, dims[b])
    return dims, maps


def conjugate(P: Poset, field: Field, dims: dict, maps: dict, rng: random.Random) -> dict:
    """Replace ``F(p<q)`` by ``g_p F(p<q) g_q^{-1}`` for random invertible ``g``."""
    g = {p: random_invertible(field, dims[p], rng) for p in P.elements}
    ginv = {p: inverse(g[p]) for p in P.elements}
    return {(a, b): compose(compose(g[a], M), ginv[b]) for (a, b), M in maps.items()}


def random_instance(seed: int, max_elements: int = 8, max_dim: int = 3, field: Field = QQ,
                    atoms: int | None = None, conjugated: bool = True) -> ModuleDiagram:
    """Random poset with a sum of ``atoms`` indicator functors of upper or lower sets.

    ``atoms`` defaults to a random count in ``1..max_dim``, so no value exceeds
    ``max_dim`` dimensions.
    """
    if max_elements < 1 or max_dim < 0:
        raise InputError("max_elements must be positive and max_dim nonnegative")
    rng = random.Random(seed)
    P = random_poset(rng, max_elements)
    if atoms is None:
        atoms = rng.randint(1, max_dim) if max_dim else 0
    if atoms > max_dim:
        raise InputError(f"{atoms} atoms could exceed max_dim={max_dim}")
    sets = [_random_convex_set(rng, P) for _ in range(atoms)]
    dims, maps = indicator_sum(P, field, sets)
    if conjugated:
        maps = conjugate(P, field, dims, maps, rng)
    return ModuleDiagram(P, field, dims, maps)


def random_tree_instance(seed: int, max_elements: int = 10, max_dim: int = 3,
                         field: Field = QQ) -> ModuleDiagram:
    """Random filtered tree with arbitrary cover matrices (always functorial on a tree)."""
    rng = random.Random(seed)
    P = random_tree_poset(rng, max_elements)
    dims = {p: rng.randint(0, max_dim) for p in P.elements}
    maps = {(a, b): random_matrix(field, dims[a], dims[b], rng) for a, b in P.covers}
    return ModuleDiagram(P, field, dims, maps)
