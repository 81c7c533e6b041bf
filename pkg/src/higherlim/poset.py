"""Finite filtered posets given by their cover relations.

The degree of an element is the length of the longest chain ending at it, so
minimal elements have degree 0.  Element identifiers are opaque strings and
the input order is kept as the canonical order everywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx
from networkx.utils import UnionFind

from .errors import CycleDetected, DuplicateElement, InputError, NotACover, SNotBelowP, UnknownElement


class Poset:
    """Immutable finite poset.

    ``covers`` holds pairs ``(lower, upper)`` with ``lower`` covered by
    ``upper``.  Reachability, degrees and length are derived at build time.
    """

    __slots__ = ("elements", "covers", "index", "lower_covers", "upper_covers",
                 "below", "above", "degree", "length")

    def __init__(self, elements: Sequence[str], covers: Iterable[tuple[str, str]]):
        elements = tuple(elements)
        covers = tuple((a, b) for a, b in covers)
        index: dict[str, int] = {}
        for i, e in enumerate(elements):
            if e in index:
                raise DuplicateElement(f"element {e!r} listed twice")
            index[e] = i
        seen = set()
        for a, b in covers:
            for x in (a, b):
                if x not in index:
                    raise UnknownElement(f"cover ({a!r}, {b!r}) mentions unknown element {x!r}")
            if (a, b) in seen:
                raise InputError(f"cover ({a!r}, {b!r}) listed twice")
            seen.add((a, b))

        g = nx.DiGraph()
        g.add_nodes_from(elements)
        g.add_edges_from(covers)
        try:
            cycle = nx.find_cycle(g)
        except nx.NetworkXNoCycle:
            cycle = None
        if cycle is not None:
            raise CycleDetected("covers contain a directed cycle through "
                                + " -> ".join(repr(u) for u, _ in cycle))

        above = {e: frozenset(nx.descendants(g, e)) for e in elements}
        for a, b in covers:
            for c in g.successors(a):
                if c != b and b in above[c]:
                    raise NotACover(f"({a!r}, {b!r}) is not a cover: {a!r} < {c!r} < {b!r}")

        lower = {e: [] for e in elements}
        upper = {e: [] for e in elements}
        for a, b in covers:
            lower[b].append(a)
            upper[a].append(b)

        degree: dict[str, int] = {}
        for e in nx.topological_sort(g):
            degree[e] = 1 + max((degree[q] for q in lower[e]), default=-1)

        self.elements = elements
        self.covers = covers
        self.index = index
        self.lower_covers = {e: tuple(v) for e, v in lower.items()}
        self.upper_covers = {e: tuple(v) for e, v in upper.items()}
        self.above = above
        self.below = {e: frozenset(q for q in elements if e in above[q]) for e in elements}
        self.degree = degree
        self.length = max(degree.values()) if elements else None

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e) -> bool:
        return e in self.index

    def __eq__(self, other) -> bool:
        return isinstance(other, Poset) and self.elements == other.elements and set(self.covers) == set(other.covers)

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"Poset({len(self.elements)} elements, {len(self.covers)} covers)"

    def _require(self, e: str) -> None:
        if e not in self.index:
            raise UnknownElement(f"unknown element {e!r}")

    def lt(self, p: str, q: str) -> bool:
        return q in self.above[p]

    def leq(self, p: str, q: str) -> bool:
        return p == q or q in self.above[p]

    def sorted(self, items: Iterable[str]) -> list[str]:
        """``items`` in the canonical element order."""
        return sorted(items, key=self.index.__getitem__)

    def by_degree(self) -> list[str]:
        """Elements in nondecreasing degree, ties broken by input order."""
        return sorted(self.elements, key=lambda e: (self.degree[e], self.index[e]))

    def induced(self, subset: Iterable[str]) -> "Poset":
        """Full subposet on ``subset`` with its own cover relation."""
        sub = set(subset)
        for e in sub:
            self._require(e)
        elems = [e for e in self.elements if e in sub]
        covers = []
        for a in elems:
            up = self.above[a] & sub
            for b in self.sorted(up):
                if not any(b in self.above[c] for c in up if c != b):
                    covers.append((a, b))
        return Poset(elems, covers)

    def hasse_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.elements)
        g.add_edges_from(self.covers)
        return g

    def n_components(self) -> int:
        return nx.number_connected_components(self.hasse_graph()) if self.elements else 0

    def maximal(self, subset: Iterable[str] | None = None) -> list[str]:
        sub = set(self.elements if subset is None else subset)
        return [e for e in self.elements if e in sub and not (self.above[e] & sub)]

    def minimal(self) -> list[str]:
        return [e for e in self.elements if not self.below[e]]


def build_poset(elements: Sequence[str], covers: Iterable[tuple[str, str]]) -> Poset:
    return Poset(elements, covers)


def chain(n: int, prefix: str = "") -> Poset:
    """The chain ``0 < 1 < ... < n-1``."""
    names = [f"{prefix}{i}" for i in range(n)]
    return Poset(names, list(zip(names, names[1:])))


def strict_down_set(P: Poset, p: str) -> Poset:
    P._require(p)
    return P.induced(P.below[p])


def closes_circuit(P: Poset, p: str, S: Iterable[str]) -> bool:
    """Whether some connected component of ``S`` has two or more maximal elements."""
    P._require(p)
    S = set(S)
    for s in S:
        P._require(s)
        if s not in P.below[p]:
            raise SNotBelowP(f"{s!r} is not strictly below {p!r}")
    # comparability graph of S; its components match those of S's Hasse diagram
    g = nx.Graph()
    g.add_nodes_from(S)
    g.add_edges_from((a, b) for a in S for b in P.above[a] & S)
    for comp in nx.connected_components(g):
        if sum(1 for s in comp if not (P.above[s] & comp)) >= 2:
            return True
    return False


@dataclass(frozen=True)
class Labelling:
    label: dict
    sup_label: int

    def __getitem__(self, p: str) -> int:
        return self.label[p]


def labelling(P: Poset) -> Labelling:
    B: dict[str, int] = {}
    for p in P.by_degree():
        if P.degree[p] <= 1:
            B[p] = P.degree[p]
            continue
        below = P.below[p]
        m = max(B[q] for q in below)
        window = [s for s in below if m - 1 <= B[s] <= m]
        B[p] = m + 1 if closes_circuit(P, p, window) else m
    label = {e: B[e] for e in P.elements}
    return Labelling(label, max(label.values(), default=0))


@dataclass(frozen=True)
class TreeDecomposition:
    tree_covers: tuple
    removed_covers: tuple
    degree_set: frozenset

    @property
    def bound(self) -> int:
        """Degree above which every higher limit vanishes: ``2 #D + 1``."""
        return 2 * len(self.degree_set) + 1


def _spanning_forest(P: Poset, order: Sequence[int]) -> TreeDecomposition:
    uf = UnionFind(P.elements)
    kept, removed = [], []
    for i in order:
        a, b = P.covers[i]
        if uf[a] != uf[b]:
            uf.union(a, b)
            kept.append(P.covers[i])
        else:
            removed.append(P.covers[i])
    return TreeDecomposition(tuple(kept), tuple(removed),
                             frozenset(P.degree[b] for _, b in removed))


def maximal_tree(P: Poset, seed: int | None = None, trials: int = 1) -> TreeDecomposition:
    """A maximal tree of the Hasse diagram and its degree set.

    Without a seed the covers are scanned by (degree of upper end, input
    order).  With a seed, that scan plus ``trials`` random scan orders are
    tried and the tree with the smallest degree set is returned; the first
    candidate wins ties, so the result never gets worse as ``trials`` grows.
    """
    base = sorted(range(len(P.covers)), key=lambda i: (P.degree[P.covers[i][1]], i))
    best = _spanning_forest(P, base)
    if seed is None:
        return best
    rng = random.Random(seed)
    for _ in range(trials):
        order = base[:]
        rng.shuffle(order)
        cand = _spanning_forest(P, order)
        if (len(cand.degree_set), len(cand.removed_covers)) < (len(best.degree_set), len(best.removed_covers)):
            best = cand
    return best


def is_filtered_tree(P: Poset) -> bool:
    return len(P.covers) == len(P.elements) - P.n_components()


def to_dot(P: Poset, labels: Labelling | None = None, tree: TreeDecomposition | None = None) -> str:
    lab = labels or labelling(P)
    dashed = set(tree.removed_covers) if tree is not None else set()
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for e in P.elements:
        lines.append(f'  "{e}" [label="{e} (d={P.degree[e]}, B={lab[e]})"];')
    for a, b in P.covers:
        style = " [style=dashed]" if (a, b) in dashed else ""
        lines.append(f'  "{a}" -> "{b}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"
