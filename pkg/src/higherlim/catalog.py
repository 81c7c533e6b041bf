"""Small named posets and functors used in tests and sample files."""

from __future__ import annotations

from .diagram import ModuleDiagram
from .exactla import Field, Matrix, QQ
from .poset import Poset, chain


def circle() -> Poset:
    """Face poset of a circle with two vertices and two edges."""
    return Poset(["v1", "v2", "e1", "e2"], [("v1", "e1"), ("v2", "e1"), ("v1", "e2"), ("v2", "e2")])


def circle_with_top() -> Poset:
    P = circle()
    return Poset(P.elements + ("t",), P.covers + (("e1", "t"), ("e2", "t")))


def labelling_figure() -> Poset:
    """Nine-element poset whose labels top out at 2 while its length is 4."""
    names = [f"p{i}" for i in range(9)]
    covers = [("p0", "p1"), ("p0", "p2"), ("p0", "p3"), ("p1", "p4"), ("p2", "p5"), ("p3", "p6"),
              ("p4", "p7"), ("p5", "p7"), ("p6", "p8"), ("p7", "p8")]
    return Poset(names, covers)


def hollow_square() -> Poset:
    """Face poset of the boundary of a square: four vertices, four edges."""
    v = ["a", "b", "c", "d"]
    edges = {"ab": ("a", "b"), "bc": ("b", "c"), "cd": ("c", "d"), "da": ("d", "a")}
    covers = [(x, e) for e, ends in edges.items() for x in ends]
    return Poset(v + list(edges), covers)


def square_with_cells(n_cells: int = 2) -> Poset:
    """Hollow square with ``n_cells`` 2-cells glued along the boundary (1: disk, 2: sphere)."""
    P = hollow_square()
    cells = [f"f{i}" for i in range(n_cells)]
    edges = ["ab", "bc", "cd", "da"]
    return Poset(P.elements + tuple(cells), P.covers + tuple((e, f) for f in cells for e in edges))


def diamond() -> Poset:
    return Poset(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def constant(P: Poset, field: Field = QQ, n: int = 1) -> ModuleDiagram:
    one = Matrix.identity(field, n)
    return ModuleDiagram(P, field, {p: n for p in P.elements}, {c: one for c in P.covers})


def zero_chain(n: int = 3, field: Field = QQ) -> ModuleDiagram:
    """Chain ``0 < 1 < ... < n-1`` with a line at each point and zero restrictions."""
    P = chain(n)
    z = Matrix.zeros(field, 1, 1)
    return ModuleDiagram(P, field, {p: 1 for p in P.elements}, {c: z for c in P.covers})
