"""Bounded cochain complexes, chain maps and the cocylinder factorisations.

A :class:`CochainComplex` lives in degrees ``0..len(dims)-1``; the
differential ``d(k)`` maps degree ``k`` to ``k+1`` and is a
``dims[k+1] x dims[k]`` matrix.  Every degree outside the stored range is
zero, so ``d(k)`` and ``dim(k)`` are total functions.

Cocylinders use the block order ``(C^k, D^{k-1}, D^k)`` in degree ``k``.
"""

from __future__ import annotations

from typing import Sequence

from .errors import InvalidChainMap, InvalidComplex, NotTruncatable, ShapeMismatch
from .exactla import Field, Matrix, compose, is_epimorphism, rank

MINUS_INF = float("-inf")


class CochainComplex:
    __slots__ = ("field", "dims", "diffs")

    def __init__(self, field: Field, dims: Sequence[int], diffs: Sequence[Matrix] = (), check: bool = True):
        dims = list(dims)
        diffs = list(diffs)
        while dims and dims[-1] == 0:
            dims.pop()
        diffs = diffs[:max(len(dims) - 1, 0)]
        while len(diffs) < len(dims) - 1:
            k = len(diffs)
            diffs.append(Matrix.zeros(field, dims[k + 1], dims[k]))
        for k, d in enumerate(diffs):
            if d.shape != (dims[k + 1], dims[k]):
                raise ShapeMismatch(f"differential {k} has shape {d.shape}, expected {(dims[k + 1], dims[k])}")
        self.field = field
        self.dims = tuple(dims)
        self.diffs = tuple(diffs)
        if check:
            self.check()

    @classmethod
    def zero(cls, field: Field) -> "CochainComplex":
        return cls(field, [])

    @classmethod
    def module(cls, field: Field, n: int) -> "CochainComplex":
        """``field^n`` concentrated in degree 0."""
        return cls(field, [n])

    def dim(self, k: int) -> int:
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    def d(self, k: int) -> Matrix:
        if 0 <= k < len(self.diffs):
            return self.diffs[k]
        return Matrix.zeros(self.field, self.dim(k + 1), self.dim(k))

    @property
    def top(self) -> int:
        """Number of stored degrees (``height + 1``, or 0 for the zero complex)."""
        return len(self.dims)

    def is_zero(self) -> bool:
        return not self.dims

    def check(self) -> None:
        for k in range(len(self.diffs) - 1):
            if not compose(self.diffs[k + 1], self.diffs[k]).is_zero():
                raise InvalidComplex(f"d^{k + 1} d^{k} != 0")

    def __eq__(self, other) -> bool:
        return (isinstance(other, CochainComplex) and self.field == other.field
                and self.dims == other.dims and self.diffs == other.diffs)

    def __hash__(self) -> int:
        return hash((self.field, self.dims))

    def __repr__(self) -> str:
        return f"CochainComplex(dims={list(self.dims)})"


class ChainMap:
    __slots__ = ("source", "target", "components")

    def __init__(self, source: CochainComplex, target: CochainComplex,
                 components: Sequence[Matrix] = (), check: bool = True):
        n = max(source.top, target.top)
        comps = list(components)[:n]
        while len(comps) < n:
            k = len(comps)
            comps.append(Matrix.zeros(source.field, target.dim(k), source.dim(k)))
        for k, f in enumerate(comps):
            if f.shape != (target.dim(k), source.dim(k)):
                raise InvalidChainMap(f"component {k} has shape {f.shape}, "
                                      f"expected {(target.dim(k), source.dim(k))}")
        self.source = source
        self.target = target
        self.components = tuple(comps)
        if check:
            self.check()

    def __getitem__(self, k: int) -> Matrix:
        if 0 <= k < len(self.components):
            return self.components[k]
        return Matrix.zeros(self.source.field, self.target.dim(k), self.source.dim(k))

    def check(self) -> None:
        S, T = self.source, self.target
        for k in range(len(self.components)):
            if compose(self[k + 1], S.d(k)) != compose(T.d(k), self[k]):
                raise InvalidChainMap(f"square in degree {k} does not commute")

    @classmethod
    def identity(cls, C: CochainComplex) -> "ChainMap":
        return cls(C, C, [Matrix.identity(C.field, n) for n in C.dims], check=False)

    def then(self, g: "ChainMap") -> "ChainMap":
        """The composite ``g o self``."""
        if g.source != self.target:
            raise InvalidChainMap("composable chain maps must share the middle complex")
        n = max(self.source.top, g.target.top)
        return ChainMap(self.source, g.target, [compose(g[k], self[k]) for k in range(n)], check=False)

    def is_degreewise_epi(self) -> bool:
        return all(is_epimorphism(self[k]) for k in range(self.target.top))

    def __eq__(self, other) -> bool:
        return (isinstance(other, ChainMap) and self.source == other.source
                and self.target == other.target and self.components == other.components)

    def __hash__(self) -> int:
        return hash((self.source, self.target))

    def __repr__(self) -> str:
        return f"ChainMap({list(self.source.dims)} -> {list(self.target.dims)})"


def height(C: CochainComplex) -> int | float:
    """Top nonzero degree; ``MINUS_INF`` for the zero complex."""
    return len(C.dims) - 1 if C.dims else MINUS_INF


def cohomology_dims(C: CochainComplex) -> list[int]:
    C.check()
    ranks = [rank(d) for d in C.diffs]
    out = []
    for k, n in enumerate(C.dims):
        out.append(n - (ranks[k] if k < len(ranks) else 0) - (ranks[k - 1] if k > 0 else 0))
    while out and out[-1] == 0:
        out.pop()
    return out


def mapping_cocylinder(f: ChainMap) -> tuple[CochainComplex, ChainMap, ChainMap]:
    """Factor ``f`` as a quasi-isomorphism ``i`` followed by a split epi ``pi``.

    The differential is ``(c, d, d') -> (dc, d' - f(c) - dd, dd')``.
    """
    C, D = f.source, f.target
    F = C.field
    n = max(C.top, D.top + 1)
    sizes = [(C.dim(k), D.dim(k - 1), D.dim(k)) for k in range(n + 1)]
    diffs = []
    for k in range(n):
        (c0, e0, d0), (c1, e1, d1) = sizes[k], sizes[k + 1]
        blocks = [
            [C.d(k), None, None],
            [(-f[k]), (-D.d(k - 1)), Matrix.identity(F, d0)],
            [None, None, D.d(k)],
        ]
        diffs.append(Matrix.block(F, blocks, [c1, e1, d1], [c0, e0, d0]))
    cyl = CochainComplex(F, [sum(s) for s in sizes[:n]], diffs)
    i_comps, pi_comps = [], []
    for k in range(cyl.top):
        c, e, d = sizes[k]
        i_comps.append(Matrix.block(F, [[Matrix.identity(F, c)], [None], [f[k]]], [c, e, d], [c]))
        pi_comps.append(Matrix.block(F, [[None, None, Matrix.identity(F, d)]], [d], [c, e, d]))
    i = ChainMap(C, cyl, i_comps)
    pi = ChainMap(cyl, D, pi_comps)
    return cyl, i, pi


def is_truncatable(f: ChainMap) -> bool:
    D = f.target
    if D.is_zero():
        return False
    h = height(D)
    if not height(f.source) < h:
        return False
    return is_epimorphism(D.d(h - 1))


def truncate(D: CochainComplex, n: int) -> CochainComplex:
    """Sub-complex of ``D`` agreeing with it in degrees ``<= n`` and zero above."""
    return CochainComplex(D.field, D.dims[:n + 1], D.diffs[:n], check=False)


def truncated_mapping_cocylinder(f: ChainMap) -> tuple[CochainComplex, ChainMap, ChainMap]:
    """Height-preserving factorisation of a truncatable ``f``.

    ``pi`` projects onto ``D^k`` for ``k <= n`` and applies ``d: D^n -> D^{n+1}``
    to the shifted block in degree ``n+1``, where ``n + 1 = height(D)``.
    """
    if not is_truncatable(f):
        raise NotTruncatable(f"{f!r} is not truncatable")
    C, D = f.source, f.target
    F = C.field
    n = int(height(D)) - 1
    TD = truncate(D, n)
    Tf = ChainMap(C, TD, [f[k] for k in range(n + 1)], check=False)
    cyl, i, _ = mapping_cocylinder(Tf)
    pi_comps = []
    for k in range(max(cyl.top, D.top)):
        c, e, d = C.dim(k), TD.dim(k - 1), TD.dim(k)
        if k <= n:
            pi_comps.append(Matrix.block(F, [[None, None, Matrix.identity(F, d)]], [d], [c, e, d]))
        elif k == n + 1:
            pi_comps.append(Matrix.block(F, [[None, D.d(n), None]], [D.dim(k)], [c, e, d]))
        else:
            pi_comps.append(Matrix.zeros(F, D.dim(k), c + e + d))
    pi = ChainMap(cyl, D, pi_comps)
    return cyl, i, pi


def mapping_cone(f: ChainMap) -> CochainComplex:
    """Mapping cone shifted up one degree so that it starts in degree 0.

    Degree ``j`` holds ``source^j + target^{j-1}`` (the cone's degree ``j-1``)
    with differential ``(c, d) -> (-dc, f(c) + dd)``.
    """
    C, D = f.source, f.target
    F = C.field
    n = max(C.top, D.top + 1)
    sizes = [(C.dim(j), D.dim(j - 1)) for j in range(n + 1)]
    diffs = []
    for j in range(n):
        blocks = [[-C.d(j), None], [f[j], D.d(j - 1)]]
        diffs.append(Matrix.block(F, blocks, list(sizes[j + 1]), list(sizes[j])))
    return CochainComplex(F, [a + b for a, b in sizes[:n]], diffs)


def is_quasi_iso(f: ChainMap) -> bool:
    f.check()
    return cohomology_dims(mapping_cone(f)) == []
