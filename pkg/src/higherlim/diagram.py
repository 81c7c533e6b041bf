"""Contravariant diagrams on a poset and their fibrant replacement.

A diagram assigns a vector space (or a cochain complex) to each element and,
to each cover ``p < q``, a restriction map from the value at ``q`` to the
value at ``p``.  Limits are computed degreewise as the subspace of the
product cut out by the cover compatibility equations; in a finite poset
every relation factors through covers, so for a functorial diagram these
equations already force compatibility along every relation.

The replacement is built element by element in nondecreasing degree.  At
each ``p`` the matching map ``F(p) -> lim_{<p} RF`` is factored as a
quasi-isomorphism followed by an epimorphism: trivially when ``F`` is
locally fibrant at ``p``, through the truncated cocylinder when the matching
map is truncatable, and through the full cocylinder otherwise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping

from .complex import (ChainMap, CochainComplex, cohomology_dims, height, is_truncatable,
                      mapping_cocylinder, truncated_mapping_cocylinder)
from .errors import InvalidDiagram, NonCommutingSquare, NotInLimit, ShapeMismatch, UnknownElement
from .exactla import Field, Kernel, Matrix, compose, kernel, rank
from .poset import Poset


class ModuleDiagram:
    """A functor from the opposite of ``poset`` to finite-dimensional vector spaces.

    ``restriction[(p, q)]`` is the ``dim(p) x dim(q)`` matrix of ``F(q) -> F(p)``
    for each cover ``p < q``.  Construction validates functoriality.
    """

    def __init__(self, poset: Poset, field: Field, dims: Mapping[str, int],
                 restriction: Mapping[tuple[str, str], Matrix], validate: bool = True):
        self.poset = poset
        self.field = field
        missing = [p for p in poset.elements if p not in dims]
        if missing:
            raise InvalidDiagram(f"no dimension given for {missing[0]!r}")
        self.dims = {p: int(dims[p]) for p in poset.elements}
        extra = set(dims) - set(poset.elements)
        if extra:
            raise UnknownElement(f"dimension given for unknown element {sorted(extra)[0]!r}")
        covers = set(poset.covers)
        for key in restriction:
            if key not in covers:
                raise InvalidDiagram(f"map given for {key[0]}<{key[1]}, which is not a cover")
        self.restriction: dict[tuple[str, str], Matrix] = {}
        for a, b in poset.covers:
            M = restriction.get((a, b))
            if M is None:
                if self.dims[a] and self.dims[b]:
                    raise InvalidDiagram(f"no map given for cover {a}<{b}")
                M = Matrix.zeros(field, self.dims[a], self.dims[b])
            if M.field != field:
                raise ShapeMismatch(f"map {a}<{b} is over {M.field}, diagram is over {field}")
            if M.shape != (self.dims[a], self.dims[b]):
                raise ShapeMismatch(f"map {a}<{b} has shape {M.shape}, expected {(self.dims[a], self.dims[b])}")
            self.restriction[(a, b)] = M
        self._relations: dict[tuple[str, str], Matrix] | None = None
        if validate:
            validate_functor(self)

    def map(self, p: str, q: str) -> Matrix:
        """Matrix of ``F(q) -> F(p)`` for ``p <= q``."""
        if self._relations is None:
            validate_functor(self)
        if p == q:
            return Matrix.identity(self.field, self.dims[p])
        try:
            return self._relations[(p, q)]
        except KeyError:
            raise InvalidDiagram(f"{p!r} is not below {q!r}") from None

    def restrict(self, elements: Iterable[str]) -> "ModuleDiagram":
        sub = self.poset.induced(elements)
        return ModuleDiagram(sub, self.field, {p: self.dims[p] for p in sub.elements},
                             {(a, b): self.map(a, b) for a, b in sub.covers})

    def as_complexes(self) -> "ComplexDiagram":
        value = {p: CochainComplex.module(self.field, n) for p, n in self.dims.items()}
        restr = {(a, b): ChainMap(value[b], value[a], [M], check=False)
                 for (a, b), M in self.restriction.items()}
        return ComplexDiagram(self.poset, self.field, value, restr)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ModuleDiagram) and self.poset == other.poset and self.field == other.field
                and self.dims == other.dims and self.restriction == other.restriction)

    def __repr__(self) -> str:
        return f"ModuleDiagram({self.poset!r}, dims={self.dims})"


def validate_functor(F: ModuleDiagram) -> None:
    """Compute ``F(p <= q)`` for all comparable pairs, checking path independence.

    Pairs are handled with ``p`` in decreasing degree, so every factorisation
    ``F(p < x) F(x <= q)`` through an upper cover ``x`` of ``p`` is already known.
    """
    P = F.poset
    rel: dict[tuple[str, str], Matrix] = {}
    witness: dict[tuple[str, str], str] = {}
    for p in reversed(P.by_degree()):
        for x in P.upper_covers[p]:
            first = F.restriction[(p, x)]
            targets = [x] + P.sorted(P.above[x])
            for q in targets:
                M = first if q == x else compose(first, rel[(x, q)])
                if (p, q) in rel:
                    if rel[(p, q)] != M:
                        raise NonCommutingSquare(p, q, witness[(p, q)], x)
                else:
                    rel[(p, q)] = M
                    witness[(p, q)] = x
    F._relations = rel


class ComplexDiagram:
    """A functor from the opposite of ``poset`` to cochain complexes."""

    def __init__(self, poset: Poset, field: Field, value: Mapping[str, CochainComplex],
                 restriction: Mapping[tuple[str, str], ChainMap]):
        self.poset = poset
        self.field = field
        self.value = {p: value[p] for p in poset.elements}
        self.restriction = {c: restriction[c] for c in poset.covers}
        for (a, b), f in self.restriction.items():
            if f.source is not self.value[b] and f.source != self.value[b]:
                raise InvalidDiagram(f"restriction {a}<{b} does not start at the value of {b!r}")
            if f.target is not self.value[a] and f.target != self.value[a]:
                raise InvalidDiagram(f"restriction {a}<{b} does not end at the value of {a!r}")

    def restrict(self, elements: Iterable[str]) -> "ComplexDiagram":
        sub = self.poset.induced(elements)
        restr = {}
        for a, b in sub.covers:
            if (a, b) in self.restriction:
                restr[(a, b)] = self.restriction[(a, b)]
            else:
                raise InvalidDiagram(f"{a}<{b} is a cover of the subposet but not of the poset; "
                                     "restrict to convex subsets only")
        return ComplexDiagram(sub, self.field, {p: self.value[p] for p in sub.elements}, restr)

    def height(self) -> int | float:
        return max((height(C) for C in self.value.values()), default=float("-inf"))


@dataclass
class LimitPresentation:
    """The limit complex with its embedding into the product of the values.

    ``kernels[k]`` presents degree ``k`` of the limit as a null-space basis
    inside the product ``(+)_q value(q)^k``, blocks in element order.
    """

    limit: CochainComplex
    kernels: list[Kernel]
    offsets: list[dict[str, int]]
    projection: dict[str, ChainMap]

    def inclusion(self, k: int) -> Matrix:
        return self.kernels[k].basis

    def coordinates(self, k: int, X: Matrix) -> Matrix:
        try:
            return self.kernels[k].coordinates(X)
        except ValueError:
            raise NotInLimit(f"vectors in degree {k} are not compatible families") from None


def _compatibility_matrix(D: ComplexDiagram, k: int, offsets: dict[str, int], n: int) -> Matrix:
    F = D.field
    p = F.p
    rows = []
    for a, b in D.poset.covers:
        R = D.restriction[(a, b)][k]
        oa, ob = offsets[a], offsets[b]
        for i in range(D.value[a].dim(k)):
            row = [0] * n
            row[oa + i] = 1
            for j, x in enumerate(R.entries[i]):
                if x:
                    row[ob + j] = -x if p is None else (-x) % p
            rows.append(row)
    return Matrix._raw(F, rows, n)


def limit_over(D: ComplexDiagram) -> LimitPresentation:
    F = D.field
    elems = D.poset.elements
    top = max((D.value[q].top for q in elems), default=0)
    kernels, offsets = [], []
    for k in range(top + 1):
        off, n = {}, 0
        for q in elems:
            off[q] = n
            n += D.value[q].dim(k)
        offsets.append(off)
        kernels.append(kernel(_compatibility_matrix(D, k, off, n)))
    diffs = []
    for k in range(top):
        K = kernels[k].basis
        pieces = []
        for q in elems:
            C = D.value[q]
            if C.dim(k + 1):
                pieces.append(compose(C.d(k), K.row_slice(offsets[k][q], offsets[k][q] + C.dim(k))).entries)
        Y = Matrix(F, sum(len(x) for x in pieces), K.ncols, sum(pieces, ()))
        try:
            diffs.append(kernels[k + 1].coordinates(Y))
        except ValueError:
            raise NotInLimit(f"product differential leaves the limit in degree {k}") from None
    dims = [K.dim for K in kernels[:top]]
    lim = CochainComplex(F, dims, diffs)
    projection = {}
    for q in elems:
        C = D.value[q]
        comps = [kernels[k].basis.row_slice(offsets[k][q], offsets[k][q] + C.dim(k))
                 for k in range(max(lim.top, C.top))]
        projection[q] = ChainMap(lim, C, comps, check=False)
    return LimitPresentation(lim, kernels, offsets, projection)


class Case(str, enum.Enum):
    TRIVIAL = "Trivial"
    TRUNCATED = "Truncated"
    COCYLINDER = "Cocylinder"

    def __str__(self) -> str:
        return self.value


@dataclass
class FibrantReplacement:
    diagram: ModuleDiagram
    rf: ComplexDiagram
    case: dict[str, Case]
    comparison: dict[str, ChainMap]
    matching: dict[str, ChainMap]
    limits: dict[str, LimitPresentation]
    eps: dict[str, ChainMap]
    locally_fibrant: dict[str, bool]
    cutoff: int | None = None
    _global: LimitPresentation | None = dc_field(default=None, repr=False)

    def height(self, p: str | None = None) -> int | float:
        if p is None:
            return self.rf.height()
        return height(self.rf.value[p])

    def global_limit(self) -> LimitPresentation:
        if self._global is None:
            self._global = limit_over(self.rf)
        return self._global

    def report(self) -> list[dict]:
        rows = []
        for p in self.rf.poset.elements:
            C = self.rf.value[p]
            M = self.matching[p]
            rows.append({
                "element": p,
                "case": str(self.case[p]),
                "dims": list(C.dims),
                "height": None if C.is_zero() else int(height(C)),
                "matching_ranks": [rank(M[k]) for k in range(M.target.top)],
            })
        return rows


def _module_matching_is_epi(F: ModuleDiagram, p: str) -> bool:
    P = F.poset
    below = P.below[p]
    if not below:
        return True
    L = limit_over(F.restrict(below).as_complexes())
    if L.limit.dim(0) == 0:
        return True
    X = _stack_columns(F, [(q, F.map(q, p)) for q in P.sorted(below)], F.dims[p])
    return rank(L.coordinates(0, X)) == L.limit.dim(0)


def _stack_columns(F: ModuleDiagram, blocks: list[tuple[str, Matrix]], ncols: int) -> Matrix:
    rows = sum((M.entries for _, M in blocks), ())
    return Matrix(F.field, len(rows), ncols, rows)


def is_locally_fibrant(F: ModuleDiagram, p: str, _memo: dict | None = None) -> bool:
    """Whether every matching map ``F(q) -> lim_{<q} F`` with ``q <= p`` is onto."""
    if p not in F.poset:
        raise UnknownElement(f"unknown element {p!r}")
    memo = {} if _memo is None else _memo
    if p not in memo:
        memo[p] = (all(is_locally_fibrant(F, q, memo) for q in F.poset.lower_covers[p])
                   and _module_matching_is_epi(F, p))
    return memo[p]


def _matching(F: ModuleDiagram, comparison: Mapping[str, ChainMap], L: LimitPresentation,
              below: list[str], p: str) -> ChainMap:
    src = CochainComplex.module(F.field, F.dims[p])
    blocks = [(q, compose(comparison[q][0], F.map(q, p))) for q in below]
    X = _stack_columns(F, blocks, F.dims[p])
    comps = [L.coordinates(0, X)] if L.limit.top else []
    return ChainMap(src, L.limit, comps)


def matching_map(F: ModuleDiagram, R: FibrantReplacement, p: str) -> ChainMap:
    """``F(p) -> lim_{<p} RF``, sending ``x`` to the family of its comparison images."""
    if p not in F.poset:
        raise UnknownElement(f"unknown element {p!r}")
    below = F.poset.sorted(F.poset.below[p])
    L = limit_over(R.rf.restrict(below))
    return _matching(F, R.comparison, L, below, p)


def fibrant_replacement(F: ModuleDiagram, cutoff: int | None = None) -> FibrantReplacement:
    """Build the replacement; with ``cutoff`` the truncated case is only used up to that degree."""
    P = F.poset
    field = F.field
    rf: dict[str, CochainComplex] = {}
    restr: dict[tuple[str, str], ChainMap] = {}
    case, comparison, matching, limits, eps = {}, {}, {}, {}, {}
    local: dict[str, bool] = {}
    for p in P.by_degree():
        below = P.sorted(P.below[p])
        sub = P.induced(below)
        D = ComplexDiagram(sub, field, {q: rf[q] for q in below}, {c: restr[c] for c in sub.covers})
        L = limit_over(D)
        e = _matching(F, comparison, L, below, p)
        src = e.source
        if is_locally_fibrant(F, p, local):
            case[p] = Case.TRIVIAL
            rf[p] = src
            comparison[p] = ChainMap.identity(src)
            matching[p] = e
        elif is_truncatable(e) and (cutoff is None or P.degree[p] <= cutoff):
            case[p] = Case.TRUNCATED
            rf[p], comparison[p], matching[p] = truncated_mapping_cocylinder(e)
        else:
            case[p] = Case.COCYLINDER
            rf[p], comparison[p], matching[p] = mapping_cocylinder(e)
        limits[p] = L
        eps[p] = e
        for q in P.lower_covers[p]:
            restr[(q, p)] = matching[p].then(L.projection[q])
    return FibrantReplacement(F, ComplexDiagram(P, field, rf, restr), case, comparison,
                              matching, limits, eps, {p: local[p] for p in P.elements}, cutoff)


def higher_limits(F: ModuleDiagram, at: str | None = None,
                  replacement: FibrantReplacement | None = None) -> list[int]:
    """Dimensions of the higher limits of ``F`` (over ``P_{<at}`` when ``at`` is given)."""
    R = replacement if replacement is not None else fibrant_replacement(F)
    if at is None:
        return cohomology_dims(R.global_limit().limit)
    if at not in F.poset:
        raise UnknownElement(f"unknown element {at!r}")
    return cohomology_dims(R.limits[at].limit)


def limit_dim(F: ModuleDiagram) -> int:
    """Dimension of ``lim F`` computed directly as a null space."""
    return limit_over(F.as_complexes()).limit.dim(0)
