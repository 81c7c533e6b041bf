"""Higher limits from the cochain complex of the order complex.

Degree ``n`` is the product of ``F(p_0)`` over strict chains
``p_0 < ... < p_n``.  The coboundary applies ``F(p_0 <= p_1)`` to the
zeroth face and signs ``(-1)^i`` to the others.  This route shares nothing
with the fibrant replacement except the exact linear algebra.
"""

from __future__ import annotations

from typing import Iterable

from .complex import CochainComplex, cohomology_dims
from .diagram import ModuleDiagram
from .errors import UnknownElement
from .exactla import Matrix, _canon_q


def strict_chains(F: ModuleDiagram, elements: Iterable[str] | None = None) -> list[list[tuple[str, ...]]]:
    """Strict chains by degree, each list sorted lexicographically in element order."""
    P = F.poset
    sub = set(P.elements if elements is None else elements)
    elems = [e for e in P.elements if e in sub]
    out: list[list[tuple[str, ...]]] = []
    layer = [(e,) for e in elems]
    while layer:
        out.append(layer)
        nxt = []
        for c in layer:
            for e in elems:
                if P.lt(c[-1], e):
                    nxt.append(c + (e,))
        layer = sorted(nxt, key=lambda c: [P.index[x] for x in c])
    return out


def order_cochain(F: ModuleDiagram, over: Iterable[str] | None = None) -> CochainComplex:
    field = F.field
    p = field.p
    chains = strict_chains(F, over)
    offsets = []
    dims = []
    for layer in chains:
        off, n = {}, 0
        for c in layer:
            off[c] = n
            n += F.dims[c[0]]
        offsets.append(off)
        dims.append(n)
    diffs = []
    for k in range(len(chains) - 1):
        rows = [[0] * dims[k] for _ in range(dims[k + 1])]
        src = offsets[k]
        for c, r0 in offsets[k + 1].items():
            d0 = F.dims[c[0]]
            if not d0:
                continue
            # zeroth face restricts along p_0 <= p_1
            R = F.map(c[0], c[1])
            c0 = src[c[1:]]
            for i in range(d0):
                row = rows[r0 + i]
                for j, x in enumerate(R.entries[i]):
                    if x:
                        row[c0 + j] += x
            for i in range(1, len(c)):
                face = c[:i] + c[i + 1:]
                sign = -1 if i % 2 else 1
                cf = src[face]
                for t in range(d0):
                    rows[r0 + t][cf + t] += sign
        if p is None:
            rows = [[_canon_q(x) for x in row] for row in rows]
        else:
            rows = [[x % p for x in row] for row in rows]
        diffs.append(Matrix._raw(field, rows, dims[k]))
    return CochainComplex(field, dims, diffs)


def oracle_higher_limits(F: ModuleDiagram, at: str | None = None) -> list[int]:
    if at is None:
        return cohomology_dims(order_cochain(F))
    if at not in F.poset:
        raise UnknownElement(f"unknown element {at!r}")
    return cohomology_dims(order_cochain(F, F.poset.below[at]))
