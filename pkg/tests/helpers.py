"""Random complexes and chain maps for property tests."""

import random

from higherlim.complex import ChainMap, CochainComplex
from higherlim.exactla import GF, QQ, Matrix, compose, kernel, random_matrix

FIELDS = [QQ, GF(2), GF(3), GF(5)]


def random_complex(rng: random.Random, field, max_len=4, max_dim=3) -> CochainComplex:
    dims = [rng.randint(0, max_dim) for _ in range(rng.randint(0, max_len))]
    diffs = []
    prev = None
    for k in range(len(dims) - 1):
        R = random_matrix(field, dims[k + 1], dims[k], rng)
        if prev is not None:
            # vanish on the image of the previous differential
            left = kernel(prev.T).basis
            R = compose(random_matrix(field, dims[k + 1], left.ncols, rng), left.T)
        diffs.append(R)
        prev = R
    return CochainComplex(field, dims, diffs)


def direct_sum(C: CochainComplex, E: CochainComplex) -> CochainComplex:
    n = max(C.top, E.top)
    diffs = []
    for k in range(n - 1):
        diffs.append(Matrix.block(C.field, [[C.d(k), None], [None, E.d(k)]],
                                  [C.dim(k + 1), E.dim(k + 1)], [C.dim(k), E.dim(k)]))
    return CochainComplex(C.field, [C.dim(k) + E.dim(k) for k in range(n)], diffs)


def random_chain_map(rng: random.Random, field, max_len=4, max_dim=3) -> ChainMap:
    """``j + dh + hd`` with ``j`` a summand inclusion or zero and ``h`` random."""
    C = random_complex(rng, field, max_len, max_dim)
    if rng.random() < 0.5:
        D = direct_sum(C, random_complex(rng, field, max_len, max_dim))
        base = [Matrix.block(field, [[Matrix.identity(field, C.dim(k))], [None]],
                             [C.dim(k), D.dim(k) - C.dim(k)], [C.dim(k)]) for k in range(max(C.top, D.top))]
    else:
        D = random_complex(rng, field, max_len, max_dim)
        base = [Matrix.zeros(field, D.dim(k), C.dim(k)) for k in range(max(C.top, D.top))]
    n = max(C.top, D.top)
    h = [random_matrix(field, D.dim(k - 1), C.dim(k), rng) for k in range(n + 1)]
    comps = []
    for k in range(n):
        comps.append(base[k] + compose(D.d(k - 1), h[k]) + compose(h[k + 1], C.d(k)))
    return ChainMap(C, D, comps)
