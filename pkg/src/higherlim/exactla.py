"""Exact dense linear algebra over the rationals and prime fields.

Rational scalars are stored canonically: a plain ``int`` when integral and a
reduced :class:`fractions.Fraction` otherwise.  Keeping integers as ``int``
keeps the common case (0/1 incidence-like matrices) on the fast path.
Prime-field scalars are ints in ``[0, p)``.

Elimination over the rationals is fraction-free on integer rows with content
removal; only the final reduced rows are turned back into fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from .errors import InputError, ShapeMismatch


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _canon_q(x):
    if isinstance(x, int):
        return x
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class Field:
    """Coefficient field: the rationals when ``p`` is None, else GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if isinstance(self.p, bool) or not isinstance(self.p, int):
                raise InputError(f"field characteristic must be an int, got {self.p!r}")
            if not (self.p < 2**31 and _is_prime(self.p)):
                raise InputError(f"{self.p} is not a prime below 2^31")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __call__(self, x):
        """Coerce an int, Fraction or string to a canonical scalar."""
        if isinstance(x, bool):
            raise InputError(f"not a scalar: {x!r}")
        if isinstance(x, str):
            try:
                x = Fraction(x.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"cannot parse scalar {x!r}") from exc
        if self.p is None:
            if isinstance(x, int):
                return x
            if isinstance(x, Fraction):
                return _canon_q(x)
            raise InputError(f"not an exact scalar: {x!r}")
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise InputError(f"{x} has no image in GF({self.p})")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, int):
            return x % self.p
        raise InputError(f"not an exact scalar: {x!r}")

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return _canon_q(Fraction(1) / x)
        return pow(x, -1, self.p)

    def format(self, x) -> str:
        return str(x)

    def __str__(self) -> str:
        return "Q" if self.p is None else f"Fp:{self.p}"

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``Q`` or ``Fp:P`` (``GF(P)`` and ``FP`` are accepted too)."""
        t = text.strip()
        if t in ("Q", "QQ"):
            return cls()
        for prefix in ("Fp:", "GF(", "F"):
            if t.startswith(prefix):
                body = t[len(prefix):].rstrip(")")
                if body.isdigit():
                    return cls(int(body))
        raise InputError(f"unknown field {text!r}; expected Q or Fp:P")


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix; ``entries`` is a tuple of row tuples."""

    field: Field
    nrows: int
    ncols: int
    entries: tuple = dc_field(repr=False)

    def __post_init__(self):
        if len(self.entries) != self.nrows or any(len(r) != self.ncols for r in self.entries):
            raise ShapeMismatch(f"entries do not form a {self.nrows}x{self.ncols} array")

    # construction ---------------------------------------------------------
    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Sequence], ncols: int | None = None) -> "Matrix":
        data = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise ShapeMismatch("column count of a matrix with no rows is ambiguous")
            ncols = len(data[0])
        return cls(field, len(data), ncols, data)

    @classmethod
    def _raw(cls, field: Field, rows: Sequence[Sequence], ncols: int) -> "Matrix":
        # caller guarantees canonical scalars
        return cls(field, len(rows), ncols, tuple(map(tuple, rows)))

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        row = (0,) * ncols
        return cls(field, nrows, ncols, (row,) * nrows)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def block(cls, field: Field, blocks: Sequence[Sequence["Matrix | None"]],
              row_sizes: Sequence[int], col_sizes: Sequence[int]) -> "Matrix":
        """Assemble a block matrix; ``None`` blocks are zero."""
        ncols = sum(col_sizes)
        out = []
        for bi, rs in enumerate(row_sizes):
            rows = [[0] * ncols for _ in range(rs)]
            off = 0
            for bj, cs in enumerate(col_sizes):
                b = blocks[bi][bj]
                if b is not None:
                    if b.shape != (rs, cs):
                        raise ShapeMismatch(f"block ({bi},{bj}) is {b.shape}, expected {(rs, cs)}")
                    for i, brow in enumerate(b.entries):
                        rows[i][off:off + cs] = brow
                off += cs
            out.extend(rows)
        return cls._raw(field, out, ncols)

    # basic access ---------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]

    def __str__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"[{body}]  ({self.nrows}x{self.ncols} over {self.field})"

    # arithmetic -----------------------------------------------------------
    def _check_field(self, other: "Matrix"):
        if self.field != other.field:
            raise ShapeMismatch(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return compose(self, other)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        p = self.field.p
        if p is None:
            rows = [[_canon_q(a + b) for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        else:
            rows = [[(a + b) % p for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        return Matrix._raw(self.field, rows, self.ncols)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        p = self.field.p
        if p is None:
            rows = [[_canon_q(c * a) for a in r] for r in self.entries]
        else:
            rows = [[c * a % p for a in r] for r in self.entries]
        return Matrix._raw(self.field, rows, self.ncols)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.field, list(zip(*self.entries)) if self.nrows else
                           [[] for _ in range(self.ncols)], self.nrows)

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(idx), self.ncols, tuple(self.entries[i] for i in idx))

    def row_slice(self, start: int, stop: int) -> "Matrix":
        return Matrix(self.field, stop - start, self.ncols, self.entries[start:stop])

    def col_slice(self, start: int, stop: int) -> "Matrix":
        return Matrix(self.field, self.nrows, stop - start, tuple(r[start:stop] for r in self.entries))


def hstack(field: Field, mats: Sequence[Matrix], nrows: int) -> Matrix:
    for m in mats:
        if m.nrows != nrows:
            raise ShapeMismatch(f"hstack: {m.shape} has wrong row count (want {nrows})")
    rows = [sum((m.entries[i] for m in mats), ()) for i in range(nrows)]
    return Matrix(field, nrows, sum(m.ncols for m in mats), tuple(rows))


def vstack(field: Field, mats: Sequence[Matrix], ncols: int) -> Matrix:
    for m in mats:
        if m.ncols != ncols:
            raise ShapeMismatch(f"vstack: {m.shape} has wrong column count (want {ncols})")
    rows = sum((m.entries for m in mats), ())
    return Matrix(field, len(rows), ncols, rows)


def block_diag(field: Field, mats: Sequence[Matrix]) -> Matrix:
    n = len(mats)
    blocks = [[mats[i] if i == j else None for j in range(n)] for i in range(n)]
    return Matrix.block(field, blocks, [m.nrows for m in mats], [m.ncols for m in mats])


def compose(A: Matrix, B: Matrix) -> Matrix:
    """Exact product ``A @ B``; zero entries of ``A`` are skipped."""
    A._check_field(B)
    if A.ncols != B.nrows:
        raise ShapeMismatch(f"cannot compose {A.shape} with {B.shape}")
    p = A.field.p
    n = B.ncols
    Brows = B.entries
    out = []
    for arow in A.entries:
        acc = [0] * n
        for k, a in enumerate(arow):
            if a:
                brow = Brows[k]
                if a == 1:
                    for j, b in enumerate(brow):
                        if b:
                            acc[j] += b
                else:
                    for j, b in enumerate(brow):
                        if b:
                            acc[j] += a * b
        if p is None:
            out.append([_canon_q(x) for x in acc])
        else:
            out.append([x % p for x in acc])
    return Matrix._raw(A.field, out, n)


# elimination -----------------------------------------------------------------

def _integer_rows(M: Matrix) -> list[list[int]]:
    rows = []
    for r in M.entries:
        den = reduce(lambda a, x: a * x.denominator // gcd(a, x.denominator),
                     (x for x in r if isinstance(x, Fraction)), 1)
        if den == 1:
            rows.append(list(r))
        else:
            rows.append([int(x * den) for x in r])
    return rows


def _eliminate_q(rows: list[list[int]], ncols: int, reduced: bool) -> list[int]:
    """Fraction-free (reduced) row echelon form in place; returns pivot columns."""
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        best = None
        for i in range(r, nrows):
            v = rows[i][c]
            if v and (best is None or abs(v) < best):
                piv, best = i, abs(v)
                if best == 1:
                    break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        a = prow[c]
        nz = [(j, prow[j]) for j in range(c, ncols) if prow[j]]
        for i in (range(nrows) if reduced else range(r + 1, nrows)):
            if i == r:
                continue
            row = rows[i]
            b = row[c]
            if not b:
                continue
            g = gcd(a, b)
            a1, b1 = a // g, b // g
            if a1 != 1:
                if a1 == -1:
                    row[:] = [-x for x in row]
                else:
                    row[:] = [a1 * x for x in row]
            for j, v in nz:
                row[j] -= b1 * v
            g2 = gcd(*row)
            if g2 > 1:
                row[:] = [x // g2 for x in row]
        pivots.append(c)
        r += 1
    return pivots


def _eliminate_p(rows: list[list[int]], ncols: int, p: int, reduced: bool) -> list[int]:
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = pow(prow[c], -1, p)
        if inv != 1:
            prow[:] = [x * inv % p for x in prow]
        nz = [(j, prow[j]) for j in range(c, ncols) if prow[j]]
        for i in (range(nrows) if reduced else range(r + 1, nrows)):
            if i == r:
                continue
            row = rows[i]
            b = row[c]
            if not b:
                continue
            for j, v in nz:
                row[j] = (row[j] - b * v) % p
        pivots.append(c)
        r += 1
    return pivots


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (nonzero rows only) and the pivot columns."""
    if M.field.p is None:
        rows = _integer_rows(M)
        pivots = _eliminate_q(rows, M.ncols, reduced=True)
        out = []
        for i, c in enumerate(pivots):
            a = rows[i][c]
            out.append([_canon_q(Fraction(x, a)) if x else 0 for x in rows[i]])
    else:
        rows = [list(r) for r in M.entries]
        pivots = _eliminate_p(rows, M.ncols, M.field.p, reduced=True)
        out = rows[:len(pivots)]
    return Matrix._raw(M.field, out, M.ncols), pivots


def rank(M: Matrix) -> int:
    if M.nrows == 0 or M.ncols == 0:
        return 0
    # eliminate along the shorter side
    if M.ncols < M.nrows:
        M = M.T
    if M.field.p is None:
        return len(_eliminate_q(_integer_rows(M), M.ncols, reduced=False))
    return len(_eliminate_p([list(r) for r in M.entries], M.ncols, M.field.p, reduced=False))


@dataclass(frozen=True)
class Kernel:
    """Null-space basis together with the coordinate rows it is keyed on.

    Column ``t`` of ``basis`` has a 1 in row ``free[t]`` and every other
    column is 0 there, so a vector ``x`` of the null space has coordinates
    ``x[free]``.
    """

    basis: Matrix
    free: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.free)

    def coordinates(self, X: Matrix) -> Matrix:
        """Coordinates of the columns of ``X`` in this basis (checked exactly)."""
        C = X.select_rows(self.free)
        if compose(self.basis, C) != X:
            raise ValueError("columns do not lie in the subspace")
        return C


def kernel(M: Matrix) -> Kernel:
    R, pivots = rref(M)
    n = M.ncols
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    p = M.field.p
    cols = []
    for j in free:
        v = [0] * n
        v[j] = 1
        for i, c in enumerate(pivots):
            x = R.entries[i][j]
            if x:
                v[c] = _canon_q(-x) if p is None else (-x) % p
        cols.append(v)
    basis = Matrix._raw(M.field, [list(r) for r in zip(*cols)] if cols else [[] for _ in range(n)], len(free))
    return Kernel(basis, tuple(free))


def rank_and_kernel(M: Matrix) -> tuple[int, Matrix]:
    K = kernel(M)
    return M.ncols - K.dim, K.basis


def is_epimorphism(M: Matrix) -> bool:
    """Whether ``M`` maps its column space onto all of its row space."""
    return rank(M) == M.nrows


def is_injective(M: Matrix) -> bool:
    return rank(M) == M.ncols


def random_matrix(field: Field, nrows: int, ncols: int, rng, lo: int = -3, hi: int = 3) -> Matrix:
    return Matrix.from_rows(field, [[rng.randint(lo, hi) for _ in range(ncols)] for _ in range(nrows)], ncols)


def random_invertible(field: Field, n: int, rng) -> Matrix:
    """Product of a random unit lower and a random upper triangular matrix."""
    def entry():
        return rng.randint(-2, 2)

    def unit():
        if field.p == 2:
            return 1
        while True:
            x = field(rng.choice((-2, -1, 1, 2)))
            if x:
                return x

    L = Matrix.from_rows(field, [[1 if i == j else (entry() if j < i else 0) for j in range(n)]
                                 for i in range(n)], n)
    U = Matrix.from_rows(field, [[unit() if i == j else (entry() if j > i else 0) for j in range(n)]
                                 for i in range(n)], n)
    return compose(L, U)


def inverse(M: Matrix) -> Matrix:
    n = M.nrows
    if M.ncols != n:
        raise ShapeMismatch(f"cannot invert a {M.shape} matrix")
    aug = hstack(M.field, [M, Matrix.identity(M.field, n)], n)
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise InputError("matrix is singular")
    return R.col_slice(n, 2 * n)
