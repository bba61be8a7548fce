"""Exact integer linear algebra.

Determinants, Smith and Hermite normal forms, saturated integer kernels and
primitive vectors, all over Python's arbitrary-precision integers.  Values
are immutable and every operation is pure, so concurrent use is safe.

Conventions:
  * Smith form: U @ A @ V = D with U, V unimodular, D diagonal with
    nonnegative entries forming a divisibility chain d1 | d2 | ...
  * Hermite form: row-style, H = U @ A with positive pivots and entries
    above each pivot reduced into [0, pivot).
  * Kernel bases are Hermite-normalized so results are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateInputError, DimensionMismatchError


@dataclass(frozen=True)
class IntVector:
    """Immutable integer vector."""

    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __add__(self, other: "IntVector") -> "IntVector":
        self._same_dim(other)
        return IntVector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntVector") -> "IntVector":
        self._same_dim(other)
        return IntVector(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntVector":
        return IntVector(tuple(-a for a in self.entries))

    def scale(self, k: int) -> "IntVector":
        return IntVector(tuple(k * a for a in self.entries))

    def dot(self, other: "IntVector") -> int:
        self._same_dim(other)
        return sum(a * b for a, b in zip(self.entries, other.entries))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def content(self) -> int:
        """gcd of the entries (0 for the zero vector)."""
        return math.gcd(*self.entries) if self.entries else 0

    def is_primitive(self) -> bool:
        return self.content() == 1

    def _same_dim(self, other: "IntVector") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(f"vector dims {self.dim} != {other.dim}")

    def __repr__(self) -> str:
        return f"IntVector({list(self.entries)!r})"


def vec(*entries: int) -> IntVector:
    return IntVector(tuple(entries))


def primitive(v: IntVector, pin_sign: bool = True) -> IntVector:
    """v divided by the gcd of its entries.

    With pin_sign (the default) the first nonzero entry of the result is
    made positive; callers that carry their own orientation pass
    pin_sign=False to keep the sign of v.
    """
    g = v.content()
    if g == 0:
        raise DegenerateInputError("primitive() of the zero vector")
    w = tuple(a // g for a in v.entries)
    if pin_sign:
        lead = next(a for a in w if a != 0)
        if lead < 0:
            w = tuple(-a for a in w)
    return IntVector(w)


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        ent = tuple(int(e) for e in self.entries)
        if len(ent) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(ent)}"
            )
        object.__setattr__(self, "entries", ent)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int] | IntVector]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        n = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != n:
                raise DimensionMismatchError("ragged rows")
        return cls(len(rows), n, tuple(x for r in rows for x in r))

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence[int] | IntVector]) -> "IntMatrix":
        cols = [list(c) for c in cols]
        return cls.from_rows(list(map(list, zip(*cols)))) if cols else cls(0, 0, ())

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> IntVector:
        return IntVector(self.entries[i * self.cols : (i + 1) * self.cols])

    def col(self, j: int) -> IntVector:
        return IntVector(self.entries[j :: self.cols][: self.rows]) if self.cols else IntVector(())

    def row_list(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([list(self.col(j)) for j in range(self.cols)]) if self.rows and self.cols else IntMatrix(self.cols, self.rows, ())

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __matmul__(self, other):
        if isinstance(other, IntVector):
            if self.cols != other.dim:
                raise DimensionMismatchError(f"{self.rows}x{self.cols} @ vector of dim {other.dim}")
            return IntVector(tuple(self.row(i).dot(other) for i in range(self.rows)))
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise DimensionMismatchError(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
            out = []
            for i in range(self.rows):
                ri = self.row(i)
                out.append([sum(ri[k] * other.entry(k, j) for k in range(self.cols)) for j in range(other.cols)])
            return IntMatrix(self.rows, other.cols, tuple(x for r in out for x in r))
        return NotImplemented

    def apply(self, v: IntVector) -> IntVector:
        return self @ v

    def __repr__(self) -> str:
        return f"IntMatrix({self.row_list()!r})"


def stack_rows(vectors: Sequence[IntVector], cols: int | None = None) -> IntMatrix:
    """Matrix with the given vectors as rows; cols pins the width when empty."""
    if not vectors:
        if cols is None:
            raise DegenerateInputError("stack_rows needs cols for an empty stack")
        return IntMatrix(0, cols, ())
    return IntMatrix.from_rows([list(v) for v in vectors])


def determinant(a: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    if not a.is_square():
        raise DimensionMismatchError(f"determinant of a {a.rows}x{a.cols} matrix")
    n = a.rows
    if n == 0:
        return 1
    m = a.row_list()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V = D with U, V unimodular and D in Smith normal form."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    rank: int

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.d.entry(i, i) for i in range(min(self.d.rows, self.d.cols)))

    def torsion(self) -> tuple[int, ...]:
        """Nontrivial invariant factors (diagonal entries > 1)."""
        return tuple(x for x in self.diagonal() if x > 1)


def _gcdex(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


class _Worker:
    """Mutable accumulator for normal-form row/column operations."""

    def __init__(self, a: IntMatrix):
        self.m = a.rows
        self.n = a.cols
        self.d = a.row_list()
        self.u = IntMatrix.identity(a.rows).row_list()
        self.v = IntMatrix.identity(a.cols).row_list()

    def swap_rows(self, i, j):
        self.d[i], self.d[j] = self.d[j], self.d[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]

    def swap_cols(self, i, j):
        for r in self.d:
            r[i], r[j] = r[j], r[i]
        for r in self.v:
            r[i], r[j] = r[j], r[i]

    def negate_row(self, i):
        self.d[i] = [-x for x in self.d[i]]
        self.u[i] = [-x for x in self.u[i]]

    def add_row(self, i, j, q):
        """row i += q * row j"""
        self.d[i] = [x + q * y for x, y in zip(self.d[i], self.d[j])]
        self.u[i] = [x + q * y for x, y in zip(self.u[i], self.u[j])]

    def add_col(self, i, j, q):
        """col i += q * col j"""
        for r in self.d:
            r[i] += q * r[j]
        for r in self.v:
            r[i] += q * r[j]

    def rot_rows(self, i, j, col):
        """Unimodular 2x2 row transform making d[j][col] = 0, d[i][col] = gcd."""
        a, b = self.d[i][col], self.d[j][col]
        if a != 0 and b % a == 0:
            # plain elimination keeps the pivot row intact (termination relies on it)
            self.add_row(j, i, -(b // a))
            return
        g, x, y = _gcdex(a, b)
        p, q = -(b // g), a // g
        self.d[i], self.d[j] = (
            [x * s + y * t for s, t in zip(self.d[i], self.d[j])],
            [p * s + q * t for s, t in zip(self.d[i], self.d[j])],
        )
        self.u[i], self.u[j] = (
            [x * s + y * t for s, t in zip(self.u[i], self.u[j])],
            [p * s + q * t for s, t in zip(self.u[i], self.u[j])],
        )

    def rot_cols(self, i, j, row):
        """Unimodular 2x2 column transform making d[row][j] = 0."""
        a, b = self.d[row][i], self.d[row][j]
        if a != 0 and b % a == 0:
            self.add_col(j, i, -(b // a))
            return
        g, x, y = _gcdex(a, b)
        p, q = -(b // g), a // g
        for r in self.d:
            r[i], r[j] = x * r[i] + y * r[j], p * r[i] + q * r[j]
        for r in self.v:
            r[i], r[j] = x * r[i] + y * r[j], p * r[i] + q * r[j]


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transformation matrices.

    Returns SmithDecomposition(u, d, v, rank) with u @ a @ v = d; the result
    is verified before returning.
    """
    w = _Worker(a)
    m, n = w.m, w.n

    def diagonalize(t0: int) -> None:
        t = t0
        while t < min(m, n):
            pivot = None
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = abs(w.d[i][j])
                    if x and (best is None or x < best):
                        best, pivot = x, (i, j)
            if pivot is None:
                return
            i, j = pivot
            if i != t:
                w.swap_rows(t, i)
            if j != t:
                w.swap_cols(t, j)
            while True:
                for i in range(t + 1, m):
                    if w.d[i][t]:
                        w.rot_rows(t, i, t)
                if any(w.d[t][j] for j in range(t + 1, n)):
                    for j in range(t + 1, n):
                        if w.d[t][j]:
                            w.rot_cols(t, j, t)
                    if any(w.d[i][t] for i in range(t + 1, m)):
                        continue
                break
            t += 1

    diagonalize(0)
    r = sum(1 for k in range(min(m, n)) if w.d[k][k] != 0)
    for k in range(r):
        if w.d[k][k] < 0:
            w.negate_row(k)
    # enforce the divisibility chain
    i = 0
    while i < r - 1:
        fixed = True
        for j in range(i + 1, r):
            if w.d[j][j] % w.d[i][i] != 0:
                w.add_col(i, j, 1)
                diagonalize(i)
                for k in range(i, r):
                    if w.d[k][k] < 0:
                        w.negate_row(k)
                fixed = False
                break
        if fixed:
            i += 1

    u = IntMatrix.from_rows(w.u) if m else IntMatrix(0, 0, ())
    v = IntMatrix.from_rows(w.v) if n else IntMatrix(0, 0, ())
    d = IntMatrix.from_rows(w.d) if m and n else IntMatrix(m, n, (0,) * (m * n))
    dec = SmithDecomposition(u, d, v, r)
    _check_smith(a, dec)
    return dec


def _check_smith(a: IntMatrix, dec: SmithDecomposition) -> None:
    m, n = a.rows, a.cols
    if m and n:
        prod = dec.u @ a @ dec.v
        assert prod.entries == dec.d.entries, "U*A*V != D"
    if m:
        assert abs(determinant(dec.u)) == 1, "U not unimodular"
    if n:
        assert abs(determinant(dec.v)) == 1, "V not unimodular"
    diag = dec.diagonal()
    for i in range(len(diag) - 1):
        if diag[i + 1]:
            assert diag[i] and diag[i + 1] % diag[i] == 0, "divisibility chain broken"
        else:
            pass
    for i in range(dec.d.rows):
        for j in range(dec.d.cols):
            if i != j:
                assert dec.d.entry(i, j) == 0, "D not diagonal"


def hermite_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns (h, u) with u @ a = h, u unimodular, pivots positive and entries
    above each pivot reduced into [0, pivot).
    """
    w = _Worker(a)
    m, n = w.m, w.n
    pivot_row = 0
    pivots = []
    for col in range(n):
        row = next((i for i in range(pivot_row, m) if w.d[i][col]), None)
        if row is None:
            continue
        if row != pivot_row:
            w.swap_rows(pivot_row, row)
        for i in range(pivot_row + 1, m):
            if w.d[i][col]:
                w.rot_rows(pivot_row, i, col)
        if w.d[pivot_row][col] < 0:
            w.negate_row(pivot_row)
        p = w.d[pivot_row][col]
        for i in range(pivot_row):
            q = w.d[i][col] // p
            if q:
                w.add_row(i, pivot_row, -q)
        pivots.append(col)
        pivot_row += 1
        if pivot_row == m:
            break
    h = IntMatrix.from_rows(w.d) if m and n else IntMatrix(m, n, (0,) * (m * n))
    u = IntMatrix.from_rows(w.u) if m else IntMatrix(0, 0, ())
    return h, u


def rank(a: IntMatrix) -> int:
    if a.rows == 0 or a.cols == 0:
        return 0
    return smith_normal_form(a).rank


def integer_kernel(a: IntMatrix) -> list[IntVector]:
    """Basis of ker(a) as a saturated sublattice of Z^cols.

    The basis is Hermite-normalized so the output is deterministic, and it
    generates the full kernel lattice (not a finite-index sublattice).
    """
    if a.cols == 0:
        return []
    if a.rows == 0:
        basis = [IntVector(tuple(1 if i == j else 0 for j in range(a.cols))) for i in range(a.cols)]
        return basis
    dec = smith_normal_form(a)
    gens = [dec.v.col(j) for j in range(dec.rank, a.cols)]
    if not gens:
        return []
    h, _ = hermite_normal_form(stack_rows(gens))
    out = [h.row(i) for i in range(h.rows) if not h.row(i).is_zero()]
    return out


def solve_exact(a: IntMatrix, b: IntVector) -> IntVector | None:
    """Integer solution x of a @ x = b, or None when none exists.

    When ker(a) is nontrivial the returned solution is the Smith-form one
    (deterministic, not canonical in any lattice sense).
    """
    if a.rows != b.dim:
        raise DimensionMismatchError("solve_exact: incompatible shapes")
    if a.cols == 0:
        return IntVector(()) if b.is_zero() else None
    dec = smith_normal_form(a)
    c = dec.u @ b
    x = [0] * a.cols
    for i in range(min(a.rows, a.cols)):
        di = dec.d.entry(i, i)
        if di:
            if c[i] % di != 0:
                return None
            x[i] = c[i] // di
        elif c[i] != 0:
            return None
    for i in range(min(a.rows, a.cols), a.rows):
        if c[i] != 0:
            return None
    return dec.v @ IntVector(tuple(x))


def inverse_unimodular(a: IntMatrix) -> IntMatrix:
    """Exact inverse of a square matrix with determinant +-1."""
    if not a.is_square():
        raise DimensionMismatchError("inverse of a non-square matrix")
    det = determinant(a)
    if det not in (1, -1):
        raise DegenerateInputError(f"matrix with determinant {det} has no integer inverse")
    n = a.rows
    cols = []
    for j in range(n):
        e = IntVector(tuple(1 if i == j else 0 for i in range(n)))
        x = solve_exact(a, e)
        assert x is not None
        cols.append(x)
    return IntMatrix.from_cols([list(c) for c in cols])


def is_unimodular_extension(vectors: Sequence[IntVector], dim: int) -> bool:
    """True iff the vectors extend to a Z-basis of Z^dim.

    Equivalently, the Smith diagonal of their stacked matrix is all ones.
    """
    vs = list(vectors)
    if not vs:
        return True
    if len(vs) > dim:
        return False
    for v in vs:
        if v.dim != dim:
            raise DimensionMismatchError(f"vector of dim {v.dim} in Z^{dim}")
    dec = smith_normal_form(stack_rows(vs))
    diag = dec.diagonal()
    return dec.rank == len(vs) and all(x == 1 for x in diag[: len(vs)])


def kernel_complement(alpha: IntVector) -> IntMatrix:
    """Hermite-canonical basis of {v : <alpha, v> = 0}, one basis vector per row.

    This is the coordinate frame used for a subtorus cut out by the primitive
    character alpha: the rows are a basis of its cocharacter lattice.
    """
    if alpha.is_zero():
        raise DegenerateInputError("kernel_complement of the zero character")
    basis = integer_kernel(stack_rows([alpha]))
    return stack_rows(basis, cols=alpha.dim)
