"""Exact rational scalars, matrices and exterior-power indexing.

Scalars are :class:`fractions.Fraction` throughout; nothing in this package
ever touches a float.  Matrices are small immutable row-major tables.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


class DimensionMismatch(ValueError):
    pass


class NotInvertible(ArithmeticError):
    pass


def to_rational(x) -> Fraction:
    """Parse ``x`` exactly.  Accepts ints, Fractions and strings like ``"-3/4"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {x!r}") from exc
    if isinstance(x, float):
        raise TypeError(f"refusing lossy float {x!r}; pass a string like '1/3'")
    # sympy.Rational and friends
    try:
        return Fraction(int(x.p), int(x.q))
    except AttributeError:
        raise TypeError(f"cannot convert {type(x).__name__} to a rational") from None


def format_rational(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        entries = tuple(to_rational(e) for e in self.entries)
        if len(entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> Matrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), ncols, tuple(itertools.chain.from_iterable(rows)))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> Matrix:
        return cls.from_rows(list(zip(*cols))) if cols else cls(0, 0, ())

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls.diag([1] * n)

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> Matrix:
        cols = rows if cols is None else cols
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence) -> Matrix:
        n = len(values)
        return cls.from_rows([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> Matrix:
        return Matrix.from_columns([self.row(i) for i in range(self.rows)])

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_mul(self, other)

    def __pow__(self, k: int) -> Matrix:
        if not self.is_square or k < 0:
            raise DimensionMismatch("power needs a square matrix and k >= 0")
        out = Matrix.identity(self.rows)
        for _ in range(k):
            out = mat_mul(out, self)
        return out

    def apply(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        return tuple(
            sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
            for i in range(self.rows)
        )

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix([{body}])"


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bcols = [b.col(j) for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        r = a.row(i)
        for c in bcols:
            out.append(sum((x * y for x, y in zip(r, c) if x and y), Fraction(0)))
    return Matrix(a.rows, b.cols, tuple(out))


def _integer_rows(rows: Iterable[Sequence[Fraction]]) -> tuple[list[list[int]], list[int]]:
    """Scale every row by the lcm of its denominators."""
    out, scales = [], []
    for r in rows:
        s = math.lcm(*(q.denominator for q in r)) if r else 1
        out.append([int(q * s) for q in r])
        scales.append(s)
    return out, scales


def _bareiss_rank(m: list[list[int]]) -> int:
    # fraction-free forward elimination; every division is exact
    m = [r[:] for r in m]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    prev, rank = 1, 0
    for c in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        for r in range(rank + 1, nrows):
            f = m[r][c]
            m[r] = [(p * m[r][j] - f * m[rank][j]) // prev for j in range(ncols)]
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def mat_rank(a: Matrix) -> int:
    if a.rows == 0 or a.cols == 0:
        return 0
    m, _ = _integer_rows(a.to_rows())
    return _bareiss_rank(m)


def mat_inverse(a: Matrix) -> Matrix:
    """Exact inverse by fraction-free Gauss-Jordan on ``[A | I]``.

    Raises :class:`NotInvertible` when ``a`` is singular.
    """
    if not a.is_square:
        raise DimensionMismatch("only square matrices are invertible")
    n = a.rows
    # A' = S A with S = diag(scales), so A^-1 = A'^-1 S
    m, scales = _integer_rows(a.to_rows())
    for i in range(n):
        m[i] = m[i] + [1 if j == i else 0 for j in range(n)]
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k]), None)
        if piv is None:
            raise NotInvertible(f"matrix has rank {mat_rank(a)} < {n}")
        m[k], m[piv] = m[piv], m[k]
        p = m[k][k]
        for i in range(n):
            if i == k:
                continue
            f = m[i][k]
            m[i] = [(p * m[i][j] - f * m[k][j]) // prev for j in range(2 * n)]
        prev = p
    det = prev
    inv_scaled = [[Fraction(m[i][n + j], det) for j in range(n)] for i in range(n)]
    return Matrix.from_rows(
        [[inv_scaled[i][j] * scales[j] for j in range(n)] for i in range(n)]
    )


def nullspace(a: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of ``{v : a v = 0}`` from the reduced row echelon form."""
    rows = [list(r) for r in a.to_rows()]
    ncols = a.cols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][free]
        basis.append(tuple(v))
    return basis


def wedge_normalize(raw: Sequence[int]) -> tuple[tuple[int, ...], int] | None:
    """Sort a wedge of basis positions, returning ``(sorted, sign)``.

    Returns ``None`` when a position repeats (the wedge vanishes).
    """
    if len(set(raw)) != len(raw):
        return None
    inversions = sum(1 for i, j in itertools.combinations(range(len(raw)), 2) if raw[i] > raw[j])
    return tuple(sorted(raw)), -1 if inversions % 2 else 1


def wedge_basis(dim: int, k: int) -> list[tuple[int, ...]]:
    """Strictly increasing ``k``-subsets of ``range(dim)`` in lexicographic order."""
    return list(itertools.combinations(range(dim), k))


def compound_matrix(a: Matrix, k: int) -> Matrix:
    """Matrix of ``x1^...^xk -> a x1 ^ ... ^ a xk`` on the lexicographic wedge basis."""
    if not a.is_square:
        raise DimensionMismatch("compound of a non-square matrix")
    basis = wedge_basis(a.rows, k)
    index = {w: i for i, w in enumerate(basis)}
    cols = []
    for w in basis:
        col = [Fraction(0)] * len(basis)
        for w_img, c in wedge_of_vectors([a.col(j) for j in w]).items():
            col[index[w_img]] += c
        cols.append(col)
    return Matrix.from_columns(cols)


def wedge_of_vectors(vectors: Sequence[Sequence[Fraction]]) -> dict[tuple[int, ...], Fraction]:
    """Expand ``v1 ^ ... ^ vk`` in the wedge basis, dropping zero coefficients."""
    supports = [[(i, c) for i, c in enumerate(v) if c] for v in vectors]
    out: dict[tuple[int, ...], Fraction] = {}
    for combo in itertools.product(*supports):
        norm = wedge_normalize([i for i, _ in combo])
        if norm is None:
            continue
        w, sign = norm
        coeff = Fraction(sign)
        for _, c in combo:
            coeff *= c
        out[w] = out.get(w, Fraction(0)) + coeff
    return {w: c for w, c in out.items() if c}
