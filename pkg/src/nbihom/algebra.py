"""n-ary algebras with two twisting maps, stored by structure constants.

Basis positions are 0-based in Python; files and reports show them 1-based.
A bracket is a sparse map from n-tuples of basis positions to coefficient
vectors.  Absent tuples bracket to zero.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .linalg import DimensionMismatch, Matrix, to_rational

Vector = tuple[Fraction, ...]

FLAVORS = ("lie-jacobi", "lie-leibniz", "totally-assoc", "partially-assoc", "unchecked")

_ZERO = Fraction(0)


def zero(dim: int) -> Vector:
    return (_ZERO,) * dim


def basis_vector(dim: int, i: int) -> Vector:
    return tuple(Fraction(1) if k == i else _ZERO for k in range(dim))


def vec(values: Sequence) -> Vector:
    return tuple(to_rational(v) for v in values)


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Fraction, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def is_zero(v: Vector) -> bool:
    return not any(v)


def vsum(vectors, dim: int) -> Vector:
    acc = [_ZERO] * dim
    for v in vectors:
        for k, c in enumerate(v):
            if c:
                acc[k] += c
    return tuple(acc)


@dataclass(frozen=True)
class LinearForm:
    coeffs: Vector

    def __post_init__(self):
        object.__setattr__(self, "coeffs", vec(self.coeffs))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def __call__(self, v: Sequence[Fraction]) -> Fraction:
        if len(v) != len(self.coeffs):
            raise DimensionMismatch("linear form and vector differ in length")
        return sum((a * b for a, b in zip(self.coeffs, v) if a and b), _ZERO)

    def compose(self, m: Matrix) -> LinearForm:
        """The form ``x -> self(m x)``."""
        return LinearForm(tuple(self(m.col(j)) for j in range(m.cols)))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


@dataclass(frozen=True, eq=False)
class NAryBiHomAlgebra:
    """``(A, [.,...,.], alpha, beta)`` over the rationals.

    ``flavor`` is a hint for which axiom suite to run; the checkers never
    trust it.  ``weak`` marks algebras whose maps are not required to be
    morphisms, so multiplicativity is not part of their suite.
    """

    dim: int
    arity: int
    bracket: Mapping[tuple[int, ...], Vector]
    alpha: Matrix
    beta: Matrix
    flavor: str = "unchecked"
    weak: bool = False
    provenance: Mapping | None = None

    def __post_init__(self):
        d, n = self.dim, self.arity
        if d < 0 or n < 2:
            raise ValueError(f"need dim >= 0 and arity >= 2, got dim={d}, arity={n}")
        for name in ("alpha", "beta"):
            m = getattr(self, name)
            if (m.rows, m.cols) != (d, d):
                raise DimensionMismatch(f"{name} is {m.rows}x{m.cols}, expected {d}x{d}")
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        clean = {}
        for t, v in self.bracket.items():
            t = tuple(t)
            if len(t) != n or any(not 0 <= i < d for i in t):
                raise ValueError(f"bracket tuple {t} out of range for dim={d}, arity={n}")
            v = vec(v)
            if len(v) != d:
                raise DimensionMismatch(f"bracket value at {t} has length {len(v)}")
            if any(v):
                clean[t] = v
        object.__setattr__(self, "bracket", dict(sorted(clean.items())))

    def __eq__(self, other):
        if not isinstance(other, NAryBiHomAlgebra):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.arity == other.arity
            and self.bracket == other.bracket
            and self.alpha == other.alpha
            and self.beta == other.beta
            and self.flavor == other.flavor
            and self.weak == other.weak
        )

    __hash__ = None

    def with_maps(self, alpha: Matrix | None = None, beta: Matrix | None = None, **changes):
        return NAryBiHomAlgebra(
            dim=self.dim,
            arity=self.arity,
            bracket=self.bracket,
            alpha=self.alpha if alpha is None else alpha,
            beta=self.beta if beta is None else beta,
            flavor=changes.get("flavor", self.flavor),
            weak=changes.get("weak", self.weak),
            provenance=changes.get("provenance", self.provenance),
        )

    def __call__(self, *args: Vector) -> Vector:
        return eval_bracket(self, args)

    def basis(self, i: int) -> Vector:
        return basis_vector(self.dim, i)

    def tuples(self, k: int | None = None):
        """All basis k-tuples (default: arity) in lexicographic order."""
        return itertools.product(range(self.dim), repeat=self.arity if k is None else k)


def tabulate(dim: int, arity: int, fn: Callable[[tuple[int, ...]], Vector]) -> dict:
    """Evaluate ``fn`` on every basis tuple and keep the nonzero values."""
    table = {}
    for t in itertools.product(range(dim), repeat=arity):
        v = fn(t)
        if any(v):
            table[t] = v
    return table


def zero_algebra(dim: int, arity: int, alpha: Matrix | None = None, beta: Matrix | None = None,
                 **kw) -> NAryBiHomAlgebra:
    return NAryBiHomAlgebra(
        dim, arity, {},
        Matrix.identity(dim) if alpha is None else alpha,
        Matrix.identity(dim) if beta is None else beta,
        **kw,
    )


def bracket_of_basis(alg: NAryBiHomAlgebra, t: Sequence[int]) -> Vector:
    t = tuple(t)
    if len(t) != alg.arity or any(not 0 <= i < alg.dim for i in t):
        raise ValueError(f"basis tuple {t} out of range")
    return alg.bracket.get(t, zero(alg.dim))


def apply_map(m: Matrix, v: Sequence[Fraction]) -> Vector:
    return m.apply(v)


def eval_bracket(alg: NAryBiHomAlgebra, args: Sequence[Vector]) -> Vector:
    """Multilinear extension of the structure constants."""
    d, n = alg.dim, alg.arity
    if len(args) != n:
        raise DimensionMismatch(f"bracket takes {n} arguments, got {len(args)}")
    supports = []
    for a in args:
        if len(a) != d:
            raise DimensionMismatch(f"argument of length {len(a)} in dimension {d}")
        s = [(i, c) for i, c in enumerate(a) if c]
        if not s:
            return zero(d)
        supports.append(s)
    acc = [_ZERO] * d
    table = alg.bracket
    if math.prod(len(s) for s in supports) <= len(table):
        for combo in itertools.product(*supports):
            v = table.get(tuple(i for i, _ in combo))
            if v is None:
                continue
            coeff = Fraction(1)
            for _, c in combo:
                coeff *= c
            for k, x in enumerate(v):
                if x:
                    acc[k] += coeff * x
    else:
        for t, v in table.items():
            coeff = Fraction(1)
            for a, i in zip(args, t):
                c = a[i]
                if not c:
                    break
                coeff *= c
            else:
                for k, x in enumerate(v):
                    if x:
                        acc[k] += coeff * x
    return tuple(acc)
