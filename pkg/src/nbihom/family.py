"""Parameterized algebra families, grid sweeps and defect reports.

Structure constants and map entries of a family are polynomial expressions
in named parameters (``"c1"``, ``"a^2"``, ``"-1/2*t1*c2"``).  Instantiating
a family substitutes rationals; nothing is solved symbolically.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from tokenize import TokenError
from typing import Iterable, Mapping, Sequence

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from . import axioms as ax
from .algebra import FLAVORS, LinearForm, NAryBiHomAlgebra
from .constructions import analyze_trace
from .linalg import Matrix, to_rational

DEFAULT_GRID = tuple(Fraction(x) for x in ("-2", "-1", "-1/2", "0", "1/2", "1", "2"))

_TRANSFORMS = standard_transformations + (convert_xor,)


class MissingParameter(KeyError):
    pass


def parse_expression(text, params: Iterable[str] = ()) -> sympy.Expr:
    """Parse a rational polynomial expression; floats are rejected."""
    if isinstance(text, (int, Fraction)):
        return sympy.Rational(text.numerator, text.denominator) if isinstance(text, Fraction) \
            else sympy.Integer(text)
    if isinstance(text, sympy.Expr):
        expr = text
    else:
        local = {p: sympy.Symbol(p) for p in params}
        try:
            expr = parse_expr(str(text), local_dict=local, transformations=_TRANSFORMS)
        except (SyntaxError, TypeError, sympy.SympifyError, TokenError) as exc:
            raise ValueError(f"cannot parse expression {text!r}") from exc
    if expr.atoms(sympy.Float):
        raise ValueError(f"expression {text!r} contains a float; write rationals as p/q")
    return sympy.expand(expr)


class _Poly:
    """A compiled polynomial: list of (coefficient, exponent vector)."""

    __slots__ = ("terms",)

    def __init__(self, expr: sympy.Expr, params: Sequence[str]):
        if params:
            poly = sympy.Poly(expr, *[sympy.Symbol(p) for p in params])
            self.terms = [(to_rational(c), m) for m, c in poly.terms()]
        else:
            self.terms = [(to_rational(expr), ())]
        self.terms = [(c, m) for c, m in self.terms if c]

    def __call__(self, values: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for c, m in self.terms:
            term = c
            for v, e in zip(values, m):
                if e:
                    term *= v ** e
            total += term
        return total


@dataclass(eq=False)
class ParamFamily:
    dim: int
    arity: int
    params: tuple[str, ...]
    bracket: dict[tuple[int, ...], tuple[sympy.Expr, ...]]
    alpha: tuple[tuple[sympy.Expr, ...], ...]
    beta: tuple[tuple[sympy.Expr, ...], ...]
    grid: dict[str, tuple[Fraction, ...]] = field(default_factory=dict)
    tau: tuple[sympy.Expr, ...] | None = None
    flavor: str = "unchecked"
    weak: bool = False
    provenance: Mapping | None = None

    def __post_init__(self):
        d, n = self.dim, self.arity
        self.params = tuple(self.params)
        if len(set(self.params)) != len(self.params):
            raise ValueError("duplicate parameter names")
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        p = self.params
        self.alpha = tuple(tuple(parse_expression(x, p) for x in row) for row in self.alpha)
        self.beta = tuple(tuple(parse_expression(x, p) for x in row) for row in self.beta)
        for name, m in (("alpha", self.alpha), ("beta", self.beta)):
            if len(m) != d or any(len(r) != d for r in m):
                raise ValueError(f"{name} must be {d}x{d}")
        br = {}
        for t, v in self.bracket.items():
            t = tuple(t)
            if len(t) != n or any(not 0 <= i < d for i in t):
                raise ValueError(f"bracket tuple {t} out of range")
            v = tuple(parse_expression(x, p) for x in v)
            if len(v) != d:
                raise ValueError(f"bracket value at {t} must have {d} entries")
            br[t] = v
        self.bracket = dict(sorted(br.items()))
        if self.tau is not None:
            self.tau = tuple(parse_expression(x, p) for x in self.tau)
            if len(self.tau) != d:
                raise ValueError(f"tau must have {d} entries")
        symbols = set()
        for e in self._all_exprs():
            symbols |= {s.name for s in e.free_symbols}
        unknown = symbols - set(p)
        if unknown:
            raise ValueError(f"undeclared parameters: {', '.join(sorted(unknown))}")
        unused = set(p) - symbols
        if unused:
            raise ValueError(f"parameters appearing in no slot: {', '.join(sorted(unused))}")
        self.grid = {k: tuple(to_rational(x) for x in self.grid.get(k, DEFAULT_GRID)) for k in p}
        self._compiled = None

    def _all_exprs(self):
        yield from itertools.chain.from_iterable(self.alpha)
        yield from itertools.chain.from_iterable(self.beta)
        yield from itertools.chain.from_iterable(self.bracket.values())
        if self.tau is not None:
            yield from self.tau

    def _compile(self):
        if self._compiled is None:
            p = self.params
            self._compiled = (
                [[_Poly(x, p) for x in row] for row in self.alpha],
                [[_Poly(x, p) for x in row] for row in self.beta],
                {t: [_Poly(x, p) for x in v] for t, v in self.bracket.items()},
                None if self.tau is None else [_Poly(x, p) for x in self.tau],
            )
        return self._compiled

    def values(self, assignment: Mapping[str, object]) -> list[Fraction]:
        missing = [k for k in self.params if k not in assignment]
        if missing:
            raise MissingParameter(f"no value for parameter(s) {', '.join(missing)}")
        return [to_rational(assignment[k]) for k in self.params]


def instantiate(family: ParamFamily, assignment: Mapping[str, object]) -> NAryBiHomAlgebra:
    vals = family.values(assignment)
    alpha, beta, bracket, _ = family._compile()
    return NAryBiHomAlgebra(
        family.dim, family.arity,
        {t: [f(vals) for f in v] for t, v in bracket.items()},
        Matrix.from_rows([[f(vals) for f in row] for row in alpha]),
        Matrix.from_rows([[f(vals) for f in row] for row in beta]),
        flavor=family.flavor, weak=family.weak,
        provenance={"construction": "instantiate",
                    "parameters": {k: str(v) for k, v in zip(family.params, vals)}},
    )


def instantiate_tau(family: ParamFamily, assignment: Mapping[str, object]) -> LinearForm | None:
    tau = family._compile()[3]
    if tau is None:
        return None
    vals = family.values(assignment)
    return LinearForm(tuple(f(vals) for f in tau))


def grid_points(family: ParamFamily, grid: Mapping[str, Sequence] | None = None,
                max_points: int | None = None, seed: int = 0) -> list[dict[str, Fraction]]:
    """Assignments in lexicographic grid order, optionally a seeded subsample."""
    grid = dict(family.grid if grid is None else grid)
    axes = []
    for p in family.params:
        axes.append(tuple(to_rational(x) for x in grid.get(p, family.grid[p])))
    total = math.prod(len(a) for a in axes)
    if max_points is not None and total > max_points:
        chosen = sorted(random.Random(seed).sample(range(total), max_points))
    else:
        chosen = range(total)
    points = []
    for idx in chosen:
        point = {}
        for p, axis in zip(reversed(family.params), reversed(axes)):
            idx, r = divmod(idx, len(axis))
            point[p] = axis[r]
        points.append({p: point[p] for p in family.params})
    return points


# checks over (algebra, tau) that a sweep can ask for, beyond axioms and suites
_TRACE_CHECKS = (
    "tau-nonzero", "is-twisted-trace", "strong-compat", "tau-alpha-invariant",
    "tau-beta-invariant", "weak-compat", "kernel-alpha-stable", "kernel-beta-stable",
    "forces-alpha-eq-beta", "strong-regime", "weak-regime",
)

CHECK_NAMES = ax.AXIOMS + tuple(f"suite:{s}" for s in ax.SUITES) + _TRACE_CHECKS


def evaluate(alg: NAryBiHomAlgebra, name: str, tau: LinearForm | None = None) -> bool:
    if name in ax.AXIOMS:
        return ax.run_check(alg, name).passed
    if name.startswith("suite:"):
        return ax.all_pass(ax.suite(alg, name.removeprefix("suite:")))
    if name in _TRACE_CHECKS:
        if tau is None:
            raise ValueError(f"check {name!r} needs a linear form tau")
        return bool(getattr(analyze_trace(alg, tau), name.replace("-", "_")))
    raise ValueError(f"unknown check {name!r}; choose from {', '.join(CHECK_NAMES)}")


@dataclass(frozen=True)
class SweepRow:
    assignment: dict[str, Fraction]
    verdicts: dict[str, bool]

    def to_record(self) -> dict:
        return {"assignment": {k: str(v) for k, v in self.assignment.items()},
                "verdicts": dict(self.verdicts)}


def sweep(family: ParamFamily, checks: Sequence[str], grid: Mapping[str, Sequence] | None = None,
          max_points: int | None = None, seed: int = 0) -> list[SweepRow]:
    """Exact verdicts for every grid point, in lexicographic grid order."""
    rows = []
    for point in grid_points(family, grid, max_points, seed):
        alg = instantiate(family, point)
        tau = instantiate_tau(family, point)
        rows.append(SweepRow(point, {c: evaluate(alg, c, tau) for c in checks}))
    return rows


def residuals(family: ParamFamily, assignment: Mapping[str, object], axiom: str) -> list[ax.Residual]:
    return ax.residuals(instantiate(family, assignment), axiom)


def induce_family(family: ParamFamily, tau: Sequence, extra_grid: Mapping[str, Sequence] | None = None,
                  regime: str = "strong") -> ParamFamily:
    """Symbolic ``phi_tau`` for a family; ``tau`` may introduce new parameters."""
    tau_exprs = [parse_expression(x, family.params) for x in tau]
    # names not yet declared become parameters, in order of appearance
    new = []
    for e in tau_exprs:
        for s in sorted(e.free_symbols, key=lambda s: s.name):
            if s.name not in family.params and s.name not in new:
                new.append(s.name)
    params = family.params + tuple(new)
    grid = dict(family.grid)
    for p in new:
        grid[p] = tuple((extra_grid or {}).get(p, DEFAULT_GRID))
    d, n = family.dim, family.arity
    bracket = {}
    for t in itertools.product(range(d), repeat=n + 1):
        acc = [sympy.Integer(0)] * d
        for i, j in enumerate(t):
            v = family.bracket.get(t[:i] + t[i + 1:])
            if v is None or tau_exprs[j] == 0:
                continue
            sign = 1 if i % 2 == 0 else -1
            for k in range(d):
                acc[k] += sign * tau_exprs[j] * v[k]
        acc = [sympy.expand(x) for x in acc]
        if any(x != 0 for x in acc):
            bracket[t] = tuple(acc)
    return ParamFamily(
        d, n + 1, params, bracket, family.alpha, family.beta, grid=grid,
        tau=tuple(tau_exprs), flavor=family.flavor, weak=family.weak or regime == "weak",
        provenance={"construction": "induce_family",
                    "parameters": {"tau": ",".join(str(x) for x in tau_exprs), "regime": regime}},
    )
