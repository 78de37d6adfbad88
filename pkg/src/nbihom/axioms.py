"""Exhaustive exact checks of the defining identities.

Every identity is multilinear, so checking it on all basis tuples decides it
for all vectors.  Each axiom is written once as a generator of *instances*
``(tuple, lhs, rhs, detail)`` in lexicographic tuple order; a check passes
iff ``lhs == rhs`` everywhere and otherwise reports the first violation.
The same generators feed :func:`residuals`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, NamedTuple

from .algebra import NAryBiHomAlgebra, Vector, eval_bracket, is_zero, scale, sub, vsum, zero
from .linalg import format_rational, mat_mul

COMMUTATION = "commutation"
MULTIPLICATIVITY = "multiplicativity"
SKEWSYMMETRY = "bihom-skewsymmetry"
BINARY_JACOBI = "bihom-jacobi"
BINARY_LEIBNIZ = "bihom-leibniz"
N_JACOBI = "n-bihom-jacobi"
NAMBU = "bihom-nambu"
TOTAL_ASSOC = "total-assoc"
PARTIAL_ASSOC = "partial-assoc"
WEAK_TOTAL_ASSOC = "weak-total-assoc"
ALTERNATE_PARTIAL_ASSOC = "alternate-partial-assoc"

ALTERNATE_SIGN_NOTE = "terms weighted by (-1)^i with i = 1..n (first term negative)"


class ArityMismatch(ValueError):
    pass


class Instance(NamedTuple):
    tuple: tuple[int, ...]
    lhs: Vector
    rhs: Vector
    detail: str


@dataclass(frozen=True)
class Counterexample:
    tuple: tuple[int, ...]
    lhs: Vector
    rhs: Vector
    detail: str = ""


@dataclass(frozen=True)
class CheckReport:
    axiom: str
    passed: bool
    tuples_checked: int
    counterexample: Counterexample | None = None
    note: str = ""

    def __post_init__(self):
        if self.passed != (self.counterexample is None):
            raise ValueError("a report passes iff it carries no counterexample")

    def __bool__(self):
        return self.passed

    def to_record(self) -> dict:
        rec = {
            "axiom": self.axiom,
            "pass": self.passed,
            "tuples_checked": self.tuples_checked,
            "tuple": None,
            "lhs": None,
            "rhs": None,
            "detail": None,
        }
        if self.counterexample is not None:
            cx = self.counterexample
            rec.update(
                tuple=[i + 1 for i in cx.tuple],
                lhs=[format_rational(q) for q in cx.lhs],
                rhs=[format_rational(q) for q in cx.rhs],
                detail=cx.detail,
            )
        if self.note:
            rec["note"] = self.note
        return rec

    def describe(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status:4}  {self.axiom:<24} ({self.tuples_checked} tuples)"
        if self.note:
            line += f"  [{self.note}]"
        if self.counterexample is not None:
            cx = self.counterexample
            where = ",".join(f"e{i + 1}" for i in cx.tuple)
            line += (
                f"\n      at ({where}) {cx.detail}: lhs = {_fmt_vec(cx.lhs)}"
                f"  rhs = {_fmt_vec(cx.rhs)}"
            )
        return line


def _fmt_vec(v: Vector) -> str:
    out = ""
    for k, c in enumerate(v):
        if not c:
            continue
        mag = abs(c)
        term = f"e{k + 1}" if mag == 1 else f"{mag}*e{k + 1}"
        if not out:
            out = term if c > 0 else f"-{term}"
        else:
            out += f" + {term}" if c > 0 else f" - {term}"
    return out or "0"


class _Images:
    """Columns of alpha, beta and beta^2 plus a cache of twisted brackets."""

    def __init__(self, alg: NAryBiHomAlgebra):
        self.alg = alg
        d = alg.dim
        self.a = [alg.alpha.col(i) for i in range(d)]
        self.b = [alg.beta.col(i) for i in range(d)]
        b2 = mat_mul(alg.beta, alg.beta)
        self.b2 = [b2.col(i) for i in range(d)]
        self._twisted: dict[tuple[int, ...], Vector] = {}

    def br(self, *args: Vector) -> Vector:
        return eval_bracket(self.alg, args)

    def twisted(self, t: tuple[int, ...]) -> Vector:
        """``[beta e_t1, ..., beta e_t(n-1), alpha e_tn]``."""
        v = self._twisted.get(t)
        if v is None:
            v = self.br(*(self.b[i] for i in t[:-1]), self.a[t[-1]])
            self._twisted[t] = v
        return v


def _require_binary(alg: NAryBiHomAlgebra, name: str):
    if alg.arity != 2:
        raise ArityMismatch(f"{name} is a binary identity; algebra has arity {alg.arity}")


def _commutation(alg: NAryBiHomAlgebra) -> Iterator[Instance]:
    ab = mat_mul(alg.alpha, alg.beta)
    ba = mat_mul(alg.beta, alg.alpha)
    for j in range(alg.dim):
        yield Instance((j,), ab.col(j), ba.col(j), "alpha(beta(e)) vs beta(alpha(e))")


def _multiplicativity(alg: NAryBiHomAlgebra) -> Iterator[Instance]:
    d = alg.dim
    maps = (("alpha", alg.alpha, [alg.alpha.col(i) for i in range(d)]),
            ("beta", alg.beta, [alg.beta.col(i) for i in range(d)]))
    for t in alg.tuples():
        value = alg.bracket.get(t, zero(d))
        for name, m, cols in maps:
            yield Instance(t, m.apply(value), eval_bracket(alg, [cols[i] for i in t]),
                           f"{name}([x]) vs [{name}(x)]")


def _skewsymmetry(alg: NAryBiHomAlgebra, permutations: str = "adjacent") -> Iterator[Instance]:
    im = _Images(alg)
    n = alg.arity
    if permutations == "adjacent":
        moves = []
        for k in range(n - 1):
            perm = list(range(n))
            perm[k], perm[k + 1] = perm[k + 1], perm[k]
            moves.append((tuple(perm), -1, f"swap slots {k + 1},{k + 2}"))
    elif permutations == "all":
        moves = [(p, _perm_sign(p), f"permutation {tuple(i + 1 for i in p)}")
                 for p in itertools.permutations(range(n)) if p != tuple(range(n))]
    else:
        raise ValueError("permutations must be 'adjacent' or 'all'")
    for t in alg.tuples():
        lhs = im.twisted(t)
        for perm, sign, detail in moves:
            rhs = im.twisted(tuple(t[p] for p in perm))
            yield Instance(t, lhs, rhs if sign == 1 else scale(Fraction(-1), rhs), detail)


def _perm_sign(p) -> int:
    inv = sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j])
    return -1 if inv % 2 else 1


def _binary_jacobi(alg: NAryBiHomAlgebra) -> Iterator[Instance]:
    im = _Images(alg)
    d = alg.dim
    for x, y, z in alg.tuples(3):
        lhs = vsum((im.br(im.b2[p], im.twisted((q, r))) for p, q, r in ((x, y, z), (y, z, x), (z, x, y))), d)
        yield Instance((x, y, z), lhs, zero(d), "cyclic sum")


def _binary_leibniz(alg: NAryBiHomAlgebra) -> Iterator[Instance]:
    im = _Images(alg)
    for x, y, z in alg.tuples(3):
        lhs = im.br(im.b2[x], im.twisted((y, z)))
        rhs = vsum((im.br(im.twisted((x, y)), im.b2[z]), im.br(im.b2[y], im.twisted((x, z)))), alg.dim)
        yield Instance((x, y, z), lhs, rhs, "")


def _n_jacobi(alg: NAryBiHomAlgebra) -> Iterator[Instance]:
    im = _Images(alg)
    n, d = alg.arity, alg.dim
    for t in alg.tuples(2 * n - 1):
        x, y = t[:n - 1], t[n - 1:]
        outer_x = [im.b2[i] for i in x]
        lhs = im.br(*outer_x, im.twisted(y))
        terms = []
        for k in range(n):
            sign = -1 if (n - (k + 1)) % 2 else 1
            rest = [im.b2[y[j]] for j in range(n) if j != k]
            term = im.br(*rest, im.twisted(x + (y[k],)))
            terms.append(term if sign == 1 else scale(Fraction(-1), term))
        yield Instance(t, lhs, vsum(terms, d), "x = first n-1, y = last n")


def _nambu(alg: NAryBiHomAlgebra) -> Iterator[Instance]:
    im = _Images(alg)
    n, d = alg.arity, alg.dim
    for t in alg.tuples(2 * n - 1):
        x, y = t[:n - 1], t[n - 1:]
        lhs = im.br(*(im.b2[i] for i in x), im.twisted(y))
        ys = [im.b2[i] for i in y]
        terms = []
        for k in range(n):
            args = list(ys)
            args[k] = im.twisted(x + (y[k],))
            terms.append(im.br(*args))
        yield Instance(t, lhs, vsum(terms, d), "x = first n-1, y = last n")


def _assoc_terms(im: _Images, t: tuple[int, ...]) -> list[Vector]:
    """The n placements ``m(a x_1..a x_{i-1}, m(x_i..x_{n+i-1}), b x_{n+i}..b x_{2n-1})``."""
    alg = im.alg
    n = alg.arity
    out = []
    for i in range(n):
        inner = alg.bracket.get(t[i:i + n])
        if inner is None:
            out.append(zero(alg.dim))
            continue
        args = [im.a[j] for j in t[:i]] + [inner] + [im.b[j] for j in t[i + n:]]
        out.append(im.br(*args))
    return out


def _total_assoc(alg: NAryBiHomAlgebra) -> Iterator[Instance]:
    im = _Images(alg)
    n = alg.arity
    for t in alg.tuples(2 * n - 1):
        terms = _assoc_terms(im, t)
        for j in range(1, n):
            yield Instance(t, terms[0], terms[j], f"placement i=1 vs j={j + 1}")


def _weak_total_assoc(alg: NAryBiHomAlgebra) -> Iterator[Instance]:
    im = _Images(alg)
    n = alg.arity
    for t in alg.tuples(2 * n - 1):
        terms = _assoc_terms(im, t)
        yield Instance(t, terms[0], terms[-1], f"placement i=1 vs j={n}")


def _partial_assoc(alg: NAryBiHomAlgebra) -> Iterator[Instance]:
    im = _Images(alg)
    n, d = alg.arity, alg.dim
    for t in alg.tuples(2 * n - 1):
        yield Instance(t, vsum(_assoc_terms(im, t), d), zero(d), "sum of placements")


def _alternate_partial_assoc(alg: NAryBiHomAlgebra) -> Iterator[Instance]:
    im = _Images(alg)
    n, d = alg.arity, alg.dim
    for t in alg.tuples(2 * n - 1):
        terms = _assoc_terms(im, t)
        signed = [v if (i + 1) % 2 == 0 else scale(Fraction(-1), v) for i, v in enumerate(terms)]
        yield Instance(t, vsum(signed, d), zero(d), "signed sum of placements")


_GENERATORS: dict[str, Callable[..., Iterator[Instance]]] = {
    COMMUTATION: _commutation,
    MULTIPLICATIVITY: _multiplicativity,
    SKEWSYMMETRY: _skewsymmetry,
    BINARY_JACOBI: _binary_jacobi,
    BINARY_LEIBNIZ: _binary_leibniz,
    N_JACOBI: _n_jacobi,
    NAMBU: _nambu,
    TOTAL_ASSOC: _total_assoc,
    PARTIAL_ASSOC: _partial_assoc,
    WEAK_TOTAL_ASSOC: _weak_total_assoc,
    ALTERNATE_PARTIAL_ASSOC: _alternate_partial_assoc,
}

AXIOMS = tuple(_GENERATORS)
BINARY_ONLY = (BINARY_JACOBI, BINARY_LEIBNIZ)


def instances(alg: NAryBiHomAlgebra, axiom: str, **options) -> Iterator[Instance]:
    """Lazily enumerate every instance of ``axiom`` on basis tuples."""
    try:
        gen = _GENERATORS[axiom]
    except KeyError:
        raise ValueError(f"unknown axiom {axiom!r}; choose from {', '.join(AXIOMS)}") from None
    if axiom in BINARY_ONLY:
        _require_binary(alg, axiom)
    return gen(alg, **options)


def run_check(alg: NAryBiHomAlgebra, axiom: str, **options) -> CheckReport:
    checked = 0
    last = None
    for inst in instances(alg, axiom, **options):
        if inst.tuple != last:
            checked += 1
            last = inst.tuple
        if inst.lhs != inst.rhs:
            return CheckReport(axiom, False, checked,
                               Counterexample(inst.tuple, inst.lhs, inst.rhs, inst.detail),
                               note=_note(axiom))
    return CheckReport(axiom, True, checked, note=_note(axiom))


def _note(axiom: str) -> str:
    return ALTERNATE_SIGN_NOTE if axiom == ALTERNATE_PARTIAL_ASSOC else ""


class Residual(NamedTuple):
    tuple: tuple[int, ...]
    defect: Vector
    detail: str


def residuals(alg: NAryBiHomAlgebra, axiom: str) -> list[Residual]:
    """All nonzero defects ``lhs - rhs``, in tuple order."""
    out = []
    for inst in instances(alg, axiom):
        defect = sub(inst.lhs, inst.rhs)
        if not is_zero(defect):
            out.append(Residual(inst.tuple, defect, inst.detail))
    return out


def check_commutation(alg): return run_check(alg, COMMUTATION)
def check_multiplicativity(alg): return run_check(alg, MULTIPLICATIVITY)
def check_binary_bihom_jacobi(alg): return run_check(alg, BINARY_JACOBI)
def check_binary_bihom_leibniz(alg): return run_check(alg, BINARY_LEIBNIZ)
def check_n_bihom_jacobi(alg): return run_check(alg, N_JACOBI)
def check_bihom_nambu(alg): return run_check(alg, NAMBU)
def check_total_bihom_assoc(alg): return run_check(alg, TOTAL_ASSOC)
def check_partial_bihom_assoc(alg): return run_check(alg, PARTIAL_ASSOC)
def check_weak_total_assoc(alg): return run_check(alg, WEAK_TOTAL_ASSOC)
def check_alternate_partial_assoc(alg): return run_check(alg, ALTERNATE_PARTIAL_ASSOC)


def check_bihom_skewsymmetry(alg, permutations: str = "adjacent"):
    """Alternation of ``(x_1..x_n) -> [b x_1, ..., b x_{n-1}, a x_n]``.

    Adjacent transpositions generate S_n, so they suffice; ``"all"`` runs
    every permutation instead.
    """
    return run_check(alg, SKEWSYMMETRY, permutations=permutations)


# flavor -> axioms making up the definition
SUITES: dict[str, tuple[str, ...]] = {
    "lie-jacobi": (COMMUTATION, MULTIPLICATIVITY, SKEWSYMMETRY, N_JACOBI),
    "lie-leibniz": (COMMUTATION, MULTIPLICATIVITY, SKEWSYMMETRY, NAMBU),
    "totally-assoc": (COMMUTATION, MULTIPLICATIVITY, TOTAL_ASSOC),
    "partially-assoc": (COMMUTATION, MULTIPLICATIVITY, PARTIAL_ASSOC),
    # binary BiHom-Lie algebras with the cyclic Jacobi identity
    "bihom-lie": (COMMUTATION, MULTIPLICATIVITY, SKEWSYMMETRY, BINARY_JACOBI),
}


def suite(alg: NAryBiHomAlgebra, flavor: str | None = None) -> list[CheckReport]:
    """Run the axioms defining ``flavor`` (default: the algebra's tag)."""
    flavor = alg.flavor if flavor is None else flavor
    if flavor == "unchecked":
        return classify(alg)
    try:
        names = SUITES[flavor]
    except KeyError:
        raise ValueError(f"no suite for flavor {flavor!r}") from None
    if flavor == "bihom-lie":
        _require_binary(alg, flavor)
    if flavor == "lie-leibniz" and alg.arity == 2:
        names = tuple(BINARY_LEIBNIZ if a == NAMBU else a for a in names)
    return [run_check(alg, a) for a in names if not (alg.weak and a == MULTIPLICATIVITY)]


def classify(alg: NAryBiHomAlgebra) -> list[CheckReport]:
    """Every axiom applicable at the algebra's arity."""
    reports = []
    for a in AXIOMS:
        if a in BINARY_ONLY and alg.arity != 2:
            continue
        if alg.weak and a == MULTIPLICATIVITY:
            continue
        reports.append(run_check(alg, a))
    return reports


def all_pass(reports) -> bool:
    return all(r.passed for r in reports)
