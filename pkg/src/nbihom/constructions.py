"""Constructions producing new algebras, and structural tests between them.

All constructions tabulate the new structure constants on basis tuples so
their results are ordinary :class:`NAryBiHomAlgebra` values.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

from . import axioms as ax
from .algebra import (
    LinearForm,
    NAryBiHomAlgebra,
    Vector,
    eval_bracket,
    scale,
    tabulate,
    vec,
    vsum,
    zero,
)
from .axioms import CheckReport, Counterexample
from .linalg import (
    DimensionMismatch,
    Matrix,
    NotInvertible,
    compound_matrix,
    mat_inverse,
    mat_mul,
    mat_rank,
    nullspace,
    wedge_basis,
    wedge_of_vectors,
)


class PreconditionFailed(Exception):
    """A construction's hypotheses do not hold.

    ``reports`` holds the failing checks, ``analysis`` the trace analysis
    when the failure concerns a linear form.
    """

    def __init__(self, message: str, reports=(), analysis=None):
        super().__init__(message)
        self.reports = list(reports)
        self.analysis = analysis


class NotSurjective(ArithmeticError):
    pass


def _as_form(tau, dim: int) -> LinearForm:
    tau = tau if isinstance(tau, LinearForm) else LinearForm(vec(tau))
    if tau.dim != dim:
        raise DimensionMismatch(f"linear form of length {tau.dim} on a {dim}-dimensional algebra")
    return tau


def _matrix_str(m: Matrix) -> str:
    return ";".join(",".join(str(x) for x in m.row(i)) for i in range(m.rows))


def _fail_if_any(message: str, reports):
    bad = [r for r in reports if not r.passed]
    if bad:
        raise PreconditionFailed(f"{message}: {', '.join(r.axiom for r in bad)}", bad)


# -- Yau twists ---------------------------------------------------------------

def yau_twist_nlie(base: NAryBiHomAlgebra, alpha: Matrix, beta: Matrix,
                   verify: bool = True) -> NAryBiHomAlgebra:
    """``[x_1..x_n]' = [a x_1, ..., a x_{n-1}, b x_n]`` with structure maps ``a, b``.

    ``base`` is read as a plain n-Lie algebra; its own maps are ignored.
    With ``verify`` the hypotheses are checked first: the base bracket is
    alternating and satisfies the Filippov identity, and ``alpha``, ``beta``
    are commuting endomorphisms of it.
    """
    d, n = base.dim, base.arity
    plain = base.with_maps(Matrix.identity(d), Matrix.identity(d))
    if verify:
        pre = [
            ax.run_check(base.with_maps(alpha, beta), ax.COMMUTATION),
            ax.run_check(plain, ax.SKEWSYMMETRY),
            ax.run_check(plain, ax.NAMBU),
            check_morphism(plain, plain, alpha, name="alpha is an endomorphism"),
            check_morphism(plain, plain, beta, name="beta is an endomorphism"),
        ]
        _fail_if_any("Yau twist hypotheses fail", pre)
    a = [alpha.col(i) for i in range(d)]
    b = [beta.col(i) for i in range(d)]
    table = tabulate(d, n, lambda t: eval_bracket(plain, [a[i] for i in t[:-1]] + [b[t[-1]]]))
    return NAryBiHomAlgebra(
        d, n, table, alpha, beta, flavor="lie-jacobi",
        provenance={"construction": "yau_twist_nlie",
                    "parameters": {"alpha": _matrix_str(alpha), "beta": _matrix_str(beta)}},
    )


def yau_twist_assoc(base: NAryBiHomAlgebra, alpha: Matrix, beta: Matrix, mode: str = "total",
                    verify: bool = True) -> NAryBiHomAlgebra:
    """``m'(x_1..x_n) = m(a^{n-1} x_1, a^{n-2} b x_2, ..., b^{n-1} x_n)``.

    The result carries structure maps ``a^{n-1}`` and ``b^{n-1}``.
    """
    if mode not in ("total", "partial"):
        raise ValueError("mode must be 'total' or 'partial'")
    d, n = base.dim, base.arity
    plain = base.with_maps(Matrix.identity(d), Matrix.identity(d))
    if verify:
        pre = [
            ax.run_check(base.with_maps(alpha, beta), ax.COMMUTATION),
            ax.run_check(plain, ax.TOTAL_ASSOC if mode == "total" else ax.PARTIAL_ASSOC),
            check_morphism(plain, plain, alpha, name="alpha is an endomorphism"),
            check_morphism(plain, plain, beta, name="beta is an endomorphism"),
        ]
        _fail_if_any("associative twist hypotheses fail", pre)
    slot_maps = [mat_mul(alpha ** (n - 1 - i), beta ** i) for i in range(n)]
    cols = [[m.col(j) for j in range(d)] for m in slot_maps]
    table = tabulate(d, n, lambda t: eval_bracket(plain, [cols[s][i] for s, i in enumerate(t)]))
    return NAryBiHomAlgebra(
        d, n, table, alpha ** (n - 1), beta ** (n - 1),
        flavor="totally-assoc" if mode == "total" else "partially-assoc",
        provenance={"construction": "yau_twist_assoc",
                    "parameters": {"alpha": _matrix_str(alpha), "beta": _matrix_str(beta),
                                   "mode": mode}},
    )


# -- induced (n+1)-ary algebras ------------------------------------------------

def build_phi_tau(alg: NAryBiHomAlgebra, tau) -> dict[tuple[int, ...], Vector]:
    """Structure constants of ``sum_i (-1)^(i-1) tau(x_i) [x_1..^x_i..x_{n+1}]``."""
    tau = _as_form(tau, alg.dim)
    t_ = tau.coeffs
    d, n = alg.dim, alg.arity

    def phi(t):
        terms = []
        for i, j in enumerate(t):
            if not t_[j]:
                continue
            v = alg.bracket.get(t[:i] + t[i + 1:])
            if v is not None:
                terms.append(scale(t_[j] if i % 2 == 0 else -t_[j], v))
        return vsum(terms, d)

    return tabulate(d, n + 1, phi)


@dataclass(frozen=True)
class TraceAnalysis:
    tau_nonzero: bool
    is_twisted_trace: bool
    strong_compat: bool
    tau_alpha_invariant: bool
    tau_beta_invariant: bool
    weak_compat: bool
    kernel_alpha_stable: bool
    kernel_beta_stable: bool
    forces_alpha_eq_beta: bool

    @property
    def strong_regime(self) -> bool:
        return (self.is_twisted_trace and self.strong_compat
                and self.tau_alpha_invariant and self.tau_beta_invariant)

    @property
    def weak_regime(self) -> bool:
        return self.is_twisted_trace and self.strong_compat and self.weak_compat

    def to_record(self) -> dict:
        rec = asdict(self)
        rec.update(strong_regime=self.strong_regime, weak_regime=self.weak_regime)
        return rec


def analyze_trace(alg: NAryBiHomAlgebra, tau) -> TraceAnalysis:
    """Evaluate every condition on ``tau`` used by the induction theorem."""
    tau = _as_form(tau, alg.dim)
    d = alg.dim
    im = ax._Images(alg)
    twisted_trace = all(not tau(im.twisted(t)) for t in alg.tuples())
    ta = [tau(v) for v in im.a]
    tb = [tau(v) for v in im.b]
    tb2 = [tau(v) for v in im.b2]
    strong = all(
        scale(ta[x], im.b[y]) == scale(tb[x], im.a[y]) for x in range(d) for y in range(d)
    )
    alpha_inv = tuple(ta) == tau.coeffs
    beta_inv = tuple(tb) == tau.coeffs
    weak = all(tb[x] * tb2[y] == tb2[x] * tb[y] for x in range(d) for y in range(d))
    kernel = nullspace(Matrix(1, d, tau.coeffs)) if d else []
    k_alpha = all(not tau(alg.alpha.apply(v)) for v in kernel)
    k_beta = all(not tau(alg.beta.apply(v)) for v in kernel)
    nonzero = not tau.is_zero()
    return TraceAnalysis(
        tau_nonzero=nonzero,
        is_twisted_trace=twisted_trace,
        strong_compat=strong,
        tau_alpha_invariant=alpha_inv,
        tau_beta_invariant=beta_inv,
        weak_compat=weak,
        kernel_alpha_stable=k_alpha,
        kernel_beta_stable=k_beta,
        # pick x with tau(x) != 0; invariance turns compat into tau(x) beta = tau(x) alpha
        forces_alpha_eq_beta=nonzero and strong and alpha_inv and beta_inv,
    )


def induce_algebra(alg: NAryBiHomAlgebra, tau, regime: str = "strong",
                   verify: bool = True) -> NAryBiHomAlgebra:
    """The (n+1)-ary algebra ``(A, phi_tau, alpha, beta)``.

    ``regime="weak"`` swaps the invariance conditions for the weaker
    quadratic one; the result is then tagged ``weak`` so multiplicativity is
    left out of its suite.
    """
    if regime not in ("strong", "weak"):
        raise ValueError("regime must be 'strong' or 'weak'")
    tau = _as_form(tau, alg.dim)
    if verify:
        analysis = analyze_trace(alg, tau)
        ok = analysis.strong_regime if regime == "strong" else analysis.weak_regime
        if not ok:
            raise PreconditionFailed(f"tau does not satisfy the {regime} regime", analysis=analysis)
    return NAryBiHomAlgebra(
        alg.dim, alg.arity + 1, build_phi_tau(alg, tau), alg.alpha, alg.beta,
        flavor=alg.flavor, weak=alg.weak or regime == "weak",
        provenance={"construction": "induce_algebra",
                    "parameters": {"tau": ",".join(str(c) for c in tau.coeffs),
                                   "regime": regime}},
    )


def check_phi_tau_trace_lemma(alg: NAryBiHomAlgebra, tau) -> CheckReport:
    """Directly verify that tau is a twisted trace of ``phi_tau`` too."""
    tau = _as_form(tau, alg.dim)
    analysis = analyze_trace(alg, tau)
    if not (analysis.is_twisted_trace and analysis.strong_compat):
        raise PreconditionFailed("lemma needs a twisted trace with the compatibility condition",
                                 analysis=analysis)
    induced = induce_algebra(alg, tau, verify=False)
    im = ax._Images(induced)
    checked = 0
    for t in induced.tuples():
        checked += 1
        value = tau(im.twisted(t))
        if value:
            return CheckReport("phi-tau-twisted-trace", False, checked,
                               Counterexample(t, (value,), (Fraction(0),),
                                              "tau(phi_tau(b x_1..b x_n, a x_{n+1}))"))
    return CheckReport("phi-tau-twisted-trace", True, checked)


# -- fundamental objects --------------------------------------------------------

def fundamental_algebra(alg: NAryBiHomAlgebra, verify: bool = True) -> NAryBiHomAlgebra:
    """Binary algebra on the (n-1)-th exterior power, basis in lexicographic order.

    ``X . Y = sum_i T y_1 ^ .. ^ [x_1..x_{n-1}, y_i] ^ .. ^ T y_{n-1}`` with
    ``T = beta^2 alpha^{-1}``; the structure maps act factorwise.
    """
    d, n = alg.dim, alg.arity
    alpha_inv = mat_inverse(alg.alpha)
    if mat_rank(alg.beta) < d:
        raise NotSurjective(f"beta has rank {mat_rank(alg.beta)} < {d}")
    if verify:
        _fail_if_any("not an n-BiHom-Lie-Leibniz algebra", ax.suite(alg, "lie-leibniz"))
    # needed for the product to be well defined on the exterior power
    for t, v in alg.bracket.items():
        for k in range(n - 2):
            s = t[:k] + (t[k + 1], t[k]) + t[k + 2:]
            if alg.bracket.get(s, zero(d)) != scale(Fraction(-1), v) or t[k] == t[k + 1]:
                raise PreconditionFailed(
                    f"bracket is not alternating in its first {n - 1} arguments at "
                    f"{tuple(i + 1 for i in t)}")

    k = n - 1
    wb = wedge_basis(d, k)
    index = {w: i for i, w in enumerate(wb)}
    T = mat_mul(mat_mul(alg.beta, alg.beta), alpha_inv)
    t_cols = [T.col(i) for i in range(d)]
    e = [alg.basis(i) for i in range(d)]

    def product(pair):
        X, Y = wb[pair[0]], wb[pair[1]]
        out = [Fraction(0)] * len(wb)
        xs = [e[i] for i in X]
        for i in range(k):
            factors = [t_cols[j] for j in Y]
            factors[i] = eval_bracket(alg, xs + [e[Y[i]]])
            for w, c in wedge_of_vectors(factors).items():
                out[index[w]] += c
        return tuple(out)

    table = tabulate(len(wb), 2, product)
    return NAryBiHomAlgebra(
        len(wb), 2, table, compound_matrix(alg.alpha, k), compound_matrix(alg.beta, k),
        flavor="lie-leibniz",
        provenance={"construction": "fundamental_algebra",
                    "parameters": {"wedge_basis": [[i + 1 for i in w] for w in wb]}},
    )


# -- morphisms and subspaces -----------------------------------------------------

def check_morphism(src: NAryBiHomAlgebra, dst: NAryBiHomAlgebra, f: Matrix,
                   name: str = "morphism") -> CheckReport:
    """``a' f = f a``, ``b' f = f b`` and ``f[x_1..x_n] = [f x_1..f x_n]``."""
    if (f.rows, f.cols) != (dst.dim, src.dim):
        raise DimensionMismatch(f"map is {f.rows}x{f.cols}, expected {dst.dim}x{src.dim}")
    if src.arity != dst.arity:
        raise DimensionMismatch("algebras of different arity")
    fcols = [f.col(i) for i in range(src.dim)]

    def gen():
        for lhs_m, rhs_m, what in ((mat_mul(dst.alpha, f), mat_mul(f, src.alpha), "alpha' f vs f alpha"),
                                   (mat_mul(dst.beta, f), mat_mul(f, src.beta), "beta' f vs f beta")):
            for j in range(src.dim):
                yield (j,), lhs_m.col(j), rhs_m.col(j), what
        for t in src.tuples():
            yield (t, f.apply(src.bracket.get(t, zero(src.dim))),
                   eval_bracket(dst, [fcols[i] for i in t]), "f([x]) vs [f(x)]")

    return _report(name, gen())


def _report(name, gen) -> CheckReport:
    checked = 0
    for t, lhs, rhs, detail in gen:
        checked += 1
        if lhs != rhs:
            return CheckReport(name, False, checked, Counterexample(t, lhs, rhs, detail))
    return CheckReport(name, True, checked)


def lift_morphism_check(src: NAryBiHomAlgebra, dst: NAryBiHomAlgebra, f: Matrix,
                        tau_dst) -> CheckReport:
    """Check ``f(phi_tau(x)) = psi_sigma(f x)`` where ``tau = sigma . f``."""
    sigma = _as_form(tau_dst, dst.dim)
    pre = check_morphism(src, dst, f)
    if not pre.passed:
        raise PreconditionFailed("f does not intertwine the brackets", [pre])
    tau = sigma.compose(f)
    phi = induce_algebra(src, tau, verify=False)
    psi = induce_algebra(dst, sigma, verify=False)
    fcols = [f.col(i) for i in range(src.dim)]

    def gen():
        for t in phi.tuples():
            yield (t, f.apply(phi.bracket.get(t, zero(src.dim))),
                   eval_bracket(psi, [fcols[i] for i in t]), "f(phi_tau(x)) vs psi_sigma(f x)")

    return _report("induced-morphism", gen())


def check_subspace(alg: NAryBiHomAlgebra, span: Sequence[Sequence], mode: str = "ideal") -> CheckReport:
    """Closure of ``S = span(...)`` under alpha, beta and the bracket.

    ``subalgebra``: all bracket slots from S.  ``ideal``: first n-1 slots
    from A, last slot from S.  Counterexample tuples index the spanning
    vectors (and basis vectors of A for ideal slots).
    """
    if mode not in ("subalgebra", "ideal"):
        raise ValueError("mode must be 'subalgebra' or 'ideal'")
    d, n = alg.dim, alg.arity
    gens = [vec(v) for v in span]
    if any(len(g) != d for g in gens):
        raise DimensionMismatch("spanning vectors must have the algebra's dimension")
    S = Matrix.from_columns(gens) if gens else Matrix.zeros(d, 0)
    r = mat_rank(S)

    def inside(v):
        if not any(v):
            return True
        return mat_rank(Matrix.from_columns(gens + [v])) == r

    def gen():
        for j, s in enumerate(gens):
            yield (j,), alg.alpha.apply(s), "alpha(s) not in S"
            yield (j,), alg.beta.apply(s), "beta(s) not in S"
        if mode == "subalgebra":
            for t in itertools.product(range(len(gens)), repeat=n):
                yield t, eval_bracket(alg, [gens[i] for i in t]), "[s_1..s_n] not in S"
        else:
            for xs in itertools.product(range(d), repeat=n - 1):
                for j, s in enumerate(gens):
                    yield xs + (j,), eval_bracket(alg, [alg.basis(i) for i in xs] + [s]), \
                        "[e_1..e_(n-1), s] not in S"

    checked = 0
    for t, v, detail in gen():
        checked += 1
        if not inside(v):
            return CheckReport(mode, False, checked, Counterexample(t, v, zero(d), detail))
    return CheckReport(mode, True, checked)
