"""Acceptance criteria 1-10, each at its stated tolerance (exact) and time budget.

Every test records one PASS/FAIL line; ``conftest.py`` prints them at the
end of the pytest run, and running this file directly prints them too.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

sys.path.insert(0, str(Path(__file__).resolve().parent))

import oracles  # noqa: E402
from corpus import classical_corpus, ex3_item1_pairs, strong_pairs, twisted_corpus  # noqa: E402

from nbihom import (  # noqa: E402
    AXIOMS, LinearForm, Matrix, all_pass, analyze_trace, fundamental_algebra, induce_algebra,
    induce_family, instantiate, load, run_check, suite, yau_twist_nlie,
)
from nbihom.axioms import BINARY_ONLY, MULTIPLICATIVITY, SKEWSYMMETRY  # noqa: E402
from nbihom.family import grid_points, parse_expression  # noqa: E402

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

RESULTS: dict[int, tuple[bool, str]] = {}


def record(n: int, ok: bool, detail: str):
    RESULTS[n] = (ok, detail)
    print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def summary_lines() -> list[str]:
    return [f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
            for n, (ok, detail) in sorted(RESULTS.items())]


# -- 1 --------------------------------------------------------------------------------

# printed twisted table, in order, as (i, j, k, signed target index)
PRINTED_TWIST = [
    (1, 2, 1, -3), (1, 2, 2, 4), (1, 3, 1, -2), (1, 3, 3, -4), (1, 4, 2, 2), (2, 1, 1, -3),
    (1, 2, 1, 3), (2, 1, 2, 4), (2, 3, 1, 1), (2, 3, 4, 4), (2, 4, 2, -1), (2, 4, 4, -3),
    (3, 1, 1, -2), (3, 1, 3, 4), (3, 2, 1, 1), (3, 2, 4, 4), (3, 4, 3, -1), (3, 4, 4, -2),
    (4, 1, 2, -2), (4, 1, 3, -3), (4, 2, 2, 1), (4, 2, 4, -3), (4, 3, 3, -1), (4, 3, 4, -2),
]
CITED = [(1, 2, 2, 4), (1, 4, 2, 2)]


def _unit(signed: int) -> tuple[Fraction, ...]:
    v = [Fraction(0)] * 4
    v[abs(signed) - 1] = Fraction(1 if signed > 0 else -1)
    return tuple(v)


def table_groups(entries):
    """Group printed entries by ({i, j}, k); a group is consistent iff it obeys
    antisymmetry in the first two slots and has no disagreeing duplicates."""
    groups: dict = {}
    for i, j, k, s in entries:
        groups.setdefault((frozenset((i, j)), k), []).append((i, j, k, s))
    out = []
    for key, members in groups.items():
        values = {}
        ok = True
        for i, j, k, s in members:
            v = _unit(s) if i <= j else tuple(-x for x in _unit(s))  # normalize to i <= j
            if i == j:
                ok = False  # a repeated slot must bracket to zero
            if values.setdefault("v", v) != v:
                ok = False
        out.append((key, members, ok))
    return out


def test_criterion_01_twist_reproduction():
    t0 = time.perf_counter()
    alpha = Matrix.diag([-1, 1, 1, -1])
    beta = Matrix.from_rows([[0, 0, 0, -1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]])
    twisted = yau_twist_nlie(load(FIXTURES / "ex12_classical"), alpha, beta)
    reports = suite(twisted, "lie-jacobi")
    elapsed = time.perf_counter() - t0

    def value(i, j, k):
        return twisted.bracket.get((i - 1, j - 1, k - 1), (Fraction(0),) * 4)

    cited_ok = all(value(i, j, k) == _unit(s) for i, j, k, s in CITED)
    consistent_bad, resolved, unresolved = [], 0, []
    for key, members, ok in table_groups(PRINTED_TWIST):
        matches = [m for m in members if value(*m[:3]) == _unit(m[3])]
        if ok:
            consistent_bad += [m for m in members if m not in matches]
        elif matches:
            resolved += 1
        else:
            unresolved.append(members)
    groups = table_groups(PRINTED_TWIST)
    n_consistent = sum(len(m) for _, m, ok in groups if ok)
    n_matching = sum(value(i, j, k) == _unit(s) for i, j, k, s in PRINTED_TWIST)
    zero_defects = all_pass(reports) and any(r.axiom == MULTIPLICATIVITY for r in reports)
    ok = cited_ok and not consistent_bad and not unresolved and zero_defects and elapsed < 5
    record(1, ok, f"cited entries {'match' if cited_ok else 'DIFFER'}; {n_consistent} entries in"
                  f" self-consistent groups, {len(consistent_bad)} mismatches;"
                  f" {len(groups) - sum(ok for *_, ok in groups)} groups break first-two-slot"
                  f" antisymmetry or duplicate a tuple, {resolved} resolved by the formula,"
                  f" {len(unresolved)} unresolved; {n_matching}/{len(PRINTED_TWIST)} printed entries equal"
                  f" the formula; suite {'clean' if zero_defects else 'FAILED'}; {elapsed:.2f}s")


# -- 2 --------------------------------------------------------------------------------

def test_criterion_02_binary_families():
    t0 = time.perf_counter()
    total, failures = 0, []
    for name in ("ex1_item1", "ex1_item2", "ex1_item3"):
        fam = load(FIXTURES / name)
        for point in grid_points(fam, max_points=2000, seed=0):
            total += 1
            if not all_pass(suite(instantiate(fam, point), "lie-leibniz")):
                failures.append((name, point))
    elapsed = time.perf_counter() - t0
    record(2, not failures and elapsed < 60,
           f"{total} grid points over 3 families, {len(failures)} failures, {elapsed:.1f}s")


# -- 3 --------------------------------------------------------------------------------

PRINTED_ITEM1 = {
    (1, 2, 3): "t1*c2", (1, 3, 1): "t1*c1 + t1*c3", (1, 3, 2): "t1*c4", (1, 3, 3): "t1*c5",
    (2, 1, 3): "-t1*c2", (2, 3, 1): "t1*c2", (3, 1, 2): "-t1*c4", (3, 1, 3): "-t1*c5",
    (3, 2, 1): "t1*c4", (3, 3, 3): "t1*c5",
}


def test_criterion_03_induced_strong():
    t0 = time.perf_counter()
    base = load(FIXTURES / "ex3_item1")
    induced = induce_family(base, ["t1", "0", "0"], regime="strong")
    names = induced.params
    mismatched = []
    for (i, j, k), text in PRINTED_ITEM1.items():
        got = induced.bracket.get((i - 1, j - 1, k - 1), (0, 0, 0))[2]
        if sympy.expand(got - parse_expression(text, names)) != 0:
            mismatched.append(((i, j, k), text, str(got)))
    # grid evaluation of the printed values and the 3-ary suite
    points = grid_points(induced, max_points=300, seed=1)
    grid_bad = suite_bad = regime_bad = 0
    for point in points:
        alg = instantiate(induced, point)
        subs = {sympy.Symbol(p): sympy.Rational(v.numerator, v.denominator) for p, v in point.items()}
        for (i, j, k), text in PRINTED_ITEM1.items():
            want = parse_expression(text, names).subs(subs)
            if alg.bracket.get((i - 1, j - 1, k - 1), (0, 0, 0))[2] != Fraction(str(want)):
                grid_bad += 1
                break
        base_alg = instantiate(base, {p: point[p] for p in base.params})
        regime_bad += not analyze_trace(base_alg, [point["t1"], 0, 0]).strong_regime
        suite_bad += not all_pass(suite(alg, "lie-leibniz"))
    elapsed = time.perf_counter() - t0
    ok = not mismatched and not grid_bad and not suite_bad and not regime_bad and elapsed < 30
    detail = (f"{10 - len(mismatched)}/10 printed values reproduced symbolically; grid: {len(points)}"
              f" points, {grid_bad} value mismatches, {suite_bad} suite failures,"
              f" {regime_bad} strong-regime failures, {elapsed:.1f}s")
    if mismatched:
        detail += "; differing: " + ", ".join(f"[e{t[0]},e{t[1]},e{t[2]}] printed {p} computed {g}"
                                              for t, p, g in mismatched)
        alt = induced.bracket.get((2, 2, 0))
        if alt is not None:
            detail += f" (computed [e3,e3,e1] = {alt[2]} e3)"
    record(3, ok, detail)


# -- 4 --------------------------------------------------------------------------------

def test_criterion_04_no_nonzero_tau():
    fam = load(FIXTURES / "ex3_item2")
    grid = fam.grid
    taus = [t for t in itertools.product(*(grid[p] for p in ("t1", "t2", "t3"))) if any(t)]
    rng = random.Random(4)
    structural = [p for p in fam.params if p.startswith("c")]
    c_points = [{p: Fraction(0) for p in structural}, {p: Fraction(1) for p in structural}]
    c_points += [{p: rng.choice(grid[p]) for p in structural} for _ in range(4)]
    checked, survivors = 0, []
    for a1 in grid["a1"]:
        for cs in c_points:
            point = {**cs, "a1": a1, "t1": 0, "t2": 0, "t3": 0}
            alg = instantiate(fam, point)
            for tau in taus:
                checked += 1
                if analyze_trace(alg, tau).strong_regime:
                    survivors.append((point, tau))
    record(4, not survivors,
           f"{len(taus)} nonzero grid tau x {len(grid['a1'])} a1 values x {len(c_points)} bracket"
           f" points = {checked} cases, {len(survivors)} satisfy the strong regime")


# -- 5 --------------------------------------------------------------------------------

PRINTED_WEAK = {(2, 1, 2): "t2*c1", (2, 2, 2): "t2*c2", (2, 3, 2): "t2*c3"}


def test_criterion_05_weak_regime():
    base = load(FIXTURES / "ex_weak")
    induced = induce_family(base, ["0", "t2", "0"], regime="weak")
    mismatched = []
    for (i, j, k), text in PRINTED_WEAK.items():
        got = induced.bracket.get((i - 1, j - 1, k - 1), (0, 0, 0))
        want = (0, parse_expression(text, induced.params), 0)
        if any(sympy.expand(g - w) != 0 for g, w in zip(got, want)):
            mismatched.append((i, j, k))
    extra = sorted(set(induced.bracket) - {(i - 1, j - 1, k - 1) for i, j, k in PRINTED_WEAK})
    points = grid_points(induced, max_points=300, seed=5)
    regime_bad = suite_bad = mult_listed = 0
    mult_fail = 0
    for point in points:
        base_alg = instantiate(base, {p: point[p] for p in base.params})
        regime_bad += not analyze_trace(base_alg, [0, point["t2"], 0]).weak_regime
        alg = instantiate(induced, point)
        reports = suite(alg, "lie-leibniz")
        mult_listed += any(r.axiom == MULTIPLICATIVITY for r in reports)
        suite_bad += not all_pass(reports)
        mult_fail += not run_check(alg, MULTIPLICATIVITY).passed
    ok = not mismatched and not extra and not regime_bad and not suite_bad and not mult_listed
    record(5, ok, f"3/3 printed values {'match' if not mismatched else 'DIFFER'}, {len(extra)} extra"
                  f" entries; {len(points)} grid points: {regime_bad} weak-regime failures,"
                  f" {suite_bad} suite failures, multiplicativity skipped"
                  f" (would fail at {mult_fail} points)")


# -- 6 --------------------------------------------------------------------------------

def test_criterion_06_induction_property():
    pairs = list(strong_pairs(seed=0))
    pairs += list(ex3_item1_pairs(load(FIXTURES / "ex3_item1"), limit=20, seed=6))
    tested, bad = 0, []
    for alg, tau, flavor in pairs:
        if not analyze_trace(alg, tau).strong_regime:
            continue
        tested += 1
        induced = induce_algebra(alg, tau, regime="strong")
        failed = [r for r in suite(induced, flavor) if not r.passed]
        if failed:
            bad.append((alg, tau, failed[0]))
    by_flavor = {f: sum(1 for *_, g in pairs if g == f) for f in ("lie-jacobi", "lie-leibniz")}
    record(6, tested >= 50 and not bad,
           f"{tested} strong-regime pairs ({by_flavor['lie-jacobi']} n-Lie,"
           f" {by_flavor['lie-leibniz']} Lie-Leibniz), {len(bad)} induced suite failures")


# -- 7 --------------------------------------------------------------------------------

def test_criterion_07_fundamental():
    classical = load(FIXTURES / "ex12_classical")
    L = fundamental_algebra(classical)
    reports = suite(L, "lie-leibniz")
    leib = next(r for r in reports if r.axiom == "bihom-leibniz")
    ok = L.dim == 6 and L.arity == 2 and all_pass(reports) and leib.tuples_checked == 6 ** 3
    record(7, ok, f"dim {L.dim}, arity {L.arity}, Leibniz identity over {leib.tuples_checked}"
                  f" triples, suite {'clean' if all_pass(reports) else 'FAILED'}")


# -- 8 --------------------------------------------------------------------------------

def entailment_cases():
    """(label, algebra, tau) tested for the entailment strong_compat & tau != 0 => alpha = beta."""
    for alg, tau, _ in strong_pairs(seed=8, per_map=1):
        yield "generated", alg, tau
    for name, taus in (("ex3_item2", ("t1", "t2", "t3")), ("ex3_item3_general", ("t1", "t2", "t3"))):
        fam = load(FIXTURES / name)
        for point in grid_points(fam, max_points=1500, seed=8):
            alg = instantiate(fam, point)
            yield name, alg, LinearForm([point[t] for t in taus])
    # two-dimensional diagonal maps against a small tau grid
    vals = (-1, 0, 1, 2)
    for a in itertools.product(vals, repeat=2):
        for b in itertools.product(vals, repeat=2):
            alg = classical_corpus()["nonabelian2"].with_maps(Matrix.diag(a), Matrix.diag(b))
            for t in itertools.product((-1, 0, 1), repeat=2):
                yield "diag2", alg, LinearForm(t)


def test_criterion_08_entailment():
    tested = literal_violations = nondegenerate = with_invariance = invariance_violations = 0
    first = None
    for label, alg, tau in entailment_cases():
        if tau.is_zero():
            continue
        a = analyze_trace(alg, tau)
        if not a.strong_compat:
            continue
        tested += 1
        if alg.alpha != alg.beta:
            literal_violations += 1
            zero_map = any(not any(m.entries) for m in (alg.alpha, alg.beta))
            nondegenerate += not zero_map
            if first is None and not zero_map:
                first = (label, alg.alpha.to_rows(), alg.beta.to_rows(), tau.coeffs)
        if a.tau_alpha_invariant and a.tau_beta_invariant:
            with_invariance += 1
            invariance_violations += alg.alpha != alg.beta
    detail = (f"{tested} tested tau != 0 with strong_compat: {literal_violations} have alpha != beta"
              f" ({nondegenerate} with alpha, beta both nonzero);"
              f" adding tau o alpha = tau o beta = tau: {with_invariance} cases,"
              f" {invariance_violations} violations")
    if first is not None:
        label, a, b, t = first
        fmt = lambda rows: "diag(" + ",".join(str(rows[i][i]) for i in range(len(rows))) + ")" \
            if all(rows[i][j] == 0 for i in range(len(rows)) for j in range(len(rows)) if i != j) \
            else str([[str(x) for x in r] for r in rows])
        detail += (f"; e.g. {label} alpha={fmt(a)} beta={fmt(b)}"
                   f" tau=({','.join(str(x) for x in t)})")
    record(8, literal_violations == 0, detail)


# -- 9 --------------------------------------------------------------------------------

def test_criterion_09_reduction_oracle():
    corpus = classical_corpus()
    compared, disagreements = 0, []
    for name, alg in corpus.items():
        T = oracles.tensor(alg)
        for axiom in AXIOMS:
            if axiom in BINARY_ONLY and alg.arity != 2:
                continue
            compared += 1
            if run_check(alg, axiom).passed != oracles.CLASSICAL[axiom](T):
                disagreements.append((name, axiom))
    record(9, len(corpus) >= 10 and not disagreements,
           f"{len(corpus)} algebras, {compared} verdicts compared, {len(disagreements)} disagreements")


# -- 10 -------------------------------------------------------------------------------

def test_criterion_10_skew_generators():
    algs = {**classical_corpus(), **twisted_corpus()}
    algs = {k: a for k, a in algs.items() if a.dim <= 3 and a.arity <= 3}
    diff = [k for k, a in algs.items()
            if run_check(a, SKEWSYMMETRY, permutations="adjacent").passed
            != run_check(a, SKEWSYMMETRY, permutations="all").passed]
    n_pass = sum(run_check(a, SKEWSYMMETRY).passed for a in algs.values())
    record(10, not diff, f"{len(algs)} algebras ({n_pass} skewsymmetric), {len(diff)} verdict differences")


if __name__ == "__main__":
    status = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    print("\n".join(summary_lines()))
    sys.exit(status)
