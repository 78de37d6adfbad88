from __future__ import annotations

import itertools
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import oracles
from corpus import classical_corpus, raw, twisted_corpus

from nbihom import (
    AXIOMS, ArityMismatch, CheckReport, Matrix, NAryBiHomAlgebra, all_pass, classify,
    eval_bracket, instantiate, load, residuals, run_check, suite, yau_twist_assoc, zero_algebra,
)
from nbihom.axioms import BINARY_ONLY, _fmt_vec, instances

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fam(name):
    return load(FIXTURES / f"{name}.json")


def test_commutation_counterexample():
    alg = zero_algebra(2, 2, Matrix.from_rows([[0, 1], [0, 0]]), Matrix.from_rows([[0, 0], [1, 0]]))
    report = run_check(alg, "commutation")
    assert not report.passed
    assert report.counterexample.lhs != report.counterexample.rhs


def test_multiplicative_point():
    alg = instantiate(fam("ex1_item2"), {"a": 2, "b": 1, "c": 1})
    assert run_check(alg, "multiplicativity").passed


def test_perturbed_family_fails_leibniz():
    alg = instantiate(fam("ex1_item1"), {"a": 1, "b": 1, "c1": 1, "c2": 1})
    assert all_pass(suite(alg))
    table = dict(alg.bracket)
    table[(0, 1)] = (0, 0, 1)
    broken = NAryBiHomAlgebra(3, 2, table, alg.alpha, alg.beta, flavor="lie-leibniz")
    report = run_check(broken, "bihom-leibniz")
    assert not report.passed
    assert not oracles.Twisted(broken).binary_leibniz()


def test_binary_forms_agree():
    """At n = 2 Nambu is the Leibniz identity; n-Jacobi matches it for skew classical brackets."""
    for alg in list(classical_corpus().values()) + list(twisted_corpus().values()):
        if alg.arity != 2:
            continue
        leib = run_check(alg, "bihom-leibniz").passed
        assert run_check(alg, "bihom-nambu").passed == leib
        classical = alg.alpha == alg.beta == Matrix.identity(alg.dim)
        if classical and run_check(alg, "bihom-skewsymmetry").passed:
            assert run_check(alg, "n-bihom-jacobi").passed == leib


def test_binary_only_axioms_reject_ternary():
    with pytest.raises(ArityMismatch):
        run_check(zero_algebra(2, 3), "bihom-jacobi")
    with pytest.raises(ValueError):
        run_check(zero_algebra(2, 2), "no-such-axiom")


def dual_numbers():
    # e1 = 1, e2 = t with t^2 = 0
    return raw(2, 2, {(0, 0): [1, 0], (0, 1): [0, 1], (1, 0): [0, 1]})


def test_twisted_dual_numbers():
    base = dual_numbers()
    scale = Matrix.diag([1, 2])
    alg = yau_twist_assoc(base, scale, scale)
    assert eval_bracket(alg, [(0, 1), (0, 1)]) == (0, 0)
    assert alg.bracket[(0, 1)] == (0, 2)
    assert all_pass(suite(alg))
    assert all(oracles.Twisted(alg).verdict(a) for a in ("total-assoc", "commutation", "multiplicativity"))


def test_twisted_ternary_idempotent():
    base = raw(2, 3, {(0, 0, 0): [1, 0]})
    alg = yau_twist_assoc(base, Matrix.diag([1, 0]), Matrix.diag([1, 0]))
    assert run_check(alg, "total-assoc").passed
    assert oracles.Twisted(alg).total_assoc()


def test_weak_total_is_weaker():
    # m(e2,e1,e2) = e2: the outer placements both give e2 on (e2,e1,e2,e1,e2), the middle gives 0
    alg = raw(2, 3, {(1, 0, 1): [0, 1]})
    assert run_check(alg, "weak-total-assoc").passed
    assert not run_check(alg, "total-assoc").passed
    o = oracles.Twisted(alg)
    assert o.weak_total_assoc() and not o.total_assoc()


def test_classify_reports():
    alg = instantiate(fam("ex1_item3"), {"a": 1, "b": 2, "c1": 0, "c2": 1, "c3": 0, "c4": 0, "c5": 1})
    names = [r.axiom for r in classify(alg)]
    assert names == list(AXIOMS)
    assert all(r.passed for r in classify(zero_algebra(2, 3)))
    ternary = [r.axiom for r in classify(load(FIXTURES / "ex12_twisted.json"))]
    assert not set(BINARY_ONLY) & set(ternary)


def test_report_invariant_and_describe():
    with pytest.raises(ValueError):
        CheckReport("x", False, 1)
    alg = raw(2, 2, {(0, 0): [1, -2]})
    report = run_check(alg, "bihom-skewsymmetry")
    text = report.describe()
    assert text.startswith("FAIL  bihom-skewsymmetry")
    assert "e1 - 2*e2" in text
    assert report.to_record()["tuple"] == [1, 1]
    assert _fmt_vec((0, 0)) == "0"
    assert _fmt_vec((Fraction(-1, 2), 1)) == "-1/2*e1 + e2"


def test_alternate_assoc_carries_note():
    assert run_check(zero_algebra(2, 3), "alternate-partial-assoc").note


def test_all_permutations_agree_with_adjacent():
    for alg in classical_corpus().values():
        assert run_check(alg, "bihom-skewsymmetry").passed == \
            run_check(alg, "bihom-skewsymmetry", permutations="all").passed


# -- properties against the tensor oracle -----------------------------------------

small = st.sampled_from([Fraction(x) for x in (-1, 0, 0, 1, 2, Fraction(1, 2))])


@st.composite
def algebras(draw, dims=(1, 2), arities=(2, 3)):
    d = draw(st.sampled_from(dims))
    n = draw(st.sampled_from(arities))
    tuples = list(itertools.product(range(d), repeat=n))
    chosen = draw(st.lists(st.sampled_from(tuples), unique=True, max_size=4))
    table = {t: [draw(small) for _ in range(d)] for t in chosen}
    diag = draw(st.booleans())
    if diag:
        alpha = Matrix.diag([draw(small) for _ in range(d)])
        beta = Matrix.diag([draw(small) for _ in range(d)])
    else:
        alpha = Matrix(d, d, tuple(draw(small) for _ in range(d * d)))
        beta = Matrix(d, d, tuple(draw(small) for _ in range(d * d)))
    return NAryBiHomAlgebra(d, n, table, alpha, beta)


@settings(max_examples=120, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(algebras())
def test_verdicts_match_oracle(alg):
    oracle = oracles.Twisted(alg)
    for a in AXIOMS:
        if a in BINARY_ONLY and alg.arity != 2:
            continue
        assert run_check(alg, a).passed == oracle.verdict(a), a


@settings(max_examples=60, deadline=None)
@given(algebras(), st.data())
def test_counterexample_replays(alg, data):
    for a in AXIOMS:
        if a in BINARY_ONLY and alg.arity != 2:
            continue
        report = run_check(alg, a)
        assert report.passed == (not residuals(alg, a))
        if report.passed:
            continue
        cx = report.counterexample
        # the same instance regenerates identical sides
        inst = next(i for i in instances(alg, a) if i.tuple == cx.tuple and i.lhs != i.rhs)
        assert (inst.lhs, inst.rhs) == (cx.lhs, cx.rhs)


@settings(max_examples=40, deadline=None)
@given(algebras(dims=(2,), arities=(2,)),
       st.lists(st.lists(small, min_size=2, max_size=2).map(tuple), min_size=3, max_size=3))
def test_basis_sufficiency_binary_leibniz(alg, xs):
    """A basis-level pass implies the identity on arbitrary vectors."""
    if not run_check(alg, "bihom-leibniz").passed:
        return
    a, b = alg.alpha.apply, alg.beta.apply

    def br(u, v):
        return eval_bracket(alg, [u, v])

    def tw(u, v):
        return br(b(u), a(v))

    def add(u, v):
        return tuple(p + q for p, q in zip(u, v))

    x, y, z = xs
    lhs = br(b(b(x)), tw(y, z))
    rhs = add(br(tw(x, y), b(b(z))), br(b(b(y)), tw(x, z)))
    assert lhs == rhs
