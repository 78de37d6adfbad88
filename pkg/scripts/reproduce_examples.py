"""Recompute the worked examples from the fixtures and print the key tables.

    python3 scripts/reproduce_examples.py            # human-readable
    python3 scripts/reproduce_examples.py --json     # one JSON object per example
"""

from __future__ import annotations

import argparse
import json
from fractions import Fraction
from pathlib import Path

from nbihom import (
    Matrix, all_pass, analyze_trace, fundamental_algebra, induce_algebra, induce_family, instantiate,
    load, suite, yau_twist_nlie,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

TWIST_ALPHA = Matrix.diag([-1, 1, 1, -1])
TWIST_BETA = Matrix.from_rows([[0, 0, 0, -1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]])


def coeff(c, k: int) -> str:
    """``c*e_k`` with unit coefficients dropped and sums parenthesized."""
    text = str(c)
    if text in ("1", "-1"):
        return f"{text[:-1]}e{k + 1}"
    if "+" in text or " - " in text:
        text = f"({text})"
    return f"{text}*e{k + 1}"


def fmt(t, v) -> str:
    terms = [coeff(c, k) for k, c in enumerate(v) if c]
    return f"[{','.join(f'e{i + 1}' for i in t)}] = {' + '.join(terms) or '0'}"


def twisted_3lie() -> dict:
    base = load(FIXTURES / "ex12_classical.json")
    tw = yau_twist_nlie(base, TWIST_ALPHA, TWIST_BETA)
    return {
        "name": "twisted 4-dim 3-Lie algebra",
        "suite": all_pass(suite(tw)),
        "table": [fmt(t, v) for t, v in tw.bracket.items() if t[0] < t[1]],
    }


def fundamental() -> dict:
    fun = fundamental_algebra(load(FIXTURES / "ex12_classical.json"))
    return {"name": "fundamental algebra of the 3-Lie algebra", "dim": fun.dim,
            "suite": all_pass(suite(fun, "lie-leibniz"))}


def induced_item1() -> dict:
    family = load(FIXTURES / "ex3_item1.json")
    symbolic = induce_family(family, ["t1", 0, 0])
    table = [fmt(t, v) for t, v in symbolic.bracket.items()]
    point = {"c1": 1, "c2": 2, "c3": Fraction(-1, 2), "c4": 3, "c5": -1, "a2": 2}
    alg = instantiate(family, point)
    return {"name": "induced ternary algebra (tau = t1 e1*)",
            "strong_regime": analyze_trace(alg, [1, 0, 0]).strong_regime,
            "suite_at_sample": all_pass(suite(induce_algebra(alg, [1, 0, 0]))),
            "table": table}


def induced_item3() -> dict:
    family = load(FIXTURES / "ex3_item3.json")
    symbolic = induce_family(family, [0, "t2", 0])
    return {"name": "induced ternary algebra (tau = t2 e2*)",
            "table": [fmt(t, v) for t, v in symbolic.bracket.items()]}


EXAMPLES = (twisted_3lie, fundamental, induced_item1, induced_item3)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--json", action="store_true")
    args = p.parse_args(argv)
    for ex in EXAMPLES:
        result = ex()
        if args.json:
            print(json.dumps(result, sort_keys=True))
            continue
        print(f"== {result.pop('name')}")
        table = result.pop("table", [])
        for k, v in result.items():
            print(f"  {k}: {v}")
        for line in table:
            print(f"  {line}")


if __name__ == "__main__":
    main()
