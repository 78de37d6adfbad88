"""Sweep every family fixture over its grid and print a verdict count per check.

    python3 scripts/sweep_families.py --max-points 200 --seed 0
"""

from __future__ import annotations

import argparse
import time
from collections import Counter
from pathlib import Path

from nbihom import ParamFamily, load, sweep

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def checks_for(family: ParamFamily) -> list[str]:
    names = [f"suite:{family.flavor}"]
    if family.tau is not None:
        names += ["tau-nonzero", "strong-regime", "weak-regime"]
    return names


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--max-points", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("names", nargs="*", help="fixture names (default: every family)")
    args = p.parse_args(argv)
    paths = [FIXTURES / f"{n}.json" for n in args.names] or sorted(FIXTURES.glob("*.json"))
    for path in paths:
        family = load(path)
        if not isinstance(family, ParamFamily):
            continue
        checks = checks_for(family)
        start = time.perf_counter()
        rows = sweep(family, checks, max_points=args.max_points, seed=args.seed)
        passed = Counter(c for r in rows for c, ok in r.verdicts.items() if ok)
        summary = ", ".join(f"{c} {passed[c]}/{len(rows)}" for c in checks)
        print(f"{path.stem:<20} {summary}  ({time.perf_counter() - start:.1f}s)")


if __name__ == "__main__":
    main()
