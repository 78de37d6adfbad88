"""Regenerate the JSON fixtures under fixtures/.

Every fixture is written through the library's own serializer, so running
this twice yields byte-identical files.
"""

from __future__ import annotations

import argparse
import itertools
from pathlib import Path

from nbihom import Matrix, NAryBiHomAlgebra, ParamFamily, save, wedge_normalize, yau_twist_nlie

ROOT = Path(__file__).resolve().parent.parent / "fixtures"

Z = "0"


def diag(*xs):
    return [[x if i == j else Z for j in range(len(xs))] for i, x in enumerate(xs)]


def vec3(**coeffs):
    """vec3(e3="c1") -> ["0", "0", "c1"]."""
    return [coeffs.get(f"e{k}", Z) for k in (1, 2, 3)]


def classical_3lie() -> NAryBiHomAlgebra:
    """4-dim 3-Lie algebra: [e_i,e_j,e_k] = e_l over the complementary index, fully skew."""
    base = {(0, 1, 2): 3, (0, 1, 3): 2, (0, 2, 3): 1, (1, 2, 3): 0}
    bracket = {}
    for t, k in base.items():
        for p in itertools.permutations(t):
            _, sign = wedge_normalize(p)
            bracket[p] = [sign if i == k else 0 for i in range(4)]
    return NAryBiHomAlgebra(4, 3, bracket, Matrix.identity(4), Matrix.identity(4),
                            flavor="lie-jacobi", provenance={"construction": "classical 3-Lie"})


TWIST_ALPHA = Matrix.diag([-1, 1, 1, -1])
TWIST_BETA = Matrix.from_rows([[0, 0, 0, -1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]])


def families() -> dict[str, ParamFamily]:
    out = {}
    out["ex1_item1"] = ParamFamily(
        3, 2, ("a", "b", "c1", "c2"),
        {(1, 1): vec3(e2="c1"), (2, 0): vec3(e1="c2")},
        diag(Z, "1", "a"), diag("b", Z, "1"), flavor="lie-leibniz")
    out["ex1_item2"] = ParamFamily(
        3, 2, ("a", "b", "c"),
        {(1, 1): vec3(e3="c")},
        diag(Z, "a", "a^2"), diag("b", Z, Z), flavor="lie-leibniz")
    out["ex1_item3"] = ParamFamily(
        3, 2, ("a", "b", "c1", "c2", "c3", "c4", "c5"),
        {(0, 0): vec3(e1="c1"), (0, 1): vec3(e1="c2"), (0, 2): vec3(e1="c3"),
         (1, 0): vec3(e1="c4"), (2, 0): vec3(e1="c5")},
        diag(Z, "a", "1"), diag(Z, "b", "1"), flavor="lie-leibniz")
    item1_bracket = {(0, 2): vec3(e3="c1"), (1, 2): vec3(e3="c2"), (2, 0): vec3(e3="c3"),
                     (2, 1): vec3(e3="c4"), (2, 2): vec3(e3="c5")}
    c15 = ("c1", "c2", "c3", "c4", "c5")
    # the general family, before imposing the trace conditions
    out["ex3_item1_general"] = ParamFamily(
        3, 2, c15 + ("a1", "a2", "b1", "b2"), item1_bracket,
        diag("a1", "a2", Z), diag("b1", "b2", Z), flavor="lie-leibniz")
    # with a1 = b1 = 1 and a2 = b2 imposed
    out["ex3_item1"] = ParamFamily(
        3, 2, c15 + ("a2",), item1_bracket,
        diag("1", "a2", Z), diag("1", "a2", Z), flavor="lie-leibniz")
    out["ex3_item2"] = ParamFamily(
        3, 2, ("c1", "c2", "c3", "c4", "c5", "c6", "a1", "t1", "t2", "t3"),
        {(0, 1): vec3(e2="c1", e3="c2"), (0, 2): vec3(e3="c3"),
         (1, 1): vec3(e2="c4", e3="c5"), (2, 1): vec3(e3="c6")},
        diag("a1", Z, Z), diag("1", "1", "1"), tau=("t1", "t2", "t3"), flavor="lie-leibniz")
    out["ex3_item3_general"] = ParamFamily(
        3, 2, ("c1", "a1", "a2", "b1", "t1", "t2", "t3"),
        {(0, 2): vec3(e3="c1"), (2, 0): vec3(e3="-c1")},
        diag("1", "a1", "a2"), diag("1", "b1", "a2"), tau=("t1", "t2", "t3"),
        flavor="lie-leibniz")
    # first solution: a1 = b1 = 1, t3 = 0
    out["ex3_item3"] = ParamFamily(
        3, 2, ("c1", "a2"),
        {(0, 2): vec3(e3="c1"), (2, 0): vec3(e3="-c1")},
        diag("1", "1", "a2"), diag("1", "1", "a2"), flavor="lie-leibniz")
    out["ex_weak"] = ParamFamily(
        3, 2, ("c1", "c2", "c3", "a1", "a2", "b1", "b2"),
        {(1, 0): vec3(e2="c1"), (1, 1): vec3(e2="c2"), (1, 2): vec3(e2="c3")},
        diag("a1", Z, "a2"), diag("b1", Z, "b2"), flavor="lie-leibniz")
    return out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out", type=Path, default=ROOT)
    args = p.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    classical = classical_3lie()
    twisted = yau_twist_nlie(classical, TWIST_ALPHA, TWIST_BETA)
    written = {"ex12_classical": classical, "ex12_twisted": twisted, **families()}
    for name, obj in written.items():
        save(obj, args.out / f"{name}.json")
        print(f"wrote {args.out / name}.json")


if __name__ == "__main__":
    main()
