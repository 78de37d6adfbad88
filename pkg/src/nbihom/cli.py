"""Command line front end.

Exit status: 0 when every requested check passes or the construction
succeeds, 1 when a check or precondition fails, 2 on usage or parse errors.
``--format records`` prints one JSON object per line with sorted keys, so
identical invocations give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import axioms as ax
from . import constructions as cons
from . import family as fam
from .algebra import LinearForm, NAryBiHomAlgebra
from .fileformat import FormatError, ValidationError, dumps, read_document, save
from .linalg import DimensionMismatch, Matrix, NotInvertible, format_rational, to_rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Output:
    """Collects report lines; rendered once at the end."""

    fmt: str
    human: list[str] = field(default_factory=list)
    records: list[dict] = field(default_factory=list)

    def report(self, rep: ax.CheckReport):
        self.human.append(rep.describe())
        self.records.append(rep.to_record())

    def note(self, text: str, **record):
        self.human.append(text)
        if record:
            self.records.append(record)

    def render(self) -> str:
        if self.fmt == "records":
            return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records)
        return "".join(line + "\n" for line in self.human)


# -- argument parsing helpers --------------------------------------------------------

def parse_matrix(text: str) -> Matrix:
    """``"1,0;0,-1/2"``: rows separated by ``;``, entries by ``,``."""
    try:
        rows = [[to_rational(x.strip()) for x in row.split(",")] for row in text.split(";")]
        return Matrix.from_rows(rows)
    except (ValueError, TypeError, DimensionMismatch) as exc:
        raise UsageError(f"bad matrix {text!r}: {exc}") from exc


def parse_vectors(text: str) -> list[tuple[Fraction, ...]]:
    m = parse_matrix(text)
    return [m.row(i) for i in range(m.rows)]


def parse_grid(text: str | None) -> dict[str, list[Fraction]]:
    """``"a=-1,0,1;b=1/2"``."""
    grid = {}
    if not text:
        return grid
    for part in text.split(";"):
        if not part.strip():
            continue
        name, sep, values = part.partition("=")
        if not sep:
            raise UsageError(f"grid entry {part!r} needs the form name=v1,v2,...")
        try:
            grid[name.strip()] = [to_rational(v.strip()) for v in values.split(",")]
        except (ValueError, TypeError) as exc:
            raise UsageError(f"bad grid values for {name.strip()!r}: {exc}") from exc
    return grid


def parse_assignment(text: str | None) -> dict[str, Fraction]:
    grid = parse_grid(text)
    if any(len(v) != 1 for v in grid.values()):
        raise UsageError("--at takes one value per parameter")
    return {k: v[0] for k, v in grid.items()}


def _split_tau(text: str) -> list[str]:
    return [x.strip() for x in text.split(",")]


def _numeric_tau(entries: Sequence[str]) -> LinearForm | None:
    try:
        return LinearForm([to_rational(x) for x in entries])
    except (ValueError, TypeError):
        return None


def _as_family(alg: NAryBiHomAlgebra) -> fam.ParamFamily:
    return fam.ParamFamily(alg.dim, alg.arity, (), dict(alg.bracket), alg.alpha.to_rows(),
                           alg.beta.to_rows(), flavor=alg.flavor, weak=alg.weak,
                           provenance=alg.provenance)


def _load_algebra(args, path=None) -> tuple[NAryBiHomAlgebra, LinearForm | None]:
    """Load a concrete algebra; families need ``--at``."""
    doc = read_document(path or args.path)
    if doc.is_family:
        at = getattr(args, "at", None)
        if not at:
            raise UsageError(
                f"{path or args.path} is a parameter family with parameters "
                f"{', '.join(doc.obj.params)}; pass --at name=value;... or use sweep")
        point = parse_assignment(at)
        try:
            return fam.instantiate(doc.obj, point), fam.instantiate_tau(doc.obj, point)
        except fam.MissingParameter as exc:
            raise UsageError(exc.args[0]) from exc
    return doc.obj, doc.tau


def _emit(obj, out: Output, args, tau=None):
    text = dumps(obj, tau)
    if args.output:
        save(obj, args.output, tau)
        out.note(f"wrote {args.output}", written=args.output)
    else:
        out.human.append(text.rstrip("\n"))
        out.records.append({"document": json.loads(text)})


def _reports_exit(out: Output, reports) -> int:
    for r in reports:
        out.report(r)
    return EXIT_OK if ax.all_pass(reports) else EXIT_FAIL


def _precondition(out: Output, exc: cons.PreconditionFailed) -> int:
    out.note(f"precondition failed: {exc}", precondition=str(exc))
    for r in exc.reports:
        out.report(r)
    if exc.analysis is not None:
        rec = exc.analysis.to_record()
        out.note("  " + " ".join(f"{k}={'yes' if v else 'no'}" for k, v in rec.items()),
                 analysis=rec)
    return EXIT_FAIL


# -- subcommands ---------------------------------------------------------------------

def cmd_check(args, out: Output) -> int:
    alg, _ = _load_algebra(args)
    if args.axiom:
        reports = []
        for name in args.axiom:
            opts = {"permutations": args.permutations} if name == ax.SKEWSYMMETRY else {}
            reports.append(ax.run_check(alg, name, **opts))
    else:
        reports = ax.suite(alg, args.suite)
    return _reports_exit(out, reports)


def cmd_twist(args, out: Output) -> int:
    base, _ = _load_algebra(args)
    try:
        alg = cons.yau_twist_nlie(base, parse_matrix(args.alpha), parse_matrix(args.beta),
                                  verify=args.verify)
    except cons.PreconditionFailed as exc:
        return _precondition(out, exc)
    if args.verify:
        reports = ax.suite(alg)
        if not ax.all_pass(reports):
            return _reports_exit(out, reports)
    _emit(alg, out, args)
    return EXIT_OK


def cmd_twist_assoc(args, out: Output) -> int:
    base, _ = _load_algebra(args)
    try:
        alg = cons.yau_twist_assoc(base, parse_matrix(args.alpha), parse_matrix(args.beta),
                                   mode=args.mode, verify=args.verify)
    except cons.PreconditionFailed as exc:
        return _precondition(out, exc)
    _emit(alg, out, args)
    return EXIT_OK


def cmd_induce(args, out: Output) -> int:
    doc = read_document(args.path)
    tau_text = _split_tau(args.tau) if args.tau else None
    if tau_text is None:
        if doc.tau is None and not (doc.is_family and doc.obj.tau is not None):
            raise UsageError("induce needs --tau or a tau stored in the input file")
        tau_text = ([format_rational(c) for c in doc.tau.coeffs] if doc.tau is not None
                    else [str(x) for x in doc.obj.tau])
    numeric = _numeric_tau(tau_text)
    if len(tau_text) != doc.obj.dim:
        raise UsageError(f"--tau needs {doc.obj.dim} entries, got {len(tau_text)}")

    if doc.is_family or numeric is None:
        family = doc.obj if doc.is_family else _as_family(doc.obj)
        induced = fam.induce_family(family, tau_text, parse_grid(args.grid), regime=args.regime)
        if args.verify:
            out.note("symbolic induction: regime and suite are checked per grid point by sweep",
                     note="symbolic induction; verify with sweep")
        _emit(induced, out, args)
        return EXIT_OK

    try:
        induced = cons.induce_algebra(doc.obj, numeric, regime=args.regime, verify=args.verify)
    except cons.PreconditionFailed as exc:
        return _precondition(out, exc)
    if args.verify:
        reports = ax.suite(induced)
        if not ax.all_pass(reports):
            return _reports_exit(out, reports)
    _emit(induced, out, args, tau=numeric)
    return EXIT_OK


def cmd_fundamental(args, out: Output) -> int:
    alg, _ = _load_algebra(args)
    try:
        result = cons.fundamental_algebra(alg, verify=args.verify)
    except cons.PreconditionFailed as exc:
        return _precondition(out, exc)
    except (NotInvertible, cons.NotSurjective) as exc:
        out.note(f"precondition failed: {exc}", precondition=str(exc))
        return EXIT_FAIL
    _emit(result, out, args)
    return EXIT_OK


def cmd_trace_analyze(args, out: Output) -> int:
    alg, tau = _load_algebra(args)
    if args.tau:
        tau = _numeric_tau(_split_tau(args.tau))
        if tau is None:
            raise UsageError("trace-analyze needs a numeric --tau (use sweep for symbolic tau)")
    if tau is None:
        raise UsageError("trace-analyze needs --tau or a tau stored in the input file")
    if tau.dim != alg.dim:
        raise UsageError(f"--tau needs {alg.dim} entries, got {tau.dim}")
    analysis = cons.analyze_trace(alg, tau)
    rec = analysis.to_record()
    for k, v in rec.items():
        out.human.append(f"{k.replace('_', '-'):<22} {'yes' if v else 'no'}")
    out.records.append({"tau": [format_rational(c) for c in tau.coeffs], **rec})
    ok = analysis.strong_regime if args.regime == "strong" else analysis.weak_regime
    return EXIT_OK if ok else EXIT_FAIL


def cmd_morphism(args, out: Output) -> int:
    src, _ = _load_algebra(args, args.path)
    dst, _ = _load_algebra(args, args.target)
    return _reports_exit(out, [cons.check_morphism(src, dst, parse_matrix(args.map))])


def cmd_subspace(args, out: Output) -> int:
    alg, _ = _load_algebra(args)
    return _reports_exit(out, [cons.check_subspace(alg, parse_vectors(args.span), args.mode)])


def cmd_sweep(args, out: Output) -> int:
    doc = read_document(args.path)
    family = doc.obj if doc.is_family else _as_family(doc.obj)
    checks = [c.strip() for c in args.checks.split(",")] if args.checks else [
        f"suite:{family.flavor}" if family.flavor in ax.SUITES else "suite:unchecked"]
    if "suite:unchecked" in checks:
        checks = [c for c in checks if c != "suite:unchecked"] + [
            a for a in ax.AXIOMS if not (a in ax.BINARY_ONLY and family.arity != 2)]
    grid = {**family.grid, **parse_grid(args.grid)}
    unknown = set(grid) - set(family.params)
    if unknown:
        raise UsageError(f"--grid names unknown parameters: {', '.join(sorted(unknown))}")
    rows = fam.sweep(family, checks, grid, max_points=args.max_points, seed=args.seed)
    failures = 0
    for row in rows:
        bad = [c for c, ok in row.verdicts.items() if not ok]
        failures += bool(bad)
        point = ", ".join(f"{k}={format_rational(v)}" for k, v in row.assignment.items())
        out.human.append(f"{'FAIL' if bad else 'PASS':4}  {point or '(no parameters)'}"
                         + (f"  failed: {', '.join(bad)}" if bad else ""))
        out.records.append(row.to_record())
    out.human.append(f"{len(rows)} points, {failures} with failures")
    return EXIT_FAIL if failures else EXIT_OK


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nbihom", description="Construct and verify n-ary BiHom-algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "records"), default="human")
    common.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True,
                        help="check hypotheses and results of constructions (default on)")
    common.add_argument("--at", help="parameter values for a family file, e.g. 'a=1;b=-1/2'")
    writer = argparse.ArgumentParser(add_help=False)
    writer.add_argument("-o", "--output", help="write the resulting algebra file here")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="run an axiom suite or single axioms")
    s.add_argument("path")
    s.add_argument("--suite", choices=tuple(ax.SUITES) + ("unchecked",),
                   help="suite to run (default: the file's flavor)")
    s.add_argument("--axiom", action="append", choices=ax.AXIOMS, help="run only this axiom")
    s.add_argument("--permutations", choices=("adjacent", "all"), default="adjacent")
    s.set_defaults(func=cmd_check)

    for name, func, help_ in (("twist", cmd_twist, "Yau twist of an n-Lie algebra"),
                              ("twist-assoc", cmd_twist_assoc, "twist of an associative-type algebra")):
        s = sub.add_parser(name, parents=[common, writer], help=help_)
        s.add_argument("path")
        s.add_argument("--alpha", required=True, help="matrix 'r1c1,r1c2;r2c1,r2c2'")
        s.add_argument("--beta", required=True)
        if name == "twist-assoc":
            s.add_argument("--mode", choices=("total", "partial"), default="total")
        s.set_defaults(func=func)

    s = sub.add_parser("induce", parents=[common, writer], help="(n+1)-ary algebra induced by tau")
    s.add_argument("path")
    s.add_argument("--tau", help="comma separated entries; symbols make the result a family")
    s.add_argument("--regime", choices=("strong", "weak"), default="strong")
    s.add_argument("--grid", help="grids for parameters introduced by tau")
    s.set_defaults(func=cmd_induce)

    s = sub.add_parser("fundamental", parents=[common, writer], help="algebra of fundamental objects")
    s.add_argument("path")
    s.set_defaults(func=cmd_fundamental)

    s = sub.add_parser("trace-analyze", parents=[common], help="conditions on a linear form tau")
    s.add_argument("path")
    s.add_argument("--tau")
    s.add_argument("--regime", choices=("strong", "weak"), default="strong",
                   help="regime deciding the exit status")
    s.set_defaults(func=cmd_trace_analyze)

    s = sub.add_parser("morphism", parents=[common], help="check a linear map is a morphism")
    s.add_argument("path")
    s.add_argument("target")
    s.add_argument("--map", required=True, help="matrix of the map, target dim x source dim")
    s.set_defaults(func=cmd_morphism)

    s = sub.add_parser("subspace", parents=[common], help="check a span is an ideal or subalgebra")
    s.add_argument("path")
    s.add_argument("--span", required=True, help="spanning vectors 'v1;v2', entries comma separated")
    s.add_argument("--mode", choices=("ideal", "subalgebra"), default="ideal")
    s.set_defaults(func=cmd_subspace)

    s = sub.add_parser("sweep", parents=[common], help="grid sweep of a parameter family")
    s.add_argument("path")
    s.add_argument("--checks", help=f"comma separated; from {', '.join(fam.CHECK_NAMES)}")
    s.add_argument("--grid", help="override grids, e.g. 'a=-1,0,1;b=1/2'")
    s.add_argument("--max-points", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_sweep)
    return p


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    out = Output(args.format)
    try:
        status = args.func(args, out)
    except (UsageError, FormatError, ValidationError, ax.ArityMismatch, DimensionMismatch,
            fam.MissingParameter, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) else str(exc)
        print(f"nbihom {args.command}: error: {msg}", file=stderr)
        return EXIT_USAGE
    stdout.write(out.render())
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
