"""Finite-dimensional n-ary BiHom-algebras over the rationals."""

from .algebra import FLAVORS, LinearForm, NAryBiHomAlgebra, eval_bracket, tabulate, zero_algebra
from .axioms import (
    AXIOMS, SUITES, ArityMismatch, CheckReport, Counterexample, all_pass, check_bihom_skewsymmetry,
    classify, residuals, run_check, suite,
)
from .constructions import (
    NotSurjective, PreconditionFailed, TraceAnalysis, analyze_trace, build_phi_tau,
    check_morphism, check_phi_tau_trace_lemma, check_subspace, fundamental_algebra,
    induce_algebra, lift_morphism_check, yau_twist_assoc, yau_twist_nlie,
)
from .family import ParamFamily, grid_points, induce_family, instantiate, instantiate_tau, sweep
from .fileformat import FormatError, ValidationError, dumps, load, parse_document, read_document, save
from .linalg import (
    DimensionMismatch, Matrix, NotInvertible, compound_matrix, mat_inverse, mat_mul, mat_rank,
    nullspace, to_rational, wedge_basis, wedge_normalize,
)

__version__ = "0.1.0"
