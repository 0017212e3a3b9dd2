"""Exact Nambu-Poisson cohomology of quasihomogeneous germs.

The package computes ``H^k_{f,p}``, the cohomology of polynomial forms under
``d_f^(p)(a) = f da - (k - p) df ^ a``, in two independent ways: from the
Milnor algebra of ``f`` (:mod:`npcoh.closed_form`) and by exact linear algebra
on graded slices (:mod:`npcoh.engine`).
"""

from .closed_form import CohomologyReport, full_report
from .engine import (
    cohomology_dimension,
    cohomology_profile,
    divide_by_df,
    operator_matrix,
    slice_basis,
    witness_cocycles,
)
from .errors import (
    InfiniteCodimensionError,
    NoSolutionError,
    NotQuasihomogeneousError,
    NpcohError,
    ParseError,
)
from .forms import DifferentialForm, d_f_p, omega, sigma
from .grading import WeightSystem, infer_weights, quasihomogeneous_degree
from .milnor import milnor_algebra
from .normal_forms import SingularityClass, standard_polynomial
from .poly import Polynomial, parse_polynomial

__version__ = "0.1.0"

__all__ = [
    "CohomologyReport",
    "DifferentialForm",
    "InfiniteCodimensionError",
    "NoSolutionError",
    "NotQuasihomogeneousError",
    "NpcohError",
    "ParseError",
    "Polynomial",
    "SingularityClass",
    "WeightSystem",
    "cohomology_dimension",
    "cohomology_profile",
    "d_f_p",
    "divide_by_df",
    "full_report",
    "infer_weights",
    "milnor_algebra",
    "omega",
    "operator_matrix",
    "parse_polynomial",
    "quasihomogeneous_degree",
    "sigma",
    "slice_basis",
    "standard_polynomial",
    "witness_cocycles",
]
