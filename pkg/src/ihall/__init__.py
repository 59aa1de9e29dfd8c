"""Exact Hall algebra computations for iquivers over small prime fields."""

from .frep import BudgetError, IsoClass, ModuleTable
from .idp import idp_closed, idp_hall, idp_product, idp_recursive
from .ihall import HallAlgebra, HallElt, oracle_kronecker_single, oracle_sss
from .iqg import (
    Psi,
    build_relation_suite,
    relation_residual,
    run_identity_suites,
    run_t_suite,
    t1_value,
    t_value,
    verify_presentation,
)
from .iquiver import (
    BUILTIN_NAMES,
    BoundQuiver,
    IQuiver,
    build_iquiver,
    builtin_iquiver,
)
from .ring import LaurentFrac, LaurentPoly, QSqrt, qbinom, qdfact, qfact, qint

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_NAMES",
    "BoundQuiver",
    "BudgetError",
    "HallAlgebra",
    "HallElt",
    "IQuiver",
    "IsoClass",
    "LaurentFrac",
    "LaurentPoly",
    "ModuleTable",
    "Psi",
    "QSqrt",
    "build_iquiver",
    "build_relation_suite",
    "builtin_iquiver",
    "idp_closed",
    "idp_hall",
    "idp_product",
    "idp_recursive",
    "oracle_kronecker_single",
    "oracle_sss",
    "qbinom",
    "qdfact",
    "qfact",
    "qint",
    "relation_residual",
    "run_identity_suites",
    "run_t_suite",
    "t1_value",
    "t_value",
    "verify_presentation",
    "__version__",
]
