"""Exact verification of homogeneous polar foliations of complex hyperbolic
space CH^n, modelled inside su(1,n)."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .su1n import (AlgebraContext, AlgebraElement, bracket, inner,
                   make_context, theta)
from .root_space import RootData, root_decomposition, verify_structure
from .polar import (FailureReason, PolarVerdict, SectionKind, SectionType,
                    Subalgebra, check_polar, close_check, closure)
from .catalog import (CanonicalClass, RealSubspace, build_example, catalog,
                      s_vw, standard_real_subspace)
from .normal_form import (adg_normal_form, congruent, foliation_probe,
                          invariants, t_part_centralizes)
from .survey import survey
from .lemmas import run_identity_suite

__all__ = [
    "AlgebraContext", "AlgebraElement", "bracket", "inner", "make_context",
    "theta", "RootData", "root_decomposition", "verify_structure",
    "FailureReason", "PolarVerdict", "SectionKind", "SectionType",
    "Subalgebra", "check_polar", "close_check", "closure", "CanonicalClass",
    "RealSubspace", "build_example", "catalog", "s_vw",
    "standard_real_subspace", "adg_normal_form", "congruent",
    "foliation_probe", "invariants", "t_part_centralizes", "survey",
    "run_identity_suite",
]
