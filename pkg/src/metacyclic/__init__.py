"""Split metacyclic group algebras F_q G_{n,m,r} and their left ideals."""

from .algebra import AlgebraElement, GroupParams, SkewRing
from .codes import (
    MetacyclicCode,
    SubmoduleCode,
    analyze,
    attack_feasibility,
    code_from_submodules,
    decompose_code,
    gc_view,
    min_distance_bound,
    min_distance_exact,
)
from .errors import BudgetExceeded, MetacyclicError
from .gf import Field, base_field, gf_extension
from .induced import SubgroupSpec, induce, intersect_induced, project
from .polyfact import factor_xn_minus_1, orbits
from .wedderburn import Decomposition, build_decomposition, classify_summands, sigma_matrix

__all__ = [
    "AlgebraElement",
    "BudgetExceeded",
    "Decomposition",
    "Field",
    "GroupParams",
    "MetacyclicCode",
    "MetacyclicError",
    "SkewRing",
    "SubgroupSpec",
    "SubmoduleCode",
    "analyze",
    "attack_feasibility",
    "base_field",
    "build_decomposition",
    "classify_summands",
    "code_from_submodules",
    "decompose_code",
    "factor_xn_minus_1",
    "gc_view",
    "gf_extension",
    "induce",
    "intersect_induced",
    "min_distance_bound",
    "min_distance_exact",
    "orbits",
    "project",
    "sigma_matrix",
]
