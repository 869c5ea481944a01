"""Exact-arithmetic geometry of a block-parametrized Lie group family.

The package builds 4n-dimensional Lie algebras from 4n rational parameters,
equips them with an almost complex structure and a compatible metric of
split signature, and computes the associated tensors (structure tensor F,
Nijenhuis tensor, curvature, Ricci, Weyl, sectional and bisectional
curvatures) from first principles over `fractions.Fraction`.  Closed-form
component tables act as independent oracles for every computed object.
"""

from .curvature import (
    BisectionalResult,
    ClassificationResult,
    ConstantCurvatureVerdict,
    CurvaturePackage,
    IsotropyPredicates,
    NijenhuisPackage,
    PlaneType,
    SectionalResult,
    bisectional_curvature,
    check_f_symmetries,
    classify,
    constant_curvature_predicates,
    curvature_package,
    curvature_tensor,
    fundamental_tensor,
    isotropic_kahler_predicates,
    lee_form,
    local_symmetry_check,
    nijenhuis_package,
    nijenhuis_tensor,
    plane_type,
    ricci_and_scalar,
    sectional_basis,
    sectional_curvature,
    weyl_tensor,
)
from .family import (
    AlmostNordenStructure,
    CheckResult,
    Connection,
    ParameterVector,
    StructureConstants,
    build_brackets,
    build_structure,
    jacobi_check,
    killing_check,
    levi_civita_killing,
    levi_civita_koszul,
    metric_compatible,
    orthogonality_check,
    torsion_free,
)
from .report import characterize_family, render_json, render_text
from .tensor import DenseTensor, TensorBuilder
from .verify import run_verify

__all__ = [
    "AlmostNordenStructure",
    "BisectionalResult",
    "CheckResult",
    "ClassificationResult",
    "Connection",
    "ConstantCurvatureVerdict",
    "CurvaturePackage",
    "DenseTensor",
    "IsotropyPredicates",
    "NijenhuisPackage",
    "ParameterVector",
    "PlaneType",
    "SectionalResult",
    "StructureConstants",
    "TensorBuilder",
    "bisectional_curvature",
    "build_brackets",
    "build_structure",
    "characterize_family",
    "check_f_symmetries",
    "classify",
    "constant_curvature_predicates",
    "curvature_package",
    "curvature_tensor",
    "fundamental_tensor",
    "isotropic_kahler_predicates",
    "jacobi_check",
    "killing_check",
    "lee_form",
    "levi_civita_killing",
    "levi_civita_koszul",
    "local_symmetry_check",
    "metric_compatible",
    "nijenhuis_package",
    "nijenhuis_tensor",
    "orthogonality_check",
    "plane_type",
    "render_json",
    "render_text",
    "ricci_and_scalar",
    "run_verify",
    "sectional_basis",
    "sectional_curvature",
    "torsion_free",
    "weyl_tensor",
]
