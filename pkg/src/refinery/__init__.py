"""Exact-arithmetic construction and verification of simplicial refinements."""
from .forms import Form, FormSpace, build_form_space, evaluate, unit_decompositions
from .hexagon import (FeatureReport, RefinementInstance, build_hexagon_instance,
                      build_instance, verify_features)
from .ngon import full_check, realizable_on_regular_ngon, scan, window_pattern
from .polytope import HSystem, VPolytope, affine_dependencies, vertices_of_hsystem
from .refinement import (DualFormMap, InconsistentAssignment, OutsideDomain,
                         PartialAffineMap, check_compatibility, make_dual_form_map,
                         make_partial_affine_map)
from .scalar import CycloElement, QuadScalar, cyclo_reduce, parse_scalar, sign

__version__ = "0.1.0"

__all__ = [
    "Form", "FormSpace", "build_form_space", "evaluate", "unit_decompositions",
    "FeatureReport", "RefinementInstance", "build_hexagon_instance", "build_instance",
    "verify_features", "full_check", "realizable_on_regular_ngon", "scan", "window_pattern",
    "HSystem", "VPolytope", "affine_dependencies", "vertices_of_hsystem",
    "DualFormMap", "InconsistentAssignment", "OutsideDomain", "PartialAffineMap",
    "check_compatibility", "make_dual_form_map", "make_partial_affine_map",
    "CycloElement", "QuadScalar", "cyclo_reduce", "parse_scalar", "sign",
]
