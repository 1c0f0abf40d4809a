"""Exact finite-dimensional layer: algebras by structure constants,
exhaustive submodule/ideal/filter-system enumeration over finite fields,
and the saturation/stability predicates computed exactly."""

from .algebra import (
    LinIdeal,
    StructAlgebra,
    build_algebra,
    enumerate_two_sided_ideals,
    intersect_ideals,
    product_ideals,
    saturate_exact,
    stability_predicates,
    sum_ideals,
    upper_triangular_2x2,
    truncated_poly_algebra,
)
from .modules import (
    FDModule,
    direct_sum,
    enumerate_right_submodules,
    extensions,
    modules_isomorphic,
    modules_up_to_iso,
    module_from_subspace,
    projective_module,
    quotient_module,
    regular_module,
)
from .filters import (
    FilterSystem,
    enumerate_filter_systems,
    filter_system_roundtrip,
    is_extension_closed_on,
    is_gabriel_fs,
    is_principal_fs,
    principal_filter_system,
    subcategory_fingerprint,
    subcategory_membership,
)

__all__ = [name for name in dir() if not name.startswith("_")]
