"""Bent-function constructions over small binary fields, with exact
exhaustive verification of their structural properties."""

from .errors import BentError, DomainError, ParameterError, ParseError, ResourceError
from .gf2 import (
    FieldCtx,
    GpsParams,
    make_field,
    mod_inverse_exponent,
    validate_gps_params,
)
from .boolfn import (
    BoolFn,
    Space,
    WalshSpectrum,
    anf,
    anf_degree,
    dual,
    ext_walsh_spectrum,
    is_balanced,
    is_bent,
    is_semibent,
    load_table,
    plateaued_order,
    save_spectrum,
    save_table,
    walsh_transform,
)
from .vectorial import (
    OutPairing,
    VecFn,
    check_component_dual_linearity,
    component,
    is_vectorial_bent,
    load_vecfn,
    save_vecfn,
)
from .derivative import (
    Subspace,
    derivative,
    ea_transform,
    enumerate_M_subspaces,
    has_M_subspace,
    in_MM_completed,
    is_M_subspace,
    linearity_index,
    load_subspace,
    save_subspace,
    second_derivative,
)
from .construct import (
    PermTable,
    PropertyPResult,
    SpreadSets,
    SubfieldFn,
    build_cor_ex,
    check_property_P,
    g_lambda,
    glambda_nonconstant,
    gmm,
    gmm_dual,
    gmm_general,
    gpsap,
    gpsap_dual_formula,
    gpsap_trace_form,
    gpsap_vectorial,
    load_perm,
    load_subfield_fn,
    mm,
    psap,
    save_perm,
    save_subfield_fn,
    spread_sets,
    trace_sum_nonconstant,
)
from .decomp import (
    DecompositionReport,
    ScanRecord,
    check_ftof_equivalence,
    classify_decomposition,
    concat4,
    concat_bent_check,
    partition_bent,
    psffff,
    restrict_to_cosets,
    save_scan,
    scan_decompositions,
)
from .rng import XorShift64Star
from .verify import CriterionResult, run_criterion, run_suite

__all__ = [
    "BentError", "DomainError", "ParameterError", "ParseError", "ResourceError",
    "FieldCtx", "GpsParams", "make_field", "mod_inverse_exponent",
    "validate_gps_params",
    "BoolFn", "Space", "WalshSpectrum", "anf", "anf_degree", "dual",
    "ext_walsh_spectrum", "is_balanced", "is_bent", "is_semibent",
    "load_table", "plateaued_order", "save_spectrum", "save_table",
    "walsh_transform",
    "OutPairing", "VecFn", "check_component_dual_linearity", "component",
    "is_vectorial_bent", "load_vecfn", "save_vecfn",
    "Subspace", "derivative", "ea_transform", "enumerate_M_subspaces",
    "has_M_subspace", "in_MM_completed", "is_M_subspace", "linearity_index",
    "load_subspace", "save_subspace", "second_derivative",
    "PermTable", "PropertyPResult", "SpreadSets", "SubfieldFn", "build_cor_ex",
    "check_property_P", "g_lambda", "glambda_nonconstant", "gmm", "gmm_dual",
    "gmm_general", "gpsap", "gpsap_dual_formula", "gpsap_trace_form",
    "gpsap_vectorial", "load_perm", "load_subfield_fn", "mm", "psap",
    "save_perm", "save_subfield_fn", "spread_sets", "trace_sum_nonconstant",
    "DecompositionReport", "ScanRecord", "check_ftof_equivalence",
    "classify_decomposition", "concat4", "concat_bent_check", "partition_bent",
    "psffff", "restrict_to_cosets", "save_scan", "scan_decompositions",
    "XorShift64Star",
    "CriterionResult", "run_criterion", "run_suite",
]
