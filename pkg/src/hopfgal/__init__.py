"""hopfgal: exact computations with finite-dimensional Hopf-Galois extensions."""

from .exactfield import Field, Poly, Scalar, field_arith, splitting_extension
from .fdalg import (
    BilForm,
    BlockReport,
    SCAlgebra,
    Subspace,
    block_decompose,
    center,
    extend_scalars,
    radical,
    simples,
)
from .hopf import (
    HopfAlgebra,
    Integral,
    LinMap,
    convolution,
    cyclic_group_table,
    group_algebra,
    hopf_verify,
    is_unimodular_s2,
    left_integral_dual,
)
from .resliealg import (
    Fiber,
    FiberPoint,
    Prop30Context,
    RestrictedLie,
    fiber_coaction,
    pbw_splitting,
    restricted_verify,
    u_restricted,
    uenv_normalize,
)
from .galois import (
    Cocycle,
    ComoduleAlgebra,
    Splitting,
    cocycle_pushforward,
    cocycle_transform,
    cocycle_verify,
    coinvariants,
    find_one_dim_rep,
    frobenius_form,
    galois_check,
    group_quotient_coaction,
    is_equivariant_map,
    is_equivariant_splitting,
    lemma25_transfer_check,
    splitting_to_cocycle,
    trivial_cocycle,
    twisted_product,
    winding_iso,
)
from .speclab import (
    FiberReport,
    ScanResult,
    borel_algebra,
    classify_point,
    fiber_report,
    group_bundle_scan,
    scan,
    sl2_algebra,
    sl2_eq4_check,
)

__all__ = [
    "Field", "Poly", "Scalar", "field_arith", "splitting_extension",
    "BilForm", "BlockReport", "SCAlgebra", "Subspace", "block_decompose",
    "center", "extend_scalars", "radical", "simples",
    "HopfAlgebra", "Integral", "LinMap", "convolution", "cyclic_group_table",
    "group_algebra", "hopf_verify", "is_unimodular_s2", "left_integral_dual",
    "Fiber", "FiberPoint", "Prop30Context", "RestrictedLie", "fiber_coaction",
    "pbw_splitting", "restricted_verify", "u_restricted", "uenv_normalize",
    "Cocycle", "ComoduleAlgebra", "Splitting", "cocycle_pushforward",
    "cocycle_transform", "cocycle_verify", "coinvariants", "find_one_dim_rep",
    "frobenius_form", "galois_check", "group_quotient_coaction",
    "is_equivariant_map", "is_equivariant_splitting", "lemma25_transfer_check",
    "splitting_to_cocycle", "trivial_cocycle", "twisted_product",
    "winding_iso",
    "FiberReport", "ScanResult", "borel_algebra", "classify_point",
    "fiber_report", "group_bundle_scan", "scan", "sl2_algebra",
    "sl2_eq4_check",
]
