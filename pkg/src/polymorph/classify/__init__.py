"""Exact classification of polymorphisms and the multilinear identity engine."""

from .cases import PRECEDENCE, CaseLabel, classify_tuple, enumerate_exact, generate_family, match_case
from .multilinear import (
    MultilinearPoly,
    ProductForm,
    match_fgh_case,
    poly_compose_identity,
    product_form_decompose,
)
from .stability import (
    NearestStructure,
    ScanRow,
    epsilon_delta_ratio,
    nearest_structure_distance,
    scan_frontier,
    scan_to_csv,
    stability_scan,
)

__all__ = [
    "PRECEDENCE",
    "CaseLabel",
    "classify_tuple",
    "enumerate_exact",
    "generate_family",
    "match_case",
    "MultilinearPoly",
    "ProductForm",
    "match_fgh_case",
    "poly_compose_identity",
    "product_form_decompose",
    "NearestStructure",
    "ScanRow",
    "epsilon_delta_ratio",
    "nearest_structure_distance",
    "scan_frontier",
    "scan_to_csv",
    "stability_scan",
]
