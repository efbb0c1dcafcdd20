"""Exact and approximate polymorphisms of Boolean functions."""

from .boolfn import (
    BooleanFunction,
    FourierExpansion,
    Restriction,
    fourier_transform,
    format_function,
    make_named,
    parse_function,
)
from .compose import AgreementReport, agreement_exhaustive, agreement_monte_carlo, is_exact
from .connectivity import SupportDistribution, decompose_product_factors, is_connected_distribution, reorder_for_connectivity
from .constructions import (
    LiftedConstruction,
    QSpec,
    boolean_round,
    build_lower_bound_function,
    empirical_agreement,
    fourier_decay_series,
    lift_inner,
)
from .errors import FormatError, PolymorphError, PreconditionError, SizeLimitError
from .gaussian import (
    GaussianAnalog,
    ThresholdEstimate,
    borell_upper_bound,
    conditional_sampler,
    gaussian_analog,
    normal_ccdf,
    s_and_quadrature,
    s_sign_lower_estimate,
)
from .regularity import RegularityConfig, jones_decision_tree, jones_junta, regularity_check, stability_potential

__all__ = [
    "BooleanFunction",
    "FourierExpansion",
    "Restriction",
    "fourier_transform",
    "format_function",
    "make_named",
    "parse_function",
    "PolymorphError",
    "PreconditionError",
    "SizeLimitError",
    "FormatError",
    "AgreementReport",
    "agreement_exhaustive",
    "agreement_monte_carlo",
    "is_exact",
    "SupportDistribution",
    "decompose_product_factors",
    "is_connected_distribution",
    "reorder_for_connectivity",
    "LiftedConstruction",
    "QSpec",
    "boolean_round",
    "build_lower_bound_function",
    "empirical_agreement",
    "fourier_decay_series",
    "lift_inner",
    "GaussianAnalog",
    "ThresholdEstimate",
    "borell_upper_bound",
    "conditional_sampler",
    "gaussian_analog",
    "normal_ccdf",
    "s_and_quadrature",
    "s_sign_lower_estimate",
    "RegularityConfig",
    "jones_decision_tree",
    "jones_junta",
    "regularity_check",
    "stability_potential",
]
__version__ = "0.1.0"
