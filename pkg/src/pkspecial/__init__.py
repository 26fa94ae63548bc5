"""p-k gamma, p-k Nielsen beta and extended Chaudhry-Zubair gamma functions,
refined Hoelder chains and a registry of numerical inequality checks.

>>> from pkspecial import PKParams, pk_gamma, pk_beta
>>> pk_gamma(2.0, PKParams(2.0, 1.0))
4.0
>>> round(pk_beta(1.0, PKParams(1.0, 1.0)), 10)
0.6931471806
"""
from __future__ import annotations

from .cz_gamma import (
    MAX_CZ_ORDER,
    CZParams,
    VExtParams,
    cz_gamma,
    cz_gamma_deriv,
    cz_gamma_result,
    ext_cz_abslog_moment,
    ext_cz_gamma,
    ext_cz_gamma_deriv,
    ext_cz_gamma_result,
    v_ext_cz_gamma,
    v_ext_cz_gamma_deriv,
    v_ext_cz_gamma_result,
)
from .errors import (
    ArgumentError,
    CapacityError,
    ConsistencyError,
    DomainError,
    EvaluationError,
    PKSpecialError,
    UnsupportedOrderError,
)
from .holder import (
    MomentOracle,
    RefinementChain,
    WeightedExponents,
    check_multinomial_2_2,
    holder_chain_integral,
    holder_chain_sum,
    minkowski_check,
    refined_amgm_chain,
    young_check,
)
from .kernels import BACKEND
from .nielsen_beta import (
    MAX_DERIVATIVE_ORDER,
    BetaRepresentation,
    pk_beta,
    pk_beta_abs,
    pk_beta_deriv,
    pk_beta_deriv_result,
    pk_beta_result,
)
from .numerics import IntegralResult, QuadratureSettings, SeriesSettings
from .pk_gamma import (
    PKParams,
    log_pk_gamma,
    pk_digamma,
    pk_digamma_result,
    pk_gamma,
    pk_gamma_quadrature,
    pk_polygamma,
    pk_polygamma_result,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "BACKEND",
    "BetaRepresentation",
    "CZParams",
    "CapacityError",
    "ConsistencyError",
    "DomainError",
    "EvaluationError",
    "IntegralResult",
    "MAX_CZ_ORDER",
    "MAX_DERIVATIVE_ORDER",
    "MomentOracle",
    "PKParams",
    "PKSpecialError",
    "QuadratureSettings",
    "RefinementChain",
    "SeriesSettings",
    "UnsupportedOrderError",
    "VExtParams",
    "WeightedExponents",
    "check_multinomial_2_2",
    "cz_gamma",
    "cz_gamma_deriv",
    "cz_gamma_result",
    "ext_cz_abslog_moment",
    "ext_cz_gamma",
    "ext_cz_gamma_deriv",
    "ext_cz_gamma_result",
    "holder_chain_integral",
    "holder_chain_sum",
    "log_pk_gamma",
    "minkowski_check",
    "pk_beta",
    "pk_beta_abs",
    "pk_beta_deriv",
    "pk_beta_deriv_result",
    "pk_beta_result",
    "pk_digamma",
    "pk_digamma_result",
    "pk_gamma",
    "pk_gamma_quadrature",
    "pk_polygamma",
    "pk_polygamma_result",
    "refined_amgm_chain",
    "v_ext_cz_gamma",
    "v_ext_cz_gamma_deriv",
    "v_ext_cz_gamma_result",
    "young_check",
]
