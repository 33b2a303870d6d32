from .arveson import arveson_factor
from .outer import inner_outer, is_outer, subspace_rank
from .projection import ProjectionCertificate, szego_factor_projection
from .results import FactorizationError, FactorizationResult, OuterReport, Residuals, SingularOperatorError
from .riesz import RieszResult, riesz_factor
from .spectral import SpectralFactor, outer_factor_scalar, wilson_factor
from .szego import szego_factor

__all__ = [
    "FactorizationError",
    "FactorizationResult",
    "OuterReport",
    "ProjectionCertificate",
    "Residuals",
    "RieszResult",
    "SingularOperatorError",
    "SpectralFactor",
    "arveson_factor",
    "inner_outer",
    "is_outer",
    "outer_factor_scalar",
    "riesz_factor",
    "subspace_rank",
    "szego_factor",
    "szego_factor_projection",
    "wilson_factor",
]
