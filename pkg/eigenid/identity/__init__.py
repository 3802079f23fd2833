from eigenid.identity.models import BatchPlan, FactorPairing, IdentityConfig, MagnitudeResult
from eigenid.identity.factors import (
    check_nondegenerate,
    component_magnitude_baseline,
    log_domain_product,
    pair_factors,
    prepare_batches,
)
from eigenid.identity.engine import (
    IdentityEngine,
    all_magnitudes,
    component_magnitude,
    get_engine,
    shutdown_engines,
    vector_magnitudes,
)
from eigenid.identity.signs import eigenvector, recover_signs

__all__ = [
    "BatchPlan",
    "FactorPairing",
    "IdentityConfig",
    "MagnitudeResult",
    "check_nondegenerate",
    "component_magnitude_baseline",
    "log_domain_product",
    "pair_factors",
    "prepare_batches",
    "IdentityEngine",
    "all_magnitudes",
    "component_magnitude",
    "get_engine",
    "shutdown_engines",
    "vector_magnitudes",
    "eigenvector",
    "recover_signs",
]
