"""Spectral radii of uniform supertrees, their surgeries and extremal families."""

from .hypergraph import (
    CanonicalCode,
    Hypergraph,
    Supertree,
    build,
    canonical_code,
    diameter,
    is_supertree,
    pendent_counts,
    validate_supertree,
)
from .spectral import (
    SolverOptions,
    SpectralResult,
    backend_name,
    matrix_oracle_q,
    oracle_rayleigh_max,
    spectral_radius,
)
from .enumeration import SupertreeClass, enumerate_supertrees, rank_by_q
from .harness import Report, conjecture_scan, verify

__version__ = "0.1.0"

__all__ = [
    "CanonicalCode", "Hypergraph", "Supertree", "build", "canonical_code", "diameter",
    "is_supertree", "pendent_counts", "validate_supertree",
    "SolverOptions", "SpectralResult", "backend_name", "matrix_oracle_q", "oracle_rayleigh_max",
    "spectral_radius",
    "SupertreeClass", "enumerate_supertrees", "rank_by_q",
    "Report", "conjecture_scan", "verify",
]
