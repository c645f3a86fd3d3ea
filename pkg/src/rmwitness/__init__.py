"""Sigma-polynomials over finite-field towers, rank-metric codes, and
constructive witnesses of large lists in small rank-metric balls."""

from __future__ import annotations

from .errors import RankMetricError
from .gf_tower import GF
from .list_witness import (
    WitnessReport,
    WitnessSpec,
    analyze_decodability,
    build_witness,
    gaussian_binomial,
    johnson_like_radius,
    verify_report,
)
from .rm_codes import CodeDescriptor, EvalCode, build_code, min_distance, rank_weight, subfield_points
from .sigma_poly import SigmaPoly, adjoint, is_subspace_poly
from .subspace_families import FamilySpec, generate
from .subspace_lift import lift, lift_code, subspace_distance, verify_lift_ball

__version__ = "0.1.0"

__all__ = [
    "GF", "SigmaPoly", "adjoint", "is_subspace_poly", "FamilySpec", "generate", "CodeDescriptor",
    "EvalCode", "build_code", "min_distance", "rank_weight", "subfield_points", "WitnessSpec",
    "WitnessReport", "build_witness", "verify_report", "analyze_decodability", "gaussian_binomial",
    "johnson_like_radius", "lift", "lift_code", "subspace_distance", "verify_lift_ball",
    "RankMetricError",
]
