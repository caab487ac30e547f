"""Finite discrete dualities between algebras and relational frames."""

from .algebra import (
    AlgebraKind,
    FiniteAlgebra,
    FiniteLattice,
    Kind,
    check_embedding,
    check_kind,
    powerset_algebra,
    prime_filters,
    ultrafilters,
)
from .approx import ApproximationSpace, BinaryRelation, RoughSet, build_rough_set_algebra
from .duality import cm, cs, frame_map, roundtrip_algebra, roundtrip_frame, stone_map
from .errors import DomainError, DualityError, InternalConsistencyError, PreconditionError
from .order import Frame, Poset, check_frame_embedding
from .report import CheckReport, EvaluationPolicy
from .rra import build_full_rough_relation_algebra, check_r2a, check_r2fa, cm_rra, cs_rra

__version__ = "0.1.0"

__all__ = [
    "AlgebraKind",
    "Kind",
    "FiniteAlgebra",
    "FiniteLattice",
    "check_embedding",
    "check_kind",
    "powerset_algebra",
    "prime_filters",
    "ultrafilters",
    "ApproximationSpace",
    "BinaryRelation",
    "RoughSet",
    "build_rough_set_algebra",
    "cm",
    "cs",
    "frame_map",
    "roundtrip_algebra",
    "roundtrip_frame",
    "stone_map",
    "DomainError",
    "DualityError",
    "InternalConsistencyError",
    "PreconditionError",
    "Frame",
    "Poset",
    "check_frame_embedding",
    "CheckReport",
    "EvaluationPolicy",
    "build_full_rough_relation_algebra",
    "check_r2a",
    "check_r2fa",
    "cm_rra",
    "cs_rra",
]
