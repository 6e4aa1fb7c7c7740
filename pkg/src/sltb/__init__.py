"""Subjective-logic trust operators and a simulator for comparing them."""

from .errors import (
    AllWeightsZero,
    DomainError,
    EmptyInput,
    InvariantViolation,
    LengthMismatch,
    OutOfTriangle,
    SchemaError,
    SimplexViolation,
    SLTBError,
    TooFewPairs,
    UndefinedDirection,
)
from .geometry import CartesianPoint, OpinionAngles, angles_of, from_cartesian, to_cartesian
from .graphical import (
    ALL_VARIANTS,
    DiscountVariant,
    WeightedOpinion,
    discount,
    discount_graphical,
    discount_naive,
    fuse_weighted,
)
from .josang import discount_josang, fuse_josang, fuse_many_josang
from .metrics import expected_distance, geometric_distance, log_ratio
from .opinion import (
    BELIEF,
    DISBELIEF,
    VACUOUS,
    EvidenceCount,
    Opinion,
    expected_value,
    ideal_opinion,
    make_opinion,
    opinion_from_evidence,
)
from .stats import WilcoxonSummary, wilcoxon_signed_rank

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
