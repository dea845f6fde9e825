"""Scoring of driving cases on safety, efficiency, comfort and energy."""

from ._core import (
    DomainError,
    Error,
    FitError,
    ParseError,
    SimulationError,
    StreamEvaluator,
    ValidationError,
    default_model,
    evaluate_case,
    risk_heatmap,
    score_terms,
    simulate,
    standard_scenarios,
)

__all__ = [
    "DomainError",
    "Error",
    "FitError",
    "ParseError",
    "SimulationError",
    "StreamEvaluator",
    "ValidationError",
    "default_model",
    "evaluate_case",
    "risk_heatmap",
    "score_terms",
    "simulate",
    "standard_scenarios",
]
