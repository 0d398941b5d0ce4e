"""Fuzzy rule interpolation methods for sparse rule bases."""

from .base import (
    Conclusion,
    FlankingPair,
    InterpolationConfig,
    Method,
    RuleView,
    lambda_core,
    select_flanking_pair,
)
from .crf import crf_interpolate
from .evaluate import RowError, evaluate, evaluate_batch, interpolate, observation_sets, rule_views
from .gm import gm_interpolate, reference_distance
from .kh import kh_interpolate, khstab_interpolate, vkk_interpolate
from .maci import imul_interpolate, maci_interpolate
from .scalemove import lambda_rep, scalemove_interpolate

__all__ = [
    "Conclusion",
    "FlankingPair",
    "InterpolationConfig",
    "Method",
    "RowError",
    "RuleView",
    "crf_interpolate",
    "evaluate",
    "evaluate_batch",
    "gm_interpolate",
    "imul_interpolate",
    "interpolate",
    "kh_interpolate",
    "khstab_interpolate",
    "lambda_core",
    "lambda_rep",
    "maci_interpolate",
    "observation_sets",
    "reference_distance",
    "rule_views",
    "scalemove_interpolate",
    "select_flanking_pair",
    "vkk_interpolate",
]
