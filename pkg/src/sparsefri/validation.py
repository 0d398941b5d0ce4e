"""Input checks shared by the estimator and the command line."""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np
from sklearn.utils import check_array

from .errors import DimensionMismatchError
from .fisformat import FisDocument, ObsDocument, parse_fis, parse_obs, read_fis, read_obs, to_fuzzy_set
from .fuzzy import AlphaLevelScheme, PiecewiseLinearFuzzySet, ReferencePointKind
from .methods import InterpolationConfig, Method


def _looks_like_path(value) -> bool:
    if isinstance(value, os.PathLike):
        return True
    return isinstance(value, str) and "\n" not in value and "[" not in value


def check_rule_base(fis) -> FisDocument:
    """Accept a parsed document, a path, or FIS text."""
    if isinstance(fis, FisDocument):
        return fis
    if _looks_like_path(fis):
        return read_fis(Path(fis))
    if isinstance(fis, str):
        return parse_fis(fis)
    raise TypeError(f"expected a FisDocument, path or FIS text, got {type(fis).__name__}")


def check_observation(obs, n_inputs: int) -> tuple[PiecewiseLinearFuzzySet, ...]:
    if isinstance(obs, str):
        obs = read_obs(Path(obs)) if _looks_like_path(obs) else parse_obs(obs)
    if isinstance(obs, ObsDocument):
        sets = tuple(to_fuzzy_set(d) for d in obs.observations)
    else:
        sets = tuple(obs)
    if len(sets) != n_inputs:
        raise DimensionMismatchError(f"dimension mismatch: observation has {len(sets)} inputs, rule base expects {n_inputs}")
    return sets


def check_observations(X, n_inputs: int) -> list[tuple[PiecewiseLinearFuzzySet, ...]]:
    """Normalise ``X`` into one tuple of fuzzy sets per row.

    ``X`` is either a crisp matrix of shape (n_samples, n_inputs), each value
    read as a singleton observation, or a sequence of fuzzy observations
    (OBS documents, OBS text or paths, or tuples of fuzzy sets).
    """
    if isinstance(X, (ObsDocument, str)):
        X = [X]
    rows = list(X) if not isinstance(X, np.ndarray) else None
    if rows is not None and rows and not _is_crisp_row(rows[0]):
        return [check_observation(row, n_inputs) for row in rows]
    arr = check_array(X, ensure_2d=False, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1) if n_inputs == 1 else arr.reshape(1, -1)
    if arr.shape[1] != n_inputs:
        raise DimensionMismatchError(
            f"dimension mismatch: X has {arr.shape[1]} features, rule base expects {n_inputs}"
        )
    return [tuple(PiecewiseLinearFuzzySet.singleton(v, f"A*_{d + 1}") for d, v in enumerate(row)) for row in arr]


def _is_crisp_row(row) -> bool:
    if isinstance(row, (int, float, np.number)):
        return True
    if isinstance(row, (list, tuple, np.ndarray)):
        return all(isinstance(v, (int, float, np.number)) for v in row)
    return False


def make_config(method="KH", alpha_levels="breakpoints", num_points=501, rp_type="corecentre", w=2.0, refine_tol=1e-4):
    """Build an :class:`InterpolationConfig` from loosely typed settings."""
    scheme = alpha_levels if isinstance(alpha_levels, AlphaLevelScheme) else AlphaLevelScheme.parse(str(alpha_levels))
    rp = rp_type if isinstance(rp_type, ReferencePointKind) else ReferencePointKind.parse(str(rp_type))
    method = method if isinstance(method, Method) else Method.parse(str(method))
    if int(num_points) < 2:
        raise ValueError(f"num_points must be >= 2, got {num_points}")
    if not float(w) >= 1:
        raise ValueError(f"w must be >= 1, got {w}")
    return InterpolationConfig(
        method=method,
        alpha_levels=scheme,
        num_points=int(num_points),
        rp_type=rp,
        minkowski_w=float(w),
        refine_tol=None if refine_tol is None else float(refine_tol),
    )
