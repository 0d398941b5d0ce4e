"""scikit-learn style front end to the interpolation methods."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from .methods import Conclusion, evaluate
from .validation import check_observations, check_rule_base, make_config


class FuzzyRuleInterpolator(RegressorMixin, BaseEstimator):
    """Interpolative reasoning over a sparse fuzzy rule base.

    ``fit`` takes the rule base (a parsed FIS document, a path or FIS text);
    there is nothing to learn, so ``y`` is ignored. ``predict`` returns
    defuzzified conclusions, ``interpolate`` the full conclusions.

    >>> est = FuzzyRuleInterpolator(method="KH").fit("fis1.fis")  # doctest: +SKIP
    >>> est.predict([[27.0]])                                      # doctest: +SKIP
    """

    def __init__(self, method="KH", alpha_levels="breakpoints", num_points=501, rp_type="corecentre", w=2.0, refine_tol=1e-4):
        self.method = method
        self.alpha_levels = alpha_levels
        self.num_points = num_points
        self.rp_type = rp_type
        self.w = w
        self.refine_tol = refine_tol

    def fit(self, X, y=None):
        self.rule_base_ = check_rule_base(X)
        self.config_ = make_config(self.method, self.alpha_levels, self.num_points, self.rp_type, self.w, self.refine_tol)
        self.n_features_in_ = self.rule_base_.num_inputs
        self.n_outputs_ = self.rule_base_.num_outputs
        return self

    def interpolate(self, X) -> list[Conclusion]:
        check_is_fitted(self, "rule_base_")
        rows = check_observations(X, self.n_features_in_)
        return [evaluate(self.rule_base_, row, self.config_) for row in rows]

    def predict(self, X):
        crisp = np.array([c.crisp for c in self.interpolate(X)], dtype=float)
        return crisp[:, 0] if self.n_outputs_ == 1 else crisp

