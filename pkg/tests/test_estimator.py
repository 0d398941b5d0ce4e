import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from sparsefri import (
    DimensionMismatchError,
    FuzzyRuleInterpolator,
    Method,
    PiecewiseLinearFuzzySet,
    evaluate,
    serialize_fis,
)
from sparsefri.fuzzy import AlphaLevelScheme


def test_params_round_trip():
    est = FuzzyRuleInterpolator(method="MACI", w=3.0)
    params = est.get_params()
    assert params == {
        "method": "MACI",
        "alpha_levels": "breakpoints",
        "num_points": 501,
        "rp_type": "corecentre",
        "w": 3.0,
        "refine_tol": 1e-4,
    }
    other = clone(est).set_params(method="GM")
    assert other.method == "GM" and est.method == "MACI"


def test_fit_accepts_path_text_and_document(data_dir, fis1):
    path = str(data_dir / "fis1.fis")
    for source in (path, serialize_fis(fis1), fis1):
        est = FuzzyRuleInterpolator().fit(source)
        assert est.rule_base_ == fis1
        assert est.n_features_in_ == 1
        assert est.config_.method is Method.KH


def test_predict_crisp_matrix(fis1):
    est = FuzzyRuleInterpolator().fit(fis1)
    out = est.predict([[10.0], [27.0], [42.0]])
    assert out.shape == (3,)
    # crisp inputs are singleton observations, which is not the same as observing A1 itself
    # the rule base is mirror symmetric about 26
    assert out[0] + out[2] == pytest.approx(52, abs=1e-6)
    assert 10 < out[0] < 27 < out[2] < 42
    single = evaluate(fis1, (PiecewiseLinearFuzzySet.singleton(10.0),))
    assert out[0] == single.crisp[0]
    np.testing.assert_allclose(est.predict(np.array([27.0])), [27], atol=1e-6)


def test_predict_fuzzy_observations(fis1, obs1, fis2, obs2):
    est = FuzzyRuleInterpolator(method="MACI").fit(fis1)
    assert est.predict([obs1, obs1]) == pytest.approx([27, 27])
    (c,) = est.interpolate(obs1)
    assert c.fuzzy[0].points == ((22, 0), (27, 1), (32, 0))
    est2 = FuzzyRuleInterpolator(method="GM", alpha_levels="userdefined:11").fit(fis2)
    assert est2.config_.alpha_levels == AlphaLevelScheme.user_defined(11)
    assert 10 < est2.predict(obs2)[0] < 70


def test_not_fitted():
    with pytest.raises(NotFittedError):
        FuzzyRuleInterpolator().predict([[1.0]])


def test_shape_checks(fis2):
    est = FuzzyRuleInterpolator().fit(fis2)
    with pytest.raises(DimensionMismatchError):
        est.predict([[1.0, 2.0, 3.0]])
    with pytest.raises(ValueError):
        est.predict([[np.nan, 1.0]])


def test_bad_params_fail_at_fit(fis1):
    for params in ({"method": "FIVE"}, {"w": 0.5}, {"num_points": 1}, {"rp_type": "median"}, {"alpha_levels": "dense"}):
        with pytest.raises(ValueError):
            FuzzyRuleInterpolator(**params).fit(fis1)


def test_score(fis1):
    est = FuzzyRuleInterpolator().fit(fis1)
    X = [[12.0], [20.0], [30.0], [40.0]]
    pred = est.predict(X)
    assert est.score(X, pred) == 1.0
    assert est.score(X, [12, 20, 30, 40]) < 1.0
