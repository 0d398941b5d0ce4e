import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparsefri import (
    AlphaLevelScheme,
    DimensionMismatchError,
    InterpolationConfig,
    Method,
    MethodError,
    PiecewiseLinearFuzzySet,
    ReferencePointKind,
    RowError,
    RuleView,
    alpha_cut,
    evaluate,
    evaluate_batch,
    interpolate,
    representative_value,
    serialize_obs,
    validate_cnf,
)
from sparsefri.errors import DegenerateRuleError, NotSurroundedError, UndefinedRatioError
from sparsefri.methods import (
    FlankingPair,
    khstab_interpolate,
    lambda_core,
    observation_sets,
    reference_distance,
    rule_views,
    select_flanking_pair,
)

import oracles
from systems import make_set, random_system

T = PiecewiseLinearFuzzySet.triangle
ALL = list(Method)


def cfg(method, **kw):
    return InterpolationConfig(method=method, **kw)


def points(fset):
    return np.array(fset.points)


def assert_same_set(a, b, tol=1e-9):
    pa, pb = points(a), points(b)
    assert pa.shape == pb.shape, (a.points, b.points)
    np.testing.assert_allclose(pa, pb, atol=tol, rtol=0)


def rng_from(seed):
    return np.random.default_rng(seed)


seeds = st.integers(0, 2**32 - 1)


# worked example 1


def test_example1_kh(fis1, obs1):
    c = evaluate(fis1, obs1, cfg(Method.KH))
    assert_same_set(c.fuzzy[0], T(*oracles.OBS1))
    assert c.crisp[0] == pytest.approx(27, abs=1e-6)
    assert c.cuts[0][0].lower == pytest.approx(17.0, abs=1e-12)
    assert c.abnormal == (False,)


def test_example1_khstab_matches_kh(fis1, obs1):
    kh = evaluate(fis1, obs1, cfg(Method.KH))
    st_ = evaluate(fis1, obs1, cfg(Method.KHSTAB))
    assert_same_set(kh.fuzzy[0], st_.fuzzy[0])
    for a, b in zip(kh.cuts[0], st_.cuts[0]):
        assert (a.lower, a.upper) == pytest.approx((b.lower, b.upper), abs=1e-9)


def test_example1_vkk(fis1, obs1):
    c = evaluate(fis1, obs1, cfg(Method.VKK))
    assert all(cut.centre == pytest.approx(27) for cut in c.cuts[0])
    assert c.cuts[0][0].width == pytest.approx(20)


def test_example1_maci(fis1, obs1):
    c = evaluate(fis1, obs1, cfg(Method.MACI))
    assert c.details["lambda_core"] == pytest.approx(oracles.lambda_core_example1(), abs=1e-12)
    assert_same_set(c.fuzzy[0], T(*oracles.maci_example1()))


def test_example1_crf(fis1, obs1):
    c = evaluate(fis1, obs1, cfg(Method.CRF))
    assert c.fuzzy[0].core == pytest.approx((27, 27))
    cut0 = alpha_cut(c.fuzzy[0], 0)
    assert 27 - cut0.lower == pytest.approx(10)


def test_example1_imul(fis1, obs1):
    c = evaluate(fis1, obs1, cfg(Method.IMUL))
    assert c.fuzzy[0].core == pytest.approx((27, 27), abs=1e-9)
    assert c.details["lambda_left"] == c.details["lambda_right"] == pytest.approx(17 / 32)


def test_example1_gm(fis1, obs1):
    a1, a2 = (PiecewiseLinearFuzzySet.triangle(*p) for p in (oracles.A1, oracles.A2))
    assert reference_distance(a1, a2) == 32
    c = evaluate(fis1, obs1, cfg(Method.GM))
    (b_i,) = c.details["interpolated_consequents"]
    assert representative_value(b_i) == pytest.approx(27)
    assert c.details["lambdas"] == pytest.approx((17 / 32,))


def test_example1_scalemove(fis1, obs1):
    c = evaluate(fis1, obs1, cfg(Method.SCALEMOVE))
    assert c.details["lambda_rep"] == pytest.approx(0.53125, abs=1e-12)
    assert representative_value(c.fuzzy[0], ReferencePointKind.CENTROID) == pytest.approx(27, abs=1e-9)
    assert 26 <= c.crisp[0] <= 28


def test_example1_default_crisp(fis1, obs1):
    assert evaluate(fis1, obs1).crisp[0] == pytest.approx(27, abs=1e-6)


# worked example 2


def test_example2_flanking_pair(fis2, obs2):
    pair = select_flanking_pair(rule_views(fis2), observation_sets(obs2), InterpolationConfig())
    assert (pair.lower.index, pair.upper.index) == (1, 3)


@pytest.mark.parametrize("method", [Method.MACI, Method.CRF, Method.IMUL, Method.GM])
def test_example2_valid_conclusions(fis2, obs2, method):
    c = evaluate(fis2, obs2, cfg(method))
    (fset,) = c.fuzzy
    assert validate_cnf(fset).valid
    assert 0 <= fset.support[0] and fset.support[1] <= 80
    assert 10 < c.crisp[0] < 70


def test_example2_maci_hand_values(fis2, obs2):
    c = evaluate(fis2, obs2, cfg(Method.MACI))
    assert c.details["lambda_core"] == pytest.approx(oracles.lambda_core_example2(), abs=1e-12)
    expected = PiecewiseLinearFuzzySet.trapezoid(*oracles.maci_example2())
    assert_same_set(c.fuzzy[0], expected)


@pytest.mark.parametrize("method", ALL)
def test_example2_all_methods_run(fis2, obs2, method):
    c = evaluate(fis2, obs2, cfg(method))
    assert 10 < c.crisp[0] < 70


# boundary consistency on the fixtures


@pytest.mark.parametrize("method", ALL)
@pytest.mark.parametrize("fixture", ["fis1", "fis2"])
def test_boundary_on_fixture_rules(request, method, fixture):
    fis = request.getfixturevalue(fixture)
    rules = rule_views(fis)
    for rule in rules:
        c = interpolate(rules, rule.antecedents, cfg(method))
        assert_same_set(c.fuzzy[0], rule.consequent)


# errors


def test_not_surrounded():
    rules = [RuleView((T(5, 10, 15),), (T(5, 10, 15),), 1, 1), RuleView((T(37, 42, 47),), (T(37, 42, 47),), 1, 2)]
    with pytest.raises(NotSurroundedError, match="not surrounded"):
        interpolate(rules, (T(0, 1, 2),), cfg(Method.KH))
    with pytest.raises(NotSurroundedError):
        interpolate(rules, (T(50, 55, 60),), cfg(Method.MACI))


def test_khstab_needs_two_rules():
    rule = RuleView((T(5, 10, 15),), (T(5, 10, 15),), 1, 1)
    with pytest.raises(MethodError, match="requires >= 2 rules"):
        khstab_interpolate([rule], (T(5, 10, 15),), InterpolationConfig())


def test_degenerate_rule_pair():
    same = T(5, 10, 15)
    rules = [RuleView((same,), (T(0, 1, 2),), 1, 1), RuleView((T(4, 10, 16),), (T(3, 4, 5),), 1, 2)]
    with pytest.raises(DegenerateRuleError):
        interpolate(rules, (T(4.5, 10, 15.5),), cfg(Method.MACI))


def test_vkk_width_ratio_undefined():
    s = PiecewiseLinearFuzzySet.singleton
    rules = [RuleView((s(0),), (T(0, 1, 2),), 1, 1), RuleView((s(10),), (T(5, 6, 7),), 1, 2)]
    with pytest.raises(UndefinedRatioError):
        interpolate(rules, (T(4, 5, 6),), cfg(Method.VKK))


def test_crf_relative_fuzziness_undefined():
    s = PiecewiseLinearFuzzySet.singleton
    rules = [RuleView((s(0),), (T(0, 1, 2),), 1, 1), RuleView((s(10),), (T(5, 6, 7),), 1, 2)]
    with pytest.raises(UndefinedRatioError):
        interpolate(rules, (T(4, 5, 6),), cfg(Method.CRF))


def test_singleton_observation_on_singleton_rules():
    s = PiecewiseLinearFuzzySet.singleton
    rules = [RuleView((s(0),), (s(10),), 1, 1), RuleView((s(10),), (s(30),), 1, 2)]
    for method in ALL:
        c = interpolate(rules, (s(2.5),), cfg(method))
        assert c.crisp[0] == pytest.approx(15), method


def test_gm_rejects_polygons():
    poly = PiecewiseLinearFuzzySet.from_breakpoints([0, 1, 2, 3, 4], [0, 0.3, 1, 0.8, 0])
    rules = [RuleView((poly,), (T(0, 1, 2),), 1, 1), RuleView((T(10, 11, 12),), (T(5, 6, 7),), 1, 2)]
    with pytest.raises(MethodError, match="GM"):
        interpolate(rules, (T(4, 5, 6),), cfg(Method.GM))


def test_dimension_mismatch(fis2, obs1):
    with pytest.raises(DimensionMismatchError, match="dimension mismatch"):
        evaluate(fis2, obs1)


def test_weight_diagnostic(fis1, obs1):
    from dataclasses import replace

    rules = (replace(fis1.rules[0], weight=0.5),) + fis1.rules[1:]
    c = evaluate(replace(fis1, rules=rules), obs1)
    assert any("weight" in d for d in c.diagnostics)


def test_batch(fis1, obs1):
    same = evaluate_batch(fis1, [obs1, obs1], cfg(Method.KH))
    assert same[0] == same[1]
    assert evaluate_batch(fis1, []) == []
    mixed = evaluate_batch(fis1, [serialize_obs(obs1), "NumInputs=1\n[Observation]\nOBS1=junk\n"])
    assert not isinstance(mixed[0], RowError)
    assert isinstance(mixed[1], RowError) and mixed[1].index == 1 and "line 3" in mixed[1].message


def test_method_names():
    assert Method.parse("khstabilized") is Method.KHSTAB
    assert Method.parse("scalemove") is Method.SCALEMOVE
    assert Method.parse("Maci") is Method.MACI
    with pytest.raises(ValueError):
        Method.parse("FIVE")


def test_userdefined_levels(fis1, obs1):
    c = evaluate(fis1, obs1, cfg(Method.KHSTAB, alpha_levels=AlphaLevelScheme.user_defined(101)))
    assert len(c.cuts[0]) == 101
    assert c.crisp[0] == pytest.approx(evaluate(fis1, obs1).crisp[0], abs=1e-6)


# properties


@settings(max_examples=1000)
@given(seeds, st.sampled_from([3, 4]))
def test_kh_identity(seed, k):
    rules, obs = random_system(rng_from(seed), 1, k, consequents="identity")
    c = interpolate(rules, obs, cfg(Method.KH))
    for cut in c.cuts[0]:
        ref = alpha_cut(obs[0], cut.level)
        assert (cut.lower, cut.upper) == pytest.approx((ref.lower, ref.upper), abs=1e-9)


@settings(max_examples=1000)
@given(seeds, st.sampled_from([3, 4]))
def test_khstab_equals_kh_for_one_input(seed, k):
    rules, obs = random_system(rng_from(seed), 1, k, consequents="free")
    kh = interpolate(rules, obs, cfg(Method.KH))
    stab = interpolate(rules, obs, cfg(Method.KHSTAB))
    assert [c.level for c in kh.cuts[0]] == [c.level for c in stab.cuts[0]]
    for a, b in zip(kh.cuts[0], stab.cuts[0]):
        assert (a.lower, a.upper) == pytest.approx((b.lower, b.upper), abs=1e-9)


@settings(max_examples=200)
@given(seeds, st.sampled_from(ALL), st.integers(1, 2), st.sampled_from([3, 4]), st.booleans())
def test_boundary_consistency(seed, method, n_inputs, k, upper):
    rules, _ = random_system(rng_from(seed), n_inputs, k, consequents="free")
    rule = rules[1] if upper else rules[0]
    c = interpolate(rules, rule.antecedents, cfg(method))
    assert_same_set(c.fuzzy[0], rule.consequent)


@settings(max_examples=300)
@given(seeds, st.sampled_from(ALL), st.integers(1, 2), st.sampled_from([3, 4]))
def test_reference_point_betweenness(seed, method, n_inputs, k):
    rules, obs = random_system(rng_from(seed), n_inputs, k, consequents="monotone")
    config = cfg(method)
    c = interpolate(rules, obs, config)
    kind = config.reference_kind
    lo, hi = sorted(representative_value(r.consequent, kind) for r in rules)
    rp = representative_value(c.defuzzified_set(0), kind)
    assert lo - 1e-9 <= rp <= hi + 1e-9


@settings(max_examples=1000)
@given(seeds, st.integers(1, 2), st.sampled_from([3, 4]))
def test_maci_always_valid(seed, n_inputs, k):
    rules, obs = random_system(rng_from(seed), n_inputs, k, consequents="free")
    c = interpolate(rules, obs, cfg(Method.MACI))
    assert validate_cnf(c.fuzzy[0]).valid and not c.abnormal[0]


def test_maci_valid_where_kh_is_abnormal():
    # B1 wide and B2 a narrow spike: KH inverts the top cuts
    rules = [
        RuleView((T(0, 5, 10),), (T(0, 10, 40),), 1, 1),
        RuleView((T(20, 25, 30),), (T(20, 20.5, 21),), 1, 2),
    ]
    obs = (T(14, 15, 16),)
    kh = interpolate(rules, obs, cfg(Method.KH))
    assert kh.abnormal[0] and not validate_cnf(kh.fuzzy[0]).valid
    assert validate_cnf(kh.defuzzified_set(0)).valid
    maci = interpolate(rules, obs, cfg(Method.MACI))
    assert validate_cnf(maci.fuzzy[0]).valid


def _rep(fset, k):
    # mean of the shape's characteristic points, a triangle's peak counted once
    (s0, s1), (c0, c1) = fset.support, fset.core
    return (s0 + 0.5 * (c0 + c1) + s1) / 3 if k == 3 else (s0 + c0 + c1 + s1) / 4


@settings(max_examples=1000)
@given(seeds, st.integers(1, 2), st.sampled_from([3, 4]))
def test_scalemove_preserves_rep(seed, n_inputs, k):
    rules, obs = random_system(rng_from(seed), n_inputs, k, consequents="free")
    c = interpolate(rules, obs, cfg(Method.SCALEMOVE))
    lam = c.details["lambda_rep"]
    expected = (1 - lam) * _rep(rules[0].consequent, k) + lam * _rep(rules[1].consequent, k)
    assert _rep(c.fuzzy[0], k) == pytest.approx(expected, abs=1e-9)


@settings(max_examples=100)
@given(seeds, st.sampled_from([3, 4]))
def test_lambda_monotone_when_sliding(seed, k):
    rng = rng_from(seed)
    rules, _ = random_system(rng, 1, k, consequents="monotone")
    half = rng.uniform(0.5, 5)
    lam_core, lam_rep = [], []
    for method, key, out in ((Method.MACI, "lambda_core", lam_core), (Method.SCALEMOVE, "lambda_rep", lam_rep)):
        kind = cfg(method).reference_kind
        r1, r2 = (representative_value(r.antecedents[0], kind) for r in rules)
        for c in np.linspace(r1, r2, 25):
            pts = [c - half, c, c + half] if k == 3 else [c - half, c - half / 3, c + half / 3, c + half]
            out.append(interpolate(rules, (make_set(pts),), cfg(method)).details[key])
    assert np.all(np.diff(lam_core) >= -1e-12)
    assert np.all(np.diff(lam_rep) >= -1e-12)


@settings(max_examples=1000)
@given(seeds, st.sampled_from(ALL), st.integers(1, 2))
def test_determinism(seed, method, n_inputs):
    rules, obs = random_system(rng_from(seed), n_inputs, 3, consequents="free")
    a = interpolate(rules, obs, cfg(method))
    b = interpolate(list(rules), tuple(obs), cfg(method))
    assert a == b
    assert a.fuzzy[0].points == b.fuzzy[0].points and a.crisp == b.crisp


@settings(max_examples=200)
@given(seeds, st.integers(1, 2))
def test_kh_matches_dense_oracle(seed, n_inputs):
    rules, obs = random_system(rng_from(seed), n_inputs, 3, consequents="monotone")
    ants = [[tuple(a.xs) for a in r.antecedents] for r in rules]
    cons = [tuple(r.consequent.xs) for r in rules]
    dense = oracles.kh_bruteforce(ants, cons, [tuple(o.xs) for o in obs])
    c = interpolate(rules, obs, cfg(Method.KH))
    if not oracles.nested(dense):
        assert c.abnormal[0]
        return
    grid = np.union1d(np.linspace(dense[0, 1], dense[0, 2], 4001), c.fuzzy[0].xs)
    err = np.max(np.abs(c.fuzzy[0](grid) - oracles.membership_from_cuts(dense, grid)))
    assert err <= 1e-3


def test_lambda_core_requires_distinct_rules():
    a = T(0, 1, 2)
    pair = FlankingPair(RuleView((a,), (a,), 1, 1), RuleView((a,), (a,), 1, 2), ())
    with pytest.raises(DegenerateRuleError):
        lambda_core(pair, (T(0, 1.5, 2),), InterpolationConfig())
