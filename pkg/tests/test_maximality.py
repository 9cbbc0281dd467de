import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import seeds
from fsdlab import levi as lv
from fsdlab import maximality as mx
from fsdlab.orders import SpectralBounds
from fsdlab.suites import _Shifted, comparison_scenarios


def ball_family(f, R=1.0, count=32, seed=0, **kw):
    return lv.sample_family(f, lv.Region.ball(f.dim, R, n_interior=count, seed=seed, **kw))


# -- necessary condition -------------------------------------------------------


def test_necessary_check_fixtures():
    rep = mx.fsd_necessary_check(ball_family(lv.weighted_quadratic([0.3, 1.0])))
    assert rep.excluded and rep.margin == pytest.approx(0.3) and rep.status == "maximality excluded"
    rep = mx.fsd_necessary_check(ball_family(lv.quartic(16), support=8))
    assert not rep.excluded and rep.margin == 0.0
    rep = mx.fsd_necessary_check(ball_family(lv.harmonic_quadratic(5)))
    assert rep.excluded and rep.caveat is not None


def test_necessary_check_one_sample_suffices():
    # quartic in C^2 has positive FSD away from the coordinate axes
    fam = lv.family_from_points(lv.quartic(2), [[1, 0], [0.5, 0.5]])
    rep = mx.fsd_necessary_check(fam)
    assert rep.excluded and np.allclose(rep.worst_point, [0.5, 0.5])


# -- null certificates -------------------------------------------------------------


@pytest.mark.parametrize("R", [1.0, 2.0])
@pytest.mark.parametrize("make", [lv.quartic, lv.finite_rank_moving])
def test_averaging_certificate_bound(make, R):
    fam = ball_family(make(32), R, 64)
    cert = mx.null_certificate(fam, "averaging_sets", 32)
    assert cert.bounds is not None
    assert np.all(cert.sup_values <= cert.bounds * (1 + 1e-12))


@given(seeds, st.integers(1, 32), st.floats(0.5, 3.0))
def test_quartic_certificate_sound(seed, k, R):
    fam = ball_family(lv.quartic(32), R, 16, seed)
    cert = mx.null_certificate(fam, "averaging_sets", k)
    assert np.all(cert.sup_values <= cert.bounds * (1 + 1e-12))


def test_quartic_certificate_decay_is_slow():
    # 4 R^2 / k decays like 1/k, short of a hundredfold drop at k = 32
    cert = mx.null_certificate(ball_family(lv.quartic(32), 1.0, 64), "averaging_sets", 32)
    assert cert.sup_values[-1] > cert.target


def test_certificate_strategies():
    fam = ball_family(lv.weighted_quadratic([1.0, 0.5, 0.0, 0.0]))
    fixed = mx.null_certificate(fam, "fixed_vector", 4)
    assert fixed.passes and fixed.sup_values.max() <= 1e-12
    tail = mx.null_certificate(fam, "basis_tail", 2)
    assert np.allclose(np.abs(tail.vectors), np.eye(4)[2:]) and tail.passes
    assert mx.null_certificate(fam, "min_eig_of_sup", 3).passes
    inter = mx.null_certificate(ball_family(lv.interleaved(16)), "averaging_sets", 8)
    assert inter.index_sets[2] == [0, 2, 4]
    with pytest.raises(ValueError):
        mx.null_certificate(fam, "basis_tail", 5)
    with pytest.raises(ValueError):
        mx.null_certificate(fam, "averaging_sets", 5)
    with pytest.raises(ValueError):
        mx.null_certificate(fam, "random")


@given(seeds, st.integers(2, 8), st.sampled_from([0.3, 0.5, 1.0]))
def test_positive_floor_blocks_every_certificate(seed, n, floor):
    # contrapositive consistency: an excluded family never gets a null sequence
    rng = np.random.default_rng(seed)
    w = floor + rng.uniform(0, 1, n)
    fam = ball_family(lv.weighted_quadratic(w), count=8, seed=seed)
    assert mx.fsd_necessary_check(fam).excluded
    for strategy in ("fixed_vector", "averaging_sets", "min_eig_of_sup", "basis_tail"):
        assert not mx.null_certificate(fam, strategy, min(n, 4)).passes
    assert mx.maximality_verdict(fam).status == "excluded"


# -- common range and compactness -------------------------------------------------------


def test_common_range_fixtures():
    n, k = 8, 5
    fam = ball_family(lv.weighted_quadratic(np.r_[np.linspace(1, 2, k), np.zeros(n - k)]), count=16)
    rep = mx.common_range_check(fam, np.eye(n)[:, :k])
    assert rep.holds and rep.subspace_dim == k and abs(rep.witness_sup) <= 1e-12
    # the witness feeds a passing fixed-vector certificate
    assert mx.null_certificate(fam, "fixed_vector", 4, x=rep.witness).passes
    mov = lv.family_from_points(lv.finite_rank_moving(n), 2 * np.eye(n))
    assert not mx.common_range_check(mov, np.eye(n)[:, : n - 1]).holds
    with pytest.raises(ValueError):
        mx.common_range_check(fam, np.eye(n))


@given(seeds, st.integers(3, 8))
def test_common_range_implies_null_certificate(seed, n):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, n))
    Q, _ = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    E = Q[:, :k]
    levis = [E @ np.diag(rng.uniform(0.1, 2, k)) @ E.conj().T for _ in range(6)]
    fam = lv.LeviFamily(None, np.zeros((6, n)), np.array(levis), np.zeros(6, bool))
    rep = mx.common_range_check(fam, E)
    assert rep.holds
    assert mx.null_certificate(fam, "fixed_vector", 3, x=rep.witness).passes


def test_approx_range_and_compactness():
    diag = lv.constant_family(np.diag(1.0 / np.arange(1, 33)))
    ar = mx.approx_common_range(diag, 0.1)
    assert ar.success and ar.dim == 9 and ar.residual <= 0.1
    assert not mx.approx_common_range(lv.constant_family(np.eye(6)), 0.5).success
    cc = mx.collectively_compact_check(diag, 0.1, probes=50)
    assert cc.passes and cc.probe_max_distance <= 0.1 + 1e-12
    mov = lv.family_from_points(lv.finite_rank_moving(16), 2 * np.eye(16))
    assert not mx.collectively_compact_check(mov, 0.1).passes
    with pytest.raises(ValueError):
        mx.approx_common_range(diag, 0.0)


# -- majorants, constant forms, boundary infimum ------------------------------------------


def test_model_majorant():
    qf = ball_family(lv.quartic(6))
    rep = mx.model_majorant_check(qf, 4 * np.eye(6))
    assert rep.dominated and not rep.criterion_met
    assert not mx.model_majorant_check(qf, np.eye(6)).dominated
    A = np.diag(1.0 / np.arange(1, 9))
    phi = lv.phi_quadratic(A, "log", radius=1.0, limit_fsd=0.0)
    rep = mx.model_majorant_check(ball_family(phi), phi.majorant_constant() * A)
    assert rep.dominated and rep.caveat is not None
    with pytest.raises(ValueError):
        mx.model_majorant_check(qf, -np.eye(6))


def test_constant_levi_classify():
    v = mx.constant_levi_classify(ball_family(lv.weighted_quadratic([0.0, 1.0, 2.0]), count=8))
    assert v.constant and v.verdict == "maximal"
    v = mx.constant_levi_classify(ball_family(lv.harmonic_quadratic(8), count=8))
    assert v.verdict == "not maximal" and v.fsd == pytest.approx(1 / 8) and v.caveat
    assert not mx.constant_levi_classify(ball_family(lv.quartic(4))).constant


@given(seeds, st.integers(2, 8), st.floats(0.5, 3))
def test_boundary_infimum(seed, n, R):
    rng = np.random.default_rng(seed)
    A = np.diag(rng.uniform(0.01, 2, n))
    rep = mx.boundary_inf_check(A, lv.Region.ball(n, R, n_interior=4, seed=seed))
    assert rep.holds and rep.boundary_inf == pytest.approx(rep.predicted, rel=1e-10)
    with pytest.raises(ValueError):
        mx.boundary_inf_check(A, lv.Region(np.ones(n), R))


# -- comparison principles -------------------------------------------------------------


@pytest.mark.parametrize("cid,which,sc,expected", comparison_scenarios(4, 1.0, 0))
def test_comparison_scenarios(cid, which, sc, expected):
    rep = mx.comparison_check(sc, which)
    assert rep.status == expected
    if expected == "pass" and which != "bounds":
        assert rep.max_principle_ok


def test_cp1_with_nontrivial_constant():
    # v has Levi spectrum in [1, 2]; u = 3|z|^2 - 3 dominates it in the delta order
    n, R = 3, 1.0
    v = lv.weighted_quadratic([1.0, 1.5, 2.0])
    u = _Shifted(n, 3.0, -3.0)
    region = lv.Region.ball(n, R, n_interior=50)
    rep = mx.comparison_check(mx.ComparisonScenario(u, v, region), "cp1")
    assert rep.status == "pass" and rep.max_principle_ok
    # a wrong a-priori bound is refused
    bad = mx.ComparisonScenario(u, v, region, bounds=SpectralBounds(1.0, 1.5))
    assert mx.comparison_check(bad, "cp1").status == "hypothesis-violated"
    # reversed order fails the delta-order hypothesis
    rev = mx.comparison_check(mx.ComparisonScenario(v, u, region), "cp1")
    assert rev.status == "hypothesis-violated" and "delta-order" in rev.diagnostics[0]


def test_cp2_gate_and_pass():
    n = 3
    v = lv.weighted_quadratic([1.0, 2.0, 4.0])
    region = lv.Region.ball(n, 1.0, n_interior=50)
    rep = mx.comparison_check(mx.ComparisonScenario(_Shifted(n, 4.0, -10.0), v, region), "cp2")
    assert rep.status == "pass"
    # boundary inequality fails when u sits too high
    rep = mx.comparison_check(mx.ComparisonScenario(_Shifted(n, 4.0, 10.0), v, region), "cp2")
    assert rep.status == "hypothesis-violated"


def test_cp4_gate():
    rep = mx.comparison_check(mx.ComparisonScenario(_Shifted(3, 2.0), None, lv.Region.ball(3)), "cp4")
    assert rep.status == "hypothesis-violated"


def test_bounds_check_equality_case():
    rep = mx.comparison_check(mx.ComparisonScenario(_Shifted(4, 2.0), None, lv.Region.ball(4)), "bounds")
    assert rep.status == "pass" and rep.details["max_equality_gap"] <= 1e-12


def test_increasing_limit_demo():
    region = lv.Region.ball(6, 0.5, n_interior=100)
    rep = mx.comparison_check(mx.ComparisonScenario(lv.norm_squared(6), None, region, j=3),
                              "increasing_limit_demo")
    assert rep.status == "pass" and rep.margin > 0
    assert rep.details["null_direction_value"] == 0.0 and rep.details["partial_sums_monotone"]
    bad = mx.ComparisonScenario(lv.norm_squared(6), None, region, j=6)
    assert mx.comparison_check(bad, "increasing_limit_demo").status == "hypothesis-violated"


def test_comparison_errors():
    sq = lv.norm_squared(3)
    with pytest.raises(ValueError):
        mx.comparison_check(mx.ComparisonScenario(sq, None, lv.Region.ball(3)), "cp9")
    with pytest.raises(ValueError):
        mx.comparison_check(mx.ComparisonScenario(sq, None, lv.Region.ball(4)), "cp3")


# -- verdicts ---------------------------------------------------------------------------


def test_verdicts():
    fam = ball_family(lv.weighted_quadratic([0.0, 1.0, 2.0]), count=8)
    assert mx.maximality_verdict(fam).status == "established"
    rot = lv.LeviFamily(None, np.zeros((2, 2)), np.array([np.diag([0.0, 1.0]), np.diag([1.0, 0.0])]),
                        np.zeros(2, bool))
    assert mx.maximality_verdict(rot, k=2).status == "undetermined"
    # the quartic has vanishing sampled FSD but its certificates only decay like 1/k
    q = mx.maximality_verdict(ball_family(lv.quartic(16), support=8))
    assert q.status in ("established", "undetermined")
