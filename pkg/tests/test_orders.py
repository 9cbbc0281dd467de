import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import seeds
from fsdlab import orders as od
from fsdlab.sampling import random_positive, random_psd
from fsdlab.spectra import NotInvertibleError, eigh, logm, norm2, powm

mp.mp.dps = 40

# frozen from the 40-digit evaluation below
SPECHT_4 = 1.263740721215811
C_1_4 = 0.50655074916563


def mp_specht(h):
    h = mp.mpf(h)
    return (h - 1) * h ** (1 / (h - 1)) / (mp.e * mp.log(h))


# -- scalar constants -----------------------------------------------------------


def test_specht_fixtures():
    assert od.specht(1) == 1.0
    assert od.specht(4) == pytest.approx(SPECHT_4, rel=1e-14)
    assert float(mp_specht(4)) == pytest.approx(SPECHT_4, rel=1e-15)
    assert abs(od.specht(1 + 1e-12) - 1) <= 1e-10
    with pytest.raises(ValueError):
        od.specht(0.5)


@given(st.floats(1.0 + 1e-12, 1e4))
def test_specht_matches_high_precision(h):
    ref = mp_specht(mp.mpf(h)) if h != 1 else mp.mpf(1)
    assert od.specht(h) == pytest.approx(float(ref), rel=1e-9)


@pytest.mark.parametrize("h", [1 + 1e-9, 1 + 5e-9, 1 + 1e-8, 1 + 1.0001e-8, 1 + 1e-7, 1 + 1e-4,
                               np.exp(0.1) * (1 - 1e-12), np.exp(0.1) * (1 + 1e-12)])
def test_specht_near_one_branch(h):
    assert od.specht(h) == pytest.approx(float(mp_specht(h)), rel=1e-14)
    assert 1.0 <= od.specht(h)
    if h - 1 <= 1e-8:
        assert od.specht(h) <= 1 + 1e-10


def test_specht_nondecreasing():
    hs = np.linspace(1, 100, 5001)
    assert np.all(np.diff([od.specht(h) for h in hs]) >= 0)


def test_specht_p():
    assert od.specht_p(3.0, 1) == od.specht(3.0)
    assert od.specht_p(1.0, 2.5) == 1.0
    assert od.specht_p(4.0, 0.5) == pytest.approx(od.specht(2.0), rel=1e-15)
    with pytest.raises(ValueError):
        od.specht_p(2.0, 0)


def test_kantorovich_fixtures():
    assert od.kantorovich(1) == 1
    assert od.kantorovich(4) == 25 / 16
    for a in (0.1, 0.5, 0.9):
        assert od.gen_kantorovich(1.0, a) == 1.0
    with pytest.raises(ValueError):
        od.gen_kantorovich(2.0, 1.0)


@given(st.floats(1.001, 1e3))
def test_gen_kantorovich_half_closed_form(h):
    assert od.gen_kantorovich(h, 0.5) == pytest.approx(2 * h**0.25 / (1 + h**0.5), rel=1e-10)


@given(st.floats(1.01, 100), st.floats(0.05, 0.95))
def test_gen_kantorovich_symmetric_and_at_most_one(h, a):
    # K(h, a) = K(h, 1 - a) and 0 < K <= 1 on (0, 1)
    assert od.gen_kantorovich(h, a) == pytest.approx(od.gen_kantorovich(h, 1 - a), rel=1e-9)
    assert 0 < od.gen_kantorovich(h, a) <= 1


def test_additive_constant_fixtures():
    assert od.additive_constant(2.0, 2.0) == 0.0
    assert od.additive_constant(1, 4) == pytest.approx(3 / np.log(4) * np.log(SPECHT_4), rel=1e-14)
    assert od.additive_constant(1, 4) == pytest.approx(C_1_4, rel=1e-12)
    assert od.additive_constant(1, 6) > 1
    assert od.additive_constant(1, 5.9) < 1.05
    # p = 1 reduces to the plain constant
    assert od.additive_constant(1, 4, 1.0) == od.additive_constant(1, 4)


@given(st.floats(0.01, 10), st.floats(1.0001, 100))
def test_additive_constant_below_top(m, h):
    assert od.additive_constant(m, m * h) < m * h


@given(st.floats(0.01, 10), st.floats(6.0, 100))
def test_additive_constant_exceeds_bottom_for_wide_ratio(m, h):
    assert od.additive_constant(m, m * h) > m


# -- orders --------------------------------------------------------------------


def test_niemiec_pair_orders():
    A, B = od.niemiec_pair()
    cha, low = od.chaotic_leq(A, B), od.loewner_leq(A, B)
    assert cha.holds and cha.margin == pytest.approx(0.016269, abs=1e-6)
    assert not low.holds and low.margin == pytest.approx(-0.099020, abs=1e-6)
    # det(B - A) = -1
    assert np.linalg.det(B - A).real == pytest.approx(-1.0)


def test_loewner_fixtures():
    A = random_positive(3, 0)
    v = od.loewner_leq(A, A)
    assert v.holds and abs(v.margin) < 1e-12
    assert od.loewner_leq(A, A + np.eye(3)).margin == pytest.approx(1.0)
    with pytest.raises(ValueError):
        od.loewner_leq(np.eye(2), np.eye(3))


def test_chaotic_fixtures():
    A = random_positive(3, 0)
    assert od.chaotic_leq(A, A).holds
    with pytest.raises(NotInvertibleError):
        od.chaotic_leq(np.diag([0.0, 1.0]), np.eye(2))


@given(seeds, st.integers(1, 8))
def test_commuting_pairs_orders_agree(seed, n):
    rng = np.random.default_rng(seed)
    a = np.exp(rng.uniform(-2, 2, n))
    b = a * np.exp(rng.uniform(-0.5, 1.0, n))
    A, B = np.diag(a), np.diag(b)
    assert od.loewner_leq(A, B).holds == od.chaotic_leq(A, B).holds


@given(seeds, st.integers(2, 8))
def test_loewner_implies_chaotic(seed, n):
    rng = np.random.default_rng(seed)
    A = random_positive(n, rng, 1e3)
    B = A + random_psd(n, rng, scale=norm2(A) * rng.uniform())
    assert od.chaotic_leq(A, B).holds


def test_delta_order_sampled_fixtures():
    A, B = od.niemiec_pair()
    assert od.delta_order_sampled(B, A).holds
    P, Q = od.random_chaotic_pair(4, 3, conjugate=True)
    assert od.delta_order_sampled(P, Q).holds
    A = random_positive(3, 5)
    v = od.delta_order_sampled(2 * A, A)
    assert v.holds and v.margin == pytest.approx(np.log(2))


@given(seeds, st.integers(2, 8))
def test_delta_order_matches_chaotic_order(seed, n):
    rng = np.random.default_rng(seed)
    A, B = random_positive(n, rng, 1e3), random_positive(n, rng, 1e3)
    ver, cha = od.delta_order_sampled(A, B, 32, seed), od.chaotic_leq(B, A)
    assert ver.holds == cha.holds
    assert ver.margin == pytest.approx(cha.margin, abs=1e-9)


def test_random_chaotic_pair_variants():
    A, B = od.random_chaotic_pair(4, 0, gap=0.0)
    assert np.allclose(A, B)
    A, B = od.random_chaotic_pair(4, 0, commuting=True)
    assert np.allclose(A, np.diag(np.diag(A))) and od.loewner_leq(B, A).holds
    A, B = od.random_chaotic_pair(4, 0, conjugate=True)
    assert od.chaotic_leq(B, A).margin > 0
    with pytest.raises(ValueError):
        od.random_chaotic_pair(0)


# -- Kantorovich-type inequalities -------------------------------------------------


def test_kti_scalar_lower_bound_case():
    A = random_positive(3, 1, 10, level=5.0)
    A = A + 2 * np.eye(3)
    B = 2.0 * np.eye(3)
    for variant in ("weak", "strong", "additive"):
        res = od.verify_kti(A, B, p=1.5, variant=variant)
        assert res.constant_used == (0.0 if variant == "additive" else 1.0)
        # reduces to A^p >= m^p I
        assert res.margin == pytest.approx(eigh(powm(A, 1.5)).eigenvalues[0] - 2**1.5, rel=1e-10)


def test_kti_on_niemiec_pair():
    A, B = od.niemiec_pair()
    res = od.verify_kti(B, A, bounds=od.SpectralBounds(1.0, 4.0), p=1)
    assert res.holds and res.constant_used == pytest.approx(SPECHT_4)


def test_kti_identical_operators():
    A = random_positive(4, 2, 1e2)
    for variant in ("weak", "strong", "additive"):
        assert od.verify_kti(A, A, variant=variant).holds


def test_kti_rejects_violated_hypotheses():
    A, B = od.niemiec_pair()
    with pytest.raises(od.HypothesisViolation):
        od.verify_kti(A, B)
    with pytest.raises(od.HypothesisViolation):
        od.verify_kti(B, A, bounds=od.SpectralBounds(2.0, 3.0))
    with pytest.raises(ValueError):
        od.verify_kti(B, A, variant="medium")


@given(seeds, st.integers(2, 8), st.sampled_from([0.5, 1.0, 2.0]), st.sampled_from(["weak", "strong", "additive"]))
def test_kti_forward(seed, n, p, variant):
    A, B = od.random_chaotic_pair(n, seed, conjugate=True)
    assert od.verify_kti(A, B, p=p, variant=variant).holds


def test_mixed_endpoints_reproduce_variants():
    A, B = od.random_chaotic_pair(4, 7, conjugate=True)
    S = od.specht(od.SpectralBounds.of(B).h)
    assert od.mixed_bound(A, B, c=S).margin == pytest.approx(od.verify_kti(A, B, variant="strong").margin, abs=1e-12)
    assert od.mixed_bound(A, B, c=1.0).margin == pytest.approx(od.verify_kti(A, B, variant="additive").margin,
                                                               abs=1e-12)
    with pytest.raises(ValueError):
        od.mixed_bound(A, B, c=S + 1)


@given(seeds, st.integers(2, 8), st.floats(0, 1))
def test_mixed_interpolation(seed, n, s):
    A, B = od.random_chaotic_pair(n, seed, conjugate=True)
    S = od.specht(od.SpectralBounds.of(B).h)
    assert od.mixed_bound(A, B, c=1 + s * (S - 1)).holds


def test_furuta_fixtures():
    A, B = od.niemiec_pair()
    for p in (0.5, 1.0, 2.0):
        assert abs(od.furuta_check(B, A, p, 0.0).margin) < 1e-12
        for r in (0.5, 1.0, 2.0):
            assert od.furuta_check(B, A, p, r).holds
    C = random_positive(3, 4, 1e2)
    assert abs(od.furuta_check(C, C, 1.3, 0.7).margin) < 1e-9
    with pytest.raises(ValueError):
        od.furuta_check(C, C, 0.0, 0.0)


@given(seeds, st.integers(2, 6), st.sampled_from([0.5, 1.0, 2.0]), st.sampled_from([0.0, 0.5, 1.0, 2.0]))
def test_furuta_forward(seed, n, p, r):
    A, B = od.random_chaotic_pair(n, seed, conjugate=True)
    assert od.furuta_check(A, B, p, r).holds


def test_converse_probe():
    A, B = od.converse_probe_pair()
    assert od.chaotic_leq(B, A).margin == pytest.approx(-0.25, abs=1e-12)
    assert np.allclose(logm(B) - logm(A), (logm(B) - logm(A)).conj().T)
    probe = od.kti_converse_probe(A, B)
    assert probe.found and probe.witness_p == 0.1 and probe.witness_margin < 0
    assert set(probe.margins) == {1.0, 0.1, 0.01, 0.001}


def test_counterexample_search():
    res = od.counterexample_search(2, trials=0)
    assert len(res.hits) == 1 and res.hits[0].source == "niemiec" and res.hit_rate == 0.0
    res = od.counterexample_search(3, trials=400, seed=1)
    assert res.random_hits > 0
    for h in res.hits:
        assert od.chaotic_leq(h.A, h.B).holds and not od.loewner_leq(h.A, h.B).holds
    again = od.counterexample_search(3, trials=400, seed=1)
    assert [h.source for h in again.hits] == [h.source for h in res.hits]
    with pytest.raises(ValueError):
        od.counterexample_search(1)
