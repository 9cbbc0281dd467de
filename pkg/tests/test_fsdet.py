import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, strategies as st

from conftest import dims, seeds
from fsdlab import fsdet
from fsdlab import properties as pr
from fsdlab.sampling import random_positive, random_psd, random_unit_vector, random_unitary
from fsdlab.spectra import NotInvertibleError, NotPSDError, norm2, powm

X2 = np.array([1.0, 1.0]) / np.sqrt(2)


def oracle_delta(A, x):
    """exp <log(A) x, x> through scipy's Schur-based logarithm."""
    return float(np.exp(np.real(np.vdot(x, sla.logm(A) @ x))))


def instance(seed, n, cond=1e6):
    rng = np.random.default_rng(seed)
    return random_positive(n, rng, cond), random_unit_vector(n, rng)


# -- fixtures -----------------------------------------------------------------


def test_log_mean_fixtures():
    assert fsdet.log_mean(np.eye(3), np.array([0.6, 0.8j, 0])) == pytest.approx(0.0, abs=1e-15)
    assert fsdet.log_mean(np.diag([0.0, 4.0]), [1.0, 0.0]) == float("-inf")
    assert fsdet.log_mean(np.diag([1.0, 4.0]), X2) == pytest.approx(np.log(4) / 2, abs=1e-14)


@pytest.mark.parametrize("t", [0.5, 1.0, 3.0])
def test_delta_of_scalar_operator(t):
    x = random_unit_vector(5, 0)
    assert abs(fsdet.delta(t * np.eye(5), x) - t) <= 1e-12


def test_delta_fixtures():
    assert fsdet.delta(np.diag([1.0, 4.0]), [1.0, 0.0]) == pytest.approx(1.0)
    assert abs(fsdet.delta(np.diag([1.0, 4.0]), X2) - 2.0) <= 1e-10
    assert fsdet.delta(np.diag([0.0, 4.0]), X2) == 0.0


def test_kernel_weight_rule():
    # weight on the kernel at rounding level is ignored, real weight forces zero
    x = np.array([1e-8, 1.0])
    x /= np.linalg.norm(x)
    assert fsdet.delta(np.diag([0.0, 4.0]), x) == pytest.approx(4.0)
    x = np.array([1e-6, 1.0])
    x /= np.linalg.norm(x)
    assert fsdet.delta(np.diag([0.0, 4.0]), x) == 0.0


def test_errors():
    with pytest.raises(NotPSDError):
        fsdet.delta(np.diag([-1.0, 1.0]), X2)
    with pytest.raises(ValueError):
        fsdet.delta(np.eye(2), [1.0, 1.0])
    with pytest.raises(NotInvertibleError):
        fsdet.p_mean(np.diag([0.0, 1.0]), X2, -1)
    with pytest.raises(ValueError):
        fsdet.p_mean(np.eye(2), X2, 0)


def test_p_mean_fixtures():
    A = np.diag([1.0, 4.0])
    assert fsdet.p_mean(A, X2, 1) == pytest.approx(2.5)
    assert fsdet.p_mean(A, X2, -1) == pytest.approx(1.6)
    assert fsdet.p_mean(np.eye(2), X2, 1) == pytest.approx(1.0)


@given(seeds, dims)
def test_delta_matches_scipy_oracle(seed, n):
    A, x = instance(seed, n, 1e4)
    assert fsdet.delta(A, x) == pytest.approx(oracle_delta(A, x), rel=1e-8)


@given(seeds, dims)
def test_log_mean_bounded_by_top_eigenvalue(seed, n):
    A, x = instance(seed, n)
    assert fsdet.log_mean(A, x) <= np.log(np.linalg.eigvalsh(A)[-1]) + 1e-8


def test_spectral_endpoint_fixtures():
    A = np.diag(1.0 / np.arange(1, 6))
    lo, hi = fsdet.delta_inf(A), fsdet.delta_sup(A)
    assert (lo.value, hi.value) == (pytest.approx(0.2), pytest.approx(1.0))
    assert lo.bracket_ok and hi.bracket_ok
    assert fsdet.delta_inf(np.eye(3)).value == pytest.approx(1.0)
    assert fsdet.delta_sup(np.eye(3)).value == pytest.approx(1.0)
    lo = fsdet.delta_inf(np.diag([0.0, 4.0]))
    assert lo.value == 0.0 and lo.sampled == 0.0
    assert fsdet.delta_sup(np.diag([0.0, 4.0])).value == pytest.approx(4.0)


@given(seeds, dims)
def test_sampled_endpoints_bracket(seed, n):
    A, _ = instance(seed, n)
    lo, hi = fsdet.delta_inf(A, 64, seed), fsdet.delta_sup(A, 64, seed)
    assert lo.bracket_ok and hi.bracket_ok
    assert lo.sampled == pytest.approx(lo.value, rel=1e-10)


@pytest.mark.parametrize("A,degenerate", [
    (np.diag([0.0, 1.0]), True),
    (np.eye(3), False),
    (np.diag([1e-13, 1.0]), True),
    (np.diag([1e-6, 1.0]), False),
])
def test_degeneracy_report(A, degenerate):
    rep = fsdet.degeneracy_report(A)
    assert rep.consistent
    assert rep.degenerate == degenerate
    assert set(rep.conditions) == {1, 2, 3, 4, 5, 6}


@given(seeds, st.integers(2, 8), st.booleans())
def test_degeneracy_conditions_agree(seed, n, singular):
    rng = np.random.default_rng(seed)
    A = random_psd(n, rng, rank=n - 1) if singular else random_positive(n, rng, 1e3)
    rep = fsdet.degeneracy_report(A)
    assert rep.consistent and rep.degenerate == singular


def test_commutant_identity_case():
    x = random_unit_vector(3, 0)
    res = fsdet.commutant_variational(np.eye(3), x, trials=100)
    assert res.delta == pytest.approx(1.0)
    assert res.sampled_inf >= 1.0 - 1e-12


@given(seeds, st.integers(2, 10))
def test_commutant_infimum_and_witness(seed, n):
    rng = np.random.default_rng(seed)
    A = np.diag(np.exp(rng.uniform(-3, 3, n)))
    x = random_unit_vector(n, rng)
    res = fsdet.commutant_variational(A, x, trials=200, seed=seed)
    assert res.sampled_inf >= res.delta - 1e-9 * res.delta
    assert res.witness_value == pytest.approx(res.delta, rel=1e-12)
    assert fsdet.delta(res.witness, x) == pytest.approx(1.0, rel=1e-10)


# -- identities and inequalities ------------------------------------------------


@given(seeds, dims)
def test_am_gm_and_norm_sandwich(seed, n):
    A, x = instance(seed, n)
    d = fsdet.delta(A, x)
    lam = np.linalg.eigvalsh(A)
    harm = 1 / np.real(np.vdot(x, np.linalg.solve(A, x)))
    arith = np.real(np.vdot(x, A @ x))
    assert harm <= d * (1 + 1e-8) and d <= arith * (1 + 1e-8)
    assert lam[0] <= d * (1 + 1e-8) and d <= lam[-1] * (1 + 1e-8)


@given(seeds, dims)
def test_specht_reverse(seed, n):
    A, x = instance(seed, n)
    assert pr.specht_reverse(A, x) >= -1e-8


@given(seeds, dims)
def test_power_means_monotone_and_converge(seed, n):
    A, x = instance(seed, n)
    assert pr.p_monotone(A, x) >= -1e-10
    err, tol = pr.p_limit_error(A, x)
    assert err <= tol


def test_power_mean_smoke_tolerance_is_attainable_with_margin():
    # worst error seen should sit well inside the coarse tolerance
    ratios = []
    for s in range(200):
        A, x = instance(s, 2 + s % 15)
        err, tol = pr.p_limit_error(A, x)
        ratios.append(err / tol)
    assert max(ratios) < 0.5


@given(seeds, dims)
def test_inverse_and_power_laws(seed, n):
    A, x = instance(seed, n, 1e2)
    assert fsdet.delta(powm(A, -1), x) == pytest.approx(1 / fsdet.delta(A, x), rel=1e-8)
    for p in pr.POWER_EXPONENTS:
        assert fsdet.delta(powm(A, p), x) == pytest.approx(fsdet.delta(A, x) ** p, rel=1e-8)


def test_power_law_on_semidefinite_input():
    A = np.diag([0.0, 1.0, 4.0])
    x = np.array([0.0, 0.6, 0.8])
    for p in (0.5, 2.0, 3.0):
        assert fsdet.delta(powm(A, p), x) == pytest.approx(fsdet.delta(A, x) ** p, rel=1e-12)


@given(seeds, dims, st.sampled_from(pr.HOMOGENEITY_FACTORS))
def test_homogeneity(seed, n, t):
    A, x = instance(seed, n)
    assert fsdet.delta(t * A, x) == pytest.approx(t * fsdet.delta(A, x), rel=1e-8)


@given(seeds, dims)
def test_monotone_in_loewner_order(seed, n):
    rng = np.random.default_rng(seed)
    A = random_positive(n, rng)
    B = A + random_psd(n, rng, scale=norm2(A))
    x = random_unit_vector(n, rng)
    assert fsdet.delta(A, x) <= fsdet.delta(B, x) * (1 + 1e-8)


def _commuting_pair(seed, n):
    rng = np.random.default_rng(seed)
    U = random_unitary(n, rng)
    return (random_positive(n, rng, 1e3, unitary=U), random_positive(n, rng, 1e3, unitary=U),
            random_unit_vector(n, rng))


@given(seeds, dims)
def test_commuting_multiplicative_and_superadditive(seed, n):
    A, B, x = _commuting_pair(seed, n)
    AB = A @ B
    assert fsdet.delta((AB + AB.conj().T) / 2, x) == pytest.approx(fsdet.delta(A, x) * fsdet.delta(B, x), rel=1e-10)
    assert fsdet.delta(A + B, x) >= (fsdet.delta(A, x) + fsdet.delta(B, x)) * (1 - 1e-8)


@given(seeds, dims)
def test_superadditivity_beyond_commuting_pairs(seed, n):
    # degree-one homogeneity plus log-concavity make delta concave, hence superadditive
    rng = np.random.default_rng(seed)
    A, B = random_positive(n, rng, 1e4), random_positive(n, rng, 1e4)
    x = random_unit_vector(n, rng)
    assert pr.superadditivity(A, B, x) >= -1e-8


@given(seeds, dims, st.sampled_from(pr.INTERPOLATION_WEIGHTS))
def test_log_concavity(seed, n, t):
    rng = np.random.default_rng(seed)
    A, B = random_positive(n, rng), random_positive(n, rng)
    x = random_unit_vector(n, rng)
    assert pr.log_concavity(A, B, x, t) >= -1e-8


@given(seeds, dims)
def test_commuting_continuity_bound(seed, n):
    rng = np.random.default_rng(seed)
    U = random_unitary(n, rng)
    lam = np.exp(rng.uniform(-3, 3, n))
    A = (U * lam) @ U.conj().T
    E = (U * (lam * rng.uniform(-0.5, 1.0, n))) @ U.conj().T
    x = random_unit_vector(n, rng)
    assert pr.continuity((A + A.conj().T) / 2, (E + E.conj().T) / 2, x) >= -1e-8


@given(seeds, dims)
def test_additive_reverse_and_chain(seed, n):
    A, x = instance(seed, n)
    assert pr.additive_reverse(A, x) >= -1e-8
    terms = pr.dragomir_terms(A, x)
    assert np.all(np.diff(terms) >= -1e-8)
    assert terms[0] == 0.0


def test_chain_on_a_fixture():
    A = np.diag([1.0, 4.0])
    terms = np.exp(pr.dragomir_terms(A, X2))
    # <|A - 5/2|x, x> = 3/2 = (M - m)/2 makes the two inner Kantorovich powers 1 and K
    assert terms == pytest.approx([1.0, 1.0, 2.0 / (1 * 4) ** 0.5, 25 / 16, 25 / 16])
