"""Normalized (Fujii--Seo) determinants of positive matrices in a vector state.

For a PSD matrix ``A`` and unit vector ``x`` the log-mean is
``sum_j w_j log(lambda_j)`` with spectral weights ``w_j = |<x, v_j>|^2``; the
normalized determinant is its exponential, i.e. the weighted geometric mean
of the spectrum.  Eigenvalues at or below the invertibility cutoff count as
zero: they force ``-inf`` when they carry weight above ``W_TOL`` and are
dropped otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import spectra
from .sampling import random_unit_vectors, rng_from
from .spectra import (
    NotPSDError,
    TAU_PSD,
    eigh,
    hermitian,
    log_cutoff,
    require_positive,
    scale_of,
    unit_vector,
)

W_TOL = 1e-14


def _psd_decomposition(A):
    A = hermitian(A, check=False)
    dec = eigh(A)
    scale = scale_of(A)
    if dec.eigenvalues[0] < -TAU_PSD * scale:
        raise NotPSDError(f"operator is not positive semidefinite: min eigenvalue {dec.eigenvalues[0]:.3e}")
    return A, dec


def log_mean_from(dec: spectra.SpectralDecomposition, x, cutoff: float) -> float:
    w = dec.weights(x)
    lam = dec.eigenvalues
    null = lam <= cutoff
    if np.any(w[null] > W_TOL):
        return float("-inf")
    keep = ~null
    return float(np.dot(w[keep], np.log(lam[keep])))


def log_mean(A, x) -> float:
    """``<(log A) x, x>`` in the extended sense; may be ``-inf``."""
    x = unit_vector(x)
    A, dec = _psd_decomposition(A)
    return log_mean_from(dec, x, log_cutoff(A))


def delta(A, x) -> float:
    """Normalized determinant ``exp<(log A)x, x>`` with ``exp(-inf) = 0``."""
    lm = log_mean(A, x)
    return 0.0 if lm == float("-inf") else float(np.exp(lm))


def p_mean(A, x, p: float) -> float:
    """Power mean ``<A^p x, x>^(1/p)`` for strictly positive ``A``.

    Evaluated as ``exp(log1p(sum w expm1(p log lambda)) / p)`` so that small
    ``|p|`` does not cancel.
    """
    if p == 0:
        raise ValueError("p must be nonzero")
    x = unit_vector(x)
    A = require_positive(A)
    dec = eigh(A)
    w = dec.weights(x)
    w = w / w.sum()
    s = float(np.dot(w, np.expm1(p * np.log(dec.eigenvalues))))
    return float(np.exp(np.log1p(s) / p))


@dataclass(frozen=True)
class SpectralEndpoint:
    """Closed-form endpoint together with its sampled certificate."""

    value: float
    sampled: float
    samples: int
    bracket_ok: bool


def _sampled_deltas(A, dec, cutoff, samples, rng):
    X = random_unit_vectors(dec.dim, samples, rng) if samples > 0 else np.zeros((0, dec.dim))
    # eigenvector states attain the endpoints exactly
    X = np.vstack([X, dec.eigenvectors.T]) if samples > 0 else dec.eigenvectors.T
    out = []
    for x in X:
        lm = log_mean_from(dec, x, cutoff)
        out.append(0.0 if lm == float("-inf") else float(np.exp(lm)))
    return np.array(out)


def delta_inf(A, samples: int = 256, seed=0, tol: float = 1e-10) -> SpectralEndpoint:
    """``inf_x delta(A, x)``: equal to ``min_eig(A)``, certified by sampling."""
    A, dec = _psd_decomposition(A)
    vals = _sampled_deltas(A, dec, log_cutoff(A), samples, rng_from(seed))
    value = max(float(dec.eigenvalues[0]), 0.0)
    sampled = float(vals.min())
    return SpectralEndpoint(value, sampled, samples, sampled >= value - tol * scale_of(A))


def delta_sup(A, samples: int = 256, seed=0, tol: float = 1e-10) -> SpectralEndpoint:
    A, dec = _psd_decomposition(A)
    vals = _sampled_deltas(A, dec, log_cutoff(A), samples, rng_from(seed))
    value = float(dec.eigenvalues[-1])
    sampled = float(vals.max())
    return SpectralEndpoint(value, sampled, samples, sampled <= value + tol * scale_of(A))


@dataclass
class DegeneracyReport:
    """The six equivalent degeneracy conditions evaluated by separate routes.

    Keys of ``conditions``: 1 inf of delta vanishes, 2 inf of Rayleigh
    quotients vanishes, 3 a unit sequence with vanishing Rayleigh quotient,
    4 a unit sequence with ``||A x|| -> 0``, 5 zero in the spectrum,
    6 not invertible.
    """

    conditions: dict[int, bool]
    min_eigenvalue: float
    witness: np.ndarray
    cutoff: float

    @property
    def consistent(self) -> bool:
        return len(set(self.conditions.values())) == 1

    @property
    def degenerate(self) -> bool:
        if not self.consistent:
            raise RuntimeError(f"degeneracy conditions disagree: {self.conditions}")
        return self.conditions[1]


def degeneracy_report(A) -> DegeneracyReport:
    A, dec = _psd_decomposition(A)
    cut = log_cutoff(A)
    lam = dec.eigenvalues
    V = dec.eigenvectors
    v = V[:, 0]
    inf_delta = min(
        (0.0 if (lm := log_mean_from(dec, V[:, j], cut)) == float("-inf") else float(np.exp(lm)))
        for j in range(dec.dim)
    )
    try:
        spectra.fun_calc(A, "power", -1.0)
        invertible = True
    except spectra.NotInvertibleError:
        invertible = False
    conds = {
        1: inf_delta <= cut,
        2: float(lam[0]) <= cut,
        3: spectra.rayleigh(A, v) <= cut,
        4: float(np.linalg.norm(A @ v)) <= cut,
        5: bool(np.any(np.abs(lam) <= cut)),
        6: not invertible,
    }
    return DegeneracyReport(conds, float(lam[0]), v, cut)


@dataclass
class CommutantResult:
    sampled_inf: float
    delta: float
    witness: np.ndarray
    witness_value: float
    trials: int
    values: np.ndarray = field(repr=False)


def commutant_variational(A, x, trials: int = 500, seed=0) -> CommutantResult:
    """Sample ``B >= 0`` commuting with ``A`` and normalized to ``delta(B, x) = 1``.

    Trials alternate between smooth functions of ``A`` (exponentials of a
    random cubic in ``log A``) and arbitrary positive values on the
    eigenvectors.  The closed-form minimizer ``delta(A, x) A^{-1}`` is
    returned as ``witness``.
    """
    x = unit_vector(x)
    A = require_positive(A)
    rng = rng_from(seed)
    dec = eigh(A)
    lam = dec.eigenvalues
    w = dec.weights(x)
    ell = np.log(lam)
    spread = max(float(ell[-1] - ell[0]), 1e-12)
    t = (ell - ell.mean()) / spread
    d = delta(A, x)
    vals = np.empty(trials)
    for i in range(trials):
        if i % 2 == 0:
            c = rng.normal(size=4) * np.array([0.0, 2.0, 1.0, 0.5])
            logg = c[0] + c[1] * t + c[2] * t**2 + c[3] * t**3
        else:
            logg = rng.normal(scale=1.5, size=dec.dim)
        logg = logg - np.dot(w, logg)  # enforces delta(B, x) = 1
        vals[i] = float(np.dot(w, lam * np.exp(logg)))
    witness = d * dec.apply(lambda s: 1.0 / s)
    witness_value = float(np.real(np.vdot(x, A @ witness @ x)))
    sampled = float(vals.min()) if trials > 0 else float("inf")
    return CommutantResult(sampled, d, witness, witness_value, trials, vals)
