"""Per-instance margins for the determinant identities and inequalities.

Each function takes concrete matrices and returns a margin that is
nonnegative when the inequality holds (or the negated error for identities).
Multiplicative statements are measured in log space, so their margins are
relative.  Tolerances are applied by the caller.
"""

from __future__ import annotations

import numpy as np

from .fsdet import delta, log_mean, p_mean
from .orders import additive_constant, gen_kantorovich, kantorovich, log_specht, specht
from .spectra import eigh, geometric_mean, hadamard, norm2, powm, rayleigh

P_GRID = (-1.0, -0.5, -0.1, -0.01, 0.01, 0.1, 0.5, 1.0)
POWER_EXPONENTS = (-2.0, -1.0, 0.5, 2.0, 3.0)
HOMOGENEITY_FACTORS = (0.5, 2.0, 10.0)
INTERPOLATION_WEIGHTS = (0.25, 0.5, 0.75)
GEOMEAN_WEIGHTS = (0.25, 0.5, 0.75)


def _endpoints(A) -> tuple[float, float]:
    lam = eigh(A).eigenvalues
    return float(lam[0]), float(lam[-1])


def _rel(lo: float, hi: float) -> float:
    """Relative margin of ``lo <= hi``."""
    return (hi - lo) / max(abs(lo), abs(hi), 1e-300)


def am_gm(A, x) -> float:
    d = delta(A, x)
    harm = 1.0 / rayleigh(powm(A, -1.0), x)
    arith = rayleigh(A, x)
    return min(_rel(harm, d), _rel(d, arith))


def norm_sandwich(A, x) -> float:
    m, M = _endpoints(A)
    d = delta(A, x)
    return min(_rel(m, d), _rel(d, M))


def specht_reverse(A, x) -> float:
    m, M = _endpoints(A)
    return float(np.log(specht(M / m)) + log_mean(A, x) - np.log(rayleigh(A, x)))


def p_monotone(A, x) -> float:
    """Worst relative step of the power-mean curve on the fixed grid."""
    vals = [p_mean(A, x, p) for p in P_GRID]
    return min(_rel(a, b) for a, b in zip(vals, vals[1:]))


def p_limit_error(A, x, p: float = 1e-3) -> tuple[float, float]:
    """Returns ``(error, tolerance)`` for the coarse ``p -> 0`` smoke check.

    The tolerance is ``1e-3 (1 + ||A||) log(cond)`` plus a rounding floor of
    ``1e-12 (1 + ||A||)`` so that well-conditioned inputs are not held to zero.
    """
    m, M = _endpoints(A)
    d = delta(A, x)
    err = max(abs(p_mean(A, x, p) - d), abs(p_mean(A, x, -p) - d))
    tol = 1e-3 * (1 + M) * np.log(M / m) + 1e-12 * (1 + M)
    return float(err), float(tol)


def inverse_law(A, x) -> float:
    return -abs(log_mean(powm(A, -1.0), x) + log_mean(A, x))


def power_law(A, x, p: float) -> float:
    return -abs(log_mean(powm(A, p), x) - p * log_mean(A, x))


def homogeneity(A, x, t: float) -> float:
    return -abs(log_mean(t * A, x) - np.log(t) - log_mean(A, x))


def monotonicity(A, B, x) -> float:
    """``A <= B`` implies ``delta(A) <= delta(B)``; caller supplies an ordered pair."""
    return log_mean(B, x) - log_mean(A, x)


def multiplicativity(A, B, x) -> float:
    """Commuting pairs only: ``delta(AB) = delta(A) delta(B)``."""
    AB = A @ B
    AB = (AB + AB.conj().T) / 2
    return -abs(log_mean(AB, x) - log_mean(A, x) - log_mean(B, x))


def superadditivity(A, B, x) -> float:
    """Commuting pairs only: ``delta(A + B) >= delta(A) + delta(B)``."""
    return _rel(delta(A, x) + delta(B, x), delta(A + B, x))


def log_concavity(A, B, x, t: float) -> float:
    mix = log_mean((1 - t) * A + t * B, x)
    return mix - ((1 - t) * log_mean(A, x) + t * log_mean(B, x))


def continuity(A, E, x) -> float:
    """Commuting perturbation: ``|log delta(A+E) - log delta(A)| <= ||E|| / m``."""
    m = min(_endpoints(A)[0], _endpoints(A + E)[0])
    gap = abs(log_mean(A + E, x) - log_mean(A, x))
    bound = norm2(E) / m
    return (bound - gap) / max(bound, 1e-300) if bound > 0 else -gap


def additive_reverse(A, x) -> float:
    m, M = _endpoints(A)
    gap = rayleigh(A, x) - delta(A, x)
    C = additive_constant(m, M)
    scale = max(M, 1e-300)
    return min(gap, C - gap) / scale


def dragomir_terms(A, x) -> np.ndarray:
    """Logs of the five terms of the Kantorovich interpolation chain."""
    m, M = _endpoints(A)
    if M - m <= 1e-12 * M:
        return np.zeros(5)
    dec = eigh(A)
    dev = dec.apply(lambda t: np.abs(t - (m + M) / 2))
    g = rayleigh(dev, x) / (M - m)
    a = rayleigh(A, x)
    lk = np.log(kantorovich(M / m))
    interp = (M - a) / (M - m) * np.log(m) + (a - m) / (M - m) * np.log(M)
    return np.array([0.0, (0.5 - g) * lk, log_mean(A, x) - interp, (0.5 + g) * lk, lk])


def dragomir_chain(A, x) -> float:
    return float(np.diff(dragomir_terms(A, x)).min())


def oppenheim(A, B, x) -> float:
    """Specht sandwich of ``delta(A o B)`` around ``delta(A o I) delta(B o I)``."""
    m1, M1 = _endpoints(A)
    m2, M2 = _endpoints(B)
    I = np.eye(A.shape[0])
    base = log_mean(hadamard(A, I), x) + log_mean(hadamard(B, I), x)
    mid = log_mean(hadamard(A, B), x)
    lower = base - log_specht(M1 / m1) - log_specht(M2 / m2)
    upper = base + log_specht(M1 * M2 / (m1 * m2))
    return min(mid - lower, upper - mid)


def specht_supermultiplicativity(h1: float, h2: float) -> float:
    return log_specht(h1 * h2) - log_specht(h1) - log_specht(h2)


def geomean_log_ratio(A, B, x, alpha: float) -> float:
    G = geometric_mean(A, B, alpha)
    return log_mean(G, x) - (1 - alpha) * log_mean(A, x) - alpha * log_mean(B, x)


def geomean_bounds(A, B, x, alpha: float) -> float:
    mA, MA = _endpoints(A)
    mB, MB = _endpoints(B)
    m, M = min(mA, mB), max(MA, MB)
    h = M / m
    r = geomean_log_ratio(A, B, x, alpha)
    ls = log_specht(h)
    lo = np.log(gen_kantorovich(h * h, alpha)) - ls
    return float(min(r - lo, ls - r))


def commuting_geomean_error(A, B, x, alpha: float) -> float:
    return -abs(geomean_log_ratio(A, B, x, alpha))
