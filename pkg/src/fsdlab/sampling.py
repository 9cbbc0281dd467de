"""Seeded random instances: unit vectors, unitaries, Hermitian and positive matrices."""

from __future__ import annotations

import numpy as np

from .spectra import _sym


def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def complex_normal(rng: np.random.Generator, size) -> np.ndarray:
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2)


def random_unit_vector(n: int, rng) -> np.ndarray:
    # normalized complex Gaussians are uniform on the sphere
    rng = rng_from(rng)
    x = complex_normal(rng, n)
    return x / np.linalg.norm(x)


def random_unit_vectors(n: int, count: int, rng) -> np.ndarray:
    """``count`` uniform unit vectors as rows."""
    rng = rng_from(rng)
    X = complex_normal(rng, (count, n))
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def random_unitary(n: int, rng) -> np.ndarray:
    rng = rng_from(rng)
    Q, R = np.linalg.qr(complex_normal(rng, (n, n)))
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_hermitian(n: int, rng, scale: float = 1.0) -> np.ndarray:
    rng = rng_from(rng)
    G = complex_normal(rng, (n, n))
    H = _sym(G)
    return scale * H / max(np.linalg.norm(H, 2), 1e-300)


def random_psd(n: int, rng, scale: float = 1.0, rank: int | None = None) -> np.ndarray:
    """PSD matrix with spectral norm ``scale`` (rank ``rank`` if given)."""
    rng = rng_from(rng)
    k = n if rank is None else rank
    G = complex_normal(rng, (n, k))
    P = _sym(G @ G.conj().T)
    nrm = np.linalg.norm(P, 2)
    return P if nrm == 0 else scale * P / nrm


def random_spectrum(n: int, rng, cond_max: float = 1e6, level: float | None = None) -> np.ndarray:
    """Log-uniform spectrum with condition number at most ``cond_max``.

    The realized condition number is itself drawn log-uniformly from
    ``[1, cond_max]``; ``level`` fixes the geometric centre (random otherwise).
    """
    rng = rng_from(rng)
    log_cond = rng.uniform(0.0, np.log(cond_max))
    centre = rng.uniform(-2.0, 2.0) * np.log(10) if level is None else np.log(level)
    logs = rng.uniform(-0.5, 0.5, size=n) * log_cond
    if n >= 2:
        logs[0], logs[1] = -0.5 * log_cond, 0.5 * log_cond
    return np.sort(np.exp(centre + logs))


def random_positive(n: int, rng, cond_max: float = 1e6, level: float | None = None,
                    unitary: np.ndarray | None = None) -> np.ndarray:
    """Strictly positive matrix with ``cond <= cond_max`` in a random eigenbasis."""
    rng = rng_from(rng)
    lam = random_spectrum(n, rng, cond_max, level)
    U = random_unitary(n, rng) if unitary is None else unitary
    return _sym((U * lam) @ U.conj().T)
