"""Dense Hermitian linear algebra and spectral functional calculus.

Every operator in the package is a dense complex ``ndarray`` of shape
``(n, n)``.  Functions here accept anything array-like, symmetrize it on the
way in and work through a single eigendecomposition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TAU_HERM = 1e-12
TAU_PSD = 1e-9
EPS_LOG = 1e-12
UNIT_TOL = 1e-12
MAX_DIM = 64


class SpectralError(ValueError):
    """Base class for domain errors raised by the spectral layer."""


class NotHermitianError(SpectralError):
    pass


class NotInvertibleError(SpectralError):
    """Raised when log or a negative power meets the invertibility cutoff."""


class NotPSDError(SpectralError):
    pass


class EigenSolverError(RuntimeError):
    def __init__(self, dim: int, cond: float, cause: Exception | None = None):
        self.dim = dim
        self.cond = cond
        super().__init__(f"eigensolver failed to converge (dim={dim}, cond~{cond:.3e}): {cause}")


def _sym(A: np.ndarray) -> np.ndarray:
    return (A + A.conj().T) / 2


def norm2(A) -> float:
    """Spectral norm."""
    A = np.asarray(A)
    if A.size == 0:
        return 0.0
    return float(np.linalg.norm(A, 2))


def scale_of(*mats) -> float:
    """``max(1, ||A||_2, ...)``: the reference scale for relative tolerances."""
    return max([1.0] + [norm2(M) for M in mats])


def hermitian(A, check: bool = True) -> np.ndarray:
    """Ingest ``A`` as a complex Hermitian matrix.

    The result is always the exact Hermitian part ``(A + A*)/2``.  With
    ``check`` the asymmetry must be below ``TAU_HERM * max(1, ||A||)``.
    """
    A = np.array(A, dtype=complex)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise NotHermitianError(f"expected a non-empty square matrix, got shape {A.shape}")
    if check:
        skew = norm2(A - A.conj().T)
        if skew > TAU_HERM * scale_of(A):
            raise NotHermitianError(f"matrix is not Hermitian: ||A - A*|| = {skew:.3e}")
    return _sym(A)


def unit_vector(x, normalize: bool = False) -> np.ndarray:
    x = np.array(x, dtype=complex).reshape(-1)
    nrm = float(np.linalg.norm(x))
    if normalize:
        if nrm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return x / nrm
    if abs(nrm - 1.0) > UNIT_TOL:
        raise ValueError(f"vector is not a unit vector (norm={nrm!r})")
    return x


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return _sym((V * self.eigenvalues) @ V.conj().T)

    def apply(self, fn) -> np.ndarray:
        """``sum_j fn(lambda_j) v_j v_j*``."""
        V = self.eigenvectors
        return _sym((V * fn(self.eigenvalues)) @ V.conj().T)

    def weights(self, x) -> np.ndarray:
        """Spectral weights ``|<x, v_j>|^2`` of the vector state ``x``."""
        return np.abs(self.eigenvectors.conj().T @ np.asarray(x, dtype=complex)) ** 2


def eigh(A) -> SpectralDecomposition:
    A = hermitian(A, check=False)
    try:
        w, V = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        try:
            cond = float(np.linalg.cond(A))
        except np.linalg.LinAlgError:
            cond = float("inf")
        raise EigenSolverError(A.shape[0], cond, exc) from exc
    return SpectralDecomposition(w, V)


def log_cutoff(A) -> float:
    return EPS_LOG * scale_of(A)


def fun_calc(A, f: str, p: float | None = None) -> np.ndarray:
    """Spectral functional calculus for ``f`` in ``{"log", "exp", "power"}``.

    ``power`` takes the exponent ``p``; ``p == 0`` gives the identity.  Log and
    negative powers refuse spectra at or below the invertibility cutoff.
    Nonnegative powers clip rounding-level negative eigenvalues to zero.
    """
    dec = eigh(A)
    lam = dec.eigenvalues
    cut = log_cutoff(A)
    if f == "exp":
        return dec.apply(np.exp)
    if f == "log" or (f == "power" and p is not None and p < 0):
        if lam[0] <= cut:
            raise NotInvertibleError(
                f"operator is not boundedly invertible: min eigenvalue {lam[0]:.3e} <= cutoff {cut:.3e}"
            )
        if f == "log":
            return dec.apply(np.log)
        return dec.apply(lambda t: t**p)
    if f == "power":
        if p is None:
            raise ValueError("power needs an exponent p")
        if p == 0:
            return np.eye(dec.dim, dtype=complex)
        return dec.apply(lambda t: np.clip(t, 0.0, None) ** p)
    raise ValueError(f"unknown function tag {f!r}")


def logm(A) -> np.ndarray:
    return fun_calc(A, "log")


def expm(A) -> np.ndarray:
    return fun_calc(A, "exp")


def powm(A, p: float) -> np.ndarray:
    return fun_calc(A, "power", p)


def min_eig(A) -> float:
    return float(eigh(A).eigenvalues[0])


def max_eig(A) -> float:
    return float(eigh(A).eigenvalues[-1])


@dataclass(frozen=True)
class PSDCheck:
    holds: bool
    margin: float
    scale: float

    def __bool__(self) -> bool:
        return self.holds


def is_psd(A, scale: float | None = None) -> PSDCheck:
    """PSD test with margin ``lambda_min`` against ``-TAU_PSD * scale``."""
    A = hermitian(A, check=False)
    if scale is None:
        scale = scale_of(A)
    if scale <= 0:
        raise ValueError("scale must be positive")
    lam = min_eig(A)
    return PSDCheck(lam >= -TAU_PSD * scale, lam, scale)


def require_psd(A) -> np.ndarray:
    A = hermitian(A, check=False)
    chk = is_psd(A)
    if not chk:
        raise NotPSDError(f"operator is not positive semidefinite: min eigenvalue {chk.margin:.3e}")
    return A


def require_positive(A) -> np.ndarray:
    """Strict positivity: ``lambda_min`` above the invertibility cutoff."""
    A = hermitian(A, check=False)
    lam = min_eig(A)
    if lam <= log_cutoff(A):
        raise NotInvertibleError(f"operator is not strictly positive: min eigenvalue {lam:.3e}")
    return A


def hadamard(A, B) -> np.ndarray:
    A = hermitian(A, check=False)
    B = hermitian(B, check=False)
    if A.shape != B.shape:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return _sym(A * B)


def geometric_mean(A, B, alpha: float) -> np.ndarray:
    """Weighted operator geometric mean ``A #_alpha B``."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    A = require_positive(A)
    B = require_positive(B)
    if A.shape != B.shape:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    dec = eigh(A)
    half = dec.apply(np.sqrt)
    ihalf = dec.apply(lambda t: 1.0 / np.sqrt(t))
    inner = fun_calc(_sym(ihalf @ B @ ihalf), "power", alpha)
    return _sym(half @ inner @ half)


def rayleigh(A, x) -> float:
    x = np.asarray(x, dtype=complex)
    return float(np.real(np.vdot(x, np.asarray(A) @ x)))
