"""Catalog of plurisubharmonic test functions on truncated sequence spaces.

Each catalog entry evaluates ``u(z)`` for ``z`` in ``C^n`` and returns its
Levi form (complex Hessian) in closed form.  The convention is
``<L h, h> = sum_{j,k} d^2u/dz_j dzbar_k h_j conj(h_k) = h^* L h``.
``levi_fd`` rebuilds the same matrix from real second differences and serves
as the independent oracle.

Infinite-dimensional examples are represented by their compressions to the
first ``n`` coordinates.  Where the infinite operator has a different lower
spectral endpoint than the truncation (e.g. ``diag(1/j)``), ``limit_fsd``
records the infinite-dimensional value so reports can flag it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.polynomial import Polynomial

from .sampling import complex_normal, random_unit_vectors, rng_from
from .spectra import TAU_PSD, _sym, eigh, hermitian, is_psd, norm2, scale_of

# -- cutoff used by the moving finite-rank example ----------------------------
# eta(t) = s(t - 1) on [1, 2] with the quintic smoothstep s; 0 below, 1 above.

_X = Polynomial([0.0, 1.0])
_SMOOTH = 6 * _X**5 - 15 * _X**4 + 10 * _X**3
_DSMOOTH = _SMOOTH.deriv()
_ISMOOTH = _SMOOTH.integ()
_A_POLY = _SMOOTH + (1 + _X) * _DSMOOTH


def eta(t):
    x = np.clip(np.asarray(t, dtype=float) - 1.0, 0.0, 1.0)
    return _SMOOTH(x)


def eta_prime(t):
    t = np.asarray(t, dtype=float)
    x = np.clip(t - 1.0, 0.0, 1.0)
    return np.where((t > 1.0) & (t < 2.0), _DSMOOTH(x), 0.0)


def chi(t):
    """``int_0^t eta``."""
    t = np.asarray(t, dtype=float)
    x = np.clip(t - 1.0, 0.0, 1.0)
    return _ISMOOTH(x) + np.clip(t - 2.0, 0.0, None)


def a_moving(t):
    """``eta(t) + t eta'(t)``: the diagonal Levi entry of ``chi(|z_j|^2)``."""
    return eta(t) + np.asarray(t, dtype=float) * eta_prime(t)


def _a_max() -> float:
    crit = [r.real for r in _A_POLY.deriv().roots() if abs(r.imag) < 1e-12 and 0 <= r.real <= 1]
    return float(max([_A_POLY(c) for c in crit] + [_A_POLY(0.0), _A_POLY(1.0)]))


A_MAX = _a_max()


# -- Phi profiles -------------------------------------------------------------


@dataclass(frozen=True)
class PhiProfile:
    name: str
    f: Callable[[float], float]
    d1: Callable[[float], float]
    d2: Callable[[float], float]


PHI_PROFILES = {
    "linear": PhiProfile("linear", lambda t: t, lambda t: 1.0 + 0 * t, lambda t: 0.0 * t),
    "log": PhiProfile("log", np.log1p, lambda t: 1 / (1 + t), lambda t: -1 / (1 + t) ** 2),
    "square": PhiProfile("square", lambda t: t * t, lambda t: 2 * t, lambda t: 2.0 + 0 * t),
    "sqrt": PhiProfile("sqrt", lambda t: np.sqrt(1 + t), lambda t: 0.5 / np.sqrt(1 + t),
                       lambda t: -0.25 * (1 + t) ** -1.5),
    "exp": PhiProfile("exp", np.exp, np.exp, np.exp),
}


def phi_majorant_constant(profile: PhiProfile, t_max: float, grid: int = 4001) -> float:
    """``sup_{0 <= t <= t_max} Phi'(t) + t |Phi''(t)|`` on a grid including endpoints."""
    t = np.linspace(0.0, t_max, grid)
    return float(np.max(profile.d1(t) + t * np.abs(profile.d2(t))))


# -- test functions -----------------------------------------------------------


class TestFunction:
    """A catalog plurisubharmonic function on ``C^n``."""

    __test__ = False  # not a pytest class
    kind: str = ""
    dim: int = 0
    limit_fsd: float | None = None

    def __call__(self, z) -> float:
        return self.eval(z)

    def _point(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex).reshape(-1)
        if z.shape[0] != self.dim:
            raise ValueError(f"{self.kind}: expected a point in C^{self.dim}, got length {z.shape[0]}")
        return z

    def eval(self, z) -> float:
        raise NotImplementedError

    def levi(self, z) -> np.ndarray:
        raise NotImplementedError

    @property
    def constant_levi(self) -> bool:
        return False

    def caveat(self, value: float) -> str | None:
        if self.limit_fsd is None or abs(value - self.limit_fsd) <= 1e-12:
            return None
        return (f"truncation value at n={self.dim}; the infinite-dimensional operator has "
                f"lower spectral endpoint {self.limit_fsd:g}")

    def __repr__(self):
        return f"<{self.kind} n={self.dim}>"


class DiagonalQuadratic(TestFunction):
    """``sum_j w_j |z_j|^2``; constant Levi form ``diag(w)``."""

    def __init__(self, weights, kind: str = "weighted_quadratic", limit_fsd: float | None = None):
        w = np.asarray(weights, dtype=float).reshape(-1)
        if w.size < 1 or np.any(w < 0):
            raise ValueError("weights must be nonnegative and non-empty")
        self.weights = w
        self.dim = w.size
        self.kind = kind
        self.limit_fsd = limit_fsd

    def eval(self, z):
        z = self._point(z)
        return float(np.dot(self.weights, np.abs(z) ** 2))

    def levi(self, z):
        self._point(z)
        return np.diag(self.weights).astype(complex)

    @property
    def constant_levi(self):
        return True


class GeneralQuadratic(TestFunction):
    kind = "general_quadratic"

    def __init__(self, A):
        A = hermitian(A)
        if not is_psd(A):
            raise ValueError("general_quadratic needs a PSD matrix")
        self.A = A
        self.dim = A.shape[0]

    def eval(self, z):
        z = self._point(z)
        return float(np.real(np.vdot(z, self.A @ z)))

    def levi(self, z):
        self._point(z)
        return self.A.copy()

    @property
    def constant_levi(self):
        return True


class Quartic(TestFunction):
    kind = "quartic"
    limit_fsd = 0.0

    def __init__(self, n: int):
        self.dim = int(n)

    def eval(self, z):
        z = self._point(z)
        return float(np.sum(np.abs(z) ** 4))

    def levi(self, z):
        z = self._point(z)
        return np.diag(4 * np.abs(z) ** 2).astype(complex)


class PhiQuadratic(TestFunction):
    """``Phi(<Az, z>)`` with Levi form ``Phi'(q) A + Phi''(q) (Az)(Az)^*``."""

    kind = "phi_quadratic"

    def __init__(self, A, profile: PhiProfile | str = "log", radius: float = 3.0,
                 limit_fsd: float | None = None, grid: int = 2001):
        if isinstance(profile, str):
            profile = PHI_PROFILES[profile]
        A = hermitian(A)
        if not is_psd(A):
            raise ValueError("phi_quadratic needs a PSD matrix")
        self.A = A
        self.dim = A.shape[0]
        self.profile = profile
        self.radius = float(radius)
        self.limit_fsd = limit_fsd
        self.t_max = norm2(A) * self.radius**2
        t = np.linspace(0.0, self.t_max, grid)
        d1, d2 = profile.d1(t), profile.d2(t)
        tol = 1e-12 * max(1.0, float(np.max(np.abs(d1))))
        if np.any(d1 < -tol) or np.any(d1 + t * d2 < -tol):
            raise ValueError(
                f"profile {profile.name!r} violates Phi' >= 0 or Phi' + t Phi'' >= 0 on [0, {self.t_max:g}]"
            )

    def q(self, z) -> float:
        return float(np.real(np.vdot(z, self.A @ z)))

    def eval(self, z):
        z = self._point(z)
        return float(self.profile.f(self.q(z)))

    def levi(self, z):
        z = self._point(z)
        q = self.q(z)
        Az = self.A @ z
        return _sym(self.profile.d1(q) * self.A + self.profile.d2(q) * np.outer(Az, Az.conj()))

    def majorant_constant(self, radius: float | None = None) -> float:
        r = self.radius if radius is None else radius
        return phi_majorant_constant(self.profile, norm2(self.A) * r**2)


class MovingRank(TestFunction):
    """``sum_j chi(|z_j|^2)``: finite-rank Levi form ``diag(a(|z_j|^2))``."""

    kind = "finite_rank_moving"
    limit_fsd = 0.0
    a_max = A_MAX

    def __init__(self, n: int):
        self.dim = int(n)

    def eval(self, z):
        z = self._point(z)
        return float(np.sum(chi(np.abs(z) ** 2)))

    def levi(self, z):
        z = self._point(z)
        return np.diag(a_moving(np.abs(z) ** 2)).astype(complex)


def interleaved_weights(n: int) -> np.ndarray:
    j = np.arange(1, n + 1)
    return np.where(j % 2 == 1, 2.0 / (j + 1), 1.0)


class Interleaved(TestFunction):
    """``sum w_j |z_j|^2 + sum |z_j|^4`` with ``w`` alternating ``1/k`` and ``1``."""

    kind = "interleaved"
    limit_fsd = 0.0

    def __init__(self, n: int):
        self.dim = int(n)
        self.weights = interleaved_weights(self.dim)

    def eval(self, z):
        z = self._point(z)
        a2 = np.abs(z) ** 2
        return float(np.dot(self.weights, a2) + np.sum(a2**2))

    def levi(self, z):
        z = self._point(z)
        return np.diag(self.weights + 4 * np.abs(z) ** 2).astype(complex)


def weighted_quadratic(weights) -> DiagonalQuadratic:
    return DiagonalQuadratic(weights)


def harmonic_quadratic(n: int) -> DiagonalQuadratic:
    return DiagonalQuadratic(1.0 / np.arange(1, n + 1), kind="harmonic_quadratic", limit_fsd=0.0)


def multiplication_L2(n: int) -> DiagonalQuadratic:
    """Midpoint discretization of ``int_0^1 t |h(t)|^2 dt`` on ``n`` cells."""
    t = (np.arange(1, n + 1) - 0.5) / n
    return DiagonalQuadratic(t, kind="multiplication_L2", limit_fsd=0.0)


def general_quadratic(A) -> GeneralQuadratic:
    return GeneralQuadratic(A)


def quartic(n: int) -> Quartic:
    return Quartic(n)


def phi_quadratic(A, profile: PhiProfile | str = "log", radius: float = 3.0, **kw) -> PhiQuadratic:
    return PhiQuadratic(A, profile, radius, **kw)


def finite_rank_moving(n: int) -> MovingRank:
    return MovingRank(n)


def interleaved(n: int) -> Interleaved:
    return Interleaved(n)


def norm_squared(n: int) -> DiagonalQuadratic:
    """``||z||^2``, the model function with Levi form ``I``."""
    return DiagonalQuadratic(np.ones(n), kind="norm_squared")


def eval(f: TestFunction, z) -> float:  # noqa: A001 - mirrors the catalog operation name
    return f.eval(z)


def levi_analytic(f: TestFunction, z) -> np.ndarray:
    return f.levi(z)


# -- finite-difference oracle -------------------------------------------------


def _second_difference(f: TestFunction, z, h, step, f0) -> float:
    return (f.eval(z + step * h) - 2 * f0 + f.eval(z - step * h)) / step**2


def levi_quadratic_form_fd(f: TestFunction, z, h, step: float = 1e-4, f0: float | None = None) -> float:
    """``<L h, h> = (D^2 f(h, h) + D^2 f(ih, ih)) / 4`` by central differences."""
    z = np.asarray(z, dtype=complex)
    h = np.asarray(h, dtype=complex)
    if f0 is None:
        f0 = f.eval(z)
    return 0.25 * (_second_difference(f, z, h, step, f0) + _second_difference(f, z, 1j * h, step, f0))


def _levi_fd_once(f: TestFunction, z, step: float) -> np.ndarray:
    n = f.dim
    f0 = f.eval(z)
    I = np.eye(n, dtype=complex)
    Q = lambda h: levi_quadratic_form_fd(f, z, h, step, f0)  # noqa: E731
    L = np.zeros((n, n), dtype=complex)
    diag = np.array([Q(I[j]) for j in range(n)])
    L[np.diag_indices(n)] = diag
    for j in range(n):
        for k in range(j + 1, n):
            re = (Q(I[j] + I[k]) - diag[j] - diag[k]) / 2
            im = -(Q(I[j] + 1j * I[k]) - diag[j] - diag[k]) / 2
            L[j, k] = re + 1j * im
            L[k, j] = re - 1j * im
    return _sym(L)


def levi_fd(f: TestFunction, z, step: float = 1e-4, richardson: bool = False) -> np.ndarray:
    """Levi form from real second differences along ``h`` and ``ih`` with polarization."""
    if not 1e-6 <= step <= 1e-2:
        raise ValueError(f"step must lie in [1e-6, 1e-2], got {step}")
    z = f._point(z)
    L = _levi_fd_once(f, z, step)
    if richardson:
        L = (4 * _levi_fd_once(f, z, step / 2) - L) / 3
    return L


# -- FSD density --------------------------------------------------------------


def fsd(f: TestFunction, z) -> float:
    """Lower spectral endpoint of the Levi form at ``z`` (clipped at 0)."""
    return max(float(eigh(f.levi(z)).eigenvalues[0]), 0.0)


@dataclass
class FSDResult:
    value: float
    sampled_inf: float
    min_eig: float
    max_eig: float
    caveat: str | None

    @property
    def certified(self) -> bool:
        return self.sampled_inf >= self.value - 1e-8 * max(1.0, self.max_eig)


def fsd_certificate(f: TestFunction, z, samples: int = 256, seed=0) -> FSDResult:
    """FSD value plus ``inf delta`` over random states and the minimizing eigenvector."""
    from .fsdet import log_mean_from
    from .spectra import log_cutoff

    L = f.levi(z)
    dec = eigh(L)
    cut = log_cutoff(L)
    X = random_unit_vectors(f.dim, samples, rng_from(seed))
    X = np.vstack([X, dec.eigenvectors[:, :1].T])
    vals = []
    for x in X:
        lm = log_mean_from(dec, x, cut)
        vals.append(0.0 if lm == float("-inf") else float(np.exp(lm)))
    value = max(float(dec.eigenvalues[0]), 0.0)
    return FSDResult(value, float(min(vals)), float(dec.eigenvalues[0]), float(dec.eigenvalues[-1]),
                     f.caveat(value))


# -- regions and sampled families ---------------------------------------------


@dataclass
class Region:
    """Ball ``B(center, radius)`` with interior and boundary sample counts.

    ``support`` limits samples to the first ``support`` coordinates; this is
    how a point of ``l^2`` with negligible tail is represented in a larger
    truncation.
    """

    center: np.ndarray
    radius: float
    n_interior: int = 64
    n_boundary: int | None = None
    seed: int = 0
    support: int | None = None

    def __post_init__(self):
        self.center = np.asarray(self.center, dtype=complex).reshape(-1)
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.n_boundary is None:
            self.n_boundary = 4 * self.n_interior
        if self.n_interior < 1 or self.n_boundary < 1:
            raise ValueError("sample counts must be >= 1")
        if self.support is not None and not 1 <= self.support <= self.dim:
            raise ValueError("support must lie in [1, dim]")

    @classmethod
    def ball(cls, n: int, radius: float = 1.0, **kw) -> "Region":
        return cls(np.zeros(n, dtype=complex), radius, **kw)

    @property
    def dim(self) -> int:
        return self.center.shape[0]

    def _directions(self, count, rng):
        k = self.support or self.dim
        D = np.zeros((count, self.dim), dtype=complex)
        G = complex_normal(rng, (count, k))
        D[:, :k] = G / np.linalg.norm(G, axis=1, keepdims=True)
        return D, k

    def sample(self) -> tuple[np.ndarray, np.ndarray]:
        """``(interior, boundary)`` sample points as rows."""
        rng = rng_from(self.seed)
        D, k = self._directions(self.n_interior, rng)
        # uniform in the ball of real dimension 2k
        r = self.radius * rng.uniform(size=(self.n_interior, 1)) ** (1.0 / (2 * k))
        interior = self.center + r * D
        Db, _ = self._directions(self.n_boundary, rng)
        boundary = self.center + self.radius * Db
        return interior, boundary


@dataclass
class LeviFamily:
    function: TestFunction | None
    points: np.ndarray
    levis: np.ndarray
    on_boundary: np.ndarray
    region: Region | None = None
    label: str = ""
    _min_eigs: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=complex)
        self.levis = np.asarray(self.levis, dtype=complex)
        if self.levis.ndim != 3 or self.levis.shape[1] != self.levis.shape[2]:
            raise ValueError("levis must have shape (count, n, n)")
        n = self.levis.shape[1]
        if self.points.shape != (len(self.levis), n):
            raise ValueError("points and Levi matrices disagree in count or dimension")
        for z, L in zip(self.points, self.levis):
            if not is_psd(L):
                raise ValueError(f"Levi form at {z} is not PSD")

    @property
    def dim(self) -> int:
        return self.levis.shape[1]

    def __len__(self):
        return len(self.levis)

    @property
    def min_eigs(self) -> np.ndarray:
        if self._min_eigs is None:
            self._min_eigs = np.array([eigh(L).eigenvalues[0] for L in self.levis])
        return self._min_eigs

    @property
    def scale(self) -> float:
        return max([1.0] + [norm2(L) for L in self.levis])

    def sup_rayleigh(self, x) -> float:
        """``max_z <L(z) x, x>`` over the samples."""
        x = np.asarray(x, dtype=complex)
        vals = np.real(np.einsum("i,kij,j->k", x.conj(), self.levis, x))
        return float(vals.max())


def sample_family(f: TestFunction, region: Region) -> LeviFamily:
    if region.dim != f.dim:
        raise ValueError(f"region dimension {region.dim} != function dimension {f.dim}")
    interior, boundary = region.sample()
    pts = np.vstack([interior, boundary])
    levis = np.array([f.levi(z) for z in pts])
    mask = np.r_[np.zeros(len(interior), bool), np.ones(len(boundary), bool)]
    return LeviFamily(f, pts, levis, mask, region, label=f.kind)


def family_from_points(f: TestFunction, points) -> LeviFamily:
    pts = np.atleast_2d(np.asarray(points, dtype=complex))
    levis = np.array([f.levi(z) for z in pts])
    return LeviFamily(f, pts, levis, np.zeros(len(pts), bool), None, label=f.kind)


def constant_family(L, count: int = 1) -> LeviFamily:
    L = hermitian(L)
    n = L.shape[0]
    return LeviFamily(None, np.zeros((count, n)), np.repeat(L[None], count, axis=0),
                      np.zeros(count, bool), None, label="constant")


# -- discretized L^2 state with vanishing normalized determinant --------------


def l2_log_singular_state(n: int) -> tuple[np.ndarray, float]:
    """Midpoint samples of ``t^(-1/2) |log t|^(-1)`` on ``(0, 1/e)``, normalized.

    Returns the unit vector and its normalized determinant against the
    discretized multiplication operator.  In the continuum the determinant is
    0; at finite ``n`` it is positive.
    """
    t = (np.arange(1, n + 1) - 0.5) / n
    h = np.where(t < np.exp(-1), 1.0 / (np.sqrt(t) * np.abs(np.log(t))), 0.0)
    if not np.any(h):
        raise ValueError("n too small: no cell midpoint below 1/e")
    x = h / np.linalg.norm(h)
    # the operator is diagonal, so its spectral weights are |x_j|^2 directly
    return x.astype(complex), float(np.exp(np.dot(x**2, np.log(t))))


CATALOG: dict[str, str] = {
    "weighted": "sum w_j |z_j|^2 (parameter: weights)",
    "harmonic-quadratic": "sum |z_j|^2 / j (parameter: n)",
    "general-quadratic": "<Az, z> (parameter: matrix)",
    "quartic": "sum |z_j|^4 (parameter: n)",
    "multiplication-l2": "discretized int t |h(t)|^2 dt (parameter: n)",
    "moving-rank": "sum chi(|z_j|^2), smoothstep cutoff (parameter: n)",
    "interleaved": "sum w_j |z_j|^2 + sum |z_j|^4, w = 1, 1, 1/2, 1, 1/3, ... (parameter: n)",
    "phi-linear": "<Az, z> via Phi(t) = t (parameters: matrix or n)",
    "phi-log": "log(1 + <Az, z>) (parameters: matrix or n; default A = diag(1/j))",
    "phi-square": "<Az, z>^2 (parameters: matrix or n)",
    "phi-sqrt": "sqrt(1 + <Az, z>) (parameters: matrix or n)",
    "phi-exp": "exp(<Az, z>) (parameters: matrix or n)",
}


def build(kind: str, n: int | None = None, weights=None, matrix=None, radius: float = 3.0) -> TestFunction:
    """Construct a catalog function from its CLI identifier."""
    if kind not in CATALOG:
        raise KeyError(f"unknown catalog kind {kind!r}; known: {', '.join(CATALOG)}")
    if kind == "weighted":
        if weights is None:
            raise ValueError("weighted needs weights")
        return weighted_quadratic(weights)
    if kind == "general-quadratic":
        if matrix is None:
            raise ValueError("general-quadratic needs a matrix")
        return general_quadratic(matrix)
    if kind.startswith("phi-"):
        limit = None
        if matrix is None:
            if n is None:
                raise ValueError(f"{kind} needs n or a matrix")
            matrix = np.diag(1.0 / np.arange(1, n + 1))
            limit = 0.0
        return phi_quadratic(matrix, kind[4:], radius=radius, limit_fsd=limit)
    if n is None:
        raise ValueError(f"{kind} needs n")
    return {
        "harmonic-quadratic": harmonic_quadratic,
        "quartic": quartic,
        "multiplication-l2": multiplication_L2,
        "moving-rank": finite_rank_moving,
        "interleaved": interleaved,
    }[kind](n)
