"""Loewner and chaotic order, Specht/Kantorovich constants and order inequalities."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import fsdet
from .sampling import (
    random_hermitian,
    random_psd,
    random_unit_vectors,
    random_unitary,
    rng_from,
)
from .spectra import (
    TAU_PSD,
    _sym,
    eigh,
    expm,
    hermitian,
    logm,
    max_eig,
    min_eig,
    powm,
    require_positive,
    scale_of,
)

DELTA_S = 1e-8


class HypothesisViolation(ValueError):
    """A theorem's precondition failed on the given instance."""


# -- scalar constants ---------------------------------------------------------


# Taylor coefficients of log S(e^t) in t^2, t^4, ..., t^12
_SPECHT_SERIES = (1 / 8, -1 / 576, 1 / 25920, -1 / 1075200, 1 / 43545600, -5.7245393169114509503e-10)
# the closed form cancels badly for small log h; the series is exact to rounding below this
_SERIES_T = 0.1


def log_specht(h: float) -> float:
    if h < 1:
        raise ValueError(f"Specht ratio needs h >= 1, got {h}")
    if h == 1:
        return 0.0
    t = float(np.log(h))
    if h - 1 <= DELTA_S or t <= _SERIES_T:
        t2 = t * t
        return float(sum(c * t2 ** (k + 1) for k, c in enumerate(_SPECHT_SERIES)))
    return float(np.log(h - 1) + t / (h - 1) - 1 - np.log(t))


def specht(h: float) -> float:
    """Specht's ratio ``(h-1) h^(1/(h-1)) / (e log h)``, with ``S(1) = 1``."""
    return float(np.exp(log_specht(h)))


def specht_p(h: float, p: float) -> float:
    if p <= 0:
        raise ValueError("p must be positive")
    if h < 1:
        raise ValueError(f"Specht ratio needs h >= 1, got {h}")
    return specht(h**p)


def kantorovich(h: float) -> float:
    if h < 1:
        raise ValueError(f"Kantorovich constant needs h >= 1, got {h}")
    return (h + 1) ** 2 / (4 * h)


def gen_kantorovich(h: float, alpha: float) -> float:
    """Generalized Kantorovich constant ``K(h, alpha)``; equals 1 at ``h = 1``."""
    if h < 1:
        raise ValueError(f"generalized Kantorovich constant needs h >= 1, got {h}")
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if h - 1 <= DELTA_S:
        return 1.0
    ha = h**alpha
    first = (ha - h) / ((alpha - 1) * (h - 1))
    second = (alpha - 1) / alpha * (ha - 1) / (ha - h)
    return float(first * second**alpha)


def additive_constant(m: float, M: float, p: float = 1.0) -> float:
    """Additive Kantorovich constant ``C_p(m, M)`` (``C(m, M)`` at ``p = 1``)."""
    if not 0 < m <= M:
        raise ValueError(f"need 0 < m <= M, got m={m}, M={M}")
    if p <= 0:
        raise ValueError("p must be positive")
    if m == M:
        return 0.0
    mp, Mp = m**p, M**p
    return float((Mp - mp) / (p * (np.log(M) - np.log(m))) * log_specht((M / m) ** p))


# -- order verdicts -----------------------------------------------------------


@dataclass
class OrderVerdict:
    relation: str
    holds: bool
    margin: float
    witness: np.ndarray
    scale: float

    def __bool__(self) -> bool:
        return self.holds


def _verdict(relation: str, D: np.ndarray, scale: float) -> OrderVerdict:
    dec = eigh(D)
    margin = float(dec.eigenvalues[0])
    return OrderVerdict(relation, margin >= -TAU_PSD * scale, margin, dec.eigenvectors[:, 0], scale)


def loewner_leq(A, B) -> OrderVerdict:
    """``A <= B`` in the Loewner order: ``B - A`` PSD."""
    A = hermitian(A, check=False)
    B = hermitian(B, check=False)
    if A.shape != B.shape:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return _verdict("loewner", B - A, scale_of(A, B))


def chaotic_leq(A, B) -> OrderVerdict:
    """``B >> A``: ``log B - log A`` PSD."""
    LA = logm(A)
    LB = logm(B)
    if LA.shape != LB.shape:
        raise ValueError(f"dimension mismatch: {LA.shape} vs {LB.shape}")
    return _verdict("chaotic", LB - LA, scale_of(LA, LB))


def delta_order_sampled(A, B, samples: int = 200, seed=0) -> OrderVerdict:
    """Test ``delta(A, x) >= delta(B, x)`` over sampled states, in log space.

    The samples are completed by the eigenvectors of ``log A - log B``, so the
    worst sampled gap equals the chaotic margin of ``chaotic_leq(B, A)``.
    """
    A = require_positive(A)
    B = require_positive(B)
    LA, LB = logm(A), logm(B)
    D = LA - LB
    X = random_unit_vectors(A.shape[0], samples, rng_from(seed)) if samples > 0 else np.zeros((0, A.shape[0]))
    X = np.vstack([X, eigh(D).eigenvectors.T])
    decA, decB = eigh(A), eigh(B)
    gaps = np.array([
        fsdet.log_mean_from(decA, x, 0.0) - fsdet.log_mean_from(decB, x, 0.0) for x in X
    ])
    i = int(np.argmin(gaps))
    scale = scale_of(LA, LB)
    return OrderVerdict("delta_sampled", gaps[i] >= -TAU_PSD * scale, float(gaps[i]), X[i], scale)


@dataclass
class SpectralBounds:
    m: float
    M: float

    def __post_init__(self):
        if not 0 < self.m <= self.M:
            raise ValueError(f"need 0 < m <= M, got m={self.m}, M={self.M}")

    @property
    def h(self) -> float:
        return self.M / self.m

    @classmethod
    def of(cls, B) -> "SpectralBounds":
        lam = eigh(B).eigenvalues
        return cls(float(lam[0]), float(lam[-1]))


@dataclass
class InequalityMargin:
    variant: str
    p: float
    constant_used: float
    margin: float
    scale: float
    witness: np.ndarray = field(repr=False)

    @property
    def holds(self) -> bool:
        return self.margin >= -TAU_PSD * self.scale

    def __bool__(self) -> bool:
        return self.holds


def _margin(variant, p, const, lhs, rhs) -> InequalityMargin:
    dec = eigh(lhs - rhs)
    return InequalityMargin(variant, p, const, float(dec.eigenvalues[0]), scale_of(lhs, rhs),
                            dec.eigenvectors[:, 0])


def _check_kti_hypotheses(A, B, bounds: SpectralBounds | None) -> SpectralBounds:
    A = require_positive(A)
    B = require_positive(B)
    order = chaotic_leq(B, A)
    if not order:
        raise HypothesisViolation(f"A >> B fails: min eig(log A - log B) = {order.margin:.3e}")
    if bounds is None:
        return SpectralBounds.of(B)
    scale = scale_of(B)
    lo, hi = min_eig(B), max_eig(B)
    if lo < bounds.m - TAU_PSD * scale or hi > bounds.M + TAU_PSD * scale:
        raise HypothesisViolation(
            f"spectrum of B [{lo:.6g}, {hi:.6g}] not inside bounds [{bounds.m:.6g}, {bounds.M:.6g}]"
        )
    return bounds


def kti_constant(bounds: SpectralBounds, p: float, variant: str) -> float:
    hp = bounds.h**p
    if variant == "weak":
        return kantorovich(hp)
    if variant == "strong":
        return specht(hp)
    if variant == "additive":
        return additive_constant(bounds.m, bounds.M, p)
    raise ValueError(f"unknown variant {variant!r}")


def verify_kti(A, B, bounds: SpectralBounds | None = None, p: float = 1.0,
               variant: str = "strong") -> InequalityMargin:
    """Margin of the weak, strong or additive Kantorovich-type inequality.

    Preconditions (``A >> B`` and ``m I <= B <= M I``) raise
    ``HypothesisViolation``.  Bounds default to the spectral endpoints of B.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    bounds = _check_kti_hypotheses(A, B, bounds)
    const = kti_constant(bounds, p, variant)
    Ap, Bp = powm(A, p), powm(B, p)
    if variant == "additive":
        return _margin(variant, p, const, Ap + const * np.eye(len(Ap)), Bp)
    return _margin(variant, p, const, const * Ap, Bp)


def mixed_bound(A, B, bounds: SpectralBounds | None = None, p: float = 1.0,
                c: float | None = None) -> InequalityMargin:
    """Margin of ``c A^p + (S - c)/(S - 1) C_add I >= B^p`` for ``c`` in ``[1, S]``."""
    bounds = _check_kti_hypotheses(A, B, bounds)
    S = specht(bounds.h**p)
    if c is None:
        c = S
    if not 1 - 1e-12 <= c <= S * (1 + 1e-12):
        raise ValueError(f"c={c} outside [1, S={S}]")
    cadd = additive_constant(bounds.m, bounds.M, p)
    frac = 0.0 if S == 1.0 else (S - c) / (S - 1)
    Ap, Bp = powm(A, p), powm(B, p)
    lhs = c * Ap + frac * cadd * np.eye(len(Ap))
    return _margin("mixed", p, c, lhs, Bp)


def furuta_check(A, B, p: float, r: float) -> InequalityMargin:
    """Margin of ``A^r >= (A^(r/2) B^p A^(r/2))^(r/(p+r))`` given ``A >> B``."""
    if p < 0 or r < 0 or p + r <= 0:
        raise ValueError("need p, r >= 0 with p + r > 0")
    _check_kti_hypotheses(A, B, None)
    Ar = powm(A, r)
    Ah = powm(A, r / 2)
    inner = _sym(Ah @ powm(B, p) @ Ah)
    rhs = powm(inner, r / (p + r))
    return _margin("furuta", p, r, Ar, rhs)


# -- instances ----------------------------------------------------------------


def niemiec_pair() -> tuple[np.ndarray, np.ndarray]:
    """2x2 pair with ``B >> A`` but not ``B >= A``."""
    A = np.diag([1.0, 4.0]).astype(complex)
    B = np.array([[5.0, 5.0], [5.0, 10.0]], dtype=complex)
    return A, B


def random_chaotic_pair(dim: int, seed=0, spread: float = 1.0, gap: float = 1.0,
                        commuting: bool = False, conjugate: bool = False):
    """Random ``(A, B)`` with ``A >> B``: ``A = exp(K + P)``, ``B = exp(K)``.

    ``K`` is Hermitian with norm ``spread``, ``P`` PSD with norm ``gap``.  With
    ``commuting`` both are diagonal; ``conjugate`` rotates the pair by a common
    random unitary.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = rng_from(seed)
    if commuting:
        K = np.diag(rng.uniform(-spread, spread, dim)).astype(complex)
        P = np.diag(rng.uniform(0.0, gap, dim)).astype(complex)
    else:
        K = random_hermitian(dim, rng, spread)
        P = random_psd(dim, rng, gap) if gap > 0 else np.zeros((dim, dim), complex)
    if conjugate:
        U = random_unitary(dim, rng)
        K = _sym(U @ K @ U.conj().T)
        P = _sym(U @ P @ U.conj().T)
    return expm(K + P), expm(K)


def converse_probe_pair() -> tuple[np.ndarray, np.ndarray]:
    """Fixed noncommuting 2x2 pair with ``min eig(log A - log B) = -0.25``."""
    _, B = niemiec_pair()
    u = np.array([1.0, 1j]) / np.sqrt(2)
    A = expm(logm(B) - 0.25 * np.outer(u, u.conj()))
    return A, B


@dataclass
class ConverseProbe:
    log_order_margin: float
    margins: dict[float, float]
    witness_p: float | None
    witness_margin: float | None

    @property
    def found(self) -> bool:
        return self.witness_p is not None


def kti_converse_probe(A, B, p_grid=(1.0, 0.1, 0.01, 0.001)) -> ConverseProbe:
    """Look for a ``p`` at which the strong inequality fails when ``A >> B`` fails."""
    order = chaotic_leq(B, A)
    bounds = SpectralBounds.of(B)
    margins = {}
    witness = None
    for p in p_grid:
        const = specht(bounds.h**p)
        res = _margin("strong", p, const, const * powm(A, p), powm(B, p))
        margins[p] = res.margin
        if witness is None and not res.holds:
            witness = (p, res.margin)
    return ConverseProbe(order.margin, margins, *(witness or (None, None)))


@dataclass
class SearchHit:
    A: np.ndarray
    B: np.ndarray
    chaotic: OrderVerdict
    loewner: OrderVerdict
    source: str


@dataclass
class SearchResult:
    hits: list[SearchHit]
    trials: int
    random_hits: int

    @property
    def hit_rate(self) -> float:
        return self.random_hits / self.trials if self.trials else 0.0


def counterexample_search(dim: int = 2, trials: int = 1000, seed=0, spread: float = 1.0,
                          gap: float = 1.0) -> SearchResult:
    """Pairs with ``B >> A`` but not ``B >= A``; the Niemiec pair always comes first."""
    if dim < 2:
        raise ValueError("dim must be >= 2: scalars are totally ordered")
    A0, B0 = niemiec_pair()
    hits = [SearchHit(A0, B0, chaotic_leq(A0, B0), loewner_leq(A0, B0), "niemiec")]
    rng = rng_from(seed)
    found = 0
    for i in range(trials):
        big, small = random_chaotic_pair(dim, rng, spread=spread, gap=gap)
        low = loewner_leq(small, big)
        if low:
            continue
        cha = chaotic_leq(small, big)
        # re-verify both orders independently before recording
        if cha and not loewner_leq(small, big).holds:
            found += 1
            hits.append(SearchHit(small, big, cha, low, f"random[{i}]"))
    return SearchResult(hits, trials, found)
