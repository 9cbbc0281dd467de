"""Sampled checks of maximality criteria and comparison principles.

Every check works on a finite sample of a region in a finite truncation.
Reports say which sufficient or necessary condition held *on the sample*;
none of them asserts maximality of the infinite-dimensional function.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import levi as lv
from .fsdet import delta
from .orders import SpectralBounds, additive_constant, delta_order_sampled, specht
from .sampling import random_unit_vectors, rng_from
from .spectra import TAU_PSD, eigh, hermitian, is_psd, min_eig, norm2, scale_of

DEFAULT_DECAY = 1e-2
DECAY_FLOOR = 1e-12
NULL_STRATEGIES = ("fixed_vector", "averaging_sets", "min_eig_of_sup", "basis_tail")


# -- necessary condition ------------------------------------------------------


@dataclass
class NecessaryReport:
    excluded: bool
    margin: float
    worst_point: np.ndarray
    samples: int
    caveat: str | None

    @property
    def status(self) -> str:
        return "maximality excluded" if self.excluded else "not excluded"


def fsd_necessary_check(family: lv.LeviFamily, tol: float = 1e-9) -> NecessaryReport:
    """Contrapositive of "maximal implies FSD = 0": one sample with FSD > tol excludes."""
    mins = family.min_eigs
    i = int(np.argmax(mins))
    margin = float(mins[i])
    caveat = family.function.caveat(margin) if family.function is not None else None
    return NecessaryReport(margin > tol, margin, family.points[i], len(family), caveat)


# -- approximate null sequences -----------------------------------------------


@dataclass
class NullCertificate:
    strategy: str
    vectors: np.ndarray
    sup_values: np.ndarray
    target: float
    bounds: np.ndarray | None = None
    index_sets: list[list[int]] | None = field(default=None, repr=False)

    @property
    def passes(self) -> bool:
        return bool(self.sup_values[-1] <= self.target)


def _index_sets(family: lv.LeviFamily, k: int, index_sets):
    n = family.dim
    if index_sets is None:
        index_sets = "odd" if isinstance(family.function, lv.Interleaved) else "prefix"
    if index_sets == "prefix":
        sets = [list(range(i)) for i in range(1, k + 1)]
    elif index_sets == "odd":
        sets = [list(range(0, 2 * i, 2)) for i in range(1, k + 1)]
    else:
        sets = [list(s) for s in index_sets]
    if any(max(s) >= n for s in sets):
        raise ValueError(f"index sets exceed truncation dimension {n}; lower k or raise n")
    return sets


def _averaging_bounds(family: lv.LeviFamily, sets) -> np.ndarray | None:
    f = family.function
    if family.region is None or not np.allclose(family.region.center, 0):
        return None
    R2 = family.region.radius**2
    sizes = np.array([len(s) for s in sets], dtype=float)
    if isinstance(f, lv.Quartic):
        return 4 * R2 / sizes
    if isinstance(f, lv.MovingRank):
        return f.a_max * R2 / sizes
    return None


def null_certificate(family: lv.LeviFamily, strategy: str = "averaging_sets", k: int = 32,
                     x=None, index_sets=None, decay: float = DEFAULT_DECAY) -> NullCertificate:
    """Build ``x_1..x_k`` and record ``max_z <L(z) x_i, x_i>`` over the sample.

    Strategies: ``fixed_vector`` repeats ``x`` (default: minimizing eigenvector
    of the mean Levi form); ``averaging_sets`` uses normalized indicator
    vectors of ``I_i`` (prefixes, or odd indices for the interleaved
    example); ``min_eig_of_sup`` repeats the minimizing eigenvector of the
    entrywise sup of ``|L(z)|``; ``basis_tail`` walks ``e_{n-k+1}..e_n``.
    The certificate passes when the last value is below ``decay`` times the
    first (with an absolute floor for exact zeros).
    """
    n = family.dim
    sets = None
    bounds = None
    if strategy == "fixed_vector":
        if x is None:
            x = eigh(family.levis.mean(axis=0)).eigenvectors[:, 0]
        x = np.asarray(x, dtype=complex)
        x = x / np.linalg.norm(x)
        X = np.repeat(x[None], k, axis=0)
    elif strategy == "averaging_sets":
        sets = _index_sets(family, k, index_sets)
        X = np.zeros((len(sets), n), dtype=complex)
        for i, s in enumerate(sets):
            X[i, s] = 1 / np.sqrt(len(s))
        bounds = _averaging_bounds(family, sets)
    elif strategy == "min_eig_of_sup":
        agg = np.max(np.abs(family.levis), axis=0)
        v = eigh(agg).eigenvectors[:, 0]
        X = np.repeat(v[None], k, axis=0)
    elif strategy == "basis_tail":
        if k > n:
            raise ValueError(f"basis_tail needs k <= n ({k} > {n})")
        X = np.eye(n, dtype=complex)[n - k:]
    else:
        raise ValueError(f"unknown strategy {strategy!r}; known: {NULL_STRATEGIES}")
    sups = np.array([family.sup_rayleigh(xi) for xi in X])
    target = max(decay * float(sups[0]), DECAY_FLOOR * family.scale)
    return NullCertificate(strategy, X, sups, target, bounds, sets)


# -- common range -------------------------------------------------------------


def _orthonormal(basis, n) -> np.ndarray:
    B = np.atleast_2d(np.asarray(basis, dtype=complex))
    if B.shape[0] != n and B.shape[1] == n:
        B = B.T
    if B.shape[0] != n:
        raise ValueError(f"basis vectors must have length {n}")
    Q, R = np.linalg.qr(B)
    rank = int(np.sum(np.abs(np.diag(R)) > 1e-12 * max(1.0, np.abs(R).max())))
    return Q[:, :rank]


def _complement(Q, n) -> np.ndarray:
    if Q.shape[1] == 0:
        return np.eye(n, dtype=complex)
    U, _, _ = np.linalg.svd(Q, full_matrices=True)
    return U[:, Q.shape[1]:]


def residual_norms(family: lv.LeviFamily, Q) -> np.ndarray:
    """``||(I - P_E) L(z)||_2`` for each sample, ``E = span(Q)``."""
    n = family.dim
    P = Q @ Q.conj().T if Q.shape[1] else np.zeros((n, n))
    Pc = np.eye(n) - P
    return np.array([norm2(Pc @ L) for L in family.levis])


@dataclass
class CommonRangeReport:
    holds: bool
    max_residual: float
    witness: np.ndarray | None
    witness_sup: float | None
    subspace_dim: int


def common_range_check(family: lv.LeviFamily, basis, tol: float | None = None) -> CommonRangeReport:
    n = family.dim
    Q = _orthonormal(basis, n)
    if Q.shape[1] >= n:
        raise ValueError("E must be a proper subspace")
    if tol is None:
        tol = TAU_PSD * family.scale
    res = residual_norms(family, Q)
    holds = bool(res.max() <= tol)
    witness, wsup = None, None
    if holds:
        witness = _complement(Q, n)[:, 0]
        wsup = family.sup_rayleigh(witness)
    return CommonRangeReport(holds, float(res.max()), witness, wsup, Q.shape[1])


@dataclass
class ApproxRangeResult:
    success: bool
    dim: int
    basis: np.ndarray
    residual: float
    eps: float


def approx_common_range(family: lv.LeviFamily, eps: float) -> ApproxRangeResult:
    """Smallest SVD-leading subspace ``E`` with ``max_z ||(I - P_E) L(z)|| <= eps``."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    n = family.dim
    stacked = np.hstack(list(family.levis))
    U, _, _ = np.linalg.svd(stacked, full_matrices=True)
    for d in range(n + 1):
        Q = U[:, :d]
        r = float(residual_norms(family, Q).max())
        if r <= eps:
            return ApproxRangeResult(d < n, d, Q, r, eps)
    return ApproxRangeResult(False, n, U, 0.0, eps)


@dataclass
class CompactnessReport:
    passes: bool
    subspace_dim: int
    max_fraction: float
    probe_max_distance: float
    range_result: ApproxRangeResult


def collectively_compact_check(family: lv.LeviFamily, eps: float, probes: int = 200, seed=0,
                               max_fraction: float = 0.5) -> CompactnessReport:
    """Finite-dimensional proxy: an ``eps``-common range of dimension ``<= max_fraction * n``.

    Random probes ``L(z) h`` with ``||h|| <= 1`` are measured against the
    subspace as an empirical check of the ``eps``-net.
    """
    rr = approx_common_range(family, eps)
    n = family.dim
    rng = rng_from(seed)
    P = rr.basis @ rr.basis.conj().T if rr.dim else np.zeros((n, n))
    Pc = np.eye(n) - P
    H = random_unit_vectors(n, probes, rng) * rng.uniform(size=(probes, 1))
    idx = rng.integers(0, len(family), size=probes)
    dist = max((float(np.linalg.norm(Pc @ (family.levis[i] @ h))) for i, h in zip(idx, H)), default=0.0)
    ok = rr.success and rr.dim <= max_fraction * n
    return CompactnessReport(ok, rr.dim, max_fraction, dist, rr)


# -- majorants and constant Levi forms -----------------------------------------


@dataclass
class MajorantReport:
    dominated: bool
    domination_margin: float
    min_eig_T: float
    criterion_met: bool
    caveat: str | None


def model_majorant_check(family: lv.LeviFamily, T, tol: float | None = None) -> MajorantReport:
    T = hermitian(T, check=False)
    if not is_psd(T):
        raise ValueError("majorant T must be PSD")
    scale = max(family.scale, scale_of(T))
    if tol is None:
        tol = TAU_PSD * scale
    margin = min(min_eig(T - L) for L in family.levis)
    lo = min_eig(T)
    met = lo <= tol
    caveat = None
    if not met and family.function is not None and family.function.limit_fsd == 0.0:
        caveat = (f"min eig(T) = {lo:.6g} at truncation n={family.dim}; "
                  "the infinite-dimensional majorant has lower endpoint 0")
    return MajorantReport(margin >= -tol, float(margin), float(lo), bool(met), caveat)


@dataclass
class ConstantLeviVerdict:
    constant: bool
    variation: float
    fsd: float | None
    verdict: str
    caveat: str | None


def constant_levi_classify(family: lv.LeviFamily, tol: float = 1e-9) -> ConstantLeviVerdict:
    """For constant Levi forms: maximal iff FSD = 0 iff ``inf sigma(A) = 0``."""
    L0 = family.levis[0]
    var = max(norm2(L - L0) for L in family.levis)
    if var > tol * family.scale:
        return ConstantLeviVerdict(False, float(var), None, "not constant", None)
    f = max(min_eig(L0), 0.0)
    verdict = "maximal" if f <= tol else "not maximal"
    caveat = family.function.caveat(f) if family.function is not None else None
    return ConstantLeviVerdict(True, float(var), f, verdict, caveat)


# -- boundary infimum of quadratics ---------------------------------------------


@dataclass
class BoundaryInfReport:
    boundary_inf: float
    predicted: float
    attained_at: np.ndarray
    holds: bool


def boundary_inf_check(A, region: lv.Region, tol: float = 1e-12) -> BoundaryInfReport:
    """``inf_{boundary} <Az, z>`` against ``radius^2 min_eig(A)``.

    Boundary samples are completed by the scaled minimizing eigenvector, which
    is the point the near-null-direction argument produces.
    """
    A = hermitian(A)
    if not np.allclose(region.center, 0):
        raise ValueError("region must be centred at 0")
    dec = eigh(A)
    _, boundary = region.sample()
    pts = np.vstack([boundary, region.radius * dec.eigenvectors[:, 0][None]])
    vals = np.real(np.einsum("ki,ij,kj->k", pts.conj(), A, pts))
    i = int(np.argmin(vals))
    pred = region.radius**2 * float(dec.eigenvalues[0])
    holds = vals[i] <= region.radius**2 * (float(dec.eigenvalues[0]) + tol * scale_of(A))
    return BoundaryInfReport(float(vals[i]), pred, pts[i], bool(holds))


# -- comparison principles ----------------------------------------------------


COMPARISONS = ("cp1", "cp2", "cp3", "cp4", "bounds", "increasing_limit_demo")


class _Violated(Exception):
    pass


@dataclass
class ComparisonScenario:
    u: lv.TestFunction
    v: lv.TestFunction | None
    region: lv.Region
    bounds: SpectralBounds | None = None
    j: int = 1


@dataclass
class ComparisonReport:
    which: str
    status: str
    margin: float | None = None
    levi_margin: float | None = None
    max_principle_ok: bool | None = None
    diagnostics: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passes(self) -> bool:
        return self.status == "pass"


def _gate(cond: bool, msg: str):
    if not cond:
        raise _Violated(msg)


def _bounds_from(levis, given: SpectralBounds | None, what: str) -> SpectralBounds:
    lo = min(min_eig(L) for L in levis)
    hi = max(float(eigh(L).eigenvalues[-1]) for L in levis)
    if given is None:
        _gate(lo > 0, f"{what}: Levi form not bounded below by a positive constant (min eig {lo:.3e})")
        return SpectralBounds(lo, hi)
    scale = max(1.0, hi)
    _gate(lo >= given.m - TAU_PSD * scale and hi <= given.M + TAU_PSD * scale,
          f"{what}: sampled Levi spectrum [{lo:.6g}, {hi:.6g}] not inside [{given.m:.6g}, {given.M:.6g}]")
    return given


def _circle_points(center, interior, radius, angles=16) -> np.ndarray:
    """Boundary points on the complex lines through ``center`` and each interior sample."""
    out = []
    theta = np.exp(2j * np.pi * np.arange(angles) / angles)
    for z in interior:
        d = z - center
        nd = np.linalg.norm(d)
        if nd == 0:
            continue
        out.append(center + radius * np.outer(theta, d / nd))
    return np.vstack(out) if out else np.zeros((0, len(center)))


def comparison_check(scenario: ComparisonScenario, which: str, order_samples: int = 64,
                     tol: float = 1e-10) -> ComparisonReport:
    """Check hypotheses on the sample, then the conclusion of a comparison principle.

    A failed hypothesis yields status ``hypothesis-violated`` and no
    conclusion is evaluated.
    """
    if which not in COMPARISONS:
        raise ValueError(f"unknown comparison {which!r}; known: {COMPARISONS}")
    sc = scenario
    n = sc.region.dim
    if sc.u.dim != n or (sc.v is not None and sc.v.dim != n):
        raise ValueError("scenario functions and region disagree in dimension")
    interior, boundary = sc.region.sample()
    norm2_ = lambda Z: np.sum(np.abs(Z) ** 2, axis=1)  # noqa: E731
    try:
        if which == "increasing_limit_demo":
            return _increasing_limit(sc, interior, boundary, tol)
        Lu = [sc.u.levi(z) for z in interior]
        I = np.eye(n)
        if which in ("cp1", "cp2"):
            _gate(sc.v is not None, f"{which} needs v")
            Lv = [sc.v.levi(z) for z in interior]
            bnds = _bounds_from(Lv, sc.bounds, "v")
            for k, (A, B) in enumerate(zip(Lu, Lv)):
                _gate(min_eig(A) > 0, f"Levi form of u singular at interior sample {k}")
                ver = delta_order_sampled(A, B, order_samples, seed=k)
                _gate(ver.holds, f"delta-order hypothesis fails at interior sample {k} (gap {ver.margin:.3e})")
            if which == "cp1":
                S = specht(bnds.h)
                w = lambda Z: S * np.array([sc.u(z) for z in Z]) - np.array([sc.v(z) for z in Z])  # noqa: E731
                levi_w = [S * A - B for A, B in zip(Lu, Lv)]
            else:
                C = additive_constant(bnds.m, bnds.M)
                w = lambda Z: (np.array([sc.u(z) for z in Z]) + C * norm2_(Z)  # noqa: E731
                               - np.array([sc.v(z) for z in Z]))
                levi_w = [A + C * I - B for A, B in zip(Lu, Lv)]
            bw = w(boundary)
            _gate(np.all(bw <= tol * max(1.0, np.abs(bw).max())), f"boundary inequality fails (max {bw.max():.3e})")
        elif which in ("cp3", "cp4"):
            ub = np.array([sc.u(z) for z in boundary])
            nb = norm2_(boundary)
            bs = max(1.0, np.abs(ub).max())
            for k, A in enumerate(Lu):
                d = eigh(A).eigenvalues
                if which == "cp3":
                    _gate(d[0] >= 1 - TAU_PSD * max(1.0, d[-1]),
                          f"inf_x delta_x(L_u) = {max(d[0], 0):.6g} < 1 at interior sample {k}")
                else:
                    _gate(d[-1] <= 1 + TAU_PSD, f"sup_x delta_x(L_u) = {d[-1]:.6g} > 1 at interior sample {k}")
            if which == "cp3":
                _gate(np.all(ub - nb <= tol * bs), f"boundary hypothesis u <= |z|^2 fails (max {np.max(ub - nb):.3e})")
                w = lambda Z: np.array([sc.u(z) for z in Z]) - norm2_(Z)  # noqa: E731
                levi_w = [A - I for A in Lu]
            else:
                _gate(np.all(nb - ub <= tol * bs), f"boundary hypothesis u >= |z|^2 fails (max {np.max(nb - ub):.3e})")
                w = lambda Z: norm2_(Z) - np.array([sc.u(z) for z in Z])  # noqa: E731
                levi_w = [I - A for A in Lu]
        else:  # bounds
            bnds = _bounds_from(Lu, sc.bounds, "u")
            ub = np.array([sc.u(z) for z in boundary])
            nb = norm2_(boundary)
            R2, r2 = float(nb.max()), float(nb.min())
            ui = np.array([sc.u(z) for z in interior])
            ni = norm2_(interior)
            lower = bnds.M * (ni - R2) + ub.min()
            upper = bnds.m * (ni - r2) + ub.max()
            scale = max(1.0, float(np.abs(ui).max()), float(np.abs(ub).max()))
            lo_m = float(np.min(ui - lower)) / scale
            up_m = float(np.min(upper - ui)) / scale
            margin = min(lo_m, up_m)
            return ComparisonReport(
                which, "pass" if margin >= -tol else "fail", margin, None, None,
                details={"lower_margin": lo_m, "upper_margin": up_m, "R2": R2, "r2": r2,
                         "m": bnds.m, "M": bnds.M,
                         "max_equality_gap": float(max(np.max(np.abs(ui - lower)), np.max(np.abs(upper - ui))) / scale)},
            )
    except _Violated as exc:
        return ComparisonReport(which, "hypothesis-violated", diagnostics=[str(exc)])

    wi = w(interior)
    scale = max(1.0, float(np.abs(wi).max()), float(np.abs(w(boundary)).max()))
    margin = float(-wi.max()) / scale
    lscale = max(1.0, max(norm2(L) for L in levi_w))
    levi_margin = min(min_eig(L) for L in levi_w) / lscale
    circ = _circle_points(sc.region.center, interior, sc.region.radius)
    bmax = float(np.max(w(np.vstack([boundary, circ]))))
    mp_ok = bool(wi.max() <= bmax + tol * scale)
    ok = margin >= -tol and levi_margin >= -tol
    return ComparisonReport(which, "pass" if ok else "fail", margin, float(levi_margin), mp_ok,
                            details={"interior_max": float(wi.max()), "boundary_max": bmax})


def _increasing_limit(sc: ComparisonScenario, interior, boundary, tol) -> ComparisonReport:
    """``u_j = sum_{k<=j} |z_k|^2`` increases to ``||z||^2``; ``v = r^2`` beats the limit."""
    n = sc.region.dim
    j = sc.j
    _gate(np.allclose(sc.region.center, 0), "increasing-limit demo needs a centred ball")
    _gate(1 <= j < n, f"need 1 <= j < n, got j={j}, n={n}")
    r2 = sc.region.radius**2
    a2 = np.abs(interior) ** 2
    partial = np.cumsum(a2, axis=1)
    monotone = bool(np.all(np.diff(partial, axis=1) >= 0))
    limit = partial[:, -1]
    uj = partial[:, j - 1]
    # u_j has the fixed null direction e_{j+1}
    uj_fn = lv.weighted_quadratic(np.r_[np.ones(j), np.zeros(n - j)])
    null_dir = np.zeros(n)
    null_dir[j] = 1
    null_val = float(np.real(null_dir @ uj_fn.levi(interior[0]) @ null_dir))
    on_boundary = float(np.max(np.abs(np.sum(np.abs(boundary) ** 2, axis=1) - r2)))
    gap = r2 - limit
    margin = float(gap.min())
    ok = monotone and margin > 0 and null_val == 0.0 and on_boundary <= tol * max(1.0, r2) and np.all(uj <= limit)
    return ComparisonReport(
        "increasing_limit_demo", "pass" if ok else "fail", margin, 0.0, None,
        details={"v_at_0": r2, "u_at_0": 0.0, "null_direction_value": null_val,
                 "boundary_deviation": on_boundary, "interior_samples": len(interior),
                 "partial_sums_monotone": monotone},
    )


# -- overall verdict ------------------------------------------------------------


@dataclass
class MaximalityVerdict:
    status: str  # "excluded" | "established" | "undetermined"
    reason: str
    caveat: str | None = None


def maximality_verdict(family: lv.LeviFamily, tol: float = 1e-9, k: int | None = None,
                       majorant=None) -> MaximalityVerdict:
    """Combine the necessary check with the sufficient ones on a sampled family.

    ``established`` means one sufficient criterion held on the sample; when
    none does and the necessary check does not exclude, the answer is
    ``undetermined``.
    """
    nec = fsd_necessary_check(family, tol)
    if nec.excluded:
        return MaximalityVerdict("excluded", f"sampled FSD reaches {nec.margin:.6g} > {tol:g}", nec.caveat)
    n = family.dim
    k = k or max(1, min(32, n // 2))
    for strategy in ("fixed_vector", "averaging_sets", "min_eig_of_sup"):
        try:
            cert = null_certificate(family, strategy, k)
        except ValueError:
            continue
        if cert.passes:
            return MaximalityVerdict("established", f"approximate null sequence ({strategy}) on the sample")
    if majorant is not None:
        rep = model_majorant_check(family, majorant)
        if rep.dominated and rep.criterion_met:
            return MaximalityVerdict("established", "model majorant with vanishing lower endpoint")
    return MaximalityVerdict("undetermined", "no sufficient criterion verified on the sample")
