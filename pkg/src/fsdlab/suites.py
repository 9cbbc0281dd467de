"""Check suites executed by the runner.

Each suite returns a list of :class:`CheckRecord`.  Randomized checks sweep
``config.trials`` seeded instances over ``config.dims`` and report the worst
margin; a failing record carries the offending instance so it can be replayed
without the generator.
"""

from __future__ import annotations

import time
from typing import Callable

import numpy as np

from . import fsdet
from . import levi as lv
from . import maximality as mx
from . import orders as od
from . import properties as pr
from .runner import CheckRecord, Context, encode_array
from .sampling import complex_normal, random_positive, random_psd, random_unit_vector, random_unitary
from .spectra import TAU_PSD, eigh, is_psd, norm2, powm, scale_of

Instance = dict


def _record(check, anchor, margin, tol, witness=None, t0=None, status=None) -> CheckRecord:
    if status is None:
        ok = margin is not None and np.isfinite(margin) and margin >= -tol
        status = "pass" if ok else "fail"
    wall = 0.0 if t0 is None else time.perf_counter() - t0
    return CheckRecord(check, anchor, status, None if margin is None else float(margin), witness or {}, wall)


def sweep(ctx: Context, check: str, anchor: str, fn: Callable[[np.random.Generator, int], tuple[float, Instance]],
          tol: float, lo: int = 2, hi: int = 64, trials: int | None = None) -> CheckRecord:
    """Worst margin of ``fn(rng, dim)`` over seeded trials."""
    t0 = time.perf_counter()
    trials = ctx.config.trials if trials is None else trials
    worst, wit = np.inf, {}
    for t in range(trials):
        d = ctx.dim(t, lo, hi)
        margin, inst = fn(ctx.rng(check, t), d)
        if not np.isfinite(margin):
            margin = -np.inf
        if margin < worst:
            worst, wit = margin, {"trial": t, "dim": d, "instance": inst}
    rec = _record(check, anchor, worst, tol, t0=t0)
    if rec.status == "pass":
        wit.pop("instance", None)
    else:
        wit["instance"] = {k: encode_array(v) if isinstance(v, np.ndarray) else v
                           for k, v in wit["instance"].items()}
    wit["trials"] = trials
    rec.witness = wit
    return rec


def _pos(rng, d, cond=1e6):
    return random_positive(d, rng, cond_max=cond)


def _commuting(rng, d, cond=1e3):
    U = random_unitary(d, rng)
    return random_positive(d, rng, cond, unitary=U), random_positive(d, rng, cond, unitary=U)


# -- fsdet-properties ---------------------------------------------------------


def _delta_fixtures() -> float:
    x2 = np.array([1.0, 1.0]) / np.sqrt(2)
    errs = []
    for t in (0.5, 1.0, 3.0):
        for d in (1, 3):
            x = np.ones(d) / np.sqrt(d)
            errs.append(abs(fsdet.delta(t * np.eye(d), x) - t) - 1e-12)
    errs.append(abs(fsdet.delta(np.diag([1.0, 4.0]), x2) - 2.0) - 1e-10)
    errs.append(0.0 if fsdet.delta(np.diag([0.0, 4.0]), x2) == 0.0 else 1.0)
    return -max(max(errs), 0.0)


def fsdet_suite(ctx: Context) -> list[CheckRecord]:
    rel, exact = ctx.tol["rel"], ctx.tol["exact"]
    out = [_record("delta-fixtures", "normalized determinant of scalar and diagonal fixtures",
                   _delta_fixtures(), 0.0)]

    def single(prop):
        def fn(rng, d):
            A = _pos(rng, d)
            x = random_unit_vector(d, rng)
            return prop(A, x), {"A": A, "x": x}
        return fn

    for name, anchor, prop in [
        ("am-gm", "harmonic <= normalized determinant <= arithmetic", pr.am_gm),
        ("norm-sandwich", "inverse-norm and norm bounds", pr.norm_sandwich),
        ("specht-reverse", "Specht reverse inequality", pr.specht_reverse),
        ("inverse-law", "determinant of the inverse", pr.inverse_law),
        ("additive-reverse", "additive control of the arithmetic-geometric gap", pr.additive_reverse),
        ("dragomir-chain", "Kantorovich log-linear interpolation chain", pr.dragomir_chain),
    ]:
        out.append(sweep(ctx, name, anchor, single(prop), rel))

    out.append(sweep(ctx, "p-monotone", "power means are monotone in p", single(pr.p_monotone), exact))

    def p_limit(rng, d):
        A = _pos(rng, d)
        x = random_unit_vector(d, rng)
        err, tol = pr.p_limit_error(A, x)
        return (tol - err) / tol, {"A": A, "x": x}

    out.append(sweep(ctx, "p-limit", "power means converge as p -> 0 (smoke test)", p_limit, 0.0))

    def power(rng, d):
        x = random_unit_vector(d, rng)
        worst, inst = np.inf, {}
        for p in pr.POWER_EXPONENTS:
            A = _pos(rng, d, cond=min(1e6, 1e6 ** (1 / abs(p))))
            m = pr.power_law(A, x, p) / max(1.0, abs(p) * abs(fsdet.log_mean(A, x)))
            if m < worst:
                worst, inst = m, {"A": A, "x": x, "p": p}
        return worst, inst

    out.append(sweep(ctx, "power-law", "determinant of real powers", power, rel))

    def homog(rng, d):
        A = _pos(rng, d)
        x = random_unit_vector(d, rng)
        return min(pr.homogeneity(A, x, t) for t in pr.HOMOGENEITY_FACTORS), {"A": A, "x": x}

    out.append(sweep(ctx, "homogeneity", "positive homogeneity", homog, rel))

    def mono(rng, d):
        A = _pos(rng, d)
        B = A + random_psd(d, rng, scale=norm2(A) * rng.uniform(0.01, 1.0))
        x = random_unit_vector(d, rng)
        return pr.monotonicity(A, B, x), {"A": A, "B": B, "x": x}

    out.append(sweep(ctx, "monotonicity", "monotone in the Loewner order", mono, rel))

    def mult(rng, d):
        A, B = _commuting(rng, d)
        x = random_unit_vector(d, rng)
        return pr.multiplicativity(A, B, x), {"A": A, "B": B, "x": x}

    out.append(sweep(ctx, "multiplicativity", "multiplicative on commuting pairs", mult, exact))

    def supadd(rng, d):
        A, B = _commuting(rng, d)
        x = random_unit_vector(d, rng)
        return pr.superadditivity(A, B, x), {"A": A, "B": B, "x": x}

    out.append(sweep(ctx, "superadditivity", "superadditive on commuting pairs", supadd, rel))

    def logc(rng, d):
        A, B = _pos(rng, d), _pos(rng, d)
        x = random_unit_vector(d, rng)
        return min(pr.log_concavity(A, B, x, t) for t in pr.INTERPOLATION_WEIGHTS), {"A": A, "B": B, "x": x}

    out.append(sweep(ctx, "log-concavity", "log-concavity along segments", logc, rel))

    def cont(rng, d):
        U = random_unitary(d, rng)
        A = random_positive(d, rng, 1e6, unitary=U)
        lam = eigh(A).eigenvalues
        # E = f(A) with A + E still positive
        e = lam * rng.uniform(-0.5, 1.0, size=d)
        E = (U * e) @ U.conj().T
        E = (E + E.conj().T) / 2
        x = random_unit_vector(d, rng)
        return pr.continuity(A, E, x), {"A": A, "E": E, "x": x}

    out.append(sweep(ctx, "continuity", "Lipschitz continuity of log delta under commuting perturbation", cont, rel))

    def commutant(rng, d):
        A = _pos(rng, d)
        x = random_unit_vector(d, rng)
        res = fsdet.commutant_variational(A, x, trials=50, seed=rng)
        m = min(res.sampled_inf - res.delta, -abs(res.witness_value - res.delta)) / res.delta
        return m, {"A": A, "x": x}

    out.append(sweep(ctx, "commutant-infimum", "variational formula over the commutant", commutant, rel))

    def endpoints(rng, d):
        A = _pos(rng, d)
        lo, hi = fsdet.delta_inf(A, 32, rng), fsdet.delta_sup(A, 32, rng)
        lam = eigh(A).eigenvalues
        err = max(abs(lo.value - lam[0]), abs(hi.value - lam[-1])) / lam[-1]
        ok = lo.bracket_ok and hi.bracket_ok
        return (-err if ok else -1.0), {"A": A}

    out.append(sweep(ctx, "spectral-endpoints", "inf and sup of delta are the spectral endpoints", endpoints, rel))

    def degen(rng, d):
        singular = bool(rng.integers(2))
        A = random_psd(d, rng, rank=d - 1 if singular else None) if d > 1 else np.eye(1) * (0.0 if singular else 1.0)
        if not singular:
            A = A + 1e-3 * np.eye(d)
        rep = fsdet.degeneracy_report(A)
        return (0.0 if rep.consistent and rep.conditions[1] == singular else -1.0), {"A": A}

    out.append(sweep(ctx, "degeneracy-equivalence", "six equivalent degeneracy conditions", degen, 0.0, lo=1))
    return out


# -- orders -------------------------------------------------------------------


def _niemiec_record() -> CheckRecord:
    A, B = od.niemiec_pair()
    cha, low = od.chaotic_leq(A, B), od.loewner_leq(A, B)
    margin = min(cha.margin + 1e-10, -0.05 - low.margin)
    return _record("niemiec-fixture", "chaotic but not Loewner ordered 2x2 pair", margin, 0.0,
                   {"chaotic_margin": cha.margin, "loewner_margin": low.margin})


def _scalar_constants() -> tuple[float, dict]:
    hs = np.linspace(1.0, 100.0, 2000)
    S = np.array([od.specht(h) for h in hs])
    mono = float(np.diff(S).min())
    grid = [(m, m * h) for m in (0.1, 1.0, 7.0) for h in (1.5, 2.0, 6.0, 10.0, 50.0)]
    below_M = min(M - od.additive_constant(m, M) for m, M in grid) / 50
    above_m = min(od.additive_constant(m, M) - m for m, M in grid if M / m >= 6)
    return min(mono, below_M, above_m), {"specht_step": mono, "C_below_M": below_M, "C_above_m": above_m}


def orders_kti_suite(ctx: Context) -> list[CheckRecord]:
    psd = ctx.tol["psd"]
    out = [_niemiec_record()]
    t0 = time.perf_counter()
    m, w = _scalar_constants()
    out.append(_record("scalar-constants", "Specht monotone; m < C(m, M) < M where claimed", m, 0.0, w, t0))

    def equiv(rng, d):
        if rng.integers(2):
            A, B = od.random_chaotic_pair(d, rng, conjugate=True)
        else:
            A, B = _pos(rng, d, 1e3), _pos(rng, d, 1e3)
        ver = od.delta_order_sampled(A, B, 64, rng)
        cha = od.chaotic_leq(B, A)
        agree = ver.holds == cha.holds and abs(ver.margin - cha.margin) <= 1e-8 * max(1.0, cha.scale)
        return (0.0 if agree else -1.0), {"A": A, "B": B}

    out.append(sweep(ctx, "delta-order-equivalence", "sampled delta order agrees with the chaotic order", equiv, 0.0))

    def l_implies_c(rng, d):
        A = _pos(rng, d, 1e3)
        B = A + random_psd(d, rng, scale=norm2(A) * rng.uniform(0.0, 1.0))
        cha = od.chaotic_leq(A, B)
        return cha.margin / cha.scale, {"A": A, "B": B}

    out.append(sweep(ctx, "loewner-implies-chaotic", "operator monotonicity of the logarithm", l_implies_c, psd))

    def commuting(rng, d):
        a = np.exp(rng.uniform(-2, 2, d))
        b = a * np.exp(rng.uniform(-0.5, 1.0, d))
        A, B = np.diag(a), np.diag(b)
        agree = od.loewner_leq(A, B).holds == od.chaotic_leq(A, B).holds
        return (0.0 if agree else -1.0), {"A": A, "B": B}

    out.append(sweep(ctx, "commuting-equivalence", "commuting pairs: Loewner iff chaotic", commuting, 0.0))

    for variant in ("weak", "strong", "additive"):
        def kti(rng, d, variant=variant):
            A, B = od.random_chaotic_pair(d, rng, conjugate=True)
            worst, inst = np.inf, {}
            for p in (0.5, 1.0, 2.0):
                res = od.verify_kti(A, B, p=p, variant=variant)
                if res.margin / res.scale < worst:
                    worst, inst = res.margin / res.scale, {"A": A, "B": B, "p": p}
            return worst, inst
        out.append(sweep(ctx, f"kti-{variant}", f"{variant} Kantorovich-type inequality under the chaotic order",
                         kti, psd))

    def mixed(rng, d):
        A, B = od.random_chaotic_pair(d, rng, conjugate=True)
        worst, inst = np.inf, {}
        for p in (0.5, 1.0, 2.0):
            S = od.specht(od.SpectralBounds.of(B).h ** p)
            for c in (1.0, (1 + S) / 2, S):
                res = od.mixed_bound(A, B, p=p, c=c)
                if res.margin / res.scale < worst:
                    worst, inst = res.margin / res.scale, {"A": A, "B": B, "p": p, "c": c}
        return worst, inst

    out.append(sweep(ctx, "kti-mixed", "interpolation between strong and additive forms", mixed, psd))

    t0 = time.perf_counter()
    A, B = od.converse_probe_pair()
    probe = od.kti_converse_probe(A, B)
    ok = probe.log_order_margin <= -0.1 and probe.found
    out.append(_record(
        "kti-converse-probe", "failure of the strong inequality without the chaotic order",
        probe.witness_margin if probe.found else None, 0.0,
        {"log_order_margin": probe.log_order_margin, "witness_p": probe.witness_p,
         "margins": {str(p): v for p, v in probe.margins.items()},
         "A": encode_array(A), "B": encode_array(B)},
        t0, status="pass" if ok else "fail"))
    return out


FURUTA_GRID = [(p, r) for p in (0.5, 1.0, 2.0) for r in (0.5, 1.0, 2.0)] + [(p, 0.0) for p in (0.5, 1.0, 2.0)]


def orders_furuta_suite(ctx: Context) -> list[CheckRecord]:
    psd = ctx.tol["psd"]

    def furuta(rng, d):
        A, B = od.random_chaotic_pair(d, rng, conjugate=True)
        worst, inst = np.inf, {}
        for p, r in FURUTA_GRID:
            res = od.furuta_check(A, B, p, r)
            if res.margin / res.scale < worst:
                worst, inst = res.margin / res.scale, {"A": A, "B": B, "p": p, "r": r}
        return worst, inst

    out = [sweep(ctx, "furuta-random", "Furuta-type inequality under the chaotic order", furuta, psd)]
    t0 = time.perf_counter()
    A, B = od.niemiec_pair()
    # B >> A for the Niemiec pair, so B plays the larger role
    ms = [od.furuta_check(B, A, p, r) for p, r in FURUTA_GRID]
    worst = min(m.margin / m.scale for m in ms)
    r0 = max(abs(m.margin) for (p, r), m in zip(FURUTA_GRID, ms) if r == 0)
    out.append(_record("furuta-niemiec", "Furuta-type inequality on the Niemiec pair", worst, psd,
                       {"r0_identity_error": r0}, t0))
    out.append(_record("furuta-r0-identity", "zero exponent gives the identity on both sides", -r0, 1e-12))
    return out


def orders_means_suite(ctx: Context) -> list[CheckRecord]:
    rel, exact = ctx.tol["rel"], ctx.tol["exact"]

    def opp(rng, d):
        A, B = _pos(rng, d, 1e3), _pos(rng, d, 1e3)
        x = random_unit_vector(d, rng)
        return pr.oppenheim(A, B, x), {"A": A, "B": B, "x": x}

    out = [sweep(ctx, "oppenheim", "Specht bounds for Hadamard products", opp, rel)]
    t0 = time.perf_counter()
    hs = np.geomspace(1.01, 50.0, 40)
    sm = min(pr.specht_supermultiplicativity(a, b) for a in hs for b in hs)
    out.append(_record("specht-supermultiplicative", "S(h1) S(h2) <= S(h1 h2) on a grid", sm, rel, t0=t0))

    def gm(rng, d):
        A, B = _pos(rng, d, 1e3), _pos(rng, d, 1e3)
        x = random_unit_vector(d, rng)
        return min(pr.geomean_bounds(A, B, x, a) for a in pr.GEOMEAN_WEIGHTS), {"A": A, "B": B, "x": x}

    out.append(sweep(ctx, "geomean-bounds", "Specht and generalized Kantorovich bounds for weighted geometric means",
                     gm, rel))

    def gm_comm(rng, d):
        A, B = _commuting(rng, d)
        x = random_unit_vector(d, rng)
        return min(pr.commuting_geomean_error(A, B, x, a) for a in pr.GEOMEAN_WEIGHTS), {"A": A, "B": B, "x": x}

    out.append(sweep(ctx, "geomean-commuting", "commuting pairs: geometric-mean identity", gm_comm, rel))
    return out


# -- levi-oracle ----------------------------------------------------------------


def catalog_instance(kind: str, n: int, rng) -> lv.TestFunction:
    if kind == "weighted":
        w = rng.uniform(0.0, 2.0, n)
        w[rng.integers(n)] = 0.0
        return lv.build(kind, weights=w)
    if kind == "general-quadratic":
        return lv.build(kind, matrix=random_psd(n, rng))
    return lv.build(kind, n=n)


def random_points(n: int, count: int, rng, radius: float = 2.5) -> np.ndarray:
    G = complex_normal(rng, (count, n))
    G /= np.linalg.norm(G, axis=1, keepdims=True)
    return G * radius * rng.uniform(0.05, 1.0, (count, 1))


def levi_oracle_suite(ctx: Context) -> list[CheckRecord]:
    tol = ctx.tol["levi"]
    out = []
    for kind in lv.CATALOG:
        def fd(rng, d, kind=kind):
            f = catalog_instance(kind, d, rng)
            worst, inst = np.inf, {}
            for z in random_points(d, 4, rng):
                L = f.levi(z)
                err = norm2(lv.levi_fd(f, z) - L) / max(1.0, norm2(L))
                if -err < worst:
                    worst, inst = -err, {"kind": kind, "z": z}
            return worst, inst

        def psd(rng, d, kind=kind):
            f = catalog_instance(kind, d, rng)
            worst, inst = np.inf, {}
            for z in random_points(d, 5, rng):
                chk = is_psd(f.levi(z))
                m = chk.margin / chk.scale
                if m < worst:
                    worst, inst = m, {"kind": kind, "z": z}
            return worst, inst

        out.append(sweep(ctx, f"fd-{kind}", "analytic Levi form matches finite differences", fd, tol, 2, 8))
        out.append(sweep(ctx, f"psd-{kind}", "catalog functions are plurisubharmonic", psd, TAU_PSD, 2, 8))

    t0 = time.perf_counter()
    errs, caveats = [], True
    for n in (4, 8, 16):
        f = lv.harmonic_quadratic(n)
        r = lv.fsd_certificate(f, np.zeros(n))
        errs.append(abs(r.value - 1 / n))
        caveats &= r.caveat is not None
    errs.append(lv.fsd(lv.quartic(3), np.array([1, 1j, 0])))
    w = np.array([0.3, 0.7, 1.2])
    errs.append(abs(lv.fsd(lv.weighted_quadratic(w), np.ones(3)) - 0.3))
    out.append(_record("fsd-fixtures", "FSD of harmonic, quartic and weighted fixtures",
                       -max(errs) if caveats else -1.0, 1e-12, {"max_error": max(errs), "caveats": caveats}, t0))
    return out


# -- maximality-criteria --------------------------------------------------------


def _certificate_bound_margin(f, R, k, seed) -> float:
    region = lv.Region.ball(f.dim, R, n_interior=64, seed=seed)
    fam = lv.sample_family(f, region)
    cert = mx.null_certificate(fam, "averaging_sets", k)
    return float(np.min(cert.bounds - cert.sup_values))


def maximality_suite(ctx: Context) -> list[CheckRecord]:
    cert = ctx.tol["cert"]
    seed = ctx.config.seed
    out = []

    t0 = time.perf_counter()
    qm = min(_certificate_bound_margin(lv.quartic(32), R, 32, seed) for R in (1.0, 2.0))
    out.append(_record("quartic-averaging", "averaging certificate 4R^2/k for the quartic", qm, cert, t0=t0))
    t0 = time.perf_counter()
    mm = min(_certificate_bound_margin(lv.finite_rank_moving(32), R, 32, seed) for R in (1.0, 2.0))
    out.append(_record("moving-rank-averaging", "averaging certificate M_a R^2/k for the moving-rank example",
                       mm, cert, t0=t0))

    t0 = time.perf_counter()
    n, k = 8, 5
    fam = lv.sample_family(lv.weighted_quadratic(np.r_[np.linspace(1, 2, k), np.zeros(n - k)]),
                           lv.Region.ball(n, 1.0, n_interior=16, seed=seed))
    hit = mx.common_range_check(fam, np.eye(n)[:, :k])
    mov = lv.family_from_points(lv.finite_rank_moving(n), 2 * np.eye(n))
    miss = [mx.common_range_check(mov, np.eye(n)[:, list(S)]).holds
            for S in (range(n - 1), range(1, n), range(0, n, 2))]
    ok = hit.holds and abs(hit.witness_sup) <= 1e-12 and not any(miss)
    out.append(_record("common-range", "common range: kernel family passes, moving rank fails",
                       hit.max_residual if ok else None, 0.0,
                       {"kernel_residual": hit.max_residual, "moving_rank_passes": miss}, t0,
                       status="pass" if ok else "fail"))

    def necessary(rng, d):
        floor = float(rng.choice([0.0, 0.3, 0.5, 1.0]))
        w = floor + rng.uniform(0.0, 1.0, d)
        w[rng.integers(d)] = floor
        fam = lv.sample_family(lv.weighted_quadratic(w), lv.Region.ball(d, 1.0, n_interior=8, seed=rng))
        rep = mx.fsd_necessary_check(fam)
        return (0.0 if rep.excluded == (floor >= 0.3) else -1.0), {"weights": w}

    out.append(sweep(ctx, "necessary-condition", "positive FSD on a sample excludes maximality", necessary, 0.0))

    t0 = time.perf_counter()
    fam = lv.sample_family(lv.quartic(16), lv.Region.ball(16, 1.0, n_interior=32, support=8, seed=seed))
    rep = mx.fsd_necessary_check(fam)
    out.append(_record("necessary-quartic", "quartic with an l2 tail is not excluded", -rep.margin, 1e-12,
                       {"margin": rep.margin}, t0))

    t0 = time.perf_counter()
    diag = lv.constant_family(np.diag(1.0 / np.arange(1, 33)))
    ar = mx.approx_common_range(diag, 0.1)
    ar_id = mx.approx_common_range(lv.constant_family(np.eye(6)), 0.5)
    cc = mx.collectively_compact_check(diag, 0.1, probes=50, seed=seed)
    cc_mov = mx.collectively_compact_check(lv.family_from_points(lv.finite_rank_moving(16), 2 * np.eye(16)), 0.1)
    ok = ar.success and ar.dim <= 10 and not ar_id.success and cc.passes and not cc_mov.passes
    out.append(_record("approx-range-compactness", "approximate common range and collective compactness",
                       None, 0.0, {"diag_dim": ar.dim, "identity_success": ar_id.success,
                                   "moving_rank_dim": cc_mov.subspace_dim}, t0,
                       status="pass" if ok else "fail"))

    t0 = time.perf_counter()
    qf = lv.sample_family(lv.quartic(6), lv.Region.ball(6, 1.0, n_interior=32, seed=seed))
    maj_q = mx.model_majorant_check(qf, 4 * np.eye(6))
    A = np.diag(1.0 / np.arange(1, 9))
    phi = lv.phi_quadratic(A, "log", radius=1.0, limit_fsd=0.0)
    pf = lv.sample_family(phi, lv.Region.ball(8, 1.0, n_interior=32, seed=seed))
    maj_p = mx.model_majorant_check(pf, phi.majorant_constant() * A)
    ok = maj_q.dominated and not maj_q.criterion_met and maj_p.dominated and maj_p.caveat is not None
    out.append(_record("model-majorant", "model majorant domination", min(maj_q.domination_margin,
                                                                         maj_p.domination_margin),
                       0.0, {"quartic_min_eig_T": maj_q.min_eig_T, "phi_min_eig_T": maj_p.min_eig_T}, t0,
                       status="pass" if ok else "fail"))

    t0 = time.perf_counter()
    v1 = mx.constant_levi_classify(lv.sample_family(lv.weighted_quadratic([0.0, 1.0, 2.0]),
                                                    lv.Region.ball(3, 1.0, n_interior=8)))
    v2 = mx.constant_levi_classify(lv.sample_family(lv.harmonic_quadratic(8), lv.Region.ball(8, 1.0, n_interior=8)))
    v3 = mx.constant_levi_classify(qf)
    ok = v1.verdict == "maximal" and v2.verdict == "not maximal" and v2.caveat and not v3.constant
    out.append(_record("constant-levi", "constant Levi forms: maximal iff FSD vanishes", None, 0.0,
                       {"weighted": v1.verdict, "harmonic": v2.verdict, "quartic": v3.verdict}, t0,
                       status="pass" if ok else "fail"))

    t0 = time.perf_counter()
    bi = mx.boundary_inf_check(np.diag(1.0 / np.arange(1, 9)), lv.Region.ball(8, 1.0, n_interior=16, seed=seed))
    out.append(_record("boundary-infimum", "boundary infimum of a quadratic reaches the spectral bottom",
                       bi.predicted - bi.boundary_inf, 1e-12, {"boundary_inf": bi.boundary_inf}, t0))

    t0 = time.perf_counter()
    exc = mx.maximality_verdict(lv.sample_family(lv.weighted_quadratic([0.3, 1.0]),
                                                 lv.Region.ball(2, 1.0, n_interior=8)))
    est = mx.maximality_verdict(fam)
    out.append(_record("verdict-examples", "necessary and sufficient checks combine consistently", None, 0.0,
                       {"weighted": exc.status, "kernel_family": est.status}, t0,
                       status="pass" if (exc.status, est.status) == ("excluded", "established") else "fail"))
    # two samples whose null directions swap: no criterion decides
    t0 = time.perf_counter()
    rot = lv.LeviFamily(None, np.zeros((2, 2)), np.array([np.diag([0.0, 1.0]), np.diag([1.0, 0.0])]),
                        np.zeros(2, bool), label="swapping-kernel")
    und = mx.maximality_verdict(rot, k=2)
    out.append(_record("verdict-open-case", "vanishing FSD without a sufficient criterion", None, 0.0,
                       {"reason": und.reason}, t0,
                       status="undetermined" if und.status == "undetermined" else "fail"))
    return out + config_scenario_records(ctx, maximality=True)


# -- comparison-principles --------------------------------------------------------


class _Shifted(lv.TestFunction):
    """``c |z|^2 + b``: Levi form ``c I``."""

    def __init__(self, n, c, b=0.0):
        self.kind, self.dim, self.c, self.b = "shifted-norm", n, float(c), float(b)

    def eval(self, z):
        z = self._point(z)
        return self.c * float(np.vdot(z, z).real) + self.b

    def levi(self, z):
        return self.c * np.eye(self.dim, dtype=complex)


def comparison_scenarios(n: int, R: float, seed: int) -> list[tuple[str, str, mx.ComparisonScenario, str]]:
    """``(check id, which, scenario, expected status)``."""
    region = lv.Region.ball(n, R, n_interior=100, seed=seed)
    sq = lv.norm_squared(n)
    R2 = R * R
    return [
        ("cp1-equality", "cp1", mx.ComparisonScenario(sq, sq, region), "pass"),
        ("cp2-equality", "cp2", mx.ComparisonScenario(sq, sq, region), "pass"),
        ("cp3-equality", "cp3", mx.ComparisonScenario(sq, None, region), "pass"),
        ("cp4-equality", "cp4", mx.ComparisonScenario(sq, None, region), "pass"),
        ("cp3-shifted", "cp3", mx.ComparisonScenario(_Shifted(n, 1.5, -0.5 * R2), None, region), "pass"),
        ("cp4-shifted", "cp4", mx.ComparisonScenario(_Shifted(n, 0.5, 0.5 * R2), None, region), "pass"),
        ("bounds-equality", "bounds", mx.ComparisonScenario(_Shifted(n, 2.0), None, region), "pass"),
        ("cp3-hypothesis-gate", "cp3", mx.ComparisonScenario(_Shifted(n, 2.0), None, region),
         "hypothesis-violated"),
    ]


def comparison_suite(ctx: Context) -> list[CheckRecord]:
    tol = ctx.tol["cert"]
    out = []
    for cid, which, sc, expected in comparison_scenarios(4, 1.0, ctx.config.seed):
        t0 = time.perf_counter()
        rep = mx.comparison_check(sc, which, tol=tol)
        wit = {"expected": expected, "diagnostics": rep.diagnostics, **rep.details}
        if rep.status == "pass" and rep.max_principle_ok is False:
            status = "fail"
        else:
            status = rep.status
        out.append(_record(cid, f"comparison principle {which}", rep.margin, tol, wit, t0, status=status))
    t0 = time.perf_counter()
    demo_region = lv.Region.ball(6, 0.5, n_interior=100, seed=ctx.config.seed)
    rep = mx.comparison_check(mx.ComparisonScenario(lv.norm_squared(6), None, demo_region, j=3),
                              "increasing_limit_demo", tol=tol)
    out.append(_record("increasing-limit-demo", "maximality is not stable under increasing limits",
                       rep.margin, 0.0, rep.details, t0, status=rep.status))
    return out + config_scenario_records(ctx, maximality=False)


# -- scenarios from the config file ---------------------------------------------------

SCENARIO_KEYS = {"id", "which", "u", "v", "region", "j", "bounds"}
FUNCTION_KEYS = {"kind", "n", "weights", "matrix"}
REGION_KEYS = {"radius", "n_interior", "n_boundary", "center", "support", "seed"}


def _function_from_spec(spec) -> lv.TestFunction:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValueError(f"function spec must be a mapping with a 'kind', got {spec!r}")
    extra = set(spec) - FUNCTION_KEYS
    if extra:
        raise ValueError(f"unknown function key(s) {sorted(extra)}")
    matrix = None if spec.get("matrix") is None else np.asarray(spec["matrix"], dtype=complex)
    return lv.build(spec["kind"], n=spec.get("n"), weights=spec.get("weights"), matrix=matrix)


def scenario_from_spec(spec: dict, seed: int = 0) -> tuple[str, str, mx.ComparisonScenario]:
    """``(id, which, scenario)`` from one config entry.

    ``which`` is a comparison name or ``"maximality"`` for the combined verdict
    on the family of ``u`` sampled over the region.
    """
    if not isinstance(spec, dict):
        raise ValueError("each scenario must be a mapping")
    extra = set(spec) - SCENARIO_KEYS
    if extra:
        raise ValueError(f"unknown scenario key(s) {sorted(extra)}")
    for key in ("id", "which", "u"):
        if key not in spec:
            raise ValueError(f"scenario is missing {key!r}")
    which = spec["which"]
    if which not in mx.COMPARISONS + ("maximality",):
        raise ValueError(f"unknown check {which!r}; known: {list(mx.COMPARISONS) + ['maximality']}")
    u = _function_from_spec(spec["u"])
    v = _function_from_spec(spec["v"]) if spec.get("v") is not None else None
    reg = dict(spec.get("region", {}))
    extra = set(reg) - REGION_KEYS
    if extra:
        raise ValueError(f"unknown region key(s) {sorted(extra)}")
    center = reg.pop("center", None)
    center = np.zeros(u.dim, dtype=complex) if center is None else np.asarray(center, dtype=complex)
    reg.setdefault("seed", seed)
    region = lv.Region(center, float(reg.pop("radius", 1.0)), **reg)
    bounds = od.SpectralBounds(*spec["bounds"]) if spec.get("bounds") is not None else None
    return str(spec["id"]), which, mx.ComparisonScenario(u, v, region, bounds, int(spec.get("j", 1)))


def validate_catalog(catalog: dict) -> None:
    """Raise ``ValueError`` on a malformed ``catalog`` config section."""
    extra = set(catalog) - {"scenarios"}
    if extra:
        raise ValueError(f"unknown catalog key(s) {sorted(extra)}; known: ['scenarios']")
    specs = catalog.get("scenarios", [])
    if not isinstance(specs, list):
        raise ValueError("catalog.scenarios must be a list")
    ids = [scenario_from_spec(s)[0] for s in specs]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate scenario ids")


def config_scenario_records(ctx: Context, maximality: bool) -> list[CheckRecord]:
    out = []
    tol = ctx.tol["cert"]
    for spec in ctx.config.catalog.get("scenarios", []):
        cid, which, sc = scenario_from_spec(spec, ctx.config.seed)
        if (which == "maximality") != maximality:
            continue
        t0 = time.perf_counter()
        if maximality:
            fam = lv.sample_family(sc.u, sc.region)
            ver = mx.maximality_verdict(fam)
            status = "undetermined" if ver.status == "undetermined" else "pass"
            out.append(_record(f"config/{cid}", "maximality criteria on a configured family", None, 0.0,
                               {"verdict": ver.status, "reason": ver.reason, "caveat": ver.caveat}, t0,
                               status=status))
        else:
            rep = mx.comparison_check(sc, which, tol=tol)
            status = "fail" if rep.status == "pass" and rep.max_principle_ok is False else rep.status
            out.append(_record(f"config/{cid}", f"comparison principle {which} on a configured scenario",
                               rep.margin, tol, {"diagnostics": rep.diagnostics, **rep.details}, t0,
                               status=status))
    return out


# -- counterexample-search ---------------------------------------------------------


def search_suite(ctx: Context) -> list[CheckRecord]:
    out = [_niemiec_record()]
    for d in sorted({max(2, d) for d in ctx.config.dims if d <= 16}) or [2]:
        t0 = time.perf_counter()
        res = od.counterexample_search(d, ctx.config.trials, ctx.rng("search", d))
        ok = all(h.chaotic.holds and not h.loewner.holds for h in res.hits)
        worst = min((h.chaotic.margin / h.chaotic.scale for h in res.hits[1:]), default=0.0)
        out.append(_record(f"search-dim{d}", "chaotic order does not imply the Loewner order",
                           worst, TAU_PSD, {"hits": res.random_hits, "trials": res.trials,
                                            "hit_rate": res.hit_rate},
                           t0, status=None if ok else "fail"))
    return out


SUITE_FUNCTIONS = {
    "fsdet-properties": fsdet_suite,
    "orders-kti": orders_kti_suite,
    "orders-furuta": orders_furuta_suite,
    "orders-means": orders_means_suite,
    "levi-oracle": levi_oracle_suite,
    "maximality-criteria": maximality_suite,
    "comparison-principles": comparison_suite,
    "counterexample-search": search_suite,
}
