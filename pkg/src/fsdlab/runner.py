"""Run configuration, check records and the verification report."""

from __future__ import annotations

import hashlib
import json
import time
import zlib
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from . import __version__

SUITES = (
    "fsdet-properties",
    "orders-kti",
    "orders-furuta",
    "orders-means",
    "levi-oracle",
    "maximality-criteria",
    "comparison-principles",
    "counterexample-search",
)
STATUSES = ("pass", "fail", "hypothesis-violated", "undetermined")
DEFAULT_TOLERANCES = {
    "rel": 1e-8,  # relative tolerance for inequalities
    "exact": 1e-10,  # algebraic identities on commuting inputs
    "psd": 1e-9,  # PSD margins, scaled by the operator norm
    "levi": 1e-5,  # analytic vs finite-difference Levi forms
    "cert": 1e-10,  # certificate bounds and comparison margins
}
MAX_DIM = 64


class ConfigError(ValueError):
    """Invalid run configuration (exit code 2)."""


@dataclass
class RunConfig:
    suites: list[str] = field(default_factory=lambda: list(SUITES))
    dims: list[int] = field(default_factory=lambda: [2, 4, 8, 16])
    trials: int = 50
    seed: int = 0
    tolerances: dict[str, float] = field(default_factory=dict)
    catalog: dict = field(default_factory=dict)
    out: str | None = None
    format: str = "json"

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not isinstance(self.suites, list) or not self.suites:
            raise ConfigError("suite list is empty: nothing to run")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suite(s) {unknown}; known: {list(SUITES)}")
        if len(set(self.suites)) != len(self.suites):
            raise ConfigError("duplicate suite identifiers")
        if not self.dims or any(not isinstance(d, int) or isinstance(d, bool) for d in self.dims):
            raise ConfigError("dims must be a non-empty list of integers")
        if any(not 1 <= d <= MAX_DIM for d in self.dims):
            raise ConfigError(f"dims must lie in [1, {MAX_DIM}], got {self.dims}")
        if not isinstance(self.trials, int) or isinstance(self.trials, bool) or self.trials < 1:
            raise ConfigError(f"trials must be an integer >= 1, got {self.trials!r}")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool) or not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if not isinstance(self.tolerances, dict):
            raise ConfigError("tolerances must be a mapping")
        bad = [k for k in self.tolerances if k not in DEFAULT_TOLERANCES]
        if bad:
            raise ConfigError(f"unknown tolerance key(s) {bad}; known: {list(DEFAULT_TOLERANCES)}")
        for k, v in self.tolerances.items():
            if not isinstance(v, (int, float)) or isinstance(v, bool) or v < 0:
                raise ConfigError(f"tolerance {k} must be a nonnegative number")
        if not isinstance(self.catalog, dict):
            raise ConfigError("catalog must be a mapping")
        from .suites import validate_catalog

        try:
            validate_catalog(self.catalog)
        except (KeyError, ValueError, TypeError) as exc:
            raise ConfigError(f"catalog: {exc.args[0] if exc.args else exc}") from exc
        if self.format not in ("json", "text"):
            raise ConfigError(f"format must be json or text, got {self.format!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config key(s) {unknown}")
        return cls(**data)

    @property
    def tol(self) -> dict[str, float]:
        return {**DEFAULT_TOLERANCES, **self.tolerances}

    def canonical(self) -> dict:
        d = asdict(self)
        d.pop("out")
        d.pop("format")
        return d

    def digest(self) -> str:
        blob = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class CheckRecord:
    check_id: str
    anchor: str
    status: str
    margin: float | None
    witness: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")


@dataclass
class VerificationReport:
    records: list[CheckRecord]
    metadata: dict

    @property
    def failed(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status == "fail"]

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def counts(self) -> dict[str, int]:
        return {s: sum(r.status == s for r in self.records) for s in STATUSES}

    def to_dict(self, timing: bool = True) -> dict:
        recs = []
        for r in self.records:
            d = asdict(r)
            if not timing:
                d.pop("wall_time")
            recs.append(d)
        meta = dict(self.metadata)
        if not timing:
            meta.pop("wall_time", None)
        return {"metadata": meta, "summary": self.counts(), "records": recs}

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(_jsonable(self.to_dict(timing)), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"fsdlab {self.metadata['version']}  seed={self.metadata['seed']}  "
                 f"config={self.metadata['config_hash'][:12]}"]
        for r in self.records:
            m = "" if r.margin is None else f"  margin={r.margin:.3e}"
            lines.append(f"{r.status.upper():20s} {r.check_id}  [{r.anchor}]{m}")
        c = self.counts()
        lines.append(", ".join(f"{k}: {v}" for k, v in c.items()))
        return "\n".join(lines)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return encode_array(obj)
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if np.isfinite(f) else str(f)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def encode_array(a) -> dict:
    """JSON-safe encoding of a (complex) array: ``{"re": ..., "im": ...}``."""
    a = np.asarray(a)
    return {"re": np.real(a).tolist(), "im": np.imag(a).tolist()}


def decode_array(d: dict) -> np.ndarray:
    return np.asarray(d["re"]) + 1j * np.asarray(d["im"])


class Context:
    """Per-suite seeding and tolerances handed to suite functions."""

    def __init__(self, config: RunConfig, suite: str):
        self.config = config
        self.suite = suite
        self.tol = config.tol

    def rng(self, check: str, trial: int = 0) -> np.random.Generator:
        ss = np.random.SeedSequence([self.config.seed, zlib.crc32(self.suite.encode()),
                                     zlib.crc32(check.encode()), trial])
        return np.random.default_rng(ss)

    def dim(self, trial: int, lo: int = 1, hi: int = MAX_DIM) -> int:
        d = self.config.dims[trial % len(self.config.dims)]
        return min(max(d, lo), hi)


def run(config: RunConfig) -> VerificationReport:
    from .suites import SUITE_FUNCTIONS

    t0 = time.perf_counter()
    records: list[CheckRecord] = []
    for suite in config.suites:
        ctx = Context(config, suite)
        for rec in SUITE_FUNCTIONS[suite](ctx):
            rec.check_id = f"{suite}/{rec.check_id}"
            records.append(rec)
    records.sort(key=lambda r: r.check_id)
    ids = [r.check_id for r in records]
    if len(set(ids)) != len(ids):
        raise RuntimeError("duplicate check ids in report")
    meta = {
        "seed": config.seed,
        "config_hash": config.digest(),
        "version": __version__,
        "suites": list(config.suites),
        "wall_time": time.perf_counter() - t0,
    }
    return VerificationReport(records, meta)
