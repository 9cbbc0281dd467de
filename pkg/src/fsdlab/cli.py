"""Command-line interface: ``fsdlab {run,fsd,search,list-suites,list-catalog}``.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import levi as lv
from . import orders as od
from .runner import SUITES, ConfigError, RunConfig, encode_array, run

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _csv_ints(s: str) -> list[int]:
    try:
        return [int(v) for v in s.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def _u64(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {s!r}")
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def parse_point(s: str) -> np.ndarray:
    """``"1,i,0"`` or ``"1, 2+0.5j"``; ``i`` and ``j`` both denote the imaginary unit."""
    vals = []
    for tok in s.split(","):
        tok = tok.strip().replace(" ", "")
        if not tok:
            raise ValueError(f"empty coordinate in point {s!r}")
        tok = tok.replace("i", "j")
        if tok in ("j", "+j", "-j"):
            tok = tok.replace("j", "1j")
        vals.append(complex(tok))
    return np.array(vals, dtype=complex)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fsdlab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run verification suites")
    r.add_argument("--config", help="JSON config file")
    r.add_argument("--seed", type=_u64)
    r.add_argument("--dims", type=_csv_ints)
    r.add_argument("--trials", type=int)
    r.add_argument("--suite", action="append", dest="suites", metavar="ID")
    r.add_argument("--format", choices=("json", "text"))
    r.add_argument("--out")

    f = sub.add_parser("fsd", help="FSD and Levi spectrum of a catalog function at a point")
    f.add_argument("kind")
    f.add_argument("--n", type=int)
    f.add_argument("--weights", help="comma-separated weights for 'weighted'")
    f.add_argument("--matrix", help="JSON nested list for quadratic and phi kinds")
    f.add_argument("--point", "-z", help="comma-separated complex coordinates (default: origin)")
    f.add_argument("--format", choices=("json", "text"), default="text")

    s = sub.add_parser("search", help="search for chaotic-but-not-Loewner pairs")
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=_u64, default=0)
    s.add_argument("--format", choices=("json", "text"), default="text")
    s.add_argument("--out")

    sub.add_parser("list-suites", help="list suite identifiers")
    sub.add_parser("list-catalog", help="list catalog function kinds")
    return ap


def load_config(args) -> RunConfig:
    data = {}
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
    for key in ("seed", "dims", "trials", "suites", "format", "out"):
        val = getattr(args, key)
        if val is not None:
            data[key] = val
    return RunConfig.from_dict(data)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_run(args) -> int:
    cfg = load_config(args)
    report = run(cfg)
    _emit(report.to_json() if cfg.format == "json" else report.to_text(), cfg.out)
    if report.failed:
        print(f"{len(report.failed)} check(s) failed", file=sys.stderr)
    return report.exit_code


def cmd_fsd(args) -> int:
    weights = [float(w) for w in args.weights.split(",")] if args.weights else None
    matrix = np.array(json.loads(args.matrix), dtype=complex) if args.matrix else None
    f = lv.build(args.kind, n=args.n, weights=weights, matrix=matrix)
    z = parse_point(args.point) if args.point else np.zeros(f.dim, dtype=complex)
    if z.shape[0] != f.dim:
        raise ValueError(f"point has {z.shape[0]} coordinates, {args.kind} lives in C^{f.dim}")
    res = lv.fsd_certificate(f, z)
    doc = {"kind": args.kind, "n": f.dim, "fsd": res.value, "min_eig": res.min_eig,
           "max_eig": res.max_eig, "caveat": res.caveat}
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(f"FSD = {res.value:.12g}")
        print(f"Levi spectrum: min {res.min_eig:.6g}, max {res.max_eig:.6g}")
        if res.caveat:
            print(f"caveat: {res.caveat}")
    return EXIT_OK


def cmd_search(args) -> int:
    if args.trials < 0:
        raise ValueError("trials must be >= 0")
    res = od.counterexample_search(args.dim, args.trials, args.seed)
    ok = all(h.chaotic.holds and not h.loewner.holds for h in res.hits)
    if args.format == "json":
        doc = {"dim": args.dim, "trials": res.trials, "seed": args.seed, "random_hits": res.random_hits,
               "hit_rate": res.hit_rate, "verified": ok,
               "hits": [{"source": h.source, "chaotic_margin": h.chaotic.margin,
                         "loewner_margin": h.loewner.margin, "A": encode_array(h.A), "B": encode_array(h.B)}
                        for h in res.hits]}
        _emit(json.dumps(doc, indent=2), args.out)
    else:
        lines = [f"{h.source:14s} chaotic margin {h.chaotic.margin:+.6f}  Loewner margin {h.loewner.margin:+.6f}"
                 for h in res.hits]
        lines.append(f"hit rate {res.random_hits}/{res.trials} = {res.hit_rate:.4f}")
        _emit("\n".join(lines), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        if args.command == "run":
            return cmd_run(args)
    except ConfigError as exc:
        print(f"fsdlab: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "fsd":
            return cmd_fsd(args)
        if args.command == "search":
            return cmd_search(args)
        if args.command == "list-suites":
            print("\n".join(SUITES))
        elif args.command == "list-catalog":
            for kind, desc in lv.CATALOG.items():
                print(f"{kind:20s} {desc}")
        return EXIT_OK
    except (KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"fsdlab: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
