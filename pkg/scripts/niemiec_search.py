"""Hit rate of random chaotic-but-not-Loewner pairs across dimensions and spreads."""

import argparse
import json

from fsdlab.orders import counterexample_search


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dims", default="2,3,4,6,8")
    ap.add_argument("--spreads", default="0.5,1.0,2.0")
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true", help="print rows as JSON")
    args = ap.parse_args()

    rows = []
    for d in (int(v) for v in args.dims.split(",")):
        for s in (float(v) for v in args.spreads.split(",")):
            res = counterexample_search(d, args.trials, args.seed, spread=s)
            worst = min((h.loewner.margin for h in res.hits[1:]), default=float("nan"))
            rows.append({"dim": d, "spread": s, "hits": res.random_hits, "trials": res.trials,
                         "hit_rate": res.hit_rate, "most_negative_loewner_margin": worst})
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'dim':>4} {'spread':>7} {'hit rate':>9} {'min Loewner margin':>19}")
    for r in rows:
        print(f"{r['dim']:4d} {r['spread']:7.2f} {r['hit_rate']:9.4f} {r['most_negative_loewner_margin']:19.4e}")


if __name__ == "__main__":
    main()
