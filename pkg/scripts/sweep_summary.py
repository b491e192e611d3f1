"""Run the verification sweep and tabulate results per family.

    python scripts/sweep_summary.py --param-bound 3 --k-bound 4 --jobs 4
"""
import argparse
import json
from collections import Counter, defaultdict

from longcf.verify import SweepConfig, parse_families, sweep


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--families", default="all")
    ap.add_argument("--param-bound", type=int, default=3)
    ap.add_argument("--k-bound", type=int, default=4)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    cfg = SweepConfig(parse_families(args.families), args.param_bound, args.k_bound, jobs=args.jobs)
    stats = defaultdict(Counter)
    for line in sweep(cfg):
        rec = json.loads(line)
        row = stats[rec["family"]]
        row["instances"] += 1
        row["word_match"] += rec["word_match"]
        row["unit_checked"] += rec["unit_match"] is not None
        row["unit_match"] += rec["unit_match"] is True
        row["display_mismatch"] += any(n.startswith("display-mismatch") for n in rec["notes"])
        row["max_len"] = max(row["max_len"], len(rec["oracle_period"]))
        row["max_digits"] = max(row["max_digits"], len(rec["d"]))

    cols = ["instances", "word_match", "unit_checked", "unit_match", "display_mismatch",
            "max_len", "max_digits"]
    print(f"{'family':<14}" + "".join(f"{c:>17}" for c in cols))
    for fam in sorted(stats):
        print(f"{fam:<14}" + "".join(f"{stats[fam][c]:>17}" for c in cols))


if __name__ == "__main__":
    main()
