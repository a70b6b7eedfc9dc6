"""Tabulate |C_W| and the tree number over the exponent family.

    python scripts/family_sweep.py --k-max 10 --w 2 3 5 [--csv results/family.csv]

Prints k, w, |C_W|, k*w^(k-1), k*w^k and whether each closed form matches.
"""

import argparse
import csv
import sys
import time

from bitrade_lab.suites import family_row


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k-max", type=int, default=10)
    ap.add_argument("--w", type=int, nargs="+", default=[2, 3, 5])
    ap.add_argument("--csv", default=None)
    args = ap.parse_args(argv)

    fields = ["k", "w", "t", "C_W_order", "k_w_pow_k_minus_1", "k_w_pow_k", "matches_k_w_pow_k_minus_1", "matches_k_w_pow_k"]
    rows = []
    start = time.perf_counter()
    for w in args.w:
        for k in range(2, args.k_max + 1):
            r = family_row(k, w)
            rows.append(
                {
                    **{f: r[f] for f in fields[:6]},
                    "matches_k_w_pow_k_minus_1": r["checks"]["order"],
                    "matches_k_w_pow_k": r["k_w_pow_k_holds"],
                }
            )
    elapsed = time.perf_counter() - start

    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    writer = csv.DictWriter(out, fieldnames=fields)
    writer.writeheader()
    writer.writerows(rows)
    if args.csv:
        out.close()
    hits = sum(r["matches_k_w_pow_k_minus_1"] for r in rows)
    print(f"# {hits}/{len(rows)} rows match k*w^(k-1); "
          f"{sum(r['matches_k_w_pow_k'] for r in rows)}/{len(rows)} match k*w^k; {elapsed:.2f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
