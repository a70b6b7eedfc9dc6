"""Statistics of harvested spherical bitrades.

    python scripts/harvest_stats.py --count 400 --seed 0 [--json results/harvest.json]

For each source order n, reports the size distribution, the spread of |C_W|,
how tight the bound 729|C_W|^6 < 8*6^(2(t-1)) is (as log6 slack), and the
most common torsion groups.
"""

import argparse
import json
import math
import sys
from collections import Counter, defaultdict

from bitrade_lab.bitrade import bitrade_to_triangulation
from bitrade_lab.suites import SPHERE_ORDERS, harvest_suite
from bitrade_lab.trade import full_report


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=400)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--orders", type=int, nargs="+", default=list(SPHERE_ORDERS))
    ap.add_argument("--json", default=None)
    args = ap.parse_args(argv)

    by_order = defaultdict(list)
    for n, bt in harvest_suite(args.count, args.seed, tuple(args.orders)):
        rep = full_report(bitrade_to_triangulation(bt))
        order = rep.c_w.torsion_order
        # log_6 of 8*6^(2(t-1)) / (729 |C|^6), so positive means the bound holds
        slack = math.log(8, 6) + 2 * (bt.size - 1) - math.log(729, 6) - 6 * math.log(order, 6)
        by_order[n].append({"t": bt.size, "order": order, "group": str(rep.c_w), "slack": slack})

    summary = {}
    for n, items in sorted(by_order.items()):
        sizes = Counter(i["t"] for i in items)
        summary[n] = {
            "instances": len(items),
            "sizes": dict(sorted(sizes.items())),
            "max_order": max(i["order"] for i in items),
            "min_slack_log6": round(min(i["slack"] for i in items), 3),
            "groups": Counter(i["group"] for i in items).most_common(5),
        }
        s = summary[n]
        print(f"n={n}: {s['instances']} instances, sizes {s['sizes']}, max |C_W| {s['max_order']}, "
              f"min slack {s['min_slack_log6']}")
        for g, c in s["groups"]:
            print(f"    {c:4d}  {g}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"seed": args.seed, "orders": summary}, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
