"""Verification sweep with a per-(k, length) timing table.

Example: python3 scripts/sweep.py --kmax 5 --lmax 4 --out sweep.jsonl
"""
from __future__ import annotations

import argparse
import json
import time
from collections import defaultdict

from katalan.bases import BasisCache
from katalan.cli import RunConfig
from katalan.recursion import verify


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--lmax", type=int, default=4)
    p.add_argument("--class", dest="cls", choices=("strict", "hatP"), default="hatP")
    p.add_argument("--max-size", type=int)
    p.add_argument("--cache-dir")
    p.add_argument("--out", help="JSON lines report")
    args = p.parse_args(argv)

    cfg = RunConfig(k_max=args.kmax, l_max=args.lmax, cls=args.cls, max_size=args.max_size)
    cache = BasisCache(args.cache_dir) if args.cache_dir else None
    table = defaultdict(lambda: [0, 0, 0.0])
    sink = open(args.out, "w", encoding="utf-8") if args.out else None
    for lam, k in cfg.partitions():
        t = time.perf_counter()
        rep = verify(lam, k, cache)
        row = table[(k, len(lam))]
        row[0] += 1
        row[1] += not rep.ok
        row[2] += time.perf_counter() - t
        if sink:
            sink.write(json.dumps(rep.to_json(timing=False)) + "\n")
    if sink:
        sink.close()
    if cache is not None:
        cache.flush()
    print(f"{'k':>3} {'len':>4} {'count':>6} {'fail':>5} {'seconds':>9}")
    for (k, l), (n, bad, secs) in sorted(table.items()):
        print(f"{k:>3} {l:>4} {n:>6} {bad:>5} {secs:>9.2f}")
    return 1 if any(bad for _, bad, _ in table.values()) else 0


if __name__ == "__main__":
    raise SystemExit(main())
