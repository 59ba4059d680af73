"""Look outside the proven class.

Expands the closed function by the linear route for every k-bounded
partition not covered by the recursion and records sign violations. Also
checks whether weighted functions at intermediate weights stay in the
subring generated by h_1..h_k. Nothing here is asserted; it is a report.
"""
from __future__ import annotations

import argparse
from collections import Counter

from katalan.bases import ExpansionError, alternating_check, closed_kschur, expand_in_kkschur, in_lambda_k, weighted_kkschur
from katalan.partitions import enumerate_kbounded, format_partition
from katalan.recursion import classify
from katalan.rootideal import bottom_of


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--lmax", type=int, default=4)
    args = p.parse_args(argv)

    stats = Counter()
    for k in range(1, args.kmax + 1):
        for l in range(1, args.lmax + 1):
            for lam in enumerate_kbounded(k, l, k * l):
                b = bottom_of(lam, k)
                for z in range(2, b + 1):
                    stats["intermediate"] += 1
                    if not in_lambda_k(weighted_kkschur(lam, k, z), k):
                        stats["intermediate outside"] += 1
                        print(f"outside: k={k} lambda={format_partition(lam)} z={z}")
                if classify(lam, k) != "other":
                    continue
                stats["other"] += 1
                try:
                    terms = expand_in_kkschur(closed_kschur(lam, k), k)
                except ExpansionError as exc:
                    stats["no expansion"] += 1
                    print(f"no expansion: k={k} lambda={format_partition(lam)}: {exc}")
                    continue
                ok, bad = alternating_check(lam, terms)
                if not ok:
                    stats["sign violation"] += 1
                    print(f"sign violation: k={k} lambda={format_partition(lam)} at {bad}")
    for key, n in sorted(stats.items()):
        print(f"{key}: {n}")


if __name__ == "__main__":
    main()
