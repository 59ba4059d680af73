"""Print the three worked examples: root ideal structure, one weight step
and a closed-function expansion, with both expansion routes."""
from __future__ import annotations

import argparse

from katalan.bases import closed_kschur, expand_in_kkschur
from katalan.partitions import format_partition
from katalan.recursion import closed_recursive, weight_step
from katalan.rootideal import delta_k, downs, second_components, weighted_marks


def structure(lam, k):
    d, d1 = delta_k(lam, k), delta_k(lam, k + 1)
    print(f"lambda={format_partition(lam)} k={k}")
    print(f"  Delta^{k}: {d.roots()}")
    print(f"  Delta^{k + 1}: {d1.roots()}")
    print(f"  L multisets: {second_components(d.roots())} / {second_components(d1.roots())}")
    print(f"  downs={downs(lam, k)} bottom={d.bottom()}")
    print(f"  weight-2 marks: {weighted_marks(lam, k, 2)}")
    print(d.diagram(second_components(d1.roots()), lam))


def step(lam, k, z):
    print(f"weight step lambda={format_partition(lam)} k={k} z={z}")
    for t in weight_step(lam, k, z):
        print(f"  {t.coeff:+d}  {format_partition(t.mu)}")


def closed(lam, k):
    rec = closed_recursive(lam, k)
    lin = expand_in_kkschur(closed_kschur(lam, k), k)
    print(f"closed lambda={format_partition(lam)} k={k} routes agree: {rec == lin}")
    for mu, c in sorted(lin.items(), key=lambda kv: (-sum(kv[0]), [-p for p in kv[0]])):
        print(f"  {c:+d}  {format_partition(mu)}")


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--skip-closed", action="store_true")
    args = p.parse_args(argv)
    structure((7, 6, 6, 6, 4, 3), 7)
    step((7, 6, 5, 5, 4, 4, 4, 3, 3, 3, 2, 2, 1), 7, 2)
    if not args.skip_closed:
        closed((5, 4, 3, 3, 2, 2), 5)


if __name__ == "__main__":
    main()
