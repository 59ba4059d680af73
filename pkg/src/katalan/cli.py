"""Command line front end: ``katalan <command> ...``.

Exit codes: 0 success, 1 selftest failure or sign violation found by
``verify``, 2 invalid input, 3 hypothesis violation, 4 internal mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .bases import (FAMILIES, BasisCache, Expansion, ExpansionError, alternating_check,
                    expand_in_kkschur, family_function, family_spec)
from .functions import KatalanSpec, SpecError, evaluate
from .partitions import PartitionError, enumerate_kbounded, format_partition, parse_partition
from .recursion import (HypothesisViolation, SignLedgerError, classify, expand_recursive,
                        verify, weight_step)
from .rootideal import RootIdealError, delta_k
from .suites import SUITES, run_suite, suite_mirror

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_INTERNAL = 0, 1, 2, 3, 4
CLASSES = ("strict", "hatP", "all")


@dataclass
class RunConfig:
    k_min: int = 1
    k_max: int = 4
    l_min: int = 1
    l_max: int = 4
    cls: str = "hatP"
    max_size: int | None = None
    fmt: str = "json"
    cache_dir: str | None = None
    jobs: int = 1
    seed: int = 0
    unsafe: bool = False
    timing: bool = False

    def __post_init__(self):
        if not 1 <= self.k_min <= self.k_max:
            raise ValueError(f"empty k range [{self.k_min}, {self.k_max}]")
        if not 1 <= self.l_min <= self.l_max:
            raise ValueError(f"empty length range [{self.l_min}, {self.l_max}]")
        if self.cls not in CLASSES:
            raise ValueError(f"class must be one of {CLASSES}")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")

    def partitions(self) -> list[tuple[tuple[int, ...], int]]:
        out = []
        for k in range(self.k_min, self.k_max + 1):
            for l in range(self.l_min, self.l_max + 1):
                cap = k * l if self.max_size is None else self.max_size
                for lam in enumerate_kbounded(k, l, cap):
                    if self.cls == "all" or _in_class(lam, k, self.cls):
                        out.append((lam, k))
        return out


def _in_class(lam, k, cls: str) -> bool:
    c = classify(lam, k)
    return c == "strict" if cls == "strict" else c in ("strict", "hatP")


def resolve_cache_dir(flag: str | None) -> str | None:
    return os.environ.get("KATALAN_CACHE_DIR") or flag


def _dump(data) -> str:
    return json.dumps(data, sort_keys=False, separators=(",", ":"))


# -- expand -------------------------------------------------------------------

def _recursive_target(family: str, lam, k: int, z: int | None) -> int:
    if family == "kkschur":
        return 1
    if family == "closed":
        return delta_k(lam, k).bottom() + 1
    if family == "weighted":
        return z
    raise HypothesisViolation("the recursive route only covers the K-k-Schur families")


def cmd_expand(args, out) -> int:
    lam = parse_partition(args.lam)
    if args.family == "weighted" and args.z is None:
        raise PartitionError("--family weighted needs --z")
    cache = BasisCache(resolve_cache_dir(args.cache_dir)) if resolve_cache_dir(args.cache_dir) else None
    if args.show_spec:
        spec = family_spec(args.family, lam, args.k, args.z)
        print(_dump({"schema": "1", "spec": spec.to_json()}), file=out)
        print(spec.diagram(), file=out)
        return EXIT_OK
    if args.show_function:
        f = family_function(args.family, lam, args.k, args.z)
        print(f, file=out)
    rec = lin = None
    if args.route in ("recursive", "both"):
        rec = expand_recursive(lam, args.k, _recursive_target(args.family, lam, args.k, args.z))
    if args.route in ("linear", "both"):
        f = family_function(args.family, lam, args.k, args.z)
        lin = expand_in_kkschur(f, args.k, cache, args.method)
    if cache is not None:
        cache.flush()
    agree = None
    if rec is not None and lin is not None:
        agree = rec == lin
    exp = Expansion(args.k, lam, args.family, lin if lin is not None else rec, args.z)
    payload = exp.to_json()
    if agree is not None:
        payload["routesAgree"] = agree
    if args.format == "json":
        print(_dump(payload), file=out)
    elif args.format == "csv":
        _write_csv(out, [exp])
    else:
        ok, _ = exp.alternating()
        print(f"k={args.k} lambda={format_partition(lam)} family={args.family}"
              + (f" z={args.z}" if args.z is not None else ""), file=out)
        for mu, c in exp.sorted_terms():
            print(f"  {format_partition(mu):>20}  {c:+d}", file=out)
        print(f"terms={len(exp.terms)} alternating={str(ok).lower()}"
              + (f" routesAgree={str(agree).lower()}" if agree is not None else ""), file=out)
    return EXIT_INTERNAL if agree is False else EXIT_OK


def _write_csv(out, expansions) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["k", "lambda", "family", "mu", "coeff", "signOK"])
    for exp in expansions:
        for mu, c in exp.sorted_terms():
            ok, _ = alternating_check(exp.lam, {mu: c})
            w.writerow([exp.k, format_partition(exp.lam), exp.family, format_partition(mu), c, str(ok).lower()])


# -- step -----------------------------------------------------------------------

def cmd_step(args, out) -> int:
    lam = parse_partition(args.lam)
    terms = weight_step(lam, args.k, args.z)
    data = {"schema": "1", "k": args.k, "lambda": list(lam), "z": args.z,
            "terms": [{"mu": list(t.mu), "coeff": str(t.coeff)} for t in terms],
            # terms with a zero part use the definitions extended to nonnegative vectors
            "zeroPartExtension": any(0 in t.mu for t in terms)}
    if args.validate:
        from .bases import weighted_kkschur
        lhs = weighted_kkschur(lam, args.k, args.z + 1)
        rhs = sum((weighted_kkschur(t.mu, args.k, args.z) * t.coeff for t in terms), lhs * 0)
        data["validated"] = lhs == rhs
    print(_dump(data), file=out)
    return EXIT_INTERNAL if data.get("validated") is False else EXIT_OK


# -- verify ------------------------------------------------------------------------

_WORKER_CACHE: BasisCache | None = None


def _verify_job(job):
    lam, k, cache_dir, unsafe = job
    global _WORKER_CACHE
    if cache_dir and (_WORKER_CACHE is None or str(_WORKER_CACHE.directory) != cache_dir):
        _WORKER_CACHE = BasisCache(cache_dir)
    cache = _WORKER_CACHE if cache_dir else None
    report = verify(lam, k, cache, unsafe=unsafe)
    if cache is not None:
        cache.flush()
    return report


def run_verify(cfg: RunConfig):
    jobs = [(lam, k, cfg.cache_dir, cfg.unsafe) for lam, k in cfg.partitions()]
    if cfg.jobs == 1:
        yield from map(_verify_job, jobs)
        return
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        # map keeps input order; chunksize 1 lets idle workers take the next job
        yield from pool.map(_verify_job, jobs, chunksize=1)


def cmd_verify(args, out) -> int:
    cfg = RunConfig(args.kmin, args.kmax, args.lmin, args.lmax, args.cls, args.max_size, args.format,
                    resolve_cache_dir(args.cache_dir), args.jobs, 0, args.unsafe_explore, args.timing)
    sink = open(args.output, "w", encoding="utf-8") if args.output else out
    worst = EXIT_OK
    counts = {"total": 0, "pass": 0, "signViolation": 0, "mismatch": 0, "hypothesis": 0}
    try:
        writer = None
        if cfg.fmt == "csv":
            writer = csv.writer(sink, lineterminator="\n")
            writer.writerow(["k", "lambda", "family", "mu", "coeff", "signOK"])
        for rep in run_verify(cfg):
            counts["total"] += 1
            if writer is not None:
                for mu, c in sorted(rep.terms.items()):
                    ok, _ = alternating_check(rep.lam, {mu: c})
                    writer.writerow([rep.k, format_partition(rep.lam), "closed", format_partition(mu), c,
                                     str(ok).lower()])
            else:
                print(_dump(rep.to_json(timing=cfg.timing)), file=sink)
            if rep.error is not None and rep.error.startswith("internal") or rep.routes_agree is False:
                counts["mismatch"] += 1
                worst = EXIT_INTERNAL
            elif rep.error is not None:
                counts["hypothesis"] += 1
                worst = max(worst, EXIT_HYPOTHESIS) if worst != EXIT_INTERNAL else worst
            elif not rep.alternating:
                counts["signViolation"] += 1
                if not cfg.unsafe and worst == EXIT_OK:
                    worst = EXIT_FAIL
            else:
                counts["pass"] += 1
    finally:
        if args.output:
            sink.close()
    print(_dump({"schema": "1", "summary": counts}), file=sys.stderr)
    return worst


# -- selftest / enumerate / eval-raw / cache ---------------------------------

def cmd_selftest(args, out) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    failed = False
    for name in names:
        if name == "mirror":
            res = suite_mirror(args.lmax or (5 if args.exhaustive else 4))
        else:
            res = run_suite(name, args.seed, args.cases, args.lmax)
        print(res.summary() + ("; " + "; ".join(res.notes) if res.notes else ""), file=out)
        failed |= not res.ok
    return EXIT_FAIL if failed else EXIT_OK


def cmd_enumerate(args, out) -> int:
    cfg = RunConfig(args.k, args.k, args.l, args.l, args.cls, args.max_size)
    for lam, k in cfg.partitions():
        print(format_partition(lam), file=out)
    return EXIT_OK


def cmd_eval_raw(args, out) -> int:
    try:
        data = json.loads(Path(args.spec).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read spec: {exc}") from exc
    spec = KatalanSpec.from_json(data)
    f = evaluate(spec, args.method)
    if args.format == "json":
        print(_dump({"schema": "1", "spec": spec.to_json(), "value": f.to_json()}), file=out)
    else:
        print(f, file=out)
    return EXIT_OK


def cmd_cache(args, out) -> int:
    directory = resolve_cache_dir(args.cache_dir)
    if not directory:
        raise SpecError("no cache directory: pass --cache-dir or set KATALAN_CACHE_DIR")
    cache = BasisCache(directory)
    if args.action == "info":
        print(_dump({"schema": "1", "directory": directory, "entries": len(cache),
                     "shards": len(cache.shards()), "rejected": cache.rejected}), file=out)
    else:
        print(f"removed {cache.clear()} shard(s)", file=out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="katalan", description="Katalan functions and K-k-Schur expansions.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("expand", help="expand a named function in the K-k-Schur basis")
    e.add_argument("--k", type=int, required=True, help="bound on the parts")
    e.add_argument("--lambda", dest="lam", required=True, help="partition, e.g. 5,4,3,3,2,2")
    e.add_argument("--family", choices=FAMILIES, default="closed")
    e.add_argument("--z", type=int, help="weight for --family weighted")
    e.add_argument("--basis", choices=("kkschur",), default="kkschur")
    e.add_argument("--route", choices=("recursive", "linear", "both"), default="linear")
    e.add_argument("--method", choices=("peel", "dense"), default="peel", help="linear solver")
    e.add_argument("--format", choices=("pretty", "json", "csv"), default="pretty")
    e.add_argument("--show-spec", action="store_true", help="print the Katalan spec and stop")
    e.add_argument("--show-function", action="store_true", help="also print the h-expansion")
    e.add_argument("--cache-dir", help="basis cache directory (KATALAN_CACHE_DIR wins)")
    e.set_defaults(func=cmd_expand)

    s = sub.add_parser("step", help="one weight step of the recursion")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--z", type=int, required=True)
    s.add_argument("--validate", action="store_true", help="check the step by evaluating both sides")
    s.set_defaults(func=cmd_step)

    v = sub.add_parser("verify", help="check alternation and route agreement over a range")
    v.add_argument("--kmin", type=int, default=1)
    v.add_argument("--kmax", type=int, default=4)
    v.add_argument("--lmin", type=int, default=1)
    v.add_argument("--lmax", type=int, default=4)
    v.add_argument("--class", dest="cls", choices=CLASSES, default="hatP")
    v.add_argument("--max-size", type=int, help="largest |lambda| considered")
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.add_argument("--output", help="report file (default stdout)")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--cache-dir")
    v.add_argument("--timing", action="store_true", help="include wall time per partition")
    v.add_argument("--unsafe-explore", action="store_true",
                   help="linear route only outside the proven class; report signs, never fail on them")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("selftest", help="run the seeded property suites")
    t.add_argument("--suite", choices=("all",) + SUITES, default="all")
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--cases", type=int, default=200)
    t.add_argument("--exhaustive", action="store_true", help="mirror search up to --lmax (default 5)")
    t.add_argument("--lmax", type=int)
    t.set_defaults(func=cmd_selftest)

    n = sub.add_parser("enumerate", help="list k-bounded partitions of one length")
    n.add_argument("--k", type=int, required=True)
    n.add_argument("--l", type=int, required=True)
    n.add_argument("--max-size", type=int)
    n.add_argument("--class", dest="cls", choices=CLASSES, default="all")
    n.set_defaults(func=cmd_enumerate)

    r = sub.add_parser("eval-raw", help="evaluate a spec given as JSON")
    r.add_argument("--spec", required=True)
    r.add_argument("--method", choices=("sweep", "gamma"), default="sweep")
    r.add_argument("--format", choices=("pretty", "json"), default="pretty")
    r.set_defaults(func=cmd_eval_raw)

    c = sub.add_parser("cache", help="inspect or clear the basis cache")
    c.add_argument("action", choices=("info", "clear"))
    c.add_argument("--cache-dir")
    c.set_defaults(func=cmd_cache)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except HypothesisViolation as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (SignLedgerError, ExpansionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (PartitionError, RootIdealError, SpecError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run(argv: list[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
