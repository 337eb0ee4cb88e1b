"""``qhk-verify``: run the checks for a list of n and write a report.

Exit status is 0 when nothing failed, 1 when some check failed and 2 for
usage errors (including the kernel size guard).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .checks import CHECKS, MUTATIONS, SizeGuardError, run_all


def _n_list(text: str) -> list[int]:
    try:
        ns = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")
    if not ns or any(n < 2 for n in ns):
        raise argparse.ArgumentTypeError("every n must be an integer >= 2")
    return ns


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qhk-verify",
        description="Exact verification of the conformal-Killing computations on gamma_0 (x) alpha_0.")
    ap.add_argument("--n", type=_n_list, default=[2], help="comma-separated values of n (default 2)")
    ap.add_argument("--check", choices=CHECKS + ("all",), default="all")
    ap.add_argument("--format", choices=("json", "text"), default="text")
    ap.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=50, help="random domain elements for traces at n >= 3")
    ap.add_argument("--force-large-n", action="store_true", help="run the kernel oracle above n = 4")
    ap.add_argument("--mutate", choices=sorted(MUTATIONS),
                    help="run against a deliberately perturbed operator (sensitivity control)")
    return ap


def _config(args) -> dict:
    return {"n": args.n, "check": args.check, "seed": args.seed, "samples": args.samples,
            "forceLargeN": args.force_large_n, "mutate": args.mutate}


def render_json(args, reports, kernels) -> str:
    doc = {
        "version": __version__,
        "config": _config(args),
        "reports": [r.to_dict() for r in reports],
        "kernel": [k.to_dict() for k in kernels],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_text(reports, kernels) -> str:
    lines = []
    for r in reports:
        bad = [k for k, s in r.details.get("subchecks", {}).items() if s == "fail"]
        tail = f"  failing: {'; '.join(bad)}" if bad else ""
        lines.append(f"{r.status.upper():8} {r.name:10} n={r.n}  {r.elapsed:.2f}s{tail}")
    for k in kernels:
        forbidden = ",".join(s for s, v in k.componentNorms.items() if v != "zero") or "none"
        lines.append(f"{k.status.upper():8} {'kernel':10} n={k.n}  {k.elapsed:.2f}s"
                     f"  dim {k.kernelDim}/{k.domainDim} (bound {k.bound}), nonzero summands: {forbidden}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    checks = CHECKS if args.check == "all" else (args.check,)
    try:
        reports, kernels, status = run_all(args.n, checks, seed=args.seed, samples=args.samples,
                                           force_large_n=args.force_large_n, mutation=args.mutate)
    except SizeGuardError as exc:
        ap.error(str(exc))
    out = render_json(args, reports, kernels) if args.format == "json" else render_text(reports, kernels)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
