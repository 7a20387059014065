"""Command-line entry point.

Commands: enumerate, classify, verify, report.  All outputs are UTF-8 JSON
with a {"tool_version", "config", "results"} envelope, byte-identical for
identical configs.  Exit codes: 0 = all checks pass, 1 = verification
mismatch (a mathematical finding), 2 = usage or feasibility error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__, catalog, classify, subalg
from .errors import (
    DomainViolation,
    Infeasible,
    InvalidModulus,
    SweedlerRBError,
    WeightMismatch,
)
from .field import RATIONAL, Scalar, check_modulus, parse_scalar, residue
from .rb import is_rb
from .subalg import DIM2_LABELS, DIM3_LABELS

GOLDEN_DIR = Path(__file__).resolve().parents[2] / "golden" / "v1"


class UsageError(Exception):
    pass


def _parse_weight(text, p):
    """Rational weight for Q scopes, residue (rationals reduced) for F_p."""
    q = parse_scalar(text, RATIONAL)
    if not q.v:
        raise UsageError("weight must be nonzero")
    if p is None:
        return q
    check_modulus(p)
    if q.v.denominator % p == 0:
        raise UsageError(f"weight {text} has no residue mod {p}")
    return residue(q.v.numerator * pow(q.v.denominator, -1, p), p)


def _envelope(cfg, results):
    return {"tool_version": __version__, "config": cfg, "results": results}


def _emit(payload, out_path):
    text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _golden_path(p, weight, strategy):
    return GOLDEN_DIR / f"p{p}_lam{weight}_{strategy}.json"


def cmd_enumerate(args):
    w = _parse_weight(args.weight, args.p)
    ops = classify.enumerate_rb(args.p, w, args.strategy, shards=args.shards)
    cfg = {"command": "enumerate", "p": args.p, "weight": str(w),
           "strategy": args.strategy, "shards": args.shards}
    _emit(_envelope(cfg, {"count": len(ops),
                          "operators": [op.to_json() for op in ops]}), args.out)
    return 0


def _golden_summary(report):
    return {
        "field_p": report["field_p"],
        "weight": report["weight"],
        "strategy": report["strategy"],
        "total_rb_count": report["total_rb_count"],
        "trivial_count": report["trivial_count"],
        "orbit_count": len(report["orbits"]),
        "orbits": [
            {
                "canonical_packed": o["_packed"],
                "size": o["size"],
                "kernel_dim": o["kernel_dim"],
                "matched_families": o["matched_families"],
            }
            for o in report["orbits"]
        ],
        "unmatched_count": len(report["unmatched"]),
    }


def _check_golden(report, bless):
    """Compare the run against the committed golden summary; write it out
    only under --bless.  Returns (status, detail)."""
    path = _golden_path(report["field_p"], report["weight"], report["strategy"])
    summary = _golden_summary(report)
    if bless:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(
            json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        return "blessed", str(path)
    if not path.exists():
        return "absent", str(path)
    recorded = json.loads(path.read_text(encoding="utf-8"))
    return ("match" if recorded == summary else "mismatch"), str(path)


def cmd_classify(args):
    w = _parse_weight(args.weight, args.p)
    report = classify.classification_report(args.p, w, args.strategy,
                                            shards=args.shards)
    golden_status, golden_path = _check_golden(report, args.bless)
    results = classify.report_json(report)
    results["golden"] = {"status": golden_status, "path": golden_path}
    cfg = {"command": "classify", "p": args.p, "weight": str(w),
           "strategy": args.strategy, "shards": args.shards}
    _emit(_envelope(cfg, results), args.out)
    if report["unmatched"] or golden_status == "mismatch":
        return 1
    return 0


def _verify_families(weight_q, seed, samples):
    rng = np.random.default_rng(seed)
    rows = []
    for fam in catalog.list_families():
        checked = failed = 0
        conditional = fam.meta.get("rb_iff")
        off_locus_rb = 0
        while checked < samples:
            draw = [Scalar(Fraction(int(rng.integers(-9, 10)),
                                    int(rng.integers(1, 5))))
                    for _ in fam.param_names]
            if conditional and draw and draw[0].v:
                # off the stated locus the images must NOT satisfy the identity
                try:
                    if is_rb(fam.instantiate(weight_q, draw)):
                        off_locus_rb += 1
                except DomainViolation:
                    pass
                draw = [Scalar(0)] + draw[1:]
            try:
                w = fam.instantiate(weight_q, draw)
            except DomainViolation:
                continue
            checked += 1
            if not is_rb(w):
                failed += 1
        row = {"id": fam.id, "checked": checked, "failed": failed,
               "pass": failed == 0 and off_locus_rb == 0}
        if conditional:
            row["note"] = f"conditional: {conditional}"
        rows.append(row)
    return {"families": rows, "pass": all(r["pass"] for r in rows)}


def _verify_subalgebras(p):
    census = subalg.census(p)
    attained = sorted(set(e["class_label"] for e in census["subalgebras"]))
    expected = sorted(DIM2_LABELS + DIM3_LABELS)
    census["labels_attained"] = attained
    census["pass"] = attained == expected
    return census


def cmd_verify(args):
    if args.scope == "corollary":
        w = _parse_weight(args.weight, None)
        results = classify.verify_corollary(w, samples=args.samples,
                                            seed=args.seed)
    elif args.scope == "families":
        w = _parse_weight(args.weight, None)
        results = _verify_families(w, args.seed, args.samples)
    elif args.scope == "kernel-theorems":
        p = args.p if args.p is not None else 3
        w = _parse_weight(args.weight, p)
        results = classify.verify_kernel_theorems(p, w)
    elif args.scope == "subalgebras":
        p = args.p if args.p is not None else 3
        check_modulus(p)
        results = _verify_subalgebras(p)
    else:
        raise UsageError(f"unknown scope {args.scope!r}")
    cfg = {"command": "verify", "scope": args.scope, "p": args.p,
           "weight": args.weight, "seed": args.seed, "samples": args.samples}
    _emit(_envelope(cfg, results), args.out)
    return 0 if results["pass"] else 1


def cmd_report(args):
    """Everything in one run: classification plus all verification scopes."""
    w_p = _parse_weight(args.weight, args.p)
    w_q = _parse_weight(args.weight, None)
    report = classify.classification_report(args.p, w_p, args.strategy,
                                            shards=args.shards)
    golden_status, golden_path = _check_golden(report, args.bless)
    results = {
        "classification": classify.report_json(report),
        "golden": {"status": golden_status, "path": golden_path},
        "kernel_theorems": classify.verify_kernel_theorems(
            args.p, w_p, enumerated=None, strategy=args.strategy),
        "corollary": classify.verify_corollary(w_q, samples=args.samples,
                                               seed=args.seed),
        "families": _verify_families(w_q, args.seed, args.samples),
        "subalgebras": _verify_subalgebras(args.p),
    }
    ok = (
        not report["unmatched"]
        and golden_status != "mismatch"
        and results["kernel_theorems"]["pass"]
        and results["corollary"]["pass"]
        and results["families"]["pass"]
        and results["subalgebras"]["pass"]
    )
    cfg = {"command": "report", "p": args.p, "weight": str(w_p),
           "strategy": args.strategy, "shards": args.shards, "seed": args.seed}
    _emit(_envelope(cfg, results), args.out)
    return 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="sweedler-rb",
        description="Rota-Baxter operators on the Sweedler algebra: "
                    "enumeration, orbit classification, verification.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, p_default=3):
        sp.add_argument("--p", type=int, default=p_default)
        sp.add_argument("--weight", default="1")
        sp.add_argument("--strategy", default="exhaustive",
                        choices=["exhaustive", "backtracking"])
        sp.add_argument("--out", default=None)
        sp.add_argument("--shards", type=int, default=1)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--bless", action="store_true")

    sp = sub.add_parser("enumerate", help="list all RB operators over F_p")
    common(sp)
    sp = sub.add_parser("classify", help="orbit partition and family matching")
    common(sp)
    sp = sub.add_parser("report", help="classification plus all verifications")
    common(sp)
    sp.add_argument("--samples", type=int, default=20)
    sp = sub.add_parser("verify", help="check one verification scope")
    sp.add_argument("--scope", required=True,
                    choices=["families", "corollary", "kernel-theorems",
                             "subalgebras"])
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--weight", default="1")
    sp.add_argument("--out", default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=20)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "shards", 1) is not None and getattr(args, "shards", 1) < 1:
        ap.exit(2, "shards must be >= 1\n")
    handlers = {"enumerate": cmd_enumerate, "classify": cmd_classify,
                "verify": cmd_verify, "report": cmd_report}
    try:
        return handlers[args.command](args)
    except (UsageError, Infeasible, InvalidModulus, WeightMismatch) as e:
        sys.stderr.write(f"{type(e).__name__}: {e}\n")
        return 2
    except SweedlerRBError as e:
        sys.stderr.write(f"{type(e).__name__}: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
