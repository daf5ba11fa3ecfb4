"""hmfverify: run verification suites and write JSON reports.

Exit codes: 0 all checks pass (or are skipped), 1 a check failed, 2 bad
configuration or input.
"""
from __future__ import annotations

import argparse
import json
import os
import platform
import sys
import time

import mpmath
import sympy

from . import __version__
from .errors import HMFError
from .ideals import FracIdeal, narrow_class_group
from .numfield import Field, default_precision
from .suites import Config, SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

# analytic inputs the checks rely on but cannot establish from finite data
UNTESTED_HYPOTHESES = {
    "analytic": ["completed L-series bounded in vertical strips",
                 "interchange of the character sum and the Mellin integral"],
    "fricke": ["completed L-series bounded in vertical strips"],
}


def versions():
    return {"hmfconverse": __version__, "python": platform.python_version(),
            "mpmath": mpmath.__version__, "sympy": sympy.__version__}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hmfverify", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--field", type=int, help="D for Q(sqrt D); default depends on the suite")
        p.add_argument("--prec", type=int, default=None,
                       help="working precision in bits (default $HC_PREC_BITS or 128)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="write the JSON report here instead of stdout")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES) + ["all"])
    common(v)
    v.add_argument("--bound", type=int, help="prime norm bound for the appendix sweep")
    v.add_argument("--tol", type=float, help="override the suite tolerance")
    v.add_argument("--cutoff", type=int, help="coefficient norm cutoff for synthetic data")
    v.add_argument("--data", help="coefficient file for the fricke suite")
    v.add_argument("--fuzz", type=int, default=200, help="random instances per fuzz check")
    v.add_argument("--height", type=int, default=20, help="coordinate height of xi sweeps")
    v.add_argument("--sign", type=int, choices=(1, -1), default=1,
                   help="expected Fricke eigenvalue of the data")

    c = sub.add_parser("classgroup", help="narrow class group with prime representatives")
    common(c)
    c.add_argument("--level", help="level ideal as a,b,c (HNF)")

    i = sub.add_parser("ingest", help="validate a coefficient file")
    common(i)
    i.add_argument("path")
    return parser


def _emit(report: dict, out: str | None):
    text = json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _prec(args) -> int:
    prec = args.prec if args.prec is not None else default_precision()
    if prec < 32:
        raise ValueError("--prec must be at least 32")
    return prec


def cmd_verify(args) -> int:
    cfg = Config(field=args.field, prec=_prec(args), bound=args.bound, tol=args.tol,
                 seed=args.seed, cutoff=args.cutoff, data=args.data, fuzz=args.fuzz,
                 height=args.height, sign=args.sign)
    if cfg.field is not None:
        Field(cfg.field)
    if cfg.data and not os.path.exists(cfg.data):
        raise FileNotFoundError(cfg.data)
    start = time.perf_counter()
    checks = run_suite(args.suite, cfg)
    report = {
        "suite": args.suite,
        "field": cfg.field,
        "params": {k: v for k, v in vars(cfg).items() if k != "field"},
        "checks": [c.to_dict() for c in checks],
        "untested_hypotheses": _untested(args.suite),
        "seed": cfg.seed,
        "runtime_ms": round(1000 * (time.perf_counter() - start)),
        "versions": versions(),
    }
    _emit(report, args.out)
    return EXIT_FAIL if any(c.status == "fail" for c in checks) else EXIT_OK


def _untested(suite: str) -> list:
    names = SUITES if suite == "all" else [suite]
    out = []
    for name in names:
        out += [h for h in UNTESTED_HYPOTHESES.get(name, []) if h not in out]
    return out


def _parse_hnf(text: str):
    parts = [int(x) for x in text.strip("<>").split(",")]
    if len(parts) != 3:
        raise ValueError("level must be a,b,c")
    return parts


def cmd_classgroup(args) -> int:
    F = Field(args.field or 5, _prec(args))
    level = FracIdeal.from_hnf(F, *_parse_hnf(args.level)) if args.level else None
    G = narrow_class_group(F, level=level)
    report = {
        "field": F.D,
        "h_plus": G.h,
        "h": G.wide_h,
        "reps": [list(T.hnf) for T in G.reps],
        "rep_norms": [int(T.norm()) for T in G.reps],
        "level": list((level or FracIdeal.unit(F)).hnf),
        "pairing": list(G.pairing),
        "q": [str(q) for q in G.q],
        "eps1": str(F.eps1),
        "versions": versions(),
    }
    _emit(report, args.out)
    return EXIT_OK


def cmd_ingest(args) -> int:
    from .ingest import ingest_coefficients
    seq = ingest_coefficients(args.path, prec=_prec(args))
    report = {
        "path": args.path,
        "field": seq.F.D,
        "k0": seq.k0,
        "weight": list(seq.weight),
        "level": list(seq.level.hnf),
        "records": len(seq.table),
        "cutoff": seq.cutoff,
        "versions": versions(),
    }
    _emit(report, args.out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    handler = {"verify": cmd_verify, "classgroup": cmd_classgroup, "ingest": cmd_ingest}
    try:
        return handler[args.command](args)
    except (HMFError, ValueError, OSError) as exc:
        print(f"hmfverify: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
