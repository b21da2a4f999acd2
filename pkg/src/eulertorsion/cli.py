"""``verify`` command line entry point.

Exit codes: 0 all checks pass, 1 some check failed, 2 invalid input,
3 internal assertion (K-form violation, search exhaustion, overflow).
"""
from __future__ import annotations

import argparse
import sys

from .chains import ChainError, OrbitSearchExhausted
from .detection import ConnectError, DetectionError
from .mapping import AutomorphismError
from .report import SUITES, ConfigError, RunConfig, render, run
from .words import SearchLimitExceeded, WordError

INTERNAL = (DetectionError, ConnectError, OrbitSearchExhausted, SearchLimitExceeded,
            AutomorphismError, ChainError, WordError, OverflowError, AssertionError)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _suite_list(text: str) -> list[str]:
    names = [x.strip() for x in text.split(",") if x.strip()]
    bad = [x for x in names if x not in SUITES]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown suite(s) {bad}; choose from {','.join(SUITES)}")
    return names


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="verify",
                                description="Exact checks of the Euler class torsion skeleton.")
    p.add_argument("--genus", type=_int_list, default=[1, 2, 3], metavar="G[,G...]")
    p.add_argument("--suite", type=_suite_list, default=list(SUITES), metavar="S[,S...]",
                   help="any of: " + ", ".join(SUITES))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("--dump-chains", metavar="PATH", help="directory for chain dumps")
    p.add_argument("--max-word-len", type=int, default=96)
    p.add_argument("--orbit-depth", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallel", action="store_true", help="one worker process per genus")
    p.add_argument("--timings", action="store_true",
                   help="record wall-clock runtimes (json output is then not reproducible)")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.genus, args.suite, args.format, args.out, args.dump_chains,
                    args.max_word_len, args.orbit_depth, args.seed, args.parallel, args.timings)
    try:
        report = run(cfg)
    except ConfigError as exc:
        print(f"verify: invalid input: {exc}", file=sys.stderr)
        return 2
    except INTERNAL as exc:
        print(f"verify: internal assertion: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    text = render(report, cfg.format)
    if cfg.out_path:
        with open(cfg.out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
